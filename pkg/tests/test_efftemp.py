import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qals import DomainError, Schedule, amplitude_ratio, effective_temperature
from qals import efftemp, qsim, ising
from qals.efftemp import ladder, ladder_csv_rows


class TestAmplitudeRatio:
    def test_zero_field_limit(self):
        assert amplitude_ratio(1.0, 0.0) == 1.0

    def test_equal_scales(self):
        assert amplitude_ratio(1.0, 1.0) == pytest.approx(1.0 + math.sqrt(2.0))

    def test_matches_ground_eigenvector(self, linear):
        # the closed form must agree with direct diagonalization of the
        # one-qubit Hamiltonian at the same s'
        g = ising.HardwareGraph(1, frozenset())
        prob = ising.ProblemInstance(g, (1.0,), {})
        for s in (0.2, 0.5, 0.8):
            A, B = linear.evaluate(s)
            eigs = qsim.eigendecompose(qsim.build_hamiltonian(prob, linear, s))
            v = np.abs(eigs.eigenvectors[:, 0])
            assert v.max() / v.min() == pytest.approx(
                amplitude_ratio(A, B), rel=1e-12
            )

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            amplitude_ratio(0.0, 1.0)
        with pytest.raises(DomainError):
            amplitude_ratio(1.0, -0.5)

    @given(st.floats(min_value=1e-3, max_value=1e3), st.floats(0.0, 1e3))
    def test_at_least_one(self, A, B):
        assert amplitude_ratio(A, B) >= 1.0


class TestEffectiveTemperature:
    def test_infinite_at_zero_field(self):
        assert effective_temperature(1.0, 0.0) == math.inf

    def test_boltzmann_match(self):
        # the defining property: populations of the two components stand in
        # the ratio exp(gap / T_eff) with gap 2 sqrt(A^2 + B^2) over ratio^2
        A, B = 0.6, 0.4
        r = amplitude_ratio(A, B)
        T = effective_temperature(A, B)
        assert r * r == pytest.approx(math.exp(2.0 / T), rel=1e-12)

    @given(st.floats(min_value=1e-3, max_value=1e3), st.floats(1e-6, 1e3))
    def test_scale_invariance(self, A, B):
        t1 = effective_temperature(A, B)
        t2 = effective_temperature(10.0 * A, 10.0 * B)
        assert t1 == pytest.approx(t2, rel=1e-6)

    @given(st.floats(min_value=0.01, max_value=0.99))
    def test_monotone_in_s(self, s):
        # deeper excursions (smaller s') are hotter
        sch = Schedule()
        eps = 0.005
        lo = effective_temperature(*sch.evaluate(max(s - eps, 1e-6)))
        hi = effective_temperature(*sch.evaluate(min(s + eps, 1.0 - 1e-9)))
        assert lo >= hi


class TestLadder:
    def test_monotone_cooling(self, linear):
        pts = ladder(linear, [0.3, 0.5, 0.7, 0.9])
        temps = [p.T_eff for p in pts]
        assert all(t1 < t0 for t0, t1 in zip(temps, temps[1:]))

    def test_rejects_a_zero(self, linear):
        with pytest.raises(DomainError):
            ladder(linear, [0.5, 1.0])

    def test_point_fields(self, linear):
        (p,) = ladder(linear, [0.25])
        assert (p.A, p.B) == linear.evaluate(0.25)
        assert p.s_prime == 0.25
        assert p.ratio == amplitude_ratio(p.A, p.B)

    def test_csv_rows(self, linear):
        rows = ladder_csv_rows(ladder(linear, [0.0, 0.5]))
        assert rows[0] == "s_prime,A,B,ratio,T_eff"
        assert rows[1].endswith(",inf")
        assert len(rows) == 3

    def test_frozen_midpoint(self, linear):
        # A = B at s' = 0.5: ratio = 1 + sqrt(2), T_eff = 1 / ln(1 + sqrt 2)
        (p,) = ladder(linear, [0.5])
        assert p.T_eff == pytest.approx(1.0 / math.log(1.0 + math.sqrt(2.0)))
        assert p.T_eff == pytest.approx(1.134592, abs=1e-6)
