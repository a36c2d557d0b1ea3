import numpy as np
import pytest
from hypothesis import given, strategies as st

from qals import AnnealPath, DomainError, Schedule, forward_path, local_search_path


class TestSchedule:
    def test_linear_endpoints(self):
        sch = Schedule()
        assert sch.evaluate(1.0) == (0.0, 1.0)
        assert sch.evaluate(0.0) == (1.0, 0.0)
        assert sch.evaluate(0.25) == (0.75, 0.25)

    def test_domain_error(self):
        with pytest.raises(DomainError):
            Schedule().evaluate(1.5)

    def test_unknown_family(self):
        with pytest.raises(DomainError):
            Schedule(family="cubic")

    @pytest.mark.parametrize("family", ["linear", "quadratic"])
    def test_monotonicity_1000_samples(self, family):
        sch = Schedule(family=family, gamma=1.7, lam=0.6)
        s = np.sort(np.random.default_rng(0).uniform(0, 1, 1000))
        vals = [sch.evaluate(x) for x in s]
        a = [v[0] for v in vals]
        b = [v[1] for v in vals]
        assert all(a1 <= a0 for a0, a1 in zip(a, a[1:]))
        assert all(b1 >= b0 for b0, b1 in zip(b, b[1:]))

    def test_config_round_trip(self):
        sch = Schedule("quadratic", gamma=2.0, lam=0.5)
        assert Schedule.from_dict(sch.to_dict()) == sch


class TestForwardPath:
    def test_interpolation(self):
        p = forward_path(10.0)
        assert p.s_at(5.0) == 0.5
        assert p.s_at(0.0) == 0.0
        assert p.s_at(10.0) == 1.0

    def test_nonpositive_duration(self):
        with pytest.raises(DomainError):
            forward_path(0.0)

    @given(st.floats(min_value=0.1, max_value=100))
    def test_monotone(self, duration):
        p = forward_path(duration)
        ts = np.linspace(0, duration, 50)
        ss = [p.s_at(t) for t in ts]
        assert all(s1 >= s0 for s0, s1 in zip(ss, ss[1:]))


class TestLocalSearchPath:
    def test_no_excursion(self):
        p = local_search_path(1.0, 3.0, 10.0)
        assert all(s == 1.0 for _, s in p.waypoints)
        assert p.duration == 3.0

    def test_vee_waypoints(self):
        p = local_search_path(0.5, 0.0, 10.0)
        assert p.waypoints == ((0.0, 1.0), (5.0, 0.5), (10.0, 1.0))

    def test_hold_duration(self):
        assert local_search_path(0.5, 3.0, 10.0).duration == 13.0

    @given(
        st.floats(min_value=0.0, max_value=0.99),
        st.floats(min_value=0.0, max_value=10.0),
        st.floats(min_value=0.1, max_value=20.0),
    )
    def test_endpoints_and_minimum(self, s_prime, tau, ramp):
        p = local_search_path(s_prime, tau, ramp)
        assert p.s_start == 1.0 and p.s_end == 1.0
        assert min(s for _, s in p.waypoints) == s_prime

    def test_waypoint_exactness(self):
        p = local_search_path(0.3, 2.0, 7.0)
        for t, s in p.waypoints:
            assert p.s_at(t) == s


class TestAnnealPath:
    def test_times_strictly_increasing(self):
        with pytest.raises(DomainError):
            AnnealPath(((0.0, 0.0), (0.0, 1.0)))

    def test_s_in_range(self):
        with pytest.raises(DomainError):
            AnnealPath(((0.0, 0.0), (1.0, 1.5)))
