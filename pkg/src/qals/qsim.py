"""Dense transverse-field Ising Hamiltonians and open-system dynamics.

H(s) = -A(s) * sum_i sigma_i^x + B(s) * H_problem is built dense in the
computational basis (real symmetric, dimension 2^n).  Open-system dynamics
are population-only in the instantaneous energy eigenbasis: transitions are
driven by independent sigma^z dephasing per qubit against an Ohmic bath
satisfying detailed balance, so the fixed point at constant s is the Gibbs
distribution over eigenvalues.

Populations are transported between time steps by eigenvalue-sorted index
(adiabatic relabeling); coherences are dropped entirely.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import ising
from .errors import ContractError, DomainError, IntegrationError, ResourceError
from .ising import ProblemInstance, SpinState
from .schedule import AnnealPath, Schedule

DEFAULT_QUBIT_CAP = 12

# step control: per-step rate load max(-W_aa)*dt and s resolution per rebuild
RATE_STEP_LIMIT = 0.1
RAMP_DS_RESOLUTION = 0.05
NEGATIVE_POPULATION_TOL = 1e-9
HOLD_SYMMETRIC_LIMIT = 30.0


@dataclass(frozen=True)
class BathParams:
    """Ohmic dephasing bath: temperature, coupling, spectral cutoff."""

    temperature: float
    eta: float
    omega_c: float

    def __post_init__(self):
        if self.temperature <= 0:
            raise DomainError(f"bath temperature must be > 0, got {self.temperature}")
        if self.eta < 0:
            raise DomainError(f"bath coupling must be >= 0, got {self.eta}")
        if self.omega_c <= 0:
            raise DomainError(f"bath cutoff must be > 0, got {self.omega_c}")

    def to_dict(self) -> dict:
        return {"T": self.temperature, "eta": self.eta, "omega_c": self.omega_c}

    @classmethod
    def from_dict(cls, data: dict) -> "BathParams":
        return cls(
            temperature=float(data["T"]),
            eta=float(data.get("eta", 0.1)),
            omega_c=float(data.get("omega_c", 8.0)),
        )


@dataclass(frozen=True)
class EigenSystem:
    """Ascending eigenvalues with orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dimension(self) -> int:
        return len(self.eigenvalues)


@functools.lru_cache(maxsize=4)
def _flip_indices(n: int) -> np.ndarray:
    """Flat indices of the single-bit-flip couplings in a 2^n x 2^n matrix."""
    dim = 1 << n
    k = np.arange(dim, dtype=np.int64)
    rows = np.concatenate([k ^ (1 << i) for i in range(n)])
    cols = np.tile(k, n)
    return rows * dim + cols


def build_hamiltonian(
    problem: ProblemInstance,
    schedule: Schedule,
    s: float,
    qubit_cap: int = DEFAULT_QUBIT_CAP,
) -> np.ndarray:
    """Dense H(s) in the computational basis."""
    n = problem.n
    if n > qubit_cap:
        raise ResourceError(f"n={n} exceeds dense-simulation cap {qubit_cap}")
    a, b = schedule.evaluate(s)
    dim = 1 << n
    H = np.zeros((dim, dim))
    H[np.diag_indices(dim)] = b * ising.all_state_energies(problem)
    if a != 0.0:
        H.flat[_flip_indices(n)] -= a
    return H


def eigendecompose(H: np.ndarray) -> EigenSystem:
    """Full spectral decomposition with a deterministic sign convention:
    the largest-magnitude component of each eigenvector is made positive."""
    if H.shape[0] != H.shape[1] or np.abs(H - H.T).max() > 1e-12 * max(
        1.0, np.abs(H).max()
    ):
        raise DomainError("Hamiltonian must be symmetric")
    lam, V = np.linalg.eigh(H)
    pivot = np.abs(V).argmax(axis=0)
    signs = np.sign(V[pivot, np.arange(V.shape[1])])
    signs[signs == 0] = 1.0
    return EigenSystem(lam, V * signs)


def _gamma(omega: np.ndarray, bath: BathParams) -> np.ndarray:
    """Ohmic rate function with detailed balance and exponential cutoff."""
    T = bath.temperature
    pref = 2.0 * np.pi * bath.eta
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        g = pref * omega / (-np.expm1(-omega / T))
    g = np.where(omega == 0.0, pref * T, g)
    g = np.where(np.isfinite(g), g, 0.0)
    return g * np.exp(-np.abs(omega) / bath.omega_c)


def transition_rates(eigs: EigenSystem, bath: BathParams, n: int) -> np.ndarray:
    """Rate matrix W with W[b, a] the rate from eigenstate a to b.

    W[b, a] = gamma(E_a - E_b) * sum_i |<b| sigma_i^z |a>|^2 for b != a;
    the diagonal holds minus the column sums.
    """
    V = eigs.eigenvectors
    E = eigs.eigenvalues
    if bath.eta == 0.0:
        return np.zeros((len(E), len(E)))
    spins = ising.basis_spin_matrix(n)
    S = np.zeros_like(V)
    for i in range(n):
        M = V.T @ (spins[:, i][:, None] * V)
        S += M * M
    np.fill_diagonal(S, 0.0)
    omega = E[None, :] - E[:, None]
    W = _gamma(omega, bath) * S
    np.fill_diagonal(W, 0.0)
    W[np.diag_indices_from(W)] = -W.sum(axis=0)
    return W


def _system_at(problem, schedule, s, bath, qubit_cap):
    eigs = eigendecompose(build_hamiltonian(problem, schedule, s, qubit_cap))
    return eigs, transition_rates(eigs, bath, problem.n)


def _check_clamp(P: np.ndarray) -> np.ndarray:
    low = P.min()
    if low < -NEGATIVE_POPULATION_TOL:
        raise IntegrationError(
            f"population went negative ({low:.3e}); use a smaller dt"
        )
    return np.clip(P, 0.0, None)


def _hold_apply(
    W: np.ndarray, eigs: EigenSystem, bath: BathParams, t: float, P: np.ndarray
) -> np.ndarray:
    """Apply expm(W * t) exactly for a constant-s hold.

    Detailed balance makes W similar to a symmetric matrix under the Gibbs
    scaling D = diag(exp(-(E - E_min) / 2T)), so the propagator comes from
    one symmetric eigendecomposition.  The transform amplifies round-off by
    the condition number of D, so it is only used while the energy spread
    over 2T stays small; otherwise scipy expm (scaling and squaring) is
    exact enough and unconditionally stable.
    """
    x = (eigs.eigenvalues - eigs.eigenvalues.min()) / (2.0 * bath.temperature)
    if x.max() < HOLD_SYMMETRIC_LIMIT:
        d = np.exp(-x)
        S = W * (d[None, :] / d[:, None])
        S = 0.5 * (S + S.T)
        lam, U = np.linalg.eigh(S)
        # snap the round-off-sized stationary eigenvalue to exactly zero so
        # arbitrarily long holds preserve the Gibbs mode
        lam[lam > -1e-13 * np.abs(lam).max()] = 0.0
        lam = np.minimum(lam, 0.0)
        prop = U @ (np.exp(lam * t)[:, None] * U.T)
        scale = d[:, None] if P.ndim == 2 else d
        return scale * (prop @ (P / scale))
    return scipy.linalg.expm(W * t) @ P


_RAMP_RETRIES = 6


def _ramp_apply(
    problem, schedule, path, bath, t0, t1, nsteps, P, qubit_cap
) -> np.ndarray:
    """Fixed-step RK4 across one ramp segment, rebuilding W at each step
    midpoint.  The rate-based step heuristic can underestimate stiffness at
    interior s values, so on a negative-population failure the whole segment
    is retried with the step count doubled."""
    for attempt in range(_RAMP_RETRIES):
        Q = P
        h = (t1 - t0) / nsteps
        for k in range(nsteps):
            s_mid = path.s_at(t0 + (k + 0.5) * h)
            _, W = _system_at(problem, schedule, s_mid, bath, qubit_cap)
            k1 = W @ Q
            k2 = W @ (Q + 0.5 * h * k1)
            k3 = W @ (Q + 0.5 * h * k2)
            k4 = W @ (Q + h * k3)
            Q = Q + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if Q.min() >= -NEGATIVE_POPULATION_TOL:
            return np.clip(Q, 0.0, None)
        nsteps *= 2
    raise IntegrationError(
        f"population went negative ({Q.min():.3e}) after {_RAMP_RETRIES} "
        "step-halving retries; use an explicit smaller dt"
    )


def _ramp_steps(t_seg: float, ds: float, wmax: float, dt: float | None) -> int:
    if dt is not None:
        return max(1, int(np.ceil(t_seg / dt)))
    by_rate = int(np.ceil(t_seg * wmax / RATE_STEP_LIMIT))
    by_ds = int(np.ceil(abs(ds) / RAMP_DS_RESOLUTION))
    return max(1, by_rate, by_ds)


def propagate_populations(
    problem: ProblemInstance,
    schedule: Schedule,
    path: AnnealPath,
    bath: BathParams,
    P: np.ndarray,
    dt: float | None = None,
    qubit_cap: int = DEFAULT_QUBIT_CAP,
) -> np.ndarray:
    """Advance a population vector (or matrix of column vectors) along the
    path.  Constant-s segments use the exact propagator expm(W * t); ramps
    use fixed-step RK4 with W rebuilt every step at the step-midpoint s."""
    wmax = 0.0
    if dt is None:
        probe = {path.s_start, path.s_end, min(s for _, s in path.waypoints)}
        for s in probe:
            _, W = _system_at(problem, schedule, s, bath, qubit_cap)
            wmax = max(wmax, float(-W.diagonal().min()))
    for t0, s0, t1, s1 in path.segments():
        if s0 == s1:
            eigs, W = _system_at(problem, schedule, s0, bath, qubit_cap)
            if W.any():
                P = _hold_apply(W, eigs, bath, t1 - t0, P)
            P = _check_clamp(P)
        else:
            nsteps = _ramp_steps(t1 - t0, s1 - s0, wmax, dt)
            P = _ramp_apply(problem, schedule, path, bath, t0, t1, nsteps, P, qubit_cap)
        sums = P.sum(axis=0)
        if np.abs(sums - 1.0).max() > 1e-5:
            raise IntegrationError(
                f"probability not conserved (max drift {np.abs(sums - 1.0).max():.3e})"
            )
        P = P / sums
    return P


def evolve_master(
    problem: ProblemInstance,
    schedule: Schedule,
    path: AnnealPath,
    bath: BathParams,
    initial: SpinState,
    dt: float | None = None,
    qubit_cap: int = DEFAULT_QUBIT_CAP,
) -> np.ndarray:
    """Pauli master equation along the path from a classical start state.

    Returns populations over the instantaneous eigenbasis at the path's
    final s (eigenvalue-ascending order).
    """
    if len(initial) != problem.n:
        raise DomainError("initial state length mismatch")
    eigs0 = eigendecompose(
        build_hamiltonian(problem, schedule, path.s_start, qubit_cap)
    )
    p0 = eigs0.eigenvectors[initial.to_index(), :] ** 2
    return propagate_populations(problem, schedule, path, bath, p0, dt, qubit_cap)


def evolve_schrodinger(
    problem: ProblemInstance,
    schedule: Schedule,
    path: AnnealPath,
    initial: SpinState,
    dt: float | None = None,
    qubit_cap: int = DEFAULT_QUBIT_CAP,
) -> np.ndarray:
    """Closed-system evolution; returns the computational-basis amplitude
    vector at the path end.  Each step applies the exact propagator of the
    step-midpoint Hamiltonian, so holds are exact and norm is preserved."""
    if len(initial) != problem.n:
        raise DomainError("initial state length mismatch")
    dim = 1 << problem.n
    psi = np.zeros(dim, dtype=complex)
    psi[initial.to_index()] = 1.0
    for t0, s0, t1, s1 in path.segments():
        if s0 == s1:
            nsteps = 1
        else:
            nsteps = max(
                int(np.ceil(abs(s1 - s0) / 0.005)),
                1 if dt is None else int(np.ceil((t1 - t0) / dt)),
            )
        h = (t1 - t0) / nsteps
        for k in range(nsteps):
            s_mid = path.s_at(t0 + (k + 0.5) * h)
            eigs = eigendecompose(
                build_hamiltonian(problem, schedule, s_mid, qubit_cap)
            )
            V = eigs.eigenvectors
            psi = V @ (np.exp(-1j * eigs.eigenvalues * h) * (V.T @ psi))
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > 1e-6:
        raise IntegrationError(f"norm drifted to {norm}")
    return psi / norm


def measure(values: np.ndarray, eigs: EigenSystem, s: float = 1.0) -> np.ndarray:
    """Readout at s = 1: probability per classical bitstring.

    Accepts eigenbasis populations (real) or a computational-basis amplitude
    vector (complex).
    """
    if s != 1.0:
        raise ContractError(f"readout requires s = 1, got s={s}")
    values = np.asarray(values)
    if np.iscomplexobj(values):
        probs = np.abs(values) ** 2
    else:
        p = _check_clamp(values.astype(float))
        probs = (eigs.eigenvectors**2) @ p
    total = probs.sum()
    if abs(total - 1.0) > 1e-9:
        raise ContractError(f"input probabilities sum to {total}")
    return probs / total


def spectrum_trace(
    problem: ProblemInstance,
    schedule: Schedule,
    s_values,
    k: int,
    qubit_cap: int = DEFAULT_QUBIT_CAP,
) -> list[tuple[float, ...]]:
    """Rows (s, lambda_0 .. lambda_{k-1}) of the lowest k levels."""
    if k > 1 << problem.n:
        raise DomainError(f"k={k} exceeds dimension {1 << problem.n}")
    rows = []
    for s in s_values:
        eigs = eigendecompose(build_hamiltonian(problem, schedule, s, qubit_cap))
        rows.append((float(s), *map(float, eigs.eigenvalues[:k])))
    return rows
