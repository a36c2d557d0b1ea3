"""Dressed classical states and tunneling matrix elements.

A dressed state is the exact eigenvector of H(s) reached by continuation
from the corresponding basis state at s = 1: eigendecompose on a fine
descending s grid, at each step following the eigenvector of maximal
overlap with the previous one.  Tunneling elements between dressed states
are |<C_a| sum_i sigma_i^z |C_b>|; at small A/B they fall off
exponentially with the Hamming distance between the origins, and the
log-element vs distance slope estimates ln(A/B).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import ising, qsim
from .errors import DomainError, FitError, TrackingError
from .ising import ProblemInstance, SpinState
from .schedule import Schedule

CONTINUATION_STEPS = 200
REFINE_FACTOR = 10
REFINE_THRESHOLD = 0.9
LOST_THRESHOLD = 0.5
ELEMENT_FLOOR = 1e-14


@dataclass(frozen=True)
class DressedState:
    """Eigenvector of H(s) continuously connected to a classical state."""

    origin: SpinState
    s: float
    amplitudes: np.ndarray


@dataclass(frozen=True)
class ScalingFit:
    """Least-squares fit of log tunneling elements vs Hamming distance."""

    distances: tuple[int, ...]
    log_elements: tuple[float, ...]
    slope: float
    intercept: float
    r_squared: float


def _follow(eigvecs: np.ndarray, vec: np.ndarray) -> tuple[np.ndarray, float]:
    overlaps = eigvecs.T @ vec
    idx = int(np.abs(overlaps).argmax())
    new = eigvecs[:, idx] * np.sign(overlaps[idx])
    return new, float(abs(overlaps[idx]))


def _step(problem, schedule, s_from, s_to, vec, depth, qubit_cap):
    eigs = qsim.eigendecompose(
        qsim.build_hamiltonian(problem, schedule, s_to, qubit_cap)
    )
    new, overlap = _follow(eigs.eigenvectors, vec)
    if overlap >= REFINE_THRESHOLD:
        return new
    if depth >= 3:
        if overlap >= LOST_THRESHOLD:
            return new
        raise TrackingError(
            f"continuation lost track near s = {s_to} (overlap {overlap:.3f})",
            s=s_to,
        )
    # overlap dropped; redo the interval on a 10x finer grid
    for sub in np.linspace(s_from, s_to, REFINE_FACTOR + 1)[1:]:
        vec = _step(problem, schedule, s_from, sub, vec, depth + 1, qubit_cap)
        s_from = sub
    return vec


def dressed_state(
    problem: ProblemInstance,
    schedule: Schedule,
    s: float,
    origin: SpinState,
    qubit_cap: int = qsim.DEFAULT_QUBIT_CAP,
) -> DressedState:
    """Continuation of the origin basis state from s = 1 down to s."""
    if len(origin) != problem.n:
        raise DomainError("origin length mismatch")
    if not 0.0 <= s <= 1.0:
        raise DomainError(f"s={s} outside [0, 1]")
    e0 = ising.energy(origin, problem)
    for i in range(problem.n):
        if ising.energy(origin.flip([i]), problem) == e0:
            raise DomainError(
                f"origin is classically degenerate with its Hamming-1 "
                f"neighbor at qubit {i}; continuation is ill-defined"
            )
    dim = 1 << problem.n
    vec = np.zeros(dim)
    vec[origin.to_index()] = 1.0
    if s < 1.0:
        grid = np.linspace(1.0, s, CONTINUATION_STEPS + 1)
        for s_from, s_to in zip(grid, grid[1:]):
            vec = _step(problem, schedule, s_from, s_to, vec, 0, qubit_cap)
    if np.abs(vec).argmax() != origin.to_index():
        raise TrackingError(
            f"dressed state at s = {s} is no longer dominated by its origin",
            s=s,
        )
    return DressedState(origin=origin, s=float(s), amplitudes=vec)


def tunneling_element(
    problem: ProblemInstance,
    schedule: Schedule,
    s: float,
    origin_a: SpinState,
    origin_b: SpinState,
    qubit_cap: int = qsim.DEFAULT_QUBIT_CAP,
) -> float:
    """|<C_a(s)| sum_i sigma_i^z |C_b(s)>| between dressed states."""
    da = dressed_state(problem, schedule, s, origin_a, qubit_cap)
    db = dressed_state(problem, schedule, s, origin_b, qubit_cap)
    magnetization = ising.basis_spin_matrix(problem.n).sum(axis=1)
    return float(abs(np.sum(da.amplitudes * magnetization * db.amplitudes)))


def scaling_fit(
    problem: ProblemInstance,
    schedule: Schedule,
    s: float,
    origin: SpinState,
    targets,
    qubit_cap: int = qsim.DEFAULT_QUBIT_CAP,
) -> ScalingFit:
    """Fit log tunneling element against Hamming distance from the origin."""
    pairs = []
    for target in targets:
        d = ising.hamming_distance(origin, target)
        element = tunneling_element(problem, schedule, s, origin, target, qubit_cap)
        if element < ELEMENT_FLOOR:
            warnings.warn(
                f"tunneling element {element:.2e} at distance {d} below "
                f"numerical floor; excluded from fit",
                stacklevel=2,
            )
            continue
        pairs.append((d, np.log(element)))
    if len(pairs) < 2:
        raise FitError("fewer than 2 usable points for the scaling fit")
    pairs.sort()
    dists = [d for d, _ in pairs]
    if len(set(dists)) != len(dists):
        raise DomainError("targets must sit at distinct Hamming distances")
    logs = np.array([le for _, le in pairs])
    x = np.array(dists, dtype=float)
    slope, intercept = np.polyfit(x, logs, 1)
    resid = logs - (slope * x + intercept)
    total = logs - logs.mean()
    ss_tot = float(total @ total)
    r_squared = 1.0 - float(resid @ resid) / ss_tot if ss_tot > 0 else 1.0
    return ScalingFit(
        distances=tuple(dists),
        log_elements=tuple(float(v) for v in logs),
        slope=float(slope),
        intercept=float(intercept),
        r_squared=r_squared,
    )


def single_qubit_purity(amplitudes: np.ndarray, qubit: int, n: int) -> float:
    """tr(rho_i^2) of one qubit's reduced state of a pure state vector."""
    psi = np.asarray(amplitudes, dtype=complex).reshape([2] * n)
    # computational index convention: qubit 0 is the least significant bit,
    # i.e. the last axis after reshape
    axis = n - 1 - qubit
    psi = np.moveaxis(psi, axis, 0).reshape(2, -1)
    rho = psi @ psi.conj().T
    return float(np.real(np.trace(rho @ rho)))


def scaling_csv_rows(fit: ScalingFit, predicted_log_ratio: float) -> list[str]:
    """CSV dump: per-distance rows plus a summary row."""
    lines = ["hamming_distance,element,log_element"]
    for d, le in zip(fit.distances, fit.log_elements):
        lines.append(f"{d},{np.exp(le)!r},{le!r}")
    lines.append("# slope,predicted_ln_A_over_B,r_squared")
    lines.append(f"{fit.slope!r},{predicted_log_ratio!r},{fit.r_squared!r}")
    return lines
