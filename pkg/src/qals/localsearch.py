"""Reverse-anneal local search: prepare, excurse to s', hold, read out.

The outcome of a cycle is linear in the initial classical state, so for a
fixed (problem, schedule, excursion, bath) the whole protocol collapses to
a single column-stochastic kernel mapping start bitstrings to outcome
distributions.  Kernels are built once (by propagating the identity matrix
through the master equation) and cached; repeated runs and the hybrid
outer loops then draw outcomes at matrix-column cost.
"""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass, field, replace

import numpy as np

from . import ising, qsim
from .errors import ConfigError, DomainError
from .ising import HardwareGraph, ProblemInstance, SpinState
from .schedule import AnnealPath, Schedule, forward_path, local_search_path

KERNEL_CACHE_SIZE = 32
_kernel_cache: OrderedDict[tuple, np.ndarray] = OrderedDict()

PREPARE_METHODS = ("direct", "qaa_on_h_init")


@dataclass(frozen=True)
class LocalSearchParams:
    """One reverse-anneal cycle plus sampling controls."""

    s_prime: float
    tau: float
    ramp: float
    bath: qsim.BathParams
    samples: int = 1
    seed: int = 0
    dt: float | None = None
    qubit_cap: int = qsim.DEFAULT_QUBIT_CAP

    def __post_init__(self):
        if not 0.0 <= self.s_prime <= 1.0:
            raise DomainError(f"s_prime={self.s_prime} outside [0, 1]")
        if self.tau < 0:
            raise DomainError("tau must be nonnegative")
        if self.ramp <= 0:
            raise DomainError("ramp must be positive")
        if self.samples < 1:
            raise DomainError("samples must be a positive integer")

    def path(self) -> AnnealPath:
        return local_search_path(self.s_prime, self.tau, self.ramp)


@dataclass(frozen=True)
class SampleRecord:
    state: SpinState
    energy: float
    hamming: int
    count: int


@dataclass(frozen=True)
class SampleSet:
    """Seeded classical outcomes of repeated identical cycles."""

    start: SpinState
    records: tuple[SampleRecord, ...]
    seed: int
    params: LocalSearchParams
    distribution: np.ndarray = field(compare=False, repr=False)

    @property
    def total(self) -> int:
        return sum(r.count for r in self.records)


def clear_kernel_cache() -> None:
    _kernel_cache.clear()


def _kernel_key(problem, schedule, params: LocalSearchParams) -> tuple:
    return (
        problem.digest(),
        schedule,
        params.s_prime,
        params.tau,
        params.ramp,
        params.bath,
        params.dt,
        params.qubit_cap,
    )


def outcome_kernel(
    problem: ProblemInstance, schedule: Schedule, params: LocalSearchParams
) -> np.ndarray:
    """Column-stochastic matrix K with K[:, k] the outcome distribution over
    bitstrings for start bitstring k."""
    key = _kernel_key(problem, schedule, params)
    hit = _kernel_cache.get(key)
    if hit is not None:
        _kernel_cache.move_to_end(key)
        return hit
    dim = 1 << problem.n
    path = params.path()
    eigs1 = qsim.eigendecompose(
        qsim.build_hamiltonian(problem, schedule, 1.0, params.qubit_cap)
    )
    B1 = eigs1.eigenvectors**2  # bitstring <-> eigenbasis population map
    if path.duration == 0.0:
        K = np.eye(dim)
    else:
        M = qsim.propagate_populations(
            problem, schedule, path, params.bath, B1.T, params.dt, params.qubit_cap
        )
        K = B1 @ M
        K = np.clip(K, 0.0, None)
        K /= K.sum(axis=0)
    _kernel_cache[key] = K
    while len(_kernel_cache) > KERNEL_CACHE_SIZE:
        _kernel_cache.popitem(last=False)
    return K


def outcome_distribution(
    problem: ProblemInstance,
    schedule: Schedule,
    start: SpinState,
    params: LocalSearchParams,
) -> np.ndarray:
    """Exact outcome distribution over bitstrings for one cycle."""
    if len(start) != problem.n:
        raise DomainError("start state length mismatch")
    return outcome_kernel(problem, schedule, params)[:, start.to_index()]


def run(
    problem: ProblemInstance,
    schedule: Schedule,
    start: SpinState,
    params: LocalSearchParams,
) -> SampleSet:
    """Execute the cycle and draw `params.samples` seeded outcomes."""
    dist = outcome_distribution(problem, schedule, start, params)
    rng = np.random.default_rng(np.random.SeedSequence(params.seed))
    counts = rng.multinomial(params.samples, dist)
    records = []
    for k in np.flatnonzero(counts):
        state = SpinState.from_index(int(k), problem.n)
        records.append(
            SampleRecord(
                state=state,
                energy=ising.energy(state, problem),
                hamming=ising.hamming_distance(start, state),
                count=int(counts[k]),
            )
        )
    return SampleSet(
        start=start,
        records=tuple(records),
        seed=params.seed,
        params=params,
        distribution=dist,
    )


def mean_hamming(sample_set: SampleSet) -> float:
    """Multiplicity-weighted mean Hamming distance from the start state."""
    total = sample_set.total
    if total == 0:
        raise DomainError("empty sample set")
    return sum(r.hamming * r.count for r in sample_set.records) / total


def distribution_stats(
    problem: ProblemInstance, start: SpinState, dist: np.ndarray
) -> dict:
    """Summary statistics of an exact outcome distribution."""
    energies = ising.all_state_energies(problem)
    spins = ising.basis_spin_matrix(problem.n)
    dists = (spins != start.array[None, :]).sum(axis=1)
    ground = energies == energies.min()
    return {
        "mean_energy": float(dist @ energies),
        "mean_hamming": float(dist @ dists),
        "p_start": float(dist[start.to_index()]),
        "p_ground": float(dist[ground].sum()),
        "p_best_found": float(dist[energies == energies[dist > 1e-12].min()].sum()),
    }


def prepare_initial(
    y: SpinState,
    graph: HardwareGraph,
    method: str,
    schedule: Schedule,
    duration: float,
    bath: qsim.BathParams,
    dt: float | None = None,
    qubit_cap: int = qsim.DEFAULT_QUBIT_CAP,
) -> tuple[np.ndarray, float]:
    """Produce the classical start state, directly or by a forward anneal on
    the gauge-transformed ferromagnet whose ground state is y.

    Returns (distribution over bitstrings, probability of y).
    """
    if method not in PREPARE_METHODS:
        raise ConfigError(f"unknown preparation method {method!r}")
    dim = 1 << len(y)
    if method == "direct":
        dist = np.zeros(dim)
        dist[y.to_index()] = 1.0
        return dist, 1.0
    if duration <= 0:
        raise DomainError("preparation anneal needs duration > 0")
    problem = ising.init_hamiltonian(y, graph)
    path = forward_path(duration)
    p0 = np.zeros(dim)
    p0[0] = 1.0  # start in the instantaneous ground state at s = 0
    p = qsim.propagate_populations(problem, schedule, path, bath, p0, dt, qubit_cap)
    eigs1 = qsim.eigendecompose(
        qsim.build_hamiltonian(problem, schedule, 1.0, qubit_cap)
    )
    dist = qsim.measure(p, eigs1)
    return dist, float(dist[y.to_index()])


def with_s_prime(params: LocalSearchParams, s_prime: float) -> LocalSearchParams:
    return replace(params, s_prime=s_prime)
