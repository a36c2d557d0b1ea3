"""Classical outer loops around the quantum local search, plus baselines.

Quantum-assisted population annealing and parallel tempering replace the
thermal move of the classical skeleton with one reverse-anneal cycle at a
rung-dependent excursion depth s'; rung temperatures come from the
single-qubit effective-temperature ladder.  Classical simulated annealing
and parallel tempering use single-spin-flip Metropolis sweeps and serve as
comparison baselines under the same move budget.

Every member/replica draws from its own RNG stream seeded by
(master seed, generation, member), so results are independent of member
execution order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import ising, localsearch
from .efftemp import EffTempPoint
from .errors import ConfigError, DomainError
from .ising import ProblemInstance, SpinState
from .localsearch import LocalSearchParams
from .schedule import Schedule

# RNG stream tags, kept disjoint from generation indices
_INIT_STREAM = 0
_RESAMPLE_TAG = 1_000_003
_SWAP_TAG = 1_000_033


@dataclass(frozen=True)
class Replica:
    state: SpinState
    rung: int
    energy: float


@dataclass(frozen=True)
class HybridConfig:
    """Ladder, population/replica count, move template, and seeding."""

    ladder: tuple[EffTempPoint, ...]
    population: int
    sweeps: int
    move: LocalSearchParams
    seed: int
    reweight_temperatures: tuple[float, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "ladder", tuple(self.ladder))
        temps = [p.T_eff for p in self.ladder]
        if any(t1 >= t0 for t0, t1 in zip(temps, temps[1:])):
            raise ConfigError("ladder T_eff must be strictly decreasing")
        if self.population < 1:
            raise ConfigError("population must be positive")
        if self.sweeps < 1:
            raise ConfigError("sweeps must be positive")
        if self.reweight_temperatures is not None:
            rw = tuple(float(t) for t in self.reweight_temperatures)
            if len(rw) != len(self.ladder):
                raise ConfigError("reweight temperatures must match ladder length")
            object.__setattr__(self, "reweight_temperatures", rw)

    def rung_temperature(self, r: int) -> float:
        if self.reweight_temperatures is not None:
            return self.reweight_temperatures[r]
        return self.ladder[r].T_eff


@dataclass(frozen=True)
class SolveResult:
    algorithm: str
    best_state: SpinState
    best_energy: float
    stats: tuple[dict, ...]
    move_budget: int


def _rng(seed: int, generation: int, member: int) -> np.random.Generator:
    return np.random.default_rng(
        np.random.SeedSequence(entropy=(seed, generation, member))
    )


def _random_state(n: int, rng: np.random.Generator) -> SpinState:
    return SpinState(tuple(int(s) for s in rng.choice([-1, 1], size=n)))


def _systematic_resample(weights: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Low-variance systematic resampling; returns ancestor indices."""
    n = len(weights)
    positions = (rng.random() + np.arange(n)) / n
    return np.searchsorted(np.cumsum(weights), positions).clip(max=n - 1)


def _quantum_move(problem, schedule, state, move, s_prime, rng):
    dist = localsearch.outcome_distribution(
        problem, schedule, state, localsearch.with_s_prime(move, s_prime)
    )
    k = int(rng.choice(len(dist), p=dist))
    new = SpinState.from_index(k, problem.n)
    return new, ising.energy(new, problem)


def q_population_annealing(
    problem: ProblemInstance, schedule: Schedule, config: HybridConfig
) -> SolveResult:
    """Population annealing with reverse-anneal moves down the s' ladder."""
    if not config.ladder:
        raise ConfigError("empty ladder")
    n = problem.n
    pop = config.population
    states = [_random_state(n, _rng(config.seed, _INIT_STREAM, m)) for m in range(pop)]
    energies = np.array([ising.energy(s, problem) for s in states])
    best_i = int(energies.argmin())
    best_state, best_energy = states[best_i], float(energies[best_i])
    stats = []
    moves = 0
    for r, rung in enumerate(config.ladder):
        for m in range(pop):
            states[m], energies[m] = _quantum_move(
                problem, schedule, states[m], config.move, rung.s_prime,
                _rng(config.seed, r + 1, m),
            )
            moves += 1
        gen_best = int(energies.argmin())
        if energies[gen_best] < best_energy:
            best_state, best_energy = states[gen_best], float(energies[gen_best])
        row = {
            "generation": r,
            "s_prime": rung.s_prime,
            "T": config.rung_temperature(r),
            "min_energy": float(energies.min()),
            "mean_energy": float(energies.mean()),
            "best_energy": best_energy,
        }
        if r + 1 < len(config.ladder):
            t_now = config.rung_temperature(r)
            t_next = config.rung_temperature(r + 1)
            beta_now = 0.0 if math.isinf(t_now) else 1.0 / t_now
            dbeta = 1.0 / t_next - beta_now
            w = np.exp(-dbeta * (energies - energies.min()))
            w /= w.sum()
            ancestors = _systematic_resample(
                w, _rng(config.seed, _RESAMPLE_TAG, r)
            )
            states = [states[a] for a in ancestors]
            energies = energies[ancestors]
            row["unique_ancestors"] = int(len(np.unique(ancestors)))
            row["max_weight"] = float(w.max())
        stats.append(row)
    return SolveResult("qpa", best_state, best_energy, tuple(stats), moves)


def q_parallel_tempering(
    problem: ProblemInstance, schedule: Schedule, config: HybridConfig
) -> SolveResult:
    """Replica exchange with one reverse-anneal move per replica per sweep."""
    rungs = config.ladder
    if len(rungs) < 2:
        raise ConfigError("parallel tempering needs at least 2 rungs")
    temps = [config.rung_temperature(r) for r in range(len(rungs))]
    if any(math.isinf(t) for t in temps):
        raise ConfigError("parallel tempering requires finite rung temperatures")
    n = problem.n
    states = [
        _random_state(n, _rng(config.seed, _INIT_STREAM, r)) for r in range(len(rungs))
    ]
    energies = np.array([ising.energy(s, problem) for s in states])
    best_i = int(energies.argmin())
    best_state, best_energy = states[best_i], float(energies[best_i])
    stats = []
    moves = 0
    for sweep in range(1, config.sweeps + 1):
        for r, rung in enumerate(rungs):
            states[r], energies[r] = _quantum_move(
                problem, schedule, states[r], config.move, rung.s_prime,
                _rng(config.seed, sweep, r),
            )
            moves += 1
        gen_best = int(energies.argmin())
        if energies[gen_best] < best_energy:
            best_state, best_energy = states[gen_best], float(energies[gen_best])
        swap_rng = _rng(config.seed, _SWAP_TAG, sweep)
        attempts = accepts = 0
        for i in range((sweep + 1) % 2, len(rungs) - 1, 2):
            attempts += 1
            if swap_rng.random() < swap_probability(
                temps[i], temps[i + 1], energies[i], energies[i + 1]
            ):
                states[i], states[i + 1] = states[i + 1], states[i]
                energies[[i, i + 1]] = energies[[i + 1, i]]
                accepts += 1
        stats.append(
            {
                "sweep": sweep,
                "min_energy": float(energies.min()),
                "mean_energy": float(energies.mean()),
                "best_energy": best_energy,
                "swap_rate": accepts / attempts if attempts else 0.0,
            }
        )
    return SolveResult("qpt", best_state, best_energy, tuple(stats), moves)


def swap_probability(t_i: float, t_j: float, e_i: float, e_j: float) -> float:
    """Replica-exchange acceptance; symmetric under (i, j) exchange."""
    x = (1.0 / t_i - 1.0 / t_j) * (e_i - e_j)
    return 1.0 if x >= 0 else math.exp(x)


def metropolis_accept(delta_e: float, T: float, rng: np.random.Generator) -> bool:
    if delta_e <= 0:
        return True
    if T <= 0:
        return False
    return rng.random() < math.exp(-delta_e / T)


def _neighbor_table(problem: ProblemInstance):
    table = [[] for _ in range(problem.n)]
    for (i, j), v in problem.J.items():
        table[i].append((j, v))
        table[j].append((i, v))
    return table


def _flip_delta(spins: list[int], i: int, h, table) -> float:
    local = h[i] + sum(v * spins[j] for j, v in table[i])
    return 2.0 * spins[i] * local


def _metropolis_sweep(spins, energy, T, h, table, rng) -> float:
    for i in range(len(spins)):
        delta = _flip_delta(spins, i, h, table)
        if metropolis_accept(delta, T, rng):
            spins[i] = -spins[i]
            energy += delta
    return energy


def classical_sa(
    problem: ProblemInstance, temperatures, sweeps: int, seed: int
) -> SolveResult:
    """Simulated annealing baseline: `sweeps` Metropolis sweeps per rung of a
    decreasing temperature ladder."""
    temps = [float(t) for t in temperatures]
    if not temps or any(t <= 0 for t in temps):
        raise DomainError("temperatures must be positive")
    if any(t1 >= t0 for t0, t1 in zip(temps, temps[1:])):
        raise DomainError("temperature ladder must be strictly decreasing")
    table = _neighbor_table(problem)
    rng = _rng(seed, _INIT_STREAM, 0)
    spins = list(_random_state(problem.n, rng))
    energy = ising.energy(spins, problem)
    best_spins, best_energy = list(spins), energy
    stats = []
    moves = 0
    for r, T in enumerate(temps):
        for _ in range(sweeps):
            energy = _metropolis_sweep(spins, energy, T, problem.h, table, rng)
            moves += 1
            if energy < best_energy:
                best_spins, best_energy = list(spins), energy
        stats.append(
            {"generation": r, "T": T, "energy": energy, "best_energy": best_energy}
        )
    return SolveResult(
        "sa", SpinState(tuple(best_spins)), float(best_energy), tuple(stats), moves
    )


def classical_pt(
    problem: ProblemInstance,
    temperatures,
    sweeps: int,
    seed: int,
    swap: bool = True,
) -> SolveResult:
    """Classical parallel tempering with single-spin-flip inner moves."""
    temps = [float(t) for t in temperatures]
    if len(temps) < 2 or any(t <= 0 for t in temps):
        raise DomainError("need >= 2 positive temperatures")
    table = _neighbor_table(problem)
    chains = []
    for r in range(len(temps)):
        rng = _rng(seed, _INIT_STREAM, r)
        spins = list(_random_state(problem.n, rng))
        chains.append([spins, ising.energy(spins, problem), rng])
    best_energy = min(c[1] for c in chains)
    best_spins = list(min(chains, key=lambda c: c[1])[0])
    stats = []
    moves = 0
    for sweep in range(1, sweeps + 1):
        for r, T in enumerate(temps):
            spins, energy, rng = chains[r]
            chains[r][1] = _metropolis_sweep(spins, energy, T, problem.h, table, rng)
            moves += 1
            if chains[r][1] < best_energy:
                best_energy = chains[r][1]
                best_spins = list(spins)
        attempts = accepts = 0
        if swap:
            swap_rng = _rng(seed, _SWAP_TAG, sweep)
            for i in range((sweep + 1) % 2, len(temps) - 1, 2):
                attempts += 1
                if swap_rng.random() < swap_probability(
                    temps[i], temps[i + 1], chains[i][1], chains[i + 1][1]
                ):
                    chains[i][0], chains[i + 1][0] = chains[i + 1][0], chains[i][0]
                    chains[i][1], chains[i + 1][1] = chains[i + 1][1], chains[i][1]
                    accepts += 1
        stats.append(
            {
                "sweep": sweep,
                "min_energy": float(min(c[1] for c in chains)),
                "best_energy": float(best_energy),
                "swap_rate": accepts / attempts if attempts else 0.0,
            }
        )
    return SolveResult(
        "pt", SpinState(tuple(best_spins)), float(best_energy), tuple(stats), moves
    )
