"""Classical Ising problems on a hardware graph.

Spins take values in {-1, +1} throughout.  Computational-basis index k maps
to a spin state via bit i of k: bit 0 -> spin +1, bit 1 -> spin -1 (qubit 0
is the least significant bit).  Energies are bare (schedule factor B = 1).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DimensionError, DomainError

DISTRIBUTIONS = ("pm_one", "uniform_range")


@dataclass(frozen=True)
class SpinState:
    """Immutable classical spin configuration, entries in {-1, +1}."""

    spins: tuple[int, ...]

    def __post_init__(self):
        spins = tuple(int(s) for s in self.spins)
        if any(s not in (-1, 1) for s in spins):
            raise DomainError(f"spins must be -1 or +1, got {self.spins}")
        object.__setattr__(self, "spins", spins)

    def __len__(self) -> int:
        return len(self.spins)

    def __iter__(self) -> Iterator[int]:
        return iter(self.spins)

    def __getitem__(self, i: int) -> int:
        return self.spins[i]

    @property
    def array(self) -> np.ndarray:
        return np.array(self.spins, dtype=np.int8)

    @classmethod
    def from_index(cls, index: int, n: int) -> "SpinState":
        """Basis-state index -> spins (bit 0 of the index is qubit 0)."""
        if not 0 <= index < 2**n:
            raise DomainError(f"index {index} out of range for n={n}")
        return cls(tuple(1 - 2 * ((index >> i) & 1) for i in range(n)))

    def to_index(self) -> int:
        return sum((1 - s) // 2 << i for i, s in enumerate(self.spins))

    def flip(self, positions: Iterable[int]) -> "SpinState":
        spins = list(self.spins)
        for i in positions:
            spins[i] = -spins[i]
        return SpinState(tuple(spins))


@dataclass(frozen=True)
class HardwareGraph:
    """Qubit count plus the set of allowed coupler edges (i < j)."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"need at least one qubit, got n={self.n}")
        canon = set()
        for i, j in self.edges:
            if i == j:
                raise DomainError(f"self-loop on qubit {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise DomainError(f"edge ({i},{j}) outside 0..{self.n - 1}")
            canon.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(canon))

    @property
    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


def path_graph(n: int) -> HardwareGraph:
    return HardwareGraph(n, frozenset((i, i + 1) for i in range(n - 1)))


def ring_graph(n: int) -> HardwareGraph:
    if n < 3:
        raise DomainError("ring needs n >= 3")
    return HardwareGraph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> HardwareGraph:
    return HardwareGraph(
        n, frozenset((i, j) for i in range(n) for j in range(i + 1, n))
    )


def king_graph(rows: int, cols: int) -> HardwareGraph:
    """King-move adjacency on a rows x cols grid (row-major qubit order)."""
    n = rows * cols
    edges = set()
    for r in range(rows):
        for c in range(cols):
            a = r * cols + c
            for dr, dc in ((0, 1), (1, -1), (1, 0), (1, 1)):
                rr, cc = r + dr, c + dc
                if 0 <= rr < rows and 0 <= cc < cols:
                    b = rr * cols + cc
                    edges.add((min(a, b), max(a, b)))
    return HardwareGraph(n, frozenset(edges))


@dataclass(frozen=True, eq=False)
class ProblemInstance:
    """Fields h_i and couplers J_ij on a hardware graph."""

    graph: HardwareGraph
    h: tuple[float, ...]
    J: dict[tuple[int, int], float]

    def __post_init__(self):
        h = tuple(float(x) for x in self.h)
        if len(h) != self.graph.n:
            raise DimensionError(
                f"h has {len(h)} entries for n={self.graph.n} qubits"
            )
        J = {}
        for (i, j), v in self.J.items():
            key = (min(i, j), max(i, j))
            if key not in self.graph.edges:
                raise DimensionError(f"coupler ({i},{j}) not a graph edge")
            if key in J:
                raise DimensionError(f"duplicate coupler ({i},{j})")
            J[key] = float(v)
        missing = self.graph.edges - J.keys()
        if missing:
            raise DimensionError(f"missing couplers for edges {sorted(missing)}")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "J", J)

    @property
    def n(self) -> int:
        return self.graph.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProblemInstance):
            return NotImplemented
        return (
            self.graph == other.graph and self.h == other.h and self.J == other.J
        )

    def __hash__(self) -> int:
        return hash(self.digest())

    def digest(self) -> bytes:
        """Stable byte digest for caching keyed on problem contents."""
        parts = [np.int64(self.n).tobytes(), np.array(self.h).tobytes()]
        for i, j in self.graph.sorted_edges:
            parts.append(np.array([i, j, self.J[(i, j)]]).tobytes())
        return b"".join(parts)


def energy(state: SpinState | Sequence[int], problem: ProblemInstance) -> float:
    """Classical energy -sum h_i s_i - sum_(i,j) J_ij s_i s_j."""
    s = state.spins if isinstance(state, SpinState) else tuple(state)
    if len(s) != problem.n:
        raise DimensionError(f"state length {len(s)} != n={problem.n}")
    e = -sum(hi * si for hi, si in zip(problem.h, s))
    e -= sum(v * s[i] * s[j] for (i, j), v in problem.J.items())
    return float(e)


def all_state_energies(problem: ProblemInstance) -> np.ndarray:
    """Energies of all 2^n basis states, indexed by basis index (vectorized)."""
    n = problem.n
    spins = basis_spin_matrix(n)
    e = -spins @ np.asarray(problem.h)
    for (i, j), v in problem.J.items():
        e -= v * spins[:, i] * spins[:, j]
    return e


def basis_spin_matrix(n: int) -> np.ndarray:
    """2^n x n matrix of spin values per basis index (float64)."""
    k = np.arange(2**n, dtype=np.int64)[:, None]
    return (1 - 2 * ((k >> np.arange(n)) & 1)).astype(np.float64)


def hamming_distance(a: SpinState, b: SpinState) -> int:
    if len(a) != len(b):
        raise DimensionError(f"lengths differ: {len(a)} vs {len(b)}")
    return sum(x != y for x, y in zip(a, b))


def init_hamiltonian(y: SpinState, graph: HardwareGraph) -> ProblemInstance:
    """Gauge-transformed ferromagnet with unique ground state y."""
    if len(y) != graph.n:
        raise DimensionError(f"state length {len(y)} != n={graph.n}")
    J = {(i, j): float(y[i] * y[j]) for i, j in graph.edges}
    return ProblemInstance(graph, tuple(float(s) for s in y), J)


def gauge_transform(problem: ProblemInstance, y: SpinState) -> ProblemInstance:
    """Relabel spins s_i -> y_i s_i; preserves the spectrum."""
    if len(y) != problem.n:
        raise DimensionError(f"state length {len(y)} != n={problem.n}")
    h = tuple(y[i] * hi for i, hi in enumerate(problem.h))
    J = {(i, j): y[i] * y[j] * v for (i, j), v in problem.J.items()}
    return ProblemInstance(problem.graph, h, J)


def random_instance(
    graph: HardwareGraph, distribution: str, seed: int
) -> ProblemInstance:
    """Seeded random coefficients: pm_one draws from {-1,+1}, uniform_range
    from the uniform distribution on [-1, 1]."""
    if distribution not in DISTRIBUTIONS:
        raise DomainError(f"unknown distribution {distribution!r}")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    edges = graph.sorted_edges
    if distribution == "pm_one":
        h = rng.choice([-1.0, 1.0], size=graph.n)
        j = rng.choice([-1.0, 1.0], size=len(edges))
    else:
        h = rng.uniform(-1.0, 1.0, size=graph.n)
        j = rng.uniform(-1.0, 1.0, size=len(edges))
    return ProblemInstance(graph, tuple(h), dict(zip(edges, j)))


def to_problem_dict(problem: ProblemInstance) -> dict:
    return {
        "n": problem.n,
        "h": list(problem.h),
        "J": [[i, j, problem.J[(i, j)]] for i, j in problem.graph.sorted_edges],
    }


def from_problem_dict(data: dict) -> ProblemInstance:
    n = int(data["n"])
    rows = data.get("J", [])
    edges = set()
    J = {}
    for i, j, v in rows:
        i, j = int(i), int(j)
        if not i < j:
            raise DimensionError(f"coupler row ({i},{j}) requires i < j")
        if (i, j) in J:
            raise DimensionError(f"duplicate coupler ({i},{j})")
        edges.add((i, j))
        J[(i, j)] = float(v)
    graph = HardwareGraph(n, frozenset(edges))
    return ProblemInstance(graph, tuple(float(x) for x in data["h"]), J)


def save_problem(problem: ProblemInstance, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(to_problem_dict(problem), f, indent=1)
        f.write("\n")


def load_problem(path) -> ProblemInstance:
    with open(path, encoding="utf-8") as f:
        return from_problem_dict(json.load(f))
