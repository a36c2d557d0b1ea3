"""Brute-force ground truth: exhaustive spectra and exact Gibbs weights."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import ising
from .errors import DomainError, ResourceError

ENUMERATION_CAP = 20


@dataclass(frozen=True)
class Spectrum:
    """All 2^n classical states with energies, sorted ascending.

    `states` holds basis indices aligned with `energies`; the ground set is
    every state at the minimum energy.
    """

    n: int
    states: np.ndarray
    energies: np.ndarray

    @property
    def ground_energy(self) -> float:
        return float(self.energies[0])

    @property
    def ground_indices(self) -> list[int]:
        e0 = self.energies[0]
        k = int(np.searchsorted(self.energies, e0, side="right"))
        return sorted(int(i) for i in self.states[:k])

    @property
    def ground_states(self) -> list[ising.SpinState]:
        return [ising.SpinState.from_index(k, self.n) for k in self.ground_indices]


def brute_force(problem: ising.ProblemInstance) -> Spectrum:
    """Exhaustive enumeration of all 2^n classical energies."""
    if problem.n > ENUMERATION_CAP:
        raise ResourceError(
            f"n={problem.n} exceeds enumeration cap {ENUMERATION_CAP}"
        )
    energies = ising.all_state_energies(problem)
    order = np.argsort(energies, kind="stable")
    return Spectrum(problem.n, order.astype(np.int64), energies[order])


def gibbs_classical(problem: ising.ProblemInstance, T: float) -> np.ndarray:
    """p(k) proportional to exp(-E_k / T) over basis indices."""
    if T <= 0:
        raise DomainError(f"temperature must be positive, got {T}")
    e = ising.all_state_energies(problem)
    w = np.exp(-(e - e.min()) / T)
    return w / w.sum()


def gibbs_over_eigenvalues(eigenvalues: np.ndarray, T: float) -> np.ndarray:
    """Gibbs populations over an eigenvalue list at temperature T."""
    if T <= 0:
        raise DomainError(f"temperature must be positive, got {T}")
    lam = np.asarray(eigenvalues, dtype=float)
    w = np.exp(-(lam - lam.min()) / T)
    return w / w.sum()


def spectrum_rows(spec: Spectrum):
    """(state string, energy) rows for the optional full-spectrum dump."""
    for k, e in zip(spec.states, spec.energies):
        spins = ising.SpinState.from_index(int(k), spec.n)
        yield "".join("+" if s > 0 else "-" for s in spins), float(e)
