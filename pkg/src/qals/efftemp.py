"""Single-qubit effective temperature for building tempering ladders.

The ground state of -A sigma^x + B sigma^z has an amplitude ratio
(sqrt(A^2 + B^2) + B) / A between its two components; matching that ratio
to a Boltzmann factor defines an effective temperature for the transverse
field strength at s'.  The ratio depends only on B/A, so T_eff is scale
invariant.  B = 0 gives ratio 1 and infinite temperature, represented as
math.inf throughout (never an overflow).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .schedule import Schedule


@dataclass(frozen=True)
class EffTempPoint:
    s_prime: float
    A: float
    B: float
    ratio: float
    T_eff: float


def amplitude_ratio(A: float, B: float) -> float:
    """Ground-state component ratio of -A sigma^x + B sigma^z; always >= 1."""
    if A <= 0:
        raise DomainError(f"transverse scale A must be > 0, got {A}")
    if B < 0:
        raise DomainError(f"longitudinal scale B must be >= 0, got {B}")
    return (math.sqrt(A * A + B * B) + B) / A


def effective_temperature(A: float, B: float) -> float:
    """2 / ln(ratio^2); infinite when B = 0."""
    ratio = amplitude_ratio(A, B)
    if ratio == 1.0:
        return math.inf
    return 2.0 / math.log(ratio * ratio)


def ladder(schedule: Schedule, s_values) -> list[EffTempPoint]:
    """Effective-temperature ladder over ascending s' values."""
    points = []
    for s in s_values:
        A, B = schedule.evaluate(s)
        if A == 0.0:
            raise DomainError(f"A(s) = 0 at s = {s}; ladder requires A > 0")
        points.append(
            EffTempPoint(
                s_prime=float(s),
                A=A,
                B=B,
                ratio=amplitude_ratio(A, B),
                T_eff=effective_temperature(A, B),
            )
        )
    return points


def ladder_csv_rows(points) -> list[str]:
    """CSV lines (s_prime, A, B, ratio, T_eff), 'inf' for infinite T."""
    lines = ["s_prime,A,B,ratio,T_eff"]
    for p in points:
        t = "inf" if math.isinf(p.T_eff) else repr(p.T_eff)
        lines.append(f"{p.s_prime!r},{p.A!r},{p.B!r},{p.ratio!r},{t}")
    return lines
