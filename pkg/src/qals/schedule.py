"""Annealing schedules A(s), B(s) and time-parameterized paths s(t).

Time is dimensionless (hbar = 1).  Ramps are linear in s; the `ramp`
argument is time per unit of s so excursions to different depths share
the same slew rate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError

FAMILIES = ("linear", "quadratic")


@dataclass(frozen=True)
class Schedule:
    """A(s) non-increasing, B(s) non-decreasing on [0, 1].

    linear:    A = gamma * (1 - s),   B = lam * s
    quadratic: A = gamma * (1 - s)^2, B = lam * s^2
    """

    family: str = "linear"
    gamma: float = 1.0
    lam: float = 1.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown schedule family {self.family!r}")
        if self.gamma <= 0 or self.lam <= 0:
            raise DomainError("schedule scales gamma, lam must be positive")

    def evaluate(self, s: float) -> tuple[float, float]:
        """Return (A(s), B(s))."""
        if not 0.0 <= s <= 1.0:
            raise DomainError(f"s={s} outside [0, 1]")
        if self.family == "linear":
            return self.gamma * (1.0 - s), self.lam * s
        return self.gamma * (1.0 - s) ** 2, self.lam * s**2

    def a(self, s: float) -> float:
        return self.evaluate(s)[0]

    def b(self, s: float) -> float:
        return self.evaluate(s)[1]

    def to_dict(self) -> dict:
        return {"family": self.family, "gamma": self.gamma, "lambda": self.lam}

    @classmethod
    def from_dict(cls, data: dict) -> "Schedule":
        return cls(
            family=data.get("family", "linear"),
            gamma=float(data.get("gamma", 1.0)),
            lam=float(data.get("lambda", 1.0)),
        )


@dataclass(frozen=True)
class AnnealPath:
    """Piecewise-linear s(t) given by waypoints (t, s)."""

    waypoints: tuple[tuple[float, float], ...]

    def __post_init__(self):
        wps = tuple((float(t), float(s)) for t, s in self.waypoints)
        if len(wps) < 1:
            raise DomainError("path needs at least one waypoint")
        times = [t for t, _ in wps]
        if any(t1 <= t0 for t0, t1 in zip(times, times[1:])):
            raise DomainError("waypoint times must be strictly increasing")
        if any(not 0.0 <= s <= 1.0 for _, s in wps):
            raise DomainError("waypoint s values must lie in [0, 1]")
        object.__setattr__(self, "waypoints", wps)

    @property
    def duration(self) -> float:
        return self.waypoints[-1][0] - self.waypoints[0][0]

    @property
    def s_start(self) -> float:
        return self.waypoints[0][1]

    @property
    def s_end(self) -> float:
        return self.waypoints[-1][1]

    def s_at(self, t: float) -> float:
        """Linear interpolation; exact at waypoint times."""
        wps = self.waypoints
        if not wps[0][0] <= t <= wps[-1][0]:
            raise DomainError(f"t={t} outside path time range")
        for (t0, s0), (t1, s1) in zip(wps, wps[1:]):
            if t == t0:
                return s0
            if t0 < t <= t1:
                if t == t1:
                    return s1
                return s0 + (s1 - s0) * (t - t0) / (t1 - t0)
        return wps[-1][1]

    def segments(self) -> list[tuple[float, float, float, float]]:
        """(t0, s0, t1, s1) per linear segment."""
        return [
            (t0, s0, t1, s1)
            for (t0, s0), (t1, s1) in zip(self.waypoints, self.waypoints[1:])
        ]


def forward_path(duration: float) -> AnnealPath:
    """Standard forward anneal s: 0 -> 1."""
    if duration <= 0:
        raise DomainError(f"duration must be positive, got {duration}")
    return AnnealPath(((0.0, 0.0), (float(duration), 1.0)))


def local_search_path(s_prime: float, tau: float, ramp: float) -> AnnealPath:
    """Reverse cycle s: 1 -> s' (hold tau) -> 1.

    With s' = 1 the excursion degenerates to a hold at s = 1 of duration tau
    (a single waypoint when tau = 0).
    """
    if not 0.0 <= s_prime <= 1.0:
        raise DomainError(f"s_prime={s_prime} outside [0, 1]")
    if tau < 0:
        raise DomainError(f"tau must be nonnegative, got {tau}")
    if ramp <= 0:
        raise DomainError(f"ramp must be positive, got {ramp}")
    if s_prime == 1.0:
        if tau > 0:
            return AnnealPath(((0.0, 1.0), (float(tau), 1.0)))
        return AnnealPath(((0.0, 1.0),))
    down = ramp * (1.0 - s_prime)
    pts = [(0.0, 1.0), (down, s_prime)]
    # a hold too short to advance the float clock is treated as no hold
    if down + tau > down:
        pts.append((down + tau, s_prime))
    else:
        tau = 0.0
    pts.append((2 * down + tau, 1.0))
    return AnnealPath(tuple(pts))
