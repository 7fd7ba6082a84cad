"""Initial configurations and their feasibility classification.

A configuration lists n >= 2 agents, each with a distinct starting point and
a starting time, plus the proximity radius epsilon.  A configuration admits
gathering exactly when some pair (i, j) satisfies

    |t_i - t_j| >= dist(p_i, p_j) - epsilon.

Strict inequality for some pair puts the configuration in the robust GOOD
class; equality (within TIME_TOL) for the best pair makes it BAD_GATHERABLE,
gatherable but with no timing slack; strict failure for all pairs makes it
UNGATHERABLE, where no algorithm can ever bring two agents within epsilon.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Optional

from .geometry import Point, Vec2, TIME_TOL, is_finite_point, lex_less


class Feasibility(enum.Enum):
    GOOD = "GOOD"
    BAD_GATHERABLE = "BAD_GATHERABLE"
    UNGATHERABLE = "UNGATHERABLE"


@dataclass(frozen=True)
class FeasibilityClass:
    kind: Feasibility
    # Lexicographically first qualifying index pair (i, j), i < j, for the
    # two gatherable classes; None when ungatherable.
    witness: Optional[tuple[int, int]]


@dataclass(frozen=True)
class InitialConfiguration:
    epsilon: float
    starts: tuple[Point, ...]
    times: tuple[float, ...]

    def __post_init__(self):
        if not (self.epsilon > 0.0):
            raise ValueError("epsilon must be positive")
        n = len(self.starts)
        if n < 2:
            raise ValueError("a configuration needs at least two agents")
        if len(self.times) != n:
            raise ValueError("starts and times must have equal length")
        for p in self.starts:
            if not is_finite_point(p):
                raise ValueError("start points must be finite")
        for t in self.times:
            if not (t >= 0.0):
                raise ValueError("start times must be >= 0")
        for i in range(n):
            for j in range(i + 1, n):
                if self.starts[i] == self.starts[j]:
                    raise ValueError(
                        f"agents {i} and {j} share a starting point")

    @property
    def n(self) -> int:
        return len(self.starts)

    def agent(self, i: int) -> tuple[Point, float]:
        return self.starts[i], self.times[i]

    def diameter(self) -> float:
        n = self.n
        return max(self.starts[i].dist(self.starts[j])
                   for i in range(n) for j in range(i + 1, n))

    def max_start_time(self) -> float:
        return max(self.times)

    def translated(self, v: Vec2) -> "InitialConfiguration":
        return InitialConfiguration(self.epsilon,
                                    tuple(p + v for p in self.starts),
                                    self.times)

    def time_shifted(self, dt: float) -> "InitialConfiguration":
        return InitialConfiguration(self.epsilon, self.starts,
                                    tuple(t + dt for t in self.times))

    def to_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "agents": [{"x": p.x, "y": p.y, "t": t}
                       for p, t in zip(self.starts, self.times)],
        }

    @staticmethod
    def from_dict(data: dict) -> "InitialConfiguration":
        if not isinstance(data, dict):
            raise ValueError("configuration must be a JSON object")
        try:
            eps = float(data["epsilon"])
            agents = data["agents"]
            starts = tuple(Point(float(a["x"]), float(a["y"])) for a in agents)
            times = tuple(float(a["t"]) for a in agents)
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed configuration: {exc}") from exc
        return InitialConfiguration(eps, starts, times)

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")

    @staticmethod
    def load(path) -> "InitialConfiguration":
        with open(path, "r", encoding="utf-8") as fh:
            return InitialConfiguration.from_dict(json.load(fh))


def pair_margin(cfg: InitialConfiguration, i: int, j: int) -> float:
    """Slack |t_i - t_j| - (dist(p_i, p_j) - eps); >= 0 means gatherable pair."""
    d = cfg.starts[i].dist(cfg.starts[j])
    return abs(cfg.times[i] - cfg.times[j]) - (d - cfg.epsilon)


def classify(cfg: InitialConfiguration) -> FeasibilityClass:
    """Feasibility class plus the lexicographically first qualifying pair.

    Margins within TIME_TOL of zero count as equality, so boundary
    configurations land in BAD_GATHERABLE deterministically.
    """
    first_strict = None
    first_equal = None
    n = cfg.n
    for i in range(n):
        for j in range(i + 1, n):
            m = pair_margin(cfg, i, j)
            if m > TIME_TOL:
                if first_strict is None:
                    first_strict = (i, j)
            elif m >= -TIME_TOL:
                if first_equal is None:
                    first_equal = (i, j)
    if first_strict is not None:
        return FeasibilityClass(Feasibility.GOOD, first_strict)
    if first_equal is not None:
        return FeasibilityClass(Feasibility.BAD_GATHERABLE, first_equal)
    return FeasibilityClass(Feasibility.UNGATHERABLE, None)


def vector_sequence(cfg: InitialConfiguration) -> list[Vec2]:
    """All n(n-1) ordered-pair difference vectors, ascending in lex order.

    The sequence is closed under negation and is shared by every agent: it
    depends only on relative positions, so agents with translated views of
    the configuration compute the same list.
    """
    vecs = []
    n = cfg.n
    for i in range(n):
        for j in range(n):
            if i != j:
                vecs.append(cfg.starts[j] - cfg.starts[i])
    vecs.sort(key=lambda v: v.coords)
    return vecs


class NoQualifyingPair(ValueError):
    pass


def qualifying_vector(cfg: InitialConfiguration) -> Vec2:
    """Largest difference vector between a pair meeting the gathering bound.

    Raises NoQualifyingPair when no pair satisfies
    |t_i - t_j| >= dist - eps (within TIME_TOL), i.e. the configuration is
    ungatherable.
    """
    best = None
    n = cfg.n
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if pair_margin(cfg, i, j) >= -TIME_TOL:
                v = cfg.starts[j] - cfg.starts[i]
                if best is None or lex_less(best, v):
                    best = v
    if best is None:
        raise NoQualifyingPair("no pair satisfies |dt| >= dist - eps")
    return best
