"""Seeded generators for initial configurations of each feasibility class.

All generators are deterministic functions of their seed, so test suites and
sweeps can reproduce any configuration from its (seed, parameters) pair.
Exact-boundary instances use dyadic coordinates (multiples of 1/256) laid
out axis-aligned, which keeps every distance and time difference exact in
binary floating point and pins the pair margin to literal zero.
"""

from __future__ import annotations

import math
import random
from typing import Union

from .config import Feasibility, InitialConfiguration, classify
from .geometry import Point

DEFAULT_SPREAD = 2.5
DEFAULT_TMAX = 2.0
EPS_RANGE = (0.4, 1.0)

Seed = Union[int, random.Random]


def _rng(seed: Seed) -> random.Random:
    if isinstance(seed, random.Random):
        return seed
    return random.Random(seed)


def _sample_eps(rng: random.Random) -> float:
    lo, hi = EPS_RANGE
    return rng.uniform(lo, hi)


def good_pair(seed: Seed, eps: float = 0.0, *,
              min_margin: float = 0.25, max_margin: float = 1.5,
              spread: float = DEFAULT_SPREAD) -> InitialConfiguration:
    """Two agents with a qualifying margin of at least min_margin.

    The margin z = |dt| - (dist - eps) is sampled directly, then a distance
    and appearance order are drawn around it, so the class is robustly good
    regardless of rounding.
    """
    rng = _rng(seed)
    if eps <= 0.0:
        eps = _sample_eps(rng)
    d = rng.uniform(0.2, spread)
    z = rng.uniform(min_margin, max_margin)
    delta = max(0.0, d - eps) + z
    theta = rng.uniform(0.0, 2.0 * math.pi)
    base = Point(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))
    other = Point(base.x + d * math.cos(theta), base.y + d * math.sin(theta))
    t0 = rng.uniform(0.0, 1.0)
    if rng.random() < 0.5:
        starts, times = (base, other), (t0, t0 + delta)
    else:
        starts, times = (other, base), (t0 + delta, t0)
    cfg = InitialConfiguration(eps, starts, times)
    assert classify(cfg).kind == Feasibility.GOOD
    return cfg


def good_config(seed: Seed, n: int, eps: float = 0.0, *,
                spread: float = DEFAULT_SPREAD,
                tmax: float = DEFAULT_TMAX) -> InitialConfiguration:
    """n agents containing at least one strictly qualifying pair.

    A qualifying pair is constructed first; the remaining agents land
    uniformly in the surrounding square with arbitrary appearance times.
    Extra agents can only add qualifying pairs, never remove one.
    """
    rng = _rng(seed)
    if eps <= 0.0:
        eps = _sample_eps(rng)
    pair = good_pair(rng, eps, spread=min(spread, 2.0))
    starts = list(pair.starts)
    times = list(pair.times)
    cx = sum(p.x for p in starts) / 2.0
    cy = sum(p.y for p in starts) / 2.0
    while len(starts) < n:
        p = Point(cx + rng.uniform(-spread / 2.0, spread / 2.0),
                  cy + rng.uniform(-spread / 2.0, spread / 2.0))
        if any(p.dist(q) < 1e-3 for q in starts):
            continue
        starts.append(p)
        times.append(rng.uniform(0.0, tmax))
    cfg = InitialConfiguration(eps, tuple(starts), tuple(times))
    assert classify(cfg).kind == Feasibility.GOOD
    return cfg


def ungatherable_config(seed: Seed, n: int = 2, eps: float = 0.0, *,
                        min_margin: float = 0.25,
                        tmax: float = 1.0) -> InitialConfiguration:
    """n agents with every pair strictly beyond reach.

    Each pairwise distance exceeds eps + |dt| by at least min_margin, which
    is guaranteed by spacing the agents on a circle whose worst-case chord
    is eps + tmax + min_margin.
    """
    rng = _rng(seed)
    if eps <= 0.0:
        eps = _sample_eps(rng)
    need = eps + tmax + min_margin
    if n == 2:
        d = need + rng.uniform(0.0, 1.0)
        theta = rng.uniform(0.0, 2.0 * math.pi)
        base = Point(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))
        starts = (base, Point(base.x + d * math.cos(theta),
                              base.y + d * math.sin(theta)))
    else:
        # worst adjacent angular gap after jitter is 0.6 * 2pi/n
        radius = need / (2.0 * math.sin(0.6 * math.pi / n)) + 0.01
        pts = []
        for i in range(n):
            ang = (i + rng.uniform(-0.2, 0.2)) * 2.0 * math.pi / n
            pts.append(Point(radius * math.cos(ang),
                             radius * math.sin(ang)))
        starts = tuple(pts)
    times = tuple(rng.uniform(0.0, tmax) for _ in range(n))
    cfg = InitialConfiguration(eps, starts, times)
    assert classify(cfg).kind == Feasibility.UNGATHERABLE
    return cfg


def boundary_pair(seed: Seed, eps: float = 0.0) -> InitialConfiguration:
    """Two agents whose single pair margin is exactly zero.

    eps, the time gap, and all coordinates are multiples of 1/256 and the
    pair is axis-aligned, so dist - eps == |dt| holds without rounding.
    """
    rng = _rng(seed)
    if eps <= 0.0:
        eps = rng.randint(64, 256) / 256.0
    elif eps != round(eps * 256.0) / 256.0:
        raise ValueError("boundary construction needs eps to be a "
                         "multiple of 1/256")
    delta = rng.randint(32, 512) / 256.0
    d = delta + eps
    ax = rng.randint(-512, 512) / 256.0
    ay = rng.randint(-512, 512) / 256.0
    horizontal = rng.random() < 0.5
    if horizontal:
        b = Point(ax + d, ay)
    else:
        b = Point(ax, ay + d)
    a = Point(ax, ay)
    t0 = rng.randint(0, 256) / 256.0
    if rng.random() < 0.5:
        starts, times = (a, b), (t0, t0 + delta)
    else:
        starts, times = (b, a), (t0 + delta, t0)
    cfg = InitialConfiguration(eps, starts, times)
    assert classify(cfg).kind == Feasibility.BAD_GATHERABLE
    return cfg


def config_of_class(seed: Seed, kind: Feasibility, n: int = 2,
                    eps: float = 0.0) -> InitialConfiguration:
    if kind is Feasibility.GOOD:
        return good_config(seed, n, eps)
    if kind is Feasibility.UNGATHERABLE:
        return ungatherable_config(seed, n, eps)
    if n != 2:
        raise ValueError("exact-boundary generator only supports pairs")
    return boundary_pair(seed, eps)
