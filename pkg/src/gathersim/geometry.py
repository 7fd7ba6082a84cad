"""Planar points, vectors, piecewise-linear trajectories and epsilon-approach queries.

All motion in this package is piecewise linear with segment speed either 0
(waiting) or 1 (moving), which keeps closest-approach queries exact: the
squared distance between two agents on overlapping segments is a quadratic
in time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional, Union

# Shared tolerances.  Times within TIME_TOL are treated as simultaneous,
# positions within POS_TOL as coincident, speeds within SPEED_TOL of 0 or 1
# as legal.
TIME_TOL = 1e-9
POS_TOL = 1e-6
SPEED_TOL = 1e-9


@dataclass(frozen=True, slots=True)
class Point:
    x: float
    y: float

    def __add__(self, v: "Vec2") -> "Point":
        return Point(self.x + v.dx, self.y + v.dy)

    def __sub__(self, other: "Point") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def dist(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    @property
    def coords(self) -> tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True, slots=True)
class Vec2:
    dx: float
    dy: float

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.dx + other.dx, self.dy + other.dy)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.dx - other.dx, self.dy - other.dy)

    def __neg__(self) -> "Vec2":
        return Vec2(-self.dx, -self.dy)

    def scaled(self, s: float) -> "Vec2":
        return Vec2(self.dx * s, self.dy * s)

    def dot(self, other: "Vec2") -> float:
        return self.dx * other.dx + self.dy * other.dy

    @property
    def norm(self) -> float:
        return math.hypot(self.dx, self.dy)

    def normalized(self) -> "Vec2":
        n = self.norm
        if n == 0.0:
            raise ValueError("cannot normalize a zero vector")
        return Vec2(self.dx / n, self.dy / n)

    @property
    def coords(self) -> tuple[float, float]:
        return (self.dx, self.dy)


def lex_less(a: Union[Point, Vec2], b: Union[Point, Vec2]) -> bool:
    """Strict lexicographic order on coordinates, first coordinate then second.

    A point or vector is "larger" than another when the other is lex_less.
    The order is translation invariant: shifting both arguments by the same
    vector preserves the outcome.
    """
    ax, ay = a.coords
    bx, by = b.coords
    if ax != bx:
        return ax < bx
    return ay < by


def lex_max(items):
    """Largest element under lex_less.  Items must be non-empty."""
    it = iter(items)
    best = next(it)
    for x in it:
        if lex_less(best, x):
            best = x
    return best


def is_finite_point(p: Point) -> bool:
    return math.isfinite(p.x) and math.isfinite(p.y)


@dataclass(frozen=True, slots=True)
class Segment:
    """One constant-velocity piece of a trajectory.

    Invariant: speed is 0 or 1 within SPEED_TOL, except that callers may
    disable the check for derived or replayed data.
    """

    start_time: float
    end_time: float
    start_point: Point
    end_point: Point

    def __post_init__(self):
        if self.end_time < self.start_time - TIME_TOL:
            raise ValueError("segment end precedes its start")

    @property
    def duration(self) -> float:
        return self.end_time - self.start_time

    @property
    def velocity(self) -> Vec2:
        dur = self.duration
        if dur <= 0.0:
            return Vec2(0.0, 0.0)
        d = self.end_point - self.start_point
        return Vec2(d.dx / dur, d.dy / dur)

    @property
    def speed(self) -> float:
        dur = self.duration
        if dur <= 0.0:
            return 0.0
        return self.start_point.dist(self.end_point) / dur

    def point_at(self, t: float) -> Point:
        dur = self.duration
        if dur <= 0.0:
            return self.start_point
        u = (t - self.start_time) / dur
        return Point(
            self.start_point.x + (self.end_point.x - self.start_point.x) * u,
            self.start_point.y + (self.end_point.y - self.start_point.y) * u,
        )


class Trajectory:
    """Piecewise-linear path of a single agent, defined from its start time on.

    Segments are contiguous in time and space.  position_at is defined on
    [start_time, end_time]; queries before the start or after the end raise.
    """

    __slots__ = ("segments",)

    def __init__(self, segments: list[Segment], check_speed: bool = True):
        if not segments:
            raise ValueError("trajectory needs at least one segment")
        prev = None
        for seg in segments:
            # Sub-tolerance slivers from coalesced events carry no usable
            # speed information.  Slightly longer slivers can still have
            # their ratio distorted by event-time snapping, so unit speed
            # is also accepted when the absolute length/duration drift is
            # below snapping scale.
            if check_speed and seg.duration > TIME_TOL:
                sp = seg.speed
                drift = abs(seg.start_point.dist(seg.end_point) - seg.duration)
                if not (sp <= SPEED_TOL or abs(sp - 1.0) <= 1e-6
                        or drift <= 10.0 * TIME_TOL):
                    raise ValueError(f"segment speed {sp} is neither 0 nor 1")
            if prev is not None:
                if abs(seg.start_time - prev.end_time) > TIME_TOL:
                    raise ValueError("segments are not contiguous in time")
                if prev.end_point.dist(seg.start_point) > POS_TOL:
                    raise ValueError("segments are not contiguous in space")
            prev = seg
        self.segments = list(segments)

    @property
    def start_time(self) -> float:
        return self.segments[0].start_time

    @property
    def end_time(self) -> float:
        return self.segments[-1].end_time

    @property
    def start_point(self) -> Point:
        return self.segments[0].start_point

    @property
    def end_point(self) -> Point:
        return self.segments[-1].end_point

    def position_at(self, t: float) -> Point:
        if t < self.start_time - TIME_TOL or t > self.end_time + TIME_TOL:
            raise ValueError(f"time {t} outside trajectory span "
                             f"[{self.start_time}, {self.end_time}]")
        t = min(max(t, self.start_time), self.end_time)
        # Linear scan; trajectories are consumed mostly in order and n is small.
        for seg in self.segments:
            if t <= seg.end_time + TIME_TOL:
                return seg.point_at(t)
        return self.segments[-1].point_at(t)

    def breakpoints(self) -> Iterator[tuple[float, Point]]:
        yield self.segments[0].start_time, self.segments[0].start_point
        for seg in self.segments:
            yield seg.end_time, seg.end_point


class TrajectoryBuilder:
    """Incrementally records an agent's motion as the engine advances time."""

    __slots__ = ("_times", "_points")

    def __init__(self, start_time: float, start_point: Point):
        self._times = [start_time]
        self._points = [start_point]

    @property
    def current_time(self) -> float:
        return self._times[-1]

    @property
    def current_point(self) -> Point:
        return self._points[-1]

    def move_to(self, t: float, p: Point) -> None:
        if t < self._times[-1] - TIME_TOL:
            raise ValueError("trajectory time went backwards")
        t = max(t, self._times[-1])
        self._times.append(t)
        self._points.append(p)

    def build(self) -> Trajectory:
        segs = []
        for i in range(len(self._times) - 1):
            if self._times[i + 1] - self._times[i] <= 0.0 \
                    and self._points[i].dist(self._points[i + 1]) <= POS_TOL:
                continue
            segs.append(Segment(self._times[i], self._times[i + 1],
                                self._points[i], self._points[i + 1]))
        if not segs:
            segs = [Segment(self._times[0], self._times[-1],
                            self._points[0], self._points[-1])]
        return Trajectory(segs)


def solve_crossing_in(rx: float, ry: float, vx: float, vy: float,
                      eps: float, length: float) -> Optional[float]:
    """First s in [0, length] where |R0 + V s| drops to eps, else None.

    R0 is the relative position at s=0 and V the constant relative velocity.
    Uses the standard stable quadratic formula with citardauq pairing so the
    smaller root is accurate even when the roots differ widely in magnitude.
    Roots within TIME_TOL outside [0, length] are snapped onto the interval;
    near-tangent passes (discriminant slightly negative) count as touching.
    """
    a2 = vx * vx + vy * vy
    a0 = rx * rx + ry * ry - eps * eps
    if a0 <= 0.0:
        # Already at distance <= eps at the window start.
        return 0.0
    if a2 <= 1e-18:
        return None
    a1 = 2.0 * (rx * vx + ry * vy)
    if a1 >= 0.0:
        # Moving apart or tangential for the whole window.
        return None
    disc = a1 * a1 - 4.0 * a2 * a0
    if disc < 0.0:
        # Tolerate float loss on grazing passes: the minimum squared distance
        # is a0 - a1^2/(4 a2); accept if it is within noise of eps^2.
        scale = max(a1 * a1, abs(4.0 * a2 * a0), 1e-30)
        if disc / scale < -1e-12:
            return None
        disc = 0.0
    sq = math.sqrt(disc)
    # a1 < 0 here, so q > 0 and the smaller root is a0 / q.
    q = -(a1 - sq) / 2.0
    root = a0 / q if q > 0.0 else -a1 / (2.0 * a2)
    if root < -TIME_TOL or root > length + TIME_TOL:
        return None
    return min(max(root, 0.0), length)


def solve_crossing_out(rx: float, ry: float, vx: float, vy: float,
                       eps: float, length: float) -> Optional[float]:
    """First s in [0, length] where |R0 + V s| exceeds eps, else None.

    Defined for pairs currently at distance <= eps.  Returns the larger root
    of the squared-distance quadratic, snapped onto the interval.
    """
    a2 = vx * vx + vy * vy
    a0 = rx * rx + ry * ry - eps * eps
    if a0 > 0.0:
        # Numerically already outside; separate immediately.
        return 0.0
    if a2 <= 1e-18:
        return None
    a1 = 2.0 * (rx * vx + ry * vy)
    disc = a1 * a1 - 4.0 * a2 * a0
    if disc < 0.0:
        return None
    sq = math.sqrt(disc)
    root = (-a1 + sq) / (2.0 * a2)
    if root < 0.0 or root > length + TIME_TOL:
        return None
    return min(root, length)


def earliest_approach(traj_a: Trajectory, traj_b: Trajectory,
                      eps: float, t_from: float) -> Optional[float]:
    """Earliest t >= t_from with dist(a(t), b(t)) <= eps, or None.

    Both trajectories must cover a common time span containing t_from.
    Segment boundaries within TIME_TOL of a root are treated as the root.
    """
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    lo = max(traj_a.start_time, traj_b.start_time, t_from)
    hi = min(traj_a.end_time, traj_b.end_time)
    if hi < lo - TIME_TOL:
        raise ValueError("trajectories have no overlapping time coverage "
                         f"at or after t={t_from}")
    ia = [s for s in traj_a.segments if s.end_time >= lo - TIME_TOL]
    ib = [s for s in traj_b.segments if s.end_time >= lo - TIME_TOL]
    i = j = 0
    t = lo
    while i < len(ia) and j < len(ib):
        sa, sb = ia[i], ib[j]
        w_lo = max(sa.start_time, sb.start_time, t)
        w_hi = min(sa.end_time, sb.end_time, hi)
        if w_hi >= w_lo - TIME_TOL:
            pa = sa.point_at(w_lo)
            pb = sb.point_at(w_lo)
            va = sa.velocity
            vb = sb.velocity
            s = solve_crossing_in(pb.x - pa.x, pb.y - pa.y,
                                  vb.dx - va.dx, vb.dy - va.dy,
                                  eps, max(w_hi - w_lo, 0.0))
            if s is not None:
                return w_lo + s
            t = w_hi
        if sa.end_time <= sb.end_time + TIME_TOL:
            i += 1
        if sb.end_time <= sa.end_time + TIME_TOL:
            j += 1
        if w_hi >= hi - TIME_TOL and w_hi >= w_lo - TIME_TOL:
            break
    return None
