"""Event-driven simulation of agents that interact on epsilon-proximity.

Agents appear at their starting times, move at speed 0 or 1 along straight
instructions, and trigger a gathering event (GA) whenever two of them come
within distance epsilon after having been farther apart (or when one appears
that close).  A GA is instantaneous: participants exchange knowledge and may
change course.  Participants of one GA are the whole connected component of
the proximity graph that contains a newly formed edge, so chains of agents
within epsilon of each other gossip together even when the endpoints of the
chain are more than epsilon apart.

Programs see only relative data: their own clock, their own dead-reckoned
position, and other agents' positions relative to themselves.  Absolute
coordinates, epsilon, and any ordering of engine identities never cross the
program boundary.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

from .config import InitialConfiguration
from .geometry import (POS_TOL, TIME_TOL, Point, Trajectory, TrajectoryBuilder,
                       Vec2, solve_crossing_in, solve_crossing_out)

# Absolute slack on proximity checks at event instants.  Purely float noise
# scale; genuine approaches are detected by root finding, not by this slack.
PROX_TOL = 1e-9

# A program may emit at most this many zero-duration instructions in a row.
MAX_INSTANT_INSTRUCTIONS = 1000


@dataclass(frozen=True, slots=True)
class AgentRef:
    """Opaque agent identity: supports equality and hashing, never ordering."""
    _token: int

    def __lt__(self, other):
        raise TypeError("agent identities are unordered")

    __le__ = __lt__
    __gt__ = __lt__
    __ge__ = __lt__

    def __repr__(self):
        return f"AgentRef(#{self._token})"


@dataclass(frozen=True)
class KnowledgeItem:
    """One fact an agent holds about some agent (possibly itself).

    initial_position is expressed in the owner's frame, whose origin is the
    owner's own starting point.  Frames share axes and scale, so re-framing
    is a pure translation.
    """
    ref: AgentRef
    initial_position: Point
    state: str
    metadata: Optional[dict] = None


def translate_knowledge(item: KnowledgeItem, offset: Vec2) -> KnowledgeItem:
    """Re-express an item in a frame shifted by -offset.

    offset is the position of the sender's frame origin in the receiver's
    frame, so the receiver adds it to every incoming coordinate.
    """
    return replace(item, initial_position=item.initial_position + offset)


@dataclass(frozen=True, slots=True)
class Go:
    direction: Vec2
    distance: float


@dataclass(frozen=True, slots=True)
class Wait:
    duration: float


@dataclass(frozen=True, slots=True)
class GotoStop:
    target: Point  # in the issuing agent's own frame


Instruction = Go | Wait | GotoStop


class InvalidInstruction(ValueError):
    pass


@dataclass(frozen=True)
class Participant:
    ref: AgentRef
    position: Point  # current, in the observing agent's frame
    tag: str
    # Direct visibility from the observer; chain-connected participants
    # beyond that range are known only through gossip.
    adjacent: bool = True


@dataclass(frozen=True)
class GAView:
    time: float  # observer-local
    participants: tuple[Participant, ...]
    self_index: int

    def others(self):
        return tuple(p for k, p in enumerate(self.participants)
                     if k != self.self_index)


class Program:
    """Behavior of one agent.  Subclasses override the callbacks they need.

    The engine calls on_appear once at the agent's starting time, on_ga at
    every gathering event the agent participates in, on_order when another
    participant of the current GA directs it somewhere, and on_idle when the
    instruction queue runs dry.  A program that issues nothing simply waits
    in place until an external event wakes it.
    """

    def on_appear(self, ctx: "AgentContext") -> None:
        pass

    def on_ga(self, ctx: "AgentContext", view: GAView) -> None:
        pass

    def on_order(self, ctx: "AgentContext", target: Point,
                 issuer: AgentRef) -> None:
        pass

    def on_idle(self, ctx: "AgentContext") -> None:
        pass


@dataclass
class Event:
    time: float
    kind: str  # appear | ga | order | stop | horizon
    agents: tuple[int, ...] = ()
    positions: tuple[Point, ...] = ()
    tags: tuple[str, ...] = ()
    issuer: Optional[int] = None
    target: Optional[Point] = None

    def to_json_obj(self) -> dict:
        if self.kind == "appear":
            return {"t": self.time, "kind": "appear",
                    "agent": self.agents[0],
                    "position": list(self.positions[0].coords)}
        if self.kind == "ga":
            return {"t": self.time, "kind": "ga",
                    "agents": list(self.agents),
                    "positions": [list(p.coords) for p in self.positions],
                    "tags": list(self.tags)}
        if self.kind == "order":
            return {"t": self.time, "kind": "order", "issuer": self.issuer,
                    "recipients": list(self.agents),
                    "target": list(self.target.coords)}
        if self.kind == "stop":
            return {"t": self.time, "kind": "stop", "agent": self.agents[0],
                    "position": list(self.positions[0].coords)}
        if self.kind == "horizon":
            return {"t": self.time, "kind": "horizon"}
        raise ValueError(f"unknown event kind {self.kind}")


@dataclass
class Verdict:
    kind: str  # gathered | split | timeout
    time: float
    point: Optional[Point] = None
    groups: tuple[Point, ...] = ()

    def to_json_obj(self) -> dict:
        if self.kind == "gathered":
            return {"kind": "verdict", "verdict": "gathered",
                    "point": list(self.point.coords)}
        if self.kind == "split":
            return {"kind": "verdict", "verdict": "split",
                    "groups": len(self.groups),
                    "points": [list(p.coords) for p in self.groups]}
        return {"kind": "verdict", "verdict": "timeout", "time": self.time}


@dataclass
class Trace:
    events: list[Event]
    final_positions: tuple[Point, ...]
    final_tags: tuple[str, ...]
    trajectories: tuple[Trajectory, ...]
    verdict: Verdict

    def jsonl_lines(self) -> list[str]:
        lines = [json.dumps(ev.to_json_obj()) for ev in self.events]
        lines.append(json.dumps(self.verdict.to_json_obj()))
        return lines

    def write_jsonl(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for line in self.jsonl_lines():
                fh.write(line + "\n")

    def ga_events(self) -> list[Event]:
        return [ev for ev in self.events if ev.kind == "ga"]

    def first_ga_time(self) -> Optional[float]:
        for ev in self.events:
            if ev.kind == "ga":
                return ev.time
        return None


def read_jsonl(path) -> list[dict]:
    with open(path, "r", encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


def form_ga_groups(adjacent: set[frozenset],
                   new_edges: set[frozenset]) -> list[tuple[int, ...]]:
    """Connected components of the proximity graph that contain a new edge.

    adjacent holds all pairs currently within epsilon (including the new
    ones); new_edges the pairs that crossed within epsilon at this instant.
    Components without a new edge had their GA earlier and stay silent.
    Returned groups are sorted internally and ordered by smallest member.
    """
    if not new_edges:
        return []
    nbr: dict[int, set[int]] = {}
    for pair in adjacent | new_edges:
        a, b = tuple(pair)
        nbr.setdefault(a, set()).add(b)
        nbr.setdefault(b, set()).add(a)
    seen: set[int] = set()
    groups = []
    for start in sorted(nbr):
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in nbr.get(u, ()):
                if v not in comp:
                    comp.add(v)
                    queue.append(v)
        seen |= comp
        if any(pair <= comp for pair in new_edges):
            groups.append(tuple(sorted(comp)))
    groups.sort(key=lambda g: g[0])
    return groups


def default_horizon(cfg: InitialConfiguration) -> float:
    eps_floor = min(cfg.epsilon, 1.0)
    return 50.0 * (cfg.diameter() + cfg.max_start_time() + cfg.n) \
        + 100.0 / eps_floor


@dataclass
class _Motion:
    t_end: float
    p_end: Point
    vx: float
    vy: float
    stop_on_arrival: bool


class _Agent:
    __slots__ = ("idx", "ref", "origin", "start_time", "appeared", "stopped",
                 "tag", "knowledge", "program", "queue", "motion", "pos",
                 "builder", "ctx")

    def __init__(self, idx: int, ref: AgentRef, origin: Point,
                 start_time: float, program: Program):
        self.idx = idx
        self.ref = ref
        self.origin = origin
        self.start_time = start_time
        self.appeared = False
        self.stopped = False
        self.tag = ""
        self.knowledge: dict[AgentRef, KnowledgeItem] = {}
        self.program = program
        self.queue: deque[Instruction] = deque()
        self.motion: Optional[_Motion] = None
        self.pos = origin
        self.builder: Optional[TrajectoryBuilder] = None
        self.ctx: Optional[AgentContext] = None

    @property
    def velocity(self) -> tuple[float, float]:
        if self.motion is None:
            return (0.0, 0.0)
        return (self.motion.vx, self.motion.vy)


class AgentContext:
    """Program-facing handle.  Exposes only frame-relative state."""

    __slots__ = ("_sim", "_agent", "_in_ga_group")

    def __init__(self, sim: "Simulation", agent: _Agent):
        self._sim = sim
        self._agent = agent
        self._in_ga_group = None

    @property
    def self_ref(self) -> AgentRef:
        return self._agent.ref

    @property
    def now(self) -> float:
        return self._sim._now - self._agent.start_time

    @property
    def position(self) -> Point:
        p = self._agent.pos
        o = self._agent.origin
        return Point(p.x - o.x, p.y - o.y)

    @property
    def tag(self) -> str:
        return self._agent.tag

    @tag.setter
    def tag(self, value: str) -> None:
        self._agent.tag = value

    @property
    def knowledge(self) -> dict[AgentRef, KnowledgeItem]:
        return self._agent.knowledge

    def issue(self, instr: Instruction) -> None:
        if self._agent.stopped:
            raise InvalidInstruction("agent has stopped")
        self._agent.queue.append(instr)

    def clear_plan(self) -> None:
        self._agent.queue.clear()
        self._agent.motion = None

    def stop(self) -> None:
        self._sim._request_stop(self._agent)

    def send_order(self, target: Point) -> None:
        if self._in_ga_group is None:
            raise RuntimeError("orders can only be sent during a GA")
        self._sim._queue_order(self._agent, target, self._in_ga_group)


ProgramFactory = Callable[[], Program]


class Simulation:
    def __init__(self, cfg: InitialConfiguration,
                 program_factory: ProgramFactory,
                 horizon: Optional[float] = None):
        self.cfg = cfg
        self.eps = cfg.epsilon
        self.horizon = default_horizon(cfg) if horizon is None else horizon
        self.agents = []
        for i in range(cfg.n):
            start, t0 = cfg.agent(i)
            ag = _Agent(i, AgentRef(i), start, t0, program_factory())
            ag.ctx = AgentContext(self, ag)
            self.agents.append(ag)
        self._now = min(cfg.times)
        self.adjacent: set[frozenset] = set()
        self._recent_separation: dict[frozenset, float] = {}
        self.events: list[Event] = []
        self._pending_orders: list[tuple[_Agent, Point, tuple[int, ...]]] = []

    # -- program-facing hooks ------------------------------------------------

    def _request_stop(self, agent: _Agent) -> None:
        if agent.stopped:
            return
        agent.stopped = True
        agent.queue.clear()
        agent.motion = None
        self.events.append(Event(self._now, "stop", (agent.idx,),
                                 (agent.pos,)))

    def _queue_order(self, issuer: _Agent, target: Point,
                     group: tuple[int, ...]) -> None:
        target_global = Point(issuer.origin.x + target.x,
                              issuer.origin.y + target.y)
        self._pending_orders.append((issuer, target_global, group))

    # -- motion --------------------------------------------------------------

    def _start_pending(self, agent: _Agent) -> None:
        """Begin the next queued instruction, skipping instantaneous ones."""
        for _ in range(MAX_INSTANT_INSTRUCTIONS):
            if agent.stopped or agent.motion is not None or not agent.queue:
                return
            instr = agent.queue.popleft()
            if isinstance(instr, Go):
                if instr.distance < 0.0:
                    raise InvalidInstruction("negative distance")
                if abs(instr.direction.norm - 1.0) > 1e-9:
                    raise InvalidInstruction("direction is not a unit vector")
                if instr.distance <= POS_TOL:
                    continue
                end = Point(agent.pos.x + instr.direction.dx * instr.distance,
                            agent.pos.y + instr.direction.dy * instr.distance)
                agent.motion = _Motion(self._now + instr.distance, end,
                                       instr.direction.dx, instr.direction.dy,
                                       False)
                return
            if isinstance(instr, Wait):
                if instr.duration < 0.0:
                    raise InvalidInstruction("negative wait")
                if instr.duration <= TIME_TOL:
                    continue
                agent.motion = _Motion(self._now + instr.duration, agent.pos,
                                       0.0, 0.0, False)
                return
            if isinstance(instr, GotoStop):
                tgt = Point(agent.origin.x + instr.target.x,
                            agent.origin.y + instr.target.y)
                d = agent.pos.dist(tgt)
                if d <= POS_TOL:
                    self._request_stop(agent)
                    return
                u = (tgt - agent.pos).normalized()
                agent.motion = _Motion(self._now + d, tgt, u.dx, u.dy, True)
                return
            raise InvalidInstruction(f"unknown instruction {instr!r}")
        raise InvalidInstruction("too many zero-duration instructions")

    def _advance_to(self, t: float) -> None:
        dt = t - self._now
        if dt < 0.0:
            dt = 0.0
        for ag in self.agents:
            if not ag.appeared:
                continue
            if ag.motion is not None and dt > 0.0:
                m = ag.motion
                if t >= m.t_end - TIME_TOL:
                    ag.pos = m.p_end
                else:
                    ag.pos = Point(ag.pos.x + m.vx * dt, ag.pos.y + m.vy * dt)
            ag.builder.move_to(t, ag.pos)
        self._now = t

    # -- knowledge -----------------------------------------------------------

    def _gossip(self, group: tuple[int, ...]) -> None:
        members = [self.agents[i] for i in group]
        for ag in members:
            self_item = ag.knowledge.get(ag.ref)
            if self_item is None or self_item.state != ag.tag:
                ag.knowledge[ag.ref] = KnowledgeItem(ag.ref, Point(0.0, 0.0),
                                                     ag.tag)
        snapshots = {ag.idx: dict(ag.knowledge) for ag in members}
        for recv in members:
            for send in members:
                if send is recv:
                    continue
                offset = Vec2(send.origin.x - recv.origin.x,
                              send.origin.y - recv.origin.y)
                for item in snapshots[send.idx].values():
                    if item.ref not in recv.knowledge:
                        recv.knowledge[item.ref] = \
                            translate_knowledge(item, offset)
        # Direct observations refresh state tags.
        for recv in members:
            for part in members:
                old = recv.knowledge[part.ref]
                if old.state != part.tag:
                    recv.knowledge[part.ref] = replace(old, state=part.tag)

    def _view_for(self, observer: _Agent, group: tuple[int, ...]) -> GAView:
        entries = []
        for i in group:
            ag = self.agents[i]
            rel = Point(ag.pos.x - observer.origin.x,
                        ag.pos.y - observer.origin.y)
            rel_init = (ag.origin.x - observer.origin.x,
                        ag.origin.y - observer.origin.y)
            near = ag.pos.dist(observer.pos) <= self.eps + PROX_TOL
            entries.append(((rel.coords, rel_init), ag.idx,
                            Participant(ag.ref, rel, ag.tag, near)))
        entries.sort(key=lambda e: e[0])
        parts = tuple(e[2] for e in entries)
        self_index = next(k for k, e in enumerate(entries)
                          if e[1] == observer.idx)
        return GAView(self._now - observer.start_time, parts, self_index)

    # -- event computation ---------------------------------------------------

    def _pair_candidate(self, a: _Agent, b: _Agent,
                        window: float) -> Optional[tuple[float, str]]:
        pair = frozenset((a.idx, b.idx))
        avx, avy = a.velocity
        bvx, bvy = b.velocity
        rx = b.pos.x - a.pos.x
        ry = b.pos.y - a.pos.y
        vx = bvx - avx
        vy = bvy - avy
        if pair in self.adjacent:
            s = solve_crossing_out(rx, ry, vx, vy, self.eps, window)
            if s is None:
                return None
            return (self._now + s, "separate")
        s = solve_crossing_in(rx, ry, vx, vy, self.eps, window)
        if s is None:
            return None
        t = self._now + s
        if t <= self._recent_separation.get(pair, -math.inf) + TIME_TOL:
            return None
        if s <= TIME_TOL:
            # Boundary contact at the window start only counts when the pair
            # is genuinely closing in; a pair parked at distance epsilon
            # after separating does not re-trigger.
            closing = rx * vx + ry * vy
            dist2 = rx * rx + ry * ry
            if dist2 >= (self.eps - POS_TOL) ** 2 and closing >= -1e-15:
                return None
        return (t, "approach")

    # -- main loop -----------------------------------------------------------

    def run(self) -> Trace:
        cfg = self.cfg
        while True:
            live = [ag for ag in self.agents if ag.appeared]
            pending_appear = [ag for ag in self.agents if not ag.appeared]
            if live and all(ag.stopped for ag in live) and not pending_appear:
                return self._finish("stopped")
            quiescent = not pending_appear and all(
                ag.stopped or (ag.motion is None and not ag.queue)
                for ag in live)
            if quiescent:
                return self._finish("quiescent")

            t_bound = self.horizon
            for ag in pending_appear:
                t_bound = min(t_bound, ag.start_time)
            for ag in live:
                if ag.motion is not None:
                    t_bound = min(t_bound, ag.motion.t_end)
            t_bound = max(t_bound, self._now)

            t_event = t_bound
            window = t_bound - self._now
            pair_hits: list[tuple[float, str, frozenset]] = []
            for i in range(len(self.agents)):
                a = self.agents[i]
                if not a.appeared:
                    continue
                for j in range(i + 1, len(self.agents)):
                    b = self.agents[j]
                    if not b.appeared:
                        continue
                    cand = self._pair_candidate(a, b, window)
                    if cand is not None:
                        pair_hits.append((cand[0], cand[1],
                                          frozenset((a.idx, b.idx))))
                        t_event = min(t_event, cand[0])

            if t_event > self.horizon + TIME_TOL:
                return self._finish("timeout")
            if t_event >= self.horizon - TIME_TOL \
                    and not self._instant_has_work(t_event, pair_hits):
                return self._finish("timeout")

            self._advance_to(t_event)
            self._process_instant(pair_hits)

    def _instant_has_work(self, t: float,
                          pair_hits: list) -> bool:
        for ag in self.agents:
            if not ag.appeared and ag.start_time <= t + TIME_TOL:
                return True
            if ag.appeared and ag.motion is not None \
                    and ag.motion.t_end <= t + TIME_TOL:
                return True
        return any(ht <= t + TIME_TOL for ht, _, _ in pair_hits)

    def _process_instant(self, pair_hits: list) -> None:
        t = self._now
        new_edges: set[frozenset] = set()

        # Appearances first: they may create proximity immediately.
        appeared_now = []
        for ag in self.agents:
            if not ag.appeared and ag.start_time <= t + TIME_TOL:
                ag.appeared = True
                ag.pos = ag.origin
                ag.builder = TrajectoryBuilder(t, ag.origin)
                ag.knowledge[ag.ref] = KnowledgeItem(ag.ref, Point(0.0, 0.0),
                                                     ag.tag)
                self.events.append(Event(t, "appear", (ag.idx,), (ag.pos,)))
                appeared_now.append(ag)
        for ag in appeared_now:
            ag.program.on_appear(ag.ctx)
        for ag in appeared_now:
            for other in self.agents:
                if other is ag or not other.appeared:
                    continue
                pair = frozenset((ag.idx, other.idx))
                if pair in self.adjacent or pair in new_edges:
                    continue
                if ag.pos.dist(other.pos) <= self.eps + PROX_TOL:
                    new_edges.add(pair)

        # Separations before approaches: a pair leaving the epsilon disc now
        # cannot also re-enter it at the same instant.
        for ht, kind, pair in pair_hits:
            if ht > t + TIME_TOL or kind != "separate":
                continue
            self.adjacent.discard(pair)
            self._recent_separation[pair] = t
        for ht, kind, pair in pair_hits:
            if ht > t + TIME_TOL or kind != "approach":
                continue
            if pair not in self.adjacent:
                new_edges.add(pair)

        completed = [ag for ag in self.agents
                     if ag.appeared and not ag.stopped
                     and ag.motion is not None
                     and ag.motion.t_end <= t + TIME_TOL]

        if new_edges:
            self._run_gas(new_edges)

        for ag in completed:
            if ag.stopped or ag.motion is None:
                continue  # replaced or stopped during the GA
            if ag.motion.t_end > t + TIME_TOL:
                continue
            was_goto = ag.motion.stop_on_arrival
            ag.pos = ag.motion.p_end
            ag.motion = None
            if was_goto:
                self._request_stop(ag)

        for ag in self.agents:
            if not ag.appeared or ag.stopped or ag.motion is not None:
                continue
            # Poll every idle agent, not only the ones whose motion ended
            # now: a GA callback may have cleared the plan without issuing
            # a replacement, and such an agent must still be driven.
            if not ag.queue:
                ag.program.on_idle(ag.ctx)
            self._start_pending(ag)

    def _run_gas(self, new_edges: set[frozenset]) -> None:
        t = self._now
        # Mark adjacency for every group pair currently within epsilon.
        groups = form_ga_groups(self.adjacent, new_edges)
        self.adjacent |= new_edges
        for group in groups:
            for x in range(len(group)):
                for y in range(x + 1, len(group)):
                    a = self.agents[group[x]]
                    b = self.agents[group[y]]
                    if a.pos.dist(b.pos) <= self.eps + PROX_TOL:
                        self.adjacent.add(frozenset((a.idx, b.idx)))
        for group in groups:
            self._gossip(group)
            members = [self.agents[i] for i in group]
            # Decisions are simultaneous: every view shows pre-GA states,
            # so a callback's tag change is invisible to its peers.
            views = {ag.idx: self._view_for(ag, group) for ag in members}
            self._pending_orders = []
            for ag in members:
                if ag.stopped:
                    continue
                ag.ctx._in_ga_group = group
                ag.program.on_ga(ag.ctx, views[ag.idx])
                ag.ctx._in_ga_group = None
            self.events.append(Event(
                t, "ga", tuple(group),
                tuple(self.agents[i].pos for i in group),
                tuple(self.agents[i].tag for i in group)))
            orders = self._pending_orders
            self._pending_orders = []
            for issuer, target_global, ogroup in orders:
                recipients = tuple(i for i in ogroup
                                   if i != issuer.idx
                                   and not self.agents[i].stopped)
                self.events.append(Event(t, "order", recipients,
                                         issuer=issuer.idx,
                                         target=target_global))
                for i in recipients:
                    ag = self.agents[i]
                    rel = Point(target_global.x - ag.origin.x,
                                target_global.y - ag.origin.y)
                    ag.program.on_order(ag.ctx, rel, issuer.ref)

    def _finish(self, reason: str) -> Trace:
        if reason == "timeout":
            self._advance_to(self.horizon)
            self.events.append(Event(self.horizon, "horizon"))
        final_positions = []
        trajectories = []
        end = max(self._now, max(ag.start_time for ag in self.agents))
        for ag in self.agents:
            if ag.builder is None:
                ag.builder = TrajectoryBuilder(ag.start_time, ag.origin)
            # Pad with a final rest so every trajectory covers the same
            # closing time regardless of when its agent stopped.
            last = ag.pos if ag.appeared else ag.origin
            if end > ag.start_time:
                ag.builder.move_to(end, last)
            trajectories.append(ag.builder.build())
            final_positions.append(last)
        if reason == "timeout":
            verdict = Verdict("timeout", self.horizon)
        else:
            groups = _cluster_points(final_positions)
            if len(groups) == 1:
                verdict = Verdict("gathered", self._now,
                                  point=final_positions[0])
            else:
                reps = sorted((final_positions[g[0]] for g in groups),
                              key=lambda p: p.coords)
                verdict = Verdict("split", self._now, groups=tuple(reps))
            for ag in self.agents:
                # Quiescent agents can never move again; mark them stopped.
                ag.stopped = True
        return Trace(self.events, tuple(final_positions),
                     tuple(ag.tag for ag in self.agents),
                     tuple(trajectories), verdict)


def _cluster_points(points: list[Point],
                    tol: float = POS_TOL) -> list[tuple[int, ...]]:
    n = len(points)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            if points[i].dist(points[j]) <= tol:
                ra, rb = find(i), find(j)
                if ra != rb:
                    parent[rb] = ra
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [tuple(v) for _, v in sorted(groups.items())]


def run(cfg: InitialConfiguration, program_factory: ProgramFactory,
        horizon: Optional[float] = None) -> Trace:
    """Simulate cfg under the given per-agent program factory."""
    return Simulation(cfg, program_factory, horizon).run()
