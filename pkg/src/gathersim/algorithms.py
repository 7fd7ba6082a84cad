"""Gathering algorithms executed by the simulation engine.

Three program families are provided:

* dedicated_program: all agents know the full initial configuration (up to
  translation) and exploit one qualifying pair of agents whose start-time
  difference absorbs the distance between them.
* gather_n_program: agents know only the team size n.  Agents sweep growing
  star patterns around their origins, freeze as position markers when they
  meet, and a single surviving sweeper eventually collects everyone.
* gather_a_program: agents know only a set A of pairwise "independent"
  candidate team sizes, and run the n-style algorithm under the smallest
  assumption, upgrading whenever they learn the team must be bigger.

All decisions are taken on frame-relative data: lexicographic comparison of
relative initial positions replaces any global identity.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

from .config import (InitialConfiguration, NoQualifyingPair, qualifying_vector,
                     vector_sequence)
from .engine import AgentContext, GAView, Go, GotoStop, Program, Wait
from .geometry import POS_TOL, TIME_TOL, Point, Vec2, lex_less


# -- star sweep ---------------------------------------------------------------

def star_phase_params(x: int) -> tuple[float, int]:
    """Ray angle alpha and ray count k for sweep phase x >= 1.

    alpha satisfies sin(alpha / 2) = 1 / (2 x^2), which puts consecutive ray
    endpoints on the radius-x circle exactly 1/x apart; k = ceil(2 pi / alpha)
    rays close the full turn.
    """
    if x < 1:
        raise ValueError("phase index starts at 1")
    alpha = 2.0 * math.asin(1.0 / (2.0 * x * x))
    k = math.ceil(2.0 * math.pi / alpha)
    return alpha, k


def star_phase_duration(x: int) -> float:
    """Wall time of phase x: k stages, each out x, back x, wait x."""
    _, k = star_phase_params(x)
    return 3.0 * x * k


def star_time_through_phase(x: int) -> float:
    """Local time at which an uninterrupted sweep finishes phase x."""
    return sum(star_phase_duration(y) for y in range(1, x + 1))


def ray_direction(angle_cw_from_north: float) -> Vec2:
    return Vec2(math.sin(angle_cw_from_north), math.cos(angle_cw_from_north))


def star_stage_legs(x: int, stage: int) -> list:
    """The three instructions of one stage: out along the ray, back, wait."""
    alpha, _ = star_phase_params(x)
    d = ray_direction((stage - 1) * alpha)
    fx = float(x)
    return [Go(d, fx), Go(-d, fx), Wait(fx)]


class StarWalk:
    """Cursor over the infinite stage/leg stream of the star sweep."""

    __slots__ = ("phase", "stage", "leg", "last_issued_phase", "_alpha", "_k")

    def __init__(self, phase: int = 1):
        self.jump_to_phase(phase)
        self.last_issued_phase = 0

    def jump_to_phase(self, phase: int) -> None:
        self.phase = phase
        self.stage = 1
        self.leg = 0
        self._alpha, self._k = star_phase_params(phase)

    def next_instruction(self):
        x = float(self.phase)
        if self.leg == 0:
            instr = Go(ray_direction((self.stage - 1) * self._alpha), x)
        elif self.leg == 1:
            instr = Go(-ray_direction((self.stage - 1) * self._alpha), x)
        else:
            instr = Wait(x)
        self.last_issued_phase = self.phase
        self.leg += 1
        if self.leg == 3:
            self.leg = 0
            self.stage += 1
            if self.stage > self._k:
                self.jump_to_phase(self.phase + 1)
        return instr


# -- shared helpers -----------------------------------------------------------

def _initial_of(ctx: AgentContext, ref) -> Point:
    return ctx.knowledge[ref].initial_position


def _largest_ref(ctx: AgentContext, refs):
    """Ref whose known initial position is lexicographically largest."""
    best_ref = None
    best = None
    for r in refs:
        p = _initial_of(ctx, r)
        if best is None or lex_less(best, p):
            best = p
            best_ref = r
    return best_ref


def _largest_initial(ctx: AgentContext, refs) -> Point:
    return _initial_of(ctx, _largest_ref(ctx, refs))


def _go_home_leg(ctx: AgentContext) -> Optional[Go]:
    pos = ctx.position
    d = math.hypot(pos.x, pos.y)
    if d <= POS_TOL:
        return None
    return Go(Vec2(-pos.x / d, -pos.y / d), d)


# -- dedicated algorithm ------------------------------------------------------

class DedicatedProgram(Program):
    """Configuration-aware gathering.

    Every agent waits out the qualifying pair's start-time gap, then walks
    out and back along the earlier-to-later vector of that pair.  The wait
    makes the rendezvous work for gaps of any size: the agent that really
    is the earlier one arrives at the other start while its partner is
    still holding its own wait (or has fallen at most eps behind).  Whoever
    is the largest participant of its first meeting keeps travelling along
    all pairwise difference vectors to find and inform the others; all
    agents finally walk to the largest initial position and stop.
    """

    def __init__(self, v: Vec2, delay: float, vseq: list[Vec2], n: int):
        self.v = v
        self.delay = delay
        self.vseq = vseq
        self.n = n
        self.mode = "beginner"
        self.elected: Optional[str] = None
        self.cycle_index = 0
        self.final_round: Optional[list[Vec2]] = None
        self.finishing = False

    def _knows_all(self, ctx) -> bool:
        return len(ctx.knowledge) >= self.n

    def _gather_point(self, ctx) -> Point:
        return _largest_initial(ctx, ctx.knowledge.keys())

    def _issue_out_and_back(self, ctx, w: Vec2) -> None:
        u = w.normalized()
        ctx.issue(Go(u, w.norm))
        ctx.issue(Go(-u, w.norm))

    def on_appear(self, ctx) -> None:
        ctx.tag = "beginner"
        if self.delay > 0.0:
            ctx.issue(Wait(self.delay))
        self._issue_out_and_back(ctx, self.v)

    def on_ga(self, ctx, view: GAView) -> None:
        if self.mode == "beginner":
            if self.elected is None:
                winner = _largest_ref(ctx, (p.ref for p in view.participants))
                self.elected = "active" if winner == ctx.self_ref \
                    else "passive"
            return
        if self.finishing:
            return
        if self.mode == "passive":
            if self._knows_all(ctx):
                self.finishing = True
                ctx.clear_plan()
                ctx.issue(GotoStop(self._gather_point(ctx)))
        # Active agents keep to their route; completeness is rechecked when
        # the current out-and-back ends.

    def on_idle(self, ctx) -> None:
        if self.finishing:
            return
        if self.mode == "beginner":
            self.mode = self.elected or "passive"
            ctx.tag = self.mode
            if self.mode == "passive":
                if self._knows_all(ctx):
                    self.finishing = True
                    ctx.issue(GotoStop(self._gather_point(ctx)))
                return
        if self.mode == "active":
            if self.final_round is None and self._knows_all(ctx):
                self.final_round = list(self.vseq)
            if self.final_round is not None:
                if self.final_round:
                    self._issue_out_and_back(ctx, self.final_round.pop(0))
                else:
                    self.finishing = True
                    ctx.issue(GotoStop(self._gather_point(ctx)))
                return
            w = self.vseq[self.cycle_index % len(self.vseq)]
            self.cycle_index += 1
            self._issue_out_and_back(ctx, w)


def _dedicated_walk(cfg: InitialConfiguration) -> tuple[Vec2, float]:
    """Beginner walk vector and pre-walk wait for the best qualifying pair.

    Candidates are the qualifying pairs oriented from the earlier start to
    the later one (both ways on a time tie); the lexicographically largest
    such vector wins, longest wait breaking ties.  An immediate walk along
    the unoriented largest qualifying vector misses the rendezvous window
    whenever the time gap exceeds distance + eps, so the orientation and
    the wait both matter.
    """
    best = None
    for i in range(cfg.n):
        for j in range(cfg.n):
            if i == j or cfg.times[j] < cfg.times[i] - TIME_TOL:
                continue
            d = cfg.starts[i].dist(cfg.starts[j])
            delta = abs(cfg.times[i] - cfg.times[j])
            if delta < d - cfg.epsilon - TIME_TOL:
                continue
            u = Vec2(cfg.starts[j].x - cfg.starts[i].x,
                     cfg.starts[j].y - cfg.starts[i].y)
            key = (u.dx, u.dy, delta)
            if best is None or key > best[0]:
                best = (key, u, delta)
    if best is None:
        raise NoQualifyingPair("no pair can absorb its distance")
    return best[1], best[2]


def dedicated_program(cfg_known: InitialConfiguration, eps: float):
    """Program factory for agents that know the configuration shape.

    eps enters only through the choice of the qualifying pair.  When no
    pair qualifies (an ungatherable configuration) the largest difference
    vector is walked immediately instead; no meeting can occur then under
    any program, so the run degenerates to a finite walk and silence.
    """
    if eps != cfg_known.epsilon:
        cfg_known = InitialConfiguration(eps, cfg_known.starts,
                                         cfg_known.times)
    vseq = vector_sequence(cfg_known)
    try:
        v, delay = _dedicated_walk(cfg_known)
    except NoQualifyingPair:
        v, delay = vseq[-1], 0.0
    n = cfg_known.n
    return lambda: DedicatedProgram(v, delay, vseq, n)


# -- unknown-count gathering --------------------------------------------------

class GatherProgram(Program):
    """Gathering under a sorted tuple of candidate team sizes.

    With a single candidate n this is the known-size algorithm: sweepers
    (cruisers) freeze into position markers (tokens) when two of them meet,
    a surviving sweeper (explorer) counts frozen agents it encounters, and
    once it has seen n - 1 it re-runs its current sweep phase ordering
    everyone to the largest initial position, then walks there itself.

    With several candidates the explorer starts from the smallest one and,
    whenever its knowledge proves the team is bigger than its assumption,
    moves to the next candidate and resumes sweeping from the next phase.
    Gathered groups then wait instead of stopping, since a latecomer may
    reopen the hunt.
    """

    def __init__(self, assumptions: Sequence[int]):
        self.assumptions = tuple(assumptions)
        if not self.assumptions:
            raise ValueError("need at least one candidate size")
        self.final_stop = len(self.assumptions) == 1
        self.ai = 0
        self.role = "cruiser"
        self.star = StarWalk()
        self.mode = "star"  # explorer: star | finale | finale_goto | settled
        self.tokens: set = set()
        self.seen: set = set()
        self.orders: list[Point] = []
        self.executing_order = False

    @property
    def assumption(self) -> int:
        return self.assumptions[self.ai]

    # -- helpers

    def _gather_point(self, ctx) -> Point:
        return _largest_initial(ctx, ctx.knowledge.keys())

    def _queue_finale_phase(self, ctx) -> None:
        """Return home, then redo every stage of the last executed phase."""
        ctx.clear_plan()
        home = _go_home_leg(ctx)
        if home is not None:
            ctx.issue(home)
        x = max(self.star.last_issued_phase, 1)
        _, k = star_phase_params(x)
        for stage in range(1, k + 1):
            for leg in star_stage_legs(x, stage):
                ctx.issue(leg)
        self.mode = "finale"

    def _resume_star(self, ctx) -> None:
        ctx.clear_plan()
        home = _go_home_leg(ctx)
        if home is not None:
            ctx.issue(home)
        self.star.jump_to_phase(max(self.star.last_issued_phase, 0) + 1)
        self.mode = "star"

    def _start_next_order(self, ctx) -> None:
        while self.orders:
            target = self.orders.pop(0)
            if self.final_stop:
                ctx.issue(GotoStop(target))
                self.executing_order = True
                return
            pos = ctx.position
            dx, dy = target.x - pos.x, target.y - pos.y
            d = math.hypot(dx, dy)
            if d <= POS_TOL:
                continue
            ctx.issue(Go(Vec2(dx / d, dy / d), d))
            self.executing_order = True
            return
        self.executing_order = False

    # -- callbacks

    def on_appear(self, ctx) -> None:
        ctx.tag = "cruiser"
        ctx.issue(self.star.next_instruction())

    def on_ga(self, ctx, view: GAView) -> None:
        others = view.others()
        if self.role == "cruiser":
            self._cruiser_ga(ctx, view, others)
        elif self.role == "explorer":
            self._explorer_ga(ctx, view, others)
        # Tokens and shadows only gossip; they move on explicit orders.

    def _cruiser_ga(self, ctx, view, others) -> None:
        if any(p.tag == "token" for p in others):
            self.role = "shadow"
            ctx.tag = "shadow"
            ctx.clear_plan()
            return
        cruisers = [p for p in view.participants if p.tag == "cruiser"]
        if len(cruisers) <= 1:
            return  # nobody to pair up with; ignore
        winner = _largest_ref(ctx, (p.ref for p in cruisers))
        if winner == ctx.self_ref:
            self.role = "explorer"
            ctx.tag = "explorer"
            self.tokens = {p.ref for p in cruisers
                           if p.ref != ctx.self_ref}
            # Only directly visible agents are "seen": the finale re-runs
            # the current sweep phase, which revisits exactly the places
            # where direct meetings happened.  Chain-connected agents must
            # be met in person during a later, wider phase.
            self.seen = {p.ref for p in cruisers
                         if p.ref != ctx.self_ref and p.adjacent}
            self.seen |= {p.ref for p in others
                          if p.tag in ("token", "shadow") and p.adjacent}
            self._advance_assumption(ctx)
            # Star execution continues through the promotion.
        else:
            self.role = "token"
            ctx.tag = "token"
            ctx.clear_plan()

    def _advance_assumption(self, ctx) -> bool:
        known = len(ctx.knowledge)
        advanced = False
        while known > self.assumption and self.ai + 1 < len(self.assumptions):
            self.ai += 1
            advanced = True
        return advanced

    def _explorer_ga(self, ctx, view, others) -> None:
        pre_tokens = [p for p in others if p.tag == "token"]
        pre_shadows = [p for p in others if p.tag == "shadow"]
        cruisers = [p for p in others if p.tag == "cruiser"]
        # Direct sightings only; see _cruiser_ga for why.
        self.seen |= {p.ref for p in pre_tokens if p.adjacent}
        self.seen |= {p.ref for p in pre_shadows if p.adjacent}
        if pre_tokens:
            # Public rule: every cruiser in this GA freezes into a shadow.
            self.seen |= {p.ref for p in cruisers if p.adjacent}
        elif len(cruisers) >= 2:
            winner = _largest_ref(ctx, (p.ref for p in cruisers))
            self.seen |= {p.ref for p in cruisers
                          if p.ref != winner and p.adjacent}

        if self._advance_assumption(ctx):
            if self.mode != "star":
                self._resume_star(ctx)
            return

        if self.mode in ("finale", "finale_goto"):
            ctx.send_order(self._gather_point(ctx))
            return
        if self.mode != "star":
            return  # settled group; only an upgrade wakes us

        if len(self.seen) >= self.assumption - 1:
            ctx.send_order(self._gather_point(ctx))
            self._queue_finale_phase(ctx)
            return
        if pre_tokens and self.tokens:
            own_best = _largest_initial(ctx, self.tokens)
            met_best = _largest_initial(ctx, (p.ref for p in pre_tokens))
            if lex_less(own_best, met_best):
                self.role = "shadow"
                ctx.tag = "shadow"
                ctx.clear_plan()

    def on_order(self, ctx, target: Point, issuer) -> None:
        if self.role not in ("token", "shadow"):
            return
        self.orders.append(target)
        if not self.executing_order:
            self._start_next_order(ctx)

    def on_idle(self, ctx) -> None:
        if self.role in ("cruiser", "explorer") and self.mode == "star":
            ctx.issue(self.star.next_instruction())
            return
        if self.role == "explorer" and self.mode == "finale":
            g = self._gather_point(ctx)
            if self.final_stop:
                ctx.issue(GotoStop(g))
            else:
                pos = ctx.position
                dx, dy = g.x - pos.x, g.y - pos.y
                d = math.hypot(dx, dy)
                if d > POS_TOL:
                    ctx.issue(Go(Vec2(dx / d, dy / d), d))
            self.mode = "finale_goto"
            return
        if self.role == "explorer" and self.mode == "finale_goto":
            self.mode = "settled"
            return
        if self.role in ("token", "shadow"):
            self.executing_order = False
            self._start_next_order(ctx)


def gather_n_program(n: int):
    """Program factory for agents that know only the team size n."""
    if n < 2:
        raise ValueError("team size must be at least 2")
    return lambda: GatherProgram((n,))


def gather_a_program(assumptions: Sequence[int]):
    """Program factory for agents that know a candidate-size set."""
    a = tuple(sorted(set(int(x) for x in assumptions)))
    if not a:
        raise ValueError("assumption set must be non-empty")
    if a[0] < 2:
        raise ValueError("candidate sizes must be at least 2")
    return lambda: GatherProgram(a)
