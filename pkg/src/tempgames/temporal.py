"""Explicit temporal graphs: edges carry finite unions of time intervals.

Traversing an edge at time ``t`` lands at time ``t + 1``. Without waiting a
token must move at every step; a token with no available edge is stuck and
the play halts.
"""

from dataclasses import dataclass
from typing import Mapping

from ._product import DEFAULT_STATE_CAP
from .arena import (
    Explore,
    GenReach,
    Player,
    ProductStrategy,
    Reach,
    SolveOutcome,
    StaticArena,
    WitnessPath,
    check_objective,
    solve_genreach_graph,
    solve_reachability,
)
from .errors import OnePlayerOnly, StateSpaceLimit, UnknownVertex

DEFAULT_HORIZON_CAP = 1_000_000


@dataclass(frozen=True)
class TimeSet:
    """Canonical finite union of closed integer intervals."""

    intervals: tuple

    def __init__(self, intervals=()):
        spans = sorted((int(lo), int(hi)) for lo, hi in intervals)
        merged = []
        for lo, hi in spans:
            if lo < 0 or lo > hi:
                raise ValueError(f"bad interval [{lo},{hi}]")
            if merged and lo <= merged[-1][1] + 1:
                merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
            else:
                merged.append((lo, hi))
        object.__setattr__(self, "intervals", tuple(merged))

    @classmethod
    def points(cls, times):
        return cls((t, t) for t in times)

    @classmethod
    def span(cls, lo, hi):
        return cls([(lo, hi)])

    def __contains__(self, t):
        for lo, hi in self.intervals:
            if t < lo:
                return False
            if t <= hi:
                return True
        return False

    def __bool__(self):
        return bool(self.intervals)

    def __iter__(self):
        for lo, hi in self.intervals:
            yield from range(lo, hi + 1)

    def __or__(self, other):
        return TimeSet(self.intervals + other.intervals)

    @property
    def max(self):
        return self.intervals[-1][1] if self.intervals else None

    def __str__(self):
        return " | ".join(f"[{lo},{hi}]" for lo, hi in self.intervals) or "never"


def as_timeset(value):
    """Accept a TimeSet, a list of ``(lo, hi)`` pairs or a list of times."""
    if isinstance(value, TimeSet):
        return value
    items = list(value)
    if items and all(isinstance(x, (tuple, list)) for x in items):
        return TimeSet(items)
    return TimeSet.points(items)


class TemporalGraph:
    """Arena skeleton plus per-edge availability.

    ``waiting`` lets every vertex idle for one step at any time up to the
    horizon, as if it had a self-loop available at ``[0, h]``.
    """

    def __init__(self, vertices, avail, owner=None, waiting=False):
        verts = tuple(vertices)
        # reuse the static arena for vertex/owner validation
        skeleton = StaticArena(verts, (), owner)
        index = skeleton.index
        table = {}
        items = avail.items() if isinstance(avail, Mapping) else avail
        for (u, v), times in items:
            for x in (u, v):
                if x not in index:
                    raise UnknownVertex(f"edge endpoint {x!r} is not a declared vertex")
            ts = as_timeset(times)
            if (u, v) in table:
                ts = table[(u, v)] | ts
            if ts:
                table[(u, v)] = ts
        self.vertices = verts
        self.index = index
        self.owner = skeleton.owner
        self.avail = dict(sorted(table.items(), key=lambda kv: (index[kv[0][0]], index[kv[0][1]])))
        self.waiting = bool(waiting)
        out = {v: [] for v in verts}
        for (u, v), ts in self.avail.items():
            out[u].append((v, ts))
        self.out_edges = out

    def __eq__(self, other):
        return (
            isinstance(other, TemporalGraph)
            and self.vertices == other.vertices
            and self.owner == other.owner
            and self.avail == other.avail
            and self.waiting == other.waiting
        )

    __hash__ = None

    def __repr__(self):
        return f"TemporalGraph({len(self.vertices)} vertices, {len(self.avail)} edges, waiting={self.waiting})"

    @property
    def is_one_player(self):
        return all(p is Player.ONE for p in self.owner.values())

    def moves(self, u, t, horizon=None):
        """Successors of ``u`` when leaving at time ``t``, in index order."""
        succ = [v for v, ts in self.out_edges[u] if t in ts]
        if self.waiting:
            h = self.horizon if horizon is None else horizon
            if t <= h and u not in succ:
                succ.append(u)
                succ.sort(key=self.index.__getitem__)
        return succ

    def available(self, u, v, t):
        if self.waiting and u == v and t <= self.horizon:
            return True
        ts = self.avail.get((u, v))
        return ts is not None and t in ts

    @property
    def horizon(self):
        return horizon(self)

    def with_waiting(self, flag=True):
        return TemporalGraph(self.vertices, self.avail, self.owner, flag)


def horizon(graph):
    """Largest time at which any edge is available (0 for edgeless graphs)."""
    return max((ts.max for ts in graph.avail.values()), default=0)


# ---------------------------------------------------------------------------
# expansion


class _Bottom:
    __slots__ = ()

    def __repr__(self):
        return "⊥"

    __str__ = __repr__

    def __reduce__(self):
        return "BOTTOM"


BOTTOM = _Bottom()


@dataclass(frozen=True, eq=False)
class ExpandedArena:
    """Static arena over states ``(v, t)`` for ``t`` in ``0..h+1`` plus ``BOTTOM``."""

    arena: StaticArena
    horizon: int
    back_map: Mapping

    @property
    def num_states(self):
        return len(self.arena.vertices)


def expand(graph, horizon_cap=DEFAULT_HORIZON_CAP, state_cap=DEFAULT_STATE_CAP):
    h = horizon(graph)
    if h > horizon_cap:
        raise StateSpaceLimit(f"horizon {h} exceeds cap {horizon_cap}")
    size = len(graph.vertices) * (h + 2) + 1
    if size > state_cap:
        raise StateSpaceLimit(f"expansion has {size} states, cap is {state_cap}")
    states = [(v, t) for v in graph.vertices for t in range(h + 2)]
    states.append(BOTTOM)
    owner = {s: graph.owner[s[0]] for s in states[:-1]}
    owner[BOTTOM] = Player.TWO
    edges = [(BOTTOM, BOTTOM)]
    for v in graph.vertices:
        for t in range(h + 1):
            succ = graph.moves(v, t, h)
            if succ:
                edges.extend(((v, t), (w, t + 1)) for w in succ)
            else:
                edges.append(((v, t), BOTTOM))
        edges.append(((v, h + 1), BOTTOM))
    arena = StaticArena(states, edges, owner)
    back = {s: s for s in states[:-1]}
    back[BOTTOM] = None
    return ExpandedArena(arena, h, back)


def lift_objective(obj, graph):
    """Translate an objective on ``graph`` to its expansion."""
    h = horizon(graph)
    check_objective(obj, graph.vertices)

    def lift(vs):
        return frozenset((v, t) for v in vs for t in range(h + 2))

    if isinstance(obj, Reach):
        return Reach(lift(obj.targets))
    if isinstance(obj, GenReach):
        return GenReach(lift(s) for s in obj.target_sets)
    return GenReach(lift([v]) for v in graph.vertices)


def _timed(states):
    return WitnessPath(s for s in states if s is not BOTTOM)


def solve_temporal(graph, start, obj, state_cap=DEFAULT_STATE_CAP):
    """Solve on the expansion from ``(start, 0)``."""
    if start not in graph.index:
        raise UnknownVertex(f"start {start!r} is not a declared vertex")
    exp = expand(graph, state_cap=state_cap)
    lifted = lift_objective(obj, graph)
    arena = exp.arena
    if isinstance(lifted, Reach):
        out = solve_reachability(arena, (start, 0), lifted.targets)
        cert = out.certificate
        if isinstance(cert, WitnessPath):
            cert = _timed(cert.vertices)
        elif cert is not None and graph.is_one_player:
            # only the sink is Player 2 owned and a winning play never enters it
            play = [(start, 0)]
            while play[-1] not in lifted.targets:
                play.append(cert.moves[play[-1]])
            cert = _timed(play)
        return SolveOutcome(out.winner, cert, exp.num_states, "expand")
    sets = lifted.target_sets
    hits = [0] * len(arena.vertices)
    for j, s in enumerate(sets):
        for state in s:
            hits[arena.index[state]] |= 1 << j
    sol = solve_genreach_graph(arena.graph, arena.index[(start, 0)], hits, len(sets), state_cap)
    explored = exp.num_states + sol.size
    if not sol.player1_wins:
        return SolveOutcome(Player.TWO, None, explored, "expand")
    names = arena.vertices
    if graph.is_one_player:
        cert = _timed(names[i] for i, _ in sol.winning_play())
    else:
        cert = ProductStrategy(
            {(names[i], m): (names[j], m2) for (i, m), (j, m2) in sol.strategy_map().items()}
        )
    return SolveOutcome(Player.ONE, cert, explored, "expand")


# ---------------------------------------------------------------------------
# waiting and one-player search


def apply_waiting(graph):
    """Materialize waiting as self-loops available on ``[0, h]``."""
    h = horizon(graph)
    avail = dict(graph.avail)
    for v in graph.vertices:
        loop = TimeSet.span(0, h)
        avail[(v, v)] = avail[(v, v)] | loop if (v, v) in avail else loop
    return TemporalGraph(graph.vertices, avail, graph.owner, waiting=True)


def enumerate_explorations(graph, start):
    """Depth-first search for a walk from ``(start, 0)`` visiting every vertex.

    Failed ``(vertex, time, visited)`` states are memoized.
    """
    if not graph.is_one_player:
        raise OnePlayerOnly("exploration search needs a one-player graph")
    if start not in graph.index:
        raise UnknownVertex(f"start {start!r} is not a declared vertex")
    h = horizon(graph)
    index = graph.index
    full = (1 << len(graph.vertices)) - 1
    moves = {}

    def successors(v, t):
        key = (v, t)
        if key not in moves:
            moves[key] = graph.moves(v, t, h)
        return moves[key]

    failed = set()
    expanded = 0
    root = (start, 0, 1 << index[start])
    path = [root]
    stack = [iter(())] if root[2] == full else [iter(successors(start, 0))]
    while stack and path[-1][2] != full:
        v, t, seen = path[-1]
        nxt = next(stack[-1], None)
        if nxt is None:
            failed.add(path.pop())
            stack.pop()
            continue
        child = (nxt, t + 1, seen | (1 << index[nxt]))
        if child in failed:
            continue
        expanded += 1
        path.append(child)
        if child[2] == full:
            break
        stack.append(iter(successors(nxt, t + 1) if t + 1 <= h else ()))
    if path and path[-1][2] == full:
        cert = WitnessPath((v, t) for v, t, _ in path)
        return SolveOutcome(Player.ONE, cert, expanded + len(failed), "search")
    return SolveOutcome(Player.TWO, None, expanded + len(failed), "search")
