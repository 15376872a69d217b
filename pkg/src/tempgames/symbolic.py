"""Symbolic availability formulas and games on symbolic temporal graphs.

Formulas range over a fragment of Presburger arithmetic that is closed
under boolean operations and ultimately periodic: intervals, arithmetic
progressions and single-bit tests on the binary expansion of the time.
"""

from dataclasses import dataclass
from functools import partial
from math import lcm
from typing import Mapping

import numpy as np

from ._product import DEFAULT_STATE_CAP, solve_forward
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
)
from .errors import PeriodOverflow, StateSpaceLimit, UnknownVertex, WidthExceeded

DEFAULT_WORD_WIDTH = 64
DEFAULT_PERIOD_CAP = 1 << 32


class AvailFormula:
    """Base class of availability formulas; subclasses are frozen dataclasses."""

    __slots__ = ()

    def __call__(self, t):
        return eval_avail(self, t)

    def __and__(self, other):
        return And([self, other])

    def __or__(self, other):
        return Or([self, other])

    def __invert__(self):
        return Not(self)

    def __str__(self):
        from .gamefile import format_avail

        return format_avail(self)


@dataclass(frozen=True)
class Interval(AvailFormula):
    lo: int
    hi: int

    def __post_init__(self):
        if not 0 <= self.lo <= self.hi:
            raise ValueError(f"bad interval [{self.lo},{self.hi}]")


@dataclass(frozen=True)
class ArithProg(AvailFormula):
    """Times ``base + i * period`` for ``i >= 0``."""

    base: int
    period: int

    def __post_init__(self):
        if self.base < 0 or self.period < 1:
            raise ValueError(f"bad progression ap({self.base},{self.period})")


@dataclass(frozen=True)
class BitEq(AvailFormula):
    """Bit ``k`` (least significant is 0) of the time equals ``value``."""

    k: int
    value: int

    def __post_init__(self):
        if self.k < 0 or self.value not in (0, 1):
            raise ValueError(f"bad bit test bit({self.k})={self.value}")


@dataclass(frozen=True)
class Always(AvailFormula):
    pass


@dataclass(frozen=True)
class Never(AvailFormula):
    pass


@dataclass(frozen=True)
class And(AvailFormula):
    parts: tuple

    def __init__(self, parts):
        object.__setattr__(self, "parts", tuple(parts))


@dataclass(frozen=True)
class Or(AvailFormula):
    parts: tuple

    def __init__(self, parts):
        object.__setattr__(self, "parts", tuple(parts))


@dataclass(frozen=True)
class Not(AvailFormula):
    child: AvailFormula


ALWAYS = Always()
NEVER = Never()


def bits_equal(pattern):
    """Conjunction of bit tests from ``{bit_index: value}``."""
    return And([BitEq(k, v) for k, v in sorted(pattern.items(), reverse=True)])


def max_bit(f):
    """Largest bit index tested in ``f``, or -1."""
    if isinstance(f, BitEq):
        return f.k
    if isinstance(f, (And, Or)):
        return max((max_bit(p) for p in f.parts), default=-1)
    if isinstance(f, Not):
        return max_bit(f.child)
    return -1


# ---------------------------------------------------------------------------
# evaluation


def eval_avail(f, t):
    if isinstance(f, BitEq):
        return (t >> f.k) & 1 == f.value
    if isinstance(f, And):
        return all(eval_avail(p, t) for p in f.parts)
    if isinstance(f, Or):
        return any(eval_avail(p, t) for p in f.parts)
    if isinstance(f, Not):
        return not eval_avail(f.child, t)
    if isinstance(f, Interval):
        return f.lo <= t <= f.hi
    if isinstance(f, ArithProg):
        return t >= f.base and (t - f.base) % f.period == 0
    if isinstance(f, Always):
        return True
    if isinstance(f, Never):
        return False
    raise TypeError(f"not an availability formula: {f!r}")


def eval_many(f, times):
    """Vectorized :func:`eval_avail` over an integer array of times."""
    times = np.asarray(times, dtype=np.int64)
    if isinstance(f, BitEq):
        if f.k >= 63:
            return np.full(times.shape, f.value == 0)
        return ((times >> f.k) & 1) == f.value
    if isinstance(f, And):
        out = np.ones(times.shape, dtype=bool)
        for p in f.parts:
            out &= eval_many(p, times)
        return out
    if isinstance(f, Or):
        out = np.zeros(times.shape, dtype=bool)
        for p in f.parts:
            out |= eval_many(p, times)
        return out
    if isinstance(f, Not):
        return ~eval_many(f.child, times)
    if isinstance(f, Interval):
        return (times >= f.lo) & (times <= f.hi)
    if isinstance(f, ArithProg):
        return (times >= f.base) & ((times - f.base) % f.period == 0)
    if isinstance(f, Always):
        return np.ones(times.shape, dtype=bool)
    if isinstance(f, Never):
        return np.zeros(times.shape, dtype=bool)
    raise TypeError(f"not an availability formula: {f!r}")


# ---------------------------------------------------------------------------
# periodicity


@dataclass(frozen=True)
class PeriodBound:
    """Membership is periodic with ``period`` from ``base`` onwards."""

    base: int
    period: int

    @property
    def window(self):
        return self.base + self.period


def _combine(bounds, cap):
    base = max((b.base for b in bounds), default=0)
    period = 1
    for b in bounds:
        period = lcm(period, b.period)
        if period > cap:
            raise PeriodOverflow(f"period {period} exceeds cap {cap}")
    return PeriodBound(base, period)


def period_bounds(f, period_cap=DEFAULT_PERIOD_CAP):
    if isinstance(f, Interval):
        return PeriodBound(f.hi + 1, 1)
    if isinstance(f, ArithProg):
        if f.period > period_cap:
            raise PeriodOverflow(f"period {f.period} exceeds cap {period_cap}")
        return PeriodBound(f.base, f.period)
    if isinstance(f, BitEq):
        if 2 ** (f.k + 1) > period_cap:
            raise PeriodOverflow(f"bit {f.k} needs period 2^{f.k + 1}")
        return PeriodBound(0, 2 ** (f.k + 1))
    if isinstance(f, (Always, Never)):
        return PeriodBound(0, 1)
    if isinstance(f, (And, Or)):
        return _combine([period_bounds(p, period_cap) for p in f.parts], period_cap)
    if isinstance(f, Not):
        return period_bounds(f.child, period_cap)
    raise TypeError(f"not an availability formula: {f!r}")


def earliest_available(f, t, period_cap=DEFAULT_PERIOD_CAP, chunk=1 << 16):
    """Least time ``>= t`` at which ``f`` holds, or ``None``."""
    bound = period_bounds(f, period_cap)
    last = max(t, bound.base) + bound.period
    lo = t
    while lo <= last:
        hi = min(last, lo + chunk - 1)
        hits = np.flatnonzero(eval_many(f, np.arange(lo, hi + 1)))
        if hits.size:
            return int(lo + hits[0])
        lo = hi + 1
    return None


# ---------------------------------------------------------------------------
# graphs


class SymbolicTemporalGraph:
    def __init__(self, vertices, avail, owner=None, word_width=DEFAULT_WORD_WIDTH):
        skeleton = StaticArena(vertices, (), owner)
        index = skeleton.index
        table = {}
        items = avail.items() if isinstance(avail, Mapping) else avail
        for (u, v), f in items:
            for x in (u, v):
                if x not in index:
                    raise UnknownVertex(f"edge endpoint {x!r} is not a declared vertex")
            if not isinstance(f, AvailFormula):
                raise TypeError(f"edge ({u},{v}) availability is not a formula: {f!r}")
            if max_bit(f) >= word_width:
                raise WidthExceeded(f"edge ({u},{v}) tests a bit beyond width {word_width}")
            table[(u, v)] = Or([table[(u, v)], f]) if (u, v) in table else f
        self.vertices = skeleton.vertices
        self.index = index
        self.owner = skeleton.owner
        self.word_width = word_width
        self.avail = dict(sorted(table.items(), key=lambda kv: (index[kv[0][0]], index[kv[0][1]])))
        out = {v: [] for v in self.vertices}
        for (u, v), f in self.avail.items():
            out[u].append((v, f))
        self.out_edges = out

    def __eq__(self, other):
        return (
            isinstance(other, SymbolicTemporalGraph)
            and self.vertices == other.vertices
            and self.owner == other.owner
            and self.avail == other.avail
        )

    __hash__ = None

    def __repr__(self):
        return f"SymbolicTemporalGraph({len(self.vertices)} vertices, {len(self.avail)} edges)"

    @property
    def is_one_player(self):
        return all(p is Player.ONE for p in self.owner.values())

    def available(self, u, v, t):
        f = self.avail.get((u, v))
        return f is not None and eval_avail(f, t)

    def moves(self, u, t):
        return [v for v, f in self.out_edges[u] if eval_avail(f, t)]


def graph_period(graph, period_cap=DEFAULT_PERIOD_CAP):
    return _combine([period_bounds(f, period_cap) for f in graph.avail.values()], period_cap)


def with_waiting(graph):
    """Add an always-available self-loop on every vertex."""
    avail = dict(graph.avail)
    for v in graph.vertices:
        avail[(v, v)] = ALWAYS
    return SymbolicTemporalGraph(graph.vertices, avail, graph.owner, graph.word_width)


def from_explicit(graph):
    """Symbolic copy of an explicit temporal graph (waiting is materialized)."""
    from .temporal import apply_waiting

    if graph.waiting:
        graph = apply_waiting(graph)
    avail = {}
    for e, ts in graph.avail.items():
        parts = [Interval(lo, hi) for lo, hi in ts.intervals]
        avail[e] = parts[0] if len(parts) == 1 else Or(parts)
    return SymbolicTemporalGraph(graph.vertices, avail, graph.owner)


def to_explicit(graph, period_cap=DEFAULT_PERIOD_CAP):
    """Explicit copy of a symbolic graph whose edges are eventually unavailable."""
    from .temporal import TemporalGraph, TimeSet

    avail = {}
    for e, f in graph.avail.items():
        b = period_bounds(f, period_cap)
        if eval_many(f, np.arange(b.base, b.window)).any():
            raise ValueError(f"edge {e} is available infinitely often")
        avail[e] = TimeSet.points(np.flatnonzero(eval_many(f, np.arange(b.base))).tolist())
    return TemporalGraph(graph.vertices, avail, graph.owner)


# ---------------------------------------------------------------------------
# periodic product


def product_size(graph, obj, period_cap=DEFAULT_PERIOD_CAP):
    """Full product size ``|V| * 2^|V| * (b + p)`` (no visited set for Reach)."""
    bound = graph_period(graph, period_cap)
    n = len(graph.vertices)
    sets = 1 if isinstance(obj, Reach) else 2**n
    return n * sets * bound.window


# windows up to this length get precomputed availability tables
_TABLE_LIMIT = 1 << 16


class _ProductRules:
    """Successor, ownership and target rules of the periodic product."""

    def __init__(self, graph, obj, period_cap):
        check_objective(obj, graph.vertices)
        self.graph = graph
        self.bound = graph_period(graph, period_cap)
        self.window = self.bound.window
        self.track = not isinstance(obj, Reach)
        idx = graph.index
        if self.window <= _TABLE_LIMIT:
            window = np.arange(self.window)
            self.out = [
                [(idx[v], eval_many(f, window).tolist().__getitem__) for v, f in graph.out_edges[u]]
                for u in graph.vertices
            ]
        else:
            # long periods: evaluate on demand, only reachable times are touched
            self.out = [
                [(idx[v], partial(eval_avail, f)) for v, f in graph.out_edges[u]]
                for u in graph.vertices
            ]
        self.owner = [int(graph.owner[v]) for v in graph.vertices]
        n = len(graph.vertices)
        if isinstance(obj, Reach):
            goal = set(idx[v] for v in obj.targets)
            self.is_target = lambda s: s[0] in goal
        else:
            if isinstance(obj, Explore):
                sets = [1 << i for i in range(n)]
            else:
                sets = [sum(1 << idx[v] for v in s) for s in obj.target_sets]
            self.is_target = lambda s: all(s[1] & m for m in sets)

    def next_time(self, t):
        return t + 1 if t + 1 < self.window else self.bound.base

    def initial(self, start):
        i = self.graph.index[start]
        return (i, 1 << i, 0) if self.track else (i, 0)

    def successors(self, state):
        u, t = state[0], state[-1]
        t2 = self.next_time(t)
        if self.track:
            seen = state[1]
            return [(v, seen | (1 << v), t2) for v, is_open in self.out[u] if is_open(t)]
        return [(v, t2) for v, is_open in self.out[u] if is_open(t)]

    def owner_of(self, state):
        return self.owner[state[0]]

    def name(self, state):
        v = self.graph.vertices[state[0]]
        if self.track:
            seen = frozenset(w for i, w in enumerate(self.graph.vertices) if state[1] >> i & 1)
            return (v, seen, state[2])
        return (v, state[1])


@dataclass(frozen=True, eq=False)
class PeriodicProduct:
    arena: StaticArena
    objective: Reach
    initial: tuple
    bound: PeriodBound


def periodic_product(graph, obj, start=None, state_cap=DEFAULT_STATE_CAP,
                     period_cap=DEFAULT_PERIOD_CAP):
    """Static product arena with states ``(v, S, t)`` (``(v, t)`` for Reach).

    With ``start`` only states reachable from the initial state are built,
    otherwise the full product. Time ``t`` ranges over ``0..b+p-1`` and
    wraps from ``b+p-1`` back to ``b``.
    """
    rules = _ProductRules(graph, obj, period_cap)
    n = len(graph.vertices)
    if start is None:
        size = product_size(graph, obj, period_cap)
        if size > state_cap:
            raise StateSpaceLimit(f"product has {size} states, cap is {state_cap}")
        if rules.track:
            raw = [(v, s, t) for v in range(n) for s in range(2**n) for t in range(rules.window)]
        else:
            raw = [(v, t) for v in range(n) for t in range(rules.window)]
        edges = [(a, b) for a in raw for b in rules.successors(a)]
        init = None
    else:
        if start not in graph.index:
            raise UnknownVertex(f"start {start!r} is not a declared vertex")
        init = rules.initial(start)
        raw, seen, frontier, edges = [init], {init}, [init], []
        while frontier:
            nxt = []
            for a in frontier:
                for b in rules.successors(a):
                    edges.append((a, b))
                    if b not in seen:
                        if len(seen) >= state_cap:
                            raise StateSpaceLimit(f"product exceeds {state_cap} states")
                        seen.add(b)
                        raw.append(b)
                        nxt.append(b)
            frontier = nxt
    name = rules.name
    arena = StaticArena(
        [name(s) for s in raw],
        [(name(a), name(b)) for a, b in edges],
        {name(s): rules.owner_of(s) for s in raw},
    )
    targets = frozenset(name(s) for s in raw if rules.is_target(s))
    return PeriodicProduct(arena, Reach(targets), None if init is None else name(init), rules.bound)


def solve_symbolic(graph, start, obj, state_cap=DEFAULT_STATE_CAP, period_cap=DEFAULT_PERIOD_CAP):
    """Attractor on the lazily explored periodic product from ``(start, {start}, 0)``."""
    if start not in graph.index:
        raise UnknownVertex(f"start {start!r} is not a declared vertex")
    rules = _ProductRules(graph, obj, period_cap)
    sol = solve_forward(
        rules.initial(start), rules.successors, rules.owner_of, rules.is_target, state_cap
    )
    if not sol.player1_wins:
        return SolveOutcome(Player.TWO, None, sol.size, "product")
    if graph.is_one_player:
        # the step counter is the real time; the wrapped time is discarded
        play = sol.winning_play()
        cert = WitnessPath((graph.vertices[s[0]], t) for t, s in enumerate(play))
    else:
        cert = ProductStrategy({rules.name(a): rules.name(b) for a, b in sol.strategy_map().items()})
    return SolveOutcome(Player.ONE, cert, sol.size, "product")
