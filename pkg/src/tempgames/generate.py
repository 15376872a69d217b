"""Seeded random instances for tests and benchmarks."""

import random

from .arena import Player, StaticArena
from .qbf import A, E, QbfFormula
from .symbolic import ALWAYS, NEVER, And, ArithProg, BitEq, Interval, Not, Or
from .temporal import TemporalGraph, TimeSet


def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_arena(seed, n, p_edge=0.3, p_two=0.5, names=None):
    """Arena on ``n`` vertices with independent edges (self-loops allowed)."""
    rng = _rng(seed)
    verts = list(names) if names is not None else list(range(n))
    edges = [(u, v) for u in verts for v in verts if rng.random() < p_edge]
    owner = {v: Player.TWO if rng.random() < p_two else Player.ONE for v in verts}
    return StaticArena(verts, edges, owner)


def random_temporal_graph(seed, n, horizon=6, p_edge=0.4, p_time=0.4, p_two=0.0):
    """Explicit temporal graph; each present edge gets a random subset of ``0..horizon``."""
    rng = _rng(seed)
    verts = [f"v{i}" for i in range(n)]
    avail = {}
    for u in verts:
        for v in verts:
            if rng.random() < p_edge:
                times = [t for t in range(horizon + 1) if rng.random() < p_time]
                if times:
                    avail[(u, v)] = TimeSet.points(times)
    owner = {v: Player.TWO if rng.random() < p_two else Player.ONE for v in verts}
    return TemporalGraph(verts, avail, owner)


def random_formula(seed, depth=4, max_time=40, max_bit=5, max_period=6):
    rng = _rng(seed)
    if depth <= 0 or rng.random() < 0.3:
        kind = rng.randrange(6)
        if kind == 0:
            lo = rng.randrange(max_time)
            return Interval(lo, lo + rng.randrange(max_time // 2 + 1))
        if kind == 1:
            return ArithProg(rng.randrange(max_time), rng.randrange(1, max_period + 1))
        if kind == 2:
            return BitEq(rng.randrange(max_bit + 1), rng.randrange(2))
        if kind == 3:
            return ArithProg(rng.randrange(4), rng.randrange(1, max_period + 1))
        return ALWAYS if kind == 4 else NEVER
    op = rng.randrange(3)
    sub = dict(max_time=max_time, max_bit=max_bit, max_period=max_period)
    if op == 0:
        return Not(random_formula(rng, depth - 1, **sub))
    parts = [random_formula(rng, depth - 1, **sub) for _ in range(rng.randrange(2, 4))]
    return And(parts) if op == 1 else Or(parts)


def random_qbf(seed, n=3, k=4, width=3):
    """Normalized QBF (``∃∀...∃``) with ``k`` clauses of up to ``width`` literals."""
    if n % 2 == 0:
        raise ValueError("normalized prefixes have odd length")
    rng = _rng(seed)
    prefix = [E if i % 2 == 0 else A for i in range(n)]
    clauses = []
    for _ in range(k):
        size = rng.randint(1, min(width, n))
        vars_ = rng.sample(range(1, n + 1), size)
        clauses.append([v if rng.random() < 0.5 else -v for v in vars_])
    return QbfFormula(n, prefix, clauses)
