"""Instance families shared by the test modules."""

import itertools
import random

from tempgames.arena import Player, StaticArena
from tempgames.temporal import TemporalGraph, TimeSet


def all_arenas(n):
    """Every arena on vertices ``0..n-1``: all edge subsets (self-loops included) and owners."""
    verts = list(range(n))
    pairs = [(u, v) for u in verts for v in verts]
    for bits in range(1 << len(pairs)):
        edges = [p for i, p in enumerate(pairs) if bits >> i & 1]
        for owners in itertools.product((Player.ONE, Player.TWO), repeat=n):
            yield StaticArena(verts, edges, dict(zip(verts, owners)))


def arenas_up_to(n):
    for k in range(1, n + 1):
        yield from all_arenas(k)


def random_arenas(seed, count, n, p_edge=0.3):
    rng = random.Random(seed)
    for _ in range(count):
        verts = list(range(n))
        edges = [(u, v) for u in verts for v in verts if rng.random() < p_edge]
        owner = {v: rng.choice((Player.ONE, Player.TWO)) for v in verts}
        yield StaticArena(verts, edges, owner)


TINY_SETS = (None, TimeSet.points([0]), TimeSet.points([1]), TimeSet.span(0, 1))


def tiny_temporal_graph(n, choice):
    """One-player graph whose edge ``(u, v)`` gets ``TINY_SETS[choice[u * n + v]]``."""
    verts = [f"v{i}" for i in range(n)]
    avail = {}
    for i, c in enumerate(choice):
        if TINY_SETS[c] is not None:
            avail[(verts[i // n], verts[i % n])] = TINY_SETS[c]
    return TemporalGraph(verts, avail)


def all_tiny_temporal_graphs(n):
    for choice in itertools.product(range(4), repeat=n * n):
        yield tiny_temporal_graph(n, choice)


def random_tiny_temporal_graphs(seed, count, n):
    rng = random.Random(seed)
    for _ in range(count):
        yield tiny_temporal_graph(n, [rng.randrange(4) for _ in range(n * n)])


def random_one_player_temporal(seed, count, n, horizon, p_edge=0.5, p_time=0.3):
    rng = random.Random(seed)
    for _ in range(count):
        verts = [f"v{i}" for i in range(n)]
        avail = {}
        for u in verts:
            for v in verts:
                if rng.random() < p_edge:
                    times = [t for t in range(horizon + 1) if rng.random() < p_time]
                    if times:
                        avail[(u, v)] = TimeSet.points(times)
        yield TemporalGraph(verts, avail)


def all_digraphs(n):
    """Loop-free digraphs on ``0..n-1``."""
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    for bits in range(1 << len(pairs)):
        yield [p for i, p in enumerate(pairs) if bits >> i & 1]


def random_digraphs(seed, count, n, p_edge=0.35):
    rng = random.Random(seed)
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    for _ in range(count):
        yield [p for p in pairs if rng.random() < p_edge]
