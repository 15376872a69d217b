"""Independent oracles and certificate checkers.

Nothing here calls the attractor kernels: the oracles are naive on purpose
so that they can cross-check the solvers.
"""

import sys
from collections import deque
from dataclasses import dataclass
from itertools import permutations

from .arena import GenReach, Player, Reach, StaticArena, WitnessPath, check_objective
from .errors import StateSpaceLimit
from .symbolic import SymbolicTemporalGraph
from .temporal import BOTTOM, TemporalGraph


@dataclass(frozen=True)
class ProductState:
    """A position of a product game: vertex, time and visited set."""

    vertex: object
    time: int
    visited: frozenset = frozenset()
    wrapped: bool = False


def _target_sets(obj, vertices):
    if isinstance(obj, Reach):
        return [obj.targets]
    if isinstance(obj, GenReach):
        return list(obj.target_sets)
    return [frozenset([v]) for v in vertices]


def objective_met(obj, visited, vertices):
    return all(s & visited for s in _target_sets(obj, vertices))


def minimax_oracle(arena, start, obj, depth_cap=None):
    """Winner by exhaustive game-tree search over ``(vertex, progress)``.

    Progress is the bitmask of target sets hit so far. A play that returns to
    a position already on the current path made no progress and counts as
    lost for Player 1. Wins are memoized unconditionally; losses only when
    they did not depend on the current path.
    """
    check_objective(obj, arena.vertices)
    sets = _target_sets(obj, arena.vertices)
    hit = {v: sum(1 << j for j, s in enumerate(sets) if v in s) for v in arena.vertices}
    full = (1 << len(sets)) - 1
    if depth_cap is None:
        depth_cap = len(arena.vertices) * (full + 1) + 1
    won, lost, path = set(), set(), set()

    def solve(v, sig, depth):
        # returns (player1 wins, result depends on the current path)
        if sig == full:
            return True, False
        key = (v, sig)
        if key in won:
            return True, False
        if key in lost:
            return False, False
        if key in path:
            return False, True
        if depth > depth_cap:
            raise StateSpaceLimit(f"game tree deeper than {depth_cap}")
        succ = arena.edges[v]
        if not succ:
            lost.add(key)
            return False, False
        path.add(key)
        mine = arena.owner[v] is Player.ONE
        result = not mine
        depends = False
        for w in succ:
            r, d = solve(w, sig | hit[w], depth + 1)
            if r == mine:
                result = mine
                depends = d
                break
            depends = depends or d
        path.discard(key)
        if result:
            won.add(key)
            return True, False
        if not depends:
            lost.add(key)
        return False, depends

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * depth_cap + 200))
    try:
        wins, _ = solve(start, hit[start], 0)
    finally:
        sys.setrecursionlimit(old)
    return Player.ONE if wins else Player.TWO


def check_witness(game, start, obj, witness):
    """Replay a timed play and check availability and the objective."""
    steps = witness.steps if isinstance(witness, WitnessPath) else tuple(witness)
    if not steps or steps[0] != (start, 0):
        return False
    vertices = game.vertices
    known = set(vertices)
    for i, (v, t) in enumerate(steps):
        if v not in known or t != i:
            return False
    for (u, t), (v, _) in zip(steps, steps[1:]):
        if isinstance(game, StaticArena):
            ok = v in game.edges[u]
        elif isinstance(game, (TemporalGraph, SymbolicTemporalGraph)):
            ok = game.available(u, v, t)
        else:
            raise TypeError(f"unsupported game {type(game).__name__}")
        if not ok:
            return False
    try:
        check_objective(obj, vertices)
    except ValueError:
        return False
    return objective_met(obj, frozenset(v for v, _ in steps), vertices)


def check_strategy(arena, region, strategy, targets, player=Player.ONE):
    """Validate an attractor's rank certificate."""
    player = Player(player)
    rank = region.rank
    targets = frozenset(targets)
    if set(rank) != set(region.region):
        return False
    for v in region.region:
        r = rank[v]
        if (r == 0) != (v in targets):
            return False
        if r == 0:
            continue
        succ = arena.edges[v]
        if arena.owner[v] is player:
            w = strategy.get(v)
            if w is None or w not in succ or w not in rank or rank[w] >= r:
                return False
        else:
            if not succ or any(w not in rank or rank[w] >= r for w in succ):
                return False
    for v in strategy:
        if v not in rank or rank[v] == 0 or arena.owner[v] is not player:
            return False
    return all(t in rank for t in targets)


def explore_strategy_plays(graph, start, strategy, limit=100_000):
    """All plays of a temporal Explore game under a Player 1 product strategy.

    ``strategy`` maps ``((v, t), visited_mask)`` to its successor as produced
    by :func:`tempgames.temporal.solve_temporal`. Plays stop once every
    vertex is visited or when stuck.
    """
    idx = graph.index
    full = (1 << len(graph.vertices)) - 1
    plays = []
    stack = [[(start, 0)]]
    while stack:
        play = stack.pop()
        mask = 0
        for v, _ in play:
            mask |= 1 << idx[v]
        v, t = play[-1]
        if mask == full:
            plays.append(WitnessPath(play))
        elif graph.owner[v] is Player.ONE:
            nxt = strategy.get(((v, t), mask))
            if nxt is None or nxt[0] is BOTTOM:
                plays.append(WitnessPath(play))
            else:
                stack.append(play + [nxt[0]])
        else:
            succ = graph.moves(v, t)
            if not succ:
                plays.append(WitnessPath(play))
            stack.extend(play + [(w, t + 1)] for w in succ)
        if len(plays) > limit:
            raise StateSpaceLimit("too many plays")
    return plays


def has_hamiltonian_path(vertices, edges):
    """Permutation brute force."""
    vertices = list(vertices)
    es = set(edges)
    return any(
        all((a, b) in es for a, b in zip(p, p[1:])) for p in permutations(vertices)
    )


def symbolic_reach_bfs(graph, start, targets, max_time):
    """Breadth-first search over ``(vertex, real time)`` up to ``max_time``."""
    targets = set(targets)
    if start in targets:
        return True
    seen = {(start, 0)}
    queue = deque(seen)
    while queue:
        v, t = queue.popleft()
        if t >= max_time:
            continue
        for w in graph.moves(v, t):
            if w in targets:
                return True
            if (w, t + 1) not in seen:
                seen.add((w, t + 1))
                queue.append((w, t + 1))
    return False

