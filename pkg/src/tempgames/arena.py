"""Static game arenas and their solvers.

An arena is a finite directed graph whose vertices are split between
Player 1 (the explorer) and Player 2 (the adversary). Plays may halt at a
dead end; objectives are then judged on the finite prefix visited so far.
"""

from dataclasses import dataclass, field
from enum import IntEnum
from functools import cached_property
from typing import Hashable, Mapping, Optional, Union

import numpy as np

from . import _kernels
from ._product import DEFAULT_STATE_CAP, solve_forward
from .errors import DuplicateVertex, InvalidObjective, UnknownVertex

Vertex = Hashable


class Player(IntEnum):
    ONE = 1
    TWO = 2

    @property
    def opponent(self):
        return Player.TWO if self is Player.ONE else Player.ONE


# ---------------------------------------------------------------------------
# objectives


@dataclass(frozen=True)
class Reach:
    """Visit any member of ``targets``."""

    targets: frozenset

    def __init__(self, targets):
        object.__setattr__(self, "targets", frozenset(targets))


@dataclass(frozen=True)
class GenReach:
    """Visit at least one member of every set in ``target_sets``."""

    target_sets: tuple

    def __init__(self, target_sets):
        object.__setattr__(self, "target_sets", tuple(frozenset(s) for s in target_sets))


@dataclass(frozen=True)
class Explore:
    """Visit every vertex."""


Objective = Union[Reach, GenReach, Explore]


def check_objective(obj, vertices):
    """Raise unless ``obj`` is well formed over ``vertices``."""
    known = set(vertices)
    if isinstance(obj, Reach):
        sets = [obj.targets]
    elif isinstance(obj, GenReach):
        if not obj.target_sets:
            raise InvalidObjective("generalized reachability needs at least one target set")
        sets = obj.target_sets
    elif isinstance(obj, Explore):
        return obj
    else:
        raise InvalidObjective(f"unknown objective {obj!r}")
    for s in sets:
        if not s:
            raise InvalidObjective("target sets must be nonempty")
        missing = s - known
        if missing:
            raise UnknownVertex(f"undeclared target vertices: {sorted(map(str, missing))}")
    return obj


# ---------------------------------------------------------------------------
# certificates and outcomes


@dataclass(frozen=True)
class WitnessPath:
    """A timed play ``v0@0 v1@1 ...`` that satisfies the objective."""

    steps: tuple

    def __init__(self, steps):
        object.__setattr__(self, "steps", tuple((v, int(t)) for v, t in steps))

    def __str__(self):
        return " ".join(f"{v}@{t}" for v, t in self.steps)

    def __len__(self):
        return len(self.steps)

    @property
    def vertices(self):
        return [v for v, _ in self.steps]


@dataclass(frozen=True)
class ProductStrategy:
    """Positional Player 1 strategy on a (product) state space."""

    moves: Mapping


@dataclass(frozen=True)
class Linearization:
    """Order ``v1 ⪯ v2 ⪯ ... ⪯ vn`` starting at the initial vertex."""

    order: tuple


Certificate = Union[WitnessPath, ProductStrategy, Linearization, None]


@dataclass(frozen=True)
class SolveOutcome:
    winner: Player
    certificate: Certificate = None
    states_explored: int = 0
    method: str = ""

    @property
    def player1_wins(self):
        return self.winner is Player.ONE


# ---------------------------------------------------------------------------
# arenas


class StaticArena:
    """Immutable two-player arena.

    ``edges`` maps each vertex to its successors, deduplicated and ordered by
    vertex declaration index.
    """

    def __init__(self, vertices, edges=(), owner=None):
        verts = tuple(vertices)
        index = {}
        for i, v in enumerate(verts):
            if v in index:
                raise DuplicateVertex(f"vertex {v!r} declared twice")
            index[v] = i
        owner = owner or {}
        own = {}
        for v in verts:
            own[v] = Player(owner.get(v, Player.ONE))
        for v in owner:
            if v not in index:
                raise UnknownVertex(f"owner given for undeclared vertex {v!r}")
        if isinstance(edges, Mapping):
            pairs = [(u, v) for u, succ in edges.items() for v in succ]
        else:
            pairs = list(edges)
        succ = {v: set() for v in verts}
        for u, v in pairs:
            if u not in index:
                raise UnknownVertex(f"edge source {u!r} is not a declared vertex")
            if v not in index:
                raise UnknownVertex(f"edge target {v!r} is not a declared vertex")
            succ[u].add(v)
        self.vertices = verts
        self.index = index
        self.owner = own
        self.edges = {v: tuple(sorted(succ[v], key=index.__getitem__)) for v in verts}

    def __repr__(self):
        return f"StaticArena({len(self.vertices)} vertices, {self.num_edges} edges)"

    def __eq__(self, other):
        return (
            isinstance(other, StaticArena)
            and self.vertices == other.vertices
            and self.owner == other.owner
            and self.edges == other.edges
        )

    __hash__ = None

    @property
    def num_edges(self):
        return sum(len(s) for s in self.edges.values())

    def edge_list(self):
        return [(u, v) for u in self.vertices for v in self.edges[u]]

    @property
    def is_one_player(self):
        return all(p is Player.ONE for p in self.owner.values())

    @cached_property
    def graph(self):
        idx = self.index
        return _kernels.GameGraph(
            [int(self.owner[v]) for v in self.vertices],
            [idx[u] for u, _ in self.edge_list()],
            [idx[v] for _, v in self.edge_list()],
        )

    def mask(self, vertex_set):
        m = np.zeros(len(self.vertices), dtype=bool)
        for v in vertex_set:
            m[self.index[v]] = True
        return m


def validate_arena(raw):
    """Build a normalized :class:`StaticArena` from a plain description.

    ``raw`` is a mapping with ``vertices``, ``edges`` (pairs or adjacency
    mapping) and optional ``owner`` (vertex to 1 or 2).
    """
    if isinstance(raw, StaticArena):
        return raw
    return StaticArena(raw["vertices"], raw.get("edges", ()), raw.get("owner"))


# ---------------------------------------------------------------------------
# attractor


@dataclass(frozen=True)
class RankedRegion:
    region: frozenset
    rank: Mapping = field(default_factory=dict)


def _attract(arena, targets, player):
    graph = arena.graph
    mine = graph.owner == int(player)
    rank = _kernels.attractor_ranks(graph, arena.mask(targets), mine)
    return graph, mine, rank


def attractor(arena, targets, for_player=Player.ONE):
    """Region from which ``for_player`` forces a visit to ``targets``.

    Returns the ranked region and a positional strategy for ``for_player``
    on its region vertices of positive rank.
    """
    player = Player(for_player)
    for t in targets:
        if t not in arena.index:
            raise UnknownVertex(f"target {t!r} is not a declared vertex")
    graph, mine, rank = _attract(arena, targets, player)
    strat = _kernels.attractor_strategy(graph, rank, mine)
    verts = arena.vertices
    ranks = {verts[i]: int(r) for i, r in enumerate(rank) if r >= 0}
    strategy = {verts[i]: verts[int(s)] for i, s in enumerate(strat) if s >= 0}
    return RankedRegion(frozenset(ranks), ranks), strategy


def _one_player_witness(play):
    return WitnessPath((v, t) for t, v in enumerate(play))


def solve_reachability(arena, start, targets):
    """Reachability game from ``start``; Player 1 wins on visiting any target."""
    if start not in arena.index:
        raise UnknownVertex(f"start {start!r} is not a declared vertex")
    targets = check_objective(Reach(targets), arena.vertices).targets
    region, strategy = attractor(arena, targets, Player.ONE)
    if start not in region.region:
        return SolveOutcome(Player.TWO, None, len(arena.vertices), "attractor")
    if arena.is_one_player:
        play = [start]
        while region.rank[play[-1]] > 0:
            play.append(strategy[play[-1]])
        cert = _one_player_witness(play)
    else:
        cert = ProductStrategy(strategy)
    return SolveOutcome(Player.ONE, cert, len(arena.vertices), "attractor")


def solve_generalized_reachability(arena, start, target_sets, state_cap=DEFAULT_STATE_CAP):
    """Generalized reachability via the visited-target-sets product ``V x 2^k``."""
    if start not in arena.index:
        raise UnknownVertex(f"start {start!r} is not a declared vertex")
    obj = check_objective(GenReach(target_sets), arena.vertices)
    solution = solve_genreach_graph(
        arena.graph, arena.index[start], _hit_masks(arena, obj.target_sets), len(obj.target_sets),
        state_cap,
    )
    return _genreach_outcome(solution, arena.vertices, arena.is_one_player, "product")


def _hit_masks(arena, target_sets):
    hits = [0] * len(arena.vertices)
    for j, s in enumerate(target_sets):
        for v in s:
            hits[arena.index[v]] |= 1 << j
    return hits


def solve_genreach_graph(graph, start, hits, k, state_cap=DEFAULT_STATE_CAP):
    """Solve generalized reachability on an index graph.

    ``hits[v]`` is the bitmask of target sets containing vertex ``v``.
    Product states are ``(v, mask)``.
    """
    full = (1 << k) - 1
    ptr, dst, owner = graph.succ_ptr, graph.dst.tolist(), graph.owner.tolist()
    ptr = ptr.tolist()

    def successors(state):
        v, mask = state
        return [(w, mask | hits[w]) for w in dst[ptr[v] : ptr[v + 1]]]

    return solve_forward(
        (start, hits[start]),
        successors,
        lambda s: owner[s[0]],
        lambda s: s[1] == full,
        state_cap,
    )


def _genreach_outcome(solution, names, one_player, method):
    n = solution.size
    if not solution.player1_wins:
        return SolveOutcome(Player.TWO, None, n, method)
    if one_player:
        play = [names[v] for v, _ in solution.winning_play()]
        cert = _one_player_witness(play)
    else:
        cert = ProductStrategy(
            {(names[v], m): (names[w], m2) for (v, m), (w, m2) in solution.strategy_map().items()}
        )
    return SolveOutcome(Player.ONE, cert, n, method)


# ---------------------------------------------------------------------------
# explorability on static arenas


class ReachPreorder:
    """``relation[i, j]`` holds iff Player 1 wins reachability from vertex i to vertex j."""

    def __init__(self, vertices, relation):
        self.vertices = tuple(vertices)
        self.index = {v: i for i, v in enumerate(self.vertices)}
        self.relation = relation

    def holds(self, u, v):
        return bool(self.relation[self.index[u], self.index[v]])

    def is_total(self):
        r = self.relation
        return bool((r | r.T).all())


def reach_preorder(arena):
    """The reach preorder, one attractor per target vertex."""
    graph = arena.graph
    return ReachPreorder(arena.vertices, _kernels.reach_matrix(graph, graph.owner == 1))


def solve_static_explorability(arena, start):
    """Player 1 explores iff the reach preorder is total and ``start`` is below everything."""
    if start not in arena.index:
        raise UnknownVertex(f"start {start!r} is not a declared vertex")
    pre = reach_preorder(arena)
    n = len(arena.vertices)
    s = arena.index[start]
    if not (pre.is_total() and pre.relation[s].all()):
        return SolveOutcome(Player.TWO, None, n, "preorder")
    # In a total preorder, vertices that reach more come earlier.
    reach_count = pre.relation.sum(axis=1)
    order = sorted(range(n), key=lambda i: (i != s, -reach_count[i], i))
    cert = Linearization(tuple(arena.vertices[i] for i in order))
    return SolveOutcome(Player.ONE, cert, n, "preorder")
