"""Generators for reduction gadgets between game problems."""

from .arena import Player, StaticArena
from .errors import ClauseTooWide, NotNormalized, UnknownVertex, WidthExceeded
from .qbf import E, BitSectorLayout
from .symbolic import ALWAYS, DEFAULT_WORD_WIDTH, And, BitEq, Or, SymbolicTemporalGraph, bits_equal
from .temporal import TemporalGraph, TimeSet


class Via(tuple):
    """Fresh vertex ``[v,u]`` standing for the original edge ``v -> u``."""

    __slots__ = ()

    def __new__(cls, src, dst):
        return super().__new__(cls, ("via", src, dst))

    @property
    def src(self):
        return self[1]

    @property
    def dst(self):
        return self[2]

    def __repr__(self):
        return f"[{self[1]},{self[2]}]"

    __str__ = __repr__


def reach_to_explore(arena, s, t):
    """Arena whose explorability from ``s`` matches reachability ``s -> t`` in ``arena``.

    Every edge ``v -> u`` is routed through a Player 1 vertex ``[v,u]`` that
    either continues to ``u`` or resets to ``s``; the target gets an edge to
    every other vertex of the new arena.
    """
    for x in (s, t):
        if x not in arena.index:
            raise UnknownVertex(f"{x!r} is not a declared vertex")
    edges = [(v, u) for v in arena.vertices for u in (arena.edges[v] or (v,))]
    owner = dict(arena.owner)
    owner[t] = Player.ONE
    vias = [Via(v, u) for v, u in edges]
    vertices = list(arena.vertices) + vias
    new_edges = []
    for (v, u), via in zip(edges, vias):
        new_edges += [(v, via), (via, u), (via, s)]
    new_edges += [(t, w) for w in vertices if w != t]
    for via in vias:
        owner[via] = Player.ONE
    return StaticArena(vertices, new_edges, owner), s


# ---------------------------------------------------------------------------
# QBF -> two-player explorability on an explicit temporal graph


def literal_vertex(lit):
    return f"x{lit}" if lit > 0 else f"nx{-lit}"


def qbf_to_temporal_explorability(phi):
    """Four-phase explorability game won by Player 1 iff ``phi`` is true.

    Phases: clause chain on ``[0, k-1]``; variable selection on
    ``[k, k+2n-1]``; clause challenge at ``k+2n`` and complement-literal
    answer at ``k+2n+1``; flooding on ``[k+2n+2, k+3n]`` (exactly ``n-1``
    moves).
    """
    if not phi.is_normalized():
        raise NotNormalized("prefix must alternate ∃∀...∃ with an odd number of variables")
    for c in phi.clauses:
        if len(c) > 3:
            raise ClauseTooWide(f"clause {list(c)} has more than 3 literals")
    n, k = phi.num_vars, phi.num_clauses
    if k == 0:
        raise ValueError("the game needs at least one clause")
    clause = [f"C{i}" for i in range(1, k + 1)]
    quant = [f"q{i}" for i in range(1, n + 1)]
    lits = [(literal_vertex(i), literal_vertex(-i)) for i in range(1, n + 1)]
    vertices = clause + quant + [v for pair in lits for v in pair] + ["phi"]
    owner = {f"q{i}": Player.ONE if i % 2 else Player.TWO for i in range(1, n + 1)}
    owner["phi"] = Player.TWO

    initial = TimeSet.span(0, k - 1)
    select = TimeSet.span(k, k + 2 * n - 1)
    challenge = TimeSet.points([k + 2 * n])
    answer = TimeSet.points([k + 2 * n + 1])
    flood = TimeSet.span(k + 2 * n + 2, k + 3 * n) if n > 1 else None

    avail = {}
    chain = clause + ["q1"]
    for a, b in zip(chain, chain[1:]):
        avail[(a, b)] = initial
    for i in range(n):
        nxt = quant[i + 1] if i + 1 < n else "phi"
        for lit in lits[i]:
            avail[(quant[i], lit)] = select
            avail[(lit, nxt)] = select
    for c, name in zip(phi.clauses, clause):
        avail[("phi", name)] = challenge
        for x in c:
            avail[(name, literal_vertex(-x))] = answer
    if flood is not None:
        for i in range(n):
            for a in lits[i]:
                for b in lits[(i + 1) % n]:
                    avail[(a, b)] = flood
    return TemporalGraph(vertices, avail, owner), "C1"


# ---------------------------------------------------------------------------
# QBF -> one-player reachability on a symbolic temporal graph


def qbf_to_symbolic_reachability(phi, word_width=DEFAULT_WORD_WIDTH, full_return_guard=False):
    """One-player symbolic graph where ``qtop`` is reachable from ``q1`` iff ``phi`` is true.

    Time is split into ``n`` four-bit sectors ``(α, β, γ, δ)``, most
    significant first; ``β_i`` carries the value of ``x_i``.

    Every move costs one time unit, so a universal gadget's return edge
    ``q_i^c -> q_i`` is entered one tick after the carry that flips
    ``β_i``/``α_i``. By default its guard therefore leaves the lowest bit
    (``δ_n``) unconstrained. ``full_return_guard=True`` keeps the complete zero pattern,
    which makes every universal gadget a dead end.
    """
    if not phi.is_normalized():
        raise NotNormalized("prefix must alternate ∃∀...∃ with an odd number of variables")
    n = phi.num_vars
    lay = BitSectorLayout(n)
    if lay.width > word_width:
        raise WidthExceeded(f"{n} variables need {lay.width} bits, width is {word_width}")
    rng = range(1, n + 1)

    def exit_guard(i):
        bits = {lay.alpha(j): 0 for j in rng}
        bits.update({lay.gamma(j): 0 for j in rng})
        bits.update({lay.beta(j): 0 for j in rng if j > i})
        bits.update({lay.delta(j): 0 for j in rng if j > i})
        bits[lay.delta(i)] = 1
        return bits_equal(bits)

    def return_guard(i):
        bits = {lay.alpha(j): 0 for j in rng if j != i}
        bits.update({lay.beta(j): 0 for j in rng if j > i})
        bits.update({lay.gamma(j): 0 for j in rng})
        bits.update({lay.delta(j): 0 for j in rng if j >= i})
        if not full_return_guard:
            del bits[lay.delta(n)]
        return bits_equal(bits)

    def bit(k, v):
        return BitEq(k, v)

    q = {i: f"q{i}" for i in rng}
    universal = [i for i in rng if phi.prefix[i - 1] is not E]
    vertices = [q[i] for i in rng]
    for i in universal:
        vertices += [f"q{i}a", f"q{i}b", f"q{i}c"]
    vertices += ["qphi", "qtop"]

    def resume(i):
        """Where control goes once everything below universal ``i`` is done."""
        prev = [j for j in universal if j < i]
        return f"q{prev[-1]}a" if prev else "qtop"

    avail = {}
    for i in rng:
        nxt = q[i + 1] if i < n else "qphi"
        if i in universal:
            avail[(q[i], q[i])] = And([bit(lay.alpha(i), 0), bit(lay.delta(i), 0)])
            avail[(q[i], nxt)] = exit_guard(i)
            avail[(q[i], resume(i))] = bit(lay.alpha(i), 1)
            a, b, c = f"q{i}a", f"q{i}b", f"q{i}c"
            avail[(a, a)] = bit(lay.gamma(i), 0)
            avail[(a, b)] = bit(lay.gamma(i), 1)
            avail[(b, b)] = bit(lay.gamma(i), 1)
            avail[(b, c)] = bit(lay.gamma(i), 0)
            avail[(c, c)] = bit(lay.gamma(i), 0)
            avail[(c, q[i])] = return_guard(i)
        else:
            avail[(q[i], q[i])] = bit(lay.alpha(i), 0)
            avail[(q[i], nxt)] = exit_guard(i)
    matrix = And(
        [Or([bit(lay.beta(abs(x)), 1 if x > 0 else 0) for x in c]) for c in phi.clauses]
    )
    avail[("qphi", resume(n + 1))] = matrix
    avail[("qtop", "qtop")] = ALWAYS
    graph = SymbolicTemporalGraph(vertices, avail, word_width=word_width)
    return graph, "q1", "qtop"


def temporal_edge_count(graph):
    """Edges whose availability is restricted (anything but ``always``)."""
    return sum(1 for f in graph.avail.values() if f != ALWAYS)


# ---------------------------------------------------------------------------
# Hamiltonian path -> one-player exploration


def _fresh(name, taken):
    while name in taken:
        name += "'"
    return name


def hamiltonian_to_exploration(vertices, edges):
    """Temporal graph explorable iff the digraph has a Hamiltonian path.

    A fresh source enters any vertex at time 0; original edges are usable at
    times ``1..n-1``, leaving exactly ``n-1`` moves to cover the remaining
    vertices.
    """
    vertices = list(vertices)
    n = len(vertices)
    if n < 1:
        raise ValueError("need at least one vertex")
    src = _fresh("s0", set(vertices))
    avail = {(src, v): TimeSet.points([0]) for v in vertices}
    if n > 1:
        for u, v in edges:
            avail[(u, v)] = TimeSet.span(1, n - 1)
    return TemporalGraph([src] + vertices, avail), src
