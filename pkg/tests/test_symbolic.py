import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import random_one_player_temporal
from tempgames.arena import Explore, GenReach, Player, Reach
from tempgames.errors import PeriodOverflow, StateSpaceLimit, UnknownVertex
from tempgames.generate import random_formula, random_temporal_graph
from tempgames.qbf import E, QbfFormula
from tempgames.reductions import qbf_to_symbolic_reachability
from tempgames.symbolic import (
    ALWAYS,
    NEVER,
    And,
    ArithProg,
    BitEq,
    Interval,
    Not,
    Or,
    PeriodBound,
    SymbolicTemporalGraph,
    earliest_available,
    eval_avail,
    eval_many,
    from_explicit,
    graph_period,
    periodic_product,
    period_bounds,
    product_size,
    solve_symbolic,
    to_explicit,
    with_waiting,
)
from tempgames.temporal import solve_temporal
from tempgames.verify import check_witness, symbolic_reach_bfs

P1, P2 = Player.ONE, Player.TWO

leaves = st.one_of(
    st.builds(lambda lo, d: Interval(lo, lo + d), st.integers(0, 30), st.integers(0, 10)),
    st.builds(ArithProg, st.integers(0, 20), st.integers(1, 7)),
    st.builds(BitEq, st.integers(0, 6), st.integers(0, 1)),
    st.just(ALWAYS),
    st.just(NEVER),
)
formulas = st.recursive(
    leaves,
    lambda sub: st.one_of(
        st.builds(Not, sub),
        st.lists(sub, min_size=1, max_size=3).map(And),
        st.lists(sub, min_size=1, max_size=3).map(Or),
    ),
    max_leaves=8,
)


# -- evaluation ------------------------------------------------------------------


def test_eval_examples():
    assert eval_avail(BitEq(0, 1), 5)
    assert eval_avail(ArithProg(3, 4), 11) and not eval_avail(ArithProg(3, 4), 12)
    assert eval_avail(And([BitEq(2, 1), BitEq(0, 0)]), 6)
    assert eval_avail(ALWAYS, 10**9) and not eval_avail(NEVER, 0)


def test_operators_build_trees():
    f = BitEq(0, 1) & ~Interval(0, 3) | NEVER
    assert f == Or([And([BitEq(0, 1), Not(Interval(0, 3))]), NEVER])
    assert f(5) and not f(3)


@given(formulas, st.integers(0, 500))
def test_negation_duality(f, t):
    assert eval_avail(Not(f), t) == (not eval_avail(f, t))


@given(formulas)
def test_vectorized_matches_scalar(f):
    times = np.arange(0, 300)
    assert eval_many(f, times).tolist() == [eval_avail(f, int(t)) for t in times]


def test_high_bits_in_vectorized_evaluation():
    assert eval_many(BitEq(63, 0), [0, 5]).all()
    assert not eval_many(BitEq(70, 1), [0, 5]).any()


def test_malformed_leaves():
    with pytest.raises(ValueError):
        Interval(5, 2)
    with pytest.raises(ValueError):
        ArithProg(0, 0)
    with pytest.raises(ValueError):
        BitEq(1, 2)


# -- periods -------------------------------------------------------------------------


def test_period_examples():
    assert period_bounds(Interval(2, 7)) == PeriodBound(8, 1)
    assert period_bounds(BitEq(3, 1)) == PeriodBound(0, 16)
    assert period_bounds(ArithProg(5, 6)) == PeriodBound(5, 6)
    assert period_bounds(Not(ALWAYS)) == PeriodBound(0, 1)
    assert period_bounds(And([ArithProg(1, 4), ArithProg(9, 6)])) == PeriodBound(9, 12)


@given(formulas)
def test_period_invariant(f):
    b = period_bounds(f)
    theta = np.arange(b.base, b.base + 4 * b.period + 1)
    assert np.array_equal(eval_many(f, theta), eval_many(f, theta + b.period))


def test_period_invariant_on_generated_formulas():
    rng = random.Random(6)
    for _ in range(500):
        f = random_formula(rng, depth=4)
        b = period_bounds(f)
        theta = np.arange(b.base, b.base + 4 * b.period + 1)
        assert np.array_equal(eval_many(f, theta), eval_many(f, theta + b.period))


def test_period_overflow():
    with pytest.raises(PeriodOverflow):
        period_bounds(BitEq(40, 1))
    with pytest.raises(PeriodOverflow):
        period_bounds(And([ArithProg(0, 7), ArithProg(0, 11)]), period_cap=50)


def test_graph_period():
    g = SymbolicTemporalGraph("ab", {("a", "b"): Interval(2, 7), ("b", "a"): BitEq(3, 1)})
    assert graph_period(g) == PeriodBound(8, 16)
    single = SymbolicTemporalGraph("ab", {("a", "b"): ArithProg(3, 5)})
    assert graph_period(single) == PeriodBound(3, 5)


def test_graph_period_holds_for_every_edge():
    rng = random.Random(7)
    for _ in range(30):
        avail = {("a", "b"): random_formula(rng, 3), ("b", "a"): random_formula(rng, 3), ("a", "a"): random_formula(rng, 2)}
        g = SymbolicTemporalGraph("ab", avail)
        b = graph_period(g)
        theta = np.arange(b.base, b.base + 2 * b.period + 1)
        for f in avail.values():
            assert np.array_equal(eval_many(f, theta), eval_many(f, theta + b.period))


def test_earliest_available():
    assert earliest_available(Interval(2, 7), 0) == 2
    assert earliest_available(NEVER, 17) is None
    assert earliest_available(BitEq(2, 1), 3) == 4
    assert earliest_available(Interval(2, 7), 8) is None
    assert earliest_available(ArithProg(10, 7), 11) == 17


@given(formulas, st.integers(0, 100))
def test_earliest_available_matches_scan(f, t):
    got = earliest_available(f, t)
    b = period_bounds(f)
    scan = [x for x in range(t, max(t, b.base) + b.period + 1) if eval_avail(f, x)]
    assert got == (scan[0] if scan else None)


def test_bit_beyond_word_width():
    from tempgames.errors import WidthExceeded

    with pytest.raises(WidthExceeded):
        SymbolicTemporalGraph("ab", {("a", "b"): BitEq(9, 1)}, word_width=8)


# -- product ----------------------------------------------------------------------------


def test_always_and_never():
    g = SymbolicTemporalGraph("st", {("s", "t"): ALWAYS})
    out = solve_symbolic(g, "s", Reach(["t"]))
    assert out.winner is P1 and str(out.certificate) == "s@0 t@1"
    g = SymbolicTemporalGraph("st", {("s", "t"): NEVER})
    assert solve_symbolic(g, "s", Reach(["t"])).winner is P2


def test_product_size_formula():
    g = SymbolicTemporalGraph("ab", {("a", "b"): ArithProg(1, 2), ("b", "a"): ALWAYS})
    full = periodic_product(g, Explore())
    assert len(full.arena.vertices) == 2 * 2**2 * 3 == product_size(g, Explore())
    reach = periodic_product(g, Reach(["b"]))
    assert len(reach.arena.vertices) == 2 * 3


def test_wrap_edge():
    g = SymbolicTemporalGraph("ab", {("a", "a"): ALWAYS, ("a", "b"): ArithProg(2, 3)})
    prod = periodic_product(g, Reach(["b"]))
    b, p = prod.bound.base, prod.bound.period
    assert (b, p) == (2, 3)
    e = prod.arena.edges
    assert e[("a", b + p - 1)] == (("a", b),)
    assert e[("a", 1)] == (("a", 2),)
    assert ("b", b + 1) in e[("a", b)]


def test_product_visited_sets_are_monotone():
    rng = random.Random(8)
    for _ in range(10):
        avail = {(u, v): random_formula(rng, 2, max_time=8, max_bit=2) for u in "abc" for v in "abc" if rng.random() < 0.5}
        prod = periodic_product(SymbolicTemporalGraph("abc", avail), Explore(), start="a")
        for (u, s, _), succ in prod.arena.edges.items():
            for v, s2, _ in succ:
                assert s <= s2 and v in s2
        assert prod.initial == ("a", frozenset("a"), 0)


def test_product_state_cap():
    g = SymbolicTemporalGraph("ab", {("a", "b"): BitEq(10, 1)})
    with pytest.raises(StateSpaceLimit):
        periodic_product(g, Explore(), state_cap=100)
    with pytest.raises(UnknownVertex):
        solve_symbolic(g, "z", Explore())


def test_interval_graphs_match_explicit_solver():
    rng = random.Random(9)
    for i in range(150):
        g = random_temporal_graph(rng, rng.randint(2, 4), horizon=6, p_two=0.4)
        sym = from_explicit(g)
        target = g.vertices[-1]
        for obj in (Reach([target]), Explore(), GenReach([[g.vertices[0]], [target]])):
            assert solve_symbolic(sym, "v0", obj).winner is solve_temporal(g, "v0", obj).winner


def test_explicit_round_trip():
    for g in random_one_player_temporal(13, 20, 3, horizon=6):
        assert to_explicit(from_explicit(g)) == g


def test_to_explicit_rejects_infinite_edges():
    with pytest.raises(ValueError):
        to_explicit(SymbolicTemporalGraph("a", {("a", "a"): ArithProg(0, 2)}))


def test_waiting_routes_agree():
    for g in random_one_player_temporal(14, 60, 3, horizon=5, p_edge=0.4):
        obj = Reach([g.vertices[-1]])
        explicit = solve_temporal(g.with_waiting(), "v0", obj).winner
        assert solve_symbolic(with_waiting(from_explicit(g)), "v0", obj).winner is explicit


def test_product_soundness_against_timed_bfs():
    rng = random.Random(10)
    checked = 0
    while checked < 120:
        n = rng.randint(2, 4)
        verts = [f"v{i}" for i in range(n)]
        avail = {
            (u, v): random_formula(rng, 2, max_time=10, max_bit=3, max_period=4)
            for u in verts for v in verts if rng.random() < 0.4
        }
        g = SymbolicTemporalGraph(verts, avail)
        b = graph_period(g)
        if b.window > 64:
            continue
        checked += 1
        out = solve_symbolic(g, "v0", Reach([verts[-1]]))
        truth = symbolic_reach_bfs(g, "v0", [verts[-1]], b.base + b.period * (n + 1))
        assert out.player1_wins == truth
        if out.player1_wins:
            assert check_witness(g, "v0", Reach([verts[-1]]), out.certificate)


def test_qbf_gadget_single_variable():
    for clauses, truth in (([[1]], True), ([[1], [-1]], False)):
        g, s, t = qbf_to_symbolic_reachability(QbfFormula(1, [E], clauses))
        out = solve_symbolic(g, s, Reach([t]))
        assert out.player1_wins is truth
        if truth:
            assert check_witness(g, s, Reach([t]), out.certificate)


def test_two_player_symbolic_strategy():
    # Player 2 at x chooses between a trap and the target
    g = SymbolicTemporalGraph(
        "sxtd", {("s", "x"): ALWAYS, ("x", "t"): BitEq(0, 1), ("x", "d"): BitEq(0, 0), ("d", "d"): ALWAYS},
        {"x": 2},
    )
    assert solve_symbolic(g, "s", Reach(["t"])).winner is P1
    g2 = SymbolicTemporalGraph(
        "sxtd", {("s", "x"): ALWAYS, ("x", "t"): ALWAYS, ("x", "d"): BitEq(0, 1), ("d", "d"): ALWAYS},
        {"x": 2},
    )
    assert solve_symbolic(g2, "s", Reach(["t"])).winner is P2
