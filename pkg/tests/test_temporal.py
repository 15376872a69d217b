import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import random_one_player_temporal
from tempgames.arena import Explore, GenReach, Player, Reach, WitnessPath
from tempgames.errors import OnePlayerOnly, StateSpaceLimit, UnknownVertex
from tempgames.qbf import A, E, QbfFormula
from tempgames.reductions import qbf_to_temporal_explorability
from tempgames.temporal import (
    BOTTOM,
    TemporalGraph,
    TimeSet,
    apply_waiting,
    enumerate_explorations,
    expand,
    horizon,
    lift_objective,
    solve_temporal,
)
from tempgames.verify import check_witness

P1, P2 = Player.ONE, Player.TWO


def late_edge():
    return TemporalGraph("st", {("s", "t"): TimeSet.points([2])})


# -- TimeSet ---------------------------------------------------------------------

intervals = st.lists(st.tuples(st.integers(0, 30), st.integers(0, 8)).map(lambda p: (p[0], p[0] + p[1])))


@given(intervals)
def test_timeset_canonical(spans):
    ts = TimeSet(spans)
    got = ts.intervals
    assert list(got) == sorted(got)
    for (a, b), (c, d) in zip(got, got[1:]):
        assert b + 1 < c
    points = {t for lo, hi in spans for t in range(lo, hi + 1)}
    assert set(ts) == points
    assert all((t in ts) == (t in points) for t in range(45))
    assert TimeSet(got) == ts


@given(intervals, intervals)
def test_timeset_union(a, b):
    assert set(TimeSet(a) | TimeSet(b)) == set(TimeSet(a)) | set(TimeSet(b))


def test_timeset_rejects_bad_interval():
    with pytest.raises(ValueError):
        TimeSet([(3, 1)])


def test_timeset_str():
    assert str(TimeSet([(0, 3), (7, 9)])) == "[0,3] | [7,9]"
    assert str(TimeSet()) == "never"


# -- graphs and horizon -----------------------------------------------------------


def test_horizon_examples():
    g = TemporalGraph("ab", {("a", "b"): TimeSet([(0, 3), (7, 9)])})
    assert horizon(g) == 9
    assert horizon(TemporalGraph("a", {})) == 0


def test_horizon_of_qbf_game():
    phi = QbfFormula(3, [E, A, E], [[2, 3], [-1, -2, -3], [1, 2], [1, 3]])
    graph, _ = qbf_to_temporal_explorability(phi)
    assert horizon(graph) == 4 + 3 * 3


def test_empty_availability_is_dropped():
    g = TemporalGraph("ab", {("a", "b"): TimeSet()})
    assert g.avail == {}


def test_unknown_endpoint():
    with pytest.raises(UnknownVertex):
        TemporalGraph("a", {("a", "z"): [(0, 1)]})


def test_moves_with_waiting():
    g = late_edge().with_waiting()
    assert g.moves("s", 0) == ["s"]
    assert g.moves("s", 2) == ["s", "t"]
    assert g.moves("s", 3) == []


# -- expansion ----------------------------------------------------------------------


def test_unavailable_edge_goes_to_bottom():
    exp = expand(late_edge())
    assert exp.arena.edges[("s", 0)] == (BOTTOM,)
    assert exp.arena.edges[("s", 2)] == (("t", 3),)
    assert exp.arena.edges[BOTTOM] == (BOTTOM,)
    assert exp.arena.owner[BOTTOM] is P2


def test_waiting_path_in_expansion():
    exp = expand(apply_waiting(late_edge()))
    e = exp.arena.edges
    assert ("s", 1) in e[("s", 0)] and ("s", 2) in e[("s", 1)] and ("t", 3) in e[("s", 2)]


def test_expansion_size():
    g = TemporalGraph("abcd", {("a", "b"): TimeSet.points([5])}, {"c": 2})
    exp = expand(g)
    assert exp.num_states == 4 * 7 + 1
    assert exp.arena.owner[("c", 3)] is P2


def test_expansion_state_cap():
    with pytest.raises(StateSpaceLimit):
        expand(late_edge(), state_cap=5)


def test_time_monotonicity():
    for g in random_one_player_temporal(8, 30, 4, horizon=5):
        exp = expand(g)
        for u, succ in exp.arena.edges.items():
            for v in succ:
                if u is BOTTOM:
                    assert v is BOTTOM
                elif v is not BOTTOM:
                    assert v[1] == u[1] + 1
                else:
                    assert u[1] == exp.horizon + 1 or not g.moves(u[0], u[1])


def test_lift_reach():
    g = TemporalGraph("st", {("s", "t"): TimeSet.points([4])})
    assert lift_objective(Reach(["t"]), g) == Reach([("t", i) for i in range(6)])


def test_lift_explore():
    g = late_edge()
    lifted = lift_objective(Explore(), g)
    assert isinstance(lifted, GenReach) and len(lifted.target_sets) == 2
    assert all(len(s) == horizon(g) + 2 for s in lifted.target_sets)


# -- solving --------------------------------------------------------------------------


def test_late_edge_without_waiting():
    assert solve_temporal(late_edge(), "s", Reach(["t"])).winner is P2


def test_late_edge_with_waiting():
    out = solve_temporal(late_edge().with_waiting(), "s", Reach(["t"]))
    assert out.winner is P1
    assert str(out.certificate) == "s@0 s@1 s@2 t@3"


def test_qbf_game_is_won():
    phi = QbfFormula(3, [E, A, E], [[2, 3], [-1, -2, -3], [1, 2], [1, 3]])
    graph, start = qbf_to_temporal_explorability(phi)
    assert solve_temporal(graph, start, Explore()).winner is P1


def test_two_player_temporal_reach():
    # Player 2 at x can wait out the window of x->t
    g = TemporalGraph("sxt", {("s", "x"): [(0, 0)], ("x", "t"): [(1, 1)], ("x", "x"): [(1, 3)]}, {"x": 2})
    assert solve_temporal(g, "s", Reach(["t"])).winner is P2
    g2 = TemporalGraph("sxt", {("s", "x"): [(0, 0)], ("x", "t"): [(1, 1)]}, {"x": 2})
    assert solve_temporal(g2, "s", Reach(["t"])).winner is P1


def test_genreach_on_temporal_graph():
    g = TemporalGraph("abc", {("a", "b"): [(0, 0)], ("b", "c"): [(1, 1)], ("a", "c"): [(0, 0)]})
    out = solve_temporal(g, "a", GenReach([["b"], ["c"]]))
    assert out.winner is P1 and str(out.certificate) == "a@0 b@1 c@2"


# -- waiting ---------------------------------------------------------------------------


def test_apply_waiting_on_single_vertex():
    g = apply_waiting(TemporalGraph("v", {}))
    assert g.avail == {("v", "v"): TimeSet.span(0, 0)}
    assert g.waiting


def test_apply_waiting_idempotent():
    for g in random_one_player_temporal(9, 20, 3, horizon=4):
        once = apply_waiting(g)
        assert apply_waiting(once) == once


def test_waiting_monotone_for_reach():
    for g in random_one_player_temporal(10, 300, 4, horizon=5, p_edge=0.35):
        obj = Reach([g.vertices[-1]])
        if solve_temporal(g, g.vertices[0], obj).player1_wins:
            assert solve_temporal(apply_waiting(g), g.vertices[0], obj).player1_wins


# -- exploration search -------------------------------------------------------------------


def test_search_path():
    g = TemporalGraph("abc", {("a", "b"): [(0, 2)], ("b", "c"): [(0, 2)]})
    out = enumerate_explorations(g, "a")
    assert out.winner is P1 and str(out.certificate) == "a@0 b@1 c@2"


def test_search_no_edges():
    assert enumerate_explorations(TemporalGraph("ab", {}), "a").winner is P2


def test_search_single_vertex():
    out = enumerate_explorations(TemporalGraph("a", {}), "a")
    assert out.winner is P1 and str(out.certificate) == "a@0"


def test_search_rejects_two_player():
    with pytest.raises(OnePlayerOnly):
        enumerate_explorations(TemporalGraph("ab", {}, {"b": 2}), "a")


def test_search_agrees_with_expansion_on_larger_graphs():
    for g in random_one_player_temporal(12, 200, 5, horizon=7, p_edge=0.5, p_time=0.5):
        a = enumerate_explorations(g, "v0")
        b = solve_temporal(g, "v0", Explore())
        assert a.winner is b.winner
        for out in (a, b):
            if out.player1_wins:
                assert isinstance(out.certificate, WitnessPath)
                assert check_witness(g, "v0", Explore(), out.certificate)
                seen = set()
                for v in out.certificate.vertices:
                    before = set(seen)
                    seen.add(v)
                    assert before <= seen
