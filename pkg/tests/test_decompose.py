import json
import random

import pytest

import cdcover.decomposer as D
from cdcover.coloring import (
    EdgeColoredGraph,
    GoodnessVerdict,
    check_goodness,
    parse_colored_edge_list,
)
from cdcover.decomposer import (
    CaseVerificationError,
    DecomposeError,
    FallbackResult,
    case1_1,
    case1_2,
    case2_1,
    decompose,
    decompose_goddyn,
    extract_case2_2_pattern,
    fallback_search,
    find_cycle_all_type2,
    normalize_case2_2,
    replay_case_failure,
)
from cdcover.graphs import Cycle
from cdcover.linegraph import build_line_graph, cover_from_decomposition, project_cycle
from cdcover.oracle import GeneratorConfig, enumerate_cycles, random_cubic_bridgeless
from cdcover.verify import verify_cdc, verify_rainbow_decomposition
from graphsamples import (
    almost_good_c4,
    case1_1_host,
    case1_2_host,
    case2_2_2d_host,
    k4,
    k33,
    petersen,
    prism,
    rainbow_c4,
    two_squares_type_x,
)
from oracles import connected_ignoring_isolated, enumerate_rainbow_cycles


def _decomposed_ok(g, mode="Good"):
    tr = decompose(g)
    assert tr.success, tr.failure and tr.failure.message
    assert verify_rainbow_decomposition(g, tr.cycles, mode).accepted
    return tr


def test_decompose_rainbow_c4_single_cycle():
    tr = _decomposed_ok(rainbow_c4())
    assert [s.case for s in tr.steps] == ["BaseCycle"]
    assert len(tr.cycles) == 1


def test_decompose_almost_good_c4():
    tr = _decomposed_ok(almost_good_c4(), "AlmostGood")
    assert [s.case for s in tr.steps] == ["BaseCycle"]


def test_decompose_almost_good_c6_bypasses_case_1_2():
    g = EdgeColoredGraph.from_triples(6, [
        (0, 1, 0), (0, 5, 0), (1, 2, 1), (2, 3, 2), (3, 4, 3), (4, 5, 4)])
    assert check_goodness(g).verdict is GoodnessVerdict.ALMOST_GOOD
    tr = _decomposed_ok(g, "AlmostGood")
    assert [s.case for s in tr.steps] == ["BaseCycle"]
    assert len(tr.cycles) == 1


def test_decompose_l_k4():
    lg = build_line_graph(k4()).lg
    tr = _decomposed_ok(lg)
    assert sum(len(c) for c in tr.cycles) == 12
    assert tr.steps[0].case in ("RainbowTriangle", "AllTypeII")


def test_decompose_l_petersen():
    lg = build_line_graph(petersen()).lg
    tr = _decomposed_ok(lg)
    assert sum(len(c) for c in tr.cycles) == 30


def test_decompose_rejects_not_good():
    with pytest.raises(DecomposeError):
        decompose(two_squares_type_x())


def test_decompose_partition_invariant():
    lg = build_line_graph(prism()).lg
    tr = _decomposed_ok(lg)
    seen = set()
    for c in tr.cycles:
        assert not (seen & set(c.edges))
        seen |= set(c.edges)
    assert seen == set(lg.edges)


def test_decompose_deterministic():
    lg = build_line_graph(petersen()).lg
    a = decompose(lg)
    b = decompose(lg)
    assert [s.case for s in a.steps] == [s.case for s in b.steps]
    assert [c.vertices for c in a.cycles] == [c.vertices for c in b.cycles]
    assert json.dumps(a.to_json(), sort_keys=True) == \
           json.dumps(b.to_json(), sort_keys=True)


def test_trace_json_shape():
    tr = decompose(build_line_graph(k4()).lg)
    data = tr.to_json()
    assert data["outcome"]["status"] == "success"
    for step in data["steps"]:
        assert step["case"] in D.CASE_TAGS
        assert step["goodness"]["verdict"] in ("good", "almost_good")


def test_prefix_goodness_replay():
    """Removing the trace's cycles in order keeps every prefix good."""
    for g in (build_line_graph(k33()).lg, build_line_graph(petersen()).lg,
              case1_1_host()):
        tr = decompose(g)
        h = g
        for step in tr.steps:
            h = h.remove_cycle(step.cycle)
            rep = check_goodness(h)
            assert rep.ok
            assert rep.verdict == step.goodness.verdict


# ---------------------------------------------------------------------------
# case handlers


def test_case1_1_host_trace():
    g = case1_1_host()
    tr = _decomposed_ok(g, "AlmostGood")
    assert tr.steps[0].case == "Case1_1"
    first = tr.cycles[0]
    cols = [g.coloring[e] for e in first.edges]
    assert len(set(cols)) == len(cols) - 1  # the almost-rainbow cycle leads


def test_case1_1_transform_roundtrip():
    g = case1_1_host()
    red = case1_1(g, 0)
    back = red.transform.invert(red.child)
    assert back.graph == g.graph and dict(back.coloring) == dict(g.coloring)
    assert red.child.n == g.n - 2
    assert len(red.child.edges) == len(g.edges) - 3


def test_case1_1_rejects_wrong_pattern():
    with pytest.raises(CaseVerificationError):
        case1_1(case1_2_host(), 0)  # neighbors not adjacent: belongs to 1.2


def test_case1_2_host_trace():
    g = case1_2_host()
    tr = _decomposed_ok(g, "AlmostGood")
    assert tr.steps[0].case == "Case1_2"


def test_case1_2_transform_roundtrip():
    g = case1_2_host()
    red = case1_2(g, 0)
    back = red.transform.invert(red.child)
    assert back.graph == g.graph and dict(back.coloring) == dict(g.coloring)
    assert red.child.n == g.n - 1


def test_case1_2_rejects_type_2_flank():
    with pytest.raises(CaseVerificationError):
        case1_2(case1_1_host(), 0)  # x1 adjacent to x2: belongs to 1.1


def test_case2_1_agrees_with_base_case_on_c5():
    g = EdgeColoredGraph.from_triples(5, [(0, 1, 0), (1, 2, 1), (2, 3, 2),
                                          (3, 4, 3), (0, 4, 4)])
    red = case2_1(g, (0, 1, 2, 3))
    assert red.child.n == 4
    sub = [( "BaseCycle", c) for c in
           [next(iter(decompose(red.child).cycles))]]
    lifted = red.lift(sub)
    assert len(lifted) == 1
    assert lifted[0][1] == Cycle((0, 1, 2, 3, 4))
    tr = decompose(g)
    assert tr.cycles == (Cycle((0, 1, 2, 3, 4)),)


def test_case2_1_rejects_short_singular_path():
    g = case2_2_2d_host()
    with pytest.raises(CaseVerificationError):
        case2_1(g, (1, 0, 2, 4))  # interior vertices not both Type I


def test_case2_2_pattern_extraction_and_shape_d():
    g = case2_2_2d_host()
    pat = extract_case2_2_pattern(g)
    assert pat.v == 0 and (pat.x1, pat.x2) == (1, 2)
    shape, norm = normalize_case2_2(pat)
    assert shape == "d"
    assert norm.w2 == norm.y1 and norm.w1 == norm.y2


def test_case2_2_2d_host_trace():
    g = case2_2_2d_host()
    tr = _decomposed_ok(g)
    assert tr.steps[0].case == "Case2_2_2d"
    assert tr.steps[0].cycle == Cycle((1, 3, 2, 4))


CASE_RECIPES = {
    "AllTypeII": (12, 0),
    "Case2_1": (8, 0),
    "Case2_2_1a": (12, 0),
    "Case2_2_1b": (8, 0),
    "Case2_2_2a": (10, 1),
    "Case2_2_2b": (14, 4),
    "Case2_2_2c": (14, 0),
}


@pytest.mark.parametrize("tag", sorted(CASE_RECIPES))
def test_case_reachable_and_verified(tag):
    n, seed = CASE_RECIPES[tag]
    g = random_cubic_bridgeless(GeneratorConfig(n, seed))
    clg = build_line_graph(g)
    tr = _decomposed_ok(clg.lg)
    assert tag in [s.case for s in tr.steps]
    cover = cover_from_decomposition(clg, tr.cycles)
    assert verify_cdc(g, cover).accepted


# ---------------------------------------------------------------------------
# all-Type-II cycles and fallback


def test_find_cycle_all_type2_l_k33():
    lg = build_line_graph(k33()).lg
    c = find_cycle_all_type2(lg)
    cols = [lg.coloring[e] for e in c.edges]
    assert len(set(cols)) == len(cols)
    rep = check_goodness(lg.remove_cycle(c))
    assert rep.verdict is GoodnessVerdict.GOOD


def test_find_cycle_all_type2_preconditions():
    with pytest.raises(DecomposeError):
        find_cycle_all_type2(rainbow_c4())  # Type I vertices, not all Type II
    empty = EdgeColoredGraph.from_triples(3, [])
    with pytest.raises(DecomposeError):
        find_cycle_all_type2(empty)


def test_connectivity_after_rainbow_removal():
    rng = random.Random(11)
    checked = 0
    for seed in range(25):
        g = random_cubic_bridgeless(GeneratorConfig(10, seed))
        lg = build_line_graph(g).lg
        cycles = enumerate_rainbow_cycles(lg)
        for _ in range(4):
            vs = cycles[rng.randrange(len(cycles))]
            h = lg.remove_cycle(Cycle(vs))
            assert connected_ignoring_isolated(h.n, h.edges)
            checked += 1
    assert checked == 100


def test_fallback_finds_triangle_in_l_k4():
    lg = build_line_graph(k4()).lg
    res = fallback_search(lg)
    assert res.status == "found"
    assert len(res.cycle) == 3


def test_fallback_single_rainbow_c4():
    res = fallback_search(rainbow_c4())
    assert res.status == "found"
    assert res.cycle == Cycle((0, 1, 2, 3))


def test_fallback_empty_graph_absent():
    empty = EdgeColoredGraph.from_triples(3, [])
    assert fallback_search(empty).status == "absent"


def test_fallback_indeterminate_when_capped():
    lg = build_line_graph(k33()).lg  # girth of rainbow cycles here is 4
    res = fallback_search(lg, max_len=3)
    assert res.status == "indeterminate"


def test_engine_recovers_via_fallback(monkeypatch):
    def boom(g):
        raise CaseVerificationError("AllTypeII", "simulated defect")
    monkeypatch.setattr(D, "find_cycle_all_type2", boom)
    lg = build_line_graph(k33()).lg
    tr = decompose(lg)
    assert tr.success
    assert "Fallback" in [s.case for s in tr.steps]
    assert verify_rainbow_decomposition(lg, tr.cycles, "Good").accepted


def test_case_failure_is_replayable(monkeypatch):
    def boom(g):
        raise CaseVerificationError("AllTypeII", "simulated defect")
    monkeypatch.setattr(D, "find_cycle_all_type2", boom)
    monkeypatch.setattr(D, "fallback_search",
                        lambda g, max_len=None: FallbackResult("absent"))
    lg = build_line_graph(k33()).lg
    tr = decompose(lg)
    assert not tr.success
    assert tr.failure.case == "AllTypeII"
    data = tr.to_json()
    assert data["outcome"]["status"] == "case_failure"
    # the embedded graph replays through the same failure
    again = replay_case_failure(tr.failure)
    assert not again.success and again.failure.case == "AllTypeII"
    # and decomposes fine once the simulated defect is gone
    monkeypatch.undo()
    healed = replay_case_failure(tr.failure)
    assert healed.success


def test_case_failure_graph_parses():
    g = case1_1_host()
    from cdcover.coloring import serialize_colored_edge_list
    text = serialize_colored_edge_list(g)
    back = parse_colored_edge_list(text)
    assert back.graph == g.graph


# ---------------------------------------------------------------------------
# prescribed first cycle


def test_goddyn_k4_triangle():
    clg = build_line_graph(k4())
    first = Cycle((0, 1, 2))
    tr = decompose_goddyn(clg, first)
    assert tr.success
    cover = cover_from_decomposition(clg, tr.cycles)
    assert first in cover.cycles
    assert verify_cdc(k4(), cover).accepted


def test_goddyn_k4_hamiltonian():
    clg = build_line_graph(k4())
    first = Cycle((0, 1, 2, 3))
    tr = decompose_goddyn(clg, first)
    assert tr.success
    assert first in cover_from_decomposition(clg, tr.cycles).cycles


def test_goddyn_petersen_five_cycle():
    clg = build_line_graph(petersen())
    first = Cycle((0, 1, 2, 3, 4))
    tr = decompose_goddyn(clg, first)
    assert tr.success
    cover = cover_from_decomposition(clg, tr.cycles)
    assert first in cover.cycles
    assert verify_cdc(petersen(), cover).accepted


def test_goddyn_rejects_non_cycle():
    clg = build_line_graph(petersen())
    with pytest.raises(DecomposeError):
        decompose_goddyn(clg, Cycle((0, 1, 2)))  # not a cycle of Petersen


def test_goddyn_first_step_projection():
    clg = build_line_graph(k4())
    first = Cycle((0, 1, 3, 2))
    tr = decompose_goddyn(clg, first)
    assert tr.steps[0].cycle == project_cycle(clg, first)
