import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cover_spectra.caps import using_caps
from cover_spectra.errors import GraphTooLarge, InputError, UnknownVertex
from cover_spectra.multigraph import (
    CyclePath,
    MultiGraph,
    bowtie_example,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    path_graph,
    star_graph,
)

from oracles import simple_cycle_count

PARALLEL = MultiGraph(["u", "v"], [("a", "u", "v", 1), ("b", "u", "v", 1)])


def test_delete_vertices():
    k3 = complete_graph(3)
    h = k3.delete_vertices(["1"])
    assert h.vertex_ids == ("2", "3") and [(e.u, e.v) for e in h.edges] == [("2", "3")]
    g = bowtie_example()
    assert sorted(map(sorted, g.delete_vertices(["3"]).components())) == [["1", "2"], ["4", "5"]]
    assert g.delete_vertices([]).same_as(g)


def test_delete_unknown_vertex():
    with pytest.raises(UnknownVertex):
        path_graph(3).delete_vertices(["9"])


def test_frontier():
    g = bowtie_example()
    assert g.frontier({"1", "2", "4", "5"}) == {"3"}
    assert g.frontier(g.vertex_ids) == frozenset()
    assert path_graph(3).frontier({"1"}) == {"2"}


def test_components():
    assert len(disjoint_union(path_graph(2), path_graph(2)).components()) == 2
    assert len(bowtie_example().components()) == 1
    assert empty_graph(0).components() == []


def test_enumerate_cycles():
    assert len(complete_graph(3).enumerate_cycles()) == 1
    (two,) = PARALLEL.enumerate_cycles()
    assert len(two) == 2
    cycles = bowtie_example().enumerate_cycles()
    assert sorted(sorted(c.vertex_set) for c in cycles) == [["1", "2", "3"], ["3", "4", "5"]]


def test_loop_is_a_cycle():
    g = MultiGraph(["1"], [("l", "1", "1", 1)])
    (c,) = g.enumerate_cycles()
    assert c.vertices == ("1",) and c.edges == ("l",)


def test_enumerate_two_regular():
    assert sorted(len(t) for t in complete_graph(3).enumerate_two_regular()) == [0, 1]
    packings = bowtie_example().enumerate_two_regular()
    assert sorted(len(t) for t in packings) == [0, 1, 1]
    assert [len(t) for t in empty_graph(1).enumerate_two_regular()] == [0]
    # two disjoint triangles also pack together
    assert len(disjoint_union(complete_graph(3), complete_graph(3)).enumerate_two_regular()) == 4


def test_enumerate_paths_between():
    assert len(complete_graph(3).enumerate_paths_between("1", "2")) == 2
    assert len(PARALLEL.enumerate_paths_between("u", "v")) == 2
    assert len(path_graph(3).enumerate_paths_between("1", "3")) == 1


def test_spanning_forest():
    forest, s_plus = complete_graph(3).spanning_forest()
    assert (len(forest), len(s_plus)) == (2, 1)
    assert star_graph(4).spanning_forest()[1] == ()
    forest, s_plus = bowtie_example().spanning_forest()
    assert (len(forest), len(s_plus)) == (4, 2)


def test_json_round_trip():
    g = bowtie_example()
    h = MultiGraph.from_json(json.loads(json.dumps(g.to_json())))
    assert h.same_as(g)


@pytest.mark.parametrize(
    "obj",
    [
        {"vertices": [{"id": "1"}, {"id": "1"}]},
        {"vertices": [{"id": "1"}], "edges": [{"u": "1", "v": "2"}]},
        {"vertices": [{"id": "1"}, {"id": "2"}], "edges": [{"u": "1", "v": "2", "rho": "0"}]},
        {"edges": []},
    ],
)
def test_bad_json(obj):
    with pytest.raises(InputError):
        MultiGraph.from_json(obj)


def test_caps():
    with using_caps(max_vertices=4):
        with pytest.raises(GraphTooLarge):
            cycle_graph(5).enumerate_cycles()


def test_cycle_canonical_form():
    g = complete_graph(3)
    c = CyclePath.cycle(["2", "3", "1"], ["e3", "e2", "e1"])
    assert c.is_valid_in(g)
    assert c.canonical(g) == c.reversed().canonical(g)


def test_shared_host_cache():
    g = bowtie_example()
    h = g.delete_vertices(["3"])
    assert h._ctx is g._ctx and h.mask == g.mask_of(["1", "2", "4", "5"])


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 7), st.data())
def test_cycle_count_matches_networkx(n, data):
    pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    chosen = data.draw(st.lists(st.sampled_from(pairs), unique=True, max_size=10))
    g = MultiGraph([str(k) for k in range(1, n + 1)], [(str(a), str(b)) for a, b in chosen])
    assert len(g.enumerate_cycles()) == simple_cycle_count(g)
    # every packing is vertex-disjoint and made of enumerated cycles
    keys = {c.edges for c in g.enumerate_cycles()}
    for t in g.enumerate_two_regular():
        assert sum(len(c.vertex_set) for c in t.cycles) == len(t.vertex_set)
        assert all(c.edges in keys for c in t.cycles)
