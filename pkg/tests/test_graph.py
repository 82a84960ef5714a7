"""Unit and property tests for the set-based graph layer.

The brute-force oracle here is ``all_matchings``: a matching is maximum iff
no matching in the full enumeration is larger, so augmenting-path search and
``max_card_matching`` are checked against that, including on graphs with odd
cycles.
"""

from __future__ import annotations

from typing import FrozenSet, List, Tuple

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rankinglab import (
    all_matchings,
    edge,
    find_augmenting_path,
    is_alternating_path,
    is_augmenting_path,
    is_bipartite,
    is_matching,
    is_maximal_matching,
    make_perfect_matching,
    max_card_matching,
    neighbors,
    partner,
    path_edges,
    remove_vertices,
    symmetric_difference,
    vertices,
)


@st.composite
def small_graphs(draw, max_vertices: int = 7) -> FrozenSet:
    """Arbitrary graphs, bipartite or not."""
    n = draw(st.integers(1, max_vertices))
    names = [f"x{k}" for k in range(n)]
    pairs = [(a, b) for i, a in enumerate(names) for b in names[i + 1 :]]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return frozenset(edge(a, b) for a, b in chosen)


def g_of(*pairs: Tuple[str, str]) -> FrozenSet:
    return frozenset(edge(a, b) for a, b in pairs)


PATH4 = g_of(("a", "b"), ("b", "c"), ("c", "d"))
TRIANGLE = g_of(("a", "b"), ("b", "c"), ("c", "a"))


def test_edge_is_unordered():
    assert edge("a", "b") == edge("b", "a") == frozenset({"a", "b"})


def test_edge_rejects_loop():
    with pytest.raises(ValueError):
        edge("a", "a")


def test_vertices_and_neighbors():
    assert vertices(PATH4) == {"a", "b", "c", "d"}
    assert neighbors(PATH4, "b") == {"a", "c"}
    assert neighbors(PATH4, "z") == frozenset()


def test_worked_example_graph_basics(example6):
    assert neighbors(example6.graph, "u1") == {"v1", "v3", "v5"}
    assert is_bipartite(example6.graph, example6.ranking.members, example6.arrival.members)
    reduced = remove_vertices(example6.graph, {"u2"})
    assert len(reduced) == 11
    assert all("u2" not in e for e in reduced)


def test_is_bipartite():
    assert is_bipartite(PATH4, {"a", "c"}, {"b", "d"})
    assert not is_bipartite(PATH4, {"a", "b"}, {"c", "d"})
    assert not is_bipartite(PATH4, {"a", "c"}, {"b"})  # d undeclared
    assert not is_bipartite(TRIANGLE, {"a"}, {"b", "c"})
    assert is_bipartite(frozenset(), set(), set())


def test_is_matching():
    assert is_matching(frozenset())
    assert is_matching(g_of(("a", "b"), ("c", "d")))
    assert not is_matching(g_of(("a", "b"), ("b", "c")))
    assert not is_matching({frozenset({"a"})})


def test_is_maximal_matching():
    assert is_maximal_matching(PATH4, g_of(("b", "c")))
    assert not is_maximal_matching(PATH4, frozenset())
    assert is_maximal_matching(PATH4, g_of(("a", "b"), ("c", "d")))
    with pytest.raises(ValueError):
        is_maximal_matching(PATH4, g_of(("a", "z")))


def test_partner():
    m = g_of(("a", "b"), ("c", "d"))
    assert partner(m, "a") == "b"
    assert partner(m, "d") == "c"
    assert partner(m, "z") is None
    with pytest.raises(ValueError):
        partner(g_of(("a", "b"), ("a", "c")), "a")


def test_remove_vertices():
    assert remove_vertices(PATH4, {"b"}) == g_of(("c", "d"))
    assert remove_vertices(PATH4, set()) == PATH4
    assert remove_vertices(PATH4, {"a", "b", "c", "d"}) == frozenset()


def test_symmetric_difference():
    m1 = g_of(("a", "b"), ("c", "d"))
    m2 = g_of(("b", "c"), ("c", "d"))
    assert symmetric_difference(m1, m2) == g_of(("a", "b"), ("b", "c"))


def test_path_edges():
    assert path_edges(["a", "b", "c"]) == [edge("a", "b"), edge("b", "c")]
    assert path_edges(["a"]) == []
    assert path_edges([]) == []
    with pytest.raises(ValueError):
        path_edges(["a", "b", "a"])


def _alternating_oracle(p: List[str], e: FrozenSet) -> bool:
    """Literal restatement: some witness set equals e or avoids e and gives
    the in/out pattern by position parity."""
    es = path_edges(p)
    candidates = [frozenset(e), frozenset(es[1::2]) - frozenset(e)]
    for w in candidates:
        if w != frozenset(e) and w & frozenset(e):
            continue
        if all(x in w for x in es[1::2]) and all(x not in w for x in es[0::2]):
            return True
    return False


def test_alternating_examples():
    m = g_of(("b", "c"))
    assert is_alternating_path(["a", "b", "c", "d"], m)
    # witness disjoint from m ({cd}) still counts as alternating
    assert is_alternating_path(["b", "c", "d"], m)
    assert is_alternating_path(["v1", "u1", "v2"], g_of(("v1", "u1")))
    assert not is_alternating_path(["a", "b", "c", "d"], g_of(("a", "b"), ("b", "c")))
    assert is_alternating_path(["a", "b"], m)
    assert is_alternating_path([], m)
    # all-out paths alternate against the disjoint witness
    assert is_alternating_path(["a", "b", "c", "d"], frozenset())


@given(st.integers(0, 5), st.data())
def test_alternating_matches_oracle(k: int, data):
    p = [f"x{i}" for i in range(k)]
    pool = path_edges(p) + [edge("y0", "y1"), edge("y1", "y2")]
    e = frozenset(data.draw(st.lists(st.sampled_from(pool), unique=True)))
    assert is_alternating_path(p, e) == _alternating_oracle(p, e)


def test_augmenting_examples():
    m = g_of(("b", "c"))
    assert is_augmenting_path(["a", "b", "c", "d"], m)
    assert not is_augmenting_path(["a", "b", "c"], m)  # c is covered
    assert not is_augmenting_path(["a"], m)
    assert not is_augmenting_path(["a", "b"], m)  # endpoint b is covered
    assert is_augmenting_path(["a", "b"], frozenset())
    assert not is_augmenting_path(["a", "b", "c", "d"], frozenset())
    assert is_augmenting_path(["v2", "u1", "v1", "u2"], g_of(("u1", "v1")))


def test_augmenting_path_found_on_path4():
    got = find_augmenting_path(PATH4, g_of(("b", "c")))
    assert got == ["a", "b", "c", "d"]
    assert is_augmenting_path(got, g_of(("b", "c")))


def test_augmenting_path_small_cases():
    one = g_of(("a", "b"))
    assert find_augmenting_path(one, frozenset()) in (["a", "b"], ["b", "a"])
    assert find_augmenting_path(one, one) is None
    crown = g_of(("u1", "v1"), ("u1", "v2"), ("u2", "v1"))
    got = find_augmenting_path(crown, g_of(("u1", "v1")))
    assert got in (["u2", "v1", "u1", "v2"], ["v2", "u1", "v1", "u2"])


def test_augmenting_path_rejects_bad_matching():
    with pytest.raises(ValueError):
        find_augmenting_path(PATH4, g_of(("a", "b"), ("b", "c")))
    with pytest.raises(ValueError):
        find_augmenting_path(PATH4, g_of(("a", "z")))


def test_max_matching_on_triangle():
    m = max_card_matching(TRIANGLE)
    assert is_matching(m) and len(m) == 1


def test_max_matching_small_cases():
    assert max_card_matching(g_of(("a", "b"))) == g_of(("a", "b"))
    crown = g_of(("u1", "v1"), ("u1", "v2"), ("u2", "v1"))
    assert len(max_card_matching(crown)) == 2


def test_max_matching_on_worked_example(example6):
    # v6 has no edges, so the offline side cannot be fully covered
    assert len(max_card_matching(example6.graph)) == 5


@settings(max_examples=60)
@given(small_graphs())
def test_max_matching_matches_enumeration(g: FrozenSet):
    best = max(len(m) for m in all_matchings(g))
    got = max_card_matching(g)
    assert is_matching(got) and got <= g
    assert len(got) == best


@settings(max_examples=60)
@given(small_graphs(), st.data())
def test_augmenting_search_completeness(g: FrozenSet, data):
    ms = [m for m in all_matchings(g)]
    m = data.draw(st.sampled_from(ms))
    best = max(len(x) for x in ms)
    p = find_augmenting_path(g, m)
    if p is None:
        assert len(m) == best
    else:
        assert is_augmenting_path(p, m)
        assert len(symmetric_difference(m, path_edges(p))) == len(m) + 1


def test_make_perfect_matching():
    g = PATH4 | g_of(("d", "e"))
    m = g_of(("b", "c"))
    gg = make_perfect_matching(g, m)
    assert m <= gg
    assert vertices(gg) == vertices(m)


def test_make_perfect_keeps_everything_when_already_perfect():
    m = g_of(("a", "b"), ("c", "d"))
    assert make_perfect_matching(PATH4, m) == PATH4


def test_make_perfect_prunes_uncovered_vertices():
    crown = g_of(("u1", "v1"), ("u1", "v2"), ("u2", "v1"))
    assert make_perfect_matching(crown, g_of(("u1", "v1"))) == g_of(("u1", "v1"))


def test_all_matchings_k22():
    k22 = g_of(("u1", "v1"), ("u1", "v2"), ("u2", "v1"), ("u2", "v2"))
    ms = list(all_matchings(k22))
    assert len(ms) == 7  # empty, four singles, two perfect
    assert len(set(ms)) == 7
    assert all(is_matching(m) and m <= k22 for m in ms)
