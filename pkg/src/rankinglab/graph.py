"""Finite undirected graphs as sets of two-element frozensets.

Vertices are opaque string tokens.  An edge is a frozenset of two distinct
vertices, so undirected equality and set algebra come for free.  A graph (and
a matching) is simply a set of edges.  All functions are pure: nothing
mutates its arguments and every returned collection is immutable.

Vertex names carry a total order (plain string comparison) that is used only
to make searches deterministic, never to encode meaning.
"""

from __future__ import annotations

from typing import AbstractSet, Iterable, Iterator, List, Optional, Sequence, Tuple

Vertex = str
Edge = frozenset
EdgeSet = frozenset


def edge(a: Vertex, b: Vertex) -> Edge:
    """The undirected edge {a, b}; endpoints must be distinct."""
    if a == b:
        raise ValueError(f"edge endpoints must be distinct, got {a!r} twice")
    return frozenset((a, b))


def vertices(g: Iterable[Edge]) -> frozenset:
    """All endpoints of all edges of g."""
    out: set = set()
    for e in g:
        out.update(e)
    return frozenset(out)


def neighbors(g: Iterable[Edge], v: Vertex) -> frozenset:
    """The vertices adjacent to v in g."""
    out = set()
    for e in g:
        if v in e:
            out.update(e - {v})
    return frozenset(out)


def is_bipartite(g: Iterable[Edge], left: AbstractSet, right: AbstractSet) -> bool:
    """True iff every endpoint is declared and no edge stays inside one side."""
    for e in g:
        if not all(x in left or x in right for x in e):
            return False
        if e <= left or e <= right:
            return False
    return True


def is_matching(m: Iterable[Edge]) -> bool:
    """True iff m consists of two-vertex edges that are pairwise disjoint."""
    seen: set = set()
    for e in m:
        if len(e) != 2:
            return False
        if e & seen:
            return False
        seen.update(e)
    return True


def is_maximal_matching(g: AbstractSet, m: AbstractSet) -> bool:
    """True iff m is a matching and no edge of g extends it.

    Raises ValueError when m is not a subset of g; that always signals a bug
    in the caller rather than a property worth reporting false for.
    """
    mset = frozenset(m)
    if not mset <= frozenset(g):
        raise ValueError("m must be a subset of g")
    if not is_matching(mset):
        return False
    covered = vertices(mset)
    return all(e & covered for e in g)


def partner(m: Iterable[Edge], v: Vertex) -> Optional[Vertex]:
    """The vertex matched to v in m, or None.  m must be a matching."""
    found = None
    for e in m:
        if v in e:
            if found is not None:
                raise ValueError(f"{v!r} is covered twice; not a matching")
            (found,) = e - {v}
    return found


def remove_vertices(g: Iterable[Edge], xs: AbstractSet) -> frozenset:
    """The subgraph left after deleting the vertices xs and their edges."""
    return frozenset(e for e in g if not (e & xs))


def symmetric_difference(m1: Iterable[Edge], m2: Iterable[Edge]) -> frozenset:
    """Edges in exactly one of the two sets."""
    return frozenset(m1) ^ frozenset(m2)


def path_edges(p: Sequence[Vertex]) -> List[Edge]:
    """The consecutive edges of a vertex path.

    A path is a sequence of pairwise distinct vertices; anything else is a
    malformed input and raises ValueError.
    """
    if len(set(p)) != len(p):
        raise ValueError("path vertices must be pairwise distinct")
    return [frozenset((p[i], p[i + 1])) for i in range(len(p) - 1)]


def is_alternating_path(p: Sequence[Vertex], e: AbstractSet) -> bool:
    """Whether the edges of p alternate against the edge set e.

    Membership is tested against a witness set E' that is either e itself or
    disjoint from e; edges at even positions (counting from one) must lie in
    E', edges at odd positions must not.  With E' = e this is the familiar
    out-in-out pattern.  The disjoint witness can always be taken to be the
    even-position edges themselves, so that phase reduces to those edges
    avoiding e.  Paths with at most one edge alternate vacuously.
    """
    es = path_edges(p)
    eset = frozenset(e)
    evens_in = all(x in eset for x in es[1::2])
    odds_out = all(x not in eset for x in es[0::2])
    if odds_out and evens_in:
        return True
    return all(x not in eset for x in es[1::2])


def is_augmenting_path(p: Sequence[Vertex], m: AbstractSet) -> bool:
    """Whether flipping p along m would grow the matching m by one edge.

    The edges of p must strictly alternate starting outside m, the path needs
    at least two vertices, and both ends must be uncovered by m.
    """
    if len(p) < 2:
        return False
    es = path_edges(p)
    mset = frozenset(m)
    if any(x in mset for x in es[0::2]):
        return False
    if any(x not in mset for x in es[1::2]):
        return False
    covered = vertices(mset)
    return p[0] not in covered and p[-1] not in covered


def find_augmenting_path(g: AbstractSet, m: AbstractSet) -> Optional[List[Vertex]]:
    """A deterministic augmenting path for m in g, or None.

    Performs an exhaustive alternating depth-first search from every
    uncovered vertex in ascending name order, visiting neighbors in ascending
    name order.  Backtracking keeps the search complete on any finite graph
    (including non-bipartite ones) at the small sizes this package targets;
    the worst case is exponential, which is acceptable here.
    """
    mset = frozenset(m)
    gset = frozenset(g)
    if not is_matching(mset):
        raise ValueError("m must be a matching")
    if not mset <= gset:
        raise ValueError("m must be a subset of g")
    adj = {v: sorted(neighbors(gset, v)) for v in vertices(gset)}
    covered = vertices(mset)
    mate = {}
    for e in mset:
        a, b = sorted(e)
        mate[a], mate[b] = b, a

    def extend(path: List[Vertex], seen: frozenset) -> Optional[List[Vertex]]:
        # the last path vertex is free or was entered along its matched edge,
        # so every unseen neighbor continues with a non-matching edge
        for w in adj[path[-1]]:
            if w in seen:
                continue
            if w not in covered:
                return path + [w]
            x = mate[w]
            if x in seen:
                continue
            found = extend(path + [w, x], seen | {w, x})
            if found is not None:
                return found
        return None

    for s in sorted(vertices(gset) - covered):
        found = extend([s], frozenset((s,)))
        if found is not None:
            return found
    return None


def max_card_matching(g: AbstractSet) -> frozenset:
    """A maximum-cardinality matching of g, deterministically chosen."""
    m: frozenset = frozenset()
    while True:
        p = find_augmenting_path(g, m)
        if p is None:
            return m
        m = symmetric_difference(m, path_edges(p))


def make_perfect_matching(g: AbstractSet, m: AbstractSet) -> frozenset:
    """Shrink g until the matching m covers every remaining vertex.

    Repeatedly deletes the least-named vertex that still has an edge but is
    not covered by m.  The result contains all of m, and m is perfect with
    respect to it.
    """
    mset = frozenset(m)
    if not is_matching(mset):
        raise ValueError("m must be a matching")
    if not mset <= frozenset(g):
        raise ValueError("m must be a subset of g")
    gg = frozenset(g)
    covered = vertices(mset)
    while True:
        uncovered = sorted(vertices(gg) - covered)
        if not uncovered:
            return gg
        gg = remove_vertices(gg, {uncovered[0]})


def all_matchings(g: AbstractSet) -> Iterator[frozenset]:
    """Every matching contained in g, the empty one included.

    Deterministic order; the number of results is the number of matchings,
    not the number of edge subsets, so this stays cheap on small graphs.
    """
    es: List[Edge] = sorted(g, key=sorted)

    def rec(i: int, used: frozenset, acc: Tuple[Edge, ...]) -> Iterator[frozenset]:
        if i == len(es):
            yield frozenset(acc)
            return
        yield from rec(i + 1, used, acc)
        e = es[i]
        if not (e & used):
            yield from rec(i + 1, used | e, acc + (e,))

    yield from rec(0, frozenset(), ())
