"""The rank-greedy online bipartite matcher and its declarative mirror.

One party of the graph (the offline side) is known upfront and carries a
ranking: a permutation that says which vertex to prefer.  The other party
arrives one vertex at a time in its own order.  Each arrival is matched to
its best-ranked still-free neighbor, or left unmatched forever.

``online_match`` is the operational definition, a literal fold of ``step``
over the arrival order.  ``is_ranking_matching`` is the declarative one: a
predicate on (graph, matching, orders) that the fold's output satisfies and,
on any given instance, exactly one matching satisfies.  Having both lets the
tests drive each against the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .graph import (
    Edge,
    Vertex,
    is_bipartite,
    is_matching,
    is_maximal_matching,
    partner,
    vertices,
)


class Permutation:
    """An ordered sequence of distinct vertices with O(1) rank lookup."""

    __slots__ = ("_order", "_pos")

    def __init__(self, order: Iterable[Vertex]):
        self._order = tuple(order)
        self._pos = {}
        for i, v in enumerate(self._order):
            if v in self._pos:
                raise ValueError(f"duplicate member {v!r}")
            self._pos[v] = i

    @property
    def order(self) -> tuple:
        return self._order

    @property
    def members(self) -> frozenset:
        return frozenset(self._pos)

    def index(self, v: Vertex) -> int:
        """The 0-based position of v; raises KeyError for non-members."""
        try:
            return self._pos[v]
        except KeyError:
            raise KeyError(f"{v!r} is not a member of this permutation") from None

    def move_to(self, v: Vertex, i: int) -> "Permutation":
        """A new permutation with v at index i, relative order otherwise kept."""
        if v not in self._pos:
            raise KeyError(f"{v!r} is not a member of this permutation")
        if not 0 <= i < len(self._order):
            raise IndexError(f"target index {i} out of range 0..{len(self._order) - 1}")
        rest = [w for w in self._order if w != v]
        rest.insert(i, v)
        return Permutation(rest)

    def __len__(self) -> int:
        return len(self._order)

    def __iter__(self) -> Iterator[Vertex]:
        return iter(self._order)

    def __contains__(self, v: object) -> bool:
        return v in self._pos

    def __getitem__(self, i: int) -> Vertex:
        return self._order[i]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self._order == other._order

    def __hash__(self) -> int:
        return hash(self._order)

    def __repr__(self) -> str:
        return f"Permutation({list(self._order)!r})"


@dataclass(frozen=True)
class BipartiteInstance:
    """A bipartite graph together with the two orders the matcher consumes.

    ``ranking`` orders the offline party (best-preferred first) and
    ``arrival`` orders the online party.  Every edge must join the two
    parties; a declared vertex without edges is fine.
    """

    graph: frozenset
    ranking: Permutation
    arrival: Permutation

    def __post_init__(self):
        object.__setattr__(self, "graph", frozenset(frozenset(e) for e in self.graph))
        off, on = self.ranking.members, self.arrival.members
        overlap = off & on
        if overlap:
            raise ValueError(f"vertices declared in both parties: {sorted(overlap)}")
        for e in self.graph:
            if len(e) != 2:
                raise ValueError(f"not a two-vertex edge: {sorted(e)}")
            a, b = sorted(e)
            across = (a in off and b in on) or (a in on and b in off)
            if not across:
                raise ValueError(f"edge {a} -- {b} does not join the two parties")

    @property
    def offline(self) -> frozenset:
        return self.ranking.members

    @property
    def online(self) -> frozenset:
        return self.arrival.members

    def without_vertices(self, xs) -> "BipartiteInstance":
        """Same orders, graph restricted away from the vertices xs."""
        return BipartiteInstance(
            frozenset(e for e in self.graph if not (e & frozenset(xs))),
            self.ranking,
            self.arrival,
        )


def step(g: frozenset, u: Vertex, ranked: Sequence[Vertex], m: frozenset) -> frozenset:
    """One arrival: u takes the first free ranked neighbor, if any.

    Scans ``ranked`` in order and inserts {u, v} for the first v such that
    both u and v are uncovered by m and the edge exists in g.  Returns m
    unchanged when no such v exists.
    """
    covered = vertices(m)
    mm = frozenset(m)
    for v in ranked:
        if v not in covered and u not in covered and frozenset((u, v)) in g:
            return mm | {frozenset((u, v))}
    return mm


def online_match(inst: BipartiteInstance) -> frozenset:
    """The matching produced by folding ``step`` over the arrival order."""
    m: frozenset = frozenset()
    for u in inst.arrival:
        m = step(inst.graph, u, inst.ranking.order, m)
    return m


def _first_choice_clause(
    g: frozenset, m: frozenset, chooser: Permutation, chosen: Permutation
) -> bool:
    """No matched chooser skips an earlier-ranked neighbor without cause.

    For every matched pair {u, v} with u on the chooser side: any neighbor
    v2 of u ranked before v must itself be matched to some chooser earlier
    than u.  Quantifiers are unrolled literally; instances are desk-sized.
    """
    for e in m:
        side = e & chooser.members
        if len(side) != 1:
            return False
        (u,) = side
        (v,) = e - side
        for v2 in chosen:
            if chosen.index(v2) >= chosen.index(v):
                break
            if frozenset((u, v2)) not in g:
                continue
            u2 = partner(m, v2)
            if u2 is None or u2 not in chooser or chooser.index(u2) >= chooser.index(u):
                return False
    return True


def is_ranking_matching(
    g: frozenset, m: frozenset, arrival: Permutation, ranking: Permutation
) -> bool:
    """Declarative test that m is the rank-greedy outcome on (g, orders).

    Five conjuncts: m is a matching inside g; g is bipartite between the two
    disjoint parties; m is maximal in g; no arriving vertex skipped a free
    better-ranked neighbor; and the same first-choice condition with the
    parties' roles swapped.  The conjunction is symmetric under exchanging
    the two orders.
    """
    gset = frozenset(frozenset(e) for e in g)
    mset = frozenset(frozenset(e) for e in m)
    if not (mset <= gset and is_matching(mset)):
        return False
    if arrival.members & ranking.members:
        return False
    if not is_bipartite(gset, arrival.members, ranking.members):
        return False
    if not is_maximal_matching(gset, mset):
        return False
    if not _first_choice_clause(gset, mset, arrival, ranking):
        return False
    return _first_choice_clause(gset, mset, ranking, arrival)
