"""Structural probes for the rank-greedy matcher.

The central object is the cascade: when a vertex is deleted, the computed
matching does not change arbitrarily but along a single alternating path.
``zig`` and ``zag`` construct that path from the shift relation, and the
``removal_diff_*`` / ``check_*`` functions turn the structural claims into
executable verdicts that the suites exercise on random instances.

A ``ZigZagContext`` bundles a graph, a matching over it, and the two orders.
The party roles inside a context are positional: ``ranking`` names the side
zig starts from, ``arrival`` the side zag starts from.  Swapping the two
orders is how every mirrored statement is expressed; there is no separate
code path for it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import AbstractSet, List, Optional, Tuple

from .engine import BipartiteInstance, Permutation, online_match
from .graph import (
    Vertex,
    is_matching,
    partner,
    path_edges,
    remove_vertices,
    symmetric_difference,
)


class DichotomyViolation(RuntimeError):
    """A removal changed the matching by something other than one cascade path."""


class GuardViolation(ValueError):
    """A stability check was invoked on inputs that break its guard."""


@dataclass(frozen=True)
class ZigZagContext:
    graph: frozenset
    matching: frozenset
    arrival: Permutation
    ranking: Permutation

    def __post_init__(self):
        object.__setattr__(self, "graph", frozenset(frozenset(e) for e in self.graph))
        object.__setattr__(self, "matching", frozenset(frozenset(e) for e in self.matching))
        if not is_matching(self.matching):
            raise ValueError("context matching is not a matching")
        if not self.matching <= self.graph:
            raise ValueError("context matching must be a subset of the graph")

    def swapped(self) -> "ZigZagContext":
        return ZigZagContext(self.graph, self.matching, self.ranking, self.arrival)


def shifts_to(
    ctx: ZigZagContext, u: Vertex, current: Vertex, candidate: Vertex
) -> bool:
    """Would u, upon losing ``current``, take ``candidate`` next?

    True iff u is on the arrival side and candidate on the ranking side,
    candidate is ranked strictly after current, the edge {u, candidate}
    exists, no arrival earlier than u already holds candidate in the
    matching, and every ranked vertex strictly between current and candidate
    is either not a neighbor of u or held by an arrival earlier than u.
    """
    r, a, m = ctx.ranking, ctx.arrival, ctx.matching
    if u not in a or candidate not in r or current not in r:
        return False
    lo, hi = r.index(current), r.index(candidate)
    if not lo < hi:
        return False
    if frozenset((u, candidate)) not in ctx.graph:
        return False

    def held_earlier(v: Vertex) -> bool:
        w = partner(m, v)
        return w is not None and w in a and a.index(w) < a.index(u)

    if held_earlier(candidate):
        return False
    for mid in r.order[lo + 1 : hi]:
        if frozenset((u, mid)) in ctx.graph and not held_earlier(mid):
            return False
    return True


def shift_targets(ctx: ZigZagContext, u: Vertex, current: Vertex) -> List[Vertex]:
    """All ranked vertices u would shift to from ``current`` (zero or one)."""
    return [v for v in ctx.ranking if shifts_to(ctx, u, current, v)]


def zig(ctx: ZigZagContext, v: Vertex) -> Tuple[Vertex, ...]:
    """Cascade path starting at ranking-side vertex v.

    [v] when v is unmatched, otherwise v followed by the zag from its
    partner.  Ranks strictly increase along the recursion, so it terminates
    on any context.
    """
    u = partner(ctx.matching, v)
    if u is None:
        return (v,)
    return (v,) + zag(ctx, u)


def zag(ctx: ZigZagContext, u: Vertex) -> Tuple[Vertex, ...]:
    """Cascade path starting at arrival-side vertex u.

    [u] when u is unmatched or has nowhere to shift, otherwise u followed by
    the zig from its shift target.
    """
    v = partner(ctx.matching, u)
    if v is None:
        return (u,)
    for cand in ctx.ranking:
        if shifts_to(ctx, u, v, cand):
            return (u,) + zig(ctx, cand)
    return (u,)


@dataclass(frozen=True)
class RemovalDiff:
    """Outcome of deleting one vertex: either no change or one cascade path."""

    baseline: frozenset
    reduced: frozenset
    path: Optional[Tuple[Vertex, ...]]

    @property
    def equal(self) -> bool:
        return self.path is None


def _removal_diff(inst: BipartiteInstance, x: Vertex, ctx: ZigZagContext) -> RemovalDiff:
    m = ctx.matching
    m2 = online_match(inst.without_vertices({x}))
    if m == m2:
        return RemovalDiff(m, m2, None)
    p = zig(ctx, x)
    diff = symmetric_difference(m, m2)
    if frozenset(path_edges(p)) != diff:
        raise DichotomyViolation(
            f"deleting {x!r} changed the matching by {sorted(map(sorted, diff))}, "
            f"not by the cascade path {list(p)}"
        )
    return RemovalDiff(m, m2, p)


def removal_diff_online(inst: BipartiteInstance, u: Vertex) -> RemovalDiff:
    """Difference report for deleting the arrival-side vertex u.

    The matchings before and after either coincide or differ exactly by the
    edges of the cascade path that starts at u (computed with the party
    roles swapped, since u sits on the arrival side).  Any other outcome
    raises DichotomyViolation.
    """
    if u not in inst.arrival:
        raise KeyError(f"{u!r} is not an arrival-side vertex")
    m = online_match(inst)
    ctx = ZigZagContext(inst.graph, m, arrival=inst.ranking, ranking=inst.arrival)
    return _removal_diff(inst, u, ctx)


def removal_diff_offline(inst: BipartiteInstance, v: Vertex) -> RemovalDiff:
    """Difference report for deleting the ranking-side vertex v."""
    if v not in inst.ranking:
        raise KeyError(f"{v!r} is not a ranking-side vertex")
    m = online_match(inst)
    ctx = ZigZagContext(inst.graph, m, arrival=inst.arrival, ranking=inst.ranking)
    return _removal_diff(inst, v, ctx)


def check_zig_zag_symmetry(inst: BipartiteInstance, x: Vertex) -> bool:
    """Deleting matched x: the reduced zig equals the original zag.

    Both paths start at x's partner.  The zig runs over the reduced graph
    and its recomputed matching; the zag runs over the original pair with
    the party roles swapped relative to the zig.  Requires x matched.
    """
    if x not in inst.arrival.members | inst.ranking.members:
        raise KeyError(f"{x!r} is not a vertex of the instance")
    m = online_match(inst)
    mate = partner(m, x)
    if mate is None:
        raise ValueError(f"removed vertex {x!r} must be matched")
    m2 = online_match(inst.without_vertices({x}))
    reduced_graph = remove_vertices(inst.graph, {x})
    if x in inst.arrival.members:
        zig_ctx = ZigZagContext(reduced_graph, m2, inst.arrival, inst.ranking)
        zag_ctx = ZigZagContext(inst.graph, m, arrival=inst.ranking, ranking=inst.arrival)
    else:
        zig_ctx = ZigZagContext(reduced_graph, m2, arrival=inst.ranking, ranking=inst.arrival)
        zag_ctx = ZigZagContext(inst.graph, m, inst.arrival, inst.ranking)
    return zig(zig_ctx, mate) == zag(zag_ctx, mate)


def check_removal_stability(
    inst: BipartiteInstance, removed: AbstractSet, probe: Vertex
) -> bool:
    """Cascades ignore deleted vertices that rank behind the probe.

    ``removed`` must lie in one party.  Guard: every matched removed vertex
    has a partner ranked strictly before the probe (zig form, probe on the
    ranking side) or before the probe's own partner (zag form, probe on the
    arrival side; vacuous when the probe is unmatched).  A guard breach
    raises GuardViolation; under the guard, the verdict is whether the path
    in the reduced context equals the path in the full one.
    """
    xs = frozenset(removed)
    m = online_match(inst)
    if xs <= inst.arrival.members:
        ctx = ZigZagContext(inst.graph, m, inst.arrival, inst.ranking)
    elif xs <= inst.ranking.members:
        ctx = ZigZagContext(inst.graph, m, arrival=inst.ranking, ranking=inst.arrival)
    else:
        raise ValueError("removed vertices must all lie in one party")

    def partner_rank(x: Vertex) -> Optional[int]:
        w = partner(ctx.matching, x)
        return None if w is None else ctx.ranking.index(w)

    if probe in ctx.ranking:
        cutoff: Optional[int] = ctx.ranking.index(probe)
        runner = zig
    elif probe in ctx.arrival:
        cutoff = partner_rank(probe)
        runner = zag
    else:
        raise KeyError(f"{probe!r} is not a vertex of the instance")

    for x in sorted(xs):
        r = partner_rank(x)
        if r is None:
            continue
        if cutoff is None:
            # unmatched arrival-side probe: nothing to rank against
            continue
        if r >= cutoff:
            raise GuardViolation(
                f"removed vertex {x!r} is matched at rank {r}, "
                f"not strictly before the probe cutoff {cutoff}"
            )
    reduced = ZigZagContext(
        remove_vertices(ctx.graph, xs),
        frozenset(e for e in ctx.matching if not (e & xs)),
        ctx.arrival,
        ctx.ranking,
    )
    return runner(reduced, probe) == runner(ctx, probe)


@dataclass(frozen=True)
class RankMoveVerdict:
    """What happened to the designated partner after moving an unmatched vertex.

    ``skipped`` is True when the hypothesis fails (the moved vertex was
    matched), in which case the other fields are None.  Otherwise
    ``partner_matched`` says whether the designated partner is covered in
    the rerun, and the two ``holds_*`` fields compare its new mate's rank
    (in the moved order and in the original order, respectively) against
    the moved vertex's original rank.
    """

    skipped: bool
    partner_matched: Optional[bool]
    holds_moved_rank: Optional[bool]
    holds_original_rank: Optional[bool]


def _require_perfect(inst: BipartiteInstance, m_star: frozenset) -> None:
    mset = frozenset(frozenset(e) for e in m_star)
    if not is_matching(mset) or not mset <= inst.graph:
        raise ValueError("m_star must be a matching inside the instance graph")
    covered = frozenset(v for e in mset for v in e)
    if covered != inst.offline | inst.online:
        raise ValueError("m_star must cover both parties entirely")


def check_rank_move(
    inst: BipartiteInstance, m_star: AbstractSet, v: Vertex, i: int
) -> RankMoveVerdict:
    """Move an unmatched ranked vertex to index i and watch its designated partner.

    ``m_star`` is a perfect matching supplying the designated partner
    u = m_star(v).  When v is unmatched in the baseline run, the claim under
    test is that u stays matched after the move, to a vertex ranked no worse
    than v's original rank.  Two readings of "no worse" are evaluated, one
    in the moved order and one in the original order.
    """
    if v not in inst.ranking:
        raise KeyError(f"{v!r} is not a ranking-side vertex")
    mset = frozenset(frozenset(e) for e in m_star)
    _require_perfect(inst, mset)
    m = online_match(inst)
    if partner(m, v) is not None:
        return RankMoveVerdict(True, None, None, None)
    u = partner(mset, v)
    moved = inst.ranking.move_to(v, i)
    m2 = online_match(BipartiteInstance(inst.graph, moved, inst.arrival))
    w = partner(m2, u)
    if w is None:
        return RankMoveVerdict(False, False, None, None)
    bar = inst.ranking.index(v)
    return RankMoveVerdict(
        False, True, moved.index(w) <= bar, inst.ranking.index(w) <= bar
    )
