"""Seeded instance generators and the hard-family enumerator.

All generators are deterministic functions of their arguments; the seed
selects a stream from :mod:`rankinglab.rng`.  Offline vertices are named
v1, v2, ... and online vertices u1, u2, ... except in the hard family,
which uses its own o/i grid naming.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterator, List, Tuple

from .engine import BipartiteInstance, Permutation
from .graph import edge, vertices
from .probability import exact_expected_size
from .rng import stream


def gen_random(
    n_offline: int, n_online: int, edge_prob: float, seed: int
) -> BipartiteInstance:
    """A random bipartite instance with independently kept edges."""
    if n_offline < 0 or n_online < 0:
        raise ValueError("party sizes must be nonnegative")
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError("edge_prob must lie in [0, 1]")
    g = stream(seed, 0)
    offline = [f"v{i}" for i in range(1, n_offline + 1)]
    online = [f"u{i}" for i in range(1, n_online + 1)]
    edges = set()
    for u in online:
        for v in offline:
            if g.uniform() < edge_prob:
                edges.add(edge(u, v))
    return BipartiteInstance(
        frozenset(edges), Permutation(g.shuffled(offline)), Permutation(g.shuffled(online))
    )


def gen_perfect(
    n: int, extra_edge_prob: float, seed: int
) -> Tuple[BipartiteInstance, frozenset]:
    """An instance with a planted perfect matching, plus that matching.

    Pairs u_k with v_k for k = 1..n, then adds each remaining cross edge
    independently.  Both orders are shuffled.  Returns the instance together
    with the planted matching so callers need not recompute one.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not 0.0 <= extra_edge_prob <= 1.0:
        raise ValueError("extra_edge_prob must lie in [0, 1]")
    g = stream(seed, 0)
    offline = [f"v{i}" for i in range(1, n + 1)]
    online = [f"u{i}" for i in range(1, n + 1)]
    planted = frozenset(edge(u, v) for u, v in zip(online, offline))
    edges = set(planted)
    for j, u in enumerate(online):
        for k, v in enumerate(offline):
            if j != k and g.uniform() < extra_edge_prob:
                edges.add(edge(u, v))
    inst = BipartiteInstance(
        frozenset(edges), Permutation(g.shuffled(offline)), Permutation(g.shuffled(online))
    )
    return inst, planted


def _has_matching_above(g: frozenset, k: int) -> bool:
    """Whether g contains k+1 pairwise disjoint edges."""
    es = sorted(g, key=sorted)
    for combo in combinations(es, k + 1):
        used: set = set()
        ok = True
        for e in combo:
            if e & used:
                ok = False
                break
            used.update(e)
        if ok:
            return True
    return False


def gen_gamma_family(n: int) -> Iterator[Tuple[frozenset, Tuple[Permutation, ...]]]:
    """The hard family at size n: graphs on a 2n-by-2n grid of vertex slots.

    Offline slots are o0..o(2n-1) and online slots i0..i(2n-1).  Every graph
    contains the base matching {o_k - i_k : k < n} and admits no matching
    larger than n.  Each graph is yielded with all arrival orders over its
    online vertices that actually have an edge.  Supported for n <= 2; the
    candidate space grows as 2^(4n^2 - n).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > 2:
        raise ValueError("family enumeration is supported for n <= 2 only")
    base = [edge(f"o{k}", f"i{k}") for k in range(n)]
    others: List[frozenset] = []
    for k in range(2 * n):
        for l in range(2 * n):
            e = frozenset((f"o{k}", f"i{l}"))
            if e not in base:
                others.append(e)
    for bits in range(1 << len(others)):
        g = frozenset(base) | frozenset(
            others[j] for j in range(len(others)) if bits >> j & 1
        )
        if _has_matching_above(g, n):
            continue
        vs = vertices(g)
        online = sorted(
            (v for v in vs if v.startswith("i")), key=lambda s: int(s[1:])
        )
        arrivals = tuple(Permutation(p) for p in permutations(online))
        yield g, arrivals


def gamma_min_ratio(n: int) -> Fraction:
    """The worst expected-size ratio over the hard family at size n.

    Minimizes E[|matching|] / n over every family graph and every arrival
    order, with the expectation exact over rankings of the offline vertices
    that have an edge.
    """
    best: Fraction | None = None
    for g, arrivals in gen_gamma_family(n):
        vs = vertices(g)
        offline = sorted(
            (v for v in vs if v.startswith("o")), key=lambda s: int(s[1:])
        )
        for arr in arrivals:
            inst = BipartiteInstance(g, Permutation(offline), arr)
            ratio = exact_expected_size(inst).value / n
            if best is None or ratio < best:
                best = ratio
    assert best is not None  # the family is never empty
    return best
