"""Exact and sampled distributions of the rank-greedy matcher's output.

The ranking is treated as uniformly random over the offline party while the
graph and the arrival order stay fixed.  At desk scale (party size up to a
configurable cap, default 8) every quantity is computed exactly, as a
``fractions.Fraction``, by enumerating all rankings once per instance and
reading every statistic off that table.  Beyond the cap, ``mc_expected_size``
gives a seeded, bit-reproducible Monte Carlo estimate.

The per-rank quantities connect into a chain that the check functions verify
link by link on enumerated instances:

* ``rank_matched_prob(t)``, the probability that the vertex at rank t ends
  up matched;
* ``rank_matched_prob_moved(t)``, the same probability computed over a
  different sample space (draw a ranking and an independent uniform vertex,
  move the vertex to rank t), which must agree exactly;
* ``matched_before_prob(t)``, the probability that the designated partner of
  a uniformly drawn vertex is matched to rank t or better; and
* ``expected_matched_before_count(t)``, the expected number of arrivals
  matched to rank t or better, which is n times the previous quantity and
  also the prefix sum of the rank probabilities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import AbstractSet, Dict, Optional, Tuple

from .engine import BipartiteInstance
from .graph import is_matching, max_card_matching, neighbors, partner, vertices
from .rng import stream

DEFAULT_CAP = 8

#: the large-n limit of the guaranteed ratio, 1 - 1/e
LIMIT_RATIO = 1.0 - math.exp(-1.0)


class CapExceeded(Exception):
    """Instance too large for exact enumeration under the given cap."""


@dataclass(frozen=True)
class ExactReport:
    """An exactly computed scalar, tagged with the instance it came from."""

    instance_id: str
    quantity: str
    params: Tuple[Tuple[str, int], ...]
    value: Fraction
    sample_space: int


@dataclass(frozen=True)
class McEstimate:
    """A seeded Monte Carlo estimate of the expected matching size."""

    mean: float
    stddev: float
    samples: int
    seed: int


def _check_cap(inst: BipartiteInstance, cap: int) -> None:
    n = len(inst.ranking)
    if n > cap:
        raise CapExceeded(
            f"{n} ranked vertices exceeds the enumeration cap {cap}; "
            "use mc_expected_size for instances this large"
        )


def _check_t(t: int, n: int) -> None:
    if not 1 <= t <= n:
        raise ValueError(f"rank t={t} out of range 1..{n}")


@lru_cache(maxsize=256)
def _adjacency(inst: BipartiteInstance):
    """Offline vertices in name order plus integer adjacency per arrival."""
    offline = tuple(sorted(inst.ranking.members))
    oid = {v: k for k, v in enumerate(offline)}
    adj = tuple(
        tuple(sorted(oid[w] for w in neighbors(inst.graph, u))) for u in inst.arrival
    )
    return offline, oid, adj


def _greedy_ranks(adj, rank_of, n: int) -> Tuple[int, ...]:
    """Partner rank per arrival (-1 when unmatched) for one ranking.

    Integer mirror of the step fold: each arrival takes its free neighbor of
    least rank.  Tests pin this against the literal fold.
    """
    free = bytearray(b"\x01" * n)
    out = []
    for nbrs in adj:
        best = -1
        best_rank = n
        for x in nbrs:
            if free[x] and rank_of[x] < best_rank:
                best_rank = rank_of[x]
                best = x
        if best >= 0:
            free[best] = 0
            out.append(best_rank)
        else:
            out.append(-1)
    return tuple(out)


@lru_cache(maxsize=64)
def _ensemble(inst: BipartiteInstance):
    """Matcher outcomes for every ranking of the offline party.

    Maps each permutation of offline ids to a pair (set of matched ranks,
    partner rank per arrival).  Everything exact downstream is a linear scan
    over this table.
    """
    offline, oid, adj = _adjacency(inst)
    n = len(offline)
    runs: Dict[tuple, tuple] = {}
    for perm in permutations(range(n)):
        rank_of = [0] * n
        for r, x in enumerate(perm):
            rank_of[x] = r
        prs = _greedy_ranks(adj, rank_of, n)
        runs[perm] = (frozenset(r for r in prs if r >= 0), prs)
    return offline, oid, runs


def _move_id(perm: tuple, x: int, i: int) -> tuple:
    rest = [y for y in perm if y != x]
    rest.insert(i, x)
    return tuple(rest)


def _fingerprint(inst: BipartiteInstance) -> str:
    from .fileformat import fingerprint

    return fingerprint(inst)


def exact_expected_size(inst: BipartiteInstance, cap: int = DEFAULT_CAP) -> ExactReport:
    """Expected matching size over a uniformly random ranking, exactly."""
    _check_cap(inst, cap)
    _, _, runs = _ensemble(inst)
    total = sum(len(matched) for matched, _ in runs.values())
    return ExactReport(
        instance_id=_fingerprint(inst),
        quantity="expected_matching_size",
        params=(),
        value=Fraction(total, len(runs)),
        sample_space=len(runs),
    )


def rank_matched_prob(inst: BipartiteInstance, t: int, cap: int = DEFAULT_CAP) -> Fraction:
    """Probability that the vertex at rank t ends up matched."""
    _check_cap(inst, cap)
    _check_t(t, len(inst.ranking))
    _, _, runs = _ensemble(inst)
    hits = sum(1 for matched, _ in runs.values() if t - 1 in matched)
    return Fraction(hits, len(runs))


def rank_matched_prob_moved(
    inst: BipartiteInstance, t: int, cap: int = DEFAULT_CAP
) -> Fraction:
    """Same event, dual sample space: an independent vertex forced to rank t.

    Draw a ranking and a vertex independently and uniformly, move the vertex
    to rank t, and ask whether it ends up matched.  Each moved ranking is
    hit exactly n times, so this equals ``rank_matched_prob(t)``; computing
    it over the pair space keeps the two routes independent.
    """
    _check_cap(inst, cap)
    n = len(inst.ranking)
    _check_t(t, n)
    _, _, runs = _ensemble(inst)
    i = t - 1
    hits = 0
    for perm in runs:
        for x in range(n):
            if i in runs[_move_id(perm, x, i)][0]:
                hits += 1
    return Fraction(hits, len(runs) * n)


def _designated_positions(inst: BipartiteInstance, m_star: frozenset, offline) -> list:
    """Arrival position of each offline vertex's partner under m_star."""
    out = []
    for v in offline:
        u = partner(m_star, v)
        out.append(inst.arrival.index(u))
    return out


def _validated_perfect(inst: BipartiteInstance, m_star: AbstractSet) -> frozenset:
    mset = frozenset(frozenset(e) for e in m_star)
    if not is_matching(mset) or not mset <= inst.graph:
        raise ValueError("m_star must be a matching inside the instance graph")
    if vertices(mset) != inst.offline | inst.online:
        raise ValueError("m_star must cover both parties entirely")
    return mset


def matched_before_prob(
    inst: BipartiteInstance, m_star: AbstractSet, t: int, cap: int = DEFAULT_CAP
) -> Fraction:
    """Probability the designated partner of a random vertex matches rank <= t.

    Draw a ranking and a vertex v independently and uniformly; the event is
    that u = m_star(v) is matched and its mate sits at rank t or better.
    ``m_star`` must be a perfect matching of the instance graph.
    """
    _check_cap(inst, cap)
    n = len(inst.ranking)
    _check_t(t, n)
    mset = _validated_perfect(inst, m_star)
    offline, _, runs = _ensemble(inst)
    upos = _designated_positions(inst, mset, offline)
    hits = 0
    for _, prs in runs.values():
        for k in range(n):
            if 0 <= prs[upos[k]] <= t - 1:
                hits += 1
    return Fraction(hits, len(runs) * n)


def expected_matched_before_count(
    inst: BipartiteInstance, t: int, cap: int = DEFAULT_CAP
) -> ExactReport:
    """Expected number of arrivals matched to rank t or better."""
    _check_cap(inst, cap)
    _check_t(t, len(inst.ranking))
    _, _, runs = _ensemble(inst)
    total = sum(
        sum(1 for r in prs if 0 <= r <= t - 1) for _, prs in runs.values()
    )
    return ExactReport(
        instance_id=_fingerprint(inst),
        quantity="expected_count_matched_within_rank",
        params=(("t", t),),
        value=Fraction(total, len(runs)),
        sample_space=len(runs),
    )


def perfect_matching_of(inst: BipartiteInstance) -> Optional[frozenset]:
    """A perfect matching covering both parties, or None if there is none."""
    mm = max_card_matching(inst.graph)
    if vertices(mm) == inst.offline | inst.online:
        return mm
    return None


@dataclass(frozen=True)
class ChainLink:
    """All exactly computed quantities for one rank t, with their relations."""

    t: int
    n: int
    rank_prob: Fraction
    moved_prob: Fraction
    before_prob: Fraction
    mean_before_count: Fraction
    prefix_sum: Fraction

    @property
    def move_equal(self) -> bool:
        return self.rank_prob == self.moved_prob

    @property
    def survival_le(self) -> bool:
        return 1 - self.rank_prob <= self.before_prob

    @property
    def count_equal(self) -> bool:
        return self.before_prob * self.n == self.mean_before_count

    @property
    def prefix_equal(self) -> bool:
        return self.mean_before_count == self.prefix_sum

    @property
    def inequality(self) -> bool:
        return self.n * (1 - self.rank_prob) <= self.prefix_sum

    @property
    def holds(self) -> bool:
        return (
            self.move_equal
            and self.survival_le
            and self.count_equal
            and self.prefix_equal
            and self.inequality
        )


def lemma3_chain(
    inst: BipartiteInstance,
    m_star: Optional[AbstractSet] = None,
    cap: int = DEFAULT_CAP,
) -> list:
    """The full per-rank chain of equalities and inequalities, one link per t."""
    _check_cap(inst, cap)
    if m_star is None:
        m_star = perfect_matching_of(inst)
        if m_star is None:
            raise ValueError("instance has no perfect matching covering both parties")
    n = len(inst.ranking)
    xs = [rank_matched_prob(inst, t, cap) for t in range(1, n + 1)]
    links = []
    for t in range(1, n + 1):
        links.append(
            ChainLink(
                t=t,
                n=n,
                rank_prob=xs[t - 1],
                moved_prob=rank_matched_prob_moved(inst, t, cap),
                before_prob=matched_before_prob(inst, m_star, t, cap),
                mean_before_count=expected_matched_before_count(inst, t, cap).value,
                prefix_sum=sum(xs[:t], Fraction(0)),
            )
        )
    return links


def check_lemma3(inst: BipartiteInstance, cap: int = DEFAULT_CAP) -> Dict[int, bool]:
    """Per-rank verdicts of the survival inequality, all exact.

    For each t: the probability of the rank-t vertex being unmatched is at
    most the average of the first t rank probabilities.  Requires the
    instance to admit a perfect matching.
    """
    _check_cap(inst, cap)
    if perfect_matching_of(inst) is None:
        raise ValueError("instance has no perfect matching covering both parties")
    n = len(inst.ranking)
    xs = [rank_matched_prob(inst, t, cap) for t in range(1, n + 1)]
    return {
        t: n * (1 - xs[t - 1]) <= sum(xs[:t], Fraction(0)) for t in range(1, n + 1)
    }


def competitive_bound_exact(n: int) -> Fraction:
    """The guaranteed ratio at party size n, exactly: 1 - (1 - 1/(n+1))^n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return 1 - Fraction(n, n + 1) ** n


def competitive_bound(n: int) -> float:
    """Float version of the guaranteed ratio, stable for huge n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return 1.0 - math.exp(n * math.log1p(-1.0 / (n + 1.0)))


@dataclass(frozen=True)
class RatioVerdict:
    """Exact comparison of an instance's expected ratio against the bound."""

    n: int
    expected: Fraction
    ratio: Optional[Fraction]
    bound: Optional[Fraction]
    holds: bool
    vacuous: bool


def check_theorem4(inst: BipartiteInstance, cap: int = DEFAULT_CAP) -> RatioVerdict:
    """Expected size versus the bound, n taken as the (perfect) party size."""
    _check_cap(inst, cap)
    if perfect_matching_of(inst) is None:
        raise ValueError("instance has no perfect matching covering both parties")
    n = len(inst.ranking)
    expected = exact_expected_size(inst, cap).value
    if n == 0:
        return RatioVerdict(0, expected, None, None, True, True)
    ratio = expected / n
    bound = competitive_bound_exact(n)
    return RatioVerdict(n, expected, ratio, bound, ratio >= bound, False)


def check_theorem6(inst: BipartiteInstance, cap: int = DEFAULT_CAP) -> RatioVerdict:
    """Expected size versus the bound, n taken as the maximum matching size."""
    _check_cap(inst, cap)
    n = len(max_card_matching(inst.graph))
    expected = exact_expected_size(inst, cap).value
    if n == 0:
        return RatioVerdict(0, expected, None, None, True, True)
    ratio = expected / n
    bound = competitive_bound_exact(n)
    return RatioVerdict(n, expected, ratio, bound, ratio >= bound, False)


def mc_expected_size(inst: BipartiteInstance, samples: int, seed: int) -> McEstimate:
    """Monte Carlo estimate of the expected matching size.

    Sample i shuffles the offline party with the i-th stream derived from
    the seed (Fisher-Yates), so the estimate is bit-identical for identical
    (instance, samples, seed) regardless of batching.  The reported stddev
    is the sample standard deviation of the per-run size, zero when only
    one sample was requested.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    offline, _, adj = _adjacency(inst)
    n = len(offline)
    base = list(range(n))
    total = 0
    total_sq = 0
    for i in range(samples):
        perm = stream(seed, i).shuffled(base)
        rank_of = [0] * n
        for r, x in enumerate(perm):
            rank_of[x] = r
        size = sum(1 for r in _greedy_ranks(adj, rank_of, n) if r >= 0)
        total += size
        total_sq += size * size
    mean = total / samples
    if samples > 1:
        var = Fraction(samples * total_sq - total * total, samples * (samples - 1))
        sd = math.sqrt(var)
    else:
        sd = 0.0
    return McEstimate(mean=mean, stddev=sd, samples=samples, seed=seed)
