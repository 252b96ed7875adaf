"""Brute-force reference implementations.

These deliberately share no code with :mod:`percentrank.scoring` beyond the
domain types: papers are handled one at a time from the sorted citation
list, class membership is found by counting boundaries, fractional weights
come from piecewise integration (exact) or slicing (approximate).  They are
slow and meant for tests and fixture minting.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .core import UNATTRIBUTED, ClassScheme, Dataset, Paper
from .scoring import (
    CountingRule,
    IndicatorReport,
    OwnerRecord,
    RankBasis,
    ScoringPolicy,
    TiePolicy,
    weigh,
)


@dataclass(frozen=True)
class OracleConfig:
    slices_per_paper: int = 10_000
    permutations: int = 100
    seed: int = 0

    def __post_init__(self) -> None:
        if self.slices_per_paper < 1 or self.permutations < 1:
            raise ValueError("oracle config needs positive slice and permutation counts")


# -- fractional weights -------------------------------------------------------

@lru_cache(maxsize=None)
def _sliced_rank_weights(n_tot: int, boundaries: tuple, weights: tuple, slices: int) -> np.ndarray:
    bounds = np.array([float(b) for b in boundaries])
    w = np.array([float(x) for x in weights])
    mids = (np.arange(n_tot * slices) + 0.5) * (100.0 / (n_tot * slices))
    cls = np.searchsorted(bounds, mids, side="left")
    return w[cls].reshape(n_tot, slices).mean(axis=1)


def fractional_weight_bruteforce(
    rank: int, n_tot: int, scheme: ClassScheme, config: OracleConfig = OracleConfig()
) -> float:
    """Mean class weight over ((rank-1)*100/n_tot, rank*100/n_tot] by midpoint slicing."""
    if not 1 <= rank <= n_tot:
        raise ValueError(f"rank {rank} outside 1..{n_tot}")
    table = _sliced_rank_weights(n_tot, scheme.boundaries, scheme.weights, config.slices_per_paper)
    return float(table[rank - 1])


def _exact_rank_weight(rank: int, n_tot: int, scheme: ClassScheme) -> Fraction:
    lo = Fraction((rank - 1) * 100, n_tot)
    hi = Fraction(rank * 100, n_tot)
    cuts = sorted({lo, hi, *(b for b in scheme.boundaries if lo < b < hi)})
    area = Fraction(0)
    for a, b in zip(cuts, cuts[1:]):
        area += (b - a) * _class_weight((a + b) / 2, scheme, inclusive=True)
    return area / (hi - lo)


# -- discrete weights ---------------------------------------------------------

def _class_weight(p: Fraction, scheme: ClassScheme, inclusive: bool) -> Fraction:
    # classes passed = boundaries the percentage has reached (strict) or exceeded (inclusive)
    if inclusive:
        passed = sum(1 for b in scheme.boundaries if b < p)
    else:
        passed = sum(1 for b in scheme.boundaries if b <= p)
    return scheme.weights[passed]


def _paper_weight(c: int, cites: list[int], scheme: ClassScheme, policy: ScoringPolicy) -> Fraction:
    n = len(cites)
    below = sum(1 for x in cites if x < c)
    tied = sum(1 for x in cites if x == c)

    if policy.fractional:
        ws = [_exact_rank_weight(r, n, scheme) for r in range(below + 1, below + tied + 1)]
        return sum(ws, Fraction(0)) / tied

    rule = policy.counting
    inclusive = rule is CountingRule.INCLUSIVE_RANK

    def pct(k: int) -> Fraction:
        if rule is CountingRule.INCLUSIVE_RANK:
            return Fraction(100 * (k + 1), n)
        if rule is CountingRule.PLUS_POINT_NINE:
            return Fraction(100 * (10 * k + 9), 10 * n)
        return Fraction(100 * k, n)

    positions = list(range(below, below + tied))
    ties = policy.ties
    if ties is TiePolicy.LOWEST_RANK:
        return _class_weight(pct(positions[0]), scheme, inclusive)
    if ties is TiePolicy.HIGHEST_RANK:
        return _class_weight(pct(positions[-1]), scheme, inclusive)
    if ties is TiePolicy.AVERAGE_RANK:
        mean = Fraction(sum(math.floor(pct(k)) for k in positions), len(positions))
        return _class_weight(mean, scheme, inclusive)
    ws = [_class_weight(pct(k), scheme, inclusive) for k in positions]
    return sum(ws, Fraction(0)) / len(ws)


def report_oracle(
    dataset: Dataset,
    scheme: ClassScheme,
    policy: ScoringPolicy,
    basis: RankBasis = RankBasis.CONTRIBUTION,
) -> IndicatorReport:
    """Straight-line re-derivation of :func:`percentrank.scoring.per_owner_report`."""
    cites = sorted(p.citations for p in dataset.papers)
    n = len(cites)
    by_count = {c: _paper_weight(c, cites, scheme, policy) for c in set(cites)}

    owners: dict[str, list] = {}
    for p in dataset.papers:
        rec = owners.setdefault(p.owner, [0, 0, Fraction(0)])
        rec[0] += 1
        rec[1] += p.citations
        rec[2] += by_count[p.citations]

    def score(rec) -> Fraction:
        return rec[2] / n if basis is RankBasis.CONTRIBUTION else rec[2] / rec[0]

    ranked = {o: score(rec) for o, rec in owners.items() if o != UNATTRIBUTED}
    per_owner = {}
    for o, rec in owners.items():
        rank = None
        if o in ranked:
            greater = sum(1 for v in ranked.values() if v > ranked[o])
            equal = sum(1 for v in ranked.values() if v == ranked[o])
            rank = greater + Fraction(equal + 1, 2)
        per_owner[o] = OwnerRecord(rec[0], rec[1], rec[2], rec[2] / rec[0], rec[2] / n, rank)

    total = sum(by_count[c] for c in cites)
    return IndicatorReport(dataset.label, n, sum(cites), total, total / n, per_owner, basis)


# -- tie order ----------------------------------------------------------------

def tie_order_oracle(
    dataset: Dataset,
    scheme: ClassScheme,
    policy: ScoringPolicy,
    config: OracleConfig = OracleConfig(),
) -> bool:
    """Shuffle paper order and ids within tied groups; weights must not move.

    Each paper is tracked by its identity (owner plus original id), so a
    change in any individual weight is caught, not only in the totals.
    """
    rng = random.Random(config.seed)
    baseline = {(wp.paper.owner, wp.paper.id): wp.weight for wp in weigh(dataset, scheme, policy)}
    groups: dict[int, list] = {}
    for p in dataset.papers:
        groups.setdefault(p.citations, []).append(p)

    for _ in range(config.permutations):
        shuffled = []
        origin = {}
        for c, members in groups.items():
            ids = [p.id for p in members]
            rng.shuffle(ids)
            for p, new_id in zip(members, ids):
                q = Paper(new_id, p.owner, c)
                origin[new_id] = (p.owner, p.id)
                shuffled.append(q)
        rng.shuffle(shuffled)
        permuted = Dataset(dataset.label, tuple(shuffled))
        for wp in weigh(permuted, scheme, policy):
            if wp.weight != baseline[origin[wp.paper.id]]:
                return False
    return True
