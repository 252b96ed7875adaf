"""Percentile-rank-class weights, I3, R and per-owner rankings.

Every paper's percentage is measured against the full dataset (the reference
set).  Papers are processed one tied group at a time: a group of ``t`` papers
with ``below`` papers strictly less cited occupies the positions
``below .. below + t - 1`` in increasing citation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Mapping

from .core import (
    SIX_PR,
    UNATTRIBUTED,
    ClassScheme,
    Dataset,
    Paper,
    ReferenceSetError,
    fewer_than,
    histogram,
)

__all__ = [
    "CountingRule",
    "TiePolicy",
    "ScoringPolicy",
    "BASELINE",
    "FRACTIONAL",
    "WeightedPaper",
    "RankBasis",
    "OwnerRecord",
    "IndicatorReport",
    "weigh",
    "group_weights",
    "interval_weight",
    "i3",
    "r_indicator",
    "per_owner_report",
    "average_ranks",
]

PLUS_OFFSET = Fraction(9, 10)


class CountingRule(Enum):
    STRICT_LESS = "strict-less"
    INCLUSIVE_RANK = "inclusive"
    PLUS_POINT_NINE = "plus-0.9"


class TiePolicy(Enum):
    LOWEST_RANK = "lowest"
    HIGHEST_RANK = "highest"
    AVERAGE_RANK = "average-rank"
    AVERAGE_WEIGHT = "average-weight"


@dataclass(frozen=True)
class ScoringPolicy:
    """A counting rule combined with a tie policy, or fractional scoring.

    When ``fractional`` is set the counting rule and tie policy are ignored.
    """

    counting: CountingRule = CountingRule.STRICT_LESS
    ties: TiePolicy = TiePolicy.LOWEST_RANK
    fractional: bool = False

    def __str__(self) -> str:
        if self.fractional:
            return "fractional"
        return f"{self.counting.value}/{self.ties.value}"


BASELINE = ScoringPolicy()
FRACTIONAL = ScoringPolicy(fractional=True)


@dataclass(frozen=True)
class WeightedPaper:
    """A paper with its percentage, class and weight.

    ``class_number`` is ``None`` when the weight is a blend of several
    classes (fractional scoring, or averaged weights spanning a boundary).
    """

    paper: Paper
    percentage: Fraction
    class_number: int | None
    weight: Fraction


def _position_percentage(position: int, n_tot: int, counting: CountingRule) -> Fraction:
    """Percentage of the paper at 0-based ``position`` in increasing citation order."""
    if counting is CountingRule.STRICT_LESS:
        return Fraction(position * 100, n_tot)
    if counting is CountingRule.PLUS_POINT_NINE:
        return (position + PLUS_OFFSET) * 100 / n_tot
    return Fraction((position + 1) * 100, n_tot)


def interval_weight(lo: Fraction, hi: Fraction, scheme: ClassScheme) -> Fraction:
    """Width-weighted mean class weight over the percentage interval (lo, hi]."""
    total = Fraction(0)
    for edge, bound, w in zip(scheme.lower_edges, scheme.boundaries, scheme.weights):
        overlap = min(hi, bound) - max(lo, edge)
        if overlap > 0:
            total += overlap * w
    return total / (hi - lo)


def _discrete_group(
    below: int, tied: int, n_tot: int, scheme: ClassScheme, policy: ScoringPolicy
) -> tuple[Fraction, int | None, Fraction]:
    counting, ties = policy.counting, policy.ties
    inclusive = counting is CountingRule.INCLUSIVE_RANK

    if ties is TiePolicy.LOWEST_RANK or ties is TiePolicy.HIGHEST_RANK:
        pos = below if ties is TiePolicy.LOWEST_RANK else below + tied - 1
        p = _position_percentage(pos, n_tot, counting)
        k = scheme.class_number(p, inclusive)
        return p, k, scheme.weight_of(k)

    if ties is TiePolicy.AVERAGE_RANK:
        # integer percentiles are averaged; the average itself is not floored again
        floors = [
            math.floor(_position_percentage(below + j, n_tot, counting)) for j in range(tied)
        ]
        p = Fraction(sum(floors), tied)
        k = scheme.class_number(p, inclusive)
        return p, k, scheme.weight_of(k)

    classes = [
        scheme.class_number(_position_percentage(below + j, n_tot, counting), inclusive)
        for j in range(tied)
    ]
    weight = sum((scheme.weight_of(k) for k in classes), Fraction(0)) / tied
    k = classes[0] if len(set(classes)) == 1 else None
    return _position_percentage(below, n_tot, counting), k, weight


def group_weights(
    dataset: Dataset, scheme: ClassScheme = SIX_PR, policy: ScoringPolicy = BASELINE
) -> dict[int, tuple[Fraction, int | None, Fraction]]:
    """``{citations: (percentage, class_number, weight)}`` for each tied group."""
    hist = histogram(dataset)
    n_tot = hist.n_tot
    out = {}
    for c, tied in hist.bins.items():
        below = fewer_than(hist, c)
        if policy.fractional:
            # averaging equal-width rank intervals == one interval over the whole group
            lo = Fraction(below * 100, n_tot)
            hi = Fraction((below + tied) * 100, n_tot)
            out[c] = (lo, None, interval_weight(lo, hi, scheme))
        else:
            out[c] = _discrete_group(below, tied, n_tot, scheme, policy)
    return out


def weigh(
    dataset: Dataset, scheme: ClassScheme = SIX_PR, policy: ScoringPolicy = BASELINE
) -> list[WeightedPaper]:
    """One :class:`WeightedPaper` per paper, in dataset order.

    For fractional scoring and for averaged weights the recorded percentage
    is the lower edge of the tied group (``below * 100 / n_tot``).
    """
    groups = group_weights(dataset, scheme, policy)
    return [WeightedPaper(p, *groups[p.citations]) for p in dataset.papers]


def i3(dataset: Dataset, scheme: ClassScheme = SIX_PR, policy: ScoringPolicy = BASELINE) -> Fraction:
    return sum((wp.weight for wp in weigh(dataset, scheme, policy)), Fraction(0))


def r_indicator(
    dataset: Dataset, scheme: ClassScheme = SIX_PR, policy: ScoringPolicy = BASELINE
) -> Fraction:
    return i3(dataset, scheme, policy) / dataset.n_tot


class RankBasis(Enum):
    """What owners are ranked by.

    ``CONTRIBUTION`` ranks by the owner's share of the total R, i.e. by its
    I3 summed over its papers; ``MEAN`` ranks by the owner's own R
    (I3 over the owner's paper count).
    """

    CONTRIBUTION = "contribution"
    MEAN = "mean"


@dataclass(frozen=True)
class OwnerRecord:
    papers: int
    citations: int
    i3: Fraction
    r: Fraction
    share: Fraction
    rank: Fraction | None

    def score(self, basis: RankBasis) -> Fraction:
        return self.share if basis is RankBasis.CONTRIBUTION else self.r


@dataclass(frozen=True)
class IndicatorReport:
    label: str
    n_papers: int
    n_citations: int
    total_i3: Fraction
    total_r: Fraction
    per_owner: Mapping[str, OwnerRecord]
    rank_basis: RankBasis = RankBasis.CONTRIBUTION

    def score_of(self, owner: str) -> Fraction:
        return self.per_owner[owner].score(self.rank_basis)

    @property
    def ranked_owners(self) -> list[str]:
        return [o for o, rec in self.per_owner.items() if rec.rank is not None]


def average_ranks(values: Mapping[str, Fraction]) -> dict[str, Fraction]:
    """Rank keys by descending value; ties share the mean of the positions they span."""
    ordered = sorted(values.items(), key=lambda kv: kv[1], reverse=True)
    ranks: dict[str, Fraction] = {}
    i = 0
    while i < len(ordered):
        j = i
        while j + 1 < len(ordered) and ordered[j + 1][1] == ordered[i][1]:
            j += 1
        shared = Fraction(i + 1 + j + 1, 2)
        for key, _ in ordered[i : j + 1]:
            ranks[key] = shared
        i = j + 1
    return ranks


def per_owner_report(
    dataset: Dataset,
    scheme: ClassScheme = SIX_PR,
    policy: ScoringPolicy = BASELINE,
    basis: RankBasis = RankBasis.CONTRIBUTION,
) -> IndicatorReport:
    """Total and per-owner indicators, weights measured against the full dataset.

    ``r`` is the owner's mean weight, ``share`` its contribution to the total
    R (``i3 / n_tot``).  Unattributed papers (owner ``"_"``) count towards the
    totals and get a record, but are left out of the ranking.
    """
    if dataset.n_tot == 0:
        raise ReferenceSetError(f"empty reference set in {dataset.label!r}")
    weighted = weigh(dataset, scheme, policy)
    n_tot = dataset.n_tot

    acc: dict[str, list] = {}
    for wp in weighted:
        a = acc.setdefault(wp.paper.owner, [0, 0, Fraction(0)])
        a[0] += 1
        a[1] += wp.paper.citations
        a[2] += wp.weight

    records = {o: OwnerRecord(n, c, w, w / n, w / n_tot, None) for o, (n, c, w) in acc.items()}
    ranks = average_ranks(
        {o: rec.score(basis) for o, rec in records.items() if o != UNATTRIBUTED}
    )
    per_owner = {o: replace(rec, rank=ranks.get(o)) for o, rec in records.items()}
    total = sum((rec.i3 for rec in records.values()), Fraction(0))
    return IndicatorReport(
        label=dataset.label,
        n_papers=n_tot,
        n_citations=dataset.total_citations,
        total_i3=total,
        total_r=total / n_tot,
        per_owner=per_owner,
        rank_basis=basis,
    )
