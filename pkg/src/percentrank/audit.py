"""Ranking-consistency audits over replayed scenarios.

Two properties are checked on the per-owner ranking scores (the owner's
share of the total R by default, see :class:`~percentrank.scoring.RankBasis`):

* same improvement: if exactly two owners receive identical changes between
  two snapshots (and nobody else changes), their relative order must hold;
* strict independence: a change for one owner must not alter the relative
  order of any two other owners.

Order is the sign of ``score_X - score_Y`` computed exactly; moving into or out of a
tie counts as a change.
"""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from .core import SIX_PR, UNATTRIBUTED, ClassScheme, Dataset, sign
from .evolution import Delta, Scenario, replay
from .scoring import BASELINE, IndicatorReport, RankBasis, ScoringPolicy, per_owner_report

SAME_IMPROVEMENT = "same-improvement"
STRICT_INDEPENDENCE = "strict-independence"

ReportFn = Callable[[Dataset, ClassScheme, ScoringPolicy, RankBasis], IndicatorReport]


class TooFewOwnersWarning(UserWarning):
    """Strict independence needs at least three attributed owners."""


@dataclass(frozen=True)
class OwnerDelta:
    owner: str
    papers_added: int
    citations_added: tuple[int, ...]  # sorted from_count values

    @property
    def is_empty(self) -> bool:
        return self.papers_added == 0 and not self.citations_added

    def same_change(self, other: OwnerDelta) -> bool:
        return (self.papers_added, self.citations_added) == (
            other.papers_added,
            other.citations_added,
        )


def owner_deltas(deltas: Sequence[Delta]) -> dict[str, OwnerDelta]:
    """Aggregate a run of deltas into one :class:`OwnerDelta` per touched owner."""
    papers: Counter[str] = Counter()
    cites: dict[str, list[int]] = {}
    for d in deltas:
        if d.op == "add_paper":
            papers[d.owner] += 1
        else:
            cites.setdefault(d.owner, []).append(d.from_count)
    owners = set(papers) | set(cites)
    return {
        o: OwnerDelta(o, papers[o], tuple(sorted(cites.get(o, ()))))
        for o in owners
    }


@dataclass(frozen=True)
class Violation:
    kind: str
    from_case: str
    to_case: str
    pair: tuple[str, str]
    score_before: tuple[Fraction, Fraction]
    score_after: tuple[Fraction, Fraction]
    rank_before: tuple[Fraction, Fraction]
    rank_after: tuple[Fraction, Fraction]
    changed_by: tuple[str, ...]

    def describe(self) -> str:
        x, y = self.pair

        def rel(r: tuple[Fraction, Fraction]) -> str:
            return {1: ">", 0: "=", -1: "<"}[sign(r[0] - r[1])]

        return (
            f"{self.kind} {self.from_case}->{self.to_case}: "
            f"{x} {rel(self.score_before)} {y} became {x} {rel(self.score_after)} {y} "
            f"(changed: {', '.join(self.changed_by)})"
        )


class _Reports:
    """Lazily computed reports, one per snapshot."""

    def __init__(self, snapshots: list[Dataset], scheme: ClassScheme,
                 policy: ScoringPolicy, basis: RankBasis, report_fn: ReportFn):
        self.snapshots = snapshots
        self._args = (scheme, policy, basis)
        self._fn = report_fn
        self._cache: dict[int, IndicatorReport] = {}

    def __getitem__(self, i: int) -> IndicatorReport:
        if i not in self._cache:
            self._cache[i] = self._fn(self.snapshots[i], *self._args)
        return self._cache[i]


def _compare(kind: str, reports: _Reports, i: int, j: int, pair: tuple[str, str],
             changed_by: tuple[str, ...]) -> Violation | None:
    x, y = pair
    rep_i, rep_j = reports[i], reports[j]
    before, after = rep_i.per_owner, rep_j.per_owner
    if not all(o in rep for o in pair for rep in (before, after)):
        return None
    rb = (rep_i.score_of(x), rep_i.score_of(y))
    ra = (rep_j.score_of(x), rep_j.score_of(y))
    if sign(rb[0] - rb[1]) == sign(ra[0] - ra[1]):
        return None
    return Violation(
        kind, reports.snapshots[i].label, reports.snapshots[j].label, pair, rb, ra,
        (before[x].rank, before[y].rank), (after[x].rank, after[y].rank), changed_by,
    )


def _attributed(owners) -> list[str]:
    return sorted(o for o in owners if o != UNATTRIBUTED)


def strict_independence_violations(
    scenario: Scenario,
    scheme: ClassScheme = SIX_PR,
    policy: ScoringPolicy = BASELINE,
    basis: RankBasis = RankBasis.CONTRIBUTION,
    report_fn: ReportFn = per_owner_report,
) -> list[Violation]:
    """Check every step against all pairs of owners it does not touch."""
    snapshots = replay(scenario)
    owners = _attributed({p.owner for s in snapshots for p in s.papers})
    if len(owners) < 3:
        warnings.warn(
            f"scenario {scenario.name!r} has {len(owners)} attributed owner(s); "
            "strict independence needs at least 3",
            TooFewOwnersWarning,
            stacklevel=2,
        )
        return []
    reports = _Reports(snapshots, scheme, policy, basis, report_fn)
    found = []
    for i, (_, delta) in enumerate(scenario.steps):
        others = [o for o in owners if o != delta.owner]
        for pair in combinations(others, 2):
            v = _compare(STRICT_INDEPENDENCE, reports, i, i + 1, pair, (delta.owner,))
            if v is not None:
                found.append(v)
    return found


def same_improvement_violations(
    scenario: Scenario,
    scheme: ClassScheme = SIX_PR,
    policy: ScoringPolicy = BASELINE,
    basis: RankBasis = RankBasis.CONTRIBUTION,
    report_fn: ReportFn = per_owner_report,
) -> list[Violation]:
    """Scan every snapshot window (i, j).

    A window qualifies when its cumulative changes touch exactly two
    attributed owners with identical :class:`OwnerDelta` and nothing else.
    Windows are extended from each ``i`` until a third owner is touched,
    so the scan is O(cases^2) in the worst case.
    """
    snapshots = replay(scenario)
    reports = _Reports(snapshots, scheme, policy, basis, report_fn)
    deltas = [d for _, d in scenario.steps]
    found = []
    for i in range(len(deltas)):
        for j in range(i + 1, len(deltas) + 1):
            touched = owner_deltas(deltas[i:j])
            if len(touched) > 2:
                break
            if len(touched) != 2 or UNATTRIBUTED in touched:
                continue
            a, b = sorted(touched)
            if not touched[a].same_change(touched[b]):
                continue
            v = _compare(SAME_IMPROVEMENT, reports, i, j, (a, b), (a, b))
            if v is not None:
                found.append(v)
    return found
