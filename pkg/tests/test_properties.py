"""Invariants over generated datasets (hypothesis)."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from percentrank import SIX_PR, Dataset, Paper, i3, per_owner_report, weigh
from percentrank.core import UNATTRIBUTED
from percentrank.oracle import (
    OracleConfig,
    fractional_weight_bruteforce,
    report_oracle,
    tie_order_oracle,
)
from percentrank.scoring import CountingRule, RankBasis, ScoringPolicy, TiePolicy

from conftest import ALL_POLICIES, AVG_WEIGHT

policies = st.sampled_from(ALL_POLICIES)


@st.composite
def datasets(draw, max_size: int = 60, owners: str = "HLMN_") -> Dataset:
    pool = draw(st.lists(st.integers(0, 15), min_size=1, max_size=6, unique=True))
    rows = draw(st.lists(st.tuples(st.sampled_from(owners), st.sampled_from(pool)),
                         min_size=1, max_size=max_size))
    return Dataset("h", tuple(Paper(i + 1, o, c) for i, (o, c) in enumerate(rows)))


@given(datasets(), policies)
def test_subset_additivity(ds, policy):
    rep = per_owner_report(ds, SIX_PR, policy)
    assert sum(r.i3 for r in rep.per_owner.values()) == rep.total_i3 == i3(ds, SIX_PR, policy)
    assert sum(r.share for r in rep.per_owner.values()) == rep.total_r


@given(datasets(), policies)
def test_weights_bounded(ds, policy):
    for wp in weigh(ds, SIX_PR, policy):
        assert 1 <= wp.weight <= 6


@given(datasets(), policies)
def test_tied_papers_share_weight(ds, policy):
    by_count: dict[int, set[Fraction]] = {}
    for wp in weigh(ds, SIX_PR, policy):
        by_count.setdefault(wp.paper.citations, set()).add(wp.weight)
    assert all(len(ws) == 1 for ws in by_count.values())


@settings(max_examples=40)
@given(datasets(max_size=30), policies, st.integers(0, 2**16))
def test_tie_order_invariance(ds, policy, seed):
    assert tie_order_oracle(ds, SIX_PR, policy, OracleConfig(permutations=5, seed=seed))


@given(datasets())
def test_fractional_total_is_theoretical(ds):
    assert i3(ds, SIX_PR, ScoringPolicy(fractional=True)) == ds.n_tot * Fraction(191, 100)


@given(datasets(), st.sampled_from([ScoringPolicy(), AVG_WEIGHT]), st.sampled_from("HLMN"))
def test_uncited_paper_raises_i3(ds, policy, owner):
    bigger = Dataset("h+", ds.papers + (Paper(max(p.id for p in ds.papers) + 1, owner, 0),))
    assert i3(bigger, SIX_PR, policy) - i3(ds, SIX_PR, policy) >= 1


@given(datasets())
def test_inclusive_unique_top_in_top_class(ds):
    top = max(p.citations for p in ds.papers)
    if sum(p.citations == top for p in ds.papers) != 1:
        return
    policy = ScoringPolicy(CountingRule.INCLUSIVE_RANK, TiePolicy.LOWEST_RANK)
    (wp,) = [wp for wp in weigh(ds, SIX_PR, policy) if wp.paper.citations == top]
    assert wp.class_number == 6 and wp.percentage == 100


@given(datasets(), policies, st.sampled_from(list(RankBasis)))
def test_oracle_equivalence(ds, policy, basis):
    assert per_owner_report(ds, SIX_PR, policy, basis) == report_oracle(ds, SIX_PR, policy, basis)


@given(datasets(), policies)
def test_unattributed_never_ranked(ds, policy):
    rep = per_owner_report(ds, SIX_PR, policy)
    if UNATTRIBUTED in rep.per_owner:
        assert rep.per_owner[UNATTRIBUTED].rank is None
    ranks = sorted(rep.per_owner[o].rank for o in rep.ranked_owners)
    assert sum(ranks) == Fraction(len(ranks) * (len(ranks) + 1), 2)


@settings(max_examples=30)
@given(st.integers(1, 120))
def test_sliced_fractional_close(n):
    slices = 10_000
    policy = ScoringPolicy(fractional=True)
    ds = Dataset.from_counts("n", {c: 1 for c in range(n)})
    exact = {wp.paper.citations: wp.weight for wp in weigh(ds, SIX_PR, policy)}
    for rank in {1, n // 2 + 1, n}:
        approx = fractional_weight_bruteforce(rank, n, SIX_PR, OracleConfig(slices_per_paper=slices))
        assert abs(approx - float(exact[rank - 1])) <= 1 / slices
