from fractions import Fraction

import pytest

from percentrank import (
    BASELINE,
    FRACTIONAL,
    SIX_PR,
    Dataset,
    Paper,
    RankBasis,
    ScoringPolicy,
    i3,
    per_owner_report,
    r_indicator,
    theoretical_mean,
    weigh,
)
from percentrank.evolution import apply_delta, Delta
from percentrank.scoring import CountingRule, TiePolicy, average_ranks, group_weights, interval_weight

from conftest import ALL_POLICIES, AVG_WEIGHT, counts_dataset

HIGHEST = ScoringPolicy(ties=TiePolicy.HIGHEST_RANK)
AVG_RANK = ScoringPolicy(ties=TiePolicy.AVERAGE_RANK)
INCL_AVG = ScoringPolicy(CountingRule.INCLUSIVE_RANK, TiePolicy.AVERAGE_WEIGHT)
PLUS = ScoringPolicy(CountingRule.PLUS_POINT_NINE)


def test_a1_table(a1):
    groups = group_weights(a1)
    assert [groups[c][0] for c in (0, 1, 3, 5, 7)] == [0, 50, 75, 90, 95]
    assert [groups[c][1] for c in (0, 1, 3, 5, 7)] == [1, 2, 3, 4, 5]
    assert i3(a1) == 76
    assert r_indicator(a1) == Fraction(19, 10)


def test_a2_table(a2):
    pct, k, w = group_weights(a2)[1]
    assert (pct, k, w) == (Fraction(95, 2), 1, 1)
    assert i3(a2) == 66
    assert r_indicator(a2) == Fraction(33, 20)


def test_a2_average_weight(a2):
    wps = [wp for wp in weigh(a2, SIX_PR, AVG_WEIGHT) if wp.paper.citations == 1]
    assert len(wps) == 11
    # provisional positions 19..29: one lands below 50%, ten in class 2
    assert {wp.weight for wp in wps} == {Fraction(1 + 10 * 2, 11)}
    assert all(wp.class_number is None for wp in wps)
    assert i3(a2, SIX_PR, AVG_WEIGHT) == 76


def test_highest_rank(a2):
    pct, k, w = group_weights(a2, SIX_PR, HIGHEST)[1]
    assert pct == Fraction(145, 2) and k == 2 and w == 2
    assert i3(a2, SIX_PR, HIGHEST) == 77
    variant = counts_dataset("v", {0: 21, 1: 9, 3: 6, 5: 2, 7: 2})
    assert group_weights(variant, SIX_PR, HIGHEST)[0][0] == 50
    assert i3(variant, SIX_PR, HIGHEST) == 96


def test_inclusive_average_weight(a1):
    assert i3(a1, SIX_PR, INCL_AVG) == 77
    assert r_indicator(a1, SIX_PR, INCL_AVG) == Fraction(77, 40)


def test_average_rank_variant():
    before = counts_dataset("pg1", {0: 12, 1: 18, 3: 6, 5: 2, 7: 2})
    after = counts_dataset("pg2", {0: 11, 1: 19, 3: 6, 5: 2, 7: 2})
    pct, k, w = group_weights(before, SIX_PR, AVG_RANK)[1]
    assert (pct, k, w) == (51, 2, 2)
    pct, k, w = group_weights(after, SIX_PR, AVG_RANK)[1]
    assert (pct, k, w) == (Fraction(945, 19), 1, 1)
    assert i3(before, SIX_PR, AVG_RANK) - i3(after, SIX_PR, AVG_RANK) == 18


def test_fractional_top_paper():
    d40 = Dataset("d40", tuple(Paper(i, "_", i) for i in range(1, 41)))
    top = weigh(d40, SIX_PR, FRACTIONAL)[-1]
    assert top.weight == Fraction(27, 5)
    assert top.weight / 40 == Fraction(135, 1000)
    d16 = Dataset("d16", tuple(Paper(i, "_", i) for i in range(1, 17)))
    assert weigh(d16, SIX_PR, FRACTIONAL)[-1].weight / 16 == Fraction(31, 100)


def test_interval_weight_inside_one_class():
    assert interval_weight(Fraction(0), Fraction(5, 2), SIX_PR) == 1


def test_plus_point_nine_pathology():
    d = Dataset("d111", tuple(Paper(i, "_", min(i, 110)) for i in range(1, 112)))
    # ids 110 and 111 tie at 110 citations: 109 papers have fewer
    wp = [w for w in weigh(d, SIX_PR, PLUS) if w.paper.citations == 110][0]
    assert wp.percentage == Fraction(1099, 1110) * 100
    assert wp.percentage > 99
    assert wp.class_number == 6


def test_plus_point_nine_leaves_example_a_unchanged(a1, a2):
    assert i3(a1, SIX_PR, PLUS) == 76
    assert i3(a2, SIX_PR, PLUS) == 66


@pytest.mark.parametrize("policy", ALL_POLICIES, ids=str)
def test_weights_bounded_and_symmetric(a2, policy):
    seen = {}
    for wp in weigh(a2, SIX_PR, policy):
        assert SIX_PR.min_weight <= wp.weight <= SIX_PR.max_weight
        seen.setdefault(wp.paper.citations, set()).add(wp.weight)
    assert all(len(ws) == 1 for ws in seen.values())


def test_b1_b2_anchor(b1):
    assert i3(b1) == 19
    assert r_indicator(b1) == Fraction(19, 15)
    b2 = apply_delta(b1, Delta.add_paper("N"), "B2")
    rep = per_owner_report(b2)
    assert rep.total_i3 == 28 and rep.total_r == Fraction(7, 4)
    weights = {wp.paper.owner: wp.weight for wp in weigh(b2)}
    assert weights == {"H": 3, "M": 2, "L": 1, "N": 1}


def test_b1_owner_contributions(b1):
    # H at 73.3% -> class 2, M at 46.7% -> class 1, L at 0%
    rep = per_owner_report(b1)
    assert {o: rec.i3 for o, rec in rep.per_owner.items()} == {"H": 8, "M": 4, "L": 7}
    assert {o: rec.rank for o, rec in rep.per_owner.items()} == {"H": 1, "L": 2, "M": 3}


def test_b1_average_weight_ties_m_and_l(b1):
    rep = per_owner_report(b1, SIX_PR, AVG_WEIGHT)
    m_weights = {wp.weight for wp in weigh(b1, SIX_PR, AVG_WEIGHT) if wp.paper.owner == "M"}
    assert m_weights == {Fraction(7, 4)}
    assert rep.per_owner["M"].i3 == rep.per_owner["L"].i3 == 7
    assert rep.per_owner["M"].rank == rep.per_owner["L"].rank == Fraction(5, 2)
    # by mean R the two are not tied
    mean = per_owner_report(b1, SIX_PR, AVG_WEIGHT, RankBasis.MEAN)
    assert mean.per_owner["M"].rank == 2 and mean.per_owner["L"].rank == 3


def test_report_invariants(b1):
    b2 = apply_delta(b1, Delta.add_paper("N"), "B2")
    for policy in ALL_POLICIES:
        rep = per_owner_report(b2, SIX_PR, policy)
        assert sum(rec.i3 for rec in rep.per_owner.values()) == rep.total_i3
        for rec in rep.per_owner.values():
            assert rec.r == rec.i3 / rec.papers
            assert rec.share == rec.i3 / rep.n_papers
        m = len(rep.ranked_owners)
        assert sum(rep.per_owner[o].rank for o in rep.ranked_owners) == Fraction(m * (m + 1), 2)


def test_unattributed_not_ranked(a1):
    rep = per_owner_report(a1)
    assert rep.per_owner["_"].rank is None
    assert rep.ranked_owners == []


def test_average_ranks():
    ranks = average_ranks({"a": Fraction(3), "b": Fraction(2), "c": Fraction(2), "d": Fraction(1)})
    assert ranks == {"a": 1, "b": Fraction(5, 2), "c": Fraction(5, 2), "d": 4}


def test_fractional_total_is_theoretical(a1):
    assert r_indicator(a1, SIX_PR, FRACTIONAL) == theoretical_mean(SIX_PR)


def test_inclusive_places_top_paper_in_top_class():
    d = counts_dataset("d", {0: 5, 2: 3, 9: 1})
    top = [wp for wp in weigh(d, SIX_PR, ScoringPolicy(CountingRule.INCLUSIVE_RANK)) if wp.paper.citations == 9]
    assert top[0].class_number == 6


def test_policy_str():
    assert str(BASELINE) == "strict-less/lowest"
    assert str(FRACTIONAL) == "fractional"


def test_empty_dataset_errors():
    from percentrank import ReferenceSetError
    with pytest.raises(ReferenceSetError):
        weigh(Dataset("e", ()))
    with pytest.raises(ReferenceSetError):
        per_owner_report(Dataset("e", ()))
