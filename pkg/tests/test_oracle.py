import random
from fractions import Fraction

import pytest

from percentrank import FRACTIONAL, SIX_PR, Dataset, Paper, per_owner_report, weigh
from percentrank.oracle import (
    OracleConfig,
    fractional_weight_bruteforce,
    report_oracle,
    tie_order_oracle,
)

from conftest import ALL_POLICIES, AVG_WEIGHT, random_dataset

CFG = OracleConfig(slices_per_paper=10_000)


def test_bruteforce_top_of_40():
    assert fractional_weight_bruteforce(40, 40, SIX_PR, CFG) == pytest.approx(5.4, abs=1 / CFG.slices_per_paper)


def test_bruteforce_bottom_is_one():
    assert fractional_weight_bruteforce(1, 40, SIX_PR, CFG) == 1.0


def test_bruteforce_top_of_16():
    assert fractional_weight_bruteforce(16, 16, SIX_PR, CFG) / 16 == pytest.approx(0.31, abs=1e-4)


def test_bruteforce_rank_range():
    with pytest.raises(ValueError):
        fractional_weight_bruteforce(0, 10, SIX_PR)


@pytest.mark.parametrize("n", [1, 3, 7, 16, 40, 111, 200])
def test_bruteforce_matches_exact_ranks(n):
    d = Dataset("d", tuple(Paper(i, "_", i) for i in range(1, n + 1)))
    tol = float(SIX_PR.max_weight - SIX_PR.min_weight) / CFG.slices_per_paper
    for wp in weigh(d, SIX_PR, FRACTIONAL):
        approx = fractional_weight_bruteforce(wp.paper.citations, n, SIX_PR, CFG)
        assert abs(approx - float(wp.weight)) <= tol


def test_tie_order_a2_average_weight(a2):
    assert tie_order_oracle(a2, SIX_PR, AVG_WEIGHT, OracleConfig(permutations=100))


def test_tie_order_a1_fractional(a1):
    assert tie_order_oracle(a1, SIX_PR, FRACTIONAL, OracleConfig(permutations=100))


def test_tie_order_distinct_counts():
    d = Dataset("d", tuple(Paper(i, "_", i) for i in range(1, 11)))
    assert tie_order_oracle(d, SIX_PR, AVG_WEIGHT, OracleConfig(permutations=5))


def test_report_oracle_a1(a1):
    assert report_oracle(a1, SIX_PR, ALL_POLICIES[0]).total_i3 == 76


def test_report_oracle_b1(b1):
    rep = report_oracle(b1, SIX_PR, ALL_POLICIES[0])
    assert {o: rec.i3 for o, rec in rep.per_owner.items()} == {"H": 8, "M": 4, "L": 7}


@pytest.mark.parametrize("policy", ALL_POLICIES, ids=str)
def test_report_oracle_single_uncited(policy):
    # a lone paper sits at 0% (strict), exactly 90% (plus 0.9: class 4), 100% (inclusive)
    # or spreads over the whole range (fractional)
    expected = {
        "strict-less": 1,
        "plus-0.9": 4,
        "inclusive": 6,
        "fractional": Fraction(191, 100),
    }[str(policy).split("/")[0]]
    d = Dataset("one", (Paper(1, "H", 0),))
    assert report_oracle(d, SIX_PR, policy).total_i3 == expected
    assert per_owner_report(d, SIX_PR, policy).total_i3 == expected


@pytest.mark.parametrize("k", range(len(ALL_POLICIES)))
def test_report_oracle_equals_production(k):
    policy = ALL_POLICIES[k]
    rng = random.Random(k)
    for _ in range(40):
        d = random_dataset(rng, n_max=90)
        assert report_oracle(d, SIX_PR, policy) == per_owner_report(d, SIX_PR, policy)


def test_oracle_config_validation():
    with pytest.raises(ValueError):
        OracleConfig(slices_per_paper=0)
