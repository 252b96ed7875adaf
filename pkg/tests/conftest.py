from __future__ import annotations

import random
from pathlib import Path

import pytest

from percentrank import Dataset, Paper, ScoringPolicy, example_b_endpoints
from percentrank.scoring import CountingRule, TiePolicy

FIXTURES = Path(__file__).parent / "fixtures"

ALL_POLICIES = [ScoringPolicy(c, t) for c in CountingRule for t in TiePolicy] + [
    ScoringPolicy(fractional=True)
]
AVG_WEIGHT = ScoringPolicy(ties=TiePolicy.AVERAGE_WEIGHT)


def counts_dataset(label: str, counts: dict[int, int]) -> Dataset:
    return Dataset.from_counts(label, counts)


def random_dataset(rng: random.Random, n_max: int = 200, c_max: int = 12,
                   owners: str = "HLMN_") -> Dataset:
    n = rng.randint(1, n_max)
    # few distinct citation values so that ties are frequent
    pool = sorted(rng.sample(range(c_max + 1), rng.randint(1, min(6, c_max + 1))))
    return Dataset("rnd", tuple(
        Paper(i + 1, rng.choice(owners), rng.choice(pool)) for i in range(n)
    ))


@pytest.fixture
def a1() -> Dataset:
    return counts_dataset("A1", {0: 20, 1: 10, 3: 6, 5: 2, 7: 2})


@pytest.fixture
def a2() -> Dataset:
    return counts_dataset("A2", {0: 19, 1: 11, 3: 6, 5: 2, 7: 2})


@pytest.fixture
def b1() -> Dataset:
    return example_b_endpoints()[0]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter) -> None:
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
