"""Dataset-evolution scenarios: additive deltas replayed into snapshots."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import SIX_PR, UNATTRIBUTED, ClassScheme, Dataset, Paper
from .scoring import i3

ADD_PAPER = "add_paper"
ADD_CITATION = "add_citation"


class ReplayError(ValueError):
    """A delta cannot be applied to the snapshot it follows."""


@dataclass(frozen=True)
class Delta:
    """One additive change: a new uncited paper, or one citation more for a paper.

    ``add_citation`` targets the lowest-id paper of ``owner`` that currently
    has exactly ``from_count`` citations.
    """

    op: str
    owner: str
    from_count: int | None = None

    def __post_init__(self) -> None:
        if self.op == ADD_PAPER:
            if self.from_count is not None:
                raise ValueError("add_paper takes no from_count")
        elif self.op == ADD_CITATION:
            if self.from_count is None or self.from_count < 0:
                raise ValueError("add_citation needs a non-negative from_count")
        else:
            raise ValueError(f"unknown delta op {self.op!r}")

    @classmethod
    def add_paper(cls, owner: str) -> Delta:
        return cls(ADD_PAPER, owner)

    @classmethod
    def add_citation(cls, owner: str, from_count: int) -> Delta:
        return cls(ADD_CITATION, owner, from_count)


@dataclass(frozen=True)
class Scenario:
    name: str
    initial: Dataset
    steps: tuple[tuple[str, Delta], ...] = ()

    def __post_init__(self) -> None:
        steps = tuple((str(case), delta) for case, delta in self.steps)
        object.__setattr__(self, "steps", steps)
        labels = [self.initial.label] + [case for case, _ in steps]
        if len(set(labels)) != len(labels):
            raise ValueError(f"scenario {self.name!r}: case labels are not unique")

    @property
    def labels(self) -> list[str]:
        return [self.initial.label] + [case for case, _ in self.steps]


def apply_delta(dataset: Dataset, delta: Delta, label: str) -> Dataset:
    papers = list(dataset.papers)
    if delta.op == ADD_PAPER:
        next_id = max((p.id for p in papers), default=0) + 1
        papers.append(Paper(next_id, delta.owner, 0))
        return Dataset(label, tuple(papers))

    candidates = [
        i for i, p in enumerate(papers)
        if p.owner == delta.owner and p.citations == delta.from_count
    ]
    if not candidates:
        raise ReplayError(
            f"step {label!r}: owner {delta.owner!r} has no paper with "
            f"{delta.from_count} citations"
        )
    i = min(candidates, key=lambda i: papers[i].id)
    p = papers[i]
    papers[i] = Paper(p.id, p.owner, p.citations + 1)
    return Dataset(label, tuple(papers))


def replay(scenario: Scenario) -> list[Dataset]:
    snapshots = [scenario.initial]
    for case, delta in scenario.steps:
        snapshots.append(apply_delta(snapshots[-1], delta, case))
    return snapshots


# -- builtin examples ---------------------------------------------------------

A1_COUNTS = {0: 20, 1: 10, 3: 6, 5: 2, 7: 2}


def example_a() -> Scenario:
    """Constant 40 papers; one initially uncited paper collects citations 1..8.

    The designated paper is id 1, the lowest id, so every ``add_citation``
    hits it.
    """
    initial = Dataset.from_counts("A1", A1_COUNTS)
    steps = tuple(
        (f"A{k + 2}", Delta.add_citation(UNATTRIBUTED, k)) for k in range(8)
    )
    return Scenario("example-A", initial, steps)


B1_OWNERS = (("H", 3, 4), ("M", 2, 4), ("L", 1, 7))
B73_NEWCOMER = {0: 29, 1: 8, 2: 5, 3: 3}
NEWCOMER = "N"


def example_b1() -> Dataset:
    papers = []
    pid = 1
    for owner, c, n in B1_OWNERS:
        for _ in range(n):
            papers.append(Paper(pid, owner, c))
            pid += 1
    return Dataset("B1", tuple(papers))


def example_b_endpoints() -> tuple[Dataset, Dataset, dict[str, tuple[int, ...]]]:
    """B1 and B73 with the owner attribution: ``{owner: paper ids in B73}``.

    Everything added between the endpoints belongs to the newcomer N, whose
    papers are listed after B1's in increasing citation order.
    """
    b1 = example_b1()
    added = Dataset.from_counts("B73", B73_NEWCOMER, owner=NEWCOMER, start_id=b1.n_tot + 1)
    b73 = Dataset("B73", b1.papers + added.papers)
    owners: dict[str, tuple[int, ...]] = {}
    for p in b73.papers:
        owners[p.owner] = owners.get(p.owner, ()) + (p.id,)
    return b1, b73, owners


def _newcomer_budget() -> dict[str, int]:
    # paper flow N must pass through to end at B73_NEWCOMER
    at_least = lambda k: sum(n for c, n in B73_NEWCOMER.items() if c >= k)  # noqa: E731
    return {"paper": sum(B73_NEWCOMER.values()), "c0": at_least(1), "c1": at_least(2), "c2": at_least(3)}


def example_b_like(scheme: ClassScheme = SIX_PR, warmup: int = 15) -> Scenario:
    """Deterministic B1 -> B73 path for the newcomer N, 72 single-change steps.

    The interior of the published path is only available as a figure, so this
    builds a stand-in with the same endpoints and the same spirit: ``warmup``
    uncited papers first (B2..B16), then at every step the feasible change
    that moves the baseline I3 the most is taken, ties broken in the order
    paper, 0->1, 1->2, 2->3.
    """
    b1, _, _ = example_b_endpoints()
    budget = _newcomer_budget()
    n_steps = sum(budget.values())
    ops = [("paper", Delta.add_paper(NEWCOMER))] + [
        (f"c{k}", Delta.add_citation(NEWCOMER, k)) for k in range(3)
    ]
    held = {0: 0, 1: 0, 2: 0}  # newcomer papers currently at each citation count

    current = b1
    steps: list[tuple[str, Delta]] = []
    for s in range(n_steps):
        label = f"B{s + 2}"
        base = i3(current, scheme)
        best: tuple[Fraction, Dataset, str, Delta] | None = None
        for key, delta in ops:
            if budget[key] == 0:
                continue
            if key != "paper" and held[delta.from_count] == 0:
                continue
            if s < warmup and key != "paper":
                continue
            nxt = apply_delta(current, delta, label)
            jump = abs(i3(nxt, scheme) - base)
            if best is None or jump > best[0]:
                best = (jump, nxt, key, delta)
        assert best is not None
        _, current, key, delta = best
        budget[key] -= 1
        if key == "paper":
            held[0] += 1
        else:
            held[delta.from_count] -= 1
            held[delta.from_count + 1] = held.get(delta.from_count + 1, 0) + 1
        steps.append((label, delta))
    return Scenario("example-B-like", b1, tuple(steps))


# -- synthetic scenarios -------------------------------------------------------

@dataclass(frozen=True)
class SynthConfig:
    owners: int = 4
    steps: int = 20
    max_citations: int = 3
    initial_papers: tuple[int, int] = (1, 6)
    p_add_paper: float = 0.5
    owner_names: Sequence[str] = field(default=("H", "L", "M", "N", "O", "P", "Q", "R"))


def synth_scenario(seed: int, config: SynthConfig = SynthConfig()) -> Scenario:
    """Reproducible random scenario.

    Each owner starts with a random number of papers within
    ``config.initial_papers`` and random citation counts up to
    ``config.max_citations``.  Each step picks an owner and either adds a
    paper or cites one of its papers below the citation cap; if no paper
    can be cited a paper is added instead.
    """
    lo, hi = config.initial_papers
    if config.owners < 1:
        raise ValueError("synth config needs at least one owner")
    if config.steps < 0:
        raise ValueError("synth config needs a non-negative step count")
    if config.max_citations < 0:
        raise ValueError("synth config needs max_citations >= 0")
    if not 1 <= lo <= hi:
        raise ValueError("synth config needs 1 <= initial papers min <= max")
    if not 0.0 <= config.p_add_paper <= 1.0:
        raise ValueError("p_add_paper must be a probability")
    names = list(config.owner_names)
    if config.owners > len(names):
        names += [f"S{i}" for i in range(len(names), config.owners)]
    names = names[: config.owners]

    rng = random.Random(seed)
    papers = []
    pid = 1
    for owner in names:
        for _ in range(rng.randint(lo, hi)):
            papers.append(Paper(pid, owner, rng.randint(0, config.max_citations)))
            pid += 1
    initial = Dataset("S0", tuple(papers))

    steps = []
    current = initial
    for s in range(1, config.steps + 1):
        owner = rng.choice(names)
        citable = sorted(
            {p.citations for p in current.owned_by(owner) if p.citations < config.max_citations}
        )
        if citable and rng.random() >= config.p_add_paper:
            delta = Delta.add_citation(owner, rng.choice(citable))
        else:
            delta = Delta.add_paper(owner)
        label = f"S{s}"
        current = apply_delta(current, delta, label)
        steps.append((label, delta))
    return Scenario(f"synth-{seed}", initial, tuple(steps))


TIED_CROSSING_SEED = 3
TIED_CROSSING_CONFIG = SynthConfig(
    owners=4, steps=12, max_citations=2, initial_papers=(3, 8), p_add_paper=0.7
)


def example_tied_crossing() -> Scenario:
    """Small four-owner scenario in which H and L each add one uncited paper
    (S9 -> S11) and swap order under lowest-rank ties.

    Found by a seed search over :func:`synth_scenario`; the seed is frozen.
    """
    sc = synth_scenario(TIED_CROSSING_SEED, TIED_CROSSING_CONFIG)
    return Scenario("tied-crossing", sc.initial, sc.steps)
