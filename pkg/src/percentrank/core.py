"""Domain types shared by the scoring, replay and audit layers.

All numbers that end up compared against a class boundary are kept as
:class:`fractions.Fraction` so that a percentage like 47.5 or 50 is decided
exactly, never through a float.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Union

Rational = Fraction
Number = Union[int, Fraction]

UNATTRIBUTED = "_"


class ReferenceSetError(ValueError):
    """Raised when an indicator is requested for an unusable reference set."""


def as_rational(value: Number | str | float) -> Fraction:
    """Coerce ``value`` to an exact rational.

    Floats are converted through their decimal repr, so ``0.9`` becomes
    ``9/10`` rather than the binary approximation.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True)
class Paper:
    id: int
    owner: str
    citations: int

    def __post_init__(self) -> None:
        if isinstance(self.citations, bool) or not isinstance(self.citations, int):
            raise TypeError(f"paper {self.id}: citations must be an int")
        if self.citations < 0:
            raise ValueError(f"paper {self.id}: negative citation count {self.citations}")
        if not self.owner:
            raise ValueError(f"paper {self.id}: empty owner label")


@dataclass(frozen=True)
class Dataset:
    """One snapshot of the reference set."""

    label: str
    papers: tuple[Paper, ...] = ()

    def __post_init__(self) -> None:
        papers = tuple(self.papers)
        object.__setattr__(self, "papers", papers)
        seen: set[int] = set()
        for p in papers:
            if p.id in seen:
                raise ValueError(f"dataset {self.label!r}: duplicate paper id {p.id}")
            seen.add(p.id)

    @classmethod
    def from_counts(
        cls,
        label: str,
        counts: Mapping[int, int] | Iterable[tuple[int, int]],
        owner: str = UNATTRIBUTED,
        start_id: int = 1,
    ) -> Dataset:
        """Build a dataset from ``{citations: number_of_papers}``.

        Papers are created in increasing citation order with consecutive ids.
        """
        items = counts.items() if isinstance(counts, Mapping) else counts
        papers = []
        pid = start_id
        for c, n in sorted(items):
            for _ in range(n):
                papers.append(Paper(pid, owner, c))
                pid += 1
        return cls(label, tuple(papers))

    @property
    def n_tot(self) -> int:
        return len(self.papers)

    @property
    def total_citations(self) -> int:
        return sum(p.citations for p in self.papers)

    @property
    def owners(self) -> tuple[str, ...]:
        """Owner labels in order of first appearance."""
        return tuple(dict.fromkeys(p.owner for p in self.papers))

    def relabel(self, label: str) -> Dataset:
        return Dataset(label, self.papers)

    def owned_by(self, owner: str) -> tuple[Paper, ...]:
        return tuple(p for p in self.papers if p.owner == owner)


@dataclass(frozen=True)
class CitationHistogram:
    """Number of papers n(c) per distinct citation count c, sorted by c."""

    bins: Mapping[int, int]
    _below: Mapping[int, int] = field(default=None, repr=False, compare=False)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        bins = dict(sorted(self.bins.items()))
        below: dict[int, int] = {}
        running = 0
        for c, n in bins.items():
            below[c] = running
            running += n
        object.__setattr__(self, "bins", bins)
        object.__setattr__(self, "_below", below)

    @property
    def n_tot(self) -> int:
        return sum(self.bins.values())

    @property
    def total_citations(self) -> int:
        return sum(c * n for c, n in self.bins.items())


def histogram(dataset: Dataset) -> CitationHistogram:
    if dataset.n_tot == 0:
        raise ReferenceSetError(f"empty reference set in {dataset.label!r}")
    return CitationHistogram(Counter(p.citations for p in dataset.papers))


def fewer_than(hist: CitationHistogram, c: int) -> int:
    """Number of papers with strictly fewer citations than ``c``.

    Tied papers are not counted, so every member of a tied group gets the
    same count.
    """
    try:
        return hist._below[c]
    except KeyError:
        raise KeyError(f"unknown citation bin {c}") from None


@dataclass(frozen=True)
class ClassScheme:
    """Cumulative percentage boundaries (ending at 100) with one weight per class.

    Class ``k`` covers the percentage interval ``(boundaries[k-1], boundaries[k]]``
    with an implicit lower edge of 0 for the first class.
    """

    boundaries: tuple[Fraction, ...]
    weights: tuple[Fraction, ...]
    name: str = "custom"

    def __post_init__(self) -> None:
        bounds = tuple(as_rational(b) for b in self.boundaries)
        weights = tuple(as_rational(w) for w in self.weights)
        if not bounds:
            raise ValueError("class scheme needs at least one class")
        if len(bounds) != len(weights):
            raise ValueError(
                f"{len(bounds)} boundaries but {len(weights)} weights"
            )
        prev = Fraction(0)
        for b in bounds:
            if b <= prev:
                raise ValueError(f"boundaries must be strictly increasing and positive: {bounds}")
            prev = b
        if bounds[-1] != 100:
            raise ValueError(f"last boundary must be 100, got {bounds[-1]}")
        if any(w <= 0 for w in weights):
            raise ValueError("class weights must be positive")
        object.__setattr__(self, "boundaries", bounds)
        object.__setattr__(self, "weights", weights)

    def weight_of(self, class_number: int) -> Fraction:
        return self.weights[class_number - 1]

    @classmethod
    def six_pr(cls) -> ClassScheme:
        return cls((50, 75, 90, 95, 99, 100), (1, 2, 3, 4, 5, 6), name="6pr")

    @classmethod
    def equal_classes(cls, k: int) -> ClassScheme:
        """``k`` equally wide classes weighted 1..k (k=100 gives percentiles as weights)."""
        step = Fraction(100, k)
        return cls(tuple(step * i for i in range(1, k + 1)), tuple(range(1, k + 1)), name=f"{k}pr")

    def __len__(self) -> int:
        return len(self.boundaries)

    @property
    def lower_edges(self) -> tuple[Fraction, ...]:
        return (Fraction(0),) + self.boundaries[:-1]

    @property
    def widths(self) -> tuple[Fraction, ...]:
        return tuple(hi - lo for lo, hi in zip(self.lower_edges, self.boundaries))

    @property
    def min_weight(self) -> Fraction:
        return min(self.weights)

    @property
    def max_weight(self) -> Fraction:
        return max(self.weights)

    def class_number(self, percentage: Fraction, inclusive: bool = False) -> int:
        """1-based class for ``percentage``.

        With ``inclusive=False`` the first class whose boundary is strictly
        greater is chosen (``p < b``); with ``inclusive=True`` the boundary
        itself belongs to the class (``p <= b``).
        """
        for k, b in enumerate(self.boundaries, start=1):
            if percentage < b or (inclusive and percentage == b):
                return k
        raise ValueError(f"percentage {percentage} lies beyond the last boundary")


SIX_PR = ClassScheme.six_pr()


def theoretical_mean(scheme: ClassScheme) -> Fraction:
    """Mean weight of an infinitely fine reference set: sum(width * weight) / 100."""
    return sum((w * x for w, x in zip(scheme.widths, scheme.weights)), Fraction(0)) / 100


def sign(x: Number) -> int:
    return (x > 0) - (x < 0)
