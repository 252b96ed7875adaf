"""Percentile-rank-class citation indicators (I3, R) with exact arithmetic.

Weights for six (or any number of) percentile rank classes are assigned under
several counting rules and tie policies, or by fractional scoring; datasets
can be evolved step by step and the resulting owner rankings audited for
consistency.
"""

from .core import (
    SIX_PR,
    UNATTRIBUTED,
    CitationHistogram,
    ClassScheme,
    Dataset,
    Paper,
    ReferenceSetError,
    fewer_than,
    histogram,
    theoretical_mean,
)
from .scoring import (
    BASELINE,
    FRACTIONAL,
    CountingRule,
    IndicatorReport,
    OwnerRecord,
    RankBasis,
    ScoringPolicy,
    TiePolicy,
    WeightedPaper,
    i3,
    per_owner_report,
    r_indicator,
    weigh,
)
from .evolution import (
    Delta,
    ReplayError,
    Scenario,
    SynthConfig,
    example_a,
    example_b_endpoints,
    example_b_like,
    example_tied_crossing,
    replay,
    synth_scenario,
)
from .audit import (
    OwnerDelta,
    Violation,
    same_improvement_violations,
    strict_independence_violations,
)

__version__ = "0.1.0"
