"""
Auditing rankings for consistency
=================================

Strict independence: one owner's change must not flip two others.
Same improvement: two owners with identical changes keep their order.
Both audits replay a scenario and compare exact score differences.
"""

# %%
from percentrank import SIX_PR
from percentrank.audit import same_improvement_violations, strict_independence_violations
from percentrank.evolution import example_b_like, example_tied_crossing, synth_scenario, SynthConfig
from percentrank.scoring import BASELINE, FRACTIONAL, ScoringPolicy, TiePolicy

avg_weight = ScoringPolicy(ties=TiePolicy.AVERAGE_WEIGHT)
policies = {"lowest rank": BASELINE, "average weight": avg_weight, "fractional": FRACTIONAL}

b_like = example_b_like()
for name, policy in policies.items():
    found = strict_independence_violations(b_like, SIX_PR, policy)
    print(f"b-like, {name:<14}: {len(found):>3} strict-independence violations")
    for v in found[:2]:
        print("    ", v.describe())

# %%
crossing = example_tied_crossing()
for name, policy in policies.items():
    found = same_improvement_violations(crossing, SIX_PR, policy)
    print(f"tied crossing, {name:<14}: {len(found)} same-improvement violations")
    for v in found:
        print("    ", v.describe())

# %%
# Random scenarios: how often does each policy break strict independence?
config = SynthConfig(owners=4, steps=15)
for name, policy in policies.items():
    hits = sum(bool(strict_independence_violations(synth_scenario(seed, config), SIX_PR, policy))
               for seed in range(100))
    print(f"{name:<14}: {hits}/100 random scenarios with a violation")
