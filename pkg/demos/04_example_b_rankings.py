"""
Four scientists in a shared reference set
=========================================

H, M and L stop publishing after B1; the newcomer N adds 45 papers and 27
citations over 72 steps. Their rankings still move, because every N step
shifts the percentages of everyone else's papers.
"""

# %%
from percentrank import SIX_PR, i3, per_owner_report
from percentrank.evolution import example_b_like, replay
from percentrank.scoring import BASELINE, ScoringPolicy, TiePolicy

scenario = example_b_like()
snaps = replay(scenario)
end = snaps[-1]
print(f"{len(snaps)} cases, final {end.label}: {end.n_tot} papers, {end.total_citations} citations")

# %%
# The largest single-step jumps of the lowest-rank I3.
series = [i3(s) for s in snaps]
jumps = sorted(range(1, len(series)), key=lambda k: series[k] - series[k - 1], reverse=True)[:3]
for k in sorted(jumps):
    print(f"{snaps[k - 1].label}->{snaps[k].label}: I3 {series[k - 1]} -> {series[k]}")

# %%
# Rank order of H, M, L: a change means the newcomer reshuffled the incumbents.
avg_weight = ScoringPolicy(ties=TiePolicy.AVERAGE_WEIGHT)


def order(rep) -> str:
    """Incumbents best first, ties joined with '='."""
    ranked = sorted("HML", key=lambda o: (rep.per_owner[o].rank, o))
    out = ranked[0]
    for prev, o in zip(ranked, ranked[1:]):
        out += ("=" if rep.per_owner[o].rank == rep.per_owner[prev].rank else ">") + o
    return out

for policy in (BASELINE, avg_weight):
    orders = [order(per_owner_report(s, SIX_PR, policy)) for s in snaps]
    changes = sum(a != b for a, b in zip(orders, orders[1:]))
    print(f"{policy}: H/M/L order changes {changes} times; B1..B8: {' '.join(orders[:8])}")
