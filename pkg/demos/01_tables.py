"""
Percentile rank classes on a 40-paper set
==========================================

Each tied citation group gets a percentage (share of papers with fewer
citations), a class in the six-class scheme and a weight. One citation moved
from an uncited paper to the singly cited group sends ten papers down a class.
"""

# %%
from percentrank import Dataset, i3, r_indicator
from percentrank.evolution import example_a, replay
from percentrank.io import HALF_UP, render_decimal
from percentrank.scoring import group_weights

a1 = Dataset.from_counts("A1", {0: 20, 1: 10, 3: 6, 5: 2, 7: 2})


def show(ds: Dataset) -> None:
    print(f"{ds.label}: {'c':>3} {'n':>3} {'%':>6} {'class':>5} {'w':>3}")
    counts = {}
    for p in ds.papers:
        counts[p.citations] = counts.get(p.citations, 0) + 1
    for c, (pct, k, w) in sorted(group_weights(ds).items()):
        print(f"    {c:>3} {counts[c]:>3} {float(pct):>6.1f} {k:>5} {int(w):>3}")
    print(f"    I3 = {i3(ds)}, R = {r_indicator(ds)}\n")


show(a1)

# %%
# A2: one uncited paper receives its first citation.
a2 = replay(example_a())[1]
show(a2)

# %%
# The whole series: each step gives one more citation to the least cited
# group that still has a paper, and I3 wobbles while citations only grow.
for snap in replay(example_a()):
    r = r_indicator(snap)
    print(f"{snap.label}: citations={snap.total_citations:>3}  I3={int(i3(snap)):>3}  "
          f"R={str(r):>6} ~ {render_decimal(r, 2, HALF_UP)}")
