"""From homology counts to a network width recommendation.

Representative counts measured on a large image dataset are fed to the
estimator: each H_k votes independently for a circle count q_k via the
nearest binomial coefficient C(q, k), the votes are aggregated into an
embedding dimension, and the width interval doubles it on both ends.
Run with:  python3 demos/width_from_counts.py
"""

from homodim import HomologyCounts, estimate

# two measurement rows: counts for H_0 .. H_4 of the same dataset
rows = [
    (12, 16, 40, 59, 50),
    (13, 18, 34, 46, 48),
]

for counts in rows:
    de = estimate(HomologyCounts(counts))
    votes = "  ".join(f"H_{qe.k}: q={qe.q} +/-{qe.residual}"
                      for qe in de.q_estimates)
    print(f"counts {counts}")
    print(f"  p = {de.p}   {votes}")
    print(f"  dim U = {de.dim_u} +/-{de.uncertainty}"
          f"   width interval {list(de.width_interval)}")
