"""The maximal function of a step weight, computed exactly.

Every interval average of a step weight is a chord slope of its piecewise
linear prefix integral, so the supremum over intervals reduces to a finite
list of chords.  This script prints M phi on a few points together with the
interval that attains it, then checks the result against a brute-force
search over a fine grid of intervals.
"""

import numpy as np

from a1lab.maximal import maximal_at, maximal_values
from a1lab.weights import PiecewiseConstantWeight

w = PiecewiseConstantWeight([0.0, 0.5, 1.0], [2.0, 1.0])
print("weight: 2 on (0, 1/2), 1 on (1/2, 1)")
for x in (0.25, 0.5, 0.75, 0.95):
    m = maximal_at(w, x)
    print(f"  M phi({x}) = {m.value:.6f}  witness {m.witness}")

# On the right half the best interval reaches back to 0: average (1 + (x - 1/2)) / x.
x = 0.75
print(f"closed form at x = {x}: {(1 + (x - 0.5)) / x:.6f}")

# Brute force over all grid intervals (a, b) with a < x < b.
n = 400
grid = np.linspace(0.0, 1.0, n + 1)
P = np.concatenate(([0.0], np.cumsum(w(grid[:-1] + 0.5 / n) / n)))
for x in (0.3, 0.6, 0.9):
    i = int(np.searchsorted(grid, x))
    avgs = (P[i:, None] - P[None, :i]) / (grid[i:, None] - grid[None, :i])
    print(f"  x = {x}: exact {maximal_values(w, [x])[0]:.6f}, grid search {avgs.max():.6f}")

w3 = PiecewiseConstantWeight([0.0, 0.2, 0.3, 1.0], [1.0, 6.0, 2.0])
xs = np.linspace(0.05, 0.95, 10)
print("\nthree pieces, values 1, 6, 2:")
for x, m in zip(xs, maximal_values(w3, xs)):
    print(f"  {x:.2f}  {m:.6f}  phi = {w3(x):g}")
