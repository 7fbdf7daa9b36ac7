"""Cost of the hull-based breakpoint sweep against brute force.

Both produce bit-identical one-sided limits of M phi.  The sweep does
O(k log k) chord and orientation evaluations; brute force evaluates all
O(k^2) chords.
"""

import math
import time

import numpy as np

from a1lab.maximal import maximal_at_all_breakpoints_brute, maximal_at_all_breakpoints_fast
from a1lab.weights import PiecewiseConstantWeight

print("     k   fast work  work/(k log2 k)   fast s   brute s  identical")
for e in range(8, 14):
    k = 2**e
    rng = np.random.default_rng(e)
    x = np.concatenate(([0.0], np.sort(rng.uniform(0, 1, k - 1)), [1.0]))
    w = PiecewiseConstantWeight(x, np.exp(rng.uniform(math.log(0.5), math.log(8.0), k)))
    stats = {}
    t0 = time.perf_counter()
    fast = maximal_at_all_breakpoints_fast(w, stats)
    tf = time.perf_counter() - t0
    t0 = time.perf_counter()
    brute = maximal_at_all_breakpoints_brute(w)
    tb = time.perf_counter() - t0
    same = all((a.left, a.right) == (b.left, b.right) for a, b in zip(fast, brute))
    print(f"{k:6d} {stats['work']:11d} {stats['work'] / (k * math.log2(k)):16.3f} {tf:8.4f} {tb:9.4f}  {same}")
