"""A1 constants: exact candidate reduction versus a direct interval scan.

The exact routine examines the one-sided limits of M phi / phi at the
breakpoints.  The scan takes the supremum of average / essinf over a nested
grid of intervals and approaches the exact value from below as the mesh
shrinks.
"""

from a1lab.maximal import a1_constant_exact, a1_constant_interval_scan
from a1lab.weights import PiecewiseConstantWeight, PowerWeight, random_weight

w = PiecewiseConstantWeight([0.0, 0.5, 1.0], [2.0, 1.0])
r = a1_constant_exact(w)
print(f"two-piece weight: [phi]_A1 = {r.constant} at x = {r.argmax_breakpoint} ({r.side})")

for c in (1.5, 2.0, 4.0):
    print(f"power weight t^(-1 + 1/{c}): [phi]_A1 = {a1_constant_exact(PowerWeight(c)).constant}")

print("\nrandom weights, exact value and scans at decreasing mesh:")
for seed in range(4):
    w = random_weight(seed, max_pieces=6)
    exact = a1_constant_exact(w).constant
    scans = [a1_constant_interval_scan(w, mesh) for mesh in (1e-1, 1e-2, 1e-3)]
    print(f"  seed {seed} ({w.k} pieces): exact {exact:.6f}  scans " + "  ".join(f"{s:.6f}" for s in scans))
