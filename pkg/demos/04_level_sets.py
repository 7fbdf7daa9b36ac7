"""Level sets of the maximal function and the layer-cake identity.

E_lam = {M phi > lam} is computed as an exact union of open intervals.  For
lam at or above the mean f each component carries average at most lam, so
|E_lam| >= (1/lam) int_{E_lam} phi.  Integrating p lam^(p-1) |E_lam| over lam
recovers int (M phi)^p.
"""

import numpy as np

from a1lab.levelsets import check_level_bound, layer_cake_check, level_set
from a1lab.maximal import a1_constant_exact
from a1lab.weights import PiecewiseConstantWeight

w = PiecewiseConstantWeight([0.0, 0.5, 1.0], [2.0, 1.0])
ls = level_set(w, 1.8)
b = check_level_bound(w, 1.8)
print(f"lam = 1.8: components {[(I.lo, I.hi) for I in ls.components]}")
print(f"  |E| = {b.measure}, (1/lam) int_E phi = {b.mass_over_lambda}  (equality)")

w3 = PiecewiseConstantWeight([0.0, 0.2, 0.3, 0.7, 0.8, 1.0], [1.0, 5.0, 1.0, 4.0, 1.0])
print(f"\nfive pieces, mean f = {w3.total_mass:g}")
for lam in np.linspace(w3.total_mass, 4.5, 5):
    ls = level_set(w3, lam)
    comps = ", ".join(f"({I.lo:.4f}, {I.hi:.4f})" for I in ls.components)
    print(f"  lam = {lam:.3f}: |E| = {ls.measure:.4f}  {comps}")

c = a1_constant_exact(w3).constant
print(f"[phi]_A1 = {c:.4f}, so p must stay below {c / (c - 1):.4f}")
for p in (1.05, 1.2):
    r = layer_cake_check(w3, p)
    print(f"layer cake p = {p}: int (M phi)^p = {r.lhs:.10f}, int p lam^(p-1)|E| = {r.rhs:.10f}")
