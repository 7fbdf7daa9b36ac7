"""The sharp reverse Hoelder inequality and its extremal weight.

For [phi]_A1 <= c and 1 <= p < c/(c-1),
    (1/|I|) int_I phi^p <= K(c, p) ((1/|I|) int_I phi)^p,
    K(c, p) = 1 / (c^(p-1) (c + p - c p)).
The power weight t^(-1 + 1/c) turns this into an equality, and its p-th
moment blows up as p approaches c/(c-1).
"""

from a1lab.maximal import a1_constant_exact
from a1lab.rhi import integral_inequality_check, rhi_p_grid, sharp_constant, sharpness_sweep, verify_rhi
from a1lab.weights import UNIT, PowerWeight, integrate_p, random_weight

print("power weight c = 2, ratio against K:")
for row in sharpness_sweep(2.0, 6):
    print(f"  p = {row.p:.4f}  ratio = {row.ratio:.6f}  K = {row.sharp_k:.6f}")

for eps in (1e-1, 1e-2, 1e-4):
    p = 2.0 * (1 - eps)
    print(f"  int phi^p at p = {p}: {integrate_p(PowerWeight(2.0), UNIT, p):.4g}")

# intervals inside a single piece see a constant weight, so their margin is exactly 0
print("\nrandom weights on the 31 dyadic intervals of depth 4:")
for seed in range(5):
    w = random_weight(seed)
    c = a1_constant_exact(w).constant
    margins = [r.margin / r.lhs for p in rhi_p_grid(c) for r in verify_rhi(w, p, c=c)]
    print(f"  seed {seed}: c = {c:.4f}, K at the largest p = {sharp_constant(c, rhi_p_grid(c)[-1]):.4f}, "
          f"min relative margin {min(margins):.3e}")

w = random_weight(1)
c = a1_constant_exact(w).constant
r = integral_inequality_check(w, 1 + 0.5 * (c / (c - 1) - 1))
print(f"\nint (p phi M^(p-1) - (p-1) M^p) = {r.lhs:.8f} <= f^p = {r.f_p:.8f}")
