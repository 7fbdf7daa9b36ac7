"""Decreasing rearrangement.

Sorting the pieces by value keeps every distribution function
|{phi > lam}| unchanged, and the averaged condition
(1/t) int_0^t phi* <= c phi*(t) holds with the A1 constant of the original.
The rearranged weight is never worse in A1 terms.
"""

from a1lab.maximal import a1_constant_exact
from a1lab.rearrangement import check_star_a1, distribution, rearrange
from a1lab.weights import PiecewiseConstantWeight, random_weight

w = PiecewiseConstantWeight([0.0, 0.25, 0.5, 1.0], [1.0, 4.0, 2.0])
star = rearrange(w)
print("phi  :", w.breakpoints.tolist(), w.values.tolist())
print("phi* :", star.breakpoints.tolist(), star.values.tolist())
for lam in (0.5, 1.0, 1.5, 3.0):
    print(f"  |{{phi > {lam}}}| = {distribution(w, lam)}  |{{phi* > {lam}}}| = {distribution(star, lam)}")

c = a1_constant_exact(w).constant
chk = check_star_a1(star, c)
print(f"[phi]_A1 = {c:.6f}, [phi*]_A1 = {a1_constant_exact(star).constant:.6f}")
print(f"worst (1/t) int_0^t phi* / phi*(t) = {chk.worst_ratio:.6f} at t = {chk.worst_t}, holds: {chk.holds}")

print("\nrandom weights:")
for seed in range(5):
    w = random_weight(seed)
    c, cs = a1_constant_exact(w).constant, a1_constant_exact(rearrange(w)).constant
    print(f"  seed {seed}: [phi] = {c:.4f}  [phi*] = {cs:.4f}")
