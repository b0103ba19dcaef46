# How much of |0><0| fits under a truncated phase effect, and the Lenard cap.
import math

from numphase import ArcSet, FockWindow, complementarity_decay, lenard_bound, max_scalar_below, phase_effect

half = ArcSet.interval(0, math.pi)

# small sections: double precision is still fine
for k in (2, 4, 8):
    print(k, max_scalar_below(phase_effect(half, FockWindow(k)), 0))

# larger ones need extended precision; the values only go down
for k, a in complementarity_decay(half, (8, 16, 32, 64, 128, 256)):
    print(f"k={k:4d}  alpha_max={a:.3e}")

# two overlapping predictions: Phi(X) + N(Y) stays below 1 + sqrt(a+) < 2
r = lenard_bound(half, [0, 1], FockWindow(64))
print(f"a+ = {r.a_plus:.6f}  cap = {r.bound:.6f}  largest eigenvalue at dim 64 = {r.truncated_sup:.6f}")

for Y in ([0], [0, 1, 2], [0, 1, 2, 3, 4]):
    r = lenard_bound(ArcSet.interval(0, 2.0), Y, FockWindow(128))
    print(Y, round(r.truncated_sup, 5), "<=", round(r.bound, 5))
