# Canonical phase effects on a truncated Fock space.
import math

import numpy as np

from numphase import (
    ArcSet, DensityState, FockWindow, phase_effect, phase_shift_conjugate,
    state_phase_distribution,
)
from numphase.linalg import operator_norm

half = ArcSet.interval(0, math.pi)
E = phase_effect(half, FockWindow(4))
print(np.round(E, 4))

# every diagonal entry is the normalized arc length
print("diagonal:", np.real(np.diag(E)))

# rotating the effect by pi gives the other half circle
F = phase_shift_conjugate(E, math.pi)
print("covariance error:", np.max(np.abs(F - phase_effect(half.shifted(math.pi), FockWindow(4)))))

# small arcs: the norm creeps up to one as the window grows
arc = ArcSet.from_intervals([(-0.05, 0.05)])
for K in (16, 64, 256, 512):
    print(K, operator_norm(phase_effect(arc, FockWindow(K))))

# a number state has a flat phase distribution
cells = [ArcSet.interval(2 * math.pi * j / 6, 2 * math.pi * (j + 1) / 6) for j in range(6)]
rho = DensityState.basis(FockWindow(8), 5)
print("phase histogram of |5>:", state_phase_distribution(rho, cells))

# a superposition is not
psi = np.ones(8) / math.sqrt(8)
print("phase histogram of sum |n>:", np.round(state_phase_distribution(DensityState.pure(FockWindow(8), psi), cells), 4))
