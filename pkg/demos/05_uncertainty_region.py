# Error pairs of covariant approximators and the number-phase comparison.
import math

from numphase import (
    DensityState, KernelJoint, ProbCircle, ProbInt, TorusWindow, embed_joint_to_z,
    error_sum_check, kernel_joint_phase_error_bounds, oscillator_torus_ground,
    strict_subset_evidence, trace_boundary,
)

# the oscillator ground state is the best approximator for equal weights
rep = oscillator_torus_ground()
sigma = DensityState.pure(TorusWindow(int(rep.indices[0]), int(rep.indices[-1])), rep.vector)
print(error_sum_check(sigma))

# e_0 only smears the position
print(error_sum_check(DensityState.basis(TorusWindow.symmetric(2), 0)).total, math.pi**2 / 3)

# trade-off curve: more weight on the angle, less angle error
for p in trace_boundary("torus", [0.1, 0.3, 0.5, 0.7, 0.9]).points:
    print(f"t={p.t:.1f}  d1={p.point.d1:.4f}  d2={p.point.d2:.4f}")

# number-state candidates stay above the torus curve here; this is evidence, not a proof
for t, f, g, gap in strict_subset_evidence([0.25, 0.5, 0.75]):
    print(f"t={t}  fock={f:.5f}  torus={g:.5f}  gap={gap:.5f}")

# moving a number-smeared observable to T x Z keeps its number error
nu = ProbInt.from_atoms([0, 1], [0.5, 0.5])
emb = embed_joint_to_z(KernelJoint.smeared(6, ProbCircle.point(0.0), nu))
print("per-k errors:", sorted(set(round(e, 12) for e in emb.errors.values())), "deviation:", emb.max_deviation)

# phase errors with a sharp number margin sit between pi/sqrt(3) and pi
print(kernel_joint_phase_error_bounds(KernelJoint.sharp_number([ProbCircle.uniform_grid(512)] * 8)).exact)
print(kernel_joint_phase_error_bounds(KernelJoint.sharp_number([ProbCircle.point(1.0)] * 8)).exact)
even_odd = [ProbCircle.point(0.0) if n % 2 == 0 else ProbCircle.point(math.pi) for n in range(8)]
print(kernel_joint_phase_error_bounds(KernelJoint.sharp_number(even_odd)))
