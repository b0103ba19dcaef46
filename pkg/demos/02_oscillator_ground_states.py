# Ground energies of P^2 + Q^2 on L^2(T) and of N^2 + Phi[2] on the number states.
from numphase import oscillator_fock_ground, oscillator_torus_ground, finite_section_ground

torus = oscillator_torus_ground()
print("torus sections:", torus.dims)
for k, a in zip(torus.dims, torus.alphas):
    print(f"  [-{k},{k}]  alpha = {a:.10f}")
print("E~0 =", round(torus.value, 6))
print("|c_s|, s = 0..4:", [round(m, 4) for m in torus.magnitudes(range(5))])
print("c_s - c_-s:", max(abs(torus.coefficient(s) - torus.coefficient(-s)) for s in range(1, 20)))

fock = oscillator_fock_ground()
for k, a in zip(fock.dims, fock.alphas):
    print(f"  dim {k:3d}  alpha = {a:.10f}")
print("E0 =", round(fock.value, 6))
print("|c_n|, n = 0..4:", [round(m, 4) for m in fock.magnitudes(range(5))])

# the sections never go up
print("monotone:", all(b <= a for a, b in zip(fock.alphas, fock.alphas[1:])))

# halfway weighting is half the oscillator
print(finite_section_ground("torus", 0.5).value, torus.value / 2)
