"""Tour of the cloning-machine catalog.

Every machine is an isometry taking the input system to (clones x machine);
running one is: build, apply, partial-trace, measure quality.
"""

import numpy as np

from qclone import MachineSpec, StateVector, clone_report
from qclone.cloners import gm_fidelity, pauli_fidelities, pc2_fidelity, uqcm_fidelity

rng = np.random.default_rng(1)


def random_qubit():
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return StateVector((2,), v / np.linalg.norm(v))


print("=== the basis copier is state dependent ===")
for alpha2 in (0.0, 0.25, 0.5):
    psi = StateVector((2,), [np.sqrt(alpha2), np.sqrt(1 - alpha2)])
    rep = clone_report(MachineSpec("wz"), psi)
    print(f"  alpha^2 = {alpha2:.2f}: copy quality D_a = {rep.D_a:.4f}")

print("\n=== the optimal universal copier is not ===")
for _ in range(3):
    rep = clone_report(MachineSpec("bh-opt"), random_qubit())
    print(f"  random input: F = {rep.F_a:.6f} (5/6 = {5/6:.6f}), D_a = {rep.D_a:.6f}")

print("\n=== more copies, lower fidelity ===")
for m in (2, 3, 4, 5, 6):
    rep = clone_report(MachineSpec("gm-1m", (m,)), random_qubit())
    print(f"  1 -> {m}: simulated F = {rep.F_a:.6f}, closed form = {gm_fidelity(1, m):.6f}")

print("\n=== higher dimension, lower fidelity ===")
for d in (2, 3, 5):
    print(f"  d = {d}: universal 1 -> 2 fidelity = {uqcm_fidelity(d):.6f}")

print("\n=== knowing the input family helps ===")
phi = rng.uniform(0, 2 * np.pi)
equatorial = StateVector((2,), np.array([1, np.exp(1j * phi)]) / np.sqrt(2))
rep = clone_report(MachineSpec("pc2"), equatorial)
print(f"  equatorial copier on a random equatorial state: F = {rep.F_a:.6f}")
print(f"  closed form 1/2 + sqrt(1/8) = {pc2_fidelity():.6f} (beats the universal 5/6)")

print("\n=== asymmetry trades quality between the clones ===")
for p in (0.0, 0.3, 0.5, 0.7, 1.0):
    rep = clone_report(MachineSpec("pauli-asym", (p,)), random_qubit())
    f1, f2 = pauli_fidelities(p)
    print(f"  p = {p:.1f}: F1 = {rep.F_a:.4f} ({f1:.4f}), F2 = {rep.F_b:.4f} ({f2:.4f})")

print("\n=== the anti-copier flips the second output ===")
rep = clone_report(MachineSpec("anti"), random_qubit())
print(f"  parallel copy F = {rep.F_a:.4f} (2/3), antiparallel copy F = {rep.F_b:.4f} (1/3)")
