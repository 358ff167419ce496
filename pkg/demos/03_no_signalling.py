"""Why imperfect copiers cannot signal.

A hypothetical perfect cloner would let the receiving side of a shared
singlet distinguish which basis the sender measured (two different two-qubit
ensembles).  Replace the impossible device with any machine from the catalog
and the ensembles coincide exactly.
"""

import numpy as np

from qclone import MachineSpec
from qclone.cloners import build_machine
from qclone.measures import herbert_ensembles, herbert_gap_with_machine

rho_x, rho_z, gap = herbert_ensembles()
print("=== perfect-cloner ensembles at the receiver ===")
print("after a sideways measurement:")
print(np.round(rho_x.mat.real, 3))
print("after an up/down measurement:")
print(np.round(rho_z.mat.real, 3))
print(f"distance between them: {gap:.4f}  <- the (impossible) signal")

print("\n=== the same experiment with physical machines ===")
for family, params in [
    ("bh-opt", ()),
    ("wz", ()),
    ("pc2", ()),
    ("pauli-asym", (0.3,)),
    ("anti", ()),
]:
    machine = build_machine(MachineSpec(family, params))
    g = herbert_gap_with_machine(machine)
    print(f"  {family:12s}: ensemble gap = {g:.2e}")
print("every linear machine erases the distinction; no machine signals")
