"""Deletion machines and the transformer trick.

Deleting one of two identical copies is bounded away from perfection; a
fixed two-qubit unitary applied after the deleter ("the transformer") lifts
the deletion fidelity from 1/2 to 3/4, and to ~0.85 for the conditional
deleter with the right blank state.
"""

import math

import numpy as np

from qclone import DeleterSpec, StateVector, delete_report
from qclone.deleters import (
    BlankState,
    conv_avg_f3_limit,
    limiting_deletion_fidelity,
    pb_with_transformer,
)

half = StateVector((2,), [math.sqrt(0.5), math.sqrt(0.5)])

print("=== conditional deleter ===")
rep = delete_report(DeleterSpec("pb"), half)
print(f"  equal superposition: retained F_1 = {rep.F_1:.3f}, deleted F_2 = {rep.F_2:.3f}")
print(f"  averages over all inputs: {rep.avg_F_1:.4f} (2/3), {rep.avg_F_2:.4f} (5/6)")

print("\n=== plain universal deleter: F_2 is stuck at 1/2 ===")
for a2 in (0.1, 0.5, 0.9):
    psi = StateVector((2,), [math.sqrt(a2), math.sqrt(1 - a2)])
    rep = delete_report(DeleterSpec("conv", (0.3,)), psi)
    print(f"  alpha^2 = {a2}: F_2 = {rep.F_2:.6f}, machine overlap = {rep.machine_overlap:.4f}")
print("  (the machine overlap is input-independent: nothing hides in the machine)")

print("\n=== one transformer lifts the limit to 3/4 ===")
blank = BlankState(1 / math.sqrt(2), 1 / math.sqrt(2))
spec = DeleterSpec("conv", (0.5 - 1e-6, blank))
rep = delete_report(spec, StateVector((2,), [math.sqrt(0.3), math.sqrt(0.7)]), n_transformers=1)
print(f"  F_2 near the limit: {rep.F_2:.6f} -> 0.75")
print(f"  retained-mode average: {rep.avg_F_1:.4f} -> {conv_avg_f3_limit():.4f}")

print("\n=== the limit depends on the blank state ===")
for m1sq in (0.1, 0.5, 0.9):
    m1, m2 = math.sqrt(m1sq), math.sqrt(1 - m1sq)
    pos = limiting_deletion_fidelity(1, BlankState(m1, m2))
    neg = limiting_deletion_fidelity(1, BlankState(m1, -m2))
    two = limiting_deletion_fidelity(2, BlankState(m1, m2))
    print(f"  m1^2 = {m1sq}: one transformer {pos:.3f} / {neg:.3f}, two transformers {two:.3f}")

print("\n=== conditional deleter + transformer: 0.8536, input-independent ===")
blank = BlankState(1 / math.sqrt(2), -1 / math.sqrt(2))
for a2 in (0.0, 0.5, 1.0):
    _, f2 = pb_with_transformer(blank, StateVector((2,), [math.sqrt(a2), math.sqrt(1 - a2)]))
    print(f"  alpha^2 = {a2}: F_2 = {f2:.6f}")
