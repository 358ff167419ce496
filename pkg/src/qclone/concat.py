"""Clone-then-delete pipelines.

The canonical composition follows the source's bookkeeping: the copier's
machine kets act as orthogonal branch labels whose weights multiply the
branch amplitudes, the identical-copies branch hands its label to the
deleter machine, and the joint state is renormalized by 1/sqrt(1 + 2 xi).
A fully physical composition (unitary after unitary, machines kept) is a
different channel and is exposed separately for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cloners import MachineSpec, build_machine
from .deleters import DeleterSpec, build_deleter, _spec_blank
from .qcore import DensityOperator, StateVector, partial_trace

_GL_NODES = 64


@dataclass(frozen=True)
class PipelineSpec:
    cloner: MachineSpec
    deleter: DeleterSpec


def _cloner_xi(spec: MachineSpec) -> float:
    if spec.family == "wz":
        return 0.0
    if spec.family == "bh":
        return float(spec.params[0])
    if spec.family == "bh-opt":
        return 1 / 6
    raise ValueError(
        "pipelines are defined for the basis copier (wz) and the "
        f"two-parameter copier family (bh), not {spec.family!r}"
    )


def _deleter_action(spec: DeleterSpec):
    """Deleter columns on |00>, |11> and on |01> + |10>."""
    if spec.family not in ("pb", "sdep"):
        raise ValueError("pipelines use the conditional deleter families (pb, sdep)")
    machine = build_deleter(spec)
    v = machine.matrix
    ident0 = v[:, 0]
    ident1 = v[:, 3]
    passthrough = v[:, 1] + v[:, 2]
    return machine, ident0, ident1, passthrough


def pipeline_state(spec: PipelineSpec, alpha2: float):
    """The renormalized post-deletion pure state of the canonical pipeline.

    Subsystems: kept qubit, deleted qubit, deleter machine, branch label
    (identical branch, then the two pass-through labels carrying sqrt(xi)).
    """
    if not 0.0 <= alpha2 <= 1.0:
        raise ValueError("alpha^2 must lie in [0, 1]")
    xi = _cloner_xi(spec.cloner)
    alpha = math.sqrt(alpha2)
    beta = math.sqrt(1 - alpha2)
    machine, ident0, ident1, passthrough = _deleter_action(spec.deleter)
    mdim = machine.out_dims[-1]
    dims = (2, 2, mdim, 3)
    amps = np.zeros((4 * mdim, 3), dtype=complex)
    amps[:, 0] = alpha * ident0 + beta * ident1
    amps[:, 1] = math.sqrt(xi) * alpha * passthrough
    amps[:, 2] = math.sqrt(xi) * beta * passthrough
    vec = amps.reshape(-1)
    vec = vec / np.linalg.norm(vec)
    return StateVector(dims, vec)


def run_pipeline(spec: PipelineSpec, alpha2: float):
    """(distortion of the kept qubit, deletion fidelity) at one input."""
    state = pipeline_state(spec, alpha2)
    rho = state.density()
    rho_x = partial_trace(rho, [0]).mat
    rho_y = partial_trace(rho, [1]).mat
    alpha = math.sqrt(alpha2)
    beta = math.sqrt(1 - alpha2)
    psi = np.array([alpha, beta], dtype=complex)
    ideal = np.outer(psi, psi.conj())
    diff = rho_x - ideal
    distortion = float(np.real(np.trace(diff @ diff)))
    target = _spec_blank(spec.deleter).vec
    fidelity = float(np.real(target.conj() @ rho_y @ target))
    return distortion, fidelity


def pipeline_averages(spec: PipelineSpec, nodes: int = _GL_NODES):
    """Quadrature averages of (distortion, deletion fidelity) over alpha^2."""
    x, w = np.polynomial.legendre.leggauss(nodes)
    t = (x + 1) / 2
    w = w / 2
    d_total = f_total = 0.0
    for ti, wi in zip(t, w):
        d, f = run_pipeline(spec, ti)
        d_total += wi * d
        f_total += wi * f
    return d_total, f_total


# ---------------------------------------------------------------------------
# closed forms


def _sdep_gh(spec: DeleterSpec):
    a0, a1, b0, b1 = spec.params[:4]
    g = a0 + a1
    h = b0 + b1
    return abs(g) ** 2, abs(h) ** 2


def closed_form_pointwise(spec: PipelineSpec, alpha2: float):
    """Closed-form (distortion, fidelity) of the canonical pipeline."""
    xi = _cloner_xi(spec.cloner)
    ab2 = alpha2 * (1 - alpha2)
    blank = _spec_blank(spec.deleter)
    if spec.deleter.family == "pb":
        gg = hh = 1.0
    else:
        gg, hh = _sdep_gh(spec.deleter)
    norm = 1 + (gg + hh) * xi
    m2 = abs(blank.m2) ** 2
    beta2 = 1 - alpha2
    distortion = 2 * ab2 + 2 * xi**2 * (gg * beta2 - hh * alpha2) ** 2 / norm**2
    fidelity = (1 + xi * m2 * (gg - hh) + xi * hh) / norm
    return distortion, fidelity


def closed_form_averages(spec: PipelineSpec):
    """Closed-form averages over alpha^2 of the canonical pipeline."""
    xi = _cloner_xi(spec.cloner)
    if spec.deleter.family == "pb":
        gg = hh = 1.0
    else:
        gg, hh = _sdep_gh(spec.deleter)
    norm = 1 + (gg + hh) * xi
    avg_d = 1 / 3 + 2 * xi**2 * (gg**2 + hh**2 - gg * hh) / (3 * norm**2)
    blank = _spec_blank(spec.deleter)
    m2 = abs(blank.m2) ** 2
    avg_f = (1 + xi * m2 * (gg - hh) + xi * hh) / norm
    return avg_d, avg_f


def bh_pb_distortion(xi: float, alpha2: float) -> float:
    ab2 = alpha2 * (1 - alpha2)
    return (2 * xi**2 + 2 * ab2 * (1 + 4 * xi)) / (1 + 2 * xi) ** 2


def bh_pb_avg_distortion(xi: float) -> float:
    return (6 * xi**2 + 4 * xi + 1) / (3 * (1 + 2 * xi) ** 2)


def bh_pb_fidelity(xi: float) -> float:
    return (1 + xi) / (1 + 2 * xi)


# ---------------------------------------------------------------------------
# the fully physical composition, for comparison


def run_pipeline_physical(spec: PipelineSpec, alpha2: float):
    """Unitary-after-unitary composition with all machines kept and traced.

    Requires a realizable copier (xi >= 1/6 in the two-parameter family, or
    the basis copier).
    """
    cloner = build_machine(spec.cloner)
    deleter = build_deleter(spec.deleter)
    alpha = math.sqrt(alpha2)
    beta = math.sqrt(1 - alpha2)
    psi = np.array([alpha, beta], dtype=complex)
    out = cloner.matrix @ psi  # (x, y, M_c)
    mdim_c = cloner.out_dims[-1]
    t = out.reshape(4, mdim_c)
    full = np.tensordot(deleter.matrix, t, axes=([1], [0]))  # (x y M_d, M_c)
    dims = deleter.out_dims + (mdim_c,)
    rho = DensityOperator(dims, np.outer(full.reshape(-1), full.reshape(-1).conj()))
    rho_x = partial_trace(rho, [0]).mat
    rho_y = partial_trace(rho, [1]).mat
    ideal = np.outer(psi, psi.conj())
    diff = rho_x - ideal
    distortion = float(np.real(np.trace(diff @ diff)))
    target = _spec_blank(spec.deleter).vec
    fidelity = float(np.real(target.conj() @ rho_y @ target))
    return distortion, fidelity
