"""Catalog of approximate deletion machines and the transformer pipeline.

A deleter is an isometry on two qubits (the copy to keep and the copy to
delete) with the initial machine ket absorbed into the column definitions.
The transformer is a fixed two-qubit unitary applied after deletion to raise
the deletion fidelity; the two-qubit data modes are transformed, the machine
is left alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .qcore import (
    BlankState,
    DensityOperator,
    GramSpec,
    MachineIsometry,
    StateVector,
    bell_state,
    ket,
    kron_all,
    operator_on,
    partial_trace,
    realize_gram,
)

DEFAULT_BLANK = BlankState(1.0, 0.0)

_GL_NODES = 64


@dataclass(frozen=True)
class DeleterSpec:
    family: str  # "pb" | "qiu" | "conv" | "sdep"
    params: tuple = ()

    def __str__(self):
        return f"{self.family}{self.params if self.params else ''}"


@dataclass(frozen=True)
class DeletionReport:
    rho_1: DensityOperator
    rho_2: DensityOperator
    rho_3: Optional[DensityOperator]
    F_1: float
    F_2: float
    machine_overlap: Optional[float]
    avg_F_1: Optional[float]
    avg_F_2: Optional[float]


def transformer() -> np.ndarray:
    """T = |psi+><00| + |11><01| + |psi-><10| + |00><11| (two-qubit unitary)."""
    t = np.zeros((4, 4), dtype=complex)
    t[:, 0] = bell_state("psi+")
    t[:, 1] = kron_all(ket(1), ket(1))
    t[:, 2] = bell_state("psi-")
    t[:, 3] = kron_all(ket(0), ket(0))
    return t


# ---------------------------------------------------------------------------
# builders


def build_pb(blank: BlankState = DEFAULT_BLANK) -> MachineIsometry:
    """Conditional deleter: identical copies are deleted, others pass through.

    Machine kets A (pass-through), A0, A1 are orthonormal.
    """
    a, a0, a1 = ket(0, 3), ket(1, 3), ket(2, 3)
    cols = np.zeros((4 * 3, 4), dtype=complex)
    cols[:, 0] = kron_all(ket(0), blank.vec, a0)
    cols[:, 1] = kron_all(ket(0), ket(1), a)
    cols[:, 2] = kron_all(ket(1), ket(0), a)
    cols[:, 3] = kron_all(ket(1), blank.vec, a1)
    return MachineIsometry((2, 2), (2, 2, 3), cols)


def build_qiu(r1: float = 1.0) -> MachineIsometry:
    """Universal (non-optimal) deleter; a two-qubit unitary, no ancilla.

    The published transformation is inner-product preserving only for
    r1 = +-1 (otherwise the identical-copy columns overlap the pass-through
    columns), so other values are rejected.
    """
    if abs(r1 * r1 - 1.0) > 1e-12:
        raise ValueError(
            "the universal deleter is an isometry only for r1 = +-1; "
            f"got r1 = {r1}"
        )
    r2 = 0.0
    a = np.array([r1, r2], dtype=complex)
    b = np.array([r2, -r1], dtype=complex)
    cols = np.zeros((4, 4), dtype=complex)
    cols[:, 0] = (np.kron(ket(0), a) + np.kron(ket(1), b)) / math.sqrt(2)
    cols[:, 3] = 1j * (np.kron(ket(1), b) - np.kron(ket(0), a)) / math.sqrt(2)
    cols[:, 1] = kron_all(ket(0), ket(1))
    cols[:, 2] = kron_all(ket(1), ket(0))
    return MachineIsometry((2, 2), (2, 2), cols)


def conv_gram(lmbda: float, y: float) -> GramSpec:
    """Joint Gram of the machine kets A, A0, A1, B0, B1, C0, D0."""
    if not 0.0 <= lmbda <= 0.5:
        raise ValueError("lambda must lie in [0, 1/2]")
    labels = ("A", "A0", "A1", "B0", "B1", "C0", "D0")
    g = np.zeros((7, 7))
    norms = [1.0, 1 - 2 * lmbda, 1 - 2 * lmbda, lmbda, lmbda, 2 * lmbda, 1 - 2 * lmbda]
    np.fill_diagonal(g, norms)
    for j in (1, 2, 6):  # <A|A0> = <A|A1> = <A|D0> = Y
        g[0, j] = g[j, 0] = y
    return GramSpec(labels, g)


def conv_max_y(lmbda: float, tol: float = 1e-9) -> float:
    """Largest Y keeping the machine Gram PSD, found by bisection."""
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if np.linalg.eigvalsh(conv_gram(lmbda, mid).gram)[0] >= 0:
            lo = mid
        else:
            hi = mid
    return lo


def _conv_parts(lmbda: float, blank: BlankState, y: Optional[float]):
    if y is None:
        y = conv_max_y(lmbda)
    vecs = realize_gram(conv_gram(lmbda, y))
    rank = vecs.shape[0]
    mdim = max(rank, 2)
    a, a0, a1, b0, b1, c0, d0 = (np.pad(vecs[:, i], (0, mdim - rank)) for i in range(7))
    sigma, sigma_p = blank.vec, blank.perp
    s01 = np.kron(ket(0), ket(1))
    s10 = np.kron(ket(1), ket(0))
    sym = s01 + s10
    cols = np.zeros((4 * mdim, 4), dtype=complex)
    cols[:, 0] = np.kron(np.kron(ket(0), sigma), a0) + np.kron(sym, b0)
    cols[:, 1] = np.kron(np.kron(ket(0), sigma_p), d0) + np.kron(s10, c0)
    cols[:, 2] = np.kron(np.kron(ket(1), sigma), d0) + np.kron(s01, c0)
    cols[:, 3] = np.kron(np.kron(ket(1), sigma_p), a1) + np.kron(sym, b1)
    return MachineIsometry((2, 2), (2, 2, mdim), cols), a, y


def build_conv(
    lmbda: float, blank: BlankState = DEFAULT_BLANK, y: Optional[float] = None
) -> MachineIsometry:
    """Deleter with machine parameter lambda and free blank |Sigma>.

    Y (the overlap of the initial machine ket with A0, A1, D0) defaults to
    the largest value keeping the Gram PSD.
    """
    machine, _, _ = _conv_parts(lmbda, blank, y)
    return machine


def build_sdep(a0, a1, b0, b1, blank: BlankState = DEFAULT_BLANK) -> MachineIsometry:
    """State-dependent deleter: pass-through branches mix |01> and |10>."""
    for ai, bi in ((a0, b0), (a1, b1)):
        if abs(abs(ai) ** 2 + abs(bi) ** 2 - 1.0) > 1e-9:
            raise ValueError("need |a_i|^2 + |b_i|^2 = 1")
    if abs(a0 * np.conj(a1) + b0 * np.conj(b1)) > 1e-9:
        raise ValueError("need a0 a1* + b0 b1* = 0")
    q, qa0, qa1 = ket(0, 3), ket(1, 3), ket(2, 3)
    s01 = np.kron(ket(0), ket(1))
    s10 = np.kron(ket(1), ket(0))
    cols = np.zeros((4 * 3, 4), dtype=complex)
    cols[:, 0] = np.kron(np.kron(ket(0), blank.vec), qa0)
    cols[:, 1] = np.kron(a0 * s01 + b0 * s10, q)
    cols[:, 2] = np.kron(a1 * s01 + b1 * s10, q)
    cols[:, 3] = np.kron(np.kron(ket(1), blank.vec), qa1)
    return MachineIsometry((2, 2), (2, 2, 3), cols)


_BUILDERS = {
    "pb": build_pb,
    "qiu": build_qiu,
    "conv": build_conv,
    "sdep": build_sdep,
}


def build_deleter(spec: DeleterSpec) -> MachineIsometry:
    try:
        builder = _BUILDERS[spec.family]
    except KeyError:
        raise ValueError(f"unknown deleter family {spec.family!r}") from None
    return builder(*spec.params)


def _spec_blank(spec: DeleterSpec) -> BlankState:
    if spec.family == "pb":
        return spec.params[0] if spec.params else DEFAULT_BLANK
    if spec.family == "conv":
        return spec.params[1] if len(spec.params) > 1 else DEFAULT_BLANK
    if spec.family == "sdep":
        return spec.params[4] if len(spec.params) > 4 else DEFAULT_BLANK
    return DEFAULT_BLANK


def _initial_machine_vector(spec: DeleterSpec, machine: MachineIsometry):
    if spec.family in ("pb", "sdep"):
        return ket(0, 3)
    if spec.family == "conv":
        lmbda = spec.params[0]
        blank = _spec_blank(spec)
        y = spec.params[2] if len(spec.params) > 2 else None
        _, a, _ = _conv_parts(lmbda, blank, y)
        return a
    return None


def deletion_target(spec: DeleterSpec) -> np.ndarray:
    """The ket the deleted mode is compared against: |Sigma'> for the
    Gram-parameterized deleter, |Sigma> for the conditional families."""
    blank = _spec_blank(spec)
    if spec.family == "conv":
        return (blank.vec + blank.perp) / math.sqrt(2)
    return blank.vec


def apply_deleter(spec: DeleterSpec, state: StateVector, n_transformers: int = 0) -> DensityOperator:
    """Deleter (plus optional transformers on the data qubits) on a 2-qubit input."""
    if n_transformers not in (0, 1, 2):
        raise ValueError("only 0, 1 or 2 transformers are analyzed")
    machine = build_deleter(spec)
    if state.dims != (2, 2):
        raise ValueError("deleters act on two qubits")
    out = machine.matrix @ state.amps
    rho = DensityOperator(machine.out_dims, np.outer(out, out.conj()))
    if n_transformers:
        t = transformer()
        t_full = operator_on(np.linalg.matrix_power(t, n_transformers), [0, 1], rho.dims)
        rho = DensityOperator(rho.dims, t_full @ rho.mat @ t_full.conj().T)
    return rho


def _pair_state(psi: StateVector) -> StateVector:
    return StateVector((2, 2), np.kron(psi.amps, psi.amps))


def delete_report(spec: DeleterSpec, state: StateVector, n_transformers: int = 0) -> DeletionReport:
    """Delete one copy of psi from psi x psi and report all fidelities.

    ``state`` is the single-qubit input; averages integrate alpha^2 over
    [0, 1] for the real-amplitude family (64-node Gauss-Legendre).
    """
    if state.dims != (2,):
        raise ValueError("delete_report expects the single-qubit input state")
    rho = apply_deleter(spec, _pair_state(state), n_transformers)
    rho_1 = partial_trace(rho, [0])
    rho_2 = partial_trace(rho, [1])
    has_machine = len(rho.dims) > 2
    rho_3 = partial_trace(rho, [2]) if has_machine else None
    f1 = float(np.real(state.amps.conj() @ rho_1.mat @ state.amps))
    target = deletion_target(spec)
    f2 = float(np.real(target.conj() @ rho_2.mat @ target))
    overlap_m = None
    if has_machine:
        a_vec = _initial_machine_vector(spec, None)
        if a_vec is not None:
            a_vec = a_vec.astype(complex)
            if a_vec.size != rho_3.dim:
                a_vec = np.pad(a_vec, (0, rho_3.dim - a_vec.size))
            overlap_m = float(np.real(a_vec.conj() @ rho_3.mat @ a_vec))
    avg1, avg2 = average_fidelities(spec, n_transformers)
    return DeletionReport(rho_1, rho_2, rho_3, f1, f2, overlap_m, avg1, avg2)


def average_fidelities(spec: DeleterSpec, n_transformers: int = 0, nodes: int = _GL_NODES):
    """Quadrature averages of (F_1, F_2) over alpha^2 for real amplitudes."""
    x, w = np.polynomial.legendre.leggauss(nodes)
    t = (x + 1) / 2  # alpha^2 in (0, 1)
    w = w / 2
    machine = build_deleter(spec)
    target = deletion_target(spec)
    tmat = None
    if n_transformers:
        tmat = operator_on(
            np.linalg.matrix_power(transformer(), n_transformers), [0, 1], machine.out_dims
        )
    f1_total = f2_total = 0.0
    for ti, wi in zip(t, w):
        psi = np.array([math.sqrt(ti), math.sqrt(1 - ti)], dtype=complex)
        out = machine.matrix @ np.kron(psi, psi)
        rho = np.outer(out, out.conj())
        if tmat is not None:
            rho = tmat @ rho @ tmat.conj().T
        full = DensityOperator(machine.out_dims, rho)
        rho_1 = partial_trace(full, [0]).mat
        rho_2 = partial_trace(full, [1]).mat
        f1_total += wi * float(np.real(psi.conj() @ rho_1 @ psi))
        f2_total += wi * float(np.real(target.conj() @ rho_2 @ target))
    return f1_total, f2_total


# ---------------------------------------------------------------------------
# closed forms


def conv_f1(lmbda: float, alpha2: float) -> float:
    """Retained-mode overlap of the plain (no-transformer) deleter."""
    return (1 - lmbda) + 2 * alpha2 * (1 - alpha2) * (2 * lmbda - 1)


def conv_f3_limit(alpha2: float) -> float:
    """lambda -> 1/2 limit of the retained-mode overlap with one transformer
    (real amplitudes; independent of the blank state)."""
    a = math.sqrt(alpha2)
    b = math.sqrt(1 - alpha2)
    return 0.75 - alpha2 / 2 + a * b / math.sqrt(2)


def conv_avg_f3_limit() -> float:
    return 0.5 + math.pi / (8 * math.sqrt(2))


def limiting_deletion_fidelity(n_transformers: int, blank: BlankState) -> float:
    """Exact lambda -> 1/2 deletion fidelity with one or two transformers.

    In the limit the deleter output is the symmetric state (|01>+|10>)/sqrt2
    uncorrelated with the machine, so the deleted-mode state follows from
    applying T n times to it; the result depends only on the blank.
    """
    if n_transformers not in (1, 2):
        raise ValueError("limits are analyzed for one or two transformers")
    t = np.linalg.matrix_power(transformer(), n_transformers)
    amps = (t @ bell_state("psi+")).reshape(2, 2)
    rho_2 = np.einsum("ij,ik->jk", amps, amps.conj())
    target = (blank.vec + blank.perp) / math.sqrt(2)
    return float(np.real(target.conj() @ rho_2 @ target))


def table_41_fidelity(m1: float, m2: float) -> float:
    """Closed form of the one-transformer limit for real blank amplitudes."""
    return 0.5 * (1 + m1 * m2 - (m1 * m1 - m2 * m2) / math.sqrt(2))


def table_42_fidelity(m1: float, m2: float) -> float:
    """Closed form of the two-transformer limit for real blank amplitudes."""
    return 0.5 * (
        1 - m1 * m2 / 2 + 0.5 * (1 / math.sqrt(2) - 1) * (m1 * m1 - m2 * m2)
    )


def pb_with_transformer(blank: BlankState, state: StateVector):
    """Conditional deleter followed by one transformer: (rho_2, F_2) where
    F_2 = <Sigma| rho_2 |Sigma>."""
    spec = DeleterSpec("pb", (blank,))
    rho = apply_deleter(spec, _pair_state(state), n_transformers=1)
    rho_2 = partial_trace(rho, [1])
    f2 = float(np.real(blank.vec.conj() @ rho_2.mat @ blank.vec))
    return rho_2, f2


def pb_transformer_fidelity(m1: float, m2: float, alpha2: float) -> float:
    """Closed-form deletion fidelity of the conditional deleter plus one
    transformer, for real blank amplitudes and real input amplitudes."""
    ab2 = alpha2 * (1 - alpha2)
    b4 = (1 - alpha2) ** 2
    a4 = alpha2**2
    term1 = m1 * m1 * (m1 * m1 / 2 + ab2 * (1 - 2 * m1 * m1) / 2 + b4 * m2 * m2)
    term2 = (
        2
        * m1
        * m2
        * (m1 * m2 / math.sqrt(2) - ab2 * (1 + 2 * m1 * m2) / math.sqrt(2))
    )
    term3 = m2 * m2 * (m1 * m1 / 2 + ab2 * (3 - 2 * m1 * m1) / 2 + a4 * m2 * m2)
    return term1 + term2 + term3


def song_optimal_fidelity(eta1: float, theta: float, phi1: float, phi2: float) -> float:
    """Optimal global fidelity for deleting one of two known candidate states."""
    if not 0.0 <= eta1 <= 1.0:
        raise ValueError("prior probability must lie in [0, 1]")
    eta2 = 1.0 - eta1
    inner = 1 - 4 * eta1 * eta2 * math.sin(2 * theta - phi1 + phi2) ** 2
    return 0.5 * (1 + math.sqrt(max(0.0, inner)))


def sdep_pointwise(a0, a1, b0, b1, blank_overlap: float, alpha2: float):
    """(D_1, F_1) of the state-dependent deleter at one input, closed form."""
    g = a0 + a1
    h = b0 + b1
    gg, hh = abs(g) ** 2, abs(h) ** 2
    k = (gg - 1) ** 2 + (hh - 1) ** 2
    ab2 = alpha2 * (1 - alpha2)
    d1 = k * ab2**2 + 2 * ab2
    m2 = blank_overlap**2
    k1 = 2 - gg * m2 - hh * (1 - m2)
    f1 = 1 - k1 * ab2
    return d1, f1


def sdep_averages(a0, a1, b0, b1, blank_overlap: float):
    """Closed-form averages over alpha^2: (avg distortion, avg deletion
    fidelity); both approach (1/3, 5/6) as |g|^2, |h|^2 -> 1."""
    g = a0 + a1
    h = b0 + b1
    gg, hh = abs(g) ** 2, abs(h) ** 2
    k = (gg - 1) ** 2 + (hh - 1) ** 2
    avg_d1 = (1 + k / 10) / 3
    m2 = blank_overlap**2
    avg_f1 = 2 / 3 + ((gg - hh) * m2 + hh) / 6
    return avg_d1, avg_f1
