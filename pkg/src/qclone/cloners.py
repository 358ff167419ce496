"""Catalog of approximate cloning machines and their closed-form fidelities.

Each ``build_*`` function returns a :class:`~qclone.qcore.MachineIsometry`
whose columns give the action on input basis states, with the machine
(ancilla) appended as the last tensor factor.  Closed-form fidelity formulas
live alongside so simulations can be checked against them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
import numpy as np

from .qcore import (
    DensityOperator,
    GramSpec,
    MachineIsometry,
    StateVector,
    bell_state,
    ket,
    kron_all,
    partial_trace,
    realize_gram,
    symmetric_basis_state,
)
from .measures import hs_distance, overlap


@dataclass(frozen=True)
class MachineSpec:
    """Family name plus parameters, resolvable by :func:`build_machine`."""

    family: str
    params: tuple = ()

    def __str__(self):
        if not self.params:
            return self.family
        return f"{self.family}({', '.join(map(str, self.params))})"


@dataclass(frozen=True)
class CloneReport:
    rho_out: DensityOperator
    rho_a: DensityOperator
    rho_b: DensityOperator
    F_a: float
    F_b: float
    D_a: float
    D_b: float
    D_ab1: float
    D_ab2: float
    D_ab3: float


# ---------------------------------------------------------------------------
# machine builders


def build_wz() -> MachineIsometry:
    """Wootters-Zurek copier: |i> -> |ii>|Q_i> with orthonormal machine kets."""
    return build_wz_n(2)


def build_wz_n(n: int) -> MachineIsometry:
    if n < 2:
        raise ValueError("dimension must be >= 2")
    m = np.zeros((n * n * n, n), dtype=complex)
    for k in range(n):
        m[:, k] = kron_all(ket(k, n), ket(k, n), ket(k, n))
    return MachineIsometry((n,), (n, n, n), m)


def bh_gram(xi: float) -> GramSpec:
    """Inner products of the machine kets Q0, Q1, Y0, Y1 with eta = 1 - 2 xi."""
    if not 0.0 <= xi <= 0.5:
        raise ValueError("xi must lie in [0, 1/2]")
    eta = 1.0 - 2.0 * xi
    g = np.zeros((4, 4))
    g[0, 0] = g[1, 1] = 1.0 - 2.0 * xi
    g[2, 2] = g[3, 3] = xi
    g[0, 3] = g[3, 0] = eta / 2.0  # <Q0|Y1>
    g[1, 2] = g[2, 1] = eta / 2.0  # <Q1|Y0>
    return GramSpec(("Q0", "Q1", "Y0", "Y1"), g)


def build_bh(xi: float) -> MachineIsometry:
    """Buzek-Hillery-type copier with free parameter xi (eta = 1 - 2 xi).

    The prescribed Gram matrix is PSD only for xi >= 1/6; below that the
    Schwarz bound eta <= 2 sqrt(xi (1-2 xi)) fails and UnrealizableSpec is
    raised.  xi = 1/6 gives the optimal universal copier on a rank-2 machine.
    """
    vecs = realize_gram(bh_gram(xi))
    rank = vecs.shape[0]
    mdim = max(rank, 2)
    q0, q1, y0, y1 = (np.pad(vecs[:, i], (0, mdim - rank)) for i in range(4))
    cols = np.zeros((4 * mdim, 2), dtype=complex)
    s01 = np.kron(ket(0), ket(1)) + np.kron(ket(1), ket(0))
    cols[:, 0] = np.kron(np.kron(ket(0), ket(0)), q0) + np.kron(s01, y0)
    cols[:, 1] = np.kron(np.kron(ket(1), ket(1)), q1) + np.kron(s01, y1)
    return MachineIsometry((2,), (2, 2, mdim), cols)


def build_bh_opt() -> MachineIsometry:
    """Optimal universal 1->2 copier, machine spanned by two orthogonal kets."""
    psi_plus = bell_state("psi+")
    cols = np.zeros((8, 2), dtype=complex)
    cols[:, 0] = math.sqrt(2 / 3) * kron_all(ket(0), ket(0), ket(0)) + math.sqrt(1 / 3) * np.kron(
        psi_plus, ket(1)
    )
    cols[:, 1] = math.sqrt(2 / 3) * kron_all(ket(1), ket(1), ket(1)) + math.sqrt(1 / 3) * np.kron(
        psi_plus, ket(0)
    )
    return MachineIsometry((2,), (2, 2, 2), cols)


def build_gm_1m(m_copies: int) -> MachineIsometry:
    """Universal symmetric 1->M copier for qubits (explicit for M <= 6)."""
    M = int(m_copies)
    if not 2 <= M <= 6:
        raise ValueError("1->M copier is built explicitly only for 2 <= M <= 6")
    alphas = np.sqrt([2 * (M - j) / (M * (M + 1)) for j in range(M)])
    dim_clones = 2**M
    cols = np.zeros((dim_clones * M, 2), dtype=complex)
    for j in range(M):
        cols[:, 0] += alphas[j] * np.kron(symmetric_basis_state(M, j), ket(j, M))
        cols[:, 1] += alphas[j] * np.kron(symmetric_basis_state(M, M - j), ket(M - 1 - j, M))
    return MachineIsometry((2,), (2,) * M + (M,), cols)


def build_uqcm_d(d: int) -> MachineIsometry:
    """Universal symmetric 1->2 copier in d dimensions."""
    if d < 2:
        raise ValueError("dimension must be >= 2")
    a = math.sqrt(2 / (d + 1))
    b = math.sqrt(1 / (2 * (d + 1)))
    cols = np.zeros((d * d * d, d), dtype=complex)
    for i in range(d):
        col = a * kron_all(ket(i, d), ket(i, d), ket(i, d))
        for j in range(d):
            if j == i:
                continue
            pair = np.kron(ket(i, d), ket(j, d)) + np.kron(ket(j, d), ket(i, d))
            col += b * np.kron(pair, ket(j, d))
        cols[:, i] = col
    return MachineIsometry((d,), (d, d, d), cols)


def build_pc2() -> MachineIsometry:
    """Optimal 1->2 phase-covariant copier for equatorial qubits.

    Realized as the mu = 1/2 member of the z-known copier family, which is
    the optimal equatorial machine; its reduced clones reproduce the
    (1/2 + sqrt(1/8)) / (1/2 - sqrt(1/8)) mixture for every equatorial input.
    """
    return build_kr(0.5)


def build_pc_d(d: int) -> MachineIsometry:
    """Optimal 1->2 phase-covariant copier for d-level systems."""
    if d < 2:
        raise ValueError("dimension must be >= 2")
    root = math.sqrt(d * d + 4 * d - 4)
    alpha = math.sqrt(0.5 - (d - 2) / (2 * root))
    beta = math.sqrt(0.5 + (d - 2) / (2 * root))
    cols = np.zeros((d * d * d, d), dtype=complex)
    for j in range(d):
        col = alpha * kron_all(ket(j, d), ket(j, d), ket(j, d))
        for k in range(d):
            if k == j:
                continue
            pair = np.kron(ket(j, d), ket(k, d)) + np.kron(ket(k, d), ket(j, d))
            col += beta / math.sqrt(2 * (d - 1)) * np.kron(pair, ket(k, d))
        cols[:, j] = col
    return MachineIsometry((d,), (d, d, d), cols)


def build_kr(mu: float) -> MachineIsometry:
    """Karimipour-Rezakhani copier with parameter mu (nu = sqrt(1-2mu^2))."""
    if mu**2 > 0.5 + 1e-12:
        raise ValueError("mu^2 must be <= 1/2")
    nu = math.sqrt(max(0.0, 1 - 2 * mu**2))
    s01 = np.kron(ket(0), ket(1)) + np.kron(ket(1), ket(0))
    cols = np.zeros((8, 2), dtype=complex)
    cols[:, 0] = nu * kron_all(ket(0), ket(0), ket(0)) + mu * np.kron(s01, ket(1))
    cols[:, 1] = nu * kron_all(ket(1), ket(1), ket(1)) + mu * np.kron(s01, ket(0))
    return MachineIsometry((2,), (2, 2, 2), cols)


def build_econ(d: int = 2, blank: int = 0) -> MachineIsometry:
    """Economical (ancilla-free) phase-covariant copier on a fixed blank |l>."""
    if d < 2:
        raise ValueError("dimension must be >= 2")
    if not 0 <= blank < d:
        raise ValueError("blank index out of range")
    cols = np.zeros((d * d, d), dtype=complex)
    for k in range(d):
        if k == blank:
            cols[:, k] = np.kron(ket(k, d), ket(k, d))
        else:
            cols[:, k] = (
                np.kron(ket(k, d), ket(blank, d)) + np.kron(ket(blank, d), ket(k, d))
            ) / math.sqrt(2)
    return MachineIsometry((d,), (d, d), cols)


def build_pauli_asym(p: float) -> MachineIsometry:
    """Asymmetric 1->2 copier; p + q = 1 trades quality between the clones."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    q = 1.0 - p
    norm = math.sqrt(1 + p**2 + q**2)
    cols = np.zeros((8, 2), dtype=complex)
    cols[:, 0] = (
        kron_all(ket(0), ket(0), ket(0))
        + p * kron_all(ket(0), ket(1), ket(1))
        + q * kron_all(ket(1), ket(0), ket(1))
    ) / norm
    cols[:, 1] = (
        kron_all(ket(1), ket(1), ket(1))
        + p * kron_all(ket(1), ket(0), ket(0))
        + q * kron_all(ket(0), ket(1), ket(0))
    ) / norm
    return MachineIsometry((2,), (2, 2, 2), cols)


def build_heis_asym(d: int, p: float) -> MachineIsometry:
    """Optimal universal asymmetric copier for d-level systems (q = 1 - p)."""
    if d < 2:
        raise ValueError("dimension must be >= 2")
    q = 1.0 - p
    norm = math.sqrt(1 + (d - 1) * (p**2 + q**2))
    cols = np.zeros((d**3, d), dtype=complex)
    for j in range(d):
        col = kron_all(ket(j, d), ket(j, d), ket(j, d)).astype(complex)
        for s in range(1, d):
            js = (j + s) % d
            col += p * kron_all(ket(j, d), ket(js, d), ket(js, d))
            col += q * kron_all(ket(js, d), ket(j, d), ket(js, d))
        cols[:, j] = col / norm
    return MachineIsometry((d,), (d, d, d), cols)


def build_anti() -> MachineIsometry:
    """Universal anti-cloner: second output has the opposite spin direction."""
    phase = np.exp(1j * math.acos(1 / math.sqrt(3)))
    r6 = 1 / math.sqrt(6)
    r2 = 1 / math.sqrt(2)
    up, down, right, left = (ket(i, 4) for i in range(4))
    cols = np.zeros((4 * 4, 2), dtype=complex)
    cols[:, 0] = (
        r6 * np.kron(kron_all(ket(0), ket(0)), up)
        + np.kron(r2 * phase * kron_all(ket(0), ket(1)) - r6 * kron_all(ket(1), ket(0)), right)
        + r6 * np.kron(kron_all(ket(1), ket(1)), left)
    )
    cols[:, 1] = (
        r6 * np.kron(kron_all(ket(1), ket(1)), right)
        + np.kron(r2 * phase * kron_all(ket(1), ket(0)) - r6 * kron_all(ket(0), ket(1)), up)
        + r6 * np.kron(kron_all(ket(0), ket(0)), down)
    )
    return MachineIsometry((2,), (2, 2, 4), cols)


def _mixed_alpha(j: int, k: int, M: int) -> float:
    num = 6 * math.factorial(M - 2) * math.factorial(M - j - k) * math.factorial(j + k)
    den = (
        math.factorial(2 - j)
        * math.factorial(M + 1)
        * math.factorial(M - 2 - k)
        * math.factorial(j)
        * math.factorial(k)
    )
    return math.sqrt(num / den)


def _antisymmetric_sector_state(M: int, n_ones: int) -> np.ndarray:
    """Deterministic state orthogonal to the symmetric one in its sector:
    singlet on the first two qubits, symmetric on the rest."""
    if not 1 <= n_ones <= M - 1:
        raise ValueError("sector must contain both spin values")
    singlet = bell_state("psi-")
    rest = symmetric_basis_state(M - 2, n_ones - 1)
    return np.kron(singlet, rest)


def build_mixed_2m(m_copies: int) -> MachineIsometry:
    """2->M copier for two identical (possibly mixed) qubits.

    The symmetric-subspace columns follow the alpha_{jk} coefficients; the
    singlet column uses deterministic orthogonal-complement states (the
    source leaves them unspecified).
    """
    M = int(m_copies)
    if not 3 <= M <= 6:
        raise ValueError("2->M copier is built explicitly only for 3 <= M <= 6")
    mdim = M - 1
    dim_out = 2**M * mdim
    sym_cols = {}
    for j in range(3):
        col = np.zeros(dim_out, dtype=complex)
        for k in range(M - 1):
            col += _mixed_alpha(j, k, M) * np.kron(symmetric_basis_state(M, j + k), ket(k, mdim))
        sym_cols[j] = col
    anti = np.zeros(dim_out, dtype=complex)
    for k in range(M - 1):
        anti += _mixed_alpha(1, k, M) * np.kron(_antisymmetric_sector_state(M, 1 + k), ket(k, mdim))
    cols = np.zeros((dim_out, 4), dtype=complex)
    cols[:, 0] = sym_cols[0]
    cols[:, 3] = sym_cols[2]
    cols[:, 1] = (sym_cols[1] + anti) / math.sqrt(2)
    cols[:, 2] = (sym_cols[1] - anti) / math.sqrt(2)
    return MachineIsometry((2, 2), (2,) * M + (mdim,), cols)


def build_mixed_23() -> MachineIsometry:
    """The 2->3 copier restricted to the symmetric two-qubit subspace.

    Input basis order: |2 up>, (|ud>+|du>)/sqrt2, |2 down>.
    """
    M = 3
    mdim = 2
    cols = np.zeros((2**M * mdim, 3), dtype=complex)
    for j in range(3):
        for k in range(M - 1):
            cols[:, j] += _mixed_alpha(j, k, M) * np.kron(
                symmetric_basis_state(M, j + k), ket(k, mdim)
            )
    return MachineIsometry((3,), (2,) * M + (mdim,), cols)


_BUILDERS = {
    "wz": lambda: build_wz(),
    "wz-n": build_wz_n,
    "bh": build_bh,
    "bh-opt": lambda: build_bh_opt(),
    "gm-1m": build_gm_1m,
    "uqcm-d": build_uqcm_d,
    "pc2": lambda: build_pc2(),
    "pc-d": build_pc_d,
    "kr": build_kr,
    "econ": build_econ,
    "pauli-asym": build_pauli_asym,
    "heis-asym": build_heis_asym,
    "anti": lambda: build_anti(),
    "mixed-23": lambda: build_mixed_23(),
    "mixed-2m": build_mixed_2m,
}


def build_machine(spec: MachineSpec) -> MachineIsometry:
    try:
        builder = _BUILDERS[spec.family]
    except KeyError:
        raise ValueError(f"unknown machine family {spec.family!r}") from None
    return builder(*spec.params)


# ---------------------------------------------------------------------------
# simulation reports


def clone_report(spec: MachineSpec, state: StateVector) -> CloneReport:
    """Run the machine on a pure input and compute all quality indices."""
    machine = build_machine(spec)
    if state.dims != machine.in_dims:
        raise ValueError(f"input dims {state.dims} incompatible with {spec}")
    out = machine.matrix @ state.amps
    full = DensityOperator(machine.out_dims, np.outer(out, out.conj()))
    n_out = len(machine.out_dims)
    clones = partial_trace(full, [0, 1]) if n_out > 2 else full
    rho_a = partial_trace(full, [0])
    rho_b = partial_trace(full, [1])
    ideal = state if len(state.dims) == 1 else None
    if ideal is None:
        raise ValueError("clone_report expects a single-system input")
    id_mat = np.outer(state.amps, state.amps.conj())
    f_a = float(np.real(state.amps.conj() @ rho_a.mat @ state.amps))
    f_b = float(np.real(state.amps.conj() @ rho_b.mat @ state.amps))
    d_a = hs_distance(rho_a.mat, id_mat)
    d_b = hs_distance(rho_b.mat, id_mat)
    prod_out = np.kron(rho_a.mat, rho_b.mat)
    prod_id = np.kron(id_mat, id_mat)
    d_ab1 = hs_distance(clones.mat, prod_out)
    d_ab2 = hs_distance(clones.mat, prod_id)
    d_ab3 = hs_distance(prod_id, prod_out)
    return CloneReport(clones, rho_a, rho_b, f_a, f_b, d_a, d_b, d_ab1, d_ab2, d_ab3)


def ying_indices(n: int, amplitudes) -> tuple:
    """(D_a, D_ab1, D_ab2, D_ab3) of the n-dimensional basis copier."""
    amps = np.asarray(amplitudes, dtype=float)
    if n < 2 or amps.size != n:
        raise ValueError("need n >= 2 real amplitudes")
    if abs(np.sum(amps**2) - 1.0) > 1e-9:
        raise ValueError("amplitudes must be normalized")
    rep = clone_report(MachineSpec("wz-n", (n,)), StateVector((n,), amps))
    return rep.D_a, rep.D_ab1, rep.D_ab2, rep.D_ab3


def ying_bound_gap(n: int) -> float:
    """The slack (n-1)(n-2)/n^2 appearing in all three index inequalities."""
    return (n - 1) * (n - 2) / n**2


# ---------------------------------------------------------------------------
# double-Bell reparametrization (asymmetric cloning bookkeeping)

_BELL_ORDER = ("phi+", "phi-", "psi+", "psi-")


def _double_bell_vector(amps, pair_a, pair_b) -> np.ndarray:
    """4-qubit state sum_i amps[i] |Bell_i>_pair_a |Bell_i>_pair_b."""
    state = np.zeros(16, dtype=complex)
    for c, label in zip(amps, _BELL_ORDER):
        bell = bell_state(label).reshape(2, 2)
        t = np.zeros((2, 2, 2, 2), dtype=complex)
        for i1 in range(2):
            for i2 in range(2):
                for j1 in range(2):
                    for j2 in range(2):
                        bits = [0, 0, 0, 0]
                        bits[pair_a[0]], bits[pair_a[1]] = i1, i2
                        bits[pair_b[0]], bits[pair_b[1]] = j1, j2
                        t[tuple(bits)] += c * bell[i1, i2] * bell[j1, j2]
        state += t.reshape(16)
    return state


def cerf_reparam(amps, target: str = "RB_AC") -> np.ndarray:
    """Re-express double-Bell amplitudes (v, z, x, y) on partition RA;BC in
    the paired double-Bell basis of another bipartition of the four qubits."""
    amps = np.asarray(amps, dtype=complex).reshape(4)
    if abs(np.linalg.norm(amps) - 1.0) > 1e-9:
        raise ValueError("amplitudes must be normalized")
    pairs = {"RB_AC": ((0, 2), (1, 3)), "RC_AB": ((0, 3), (1, 2))}
    if target not in pairs:
        raise ValueError(f"unknown target partition {target!r}")
    state = _double_bell_vector(amps, (0, 1), (2, 3))
    pa, pb = pairs[target]
    out = np.zeros(4, dtype=complex)
    recon = np.zeros_like(state)
    for i, label in enumerate(_BELL_ORDER):
        basis = _double_bell_vector(ket(i, 4), pa, pb)
        out[i] = basis.conj() @ state
        recon += out[i] * basis
    if np.linalg.norm(recon - state) > 1e-9:
        raise ValueError("state is not supported on the paired double-Bell subspace")
    return out


def rb_ac_matrix() -> np.ndarray:
    """Closed-form reparametrization matrix for the RB;AC partition."""
    return 0.5 * np.array(
        [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]], dtype=complex
    )


def heis_beta_from_alpha(alpha: np.ndarray, d: int) -> np.ndarray:
    """beta_{m,n} = (1/d) sum_{x,y} exp(2 pi i (n x - m y)/d) alpha_{x,y}."""
    alpha = np.asarray(alpha, dtype=complex).reshape(d, d)
    beta = np.zeros_like(alpha)
    for m in range(d):
        for n in range(d):
            for x in range(d):
                for y in range(d):
                    beta[m, n] += np.exp(2j * np.pi * (n * x - m * y) / d) * alpha[x, y]
    return beta / d


# ---------------------------------------------------------------------------
# probabilistic cloning


def prob_clone_success(overlap_psi: float, overlap_phi: float, m: int):
    """Success probabilities of the two-step supplementary-information
    protocol: (gamma_A, gamma_B, gamma_total)."""
    s, t = float(overlap_psi), float(overlap_phi)
    if not (0.0 <= s < 1.0):
        raise ValueError("state overlap must lie in [0, 1)")
    if not (0.0 <= t <= 1.0):
        raise ValueError("supplementary overlap must lie in [0, 1]")
    if m < 2:
        raise ValueError("need at least two copies")
    gamma_a = (1 - s) / (1 - s**m)
    gamma_b = (1 - t) / (1 - s ** (m - 1))
    gamma_tot = (1 - abs(s * t)) / (1 - s**m)
    return gamma_a, gamma_b, gamma_tot


def linearly_independent(states) -> bool:
    """True iff the states can be probabilistically cloned with unit fidelity."""
    states = list(states)
    if not states:
        raise ValueError("need at least one state")
    dims = states[0].dims
    if any(s.dims != dims for s in states):
        raise ValueError("states must share dimensions")
    mat = np.array([s.amps for s in states])
    sv = np.linalg.svd(mat, compute_uv=False)
    rank = int(np.sum(sv > 1e-9 * sv[0]))
    return rank == len(states)


# ---------------------------------------------------------------------------
# closed-form fidelities


def wz_copy_quality(alpha2: float) -> float:
    return 2 * alpha2 * (1 - alpha2)


def gm_fidelity(n_in: int, m_out: int) -> float:
    """Universal symmetric N->M fidelity per qubit."""
    if not 1 <= n_in < m_out:
        raise ValueError("need M > N >= 1")
    return (m_out * (n_in + 1) + n_in) / (m_out * (n_in + 2))


def uqcm_scaling(d: int) -> float:
    return (d + 2) / (2 * (d + 1))


def uqcm_fidelity(d: int) -> float:
    eta = uqcm_scaling(d)
    return (eta * (d - 1) + 1) / d


def fan_nmd_fidelity(n_in: int, m_out: int, d: int) -> float:
    """Universal N->M fidelity per qudit."""
    if not 1 <= n_in < m_out or d < 2:
        raise ValueError("need M > N >= 1 and d >= 2")
    return (n_in * (d - 1) + m_out * (n_in + 1)) / ((d + n_in) * m_out)


def copier_entropy(d: int) -> float:
    """Copier/copies entanglement entropy (nats) of the d-dim universal copier."""
    return math.log(d + 1) - 2 * math.log(2) / (d + 1)


def pc2_fidelity() -> float:
    return 0.5 + math.sqrt(1 / 8)


def pc_d_fidelity(d: int) -> float:
    return 1 / d + (d - 2 + math.sqrt(d * d + 4 * d - 4)) / (4 * d)


def pc_fidelity(n_in: int, m_out: int) -> float:
    """Phase-covariant N->M fidelity for equatorial qubits."""
    N, M = int(n_in), int(m_out)
    if not 1 <= N < M:
        raise ValueError("need M > N >= 1")
    total = 0.0
    if (M - N) % 2 == 0:
        for j in range(N):
            w = math.factorial(N) / (math.factorial(j) * math.factorial(N - j - 1))
            total += w * math.sqrt(
                (M - N + 2 * j + 2) * (M + N - 2 * j) / (4 * M * M * (j + 1) * (N - j))
            )
        return 0.5 + total / 2**N
    for j in range(N):
        w = math.factorial(N) / (math.factorial(j) * math.factorial(N - j - 1))
        total += (
            w
            / math.sqrt(4 * M * M * (j + 1) * (N - j))
            * (
                math.sqrt((M - N + 2 * j + 1) * (M + N - 2 * j + 1))
                + math.sqrt((M - N + 2 * j + 3) * (M + N - 2 * j - 1))
            )
        )
    return 0.5 + total / 2 ** (N + 1)


def pc_limit_fidelity(n_in: int) -> float:
    """M -> infinity limit of the phase-covariant N->M fidelity."""
    N = int(n_in)
    total = 0.0
    for j in range(N):
        w = math.factorial(N) / (math.factorial(j) * math.factorial(N - j - 1))
        total += w / math.sqrt((j + 1) * (N - j))
    return 0.5 + total / 2 ** (N + 1)


def econ_fidelity(d: int) -> float:
    return (d - 1 + (d - 1 + math.sqrt(2)) ** 2) / (2 * d * d)


def kr_fidelity(mu: float, theta: float) -> float:
    """Fidelity of the KR copier on cos(t/2)|0> + e^{i phi} sin(t/2)|1>."""
    mu2 = mu**2
    root = mu * math.sqrt(max(0.0, 1 - 2 * mu2))
    cos2 = math.cos(theta) ** 2
    return 0.5 + root + ((1 - 2 * mu2) / 2 - root) * cos2


def kr_optimal_mu2(theta: float) -> float:
    return 0.25 * (1 - 1 / math.sqrt(1 + 2 * math.tan(theta) ** 4))


def heis_fidelities(d: int, p: float):
    q = 1.0 - p
    norm = 1 + (d - 1) * (p**2 + q**2)
    return (1 + (d - 1) * p**2) / norm, (1 + (d - 1) * q**2) / norm


def heis_symmetric_fidelity(d: int) -> float:
    return (d + 3) / (2 * (d + 1))


def pauli_fidelities(p: float):
    den = 2 * (p * p - p + 1)
    return (p * p + 1) / den, (p * p - 2 * p + 2) / den


def anti_fidelities():
    return 2 / 3, 1 / 3


def bdefms_fidelity(s_overlap: float) -> float:
    """Optimal two-state cloner fidelity as a function of S = |<a|b>|."""
    S = float(s_overlap)
    if not 0.0 < S < 1.0:
        raise ValueError("S must lie in (0, 1)")
    root = math.sqrt(9 * S * S - 2 * S + 1)
    inner = 3 * S * S + 2 * S - 1 + (1 - S) * root
    return 0.5 + math.sqrt(2) / (32 * S) * (1 + S) * (3 - 3 * S + root) * math.sqrt(inner)


def rastegin_mixed_upper_bound(f: float) -> float:
    """Upper bound on the global fidelity of two-mixed-state cloning."""
    return 0.5 * (1 + f**3 + (1 - f * f) * math.sqrt(1 + f * f))


def mixed_2m_scaling(m_out: int) -> float:
    return (m_out + 2) / (2 * m_out)


_CLOSED_FORMS = {
    "wz-quality": wz_copy_quality,
    "gm": gm_fidelity,
    "uqcm-d": uqcm_fidelity,
    "fan-nmd": fan_nmd_fidelity,
    "pc2": pc2_fidelity,
    "pc": pc_fidelity,
    "pc-limit": pc_limit_fidelity,
    "pc-d": pc_d_fidelity,
    "econ": econ_fidelity,
    "kr": kr_fidelity,
    "kr-optimal-mu2": kr_optimal_mu2,
    "heis": heis_fidelities,
    "heis-symmetric": heis_symmetric_fidelity,
    "pauli": pauli_fidelities,
    "anti": anti_fidelities,
    "bdefms": bdefms_fidelity,
    "rastegin-bound": rastegin_mixed_upper_bound,
    "copier-entropy": copier_entropy,
    "mixed-2m-scaling": mixed_2m_scaling,
}


def closed_form_fidelity(formula: str, *params):
    """Evaluate one of the named closed-form fidelity expressions."""
    try:
        fn = _CLOSED_FORMS[formula]
    except KeyError:
        raise ValueError(f"unknown closed form {formula!r}") from None
    return fn(*params)


# ---------------------------------------------------------------------------
# composite pipelines used by the regression suite


def mixed_23_composite_overlap(psi: StateVector) -> float:
    """Single-clone overlap after recloning two clones of a 1->3 copier.

    The two-clone reduced output of the universal 1->3 machine (a mixed
    two-qubit state in the symmetric subspace) is fed to the 2->3 machine;
    the result is input-independent.
    """
    gm = build_gm_1m(3)
    out = gm.matrix @ psi.amps
    full = DensityOperator(gm.out_dims, np.outer(out, out.conj()))
    two_clones = partial_trace(full, [0, 1])
    # express on the symmetric basis {|00>, psi+, |11>}
    basis = np.array(
        [
            [1, 0, 0, 0],
            [0, 1 / math.sqrt(2), 1 / math.sqrt(2), 0],
            [0, 0, 0, 1],
        ],
        dtype=complex,
    )
    sym = basis @ two_clones.mat @ basis.conj().T
    if abs(np.trace(sym).real - 1.0) > 1e-9:
        raise ValueError("two-clone state is not supported on the symmetric subspace")
    m23 = build_mixed_23()
    out3 = DensityOperator(m23.out_dims, m23.matrix @ sym @ m23.matrix.conj().T)
    single = partial_trace(out3, [0])
    return overlap(StateVector((2,), psi.amps), single)
