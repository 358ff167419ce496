"""Dense complex linear algebra for small multi-qubit/qudit systems.

Everything is a plain numpy array wrapped in a thin dataclass that remembers
the subsystem dimensions.  Index convention throughout the package:
row-major, with the *leftmost* tensor factor most significant, matching
``numpy.kron``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

DEFAULT_TOL = 1e-9

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)


class UnrealizableSpec(ValueError):
    """A Gram matrix of prescribed inner products has no vector realization."""

    def __init__(self, message, min_eigenvalue=None):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


def _as_dims(dims) -> tuple:
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 2 for d in dims):
        raise ValueError(f"subsystem dimensions must all be >= 2, got {dims}")
    return dims


@dataclass(frozen=True)
class StateVector:
    """Pure state on an ordered product of finite-dimensional subsystems."""

    dims: tuple
    amps: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "dims", _as_dims(self.dims))
        amps = np.asarray(self.amps, dtype=complex).reshape(-1)
        object.__setattr__(self, "amps", amps)
        if not np.all(np.isfinite(amps.view(float))):
            raise ValueError("amplitudes must be finite")
        if amps.size != int(np.prod(self.dims)):
            raise ValueError(
                f"amplitude vector of length {amps.size} does not match dims {self.dims}"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > 1e-6:
            raise ValueError(f"state vector is not normalized (norm={norm})")

    @property
    def dim(self) -> int:
        return self.amps.size

    def density(self) -> "DensityOperator":
        return DensityOperator(self.dims, np.outer(self.amps, self.amps.conj()))


@dataclass(frozen=True)
class DensityOperator:
    """Hermitian, unit-trace, PSD matrix with an ordered subsystem-dim list."""

    dims: tuple
    mat: np.ndarray = field(repr=False)

    def __post_init__(self, tol: float = 1e-7):
        object.__setattr__(self, "dims", _as_dims(self.dims))
        mat = np.asarray(self.mat, dtype=complex)
        object.__setattr__(self, "mat", mat)
        d = int(np.prod(self.dims))
        if mat.shape != (d, d):
            raise ValueError(f"matrix shape {mat.shape} does not match dims {self.dims}")
        if np.max(np.abs(mat - mat.conj().T)) > tol:
            raise ValueError("density operator is not Hermitian")
        if abs(np.trace(mat).real - 1.0) > tol:
            raise ValueError(f"density operator has trace {np.trace(mat)}")
        if np.linalg.eigvalsh(mat)[0] < -tol:
            raise ValueError("density operator has a significantly negative eigenvalue")

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


@dataclass(frozen=True)
class MachineIsometry:
    """Inner-product-preserving map: one output column per input basis index."""

    in_dims: tuple
    out_dims: tuple
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "in_dims", _as_dims(self.in_dims))
        object.__setattr__(self, "out_dims", _as_dims(self.out_dims))
        m = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", m)
        din = int(np.prod(self.in_dims))
        dout = int(np.prod(self.out_dims))
        if m.shape != (dout, din):
            raise ValueError(f"matrix shape {m.shape} does not match dims {self.in_dims}->{self.out_dims}")
        if dout < din:
            raise ValueError("output space smaller than input space")
        defect = np.max(np.abs(m.conj().T @ m - np.eye(din)))
        if defect > 1e-7:
            raise ValueError(f"columns are not orthonormal (V^dag V deviates by {defect:.3g})")

    def isometry_defect(self) -> float:
        m = self.matrix
        return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[1]))))


@dataclass(frozen=True)
class GramSpec:
    """Prescribed Hermitian matrix of machine-vector inner products."""

    labels: tuple
    gram: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        g = np.asarray(self.gram, dtype=complex)
        object.__setattr__(self, "gram", g)
        n = len(self.labels)
        if g.shape != (n, n):
            raise ValueError("gram matrix shape does not match labels")
        if np.max(np.abs(g - g.conj().T)) > 1e-10:
            raise ValueError("gram matrix must be Hermitian")
        if np.any(np.diag(g).real < -1e-12):
            raise ValueError("gram diagonal must be nonnegative")


@dataclass(frozen=True)
class BlankState:
    """Qubit blank |Sigma> = m1|0> + m2|1> with m1 real."""

    m1: float
    m2: complex

    def __post_init__(self):
        if abs(self.m1**2 + abs(self.m2) ** 2 - 1.0) > 1e-9:
            raise ValueError("blank state must satisfy m1^2 + |m2|^2 = 1")

    @property
    def vec(self) -> np.ndarray:
        return np.array([self.m1, self.m2], dtype=complex)

    @property
    def perp(self) -> np.ndarray:
        """|Sigma_perp> = -m2* |0> + m1 |1>."""
        return np.array([-np.conj(self.m2), self.m1], dtype=complex)


# ---------------------------------------------------------------------------
# construction helpers


def ket(index: int, dim: int = 2) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def qubit(alpha, beta) -> np.ndarray:
    v = np.array([alpha, beta], dtype=complex)
    return v / np.linalg.norm(v)


def kron_all(*factors) -> np.ndarray:
    out = np.asarray(factors[0], dtype=complex)
    for f in factors[1:]:
        out = np.kron(out, np.asarray(f, dtype=complex))
    return out


BELL_LABELS = ("phi+", "phi-", "psi+", "psi-")


def bell_state(label: str) -> np.ndarray:
    s = np.zeros(4, dtype=complex)
    if label == "phi+":
        s[0] = s[3] = 1
    elif label == "phi-":
        s[0], s[3] = 1, -1
    elif label == "psi+":
        s[1] = s[2] = 1
    elif label == "psi-":
        s[1], s[2] = 1, -1
    else:
        raise ValueError(f"unknown Bell label {label!r}")
    return s / np.sqrt(2)


# ---------------------------------------------------------------------------
# core operations


def tensor(a, b):
    """Tensor product of two StateVectors or two DensityOperators."""
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        return StateVector(a.dims + b.dims, np.kron(a.amps, b.amps))
    if isinstance(a, DensityOperator) and isinstance(b, DensityOperator):
        return DensityOperator(a.dims + b.dims, np.kron(a.mat, b.mat))
    raise TypeError("tensor expects two StateVectors or two DensityOperators")


def _trace_axes(mat: np.ndarray, dims, keep):
    n = len(dims)
    keep = sorted(keep)
    if not keep or any(k < 0 or k >= n for k in keep):
        raise ValueError(f"invalid subsystem selection {keep} for {n} subsystems")
    t = mat.reshape(list(dims) * 2)
    # contract traced-out row/col axis pairs, highest index first
    for ax in reversed([i for i in range(n) if i not in keep]):
        t = np.trace(t, axis1=ax, axis2=ax + t.ndim // 2)
    d_keep = int(np.prod([dims[k] for k in keep]))
    return t.reshape(d_keep, d_keep)


def partial_trace(rho: DensityOperator, keep) -> DensityOperator:
    """Trace out all subsystems except ``keep`` (kept in original order)."""
    keep = sorted(set(keep))
    reduced = _trace_axes(rho.mat, rho.dims, keep)
    return DensityOperator(tuple(rho.dims[k] for k in keep), reduced)


def partial_transpose(rho: DensityOperator, subsystem: int) -> np.ndarray:
    """Transpose one subsystem; the result is Hermitian but may be non-PSD."""
    n = len(rho.dims)
    if subsystem < 0 or subsystem >= n:
        raise ValueError(f"invalid subsystem {subsystem}")
    t = rho.mat.reshape(list(rho.dims) * 2)
    t = t.swapaxes(subsystem, subsystem + n)
    return t.reshape(rho.mat.shape)


def hermitian_eigvals(mat: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted descending."""
    mat = np.asarray(mat, dtype=complex)
    if np.max(np.abs(mat - mat.conj().T)) > tol * max(1.0, np.max(np.abs(mat))):
        raise ValueError("matrix is not Hermitian")
    return np.linalg.eigvalsh(mat)[::-1]


def realize_gram(spec: GramSpec, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Concrete vectors (columns) reproducing the prescribed inner products.

    Deterministic: eigendecomposition restricted to eigenvalues > tol, each
    eigenvector's first nonzero component rotated to be real positive.
    Raises UnrealizableSpec when the Gram matrix is not PSD within tol.
    """
    g = spec.gram
    evals, evecs = np.linalg.eigh(g)
    if evals[0] < -tol:
        raise UnrealizableSpec(
            f"gram matrix for {spec.labels} is not PSD "
            f"(most negative eigenvalue {evals[0]:.3g})",
            min_eigenvalue=float(evals[0]),
        )
    order = np.argsort(evals)[::-1]
    evals, evecs = evals[order], evecs[:, order]
    rank = int(np.sum(evals > tol))
    evals, evecs = evals[:rank], evecs[:, :rank]
    for k in range(rank):
        col = evecs[:, k]
        j = np.argmax(np.abs(col) > 1e-12)
        phase = col[j] / abs(col[j])
        evecs[:, k] = col / phase
    # columns v_i of sqrt(L) U^dag satisfy <v_i|v_j> = G_ij
    return (np.sqrt(evals)[:, None] * evecs.conj().T)


def apply_isometry(v: MachineIsometry, state):
    """Apply V to a StateVector (-> StateVector) or DensityOperator (-> V rho V^dag)."""
    if isinstance(state, StateVector):
        if state.dims != v.in_dims:
            raise ValueError(f"input dims {state.dims} do not match machine {v.in_dims}")
        return StateVector(v.out_dims, v.matrix @ state.amps)
    if isinstance(state, DensityOperator):
        if state.dims != v.in_dims:
            raise ValueError(f"input dims {state.dims} do not match machine {v.in_dims}")
        return DensityOperator(v.out_dims, v.matrix @ state.mat @ v.matrix.conj().T)
    raise TypeError("expected StateVector or DensityOperator")


def schmidt(ket: StateVector, split) -> np.ndarray:
    """Descending Schmidt coefficients lambda_i (squared singular values)."""
    left = sorted(set(split))
    n = len(ket.dims)
    right = [i for i in range(n) if i not in left]
    if not left or not right or any(i < 0 or i >= n for i in left):
        raise ValueError("split must be a proper nonempty bipartition")
    t = ket.amps.reshape(ket.dims)
    t = np.transpose(t, left + right)
    m = t.reshape(int(np.prod([ket.dims[i] for i in left])), -1)
    s = np.linalg.svd(m, compute_uv=False)
    lam = np.sort(s**2)[::-1]
    return lam[lam > 1e-14]


def permute_subsystems(rho: DensityOperator, order) -> DensityOperator:
    """Reorder subsystems so the new layout is dims[order[0]], dims[order[1]], ..."""
    order = list(order)
    n = len(rho.dims)
    if sorted(order) != list(range(n)):
        raise ValueError("order must be a permutation of subsystem indices")
    t = rho.mat.reshape(list(rho.dims) * 2)
    t = np.transpose(t, order + [i + n for i in order])
    dims = tuple(rho.dims[i] for i in order)
    return DensityOperator(dims, t.reshape(rho.mat.shape))


def bell_project(rho: DensityOperator, pair, outcome: str, tol: float = 1e-12):
    """Bell measurement of two qubit subsystems.

    Returns (probability, post-measurement DensityOperator on the remaining
    subsystems).  A zero-weight branch returns (0.0, None).
    """
    i, j = pair
    if i == j:
        raise ValueError("pair indices must be distinct")
    if rho.dims[i] != 2 or rho.dims[j] != 2:
        raise ValueError("bell_project requires qubit subsystems")
    n = len(rho.dims)
    bell = bell_state(outcome)
    # <bell|_{ij} rho |bell>_{ij} without building the full projector
    t = rho.mat.reshape(list(rho.dims) * 2)
    b = bell.reshape(2, 2)
    # contract ket-side axes (i, j) and bra-side axes (i+n, j+n)
    t = np.tensordot(b.conj(), t, axes=([0, 1], [i, j]))
    t = np.tensordot(b, t, axes=([0, 1], [i + n - 2, j + n - 2]))
    keep = [k for k in range(n) if k not in (i, j)]
    d_keep = int(np.prod([rho.dims[k] for k in keep])) if keep else 1
    reduced = t.reshape(d_keep, d_keep)
    prob = float(np.trace(reduced).real)
    if prob < tol:
        return 0.0, None
    post = DensityOperator(tuple(rho.dims[k] for k in keep), reduced / prob)
    return prob, post


def operator_on(op: np.ndarray, subsystems, dims) -> np.ndarray:
    """Embed an operator acting on the given subsystems into the full space."""
    subsystems = list(subsystems)
    dims = list(dims)
    n = len(dims)
    d_op = int(np.prod([dims[s] for s in subsystems]))
    op = np.asarray(op, dtype=complex)
    if op.shape != (d_op, d_op):
        raise ValueError("operator shape does not match selected subsystems")
    rest = [i for i in range(n) if i not in subsystems]
    d_rest = int(np.prod([dims[i] for i in rest])) if rest else 1
    full = np.kron(op, np.eye(d_rest))
    # kron put (subsystems..., rest...); permute back to the original layout
    cur = subsystems + rest
    perm = [cur.index(i) for i in range(n)]
    t = full.reshape([dims[i] for i in cur] * 2)
    t = np.transpose(t, perm + [p + n for p in perm])
    return t.reshape(int(np.prod(dims)), int(np.prod(dims)))


def symmetric_basis_state(n_qubits: int, n_ones: int) -> np.ndarray:
    """Normalized symmetric n-qubit state with the given number of 1s."""
    if not 0 <= n_ones <= n_qubits:
        raise ValueError("n_ones out of range")
    v = np.zeros(2**n_qubits, dtype=complex)
    for bits in product((0, 1), repeat=n_qubits):
        if sum(bits) == n_ones:
            idx = int("".join(map(str, bits)), 2)
            v[idx] = 1.0
    return v / np.linalg.norm(v)
