"""Finite-dimensional quantum state and channel algebra.

States live on labelled tensor products of small Hilbert factors (photon,
electron spin, hole).  Everything is dense numpy; the largest space in this
package is 16-dimensional.  All values are immutable and all operations are
pure functions.

Tolerances: 1e-12 for algebraic identities, 1e-10 for eigenvalue positivity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

PURE = "pure_vector"
DENSITY = "density_matrix"

_FACTOR_LABELS = ("photon", "electron_spin", "hole")

_NORM_TOL = 1e-12
_EIG_TOL = 1e-10


@dataclass(frozen=True)
class HilbertFactor:
    """One labelled tensor factor of the composite space."""

    label: str
    dimension: int

    def __post_init__(self):
        if self.label not in _FACTOR_LABELS:
            raise ValueError(f"unknown factor label {self.label!r}")
        if self.dimension < 1:
            raise ValueError("dimension must be positive")
        if self.label in ("photon", "electron_spin") and self.dimension != 2:
            raise ValueError(f"{self.label} factor must have dimension 2")
        if self.label == "hole" and self.dimension not in (1, 2, 4):
            raise ValueError("hole factor dimension must be 1, 2 or 4")


PHOTON = HilbertFactor("photon", 2)
ELECTRON = HilbertFactor("electron_spin", 2)


@dataclass(frozen=True)
class QuantumState:
    """A pure state vector or density matrix over an ordered factor list."""

    factors: tuple[HilbertFactor, ...]
    representation: str
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        factors = tuple(self.factors)
        object.__setattr__(self, "factors", factors)
        labels = [f.label for f in factors]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate factor labels in {labels}")
        dim = self.dimension
        arr = np.asarray(self.amplitudes, dtype=complex)
        if self.representation == PURE:
            arr = arr.reshape(dim)
            n = np.linalg.norm(arr)
            if abs(n - 1.0) > 1e-9:
                raise ValueError(f"state vector norm {n} is not 1")
            if abs(n - 1.0) > _NORM_TOL:
                arr = arr / n
        elif self.representation == DENSITY:
            arr = arr.reshape(dim, dim)
            if np.max(np.abs(arr - arr.conj().T)) > 1e-9:
                raise ValueError("density matrix is not Hermitian")
            tr = np.trace(arr).real
            if abs(tr - 1.0) > 1e-9:
                raise ValueError(f"density matrix trace {tr} is not 1")
            if np.min(np.linalg.eigvalsh((arr + arr.conj().T) / 2)) < -_EIG_TOL:
                raise ValueError("density matrix has a negative eigenvalue")
        else:
            raise ValueError(f"unknown representation {self.representation!r}")
        arr.setflags(write=False)
        object.__setattr__(self, "amplitudes", arr)

    @property
    def dimension(self) -> int:
        return int(np.prod([f.dimension for f in self.factors]))

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(f.dimension for f in self.factors)

    def labels(self) -> tuple[str, ...]:
        return tuple(f.label for f in self.factors)

    def factor_index(self, label: str) -> int:
        for i, f in enumerate(self.factors):
            if f.label == label:
                return i
        raise ValueError(f"no factor labelled {label!r}")

    def densitymatrix(self) -> np.ndarray:
        """Density matrix form regardless of representation."""
        if self.representation == DENSITY:
            return self.amplitudes
        v = self.amplitudes
        return np.outer(v, v.conj())

    def is_pure(self) -> bool:
        return self.representation == PURE


def pure_state(amplitudes, factors) -> QuantumState:
    """Normalise a complex vector into a pure QuantumState."""
    v = np.asarray(amplitudes, dtype=complex).ravel()
    n = np.linalg.norm(v)
    if n == 0:
        raise ValueError("cannot normalise the zero vector")
    return QuantumState(tuple(factors), PURE, v / n)


def density_state(matrix, factors) -> QuantumState:
    m = np.asarray(matrix, dtype=complex)
    return QuantumState(tuple(factors), DENSITY, m)


def qubit(alpha: complex, beta: complex, factor: HilbertFactor = ELECTRON) -> QuantumState:
    return pure_state([alpha, beta], (factor,))


def tensor_product(a: QuantumState, b: QuantumState) -> QuantumState:
    """Combined state on the concatenated factor list.

    Factor labels of the two inputs must be disjoint.  Two pure inputs give
    a pure output; otherwise both sides are promoted to density form.
    """
    if set(a.labels()) & set(b.labels()):
        raise ValueError("duplicate factor label across tensor operands")
    factors = a.factors + b.factors
    if a.is_pure() and b.is_pure():
        return QuantumState(factors, PURE, np.kron(a.amplitudes, b.amplitudes))
    return QuantumState(factors, DENSITY,
                        np.kron(a.densitymatrix(), b.densitymatrix()))


def partial_trace(state: QuantumState, keep: tuple[str, ...] | list[str]) -> QuantumState:
    """Reduced density matrix on the kept factors (in their original order)."""
    keep = tuple(keep)
    if not keep:
        raise ValueError("keep must name at least one factor")
    labels = state.labels()
    for k in keep:
        if k not in labels:
            raise ValueError(f"unknown factor label {k!r}")
    keep_idx = [i for i, lab in enumerate(labels) if lab in keep]
    drop_idx = [i for i, lab in enumerate(labels) if lab not in keep]
    dims = state.dims
    n = len(dims)
    rho = state.densitymatrix().reshape(dims + dims)
    # trace out dropped factors pairwise, highest index first to keep axes stable
    for i in sorted(drop_idx, reverse=True):
        rho = np.trace(rho, axis1=i, axis2=i + n)
        n -= 1
    kept_dim = int(np.prod([dims[i] for i in keep_idx]))
    rho = rho.reshape(kept_dim, kept_dim)
    factors = tuple(state.factors[i] for i in keep_idx)
    return QuantumState(factors, DENSITY, rho)


def purity(state: QuantumState) -> float:
    """Tr(rho^2), in [1/d, 1]."""
    rho = state.densitymatrix()
    return float(np.trace(rho @ rho).real)


def entanglement_entropy(state: QuantumState, cut: tuple[str, ...] | list[str]) -> float:
    """Entropy of entanglement across the bipartition (cut | rest), in bits.

    Defined for pure states only; the von Neumann entropy of either reduced
    state.  Zero iff the state is a product across the cut.
    """
    if not state.is_pure():
        raise ValueError("entanglement entropy requires a pure state")
    cut = tuple(cut)
    if not cut or set(cut) == set(state.labels()):
        raise ValueError("cut must be a proper non-empty subset of factors")
    reduced = partial_trace(state, cut)
    evals = np.linalg.eigvalsh(reduced.amplitudes)
    evals = np.clip(evals.real, 0.0, 1.0)
    return float(-sum(p * math.log2(p) for p in evals if p > 1e-15))


def fidelity(a: QuantumState, b: QuantumState) -> float:
    """Uhlmann fidelity F(a, b) in [0, 1]; |<a|b>|^2 when both are pure."""
    if a.dims != b.dims or a.labels() != b.labels():
        raise ValueError("states live on different factor sets")
    if a.is_pure() and b.is_pure():
        return float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)
    if a.is_pure():
        v = a.amplitudes
        return float(np.real(v.conj() @ b.densitymatrix() @ v))
    if b.is_pure():
        v = b.amplitudes
        return float(np.real(v.conj() @ a.densitymatrix() @ v))
    return float(_uhlmann(a.densitymatrix(), b.densitymatrix()))


def _psd_sqrt(rho: np.ndarray) -> np.ndarray:
    evals, vecs = np.linalg.eigh((rho + rho.conj().T) / 2)
    evals = np.clip(evals, 0.0, None)
    return (vecs * np.sqrt(evals)) @ vecs.conj().T


def _uhlmann(rho: np.ndarray, sigma: np.ndarray) -> float:
    s = _psd_sqrt(rho)
    inner = s @ sigma @ s
    evals = np.linalg.eigvalsh((inner + inner.conj().T) / 2)
    # rank-deficient inputs leave O(eps) dust whose sqrt would cost ~1e-8
    evals[evals < 1e-14] = 0.0
    return float(np.sum(np.sqrt(evals)) ** 2)


@dataclass(frozen=True)
class QuantumChannel:
    """A channel in Kraus form acting on a declared factor set.

    Trace preserving (sum K†K = I) unless flagged conditional, in which case
    sum K†K <= I and applying the channel reports a success probability.
    """

    kraus_operators: tuple[np.ndarray, ...]
    factors: tuple[HilbertFactor, ...]
    conditional: bool = False

    def __post_init__(self):
        dim = int(np.prod([f.dimension for f in self.factors]))
        ops = tuple(np.asarray(k, dtype=complex).reshape(dim, dim)
                    for k in self.kraus_operators)
        object.__setattr__(self, "kraus_operators", ops)
        object.__setattr__(self, "factors", tuple(self.factors))
        s = sum(k.conj().T @ k for k in ops)
        gap = s - np.eye(dim)
        if self.conditional:
            if np.max(np.linalg.eigvalsh((gap + gap.conj().T) / 2)) > _EIG_TOL:
                raise ValueError("conditional channel must satisfy sum K†K <= I")
        else:
            if np.max(np.abs(gap)) > _EIG_TOL:
                raise ValueError("channel is not trace preserving "
                                 "(pass conditional=True for post-selected maps)")

    @property
    def dimension(self) -> int:
        return int(np.prod([f.dimension for f in self.factors]))


def _embed_operator(op: np.ndarray, state: QuantumState,
                    target_labels: tuple[str, ...]) -> np.ndarray:
    """Lift an operator on a factor subset to the full space of `state`."""
    labels = state.labels()
    dims = state.dims
    target_idx = [state.factor_index(lab) for lab in target_labels]
    rest_idx = [i for i in range(len(labels)) if i not in target_idx]
    perm = target_idx + rest_idx
    d_t = int(np.prod([dims[i] for i in target_idx]))
    d_r = int(np.prod([dims[i] for i in rest_idx])) if rest_idx else 1
    big = np.kron(op.reshape(d_t, d_t), np.eye(d_r))
    # permute the tensor legs back to the original factor order
    n = len(dims)
    src_dims = [dims[i] for i in perm]
    big = big.reshape(src_dims + src_dims)
    inv = np.argsort(perm)
    big = big.transpose(list(inv) + [n + j for j in inv])
    full = int(np.prod(dims))
    return big.reshape(full, full)


def apply_channel(state: QuantumState, channel: QuantumChannel):
    """Apply sum_k K rho K†.

    Trace-preserving channels return the output QuantumState.  Conditional
    channels renormalise and return (QuantumState, success_probability).
    """
    for f in channel.factors:
        if f.label not in state.labels():
            raise ValueError(f"channel factor {f.label!r} absent from state")
    target = tuple(f.label for f in channel.factors)
    rho = state.densitymatrix()
    out = np.zeros_like(rho)
    for k in channel.kraus_operators:
        kk = _embed_operator(k, state, target)
        out += kk @ rho @ kk.conj().T
    p = float(np.trace(out).real)
    if channel.conditional:
        if p <= 0:
            raise ValueError("conditional channel annihilated the state")
        result = QuantumState(state.factors, DENSITY, out / p)
        return result, p
    return QuantumState(state.factors, DENSITY, out)


def choi_matrix(channel: QuantumChannel) -> np.ndarray:
    """Choi matrix (channel ⊗ id) |Ω><Ω| with |Ω> the maximally entangled pair.

    Normalised so a trace-preserving channel has Tr(choi) = 1 and partial
    trace over the output factor equal to I/d.
    """
    d = channel.dimension
    choi = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            e_ij = np.zeros((d, d), dtype=complex)
            e_ij[i, j] = 1.0
            out = sum(k @ e_ij @ k.conj().T for k in channel.kraus_operators)
            choi += np.kron(out, e_ij)
    return choi / d


def choi_of_map(apply_map, dim: int = 2) -> np.ndarray:
    """Choi matrix of an arbitrary linear map rho -> rho' given as a callable."""
    choi = np.zeros((dim * dim, dim * dim), dtype=complex)
    for i in range(dim):
        for j in range(dim):
            e_ij = np.zeros((dim, dim), dtype=complex)
            e_ij[i, j] = 1.0
            choi += np.kron(apply_map(e_ij), e_ij)
    return choi / dim


def is_cptp(choi: np.ndarray, tol: float, conditional: bool = False) -> bool:
    """Check complete positivity and (sub-)trace preservation of a Choi matrix.

    Positive semidefinite within tol, and the partial trace over the output
    factor equal to I/d within tol (or <= I/d for conditional maps).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    choi = np.asarray(choi, dtype=complex)
    n = choi.shape[0]
    d = int(round(math.sqrt(n)))
    if d * d != n:
        raise ValueError("choi matrix must be d².d² for some d")
    if np.max(np.abs(choi - choi.conj().T)) > tol:
        return False
    if np.min(np.linalg.eigvalsh((choi + choi.conj().T) / 2)) < -tol:
        return False
    # trace out the output (first) factor
    red = choi.reshape(d, d, d, d).trace(axis1=0, axis2=2)
    gap = red - np.eye(d) / d
    if conditional:
        return bool(np.max(np.linalg.eigvalsh((gap + gap.conj().T) / 2)) <= tol)
    return bool(np.max(np.abs(gap)) <= tol)


def process_fidelity(choi: np.ndarray) -> float:
    """Entanglement fidelity of the (trace-normalised) Choi matrix with the
    identity channel."""
    choi = np.asarray(choi, dtype=complex)
    n = choi.shape[0]
    d = int(round(math.sqrt(n)))
    tr = np.trace(choi).real
    if tr <= 0:
        raise ValueError("choi matrix has non-positive trace")
    omega = np.zeros(n, dtype=complex)
    for i in range(d):
        omega[i * d + i] = 1.0
    omega /= math.sqrt(d)
    return float(np.real(omega.conj() @ (choi / tr) @ omega))
