"""Truncated multimode Fock-space numerics.

States are dense complex vectors over the number basis, row-major in mode
order; operators are dense matrices on the same basis.  Every constructor
that builds a physical state from coherent amplitudes audits the truncated
Poisson tail so that silent truncation errors cannot creep into downstream
fidelity computations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.linalg import expm, logm

DEFAULT_CUTOFF = 25
TAIL_TOL = 1e-12


@dataclass(frozen=True)
class FockConfig:
    """Mode count and per-mode photon-number cutoff."""

    modes: int
    cutoff: int = DEFAULT_CUTOFF

    def __post_init__(self):
        if self.modes < 1 or self.cutoff < 1:
            raise ValueError("modes and cutoff must be >= 1")

    @property
    def dim_per_mode(self):
        return self.cutoff + 1

    @property
    def dim(self):
        return self.dim_per_mode**self.modes


@dataclass
class FockState:
    config: FockConfig
    amplitudes: np.ndarray

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    def overlap(self, other):
        """<self|other>."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def normalized(self):
        n = self.norm()
        if n < 1e-300:
            raise ValueError("cannot normalize a zero state")
        return FockState(self.config, self.amplitudes / n)

    def tensor(self):
        """Amplitudes reshaped to one axis per mode."""
        d = self.config.dim_per_mode
        return self.amplitudes.reshape((d,) * self.config.modes)


@dataclass
class FockOperator:
    config: FockConfig
    matrix: np.ndarray

    def apply(self, state):
        return FockState(state.config, self.matrix @ state.amplitudes)

    def __matmul__(self, other):
        if isinstance(other, FockOperator):
            return FockOperator(self.config, self.matrix @ other.matrix)
        return NotImplemented

    def dagger(self):
        return FockOperator(self.config, self.matrix.conj().T)


def infidelity(a, b):
    """1 - |<a|b>| for normalized states; global-phase insensitive."""
    return 1.0 - abs(a.overlap(b))


def destroy_matrix(cutoff):
    d = cutoff + 1
    m = np.zeros((d, d), dtype=complex)
    for n in range(1, d):
        m[n - 1, n] = np.sqrt(n)
    return m


def lift(single, mode, config):
    """Embed a single-mode matrix into the full multimode space."""
    d = config.dim_per_mode
    out = np.array([[1.0 + 0j]])
    for k in range(config.modes):
        out = np.kron(out, single if k == mode else np.eye(d))
    return out


def mode_destroy(config, mode):
    return FockOperator(config, lift(destroy_matrix(config.cutoff), mode, config))


def mode_number(config, mode):
    d = destroy_matrix(config.cutoff)
    return FockOperator(config, lift(d.conj().T @ d, mode, config))


def coherent_amplitudes(alpha, cutoff, tail_tol=TAIL_TOL):
    """Truncated coherent amplitudes, with an explicit tail-mass audit."""
    n = np.arange(cutoff + 1)
    logfact = np.cumsum(np.concatenate([[0.0], np.log(np.arange(1, cutoff + 1))]))
    with np.errstate(divide="ignore"):
        logmag = n * np.log(np.abs(alpha)) if alpha != 0 else np.where(n == 0, 0.0, -np.inf)
    amps = np.exp(-abs(alpha) ** 2 / 2 + logmag - logfact / 2) * np.exp(
        1j * n * np.angle(alpha)
    )
    tail = 1.0 - float(np.sum(np.abs(amps) ** 2))
    if tail > tail_tol:
        raise ValueError(f"cutoff too small for |alpha| = {abs(alpha):.4g}")
    return amps


def coherent_state(alpha, cutoff=DEFAULT_CUTOFF, tail_tol=TAIL_TOL):
    """Single-mode coherent state |alpha>, renormalized after truncation."""
    amps = coherent_amplitudes(alpha, cutoff, tail_tol)
    state = FockState(FockConfig(1, cutoff), amps)
    return state.normalized()


def coherent_product(alphas, cutoff=DEFAULT_CUTOFF, tail_tol=TAIL_TOL):
    """Multimode coherent product state |alpha_1, ..., alpha_k>."""
    alphas = list(alphas)
    amps = np.array([1.0 + 0j])
    for a in alphas:
        amps = np.kron(amps, coherent_amplitudes(a, cutoff, tail_tol))
    state = FockState(FockConfig(len(alphas), cutoff), amps)
    return state.normalized()


def cat_state(alpha, parity, cutoff=DEFAULT_CUTOFF):
    """Normalized |alpha> + (-1)^parity |-alpha>, single mode.

    The parity-0 cat is supported on even photon numbers only, the parity-1
    cat on odd numbers only.
    """
    if parity not in (0, 1):
        raise ValueError("parity must be 0 or 1")
    if alpha == 0 and parity == 1:
        raise ValueError("odd cat state is undefined at alpha = 0")
    plus = coherent_amplitudes(alpha, cutoff)
    minus = coherent_amplitudes(-alpha, cutoff)
    amps = plus + (-1.0) ** parity * minus
    state = FockState(FockConfig(1, cutoff), amps)
    return state.normalized()


def _monomial_structure(u, tol=1e-12):
    """(perm, phases) when u is a generalized permutation matrix, else None.

    perm[k] is the row carrying column k's single unit-modulus entry and
    phases[k] that entry.
    """
    d = u.shape[0]
    perm = np.empty(d, dtype=int)
    phases = np.empty(d, dtype=complex)
    for k in range(d):
        col = u[:, k]
        j = int(np.argmax(np.abs(col)))
        if abs(abs(col[j]) - 1.0) > tol:
            return None
        if np.linalg.norm(col) ** 2 - abs(col[j]) ** 2 > tol**2:
            return None
        perm[k] = j
        phases[k] = col[j]
    if len(set(perm.tolist())) != d:
        return None
    return perm, phases


def _monomial_unitary(perm, phases, config):
    """Exact second quantization of a mode permutation with phases.

    pi(U)|n_1..n_m> = prod_k phases_k^{n_k} |n with mode k sent to perm[k]>;
    number-preserving per mode, so truncation introduces no error at all.
    """
    d = config.dim_per_mode
    grids = np.indices((d,) * config.modes)
    phase = np.ones((d,) * config.modes, dtype=complex)
    for k in range(config.modes):
        phase = phase * phases[k] ** grids[k]
    src = np.ravel_multi_index(grids, (d,) * config.modes).ravel()
    tgt_coords = [None] * config.modes
    for k in range(config.modes):
        tgt_coords[perm[k]] = grids[k]
    tgt = np.ravel_multi_index(tgt_coords, (d,) * config.modes).ravel()
    mat = np.zeros((config.dim, config.dim), dtype=complex)
    mat[tgt, src] = phase.ravel()
    return FockOperator(config, mat)


def passive_gaussian_unitary(u, config):
    """Second quantization of a U(d) mode rotation: pi(U)|alpha> = |U alpha>.

    Generalized permutation matrices are lifted exactly; any other unitary is
    built by exponentiating the quadratic Hamiltonian sum_jk h_jk a_j^dag a_k
    with h the principal logarithm of U.  That route is number-preserving but
    only exact on total-number sectors that fit entirely under the per-mode
    cutoff, so the corner sectors carry a small truncation error.
    """
    u = np.asarray(u, dtype=complex)
    if u.shape != (config.modes, config.modes):
        raise ValueError("matrix dimension does not match mode count")
    if np.linalg.norm(u.conj().T @ u - np.eye(config.modes)) > 1e-10:
        raise ValueError("mode transformation must be unitary")
    monomial = _monomial_structure(u)
    if monomial is not None:
        return _monomial_unitary(*monomial, config)
    h = -1j * logm(u)
    h = (h + h.conj().T) / 2
    a_ops = [mode_destroy(config, k).matrix for k in range(config.modes)]
    ham = np.zeros((config.dim, config.dim), dtype=complex)
    for j in range(config.modes):
        for k in range(config.modes):
            if abs(h[j, k]) > 0:
                ham += h[j, k] * (a_ops[j].conj().T @ a_ops[k])
    vals, vecs = np.linalg.eigh((ham + ham.conj().T) / 2)
    mat = (vecs * np.exp(1j * vals)) @ vecs.conj().T
    return FockOperator(config, mat)


def number_diagonal_operator(f: Callable, config):
    """Diagonal unitary with entries f(n_1, ..., n_modes), |f| = 1 pointwise."""
    d = config.dim_per_mode
    grids = np.meshgrid(*[np.arange(d)] * config.modes, indexing="ij")
    values = np.vectorize(f)(*grids).astype(complex).reshape(-1)
    if np.max(np.abs(np.abs(values) - 1.0)) > 1e-12:
        raise ValueError("diagonal entries must be unimodular")
    return FockOperator(config, np.diag(values))


def annihilate(state, mode):
    """Apply the annihilation operator on one mode; result is unnormalized."""
    if not 0 <= mode < state.config.modes:
        raise ValueError("invalid mode index")
    d = state.config.dim_per_mode
    t = state.tensor()
    n = np.arange(1, d)
    out = np.zeros_like(t)
    sl_lo = [slice(None)] * state.config.modes
    sl_hi = [slice(None)] * state.config.modes
    sl_lo[mode] = slice(0, d - 1)
    sl_hi[mode] = slice(1, d)
    shape = [1] * state.config.modes
    shape[mode] = d - 1
    out[tuple(sl_lo)] = np.sqrt(n).reshape(shape) * t[tuple(sl_hi)]
    return FockState(state.config, out.reshape(-1))


class MatrixRoots(NamedTuple):
    inv_sqrt: np.ndarray
    sqrt: np.ndarray


def hermitian_inv_sqrt(a, floor=1e-12, pseudo=False):
    """Inverse square root of a Hermitian PSD matrix by eigendecomposition.

    Eigenvalues below ``floor`` times the largest one are rejected unless
    ``pseudo`` is set, in which case they are dropped (pseudo-inverse) —
    used for rank-deficient Gram matrices of nearly coincident states.
    Returns both A^(-1/2) and A^(1/2).
    """
    a = np.asarray(a, dtype=complex)
    if np.linalg.norm(a - a.conj().T) > 1e-10:
        raise ValueError("matrix is not Hermitian")
    w, v = np.linalg.eigh((a + a.conj().T) / 2)
    wmax = float(np.max(w))
    if wmax <= 0:
        raise ValueError("Gram matrix numerically singular")
    keep = w > floor * wmax
    if not pseudo and not np.all(keep):
        raise ValueError("Gram matrix numerically singular")
    inv_w = np.where(keep, 1.0 / np.sqrt(np.where(keep, w, 1.0)), 0.0)
    sqrt_w = np.sqrt(np.clip(w, 0.0, None))
    inv_sqrt = (v * inv_w) @ v.conj().T
    sqrt = (v * sqrt_w) @ v.conj().T
    return MatrixRoots(inv_sqrt=inv_sqrt, sqrt=sqrt)
