"""Constellations, Gram matrices and the quantum Fourier encodings.

The two-mode code is built from the orbit of a coherent amplitude vector
under a finite subgroup of U(2).  The encoded basis states are obtained by
applying the inverse group Fourier transform to the Gram-orthonormalized
constellation states.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import (
    DEFAULT_CUTOFF,
    FockConfig,
    FockOperator,
    FockState,
    coherent_product,
    hermitian_inv_sqrt,
)

GRAM_FLOOR = 1e-12


@dataclass
class Constellation:
    """The orbit {|g alpha>} of a two-mode coherent state under the group."""

    group: object
    alpha_vec: np.ndarray
    states: list
    config: FockConfig

    @property
    def points(self):
        """The C^2 amplitude vectors g @ alpha_vec, in group order."""
        return np.array([e.matrix @ self.alpha_vec for e in self.group.elements])


@dataclass
class CodeBasis:
    """The four encoded basis states, ordered (0,0), (0,1), (1,0), (1,1)."""

    constellation: Constellation
    fourier: object
    basis_states: list
    projector: FockOperator

    @property
    def config(self):
        return self.constellation.config

    @property
    def alpha(self):
        return float(np.abs(self.constellation.alpha_vec[0]))

    def state(self, l, m):
        return self.basis_states[2 * l + m]


def constellation_from_vector(group, alpha_vec, cutoff=DEFAULT_CUTOFF):
    alpha_vec = np.asarray(alpha_vec, dtype=complex)
    points = [e.matrix @ alpha_vec for e in group.elements]
    scale = max(1.0, float(np.linalg.norm(alpha_vec)))
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if np.linalg.norm(points[i] - points[j]) <= 1e-9 * scale:
                raise ValueError("degenerate constellation")
    states = [coherent_product(p, cutoff) for p in points]
    return Constellation(
        group=group,
        alpha_vec=alpha_vec,
        states=states,
        config=FockConfig(2, cutoff),
    )


def make_constellation(group, alpha, phi, cutoff=DEFAULT_CUTOFF):
    """Constellation of |alpha, alpha e^{i phi}> under the group orbit."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    return constellation_from_vector(
        group, [alpha, alpha * np.exp(1j * phi)], cutoff
    )


def deform_constellation(constellation, u):
    """The constellation obtained from the initial state |U alpha>."""
    return constellation_from_vector(
        constellation.group,
        np.asarray(u, dtype=complex) @ constellation.alpha_vec,
        constellation.config.cutoff,
    )


def gram_matrix(constellation):
    """Fock-space Gram matrix of the constellation states (Hermitized)."""
    amps = np.array([s.amplitudes for s in constellation.states])
    g = amps.conj() @ amps.T
    return (g + g.conj().T) / 2


def analytic_gram(group, alpha_vec):
    """Exact coherent-state overlaps <g alpha|h alpha>, truncation-free."""
    pts = np.array([e.matrix @ np.asarray(alpha_vec, dtype=complex) for e in group.elements])
    sq = np.sum(np.abs(pts) ** 2, axis=1)
    cross = pts.conj() @ pts.T
    return np.exp(cross - 0.5 * (sq[:, None] + sq[None, :]))


def orthonormal_group_basis(constellation, gram=None):
    """The orthonormal states |g> = sum_h [Gamma^(-1/2)]_{h,g} |h alpha>."""
    if gram is None:
        gram = gram_matrix(constellation)
    inv_sqrt = hermitian_inv_sqrt(gram, floor=GRAM_FLOOR).inv_sqrt
    amps = np.array([s.amplitudes for s in constellation.states])
    basis = inv_sqrt.T @ amps  # row g = sum_h inv_sqrt[h, g] amps[h]
    return [FockState(constellation.config, row) for row in basis]


def _encoding_coefficients(constellation, fourier):
    """Column (lambda, l, m) of Gamma^(-1/2) F^dag, for all four (l, m)."""
    gram = gram_matrix(constellation)
    inv_sqrt = hermitian_inv_sqrt(gram, floor=GRAM_FLOOR).inv_sqrt
    coeff = inv_sqrt @ fourier.matrix.conj().T
    label = fourier.defining_label
    cols = {}
    for l in (0, 1):
        for m in (0, 1):
            cols[(l, m)] = coeff[:, fourier.row(label, l, m)]
    return cols


def encode(constellation, fourier, l, m):
    """The quantum Fourier code state for logical l and multiplicity m."""
    if l not in (0, 1) or m not in (0, 1):
        raise ValueError("l and m must be 0 or 1")
    cols = _encoding_coefficients(constellation, fourier)
    amps = np.array([s.amplitudes for s in constellation.states])
    state = FockState(constellation.config, cols[(l, m)] @ amps)
    return state.normalized()


def code_basis(constellation, fourier):
    """All four encoded basis states plus the code projector."""
    cols = _encoding_coefficients(constellation, fourier)
    amps = np.array([s.amplitudes for s in constellation.states])
    states = []
    for l in (0, 1):
        for m in (0, 1):
            states.append(
                FockState(constellation.config, cols[(l, m)] @ amps).normalized()
            )
    proj = np.zeros((constellation.config.dim,) * 2, dtype=complex)
    for s in states:
        proj += np.outer(s.amplitudes, s.amplitudes.conj())
    return CodeBasis(
        constellation=constellation,
        fourier=fourier,
        basis_states=states,
        projector=FockOperator(constellation.config, proj),
    )


def deformed_encode(constellation, u, fourier, l, m):
    """The encoding built on the deformed constellation {|g U alpha>}."""
    return encode(deform_constellation(constellation, u), fourier, l, m)


def covariant_encode(constellation, fourier, l, omega):
    """Single-qubit covariant encoding: F^dag applied directly to |g alpha>.

    The multiplicity slot of the Fourier row is contracted with the
    normalized 2-vector ``omega``.
    """
    omega = np.asarray(omega, dtype=complex)
    if abs(np.linalg.norm(omega) - 1.0) > 1e-10:
        raise ValueError("omega must be normalized")
    label = fourier.defining_label
    coeff = np.zeros(constellation.group.order, dtype=complex)
    for m in (0, 1):
        row = fourier.matrix[fourier.row(label, l, m)]
        coeff += omega[m] * row.conj()
    amps = np.array([s.amplitudes for s in constellation.states])
    vec = coeff @ amps
    norm = np.linalg.norm(vec)
    if norm < 1e-12:
        raise ValueError("covariant encoding projected to the zero vector")
    return FockState(constellation.config, vec / norm)


def gram_fourier_spectrum(gram, fourier):
    """F Gamma F^dag, its off-diagonal mass and the defining-irrep block.

    Returns (rotated matrix, off-diagonal Frobenius norm, 4x4 block of the
    2-dimensional irrep rows, deviation of that block from scalar * I).
    """
    f = fourier.matrix
    rotated = f @ gram @ f.conj().T
    off = rotated - np.diag(np.diag(rotated))
    label = fourier.defining_label
    idx = [fourier.row(label, l, m) for l in (0, 1) for m in (0, 1)]
    block = rotated[np.ix_(idx, idx)]
    scalar = np.trace(block) / 4.0
    return rotated, float(np.linalg.norm(off)), block, float(
        np.linalg.norm(block - scalar * np.eye(4))
    )


def min_euclidean_distance(constellation):
    """Smallest pairwise distance between constellation points in C^2."""
    pts = constellation.points
    if len(pts) < 2:
        raise ValueError("constellation has fewer than two points")
    dists = [
        np.linalg.norm(pts[i] - pts[j])
        for i in range(len(pts))
        for j in range(i + 1, len(pts))
    ]
    return float(min(dists))


@dataclass
class CatQuditCode:
    """Single-mode d-dimensional cat code over the cyclic group Z_N."""

    n: int
    d: int
    alpha: float
    delta: np.ndarray
    codewords: list

    @property
    def m(self):
        return self.n // self.d


def cat_qudit(n, d, alpha, cutoff=None):
    """Standard cat-qudit codewords and the cyclic Gram spectrum.

    delta_k = e^{-alpha^2} sum_l w^{kl} e^{alpha^2 w^l} are the Fourier
    eigenvalues of the cyclic Gram matrix; the codeword for |k> is the
    normalized sum of w^{-kpM}-weighted rotated coherent states.
    """
    if d < 1 or n % d != 0:
        raise ValueError("d must divide N")
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if cutoff is None:
        cutoff = max(DEFAULT_CUTOFF, int(np.ceil(abs(alpha) ** 2 + 10 * abs(alpha))))
    w = np.exp(2j * np.pi / n)
    ls = np.arange(n)
    delta = np.array(
        [np.exp(-(alpha**2)) * np.sum(w ** (k * ls) * np.exp(alpha**2 * w**ls)) for k in range(n)]
    )
    if np.max(np.abs(delta.imag)) > 1e-10 or np.min(delta.real) < -1e-12:
        raise ValueError("cyclic Gram spectrum is not real nonnegative")
    delta = np.clip(delta.real, 0.0, None)
    m = n // d
    codewords = []
    from .fock import coherent_amplitudes, FockState as _FS

    rotated = np.array([coherent_amplitudes(w**p * alpha, cutoff) for p in range(n)])
    for k in range(d):
        if delta[(k * m) % n] < 1e-12:
            raise ValueError("codeword numerically null")
        weights = w ** (-k * np.arange(n) * m)
        vec = weights @ rotated / np.sqrt(n * delta[(k * m) % n])
        codewords.append(_FS(FockConfig(1, cutoff), vec).normalized())
    return CatQuditCode(n=n, d=d, alpha=alpha, delta=delta, codewords=codewords)


def cyclic_gram(n, alpha):
    """Gram matrix of the rotated coherent family {|w^k alpha>}."""
    w = np.exp(2j * np.pi / n)
    k = np.arange(n)
    return np.exp(alpha**2 * (-1 + w ** (k[None, :] - k[:, None])))


def cyclic_fourier(n):
    """DFT matrix w^{kl}/sqrt(N) matching the cat-qudit convention."""
    w = np.exp(2j * np.pi / n)
    k = np.arange(n)
    return w ** np.outer(k, k) / np.sqrt(n)
