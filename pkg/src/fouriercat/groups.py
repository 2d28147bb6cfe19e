"""Finite matrix subgroups of U(2) and their Fourier analysis.

Groups are stored as ordered lists of 2x2 unitaries with precomputed
Cayley and inverse tables.  Element equality is decided at a fixed
Frobenius tolerance, and the ordering produced by the breadth-first
closure is deterministic, so element indices are stable across runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Tolerance at which two 2x2 unitaries are considered the same element.
MATCH_TOL = 1e-9

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)
PHASE_S = np.array([[1.0, 0.0], [0.0, 1.0j]], dtype=complex)
PHASE_T = np.array([[1.0, 0.0], [0.0, np.exp(1j * np.pi / 4)]], dtype=complex)


def _is_unitary(u, tol=1e-12):
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        return False
    return np.linalg.norm(u.conj().T @ u - np.eye(2)) <= tol


@dataclass(frozen=True)
class GroupElement:
    """A single group element: its 2x2 matrix and canonical index."""

    matrix: np.ndarray
    index: int


@dataclass
class FiniteMatrixGroup:
    """An ordered finite subgroup of U(2) with multiplication tables."""

    elements: list
    cayley: np.ndarray
    inverse: np.ndarray
    identity_index: int = 0

    @property
    def order(self):
        return len(self.elements)

    def matrix(self, i):
        return self.elements[i].matrix

    def matrices(self):
        return np.array([e.matrix for e in self.elements])

    def find(self, u, tol=MATCH_TOL):
        """Index of the element matching ``u`` exactly, or -1."""
        for e in self.elements:
            if np.linalg.norm(e.matrix - u) <= tol:
                return e.index
        return -1

    def is_abelian(self):
        return np.array_equal(self.cayley, self.cayley.T)


@dataclass
class Irrep:
    """An irreducible representation, one matrix per group element."""

    label: str
    dim: int
    matrices: np.ndarray  # shape (|G|, dim, dim)


@dataclass
class GroupFourierTransform:
    """The |G| x |G| Fourier unitary with its (irrep, l, m) row labels."""

    matrix: np.ndarray
    row_index: list  # list of (label, l, m)
    irreps: list = field(default_factory=list)

    def row(self, label, l, m):
        return self.row_index.index((label, l, m))

    @property
    def defining_label(self):
        """Label of the unique irrep of dimension > 1, if any."""
        for irrep in self.irreps:
            if irrep.dim > 1:
                return irrep.label
        raise ValueError("group has no irrep of dimension > 1")


def generate_group(generators, max_order=64):
    """Close a set of 2x2 unitaries into a finite group by breadth-first search.

    The identity always gets index 0; new elements are appended in the order
    they are first reached, which makes the labeling reproducible.

    Raises:
        ValueError: if a generator is not unitary, or the closure exceeds
            ``max_order`` ("group too large or not finite").
    """
    gens = [np.asarray(g, dtype=complex) for g in generators]
    for g in gens:
        if not _is_unitary(g):
            raise ValueError("generator is not unitary")
    if max_order < 1:
        raise ValueError("max_order must be >= 1")

    mats = [np.eye(2, dtype=complex)]
    frontier = [0]
    while frontier:
        nxt = []
        for i in frontier:
            for g in gens:
                prod = mats[i] @ g
                if not any(np.linalg.norm(prod - m) <= MATCH_TOL for m in mats):
                    if len(mats) >= max_order:
                        raise ValueError("group too large or not finite")
                    mats.append(prod)
                    nxt.append(len(mats) - 1)
        frontier = nxt

    n = len(mats)
    cayley = np.zeros((n, n), dtype=int)
    for i in range(n):
        for j in range(n):
            prod = mats[i] @ mats[j]
            k = next(
                (t for t in range(n) if np.linalg.norm(prod - mats[t]) <= MATCH_TOL),
                -1,
            )
            if k < 0:
                raise ValueError("group too large or not finite")
            cayley[i, j] = k
    inverse = np.array([int(np.where(cayley[i] == 0)[0][0]) for i in range(n)])
    elements = [GroupElement(matrix=m, index=i) for i, m in enumerate(mats)]
    return FiniteMatrixGroup(elements=elements, cayley=cayley, inverse=inverse)


def pauli_group():
    """The real Pauli group <X, Z> of order 8."""
    return generate_group([PAULI_X, PAULI_Z])


def quaternion_group():
    """The quaternion group Q8 = <iX, iZ>."""
    return generate_group([1j * PAULI_X, 1j * PAULI_Z])


def cyclic_group(n):
    """Z_N realized as diag(1, w^k) with w = exp(2 pi i / N)."""
    w = np.exp(2j * np.pi / n)
    return generate_group([np.diag([1.0, w]).astype(complex)], max_order=n)


def _element_order(group, i):
    k, count = i, 1
    while k != group.identity_index:
        k = group.cayley[k, i]
        count += 1
    return count


def _pauli_like_exponents(m):
    """Write a 2x2 unitary as phase * X^a Z^b and return (a, b), or None."""
    if abs(m[0, 1]) > 0.5:  # off-diagonal: involves X
        a = 1
        if abs(m[0, 1] - m[1, 0]) <= 1e-6:
            b = 0
        elif abs(m[0, 1] + m[1, 0]) <= 1e-6:
            b = 1
        else:
            return None
        if abs(m[0, 0]) > 1e-6 or abs(m[1, 1]) > 1e-6:
            return None
    else:
        a = 0
        if abs(m[0, 0] - m[1, 1]) <= 1e-6:
            b = 0
        elif abs(m[0, 0] + m[1, 1]) <= 1e-6:
            b = 1
        else:
            return None
    return a, b


def irrep_table(group):
    """The complete list of irreps for a supported group.

    Supported: the order-8 Pauli-like groups D8 = <X,Z> and Q8 = <iX,iZ>
    (four characters plus the 2-dimensional defining representation) and
    cyclic groups Z_N (N characters).  The tables are validated against the
    homomorphism, unitarity and irreducibility invariants before being
    returned.
    """
    n = group.order
    irreps = []
    if group.is_abelian():
        # Find a generator of the full cyclic group.
        gen = next(
            (i for i in range(n) if _element_order(group, i) == n),
            None,
        )
        if gen is None:
            raise ValueError("irrep table not available")
        power = np.zeros(n, dtype=int)
        k = group.identity_index
        for p in range(n):
            power[k] = p
            k = group.cayley[k, gen]
        w = np.exp(2j * np.pi / n)
        for k in range(n):
            mats = np.array([[[w ** (k * power[i])]] for i in range(n)])
            irreps.append(Irrep(label=f"chi{k}", dim=1, matrices=mats))
    elif n == 8:
        exps = [_pauli_like_exponents(group.matrix(i)) for i in range(n)]
        if any(e is None for e in exps):
            raise ValueError("irrep table not available")
        for s in (0, 1):
            for t in (0, 1):
                mats = np.array(
                    [[[complex((-1.0) ** (s * a + t * b))]] for (a, b) in exps]
                )
                irreps.append(Irrep(label=f"chi{s}{t}", dim=1, matrices=mats))
        irreps.append(Irrep(label="lambda", dim=2, matrices=group.matrices()))
    else:
        raise ValueError("irrep table not available")

    for irrep in irreps:
        _validate_irrep(group, irrep)
    if sum(r.dim**2 for r in irreps) != n:
        raise ValueError("irrep table not available")
    return irreps


def _validate_irrep(group, irrep, tol=1e-10):
    mats = irrep.matrices
    for i in range(group.order):
        if np.linalg.norm(mats[i].conj().T @ mats[i] - np.eye(irrep.dim)) > tol:
            raise ValueError("irrep table not available")
        for j in range(group.order):
            k = group.cayley[i, j]
            if np.linalg.norm(mats[i] @ mats[j] - mats[k]) > tol:
                raise ValueError("irrep table not available")
    char_sum = sum(abs(np.trace(m)) ** 2 for m in mats)
    if abs(char_sum - group.order) > 1e-8:
        raise ValueError("irrep table not available")


def build_fourier_transform(group, irreps):
    """The group Fourier transform F_G over the given irrep table.

    Rows are ordered with the one-dimensional irreps first (in table order),
    then the higher-dimensional ones, with (l, m) row-major inside each
    irrep.  Entry convention: F[(rho,l,m), g] = sqrt(d_rho/|G|) rho(g)[l,m],
    which makes F unitary by Schur orthogonality.
    """
    n = group.order
    if sum(r.dim**2 for r in irreps) != n:
        raise ValueError("incomplete irrep set: dimension mismatch")
    ordered = [r for r in irreps if r.dim == 1] + [r for r in irreps if r.dim > 1]
    rows = []
    row_index = []
    for irrep in ordered:
        scale = np.sqrt(irrep.dim / n)
        for l in range(irrep.dim):
            for m in range(irrep.dim):
                rows.append(scale * irrep.matrices[:, l, m])
                row_index.append((irrep.label, l, m))
    matrix = np.array(rows)
    return GroupFourierTransform(matrix=matrix, row_index=row_index, irreps=ordered)


def regular_representation(group, g, side="left"):
    """Permutation matrix of the left or right regular representation.

    Left action sends |h> to |gh>; right action sends |h> to |h g^-1>.
    """
    n = group.order
    mat = np.zeros((n, n))
    if side == "left":
        for h in range(n):
            mat[group.cayley[g, h], h] = 1.0
    elif side == "right":
        ginv = group.inverse[g]
        for h in range(n):
            mat[group.cayley[h, ginv], h] = 1.0
    else:
        raise ValueError(f"unknown side {side!r}")
    return mat


def verify_block_diagonalization(fourier, group, irreps):
    """Max residual of the simultaneous block-diagonalization identities.

    For every g, F L(g) F^dag must equal the direct sum of rho(g) x I and
    F R(g) F^dag the direct sum of I x conj(rho(g)).  The conjugate on the
    right-hand blocks is forced by the inverse in the right action; for
    groups whose irrep matrices are real (such as <X, Z>) it is invisible.
    """
    ordered = fourier.irreps
    f = fourier.matrix
    worst = 0.0
    for g in range(group.order):
        left = f @ regular_representation(group, g, "left") @ f.conj().T
        right = f @ regular_representation(group, g, "right") @ f.conj().T
        lblocks = []
        rblocks = []
        for irrep in ordered:
            rho = irrep.matrices[g]
            lblocks.append(np.kron(rho, np.eye(irrep.dim)))
            rblocks.append(np.kron(np.eye(irrep.dim), rho.conj()))
        worst = max(
            worst,
            np.linalg.norm(left - _block_diag(lblocks)),
            np.linalg.norm(right - _block_diag(rblocks)),
        )
    return worst


def _block_diag(blocks):
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n), dtype=complex)
    k = 0
    for b in blocks:
        d = b.shape[0]
        out[k : k + d, k : k + d] = b
        k += d
    return out


def normalizer_membership(group, u, tol=MATCH_TOL):
    """Whether ``u`` normalizes the group up to global phases.

    True iff U g U^dag matches some group element up to a global phase for
    every g.  The phase is extracted from the largest-magnitude entry of the
    candidate element.
    """
    u = np.asarray(u, dtype=complex)
    if not _is_unitary(u, tol=1e-10):
        raise ValueError("normalizer test requires a unitary matrix")
    for e in group.elements:
        v = u @ e.matrix @ u.conj().T
        if not any(_phase_match(v, f.matrix, tol) for f in group.elements):
            return False
    return True


def _phase_match(a, b, tol):
    idx = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    phase = a[idx] / b[idx]
    if abs(abs(phase) - 1.0) > 1e-6:
        return False
    return np.linalg.norm(a - phase * b) <= tol
