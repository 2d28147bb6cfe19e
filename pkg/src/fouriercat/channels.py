"""Pure-loss channel diagnostics and the Petz entanglement fidelity.

Two routes compute the QEC matrix of the code under loss: an analytic
contraction of closed-form Gram matrices (exact, truncation-free, used for
parameter sweeps) and a brute-force Fock-space simulation of the
beamsplitter dilation (the cross-validation oracle).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import encoding
from .fock import (
    FockConfig,
    FockState,
    annihilate,
    coherent_amplitudes,
    hermitian_inv_sqrt,
    mode_destroy,
    passive_gaussian_unitary,
)

PLUS_I = np.array([1.0, 1.0j]) / np.sqrt(2.0)


@dataclass(frozen=True)
class LossChannel:
    """Pure loss of probability gamma; transmissivity t = sqrt(1 - gamma)."""

    gamma: float

    def __post_init__(self):
        if not 0.0 <= self.gamma < 1.0:
            raise ValueError("gamma must lie in [0, 1)")

    @property
    def t(self):
        return np.sqrt(1.0 - self.gamma)

    @property
    def r(self):
        return np.sqrt(self.gamma)


@dataclass
class QecMatrix:
    """16x16 matrix <k,0|C_p^dag C_q|l,0> over logical x environment labels."""

    entries: np.ndarray
    d: int = 2
    extras: dict = field(default_factory=dict)


def lambda_matrix(group):
    """Gram matrix of the C^2 family {g |+_i>}, computed exactly."""
    vecs = np.array([e.matrix @ PLUS_I for e in group.elements])
    return vecs.conj() @ vecs.T


def loss_gram_matrices(lam, alpha, gamma):
    """(Gamma, Gamma_t, Gamma_r) for the constellation (alpha, i alpha).

    All three are entrywise exponentials of the 2-vector Gram matrix; at
    gamma = 0, Gamma_t reduces to Gamma and Gamma_r to the all-ones matrix.
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if not 0.0 <= gamma < 1.0:
        raise ValueError("gamma must lie in [0, 1)")
    base = lam - 1.0
    gram = np.exp(2 * alpha**2 * base)
    gram_t = np.exp(2 * (1.0 - gamma) * alpha**2 * base)
    gram_r = np.exp(2 * gamma * alpha**2 * base)
    return gram, gram_t, gram_r


def _sqrt_psd(a):
    w, v = np.linalg.eigh((a + a.conj().T) / 2)
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def qec_matrix_analytic(group, fourier, alpha, gamma, floor=1e-12):
    """QEC matrix from the closed-form Gram contraction.

    M[kp, lq] = sum_{g,h} [F G^-1/2]_{k0,g} [G^-1/2 F^dag]_{h,l0}
                [G_r^1/2]_{gp} [G_r^1/2]_{qh} [G_t]_{gh}.
    """
    lam = lambda_matrix(group)
    gram, gram_t, gram_r = loss_gram_matrices(lam, alpha, gamma)
    inv_sqrt = hermitian_inv_sqrt(gram, floor=floor).inv_sqrt
    sr = _sqrt_psd(gram_r)
    label = fourier.defining_label
    rows = [fourier.row(label, k, 0) for k in (0, 1)]
    a = (fourier.matrix @ inv_sqrt)[rows]  # a[k, g]
    m = np.einsum("kg,lh,gp,qh,gh->kplq", a, a.conj(), sr, sr, gram_t, optimize=True)
    n = group.order
    entries = m.reshape(2 * n, 2 * n)
    entries = (entries + entries.conj().T) / 2
    return QecMatrix(entries=entries)


def petz_entanglement_fidelity(qec):
    """Entanglement fidelity of the Petz recovery: ||tr_L M^1/2||_hs^2 / d^2.

    The partial trace is over the logical index; eigenvalues of M that are
    negative beyond tolerance raise, tiny negatives are clipped to zero.
    """
    m = qec.entries
    if np.linalg.norm(m - m.conj().T) > 1e-8:
        raise ValueError("QEC matrix is not Hermitian")
    w, v = np.linalg.eigh((m + m.conj().T) / 2)
    wmax = float(np.max(w))
    if wmax > 0 and float(np.min(w)) < -1e-8 * wmax:
        raise ValueError("QEC matrix is not positive semidefinite")
    sqrt_m = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    d = qec.d
    n_env = m.shape[0] // d
    blocks = sqrt_m.reshape(d, n_env, d, n_env)
    reduced = np.einsum("kpkq->pq", blocks)
    fid = float(np.sum(np.abs(reduced) ** 2)) / d**2
    return min(fid, 1.0) if fid <= 1.0 + 1e-9 else fid


def _beamsplitter(config, gamma):
    t = np.sqrt(1.0 - gamma)
    r = np.sqrt(gamma)
    u = np.array([[t, -r], [r, t]])
    return passive_gaussian_unitary(u, config)


def qec_matrix_fock(code, gamma, env_floor=1e-13):
    """Brute-force QEC matrix: beamsplitter dilation plus constellation basis.

    Each mode is mixed with a vacuum ancilla at transmissivity sqrt(1-gamma);
    the two reflected modes are projected onto the orthonormalized family
    of reflected constellation states.  Near gamma = 0 that family is
    rank-deficient, so the orthonormalization uses a pseudo-inverse with a
    relative eigenvalue floor.  Kraus completeness on the code subspace is
    recorded in ``extras``.
    """
    config = code.config
    d = config.dim_per_mode
    n = code.constellation.group.order
    bs = _beamsplitter(FockConfig(2, config.cutoff), gamma).matrix
    b4 = bs.reshape(d, d, d, d)  # (out_sys, out_env, in_sys, in_env)

    # Environment basis from the reflected constellation.
    r = np.sqrt(gamma)
    env_points = code.constellation.points * r
    env_amps = np.array(
        [
            np.kron(
                coherent_amplitudes(p[0], config.cutoff),
                coherent_amplitudes(p[1], config.cutoff),
            )
            for p in env_points
        ]
    )
    env_amps /= np.linalg.norm(env_amps, axis=1)[:, None]
    env_gram = env_amps.conj() @ env_amps.T
    env_inv_sqrt = hermitian_inv_sqrt(
        (env_gram + env_gram.conj().T) / 2, floor=env_floor, pseudo=True
    ).inv_sqrt
    env_basis = env_inv_sqrt.T @ env_amps  # row p: |p>_r
    env_tensors = env_basis.reshape(n, d, d)

    kraus_images = np.zeros((len(code.basis_states), n, d, d), dtype=complex)
    for j, state in enumerate(code.basis_states):
        amp = state.tensor()
        # Attach both vacuum ancillas, then mix each mode with its ancilla.
        s1 = np.einsum("PCa,ab->PbC", b4[:, :, :, 0], amp)  # (n1', n2, m1')
        s2 = np.einsum("QDb,Pbc->PQcD", b4[:, :, :, 0], s1)  # (n1',n2',m1',m2')
        # Project the environment pair onto each |p>_r.
        kraus_images[j] = np.einsum("pcd,PQcd->pPQ", env_tensors.conj(), s2)

    flat = kraus_images.reshape(len(code.basis_states), n, d * d)
    overlaps = np.einsum("ipx,jqx->ipjq", flat.conj(), flat)

    completeness = np.einsum("ipjp->ij", overlaps)
    completeness_residual = float(np.linalg.norm(completeness - np.eye(4)))

    # Restrict to the |k, 0> logical pair (basis index 2k + 0).
    idx = [0, 2]
    m = overlaps[np.ix_(idx, range(n), idx, range(n))].reshape(2 * n, 2 * n)
    m = (m + m.conj().T) / 2
    return QecMatrix(
        entries=m,
        extras={
            "completeness_residual": completeness_residual,
            "kraus_images": kraus_images,
        },
    )


def kl_first_order_check(code, psi_m):
    """Max pairwise overlap of the six first-order Knill-Laflamme states.

    psi_m = (c, s) fixes the multiplicity-register state; the six states are
    the two logical states and their images under a_1 and a_2, normalized.
    """
    c, s = psi_m
    states = []
    for l in (0, 1):
        amps = c * code.state(l, 0).amplitudes + s * code.state(l, 1).amplitudes
        states.append(FockState(code.config, amps).normalized())
    for mode in (0, 1):
        for l in (0, 1):
            states.append(annihilate(states[l], mode).normalized())
    worst = 0.0
    for i in range(6):
        for j in range(i + 1, 6):
            worst = max(worst, abs(states[i].overlap(states[j])))
    return worst


def lindblad_kernel_check(code, deformed=False):
    """Kernel residuals of the stabilizing Lindblad operators on the code.

    Returns (per-operator max residual dict, odd-parity projector residual).
    Residuals are normalized by alpha^4 (alpha^2 for the quadratic operator).
    With ``deformed`` set, the beamsplitter-deformed code and the primed
    operators (signs of the alpha^4 offsets flipped) are used instead.
    """
    from .groups import HADAMARD

    alpha = code.alpha
    if deformed:
        constellation = encoding.deform_constellation(code.constellation, HADAMARD)
        basis = encoding.code_basis(constellation, code.fourier)
        sign = -1.0
    else:
        basis = code
        sign = 1.0
    config = basis.config
    a1 = mode_destroy(config, 0).matrix
    a2 = mode_destroy(config, 1).matrix
    eye = np.eye(config.dim)
    a1sq, a2sq = a1 @ a1, a2 @ a2
    ops = {
        "L1": a1sq @ a1sq - sign * alpha**4 * eye,
        "L2": a2sq @ a2sq - sign * alpha**4 * eye,
        "L12": a1sq @ a2sq + sign * alpha**4 * eye,
    }
    scales = {"L1": alpha**4, "L2": alpha**4, "L12": alpha**4}
    if not deformed:
        ops["L0"] = a1sq + a2sq
        scales["L0"] = alpha**2
    residuals = {}
    for name, op in ops.items():
        residuals[name] = max(
            float(np.linalg.norm(op @ s.amplitudes)) / scales[name]
            for s in basis.basis_states
        )
    d = config.dim_per_mode
    n1 = np.repeat(np.arange(d), d)
    n2 = np.tile(np.arange(d), d)
    odd_mask = ((n1 + n2) % 2 == 1).astype(float)
    parity_residual = max(
        float(np.linalg.norm(odd_mask * s.amplitudes - s.amplitudes))
        for s in basis.basis_states
    )
    return residuals, parity_residual


@dataclass
class SweepRecord:
    value: float
    infidelity: float
    condition_number: float
    flags: list = field(default_factory=list)


def _petz_infidelity(group, fourier, alpha, gamma, floor=1e-12):
    lam = lambda_matrix(group)
    gram = loss_gram_matrices(lam, alpha, gamma)[0]
    cond = float(np.linalg.cond(gram))
    w = np.linalg.eigvalsh(gram)
    if float(np.min(w)) <= floor * float(np.max(w)):
        return None, cond
    qec = qec_matrix_analytic(group, fourier, alpha, gamma, floor=floor)
    return 1.0 - petz_entanglement_fidelity(qec), cond


def sweep_alpha(group, fourier, gamma, alpha_grid):
    """Petz infidelity across an alpha grid at fixed loss, analytic route.

    Ill-conditioned grid points are flagged and carry NaN infidelity rather
    than being dropped.
    """
    records = []
    for alpha in alpha_grid:
        inf, cond = _petz_infidelity(group, fourier, float(alpha), gamma)
        if inf is None:
            records.append(
                SweepRecord(float(alpha), float("nan"), cond, ["ill-conditioned"])
            )
        else:
            records.append(SweepRecord(float(alpha), inf, cond))
    return records


def sweep_gamma(group, fourier, alpha, gamma_grid):
    """Petz infidelity across a loss grid at fixed alpha, analytic route."""
    records = []
    for gamma in gamma_grid:
        inf, cond = _petz_infidelity(group, fourier, alpha, float(gamma))
        if inf is None:
            records.append(
                SweepRecord(float(gamma), float("nan"), cond, ["ill-conditioned"])
            )
        else:
            records.append(SweepRecord(float(gamma), inf, cond))
    return records


def loglog_slope(records, lo, hi):
    """Least-squares slope of log(infidelity) vs log(parameter) on [lo, hi]."""
    xs, ys = [], []
    for rec in records:
        if lo <= rec.value <= hi and np.isfinite(rec.infidelity) and rec.infidelity > 0:
            xs.append(np.log(rec.value))
            ys.append(np.log(rec.infidelity))
    if len(xs) < 2:
        raise ValueError("not enough valid points for a slope fit")
    return float(np.polyfit(xs, ys, 1)[0])


def argmin_record(records):
    finite = [r for r in records if np.isfinite(r.infidelity)]
    if not finite:
        raise ValueError("no valid sweep points")
    return min(finite, key=lambda r: r.infidelity)
