"""Logical gate and measurement verification on the code subspace.

Each physical operation is reduced to its 4x4 action on the encoded basis
(ordered (0,0), (0,1), (1,0), (1,1), i.e. logical index first), together
with the leakage out of the target code subspace.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from . import encoding
from .fock import (
    FockOperator,
    FockState,
    annihilate,
    infidelity,
    mode_destroy,
    number_diagonal_operator,
    passive_gaussian_unitary,
)
from .groups import HADAMARD

IDENTITY2 = np.eye(2, dtype=complex)
X2 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
Z2 = np.diag([1.0, -1.0]).astype(complex)
S2 = np.diag([1.0, 1.0j])
T2 = np.diag([1.0, np.exp(1j * np.pi / 4)])


@dataclass
class LogicalAction:
    """4x4 logical matrix of a physical operator, with leakage diagnostics."""

    matrix: np.ndarray
    leakage: float
    global_phase: float


@dataclass
class ZenoGate:
    """Code-space restriction of the quadratic Zeno drive a1^2 + a1^dag2."""

    theta: float
    projected_hamiltonian: np.ndarray

    def logical_unitary(self, alpha):
        """exp(i theta H_proj / (2 alpha^2)) on the code basis."""
        return expm(1j * self.theta * self.projected_hamiltonian / (2 * alpha**2))


@dataclass
class Mod4Measurement:
    outcome_table: dict
    projectors: dict


# Cells of the photon-number-mod-4 outcome table for each Z_L Y_M eigenstate.
TABLE_CELLS = {
    "0-i": {(1, 0), (3, 2)},
    "0+i": {(1, 2), (3, 0)},
    "1-i": {(0, 1), (2, 3)},
    "1+i": {(0, 3), (2, 1)},
}


def phase_aligned_distance(measured, target):
    """(distance, phase): min over global phases of ||measured - e^{ip} target||."""
    overlap = np.trace(target.conj().T @ measured)
    if abs(overlap) < 1e-12:
        return float(np.linalg.norm(measured - target)), 0.0
    phase = overlap / abs(overlap)
    return float(np.linalg.norm(measured - phase * target)), float(np.angle(phase))


def logical_action(physical_op, code, target_code=None):
    """Reduce a physical operator to its matrix on the encoded basis.

    matrix[(l',m'), (l,m)] = <target l',m'| op |l,m>; the leakage is the
    largest norm of any image component outside the target code subspace.
    """
    target = code if target_code is None else target_code
    images = [physical_op.apply(s) for s in code.basis_states]
    mat = np.array(
        [[t.overlap(img) for img in images] for t in target.basis_states]
    )
    leak = 0.0
    for j, img in enumerate(images):
        residual = img.amplitudes - sum(
            mat[i, j] * target.basis_states[i].amplitudes for i in range(4)
        )
        leak = max(leak, float(np.linalg.norm(residual)))
    _, phase = phase_aligned_distance(mat, np.eye(4, dtype=complex))
    return LogicalAction(matrix=mat, leakage=leak, global_phase=phase)


def self_kerr_s_gate(config):
    """The self-Kerr diagonal i^{n2^2} on the second mode."""
    return number_diagonal_operator(lambda n1, n2: 1j ** (int(n2) ** 2 % 4), config)


def s_gate_check(code):
    """Logical action of the self-Kerr i^{n2^2}; should equal S (x) I."""
    return logical_action(self_kerr_s_gate(code.config), code)


def cz_gate_check(code):
    """16x16 logical matrix of the cross-Kerr (-1)^{n2 n4} on two code copies.

    The operator is diagonal, so its matrix elements on products of two-mode
    states factor through per-mode density profiles; no 4-mode operator is
    ever materialized.
    """
    d = code.config.dim_per_mode
    tensors = [s.tensor() for s in code.basis_states]
    parity = (-1.0) ** np.outer(np.arange(d), np.arange(d))  # (n2, n4)
    mat = np.zeros((16, 16), dtype=complex)
    # C[i', i, n2] = sum_n1 conj(b_i'[n1,n2]) b_i[n1,n2]
    c = np.einsum("iab,jab->ijb", np.conj(tensors), np.array(tensors))
    for i1p in range(4):
        for i1 in range(4):
            for i2p in range(4):
                for i2 in range(4):
                    mat[i1p * 4 + i2p, i1 * 4 + i2] = np.einsum(
                        "a,ab,b->", c[i1p, i1], parity, c[i2p, i2]
                    )
    return mat


def cz_target():
    out = np.zeros((16, 16), dtype=complex)
    for l1 in (0, 1):
        for m1 in (0, 1):
            for l2 in (0, 1):
                for m2 in (0, 1):
                    i = (2 * l1 + m1) * 4 + (2 * l2 + m2)
                    out[i, i] = (-1.0) ** (l1 * l2)
    return out


def hadamard_deformation_check(code):
    """Residual of the code-deformation identity for the balanced beamsplitter.

    pi(H) applied to an encoded state must equal the deformed-code encoding
    of H|l> (x) H|m>, and applying pi(H) twice must return to the original
    code.  Returns the max infidelity over all (l, m) and both checks.
    """
    return deformation_residual(code, HADAMARD)


def deformation_residual(code, u):
    """Max infidelity of pi(U) E(|l>|m>) vs E_U(U|l> (x) U|m>)."""
    constellation = code.constellation
    pi_u = passive_gaussian_unitary(u, code.config)
    deformed = encoding.deform_constellation(constellation, u)
    deformed_basis = encoding.code_basis(deformed, code.fourier)
    worst = 0.0
    for l in (0, 1):
        for m in (0, 1):
            lhs = pi_u.apply(code.state(l, m))
            amps = np.zeros(code.config.dim, dtype=complex)
            for lp in (0, 1):
                for mp in (0, 1):
                    amps += u[lp, l] * u[mp, m] * deformed_basis.state(lp, mp).amplitudes
            rhs = FockState(code.config, amps).normalized()
            worst = max(worst, infidelity(lhs.normalized(), rhs))
    return worst


def double_deformation_residual(code, u):
    """Max infidelity of pi(U)^2 E(|l>|m>) vs E(U^2|l> (x) U^2|m>)."""
    pi_u = passive_gaussian_unitary(u, code.config)
    u2 = np.asarray(u) @ np.asarray(u)
    worst = 0.0
    for l in (0, 1):
        for m in (0, 1):
            lhs = pi_u.apply(pi_u.apply(code.state(l, m))).normalized()
            amps = np.zeros(code.config.dim, dtype=complex)
            for lp in (0, 1):
                for mp in (0, 1):
                    amps += u2[lp, l] * u2[mp, m] * code.state(lp, mp).amplitudes
            rhs = FockState(code.config, amps).normalized()
            worst = max(worst, infidelity(lhs, rhs))
    return worst


def composite_hadamard_operator(code):
    """i^{n2^2} pi(H) i^{n2^2} pi(H) i^{n2^2}: logical Hadamard on L only."""
    s_op = self_kerr_s_gate(code.config)
    pi_h = passive_gaussian_unitary(HADAMARD, code.config)
    return s_op @ pi_h @ s_op @ pi_h @ s_op


def composite_hadamard_check(code):
    return logical_action(composite_hadamard_operator(code), code)


def shshs_identity_residual():
    """Exact 2x2 check of S H S H S = e^{i pi/4} H."""
    lhs = S2 @ HADAMARD @ S2 @ HADAMARD @ S2
    return float(np.linalg.norm(lhs - np.exp(1j * np.pi / 4) * HADAMARD))


def zeno_projected_hamiltonian(code, theta=0.0):
    """Code-space matrix of a1^2 + a1^dag2 plus the a1^2 eigen-relation residual.

    Returns (ZenoGate, residual vs 2 alpha^2 Z (x) Z, max a1^2 eigen residual).
    """
    a1 = mode_destroy(code.config, 0).matrix
    drive = FockOperator(code.config, a1 @ a1 + (a1 @ a1).conj().T)
    mat = np.array(
        [
            [t.overlap(drive.apply(s)) for s in code.basis_states]
            for t in code.basis_states
        ]
    )
    mat = (mat + mat.conj().T) / 2
    alpha = code.alpha
    target = 2 * alpha**2 * np.kron(Z2, Z2)
    residual = float(np.linalg.norm(mat - target))
    eig_res = 0.0
    for l in (0, 1):
        for m in (0, 1):
            s = code.state(l, m)
            img = a1 @ a1 @ s.amplitudes
            want = (-1.0) ** (l + m) * alpha**2 * s.amplitudes
            eig_res = max(eig_res, float(np.linalg.norm(img - want)))
    return ZenoGate(theta=theta, projected_hamiltonian=mat), residual, eig_res


def snap_gate_check(code):
    """Logical actions of the mode-2 SNAP phase profiles for S_L and T_L."""
    s_op = number_diagonal_operator(
        lambda n1, n2: np.exp(1j * np.pi / 2 * (int(n2) ** 2 % 4)), code.config
    )
    t_op = number_diagonal_operator(
        lambda n1, n2: np.exp(1j * np.pi / 4 * (int(n2) ** 4 % 8)), code.config
    )
    return logical_action(s_op, code), logical_action(t_op, code)


def zy_eigenstates(code):
    """The four Z_L Y_M eigenstates built from the encoded basis."""
    out = {}
    for l in (0, 1):
        for sign, tag in ((1.0j, "+i"), (-1.0j, "-i")):
            amps = (
                code.state(l, 0).amplitudes + sign * code.state(l, 1).amplitudes
            ) / np.sqrt(2.0)
            out[f"{l}{tag}"] = FockState(code.config, amps).normalized()
    return out


def mod4_projectors(config):
    """The 16 diagonal projectors onto photon-number residues mod 4."""
    d = config.dim_per_mode
    n1 = np.repeat(np.arange(d) % 4, d)
    n2 = np.tile(np.arange(d) % 4, d)
    projectors = {}
    for r1 in range(4):
        for r2 in range(4):
            mask = ((n1 == r1) & (n2 == r2)).astype(complex)
            projectors[(r1, r2)] = FockOperator(config, np.diag(mask))
    return projectors


def mod4_measurement(code):
    table = {}
    for label, cells in TABLE_CELLS.items():
        for cell in cells:
            table[cell] = label
    return Mod4Measurement(outcome_table=table, projectors=mod4_projectors(code.config))


def outcome_distribution(measurement, state):
    """Probability of each (n1 mod 4, n2 mod 4) outcome for a state."""
    return {
        cell: float(np.real(np.vdot(state.amplitudes, p.matrix @ state.amplitudes)))
        for cell, p in measurement.projectors.items()
    }


def y_readout(r1, r2):
    """Y_M label inferred from a mod-4 outcome, robust to one photon loss.

    The total residue s = n1 + n2 mod 4 separates the eigenvalues: odd s is
    the codeword sector, even s means a single loss occurred, and in both
    sectors s in {0, 1} reads -i while s in {2, 3} reads +i.
    """
    return "-i" if (r1 + r2) % 4 < 2 else "+i"


def mod4_verification(code):
    """Outcome-mass report for each eigenstate, before and after one loss.

    For each Z_L Y_M eigenstate returns (mass outside its table cells,
    mass on wrong-Y_M cells after a_1, same after a_2).
    """
    meas = mod4_measurement(code)
    report = {}
    for label, state in zy_eigenstates(code).items():
        dist = outcome_distribution(meas, state)
        outside = sum(p for cell, p in dist.items() if cell not in TABLE_CELLS[label])
        y_tag = label[1:]
        wrong = []
        for mode in (0, 1):
            lost = annihilate(state, mode).normalized()
            dist_l = outcome_distribution(meas, lost)
            wrong.append(
                sum(p for cell, p in dist_l.items() if y_readout(*cell) != y_tag)
            )
        report[label] = (outside, wrong[0], wrong[1])
    return report


def zy_expansion_residual(code):
    """Max deviation of the eigenstate Fock amplitudes from the closed form.

    The predicted amplitudes are ((-1)^q -/+ (-1)^p) f_{p,q} on |2p+1>|2q>
    (mode order swapped for l = 1), with f_{p,q} Poisson-like; one overall
    complex constant per state is fitted.
    """
    alpha = code.alpha
    d = code.config.dim_per_mode
    ps = np.arange((d - 1) // 2 + 1)
    qs = np.arange(d // 2 + (d % 2))
    logfact = np.cumsum(np.concatenate([[0.0], np.log(np.arange(1.0, d))]))
    worst = 0.0
    for label, state in zy_eigenstates(code).items():
        l = int(label[0])
        sign = -1.0 if label.endswith("+i") else 1.0
        pred = np.zeros((d, d), dtype=complex)
        for p in ps:
            if 2 * p + 1 >= d:
                continue
            for q in qs:
                if 2 * q >= d:
                    continue
                f = np.exp(
                    (2 * p + 2 * q + 1) * np.log(alpha)
                    - alpha**2
                    - 0.5 * (logfact[2 * p + 1] + logfact[2 * q])
                )
                coeff = ((-1.0) ** q + sign * (-1.0) ** p) * f
                if l == 0:
                    pred[2 * p + 1, 2 * q] = coeff
                else:
                    pred[2 * q, 2 * p + 1] = coeff
        pred = pred.reshape(-1)
        actual = state.amplitudes
        scale = np.vdot(pred, actual) / np.vdot(pred, pred)
        worst = max(worst, float(np.max(np.abs(actual - scale * pred))))
    return worst
