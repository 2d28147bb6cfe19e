"""Command-line front end: verification suites, sweeps and gate reports.

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .channels import (
    argmin_record,
    lindblad_kernel_check,
    loglog_slope,
    petz_entanglement_fidelity,
    qec_matrix_analytic,
    sweep_alpha,
    sweep_gamma,
)
from .encoding import (
    code_basis,
    gram_fourier_spectrum,
    gram_matrix,
    make_constellation,
)
from .fock import passive_gaussian_unitary
from .gates import (
    IDENTITY2,
    S2,
    T2,
    X2,
    composite_hadamard_check,
    cz_gate_check,
    cz_target,
    logical_action,
    mod4_verification,
    phase_aligned_distance,
    s_gate_check,
    snap_gate_check,
    zeno_projected_hamiltonian,
)
from .groups import (
    HADAMARD,
    build_fourier_transform,
    cyclic_group,
    irrep_table,
    pauli_group,
    quaternion_group,
    verify_block_diagonalization,
)

ALPHA_STAR = math.sqrt(math.pi / 2)

DEFAULTS = {
    "group": "d8",
    "alpha": ALPHA_STAR,
    "phi": math.pi / 2,
    "gamma": 0.01,
    "cutoff": 25,
    "format": "csv",
    "out": None,
    "grid": None,
}


class ConfigError(ValueError):
    pass


def resolve_group(name):
    name = str(name).lower()
    if name == "d8":
        return pauli_group()
    if name == "q8":
        return quaternion_group()
    if name.startswith("z") and name[1:].isdigit():
        return cyclic_group(int(name[1:]))
    raise ConfigError(f"unknown group {name!r}")


def load_config(args):
    """Merge defaults, an optional JSON config file and CLI flags."""
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON config: {exc}") from exc
        unknown = set(data) - set(cfg)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(data)
    for key in ("group", "alpha", "phi", "gamma", "cutoff", "format", "out", "grid"):
        val = getattr(args, key.replace("-", "_"), None)
        if val is not None:
            cfg[key] = val
    cfg["alpha"] = float(cfg["alpha"])
    cfg["phi"] = float(cfg["phi"])
    cfg["gamma"] = float(cfg["gamma"])
    cfg["cutoff"] = int(cfg["cutoff"])
    if cfg["alpha"] <= 0:
        raise ConfigError("alpha must be positive")
    if not 0.0 <= cfg["gamma"] < 1.0:
        raise ConfigError("gamma must lie in [0, 1)")
    if cfg["cutoff"] < 1:
        raise ConfigError("cutoff must be at least 1")
    if cfg["format"] not in ("csv", "json"):
        raise ConfigError("format must be csv or json")
    return cfg


def parse_linear_grid(spec):
    """start:stop:step with both endpoints included (up to rounding)."""
    try:
        start, stop, step = (float(p) for p in spec.split(":"))
    except ValueError as exc:
        raise ConfigError(f"bad grid spec {spec!r}") from exc
    if step <= 0 or stop < start:
        raise ConfigError("grid requires stop >= start and step > 0")
    count = int(round((stop - start) / step)) + 1
    if count < 1:
        raise ConfigError("empty grid")
    return np.linspace(start, stop, count)


def parse_log_grid(spec):
    """start:stop:count, log-spaced, both endpoints included."""
    try:
        parts = spec.split(":")
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except (ValueError, IndexError) as exc:
        raise ConfigError(f"bad grid spec {spec!r}") from exc
    if start <= 0 or stop < start or count < 1:
        raise ConfigError("log grid requires 0 < start <= stop and count >= 1")
    return np.logspace(math.log10(start), math.log10(stop), count)


def format_float(x):
    """Shortest decimal that round-trips to the same float."""
    return repr(float(x))


def write_records(path, fmt, cfg, columns, rows, summary):
    try:
        if fmt == "csv":
            lines = [",".join(columns)]
            for row in rows:
                cells = []
                for value in row:
                    if isinstance(value, float):
                        cells.append(format_float(value))
                    elif isinstance(value, (list, tuple)):
                        cells.append(";".join(str(v) for v in value))
                    else:
                        cells.append(str(value))
                lines.append(",".join(cells))
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write("\n".join(lines) + "\n")
        else:
            records = [dict(zip(columns, row)) for row in rows]
            payload = {
                "config": {k: v for k, v in cfg.items() if k != "out"},
                "records": records,
                "summary": summary,
            }
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                json.dump(payload, fh, indent=2)
                fh.write("\n")
    except OSError as exc:
        raise IOError(f"cannot write {path}: {exc}") from exc


class CheckList:
    def __init__(self):
        self.failures = []

    def record(self, name, value, tol, ok=None):
        passed = (value <= tol) if ok is None else ok
        status = "pass" if passed else "FAIL"
        print(f"  [{status}] {name}: {value:.3e} (tol {tol:.1e})")
        if not passed:
            self.failures.append(name)

    def error(self, name, message):
        print(f"  [FAIL] {name}: {message}")
        self.failures.append(name)


def cmd_verify(cfg):
    group = resolve_group(cfg["group"])
    checks = CheckList()

    irreps = irrep_table(group)
    fourier = build_fourier_transform(group, irreps)
    f = fourier.matrix
    checks.record(
        "fourier_unitarity",
        float(np.linalg.norm(f @ f.conj().T - np.eye(group.order))),
        1e-12,
    )
    checks.record(
        "block_diagonalization",
        verify_block_diagonalization(fourier, group, irreps),
        1e-12,
    )

    try:
        constellation = make_constellation(
            group, cfg["alpha"], cfg["phi"], cfg["cutoff"]
        )
    except ValueError as exc:
        if "degenerate" in str(exc):
            raise ConfigError(str(exc)) from exc
        # truncation starvation is a verification failure, not a bad config
        checks.error("constellation_tail_mass", str(exc))
        _finish_verify(checks)
        return 1

    code = code_basis(constellation, fourier)
    basis = np.array([s.amplitudes for s in code.basis_states])
    checks.record(
        "basis_orthonormality",
        float(np.linalg.norm(basis.conj() @ basis.T - np.eye(4))),
        1e-10,
    )

    worst_cov = 0.0
    for i in range(group.order):
        op = passive_gaussian_unitary(group.matrix(i), code.config)
        images = np.array([op.apply(s).amplitudes for s in code.basis_states])
        overlaps = images.conj() @ basis.T
        # the physical action must not leak outside the code subspace
        worst_cov = max(
            worst_cov,
            float(np.linalg.norm(images - overlaps.conj() @ basis)),
        )
    checks.record("group_covariance", worst_cov, 1e-9)

    at_star = abs(cfg["alpha"] - ALPHA_STAR) < 1e-9 and abs(
        cfg["phi"] - math.pi / 2
    ) < 1e-9
    if at_star:
        _, _, _, scalar_dev = gram_fourier_spectrum(
            gram_matrix(constellation), fourier
        )
        checks.record("gram_fourier_scalar_block", scalar_dev, 1e-9)

    if group.order == 8 and not group.is_abelian():
        sa = s_gate_check(code)
        checks.record(
            "self_kerr_s_gate",
            phase_aligned_distance(sa.matrix, np.kron(S2, IDENTITY2))[0],
            1e-8,
        )
        checks.record(
            "cz_gate",
            float(np.linalg.norm(cz_gate_check(code) - cz_target())),
            1e-8,
        )
        ha = composite_hadamard_check(code)
        checks.record(
            "composite_hadamard",
            phase_aligned_distance(ha.matrix, np.kron(HADAMARD, IDENTITY2))[0],
            1e-7,
        )
        if at_star:
            kernels, parity = lindblad_kernel_check(code)
            checks.record("lindblad_kernels", max(kernels.values()), 1e-8)
            checks.record("parity_stabilizer", parity, 1e-12)
            report = mod4_verification(code)
            worst = max(max(v) for v in report.values())
            checks.record("mod4_readout", worst, 1e-8)
            qec = qec_matrix_analytic(group, fourier, cfg["alpha"], 0.0)
            checks.record(
                "lossless_fidelity",
                abs(1.0 - petz_entanglement_fidelity(qec)),
                1e-12,
            )

    return _finish_verify(checks)


def _finish_verify(checks):
    if checks.failures:
        print(f"FAILED {json.dumps(checks.failures)}")
        return 1
    print("all checks passed")
    return 0


def cmd_sweep_alpha(cfg):
    group = resolve_group(cfg["group"])
    fourier = build_fourier_transform(group, irrep_table(group))
    spec = cfg["grid"] if cfg["grid"] is not None else "0.9:1.6:0.01"
    grid = parse_linear_grid(spec)
    records = sweep_alpha(group, fourier, cfg["gamma"], grid)
    rows = [
        (r.value, r.infidelity, r.condition_number, list(r.flags)) for r in records
    ]
    best = argmin_record(records)
    summary = {"argmin_alpha": best.value, "min_infidelity": best.infidelity}
    out = cfg["out"] or f"sweep_alpha.{cfg['format']}"
    write_records(
        out, cfg["format"], cfg,
        ["alpha", "infidelity", "condition_number", "flags"], rows, summary,
    )
    print(
        f"argmin alpha = {format_float(best.value)} "
        f"(infidelity {format_float(best.infidelity)}); wrote {out}"
    )
    return 0


def cmd_sweep_gamma(cfg):
    group = resolve_group(cfg["group"])
    fourier = build_fourier_transform(group, irrep_table(group))
    spec = cfg["grid"] if cfg["grid"] is not None else "1e-3:1e-1:20"
    grid = parse_log_grid(spec)
    records = sweep_gamma(group, fourier, cfg["alpha"], grid)
    rows = [(r.value, r.infidelity) for r in records]
    slope = loglog_slope(records, 1e-3, 1e-2)
    vals = [r.infidelity for r in records if np.isfinite(r.infidelity)]
    monotone = all(a <= b + 1e-15 for a, b in zip(vals, vals[1:]))
    summary = {"loglog_slope": slope, "monotone": monotone}
    out = cfg["out"] or f"sweep_gamma.{cfg['format']}"
    write_records(out, cfg["format"], cfg, ["gamma", "infidelity"], rows, summary)
    print(f"log-log slope over [1e-3, 1e-2] = {format_float(slope)}; wrote {out}")
    return 0


def cmd_gates_demo(cfg):
    group = resolve_group(cfg["group"])
    if group.order != 8 or group.is_abelian():
        raise ConfigError("gates demo requires the two-qubit logical structure")
    fourier = build_fourier_transform(group, irrep_table(group))
    code = code_basis(
        make_constellation(group, cfg["alpha"], cfg["phi"], cfg["cutoff"]), fourier
    )
    failures = []

    def report(name, action, target, tol):
        dist, _ = phase_aligned_distance(action.matrix, target)
        ok = dist <= tol and action.leakage <= max(tol, 1e-7)
        status = "pass" if ok else "FAIL"
        print(f"[{status}] {name}: distance {dist:.3e}, leakage {action.leakage:.3e}")
        with np.printoptions(precision=3, suppress=True, linewidth=120):
            print(np.round(action.matrix, 6))
        if not ok:
            failures.append(name)

    swap = passive_gaussian_unitary(X2, code.config)
    report("beamsplitter swap (logical X)", logical_action(swap, code),
           np.kron(X2, IDENTITY2), 1e-9)
    report("self-Kerr i^(n2^2) (logical S)", s_gate_check(code),
           np.kron(S2, IDENTITY2), 1e-8)
    snap_s, snap_t = snap_gate_check(code)
    report("SNAP quadratic phase (logical S)", snap_s, np.kron(S2, IDENTITY2), 1e-8)
    report("SNAP quartic phase (logical T)", snap_t, np.kron(T2, IDENTITY2), 1e-8)
    report("composite Hadamard", composite_hadamard_check(code),
           np.kron(HADAMARD, IDENTITY2), 1e-7)

    cz = cz_gate_check(code)
    cz_dist = float(np.linalg.norm(cz - cz_target()))
    ok = cz_dist <= 1e-8
    print(f"[{'pass' if ok else 'FAIL'}] two-copy CZ: distance {cz_dist:.3e}")
    if not ok:
        failures.append("cz")

    gate, _, _ = zeno_projected_hamiltonian(code, theta=math.pi / 4)
    diag = np.diag(gate.logical_unitary(code.alpha))
    target = np.exp(1j * math.pi / 4 * np.array([1.0, -1.0, -1.0, 1.0]))
    zeno_dist = float(np.linalg.norm(diag - target))
    ok = zeno_dist <= 1e-8
    print(f"[{'pass' if ok else 'FAIL'}] Zeno ZZ rotation (theta=pi/4): "
          f"distance {zeno_dist:.3e}")
    if not ok:
        failures.append("zeno")

    if failures:
        print(f"FAILED {json.dumps(failures)}")
        return 1
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fouriercat",
        description="Two-mode Fourier cat code verification and sweeps",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("verify", "sweep-alpha", "sweep-gamma", "gates-demo"):
        p = sub.add_parser(name)
        p.add_argument("--group", help="d8, q8 or zN")
        p.add_argument("--alpha", type=float)
        p.add_argument("--phi", type=float)
        p.add_argument("--gamma", type=float)
        p.add_argument("--cutoff", type=int)
        p.add_argument(
            "--grid",
            help="start:stop:step (sweep-alpha) or start:stop:count log-spaced "
            "(sweep-gamma)",
        )
        p.add_argument("--format", choices=("csv", "json"))
        p.add_argument("--out")
        p.add_argument("--config", help="JSON config file; flags override it")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    handlers = {
        "verify": cmd_verify,
        "sweep-alpha": cmd_sweep_alpha,
        "sweep-gamma": cmd_sweep_gamma,
        "gates-demo": cmd_gates_demo,
    }
    try:
        cfg = load_config(args)
        return handlers[args.command](cfg)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except IOError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
