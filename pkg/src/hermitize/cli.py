"""Command-line front end.

Exit codes: 0 all checks pass, 1 mathematical failure, 2 usage or parse
failure. Reports are tab-separated ReportRecord lines on stdout.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import linalg, two_level
from .errors import HermitizeError
from .evolution import evolve
from .fileio import (
    MatrixFileError,
    ReportRecord,
    format_number,
    read_matrix,
    scalar_record,
    trace_csv,
    write_matrix,
)
from .hermitization import (
    DysonMap,
    certify_metric,
    quasi_hermiticity_residual,
)
from .hybrid import (
    GRID_POINTS,
    GOLDEN_SECTION_WIDTH,
    optimize_split,
    power_cost_grid,
    split_cost,
    split_power,
    split_triangular,
)
from .metric_solver import MetricFamily, left_eigenbasis, metric_from_weights

QH_REPORT_TOL = 1e-8
REALITY_REPORT_TOL = 1e-9


def _read(path, want_square: bool = True) -> np.ndarray:
    values, role = read_matrix(path)
    if want_square and values.ndim != 2:
        raise MatrixFileError(f"{path}: expected a square matrix file")
    if not want_square and values.ndim != 1:
        raise MatrixFileError(f"{path}: expected a state file (role 'state')")
    return values


def _emit(records: list[ReportRecord]) -> int:
    for record in records:
        print(record.line())
    return 0 if all(r.passed for r in records) else 1


def cmd_verify(args) -> int:
    ham = _read(args.hamiltonian)
    theta = _read(args.metric)
    if ham.shape != theta.shape:
        raise MatrixFileError("Hamiltonian and metric dimensions differ")
    theta_norm = float(np.linalg.norm(theta))
    hermiticity = (linalg.hermiticity_defect(theta) / theta_norm
                   if theta_norm > 0 else 0.0)
    eigenvalues = np.linalg.eigvalsh(0.5 * (theta + theta.conj().T))
    positivity_floor = linalg.POSITIVITY_FLOOR * theta_norm
    positivity_deficit = max(0.0, positivity_floor - float(eigenvalues[0]))
    residual = quasi_hermiticity_residual(ham, theta)
    spectrum = linalg.eigendecompose(ham).values
    ham_norm = float(np.linalg.norm(ham))
    reality = (float(np.max(np.abs(spectrum.imag))) / ham_norm
               if ham_norm > 0 else 0.0)
    return _emit([
        ReportRecord("theta_hermiticity_defect", hermiticity,
                     linalg.HERMITICITY_TOL),
        ReportRecord("theta_positivity_deficit", positivity_deficit, 0.0),
        ReportRecord("quasi_hermiticity_residual", residual, QH_REPORT_TOL),
        ReportRecord("spectral_reality_defect", reality, REALITY_REPORT_TOL),
    ])


def cmd_metric(args) -> int:
    ham = _read(args.hamiltonian)
    basis = left_eigenbasis(ham)
    weights = np.ones(basis.dim) if not args.weights else np.asarray(args.weights)
    if weights.shape != (basis.dim,):
        raise ValueError(f"expected {basis.dim} weights, got {len(weights)}")
    certificate = metric_from_weights(MetricFamily(basis, weights))
    write_matrix(args.out, certificate.theta, role="metric")
    return _emit([
        ReportRecord("quasi_hermiticity_residual",
                     quasi_hermiticity_residual(ham, certificate), 1e-10),
        scalar_record("min_eigenvalue", certificate.min_eigenvalue),
    ])


def _write_split(out_dir, split) -> None:
    os.makedirs(out_dir, exist_ok=True)
    write_matrix(os.path.join(out_dir, "omega_m.json"), split.omega_m.omega, "dyson")
    write_matrix(os.path.join(out_dir, "omega_h.json"), split.omega_h.omega, "dyson")
    write_matrix(os.path.join(out_dir, "h_h.json"), split.h_h, "hamiltonian")
    write_matrix(os.path.join(out_dir, "theta_m.json"), split.theta_m.theta, "metric")


def cmd_split(args) -> int:
    ham = _read(args.hamiltonian)
    if args.strategy == "triangular":
        if args.dyson is None:
            raise ValueError("triangular strategy requires --dyson")
        split = split_triangular(DysonMap.from_matrix(_read(args.dyson)), ham)
    else:
        if args.metric is None or args.mu is None:
            raise ValueError("power strategy requires --metric and --mu")
        split = split_power(ham, certify_metric(_read(args.metric)), args.mu)
    _write_split(args.out, split)
    cost = split_cost(split, args.wh, args.wm)
    return _emit([
        ReportRecord("recomposition_residual", split.recomposition_residual, 1e-10),
        ReportRecord("reduced_qh_residual", split.reduced_qh_residual, 1e-9),
        scalar_record("cost_non_hermiticity", cost.non_hermiticity),
        scalar_record("cost_metric_condition", cost.metric_condition),
        scalar_record("cost_total", cost.total),
    ])


def cmd_optimize_split(args) -> int:
    ham = _read(args.hamiltonian)
    theta = certify_metric(_read(args.metric))
    grid = power_cost_grid(ham, theta, args.wh, args.wm)
    lines = ["mu,non_hermiticity,metric_condition,total"]
    for cost in grid:
        lines.append(",".join(format_number(x) for x in
                              (cost.mu, cost.non_hermiticity,
                               cost.metric_condition, cost.total)))
    with open(args.out, "w", encoding="ascii") as handle:
        handle.write("\n".join(lines) + "\n")
    mu_star, best = optimize_split(ham, theta, args.wh, args.wm)
    return _emit([
        scalar_record("mu_star", mu_star),
        scalar_record("cost_total_at_mu_star", best.total),
        scalar_record("cost_total_at_mu_0", grid[0].total),
        scalar_record("cost_total_at_mu_1", grid[-1].total),
        scalar_record("grid_points", float(GRID_POINTS)),
        scalar_record("refinement_width", GOLDEN_SECTION_WIDTH),
    ])


def cmd_evolve(args) -> int:
    ham = _read(args.hamiltonian)
    theta = certify_metric(_read(args.metric))
    psi0 = _read(args.state, want_square=False)
    trace = evolve(ham, theta, psi0, args.t_max, args.dt)
    text = trace_csv(trace.times, trace.aux_norms, trace.theta_norms, trace.states)
    if args.out:
        with open(args.out, "w", encoding="ascii") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_example(args) -> int:
    s, t = args.s, args.t
    os.makedirs(args.out, exist_ok=True)
    lower, upper, full = two_level.dyson_factors(s, t)
    files = [
        ("h.json", two_level.hermitian_hamiltonian(), "hamiltonian"),
        ("omega_m.json", lower.omega, "dyson"),
        ("omega_h.json", upper.omega, "dyson"),
        ("omega.json", full.omega, "dyson"),
        ("hamiltonian.json", two_level.hamiltonian(s, t), "hamiltonian"),
        ("theta.json", two_level.metric_matrix(s, t), "metric"),
        ("y.json", two_level.y_matrix(s, t), None),
        ("h_h.json", two_level.half_split_hamiltonian(s), "hamiltonian"),
        ("theta_m.json", two_level.reduced_metric_matrix(s), "metric"),
    ]
    for name, values, role in files:
        write_matrix(os.path.join(args.out, name), values, role)
    spectrum = two_level.metric_spectrum(s, t)
    factored = two_level.discriminant_factored(s, t)
    factorization_defect = (abs(spectrum.discriminant - factored)
                            / max(abs(spectrum.discriminant), 1.0))
    low, high = two_level.reduced_metric_eigenvalues(s)
    records = [
        scalar_record("theta_plus", spectrum.theta_plus),
        scalar_record("theta_minus", spectrum.theta_minus),
        scalar_record("discriminant", spectrum.discriminant),
        scalar_record("discriminant_factored", factored),
        ReportRecord("discriminant_factorization_defect", factorization_defect, 1e-10),
        scalar_record("theta_m_eigenvalue_low", low),
        scalar_record("theta_m_eigenvalue_high", high),
    ]
    with open(os.path.join(args.out, "report.txt"), "w", encoding="ascii") as handle:
        for record in records:
            handle.write(record.line() + "\n")
    return 0 if all(r.passed for r in records) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hermitize",
        description="Hermitization toolkit for non-Hermitian Hamiltonians "
                    "with real spectra")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check a Hamiltonian/metric pair")
    p.add_argument("--hamiltonian", required=True)
    p.add_argument("--metric", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("metric", help="build a metric from the left eigenbasis")
    p.add_argument("--hamiltonian", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("weights", nargs="*", type=float,
                   help="family weights (default: all ones)")
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("split", help="factor a map or interpolate a metric root")
    p.add_argument("--hamiltonian", required=True)
    p.add_argument("--strategy", required=True, choices=["triangular", "power"])
    p.add_argument("--dyson", help="map file (triangular strategy)")
    p.add_argument("--metric", help="metric file (power strategy)")
    p.add_argument("--mu", type=float, help="interpolation parameter (power)")
    p.add_argument("--wh", type=float, default=1.0)
    p.add_argument("--wm", type=float, default=1.0)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("optimize-split", help="scan the power-split cost over mu")
    p.add_argument("--hamiltonian", required=True)
    p.add_argument("--metric", required=True)
    p.add_argument("--wh", type=float, default=1.0)
    p.add_argument("--wm", type=float, default=1.0)
    p.add_argument("--out", required=True, help="grid CSV path")
    p.set_defaults(func=cmd_optimize_split)

    p = sub.add_parser("evolve", help="propagate a state and trace both norms")
    p.add_argument("--hamiltonian", required=True)
    p.add_argument("--metric", required=True)
    p.add_argument("--state", required=True)
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--dt", type=float, required=True)
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("example", help="emit the two-level worked model")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_example)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (MatrixFileError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HermitizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
