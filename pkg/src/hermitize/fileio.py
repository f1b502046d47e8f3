"""On-disk formats: JSON matrix files, CSV evolution traces, and the
tab-separated check reports.

Every number is serialized with 17 significant digits, which round-trips
IEEE doubles exactly, so files written by the CLI re-parse bit-identically
and repeated runs are byte-identical.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

ROLES = ("hamiltonian", "dyson", "metric", "state")


class MatrixFileError(Exception):
    """Malformed or inconsistent matrix file."""


def format_number(x: float) -> str:
    return f"{x:.17g}"


def _entry(z: complex) -> str:
    return f"[{format_number(z.real)}, {format_number(z.imag)}]"


def matrix_text(values: np.ndarray, role: str | None = None) -> str:
    """Serialize a square matrix (or a vector, for role 'state')."""
    lines = ["{"]
    lines.append(f'  "dim": {values.shape[0]},')
    if role is not None:
        lines.append(f'  "role": "{role}",')
    lines.append('  "rows": [')
    if values.ndim == 1:
        body = [f"    {_entry(z)}" for z in values]
    else:
        body = ["    [" + ", ".join(_entry(z) for z in row) + "]" for row in values]
    lines.append(",\n".join(body))
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_matrix(path, values: np.ndarray, role: str | None = None) -> None:
    with open(path, "w", encoding="ascii") as handle:
        handle.write(matrix_text(np.asarray(values, dtype=complex), role))


def _parse_entry(raw) -> complex:
    if (not isinstance(raw, list) or len(raw) != 2
            or not all(isinstance(part, (int, float)) for part in raw)):
        raise MatrixFileError(f"entry {raw!r} is not a [re, im] pair")
    z = complex(float(raw[0]), float(raw[1]))
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise MatrixFileError("non-finite entry")
    return z


def read_matrix(path) -> tuple[np.ndarray, str | None]:
    """Parse a matrix file; returns (array, role). The array is 1-D for
    role 'state', square 2-D otherwise."""
    try:
        with open(path, "r", encoding="ascii") as handle:
            raw = json.load(handle, parse_constant=lambda s: math.nan)
    except (OSError, json.JSONDecodeError) as exc:
        raise MatrixFileError(f"cannot parse {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise MatrixFileError(f"{path}: top level must be an object")
    dim = raw.get("dim")
    rows = raw.get("rows")
    role = raw.get("role")
    if not isinstance(dim, int) or dim < 1:
        raise MatrixFileError(f"{path}: 'dim' must be a positive integer")
    if role is not None and role not in ROLES:
        raise MatrixFileError(f"{path}: unknown role {role!r}")
    if not isinstance(rows, list):
        raise MatrixFileError(f"{path}: 'rows' must be an array")
    if role == "state":
        if len(rows) != dim:
            raise MatrixFileError(f"{path}: state length {len(rows)} != dim {dim}")
        return np.array([_parse_entry(e) for e in rows], dtype=complex), role
    if len(rows) != dim or any(not isinstance(r, list) or len(r) != dim for r in rows):
        raise MatrixFileError(f"{path}: 'rows' must be {dim}x{dim}")
    values = np.array([[_parse_entry(e) for e in row] for row in rows],
                      dtype=complex)
    return values, role


@dataclass
class ReportRecord:
    """One machine-parseable check line: name, value, tolerance, pass."""

    name: str
    value: float
    tolerance: float
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = self.value <= self.tolerance

    def line(self) -> str:
        verdict = "pass" if self.passed else "fail"
        return (f"{self.name}\t{format_number(self.value)}"
                f"\t{format_number(self.tolerance)}\t{verdict}")


def scalar_record(name: str, value: float) -> ReportRecord:
    """A reported quantity that is not a check; tolerance inf, always passes."""
    return ReportRecord(name, value, math.inf)


def trace_csv(times, aux_norms, theta_norms, states) -> str:
    """CSV trace with fixed header: time, both norms, then interleaved
    re/im state components."""
    dim = states.shape[1]
    header = ["time", "aux_norm", "theta_norm"]
    for i in range(dim):
        header += [f"psi{i}_re", f"psi{i}_im"]
    lines = [",".join(header)]
    for k in range(len(times)):
        fields = [format_number(times[k]), format_number(aux_norms[k]),
                  format_number(theta_norms[k])]
        for i in range(dim):
            fields += [format_number(states[k, i].real),
                       format_number(states[k, i].imag)]
        lines.append(",".join(fields))
    return "\n".join(lines) + "\n"
