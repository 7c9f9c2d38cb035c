"""JSON and CSV encoding shared by the command line and the tests.

Complex numbers serialize as [re, im] pairs everywhere; matrices as
{"dim": n, "matrix": [[pair, ...], ...]} in row-major order; superoperators
use the same layout with an n^2 x n^2 matrix.  Floats are rendered through
repr, which round-trips exactly, so identical inputs produce byte-identical
output.
"""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from .classical import FiniteMeasureSpace, PointMap
from .superop import LampertiDecomposition, SuperOperator


class SchemaError(ValueError):
    """Input does not match the expected schema; ``field`` names the culprit."""

    def __init__(self, field: str, message: str):
        super().__init__(f"field {field!r}: {message}")
        self.field = field


def require(obj: dict, field: str):
    if not isinstance(obj, dict):
        raise SchemaError(field, "enclosing object must be a JSON object")
    if field not in obj:
        raise SchemaError(field, "missing")
    return obj[field]


def complex_pair(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _entry_to_complex(entry, field: str) -> complex:
    if isinstance(entry, (int, float)):
        return complex(entry)
    if isinstance(entry, (list, tuple)) and len(entry) == 2:
        return complex(float(entry[0]), float(entry[1]))
    raise SchemaError(field, f"entry must be a number or an [re, im] pair, got {entry!r}")


def matrix_to_json(m) -> dict:
    m = np.asarray(m, dtype=complex)
    return {
        "dim": int(m.shape[0]),
        "matrix": [[complex_pair(z) for z in row] for row in m],
    }


def matrix_from_json(obj, field: str) -> np.ndarray:
    if isinstance(obj, dict):
        rows = require(obj, "matrix") if field != "matrix" else obj["matrix"]
    else:
        rows = obj
    if not isinstance(rows, list) or not rows:
        raise SchemaError(field, "matrix must be a nonempty list of rows")
    try:
        out = np.array(
            [[_entry_to_complex(entry, field) for entry in row] for row in rows]
        )
    except TypeError as exc:
        raise SchemaError(field, str(exc)) from exc
    if out.ndim != 2 or out.shape[0] != out.shape[1]:
        raise SchemaError(field, f"matrix must be square, got shape {out.shape}")
    if isinstance(obj, dict) and "dim" in obj and int(obj["dim"]) != out.shape[0]:
        raise SchemaError(field, "declared dim does not match the matrix shape")
    return out


def superop_to_json(t: SuperOperator) -> dict:
    m = t.matrix
    return {
        "dim": int(t.dim),
        "matrix": [[complex_pair(z) for z in row] for row in m],
    }


def superop_from_json(obj, field: str) -> SuperOperator:
    # the declared dim is the algebra dimension n; the matrix side is n^2,
    # so the generic matrix check must only see the raw rows
    rows = require(obj, "matrix") if isinstance(obj, dict) else obj
    m = matrix_from_json(rows, field)
    side = m.shape[0]
    dim = int(round(side**0.5))
    if dim * dim != side:
        raise SchemaError(field, f"superoperator side {side} is not a perfect square")
    if isinstance(obj, dict) and "dim" in obj and int(obj["dim"]) != dim:
        raise SchemaError(field, "declared dim does not match the matrix shape")
    return SuperOperator(dim, m)


def point_map_from_json(obj, field: str = "map") -> PointMap:
    images = require(obj, "map") if isinstance(obj, dict) else obj
    if not isinstance(images, list) or not images:
        raise SchemaError(field, "map must be a nonempty list of indices")
    if isinstance(obj, dict) and "n" in obj and int(obj["n"]) != len(images):
        raise SchemaError(field, "declared n does not match the map length")
    try:
        return PointMap(np.asarray(images, dtype=int))
    except ValueError as exc:
        raise SchemaError(field, str(exc)) from exc


def point_map_to_json(s: PointMap) -> dict:
    return {"n": int(s.n), "map": [int(i) for i in s.images]}


def measure_space_from_json(obj, field: str = "mu") -> FiniteMeasureSpace:
    mu = require(obj, "mu") if isinstance(obj, dict) else obj
    if not isinstance(mu, list) or not mu:
        raise SchemaError(field, "mu must be a nonempty list of positive masses")
    try:
        return FiniteMeasureSpace(np.asarray(mu, dtype=float))
    except ValueError as exc:
        raise SchemaError(field, str(exc)) from exc


def decomposition_to_json(dec: LampertiDecomposition) -> dict:
    return {
        "kind": dec.kind,
        "lambda": dec.scale,
        "w": matrix_to_json(dec.w),
        "implementing_unitary": matrix_to_json(dec.implementing_unitary),
        "residual": dec.residual,
        "centrality_defect": dec.centrality_defect,
        "scale_defect": dec.scale_defect,
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_json_default) + "\n"


def _json_default(value):
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"not JSON serializable: {type(value)!r}")


def _render_cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def rows_to_csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_render_cell(v) for v in row])
    return buf.getvalue()


def flat_report_to_csv(report: dict) -> str:
    rows = [(k, report[k]) for k in sorted(report)]
    return rows_to_csv(["name", "value"], rows)
