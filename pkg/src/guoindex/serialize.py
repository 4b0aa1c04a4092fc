"""JSON encoding of lists, matrices, assemblies and reports."""

from __future__ import annotations

import json

import numpy as np

from .block import BlockAssembly
from .guo import EigenMatrix
from .spectra import as_complex_list, as_real_list

ZERO_TOL = 1e-12
REAL_TOL = 1e-9


def fmt(v: float) -> float:
    """10 significant digits; values within 1e-12 of zero become 0."""
    v = float(v)
    if abs(v) < ZERO_TOL:
        return 0.0
    return float(f"{v:.10g}")


def jsonable(obj):
    """Recursively convert numpy/complex data to plain, rounded JSON values.

    Complex numbers become ``[re, im]`` unless ``|im| < 1e-9``.
    """
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        z = complex(obj)
        if abs(z.imag) < REAL_TOL:
            return fmt(z.real)
        return [fmt(z.real), fmt(z.imag)]
    if isinstance(obj, (float, np.floating)):
        return fmt(obj)
    return obj


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), indent=2, sort_keys=False)


def matrix_json(A) -> dict:
    A = np.asarray(A)
    return {"order": A.shape[0], "rows": A}


def complex_pairs(values) -> list:
    """Always ``[re, im]``, as in a SpectrumList."""
    return [[fmt(z.real), fmt(z.imag)] for z in np.asarray(values, dtype=complex).ravel()]


def spectrum_json(values) -> dict:
    return {"entries": complex_pairs(values)}


def assembly_json(A: BlockAssembly) -> dict:
    blocks = {f"{u},{v}": complex_pairs(A.rows[u, v]) for u in range(A.n) for v in range(A.n)}
    return {"n": A.n, "m": A.m, "pattern": A.pattern, "blocks": blocks}


def parse_assembly(doc: dict) -> BlockAssembly:
    n, m = int(doc["n"]), int(doc["m"])
    rows = np.zeros((n, n, m), dtype=complex)
    seen = set()
    for key, vals in doc["blocks"].items():
        u, v = (int(t) for t in key.split(","))
        row = as_complex_list(vals)
        if row.size != m:
            raise ValueError(f"block {key} has {row.size} entries, expected {m}")
        rows[u, v] = row
        seen.add((u, v))
    if len(seen) != n * n:
        raise ValueError(f"expected {n * n} blocks, got {len(seen)}")
    return BlockAssembly(rows, doc.get("pattern", "general"))


def parse_entries(doc, key: str = "entries") -> np.ndarray:
    if isinstance(doc, list):
        return as_complex_list(doc)
    if key not in doc:
        raise ValueError(f"missing field {key!r}")
    return as_complex_list(doc[key])


def parse_real_entries(doc, key: str = "entries") -> np.ndarray:
    if isinstance(doc, dict) and key in doc:
        return as_real_list(doc[key])
    if isinstance(doc, list):
        return as_real_list(doc)
    raise ValueError(f"missing field {key!r}")


def parse_eigen_matrix(doc: dict) -> EigenMatrix:
    rows = doc["entries"]
    grid = [as_complex_list(r) for r in rows]
    if len({len(r) for r in grid}) != 1:
        raise ValueError("rows of entries differ in length")
    E = EigenMatrix(np.array(grid))
    for key, val in (("n", E.n), ("m", E.m)):
        if key in doc and int(doc[key]) != val:
            raise ValueError(f"declared {key}={doc[key]} but entries give {val}")
    return E


def parse_matrix(doc) -> np.ndarray:
    rows = doc["rows"] if isinstance(doc, dict) else doc
    A = np.array([as_complex_list(r) for r in rows])
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("matrix must be square")
    if isinstance(doc, dict) and "order" in doc and int(doc["order"]) != A.shape[0]:
        raise ValueError("declared order does not match rows")
    return A.real.copy() if np.all(A.imag == 0) else A


def render_table(payload, indent: str = "") -> str:
    """Plain-text rendering: scalars inline, 2-D numeric lists as aligned grids."""
    data = jsonable(payload)
    lines: list[str] = []

    def cell(v):
        if isinstance(v, list):
            re, im = v
            return f"{re:.6g}{im:+.6g}i"
        return f"{v:.6g}" if isinstance(v, float) else str(v)

    def is_grid(v):
        return (isinstance(v, list) and v and all(isinstance(r, list) for r in v)
                and all(not isinstance(c, dict) for r in v for c in r)
                and not all(len(r) == 2 and all(isinstance(c, (int, float)) for c in r) for r in v))

    def walk(obj, pad):
        for key, val in obj.items():
            if isinstance(val, dict):
                lines.append(f"{pad}{key}:")
                walk(val, pad + "  ")
            elif is_grid(val):
                lines.append(f"{pad}{key}:")
                cells = [[cell(c) for c in r] for r in val]
                width = max(len(c) for r in cells for c in r)
                for r in cells:
                    lines.append(pad + "  " + " ".join(c.rjust(width) for c in r))
            elif isinstance(val, list):
                lines.append(f"{pad}{key}: " + " ".join(cell(c) if not isinstance(c, (list, dict)) or len(c) == 2 else str(c) for c in val))
            else:
                lines.append(f"{pad}{key}: {cell(val)}")

    if isinstance(data, dict):
        walk(data, indent)
    else:
        lines.append(str(data))
    return "\n".join(lines)
