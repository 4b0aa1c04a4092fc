"""Four worked examples, with their printed values and known errata.

Printed values carry four decimals, so they are compared at 1e-3. Printed
values that contradict the construction are listed as errata: the harness
confirms they still disagree and reports the derived values next to them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .guo import EigenMatrix, construct_block, guo_index_block, phi
from .oracle import verify_spectrum
from .xlike import xlike_from_list

PRINT_TOL = 1e-3


@dataclass
class WorkedExample:
    id: int
    E: EigenMatrix
    # first-column X-like vector as printed
    first_column_x: tuple | None
    # L_k first rows as printed, k = 0..m-1
    printed_L: list[tuple]
    # first block row (circulant generators) as printed
    printed_A: list[tuple]
    # Perron value at which the printed L/A were actually computed
    build_at: float | None = None
    errata_L: set[int] = field(default_factory=set)
    errata_A: set[int] = field(default_factory=set)
    expected_phi: float | None = None
    # Perron value below threshold, L_k first rows printed there, errata among them
    infeasible_variant: tuple[float, list[tuple], set[int]] | None = None
    expected_guo: float | None = None
    notes: list[str] = field(default_factory=list)


EXAMPLES = {
    1: WorkedExample(
        1,
        EigenMatrix([[23.9, 1j, -1j], [-3, 1 - 7j, 1 + 7j], [0, -3 + 1j, -3 - 1j]]),
        first_column_x=(6.9667, 9.9667, 6.9667),
        printed_L=[(1.8778, 2.2111, 3.8778), (1.5822, 6.9570, 0.0048), (3.5067, 0.7986, 3.0840)],
        printed_A=[(1.8778, 1.5822, 3.5067), (2.2111, 6.9570, 0.7986), (3.8778, 0.0048, 3.0840)],
        expected_phi=10 + 8 * math.sqrt(3),
        notes=["printed '0,0048' read as 0.0048"],
    ),
    2: WorkedExample(
        2,
        EigenMatrix([[5, -3, -2, -3], [2, 1, 2, 1]]),
        first_column_x=(3.5, 1.5),
        printed_L=[(1.5, 0), (2, 2), (2.5, 2), (2, 2)],
        printed_A=[(1.5, 2, 2.5, 2), (0, 2, 2, 2)],
        build_at=14.0,
        expected_phi=14.0,
        notes=["printed Perron entry 5 is below the threshold 14; the printed L and A "
               "values are the construction at 14, whose spectrum is {14, 2, -3, 1, -2, 2, -3, 1}"],
    ),
    3: WorkedExample(
        3,
        EigenMatrix([[2.5, 0.25j, 0, -0.25j], [-1, 0.5 - 1j, 0, 0.5 + 1j]]),
        first_column_x=None,
        printed_L=[(0.25, 0.375), (0, 0.75), (0.125, 0.5), (0.375, 0.125)],
        printed_A=[(0.25, 0.0, 0.125, 0.375), (0.375, 0.75, 0.5, 0.125)],
        errata_L={0, 2},
        errata_A={0, 1},
        expected_phi=2.5,
        infeasible_variant=(2.49, [(0.2488, 0.3738), (-0.0012, 0.7488), (0.1238, 0.4987), (0.3738, 0.1238)],
                            {0, 2}),
        notes=["printed L_0 and L_2 (and hence A_0, A_1) disagree with the inverse DFT of the "
               "spectral family, both at 2.5 and at 2.49; L_1 and L_3 agree"],
    ),
    4: WorkedExample(
        4,
        EigenMatrix([[4, 1, 1], [-1, -2.5, -2.5]]),
        first_column_x=None,
        printed_L=[(0, 2), (0.75, 0.25), (0.75, 0.25)],
        printed_A=[(0, 0.75, 0.75), (2, 0.25, 0.25)],
        expected_phi=4.0,
        expected_guo=4.0,
        notes=["4 is the least Perron value: below it the trace is negative"],
    ),
}


@dataclass
class Check:
    name: str
    kind: str  # "match", "erratum" or "oracle"
    ok: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "kind": self.kind, "ok": self.ok, "detail": self.detail}


def _close(a, b, tol=PRINT_TOL) -> bool:
    return bool(np.max(np.abs(np.asarray(a, dtype=complex) - np.asarray(b, dtype=complex))) <= tol)


def _compare(checks, name, derived, printed, is_erratum):
    derived = np.real_if_close(np.asarray(derived), tol=1e6)
    agree = _close(derived, printed)
    shown = np.round(np.real(derived), 6).tolist()
    if is_erratum:
        checks.append(Check(name, "erratum", not agree, f"printed {list(printed)}, derived {shown}"))
    else:
        checks.append(Check(name, "match", agree, f"printed {list(printed)}, derived {shown}"))


def run_example(ex: WorkedExample, tol: float = 1e-8) -> list[Check]:
    checks: list[Check] = []
    E = ex.E
    if ex.first_column_x is not None:
        x = xlike_from_list(E.entries[:, 0].real)
        _compare(checks, "first-column X-like vector", x, ex.first_column_x, False)

    report = phi(E)
    if ex.expected_phi is not None:
        ok = abs(report.phi - ex.expected_phi) <= 1e-9
        checks.append(Check("threshold", "oracle", ok, f"phi = {report.phi:.12g}, expected {ex.expected_phi:.12g}"))

    build = E if ex.build_at is None else E.with_perron(ex.build_at)
    if ex.build_at is not None:
        res = construct_block(E)
        checks.append(Check(f"infeasible at printed Perron entry {E.perron:g}", "oracle", not res.feasible,
                            f"most negative coefficient {res.min_entry:.6g}"))
    res = construct_block(build)
    checks.append(Check(f"construction at Perron entry {build.perron:g}", "oracle", res.feasible,
                        f"min coefficient {res.min_entry:.6g}"))
    if not res.feasible:
        return checks

    for k, printed in enumerate(ex.printed_L):
        _compare(checks, f"L_{k}", res.L[:, k], printed, k in ex.errata_L)
    for j, printed in enumerate(ex.printed_A):
        _compare(checks, f"A_{j}", res.L[j, :], printed, j in ex.errata_A)

    A = res.assembly.materialize().real
    checks.append(Check("materialization nonnegative", "oracle", bool(A.min() >= 0), f"min entry {A.min():.6g}"))
    ver = verify_spectrum(A, build.multiset(), tol)
    checks.append(Check("spectrum equals the entries of E", "oracle", ver.passed,
                        f"moment error {ver.moment_max_error:.3g}"))
    rows = A.sum(axis=1)
    checks.append(Check("row sums equal Perron entry", "oracle", _close(rows, np.full(rows.size, build.perron), 1e-9),
                        f"row sums in [{rows.min():.12g}, {rows.max():.12g}]"))

    if ex.infeasible_variant is not None:
        value, printed_L, errata = ex.infeasible_variant
        bad = construct_block(E.with_perron(value))
        checks.append(Check(f"infeasible at Perron entry {value:g}", "oracle", not bad.feasible,
                            f"violation {bad.min_entry:.6g} at (k, j) = {bad.violation_index}"))
        for k, printed in enumerate(printed_L):
            _compare(checks, f"L_{k} at {value:g}", bad.L[:, k], printed, k in errata)

    if ex.expected_guo is not None:
        g = guo_index_block(E, "exhaustive")
        checks.append(Check("Guo index over admissible rearrangements", "oracle",
                            abs(g.phi - ex.expected_guo) <= 1e-9 and bool(g.verified),
                            f"gamma* = {g.phi:.12g}, visited {g.visited}"))
    return checks


def all_ok(checks: list[Check]) -> bool:
    return all(c.ok for c in checks)
