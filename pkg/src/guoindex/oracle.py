"""Independent checks of claimed spectra and brute-force thresholds.

Nothing here uses the DFT or ``M^{-1}`` formulas: spectra are checked with
power sums ``tr(A^k)`` and determinants ``det(A - lam I)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import linear_sum_assignment

MAX_ORDER = 64


class MonotonicityError(RuntimeError):
    pass


@dataclass
class EigenRecord:
    value: complex
    multiplicity: int
    det_residual: float
    det_tol: float


@dataclass
class VerificationReport:
    passed: bool
    moment_max_error: float
    moment_errors: list[float]
    determinant_residuals: list[float]
    detail: list[EigenRecord] = field(default_factory=list)
    scale: float = 1.0
    tol: float = 0.0

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "tol": self.tol,
            "scale": self.scale,
            "moment_max_error": self.moment_max_error,
            "determinant_residuals": self.determinant_residuals,
        }


def lu_determinant(A) -> complex:
    """Determinant by Gaussian elimination with partial pivoting."""
    U = np.array(A, dtype=complex)
    n = U.shape[0]
    det = 1.0 + 0j
    for c in range(n):
        p = c + int(np.argmax(np.abs(U[c:, c])))
        if U[p, c] == 0:
            return 0j
        if p != c:
            U[[c, p]] = U[[p, c]]
            det = -det
        det *= U[c, c]
        U[c + 1:, c:] -= np.outer(U[c + 1:, c] / U[c, c], U[c, c:])
    return det


def _distinct(values, tol: float) -> list[tuple[complex, int]]:
    out: list[list] = []
    for z in values:
        for rec in out:
            if abs(rec[0] - z) <= tol:
                rec[1] += 1
                break
        else:
            out.append([complex(z), 1])
    return [(z, k) for z, k in out]


def verify_spectrum(A, claimed, tol: float = 1e-8) -> VerificationReport:
    """Check that ``claimed`` is the spectrum of ``A`` (with multiplicity).

    Moments: ``|tr(A^k) - sum lam^k| <= tol * k * scale^(k-1)`` for
    k = 1..order, the first-order size of the change a shift of ``tol`` in
    one eigenvalue produces. Determinants: ``|det(A - lam I)| <= tol *
    scale^order`` for every distinct claimed value. ``scale`` is
    ``max(1, max absolute row sum)``, an upper bound on the spectral radius.
    """
    A = np.asarray(A)
    claimed = np.asarray(claimed, dtype=complex).ravel()
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("matrix must be square")
    n = A.shape[0]
    if n > MAX_ORDER:
        raise ValueError(f"order {n} exceeds {MAX_ORDER}")
    if claimed.size != n:
        raise ValueError(f"claimed list has {claimed.size} entries for order {n}")
    scale = max(1.0, float(np.abs(A).sum(axis=1).max()))

    errors = []
    P = np.eye(n, dtype=complex)
    ok = True
    for k in range(1, n + 1):
        P = P @ A
        err = abs(np.trace(P) - np.sum(claimed ** k)) / (k * scale ** (k - 1))
        errors.append(float(err))
        ok &= err <= tol

    residuals = []
    detail = []
    det_tol = tol * scale ** n
    for z, mult in _distinct(claimed, tol):
        r = abs(lu_determinant(A - z * np.eye(n)))
        residuals.append(float(r))
        detail.append(EigenRecord(z, mult, float(r), det_tol))
        ok &= r <= det_tol
    return VerificationReport(bool(ok), max(errors), errors, residuals, detail, scale, tol)


def multiset_distance(a, b) -> float:
    """Largest pairwise gap under the best one-to-one matching of two lists."""
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    if a.size != b.size:
        return np.inf
    if a.size == 0:
        return 0.0
    cost = np.abs(a[:, None] - b[None, :])
    # squared cost keeps near pairs together
    r, c = linear_sum_assignment(cost ** 2)
    return float(cost[r, c].max())


def reference_eigenvalues(A) -> np.ndarray:
    """LAPACK eigenvalues; used only as an outside reference in checks."""
    return np.linalg.eigvals(np.asarray(A))


def brute_force_threshold(feasible: Callable[[float], bool], lo: float, hi: float,
                          tol: float = 1e-11, probes: int = 16) -> float:
    """Least ``v`` in ``[lo, hi]`` with ``feasible(v)``, by bisection.

    Requires monotone feasibility. Besides the bisection brackets, ``probes``
    evenly spaced points above the result are re-tested; any observation
    contradicting monotonicity raises :class:`MonotonicityError`.
    """
    if lo > hi:
        raise ValueError("lo > hi")
    if not feasible(hi):
        raise ValueError(f"infeasible at upper end {hi}")
    if feasible(lo):
        return lo
    bad, good = lo, hi
    while good - bad > tol:
        mid = 0.5 * (bad + good)
        if mid <= bad or mid >= good:
            break
        if feasible(mid):
            good = mid
        else:
            bad = mid
    if not feasible(good) or feasible(bad):
        raise MonotonicityError(f"feasibility not monotone near {good}")
    for v in np.linspace(good, hi, probes + 2)[1:-1]:
        if not feasible(v):
            raise MonotonicityError(f"infeasible at {v} above threshold {good}")
    return good
