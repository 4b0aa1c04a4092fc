"""X-like permutative matrices.

Row 0 of ``per_x(x)`` is ``x``; row ``i >= 1`` is ``x`` with positions 0 and
``i`` swapped. Its spectrum is ``(sum(x), x0 - x1, ..., x0 - x_{n-1})``, so
the map ``x -> spectrum`` is the linear transform ``M`` below and every real
list has exactly one X-like preimage ``M^{-1} list``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

NONNEG_TOL = 1e-12
EXHAUSTIVE_MAX_TAIL = 10


def m_matrix(n: int) -> np.ndarray:
    """``[[1, e^T], [e, -I]]``."""
    M = -np.eye(n)
    M[0, :] = 1.0
    M[:, 0] = 1.0
    return M


def m_inverse(n: int) -> np.ndarray:
    """``(1/n) [[1, e^T], [e, J - nI]]``."""
    Minv = np.ones((n, n)) - n * np.eye(n)
    Minv[0, :] = 1.0
    Minv[:, 0] = 1.0
    return Minv / n


def per_x(x) -> np.ndarray:
    x = np.asarray(x)
    n = x.shape[0]
    X = np.tile(x, (n, 1))
    for i in range(1, n):
        X[i, 0], X[i, i] = x[i], x[0]
    return X


def x_taus(n: int) -> list[list[int]]:
    """The transpositions (0 i) that generate the X pattern, identity first."""
    taus = []
    for i in range(n):
        t = list(range(n))
        t[0], t[i] = t[i], t[0]
        taus.append(t)
    return taus


def tau_apply(taus, a) -> np.ndarray:
    """Stack ``a`` permuted by each ``tau_j`` (0-based index lists) as rows."""
    a = np.asarray(a)
    n = a.shape[0]
    if len(taus) != n:
        raise ValueError(f"need {n} permutations, got {len(taus)}")
    rows = []
    for t in taus:
        if sorted(t) != list(range(n)):
            raise ValueError(f"{t!r} is not a permutation of 0..{n - 1}")
        rows.append(a[list(t)])
    return np.array(rows)


def spectrum_of_xlike(x) -> np.ndarray:
    x = np.asarray(x)
    if x.shape[0] < 2:
        raise ValueError("X-like vectors need n >= 2")
    return np.concatenate([[x.sum()], x[0] - x[1:]])


def xlike_from_list(lam) -> np.ndarray:
    """Apply ``M^{-1}``: ``x0 = mean(lam)``, ``x_i = x0 - lam_i``."""
    lam = np.asarray(lam)
    if lam.shape[0] < 2:
        raise ValueError("X-like vectors need n >= 2")
    x0 = lam.sum() / lam.shape[0]
    return np.concatenate([[x0], x0 - lam[1:]])


def xlike_linear_combination(coeffs, vectors) -> np.ndarray:
    vectors = [np.asarray(v) for v in vectors]
    if len(coeffs) != len(vectors):
        raise ValueError("one coefficient per vector required")
    if len({v.shape for v in vectors}) > 1:
        raise ValueError("vectors differ in length")
    return sum(c * v for c, v in zip(coeffs, vectors))


@dataclass
class XLikeFeasibility:
    feasible: bool
    witness: np.ndarray | None
    # smallest entry of M^{-1} lam; negative when infeasible
    binding_value: float
    x: np.ndarray

    def to_json(self) -> dict:
        return {
            "feasible": self.feasible,
            "x": self.x.tolist(),
            "witness": None if self.witness is None else self.witness.tolist(),
            "binding_value": self.binding_value,
        }


def clamp(x, tol: float = NONNEG_TOL) -> np.ndarray:
    x = np.array(x, dtype=float)
    x[(x < 0) & (x >= -tol)] = 0.0
    return x


def xlike_feasible(lam, tol: float = NONNEG_TOL) -> XLikeFeasibility:
    """Is ``lam`` (first entry the Perron candidate) the spectrum of a nonnegative per_X?"""
    lam = np.asarray(lam, dtype=float)
    if lam.shape[0] == 1:
        x = lam.copy()
    else:
        x = xlike_from_list(lam)
    low = float(x.min())
    ok = low >= -tol
    return XLikeFeasibility(ok, clamp(x, tol) if ok else None, low, x)


def _check_tail(tail) -> np.ndarray:
    tail = np.asarray(tail, dtype=float)
    if tail.ndim != 1 or tail.size == 0:
        raise ValueError("tail must be a nonempty list")
    return tail


def guo_index_xlike_closed(tail) -> float:
    tail = _check_tail(tail)
    n = tail.size + 1
    total = tail.sum()
    return float(max(-total, n * tail.max() - total))


def guo_index_xlike_exhaustive(tail) -> float:
    """Min over tail orders nu of the least Perron value making every
    ``lam1 >= (n-1) lam_nu(i) - sum_{j != i} lam_nu(j)`` and the trace hold."""
    tail = _check_tail(tail)
    if tail.size > EXHAUSTIVE_MAX_TAIL:
        raise ValueError(f"exhaustive search limited to tails of length <= {EXHAUSTIVE_MAX_TAIL}")
    n = tail.size + 1
    best = np.inf
    for nu in itertools.permutations(range(tail.size)):
        arranged = tail[list(nu)]
        total = arranged.sum()
        worst = -total
        for i in range(arranged.size):
            worst = max(worst, (n - 1) * arranged[i] - (total - arranged[i]))
        best = min(best, worst)
    return float(best)


def guo_index_xlike(tail, cross_check: bool | None = None) -> float:
    """Least Perron value ``lam`` for which ``(lam, *tail)`` is an X-like list.

    By default the permutation search is run as a cross-check for tails of
    length <= 8.
    """
    tail = _check_tail(tail)
    value = guo_index_xlike_closed(tail)
    if cross_check is None:
        cross_check = tail.size <= 8
    if cross_check:
        searched = guo_index_xlike_exhaustive(tail)
        scale = max(1.0, float(np.abs(tail).max()))
        if abs(searched - value) > 1e-9 * scale:
            raise AssertionError(f"closed form {value} disagrees with permutation search {searched}")
    return value


def guo_bound(tail) -> float:
    """Upper bound ``2 n max|lam_j|`` valid for any realizable completion."""
    tail = _check_tail(tail)
    return float(2 * (tail.size + 1) * np.abs(tail).max())
