"""Eigenvalue lists: parsing, conjugate closure and necessary-condition diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

PAIR_TOL = 1e-9


def as_complex_list(values) -> np.ndarray:
    """Coerce numbers or ``[re, im]`` pairs into a 1-D complex array.

    Rejects NaN/Inf so that downstream code can trust its inputs.
    """
    out = []
    for pos, v in enumerate(values):
        if isinstance(v, (list, tuple)):
            if len(v) != 2:
                raise ValueError(f"entry {pos}: expected [re, im], got {v!r}")
            z = complex(float(v[0]), float(v[1]))
        else:
            z = complex(v)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise ValueError(f"entry {pos}: non-finite value {v!r}")
        out.append(z)
    if not out:
        raise ValueError("empty list")
    return np.array(out, dtype=complex)


def as_real_list(values, tol: float = PAIR_TOL) -> np.ndarray:
    z = as_complex_list(values)
    bad = np.flatnonzero(np.abs(z.imag) >= tol)
    if bad.size:
        raise ValueError(f"entry {bad[0]} is not real: {z[bad[0]]}")
    return z.real.copy()


def canonical_order(values) -> np.ndarray:
    """Sort descending by (re, im)."""
    z = np.asarray(values, dtype=complex)
    idx = np.lexsort((-z.imag, -z.real))
    return z[idx]


def is_conjugate_closed(values, tol: float = PAIR_TOL) -> bool:
    """True iff every entry can be matched to a conjugate partner.

    Entries with ``|im| < tol`` pair with themselves. The rest are matched
    greedily in canonical order; both components must agree within ``tol``.
    """
    z = canonical_order(values)
    used = np.zeros(len(z), dtype=bool)
    for i, zi in enumerate(z):
        if used[i]:
            continue
        used[i] = True
        if abs(zi.imag) < tol:
            continue
        target = zi.conjugate()
        for j in range(i + 1, len(z)):
            if not used[j] and abs(z[j].real - target.real) <= tol and abs(z[j].imag - target.imag) <= tol:
                used[j] = True
                break
        else:
            return False
    return True


def suleimanova_check(values) -> bool:
    lam = np.asarray(values, dtype=float)
    if lam.size == 0:
        return False
    tail = np.sort(lam[1:])[::-1]
    return bool(lam[0] > 0 and np.all(tail <= 0) and lam.sum() >= 0)


@dataclass
class DiagnosticsReport:
    perron_in_list: bool
    conjugate_closed: bool
    moments: dict[int, complex]
    negative_moments: list[int] = field(default_factory=list)
    # (k_pow, m_pow) pairs with s_k^m > n^(m-1) s_{km}
    moment_failures: list[tuple[int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (self.perron_in_list and self.conjugate_closed
                and not self.negative_moments and not self.moment_failures)

    def to_json(self) -> dict:
        return {
            "perron_in_list": self.perron_in_list,
            "conjugate_closed": self.conjugate_closed,
            "moments": {str(k): _real_or_pair(v) for k, v in self.moments.items()},
            "negative_moments": self.negative_moments,
            "moment_failures": [list(p) for p in self.moment_failures],
            "passed": self.passed,
        }


def _real_or_pair(z: complex):
    return z.real if abs(z.imag) < PAIR_TOL else [z.real, z.imag]


def power_sums(values, kmax: int) -> dict[int, complex]:
    z = np.asarray(values, dtype=complex)
    return {k: complex(np.sum(z ** k)) for k in range(1, kmax + 1)}


def niep_diagnostics(values, k_max: int = 4, m_max: int = 4, tol: float = PAIR_TOL) -> DiagnosticsReport:
    """Check the classical necessary conditions for a list to be realizable.

    Reports whether the spectral radius is itself an entry, conjugate
    closure, nonnegativity of the power sums, and every ``(k_pow, m_pow)``
    with ``k_pow <= k_max``, ``2 <= m_pow <= m_max`` for which
    ``s_k^m <= n^(m-1) s_{km}`` fails.
    """
    z = np.asarray(values, dtype=complex)
    n = len(z)
    if k_max < 1 or m_max < 1:
        raise ValueError("k_max and m_max must be >= 1")
    moments = power_sums(z, k_max * m_max)

    rho = np.max(np.abs(z))
    perron = bool(np.any((np.abs(z.imag) < tol) & (z.real >= 0) & (np.abs(z.real - rho) <= tol * max(1.0, rho))))

    negative = [k for k, s in moments.items() if s.real < -tol * max(1.0, abs(s))]
    failures = []
    for k in range(1, k_max + 1):
        for mp in range(2, m_max + 1):
            lhs = moments[k].real ** mp
            rhs = n ** (mp - 1) * moments[k * mp].real
            if lhs - rhs > tol * max(1.0, abs(lhs), abs(rhs)):
                failures.append((k, mp))
    return DiagnosticsReport(
        perron_in_list=perron,
        conjugate_closed=is_conjugate_closed(z, tol),
        moments=moments,
        negative_moments=negative,
        moment_failures=failures,
    )
