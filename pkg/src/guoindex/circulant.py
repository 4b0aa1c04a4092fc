"""Circulant matrices and their eigenvalue/coefficient transforms."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_DFT_ORDER = 64


@dataclass(frozen=True)
class DFTContext:
    """Roots of unity for one order; ``omega = exp(2 pi i / m)``."""

    m: int
    roots: np.ndarray  # roots[j] = omega**j, 0 <= j < m

    @property
    def omega(self) -> complex:
        return complex(self.roots[1 % self.m])

    def power(self, e) -> np.ndarray:
        """``omega**e`` for integer ``e`` (any sign), exponent reduced mod m."""
        return self.roots[np.mod(e, self.m)]

    def kernel(self, sign: int = 1) -> np.ndarray:
        """``W[k, l] = omega**(sign k l)``."""
        k = np.arange(self.m)
        return self.power(sign * np.outer(k, k))


@lru_cache(maxsize=None)
def dft_context(m: int) -> DFTContext:
    if m < 1:
        raise ValueError("order must be >= 1")
    j = np.arange(m)
    angle = 2 * np.pi * j / m
    roots = np.cos(angle) + 1j * np.sin(angle)
    roots.setflags(write=False)
    return DFTContext(m, roots)


def circ(a) -> np.ndarray:
    """Materialize circ(a): each row is the previous one shifted right."""
    a = np.asarray(a)
    m = a.shape[0]
    return np.array([np.roll(a, r) for r in range(m)])


def circ_eigenvalues(a) -> np.ndarray:
    """``lam_k = sum_l a_l omega^{k l}`` for k = 0..m-1."""
    a = np.asarray(a, dtype=complex)
    return dft_context(a.shape[0]).kernel(+1) @ a


def circ_from_eigenvalues(lams) -> np.ndarray:
    """``a_k = (1/m) sum_l lam_l omega^{-k l}``; inverse of circ_eigenvalues."""
    lams = np.asarray(lams, dtype=complex)
    m = lams.shape[0]
    return dft_context(m).kernel(-1) @ lams / m


def dft_matrix(m: int) -> np.ndarray:
    """Unitary DFT matrix ``F[p, q] = omega^{pq} / sqrt(m)``."""
    if not 1 <= m <= MAX_DFT_ORDER:
        raise ValueError(f"DFT order must be in 1..{MAX_DFT_ORDER}, got {m}")
    return dft_context(m).kernel(+1) / np.sqrt(m)


def real_if_close(a, tol: float = 1e-9):
    """Return a real array when every imaginary part is below ``tol``."""
    a = np.asarray(a)
    if np.iscomplexobj(a) and np.all(np.abs(a.imag) < tol):
        return a.real.copy()
    return a
