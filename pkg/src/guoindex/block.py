"""Matrices partitioned into circulant blocks.

A block matrix of ``n x n`` circulant blocks of order ``m`` is stored by the
first rows of its blocks, ``rows[u, v] = a(u, v)``. Its spectrum is the union
of the spectra of ``S_k[u, v] = sum_l a_l(u, v) omega^{k l}``, and the
coefficient matrices ``L_k[u, v] = a_k(u, v)`` are recovered from the
``S_k`` by an inverse DFT along the family index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circulant import circ, dft_context
from .xlike import NONNEG_TOL, spectrum_of_xlike

PATTERNS = ("xlike", "general")


def x_pattern_index(n: int) -> np.ndarray:
    """``idx[u, v]`` = which generator sits at (u, v) in the X pattern."""
    idx = np.tile(np.arange(n), (n, 1))
    for u in range(1, n):
        idx[u, 0], idx[u, u] = u, 0
    return idx


@dataclass
class BlockAssembly:
    rows: np.ndarray  # shape (n, n, m)
    pattern: str = "general"

    def __post_init__(self):
        self.rows = np.asarray(self.rows, dtype=complex)
        if self.rows.ndim != 3 or self.rows.shape[0] != self.rows.shape[1] or self.rows.shape[2] < 1:
            raise ValueError(f"block rows must have shape (n, n, m), got {self.rows.shape}")
        if self.pattern not in PATTERNS:
            raise ValueError(f"unknown pattern {self.pattern!r}")
        if self.pattern == "xlike":
            gen = self.rows[0]
            expect = gen[x_pattern_index(self.n)]
            if not np.array_equal(expect, self.rows):
                bad = np.argwhere(np.any(expect != self.rows, axis=2))[0]
                raise ValueError(f"block {tuple(bad)} breaks the X pattern")

    @classmethod
    def xlike(cls, generators) -> BlockAssembly:
        """Assemble the X pattern from its first block row ``generators[j]``."""
        gen = np.asarray(generators, dtype=complex)
        if gen.ndim != 2:
            raise ValueError("generators must be an (n, m) array")
        return cls(gen[x_pattern_index(gen.shape[0])], "xlike")

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    @property
    def m(self) -> int:
        return self.rows.shape[2]

    def materialize(self) -> np.ndarray:
        n, m = self.n, self.m
        A = np.zeros((n * m, n * m), dtype=self.rows.dtype)
        for u in range(n):
            for v in range(n):
                A[u * m:(u + 1) * m, v * m:(v + 1) * m] = circ(self.rows[u, v])
        return A

    def coefficient_family(self) -> np.ndarray:
        """``L[k] = (a_k(u, v))_{u, v}``, shape (m, n, n)."""
        return np.moveaxis(self.rows, 2, 0).copy()


def extract_spectral_family(A: BlockAssembly) -> np.ndarray:
    """``S[k, u, v] = sum_l a_l(u, v) omega^{k l}``, shape (m, n, n)."""
    W = dft_context(A.m).kernel(+1)
    return np.einsum("kl,uvl->kuv", W, A.rows)


def coefficients_from_spectral(S) -> np.ndarray:
    """``L_k = (1/m) sum_l S_l omega^{-k l}``, shape (m, n, n)."""
    S = np.asarray(S, dtype=complex)
    if S.ndim != 3 or S.shape[1] != S.shape[2]:
        raise ValueError(f"spectral family must have shape (m, n, n), got {S.shape}")
    m = S.shape[0]
    W = dft_context(m).kernel(-1)
    return np.einsum("kl,luv->kuv", W, S) / m


def assemble_from_spectral(S, pattern: str = "general") -> BlockAssembly:
    L = coefficients_from_spectral(S)
    return BlockAssembly(np.moveaxis(L, 0, 2), pattern)


def _is_xlike_matrix(S, tol: float = 1e-12) -> bool:
    x = S[0]
    n = x.shape[0]
    if n < 2:
        return False
    Y = np.tile(x, (n, 1))
    for i in range(1, n):
        Y[i, 0], Y[i, i] = x[i], x[0]
    return bool(np.max(np.abs(Y - S)) <= tol * max(1.0, float(np.abs(S).max())))


def family_spectra(S) -> list[np.ndarray]:
    """Spectrum of each ``S_k``; analytic for X-like members, LAPACK otherwise."""
    out = []
    for Sk in np.asarray(S):
        if _is_xlike_matrix(Sk):
            out.append(spectrum_of_xlike(Sk[0]))
        else:
            out.append(np.linalg.eigvals(Sk))
    return out


def block_spectrum(A: BlockAssembly) -> np.ndarray:
    """Union over k of the spectra of ``S_k``, concatenated in k order."""
    return np.concatenate(family_spectra(extract_spectral_family(A)))


@dataclass
class NonnegativityReport:
    nonnegative: bool
    min_value: float
    # (k, u, v) of the most negative coefficient
    index: tuple[int, int, int]
    max_imag: float

    def to_json(self) -> dict:
        return {"nonnegative": self.nonnegative, "min_value": self.min_value,
                "index": list(self.index), "max_imag": self.max_imag}


def coefficient_nonnegativity(L, tol: float = NONNEG_TOL, imag_tol: float = 1e-9) -> NonnegativityReport:
    """Nonnegativity of a coefficient family ``L`` of shape (m, n, n)."""
    L = np.asarray(L)
    re = L.real
    idx = np.unravel_index(int(np.argmin(re)), re.shape)
    low = float(re[idx])
    imag = float(np.abs(L.imag).max()) if np.iscomplexobj(L) else 0.0
    ok = low >= -tol and imag < imag_tol
    return NonnegativityReport(bool(ok), low, tuple(int(i) for i in idx), imag)


def is_nonnegative(A: BlockAssembly, tol: float = NONNEG_TOL) -> NonnegativityReport:
    """The block matrix is nonnegative iff every ``L_k`` is."""
    return coefficient_nonnegativity(A.coefficient_family(), tol)


def _block_row_permutation(ref, row, tol) -> list[int] | None:
    """Map each block of ``row`` to an unused equal block of ``ref``."""
    used = [False] * len(ref)
    perm = []
    for blk in row:
        for j, cand in enumerate(ref):
            if not used[j] and np.max(np.abs(cand - blk), initial=0.0) <= tol:
                used[j] = True
                perm.append(j)
                break
        else:
            return None
    return perm


def is_block_permutative(A: BlockAssembly, tol: float = 1e-12) -> bool:
    """Every block row is a rearrangement of the first block row.

    Cross-checked through the spectral family: the same rearrangement must
    carry row 0 of every ``S_k`` to its row u.
    """
    verdict = True
    perms = []
    for u in range(1, A.n):
        p = _block_row_permutation(A.rows[0], A.rows[u], tol)
        if p is None:
            verdict = False
            break
        perms.append(p)

    S = extract_spectral_family(A)
    # column v of row u as a vector over k
    cols = np.moveaxis(S, 0, 2)
    s_tol = tol * A.m * max(1.0, float(np.abs(A.rows).max()))
    s_verdict = all(_block_row_permutation(cols[0], cols[u], s_tol) is not None for u in range(1, A.n))
    if s_verdict != verdict:
        raise AssertionError("block-row and spectral-family permutation checks disagree")
    return verdict
