"""Nonnegative block X-like matrices with circulant blocks from an eigenvalue grid.

An ``n x m`` grid ``E`` of prescribed eigenvalues is turned into ``m``
X-like matrices ``S_l = per_x(M^{-1} E[:, l])`` (so ``S_l`` has column ``l``
of ``E`` as spectrum), then into the coefficient matrices ``L_k`` by an
inverse DFT over ``l``. Every entry of every ``L_k`` is
``(e11 + g_j(k)) / (m n)`` with ``g`` independent of ``e11 = E[0, 0]``, so
the least admissible ``e11`` is ``max(-g)``.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field

import numpy as np

from .block import (BlockAssembly, assemble_from_spectral, coefficient_nonnegativity,
                    is_nonnegative)
from .circulant import dft_context, dft_matrix
from .oracle import brute_force_threshold, verify_spectrum
from .spectra import PAIR_TOL, canonical_order
from .xlike import NONNEG_TOL, clamp, guo_index_xlike, m_inverse, per_x, xlike_feasible

DEFAULT_CAP = 10**6
EXHAUSTIVE_MAX_SLOTS = 10
PROVENANCES = ("identity", "column-swap", "global-conjugation", "tail-conjugation", "general")


class InvalidEigenMatrix(ValueError):
    """Raised with the name of the first failed structural requirement."""

    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        super().__init__(f"{invariant}: {detail}" if detail else invariant)


class DominanceWarning(UserWarning):
    pass


def pair_column(m: int, l: int) -> int:
    """0-based column whose entries are the conjugates of column ``l``."""
    return (m - l) % m


@dataclass
class EigenMatrix:
    entries: np.ndarray  # (n, m) complex

    def __post_init__(self):
        self.entries = np.array(self.entries, dtype=complex)
        if self.entries.ndim != 2 or 0 in self.entries.shape:
            raise InvalidEigenMatrix("shape", f"expected a nonempty n x m grid, got {self.entries.shape}")
        if not np.all(np.isfinite(self.entries)):
            raise InvalidEigenMatrix("finite", "entries must be finite")

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def m(self) -> int:
        return self.entries.shape[1]

    @property
    def perron(self) -> float:
        return float(self.entries[0, 0].real)

    def with_perron(self, value: float) -> EigenMatrix:
        e = self.entries.copy()
        e[0, 0] = value
        return EigenMatrix(e)

    def multiset(self) -> np.ndarray:
        return self.entries.ravel().copy()

    def problems(self, strict: bool = True, tol: float = PAIR_TOL) -> list[tuple[str, str]]:
        """Failed requirements as ``(name, detail)``; empty when valid.

        With ``strict=False`` the Perron entry is only required to be real,
        as in threshold queries where it is the unknown.
        """
        E = self.entries
        n, m = E.shape
        out = []
        col0 = E[:, 0]
        if np.any(np.abs(col0.imag) >= tol):
            i = int(np.argmax(np.abs(col0.imag)))
            out.append(("first-column-real", f"entry ({i}, 0) = {col0[i]}"))
        for l in range(1, m // 2 + 1):
            c = pair_column(m, l)
            diff = np.abs(E[:, c] - E[:, l].conj())
            if np.any(diff >= tol):
                out.append(("conjugate-columns", f"column {c} is not the conjugate of column {l}"))
                break
        e11 = E[0, 0]
        if strict:
            if not e11.real > 0:
                out.append(("perron-positive", f"e11 = {e11}"))
            others = np.abs(np.delete(E.ravel(), 0))
            if others.size and others.max() > abs(e11) + tol:
                out.append(("perron-dominant", f"|e11| = {abs(e11)} < {others.max()}"))
            if E.sum().real < -tol:
                out.append(("nonnegative-sum", f"sum of entries = {E.sum().real}"))
        return out

    def validate(self, strict: bool = True) -> EigenMatrix:
        probs = self.problems(strict)
        if probs:
            raise InvalidEigenMatrix(*probs[0])
        return self

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m,
                "entries": [[[z.real, z.imag] for z in row] for row in self.entries]}


def _check_dominance(E: EigenMatrix, value: float, tol: float = PAIR_TOL) -> str | None:
    others = np.abs(np.delete(E.entries.ravel(), 0))
    if others.size and others.max() > value + tol:
        return f"Perron value {value} is below the largest other modulus {others.max()}"
    return None


def build_spectral_family_from_E(E: EigenMatrix) -> np.ndarray:
    """``S_l = per_x(M^{-1} E q_l)``, shape (m, n, n)."""
    E.validate(strict=False)
    Minv = m_inverse(E.n) if E.n > 1 else np.ones((1, 1))
    s = Minv @ E.entries  # column l is s(l)
    return np.array([per_x(s[:, l]) if E.n > 1 else s[:, l].reshape(1, 1) for l in range(E.m)])


def fast_L_product(E: EigenMatrix) -> np.ndarray:
    """``(1/sqrt m) M^{-1} E F^*``: column k is the first row of ``L_k``.

    Row j is therefore the first row of the circulant block ``j`` of the
    first block row.
    """
    E.validate(strict=False)
    Minv = m_inverse(E.n) if E.n > 1 else np.ones((1, 1))
    F = dft_matrix(E.m)
    return Minv @ E.entries @ F.conj().T / np.sqrt(E.m)


def expand_L(L) -> np.ndarray:
    """(n, m) first-row matrix -> coefficient family ``per_x`` of each column, (m, n, n)."""
    L = np.asarray(L)
    if L.shape[0] == 1:
        return L.T.reshape(-1, 1, 1)
    return np.array([per_x(L[:, k]) for k in range(L.shape[1])])


def _perron_free_terms(entries, Minv, W) -> np.ndarray:
    """``g[j, k] = m n a_j(k) - e11``, shape (n, m), complex."""
    e = entries.copy()
    e[0, 0] = 0.0
    return e.shape[0] * (Minv @ e @ W)


@dataclass
class ArrangementBijection:
    """A rearrangement ``E(f)`` of the entries of ``E``.

    ``slots[t]`` is the row-major source index in ``E`` of the entry placed
    at row-major target index ``t``.
    """

    slots: tuple[int, ...]
    provenance: str = "general"

    def apply(self, E: EigenMatrix) -> EigenMatrix:
        flat = E.entries.ravel()
        if sorted(self.slots) != list(range(flat.size)):
            raise ValueError("slots are not a permutation of the entry positions")
        return EigenMatrix(flat[list(self.slots)].reshape(E.entries.shape))

    def to_json(self) -> dict:
        return {"slots": list(self.slots), "provenance": self.provenance}


def arrangement_from_matrix(E: EigenMatrix, Ef, provenance: str = "general",
                            tol: float = 1e-12) -> ArrangementBijection:
    """Recover the slot map of a rearranged grid by matching values."""
    src = E.entries.ravel()
    tgt = np.asarray(Ef).ravel()
    used = np.zeros(src.size, dtype=bool)
    slots = []
    for t, z in enumerate(tgt):
        order = [t] + [s for s in range(src.size) if s != t]
        for s in order:
            if not used[s] and abs(src[s] - z) <= tol:
                used[s] = True
                slots.append(s)
                break
        else:
            raise ValueError(f"value {z} at slot {t} is not an unused entry of E")
    return ArrangementBijection(tuple(slots), provenance)


def identity_arrangement(E: EigenMatrix) -> ArrangementBijection:
    return ArrangementBijection(tuple(range(E.entries.size)), "identity")


def column_swap_arrangement(E: EigenMatrix) -> ArrangementBijection:
    """Exchange the second and last columns."""
    m = E.m
    cols = list(range(m))
    if m > 1:
        cols[1], cols[m - 1] = cols[m - 1], cols[1]
    return arrangement_from_matrix(E, E.entries[:, cols], "column-swap")


def global_conjugation_arrangement(E: EigenMatrix) -> ArrangementBijection:
    return arrangement_from_matrix(E, E.entries.conj(), "global-conjugation")


def tail_conjugation_arrangement(E: EigenMatrix) -> ArrangementBijection:
    """Conjugate every column except the first."""
    Ef = E.entries.copy()
    Ef[:, 1:] = Ef[:, 1:].conj()
    return arrangement_from_matrix(E, Ef, "tail-conjugation")


def ennss_check(E: EigenMatrix, f: ArrangementBijection, tol: float = PAIR_TOL) -> bool:
    """Does ``f`` keep ``E`` in the admissible class (fixed Perron entry,
    feasible real first column, conjugate column pairs)?"""
    try:
        Ef = f.apply(E)
    except ValueError:
        return False
    if abs(Ef.entries[0, 0] - E.entries[0, 0]) > tol:
        return False
    names = {p for p, _ in Ef.problems(strict=True, tol=tol)} - {"nonnegative-sum"}
    if names:
        return False
    return xlike_feasible(Ef.entries[:, 0].real).feasible


@dataclass
class GuoReport:
    phi: float
    binding: tuple[int, int]  # (k, j)
    arrangement: ArrangementBijection
    feasible_at: float
    search_mode: str = "single"
    visited: int = 1
    upper_bound: bool = False
    terms: np.ndarray | None = field(default=None, repr=False)  # (n, m) real, -g_j(k)
    dominance_note: str | None = None
    verified: bool | None = None

    def to_json(self) -> dict:
        return {
            "phi": self.phi,
            "binding": list(self.binding),
            "arrangement": self.arrangement.to_json(),
            "feasible_at": self.feasible_at,
            "mode": self.search_mode,
            "visited": self.visited,
            "upper_bound": self.upper_bound,
            "dominance_note": self.dominance_note,
            "verified": self.verified,
        }


def _phi_value(entries, Minv, W, tol: float = PAIR_TOL):
    g = _perron_free_terms(entries, Minv, W)
    scale = max(1.0, float(np.abs(entries).max()))
    resid = float(np.abs(g.imag).max())
    if resid >= tol * scale:
        raise InvalidEigenMatrix("conjugate-columns", f"coefficients have imaginary residue {resid:.3g}")
    terms = -g.real
    j, k = np.unravel_index(int(np.argmax(terms)), terms.shape)
    return float(terms[j, k]), (int(k), int(j)), terms


def _kernels(n: int, m: int):
    Minv = m_inverse(n) if n > 1 else np.ones((1, 1))
    return Minv, dft_context(m).kernel(-1)


def phi(E: EigenMatrix) -> GuoReport:
    """Least Perron entry making every ``L_k`` nonnegative for this grid.

    The binding pair ``(k, j)`` names the coefficient ``a_j(k)`` that is
    exactly zero at the threshold.
    """
    E.validate(strict=False)
    value, binding, terms = _phi_value(E.entries, *_kernels(E.n, E.m))
    return GuoReport(value, binding, identity_arrangement(E), value, terms=terms,
                     dominance_note=_check_dominance(E, value))


@dataclass
class BlockConstruction:
    feasible: bool
    L: np.ndarray  # (n, m); row j = first row of generator block j
    min_entry: float
    violation_index: tuple[int, int]  # (k, j) of min_entry
    assembly: BlockAssembly | None = None

    @property
    def coefficient_family(self) -> np.ndarray:
        return expand_L(self.L)


def construct_block(E: EigenMatrix, strict: bool = True) -> BlockConstruction:
    """Build the nonnegative block X-like matrix realizing ``{E}``.

    When some ``L_k`` has a negative entry no assembly is produced and the
    most negative coefficient is reported instead.
    """
    E.validate(strict=strict)
    L = fast_L_product(E)
    rep = coefficient_nonnegativity(L[None, :, :])
    _, j, k = rep.index
    if not rep.nonnegative:
        return BlockConstruction(False, L, rep.min_value, (k, j))
    gen = clamp(L.real)
    return BlockConstruction(True, L, rep.min_value, (k, j), BlockAssembly.xlike(gen))


def _entry_classes(values, tol: float = PAIR_TOL):
    """Cluster values; return representatives (canonical order), counts, conjugate map."""
    reps: list[complex] = []
    counts: list[int] = []
    for z in canonical_order(values):
        for i, r in enumerate(reps):
            if abs(r.real - z.real) <= tol and abs(r.imag - z.imag) <= tol:
                counts[i] += 1
                break
        else:
            reps.append(complex(z))
            counts.append(1)
    conj = []
    for r in reps:
        partner = [i for i, s in enumerate(reps)
                   if abs(s.real - r.real) <= tol and abs(s.imag + r.imag) <= tol]
        if not partner:
            raise InvalidEigenMatrix("conjugate-closed", f"{r} has no conjugate partner")
        conj.append(partner[0])
    is_real = [abs(r.imag) < tol for r in reps]
    return reps, counts, conj, is_real


def _slot_units(n: int, m: int):
    units = [("real", (i, 0)) for i in range(1, n)]
    for l in range(1, (m - 1) // 2 + 1):
        units += [("pair", (i, l), (i, m - l)) for i in range(n)]
    if m % 2 == 0 and m > 1:
        units += [("real", (i, m // 2)) for i in range(n)]
    return units


def enumerate_admissible(E: EigenMatrix):
    """Yield every distinct admissible rearrangement of ``E`` in lexicographic
    class order: Perron entry fixed, real first column, conjugate column
    pairs (built as units), real middle column for even ``m``."""
    n, m = E.n, E.m
    others = np.delete(E.entries.ravel(), 0)
    reps, counts, conj, is_real = _entry_classes(others)
    units = _slot_units(n, m)
    real_units_after = [sum(u[0] == "real" for u in units[t:]) for t in range(len(units) + 1)]
    grid = np.zeros((n, m), dtype=complex)
    grid[0, 0] = E.entries[0, 0]
    real_classes = [c for c in range(len(reps)) if is_real[c]]

    def dfs(t):
        if t == len(units):
            yield grid.copy()
            return
        if sum(counts[c] for c in real_classes) < real_units_after[t]:
            return
        unit = units[t]
        if unit[0] == "real":
            for c in real_classes:
                if counts[c]:
                    counts[c] -= 1
                    grid[unit[1]] = reps[c]
                    yield from dfs(t + 1)
                    counts[c] += 1
        else:
            for c in range(len(reps)):
                cc = conj[c]
                need_same = cc == c
                if counts[c] < (2 if need_same else 1) or counts[cc] < 1:
                    continue
                counts[c] -= 1
                counts[cc] -= 1
                grid[unit[1]] = reps[c]
                grid[unit[2]] = reps[cc]
                yield from dfs(t + 1)
                counts[c] += 1
                counts[cc] += 1

    yield from dfs(0)


def generator_arrangements(E: EigenMatrix):
    """The named rearrangement families composed with row shuffles inside each
    column unit (first-column tail, conjugate column pair, middle column)."""
    n, m = E.n, E.m
    bases = []
    for swap in (False, True):
        for conj_mode in ("none", "global", "tail"):
            Ef = E.entries.copy()
            if swap and m > 1:
                Ef[:, [1, m - 1]] = Ef[:, [m - 1, 1]]
            if conj_mode == "global":
                Ef = Ef.conj()
            elif conj_mode == "tail":
                Ef[:, 1:] = Ef[:, 1:].conj()
            bases.append(Ef)

    groups: list[tuple[list[int], list[int]]] = [(list(range(1, n)), [0])]
    for l in range(1, (m - 1) // 2 + 1):
        groups.append((list(range(n)), [l, m - l]))
    if m % 2 == 0 and m > 1:
        groups.append((list(range(n)), [m // 2]))
    perm_lists = [list(itertools.permutations(rows)) for rows, _ in groups]

    seen = set()
    for base in bases:
        for choice in itertools.product(*perm_lists):
            Ef = base.copy()
            for (rows, cols), p in zip(groups, choice):
                for c in cols:
                    Ef[rows, c] = base[list(p), c]
            key = tuple(np.round(Ef.ravel(), 12).tolist())
            if key in seen:
                continue
            seen.add(key)
            yield Ef


def _provenance(E: EigenMatrix, Ef) -> str:
    named = {
        "identity": E.entries,
        "column-swap": column_swap_arrangement(E).apply(E).entries,
        "global-conjugation": E.entries.conj(),
        "tail-conjugation": tail_conjugation_arrangement(E).apply(E).entries,
    }
    for name, M in named.items():
        if np.allclose(M, Ef, atol=1e-12, rtol=0):
            return name
    return "general"


def guo_index_block(E: EigenMatrix, mode: str = "exhaustive", cap: int = DEFAULT_CAP,
                    verify: bool = True) -> GuoReport:
    """Minimum over admissible rearrangements of the Perron threshold.

    Exhaustive mode is exact unless ``cap`` stops it; generators mode only
    visits the named families and is always reported as an upper bound.
    The winning rearrangement is rebuilt at the threshold and its spectrum
    checked independently when ``verify`` is set.
    """
    E.validate(strict=False)
    if mode not in ("exhaustive", "generators"):
        raise ValueError(f"unknown mode {mode!r}")
    if cap < 1:
        raise ValueError("cap must be positive")
    n, m = E.n, E.m
    if mode == "exhaustive" and n * m - 1 > EXHAUSTIVE_MAX_SLOTS:
        raise ValueError(f"exhaustive search needs n*m - 1 <= {EXHAUSTIVE_MAX_SLOTS}, got {n * m - 1}")
    source = enumerate_admissible(E) if mode == "exhaustive" else generator_arrangements(E)

    Minv, W = _kernels(n, m)
    best = None
    visited = 0
    capped = False
    for Ef in source:
        if visited >= cap:
            capped = True
            break
        visited += 1
        value, binding, terms = _phi_value(Ef, Minv, W)
        if best is None or value < best[0] - 1e-12:
            best = (value, binding, terms, Ef)
    if best is None:
        raise InvalidEigenMatrix("conjugate-closed", "no admissible arrangement of the entries exists")

    value, binding, terms, Ef = best
    if m == 1 and n > 1:
        closed = guo_index_xlike(E.entries[1:, 0].real, cross_check=False)
        if not capped and mode == "exhaustive" and abs(closed - value) > 1e-9 * max(1.0, abs(closed)):
            raise AssertionError(f"search {value} disagrees with closed form {closed}")
    arrangement = arrangement_from_matrix(E, Ef, _provenance(E, Ef))
    witness = EigenMatrix(Ef)
    report = GuoReport(value, binding, arrangement, value, mode, visited,
                       upper_bound=capped or mode == "generators", terms=terms,
                       dominance_note=_check_dominance(witness, value))
    if report.dominance_note:
        warnings.warn(report.dominance_note, DominanceWarning, stacklevel=2)
    if verify:
        report.verified = verify_construction(witness.with_perron(value))
    return report


def verify_construction(E: EigenMatrix, tol: float = 1e-8) -> bool:
    """Build at the given Perron entry and check nonnegativity and spectrum."""
    res = construct_block(E, strict=False)
    if not res.feasible:
        return False
    A = res.assembly.materialize().real
    return bool(A.min() >= 0 and verify_spectrum(A, E.multiset(), tol).passed)


def threshold_by_bisection(E: EigenMatrix, tol: float = 1e-12) -> float:
    """Least Perron entry with a nonnegative assembly, found by bisection.

    Goes through the spectral family and the generic inverse DFT rather than
    the closed-form threshold terms.
    """
    others = np.delete(E.entries.ravel(), 0)
    hi = E.n * float(np.abs(others).sum()) + 1.0

    def feasible(v):
        S = build_spectral_family_from_E(E.with_perron(v))
        return is_nonnegative(assemble_from_spectral(S)).nonnegative

    return brute_force_threshold(feasible, -hi, hi, tol)
