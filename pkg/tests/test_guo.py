import itertools
import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from guoindex.block import block_spectrum, coefficients_from_spectral, is_nonnegative
from guoindex.guo import (ArrangementBijection, EigenMatrix, InvalidEigenMatrix,
                          build_spectral_family_from_E, column_swap_arrangement, construct_block,
                          enumerate_admissible, ennss_check, expand_L, fast_L_product,
                          global_conjugation_arrangement, guo_index_block, identity_arrangement,
                          phi, tail_conjugation_arrangement, threshold_by_bisection)
from guoindex.oracle import multiset_distance, reference_eigenvalues, verify_spectrum
from guoindex.xlike import guo_index_xlike, per_x

from .conftest import random_valid_E
from . import oracles


def test_spectral_family_example4(ex4):
    S = build_spectral_family_from_E(ex4)
    assert np.allclose(S[0], per_x(np.array([1.5, 2.5])))
    assert np.allclose(S[1], per_x(np.array([-0.75, 1.75])))
    assert np.allclose(S[2], S[1])
    for l in range(3):
        assert np.allclose(S[l][0], oracles.m_solve(ex4.entries[:, l]))


def test_spectral_family_example1(ex1):
    S = build_spectral_family_from_E(ex1)
    assert np.allclose(S[0][0], [6.9667, 9.9667, 6.9667], atol=1e-4)
    assert np.allclose(S[2], S[1].conj())


def test_spectral_family_zero():
    assert np.allclose(build_spectral_family_from_E(EigenMatrix(np.zeros((3, 4)))), 0)


def test_fast_product_example1(ex1):
    L = fast_L_product(ex1)
    assert np.allclose(L[:, 0], [1.8778, 2.2111, 3.8778], atol=1e-3)
    assert np.allclose(L, oracles.coefficient_rows(ex1.entries), atol=1e-12)


def test_fast_product_example3(ex3):
    L = fast_L_product(ex3)
    assert np.allclose(L[:, 1], [0, 0.75], atol=1e-9)
    assert np.allclose(L[:, 3], [0.375, 0.125], atol=1e-9)
    # derived columns, not the printed ones
    assert np.allclose(L[:, 0], [0.3125, 0.3125], atol=1e-9)
    assert np.allclose(L[:, 2], [0.0625, 0.5625], atol=1e-9)
    assert np.allclose(L, oracles.coefficient_rows(ex3.entries), atol=1e-12)


def test_phi_example2(ex2):
    rep = phi(ex2)
    assert rep.phi == pytest.approx(14, abs=1e-9)
    assert rep.binding == (0, 1)
    assert oracles.threshold(ex2.entries) == pytest.approx(14, abs=1e-9)
    assert threshold_by_bisection(ex2) == pytest.approx(14, abs=1e-9)
    assert rep.terms[1, 0] == pytest.approx(rep.phi, abs=1e-12)


def test_phi_example3(ex3):
    assert phi(ex3).phi == pytest.approx(2.5, abs=1e-9)
    assert oracles.threshold(ex3.entries) == pytest.approx(2.5, abs=1e-9)
    bad = construct_block(ex3.with_perron(2.49))
    assert not bad.feasible
    assert bad.min_entry == pytest.approx(-0.0012, abs=1e-4)


def test_phi_example1(ex1):
    rep = phi(ex1)
    assert rep.phi == pytest.approx(10 + 8 * math.sqrt(3), abs=1e-9)
    assert oracles.threshold(ex1.entries) == pytest.approx(rep.phi, abs=1e-9)
    assert rep.binding == (1, 2)
    res = construct_block(ex1)
    assert res.min_entry == pytest.approx((23.9 - rep.phi) / 9, abs=1e-12)
    assert res.min_entry == pytest.approx(0.0048, abs=1e-4)


def test_phi_rejects_broken_pairing(ex3):
    E = ex3.entries.copy()
    E[0, 3] = 0.25j
    with pytest.raises(InvalidEigenMatrix):
        phi(EigenMatrix(E))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_fast_product_equals_family_path(n, m, seed):
    rng = np.random.default_rng(seed)
    E = random_valid_E(rng, n, m)
    E[0, 0] = rng.uniform(0, 40)
    E = EigenMatrix(E)
    via_S = coefficients_from_spectral(build_spectral_family_from_E(E))
    assert np.allclose(expand_L(fast_L_product(E)), via_S, atol=1e-10)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_threshold_exact_and_construction_correct(n, m, seed):
    rng = np.random.default_rng(seed)
    E = EigenMatrix(random_valid_E(rng, n, m))
    rep = phi(E)
    assert rep.phi == pytest.approx(oracles.threshold(E.entries), abs=1e-9)
    assert np.abs(np.imag(fast_L_product(E))).max() < 1e-9

    at = construct_block(E.with_perron(rep.phi), strict=False)
    assert at.feasible
    assert -1e-12 <= at.min_entry <= 1e-9

    # above threshold the construction realizes {E}
    value = max(rep.phi, 0.0) + rng.uniform(0, 3)
    Ev = E.with_perron(value)
    res = construct_block(Ev, strict=False)
    assert res.feasible
    A = res.assembly.materialize().real
    assert A.min() >= 0
    assert verify_spectrum(A, Ev.multiset(), 1e-8).passed
    assert np.allclose(A.sum(axis=1), value, atol=1e-8)
    assert max(abs(reference_eigenvalues(A))) == pytest.approx(value, abs=1e-8)
    assert rep.dominance_note is None or value > rep.phi


def test_construct_example4(ex4):
    res = construct_block(ex4)
    assert res.feasible
    assert np.allclose(res.assembly.rows[0, 0], [0, 0.75, 0.75], atol=1e-12)
    assert np.allclose(res.assembly.rows[0, 1], [2, 0.25, 0.25], atol=1e-12)
    assert multiset_distance(block_spectrum(res.assembly), [4, 1, 1, -1, -2.5, -2.5]) < 1e-12


def test_construct_example1(ex1):
    res = construct_block(ex1)
    A = res.assembly
    assert np.allclose(A.rows[0, 0], [1.8778, 1.5822, 3.5067], atol=1e-3)
    assert A.rows[1].tolist() == [A.rows[0, 1].tolist(), A.rows[0, 0].tolist(), A.rows[0, 2].tolist()]
    assert verify_spectrum(A.materialize().real, ex1.multiset(), 1e-8).passed


def test_construct_validation():
    with pytest.raises(InvalidEigenMatrix, match="perron-dominant"):
        construct_block(EigenMatrix([[1, 5], [0, 0]]))
    with pytest.raises(InvalidEigenMatrix, match="first-column-real"):
        construct_block(EigenMatrix([[5, 0], [1j, 0]]))
    with pytest.raises(InvalidEigenMatrix, match="perron-positive"):
        construct_block(EigenMatrix([[0, 0], [0, 0]]))
    with pytest.raises(InvalidEigenMatrix, match="nonnegative-sum"):
        construct_block(EigenMatrix([[3, -3], [-3, 2]]))
    with pytest.raises(InvalidEigenMatrix, match="conjugate-columns"):
        construct_block(EigenMatrix([[9, 1j, 1j], [0, 0, 0]]))


def test_named_arrangements(ex1, ex2, ex3):
    for E in (ex1, ex2, ex3):
        assert ennss_check(E, identity_arrangement(E))
        assert ennss_check(E, global_conjugation_arrangement(E))
        assert ennss_check(E, tail_conjugation_arrangement(E))
    f = column_swap_arrangement(ex3)
    assert ennss_check(ex3, f)
    assert np.allclose(f.apply(ex3).entries[:, 1], ex3.entries[:, 3])


def test_ennss_rejections(ex3, ex2):
    # complex entry moved into the first column
    slots = list(range(8))
    slots[4], slots[5] = slots[5], slots[4]
    assert not ennss_check(ex3, ArrangementBijection(tuple(slots)))
    # Perron entry moved
    slots = list(range(8))
    slots[0], slots[1] = slots[1], slots[0]
    assert not ennss_check(ex2, ArrangementBijection(tuple(slots)))
    # not a bijection
    assert not ennss_check(ex2, ArrangementBijection((0,) * 8))


def brute_force_admissible(E):
    """All distinct rearrangements passing the structural checks, by trying
    every permutation of the non-Perron slots."""
    n, m = E.n, E.m
    flat = E.entries.ravel()
    seen = {}
    for perm in itertools.permutations(range(1, flat.size)):
        grid = np.concatenate([[flat[0]], flat[list(perm)]]).reshape(n, m)
        if np.any(np.abs(grid[:, 0].imag) > 1e-12):
            continue
        if any(np.abs(grid[:, (m - l) % m] - grid[:, l].conj()).max() > 1e-12 for l in range(1, m // 2 + 1)):
            continue
        seen.setdefault(tuple(np.round(grid.ravel(), 12)), grid)
    return list(seen.values())


@pytest.mark.parametrize("fixture", ["ex2", "ex4"])
def test_exhaustive_enumeration_complete(fixture, request):
    E = request.getfixturevalue(fixture)
    brute = brute_force_admissible(E)
    ours = list(enumerate_admissible(E))
    assert len(ours) == len(brute)
    keys = {tuple(np.round(g.ravel(), 12)) for g in ours}
    assert keys == {tuple(np.round(g.ravel(), 12)) for g in brute}
    best = min(phi(EigenMatrix(g)).phi for g in brute)
    assert guo_index_block(E).phi == pytest.approx(best, abs=1e-12)


def test_exhaustive_enumeration_complex():
    E = EigenMatrix([[9, 1 + 1j, 1 - 1j], [-1, 2j, -2j], [0, -1, -1]])
    brute = brute_force_admissible(E)
    assert len(list(enumerate_admissible(E))) == len(brute)


def test_guo_block_example4(ex4):
    rep = guo_index_block(ex4, "exhaustive")
    assert rep.phi == pytest.approx(4, abs=1e-12)
    assert not rep.upper_bound and rep.verified
    assert rep.binding == (0, 0)


def test_guo_block_example2(ex2):
    rep = guo_index_block(ex2, "exhaustive")
    assert rep.phi <= 14
    assert phi(ex2).phi == pytest.approx(14)
    witness = rep.arrangement.apply(ex2)
    assert ennss_check(ex2.with_perron(14), rep.arrangement)
    assert oracles.threshold(witness.entries) == pytest.approx(rep.phi, abs=1e-9)
    assert rep.verified


def test_guo_block_single_column():
    E = EigenMatrix([[1], [5], [6], [7], [8]])
    assert guo_index_block(E).phi == pytest.approx(guo_index_xlike([5, 6, 7, 8]))


def test_aggregate_invariance(ex2):
    total = ex2.entries.sum()
    k0 = phi(ex2).terms[0, 0]
    for grid in enumerate_admissible(ex2):
        assert grid.sum() == pytest.approx(total, abs=1e-12)
        assert phi(EigenMatrix(grid)).terms[0, 0] == pytest.approx(k0, abs=1e-12)


def test_generators_and_cap(ex2, ex3):
    exact = guo_index_block(ex3, "exhaustive")
    gen = guo_index_block(ex3, "generators")
    assert gen.upper_bound and gen.phi >= exact.phi - 1e-12
    capped = guo_index_block(ex2, "exhaustive", cap=1)
    assert capped.upper_bound and capped.visited == 1
    assert capped.phi >= guo_index_block(ex2).phi - 1e-12
    with pytest.raises(ValueError):
        guo_index_block(EigenMatrix(np.zeros((3, 4))), "exhaustive")
    with pytest.raises(ValueError):
        guo_index_block(ex2, "random")


def test_no_dominance_warning_at_index(ex2, ex3, ex4):
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        for E in (ex2, ex3, ex4):
            assert guo_index_block(E).dominance_note is None
