import numpy as np
import pytest
from hypothesis import given, strategies as st

from guoindex.spectra import (as_complex_list, as_real_list, canonical_order, is_conjugate_closed,
                              niep_diagnostics, suleimanova_check)

reals = st.floats(-50, 50, allow_nan=False)


def test_closure_example3_entries():
    vals = [2.5, 0.25j, 0, -0.25j, -1, 0.5 - 1j, 0, 0.5 + 1j]
    assert is_conjugate_closed(vals)


@pytest.mark.parametrize("vals, expected", [
    ([1, 1j], False),
    ([3, -2, 2], True),
    ([1 + 2j, 1 - 2j + 5e-10j], True),
    ([1 + 2j, 1 - 2j + 1e-6j], False),
    ([1e-10j], True),
])
def test_closure(vals, expected):
    assert is_conjugate_closed(vals) is expected


@given(st.lists(st.tuples(reals, reals), min_size=1, max_size=6), st.lists(reals, max_size=4), st.randoms())
def test_closure_of_built_lists(pairs, real_part, rnd):
    vals = [complex(a, b) for a, b in pairs] + [complex(a, -b) for a, b in pairs] + real_part
    rnd.shuffle(vals)
    assert is_conjugate_closed(vals)


@pytest.mark.parametrize("lam, expected", [
    ((2, -1, -1), True),
    ((23.9, -3, 0), True),
    ((5, 2, -3), False),
    ((1, -1, -1), False),
    ((0, 0), False),
])
def test_suleimanova(lam, expected):
    assert suleimanova_check(lam) is expected


@given(st.floats(0.01, 50), st.lists(st.floats(-10, 0), max_size=6), st.randoms())
def test_suleimanova_tail_permutation_invariant(lead, tail, rnd):
    shuffled = list(tail)
    rnd.shuffle(shuffled)
    assert suleimanova_check([lead, *tail]) == suleimanova_check([lead, *shuffled])


def test_diagnostics_trace_zero():
    rep = niep_diagnostics([3, -1, -1, -1], 3, 3)
    assert rep.passed
    assert rep.moments[1] == 0


def test_diagnostics_power_inequality_boundary():
    # s1 = 1, s2 = 3, s4 = 3: s1^2 = 1 <= 3 * 3, s2^2 = 9 <= 3 * 3
    rep = niep_diagnostics([1, 1, -1], 2, 2)
    assert rep.moments[1] == 1 and rep.moments[2] == 3 and rep.moments[4] == 3
    assert rep.moment_failures == [] and rep.negative_moments == []


def test_diagnostics_perron_not_in_list():
    assert not niep_diagnostics([-2, 1], 2, 2).perron_in_list


def test_diagnostics_flags_failures():
    rep = niep_diagnostics([1, 1j], 2, 2)
    assert not rep.conjugate_closed
    # s_1 = 1 + i real part 1, s_2 = 0; s_1^2 = 1 > 2 * 0
    assert (1, 2) in rep.moment_failures
    rep = niep_diagnostics([1, -3], 2, 2)
    assert 1 in rep.negative_moments and not rep.perron_in_list


def test_parsing():
    assert as_complex_list([1, [2, 3]]).tolist() == [1, 2 + 3j]
    with pytest.raises(ValueError):
        as_complex_list([float("nan")])
    with pytest.raises(ValueError):
        as_complex_list([[1, 2, 3]])
    with pytest.raises(ValueError):
        as_real_list([[1, 0.5]])
    assert as_real_list([[1, 1e-12], 2]).tolist() == [1, 2]


def test_canonical_order():
    assert canonical_order([1, 2 - 1j, 2 + 1j, -1]).tolist() == [2 + 1j, 2 - 1j, 1, -1]
