from fractions import Fraction

import pytest
from mpmath import mp, mpf

from imtv.numeric.bigreal import working_precision
from imtv.numeric.constants import const_pi_log2
from imtv.numeric.identities import (example_sides, height_one_lhs, height_one_rhs_coeffs,
                                     height_one_rhs_value, maxheight_lhs, maxheight_rhs,
                                     twos_lhs, twos_rhs, weighted_lhs, weighted_rhs,
                                     weighted_rhs_terms)
from imtv.numeric.tvalues import t_depth1


def agree(lhs, rhs, tol):
    with mp.workdps(60):
        return abs(lhs.value - rhs.value) <= mpf(tol) + lhs.err + rhs.err


def test_weighted_rhs_examples():
    _, log2 = const_pi_log2(30)
    with working_precision(30):
        t2 = t_depth1((2, 1), 2, 30)
        assert agree(weighted_rhs(3, 1, 30), t2 * log2 * 2, 1e-28)
        # digits frozen from 2 t(2) log 2
        assert mp.nstr(weighted_rhs(3, 1, 30).value, 9) == "1.71027212"
        assert agree(weighted_rhs(4, 1, 30), t2 * t2 * Fraction(2, 3) + t2 * log2 * log2 * 2, 1e-28)
        assert agree(weighted_rhs(2, 1, 30), t2, 1e-28)


def test_weighted_terms_use_ordered_compositions():
    # weight 6: compositions of 2 ... the (2,2) split appears once with 1/2!
    terms = weighted_rhs_terms(6, 1)
    parts = [p for _, n, p in terms if n == 0]
    assert (2, 2) in parts and (4,) in parts


@pytest.mark.parametrize("k, a, r", [(3, 1, 0), (4, 2, Fraction(1, 2)), (5, 1, 1)])
def test_weighted_sum(k, a, r):
    lhs, rhs = weighted_lhs(k, a, r, 30), weighted_rhs(k, a, 30)
    assert agree(lhs, rhs, 1e-25)


@pytest.mark.parametrize("k", [3, 4])
@pytest.mark.parametrize("star", [False, True])
def test_examples(k, star):
    assert agree(*example_sides(k, star, 30), 1e-25)


def test_example_nudge_breaks_identity():
    lhs, rhs = example_sides(3, False, 30, _nudge=Fraction(1, 10 ** 6))
    assert not agree(lhs, rhs, 1e-10)


def test_maxheight_series_low_order():
    s = maxheight_rhs((2, 1), Fraction(1, 2), 2, 4, 30)
    assert s[(0, 0, 0)].value == 1
    for r in (0, Fraction(1, 2), 1):
        s = maxheight_rhs((2, 1), r, 2, 4, 30)
        assert agree(s[(0, 0, 2)], t_depth1((2, 1), 2, 30), 1e-28)


@pytest.mark.parametrize("r", [0, Fraction(1, 2), 1])
def test_maxheight_coefficients(r):
    s = maxheight_rhs((2, 1), r, 4, 6, 30)
    for k in range(2, 7):
        for n in range(1, k // 2 + 1):
            assert agree(maxheight_lhs((2, 1), r, k, n, 30), s[(k - 2 * n, 0, 2 * n)], 1e-25)


@pytest.mark.parametrize("level", [(1, 1), (2, 1), (3, 2)])
def test_twos_series(level):
    for r in (0, Fraction(1, 3), 1):
        s = twos_rhs(level, r, 4, 30)
        for n in range(1, 5):
            assert agree(twos_lhs(level, r, n, 30), s[n], 1e-25)


def test_height_one_at_v0_is_depth_one():
    for m in (2, 3):
        v = height_one_rhs_value((2, 1), m, 0, 0, 30)
        assert agree(v, t_depth1((2, 1), m, 30), 1e-28)


def test_height_one_coefficients():
    coeffs = height_one_rhs_coeffs((2, 1), 2, Fraction(1, 2), 4, 40)
    for n in range(1, 5):
        assert agree(height_one_lhs((2, 1), 2, Fraction(1, 2), n, 30), coeffs[n - 1], 1e-10)


def test_examples_reject_other_weights():
    with pytest.raises(ValueError):
        example_sides(5, False)
