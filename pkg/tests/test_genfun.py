from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from imtv.genfun import (LevelData, LevelError, Phi0Solution, bruteforce_interp_zcoeff,
                         bruteforce_star_zcoeff, bruteforce_X_zcoeff, bruteforce_zcoeff,
                         monomial_for, ode_residual, oracle_table, recurrence_residual,
                         residual_window, solve_phi0, uvw_bounds_for_weight, w_exponent,
                         weight_depth_height)
from imtv.index import Index
from imtv.rings import RPolynomial
from imtv.series import TruncatedSeriesZ

LEVELS = [(1, 1), (2, 1), (2, 2), (3, 2), (4, 3)]
levels = st.sampled_from(LEVELS)
admissible = st.lists(st.integers(1, 4), min_size=1, max_size=4).map(
    lambda p: Index((p[0] + 1,) + tuple(p[1:])))


def test_level_validation_message():
    with pytest.raises(LevelError, match="residue must satisfy 1 ≤ a ≤ N"):
        LevelData(2, 3)
    with pytest.raises(LevelError):
        LevelData(0, 1)


def test_monomial_mapping_roundtrip():
    for k in range(2, 9):
        for n in range(1, k):
            for s in range(1, n + 1):
                assert weight_depth_height(*monomial_for(k, n, s)) == (k, n, s)
    assert w_exponent(1) == 0


@pytest.fixture(scope="module")
def sol21():
    return solve_phi0((2, 1), 21, *uvw_bounds_for_weight(6))


def test_constant_terms(sol21):
    assert solve_phi0((1, 1), 3, 0, 0, 0).series[1][(0, 0, 0)] == 1
    assert [sol21.series[m][(0, 0, 0)] for m in (1, 3, 5)] == [1, Fraction(1, 9), Fraction(1, 25)]


def test_u_coefficient_matches_oracle(sol21):
    assert sol21.coefficient(3, 3, 1, 1) == bruteforce_X_zcoeff((2, 1), 3, 1, 1, 3)
    assert sol21.coefficient(3, 3, 1, 1) == Fraction(1, 27)


@pytest.mark.parametrize("level, k, m, expected", [
    ((2, 1), (2,), 5, Fraction(1, 25)),
    ((2, 1), (2, 1), 5, Fraction(4, 75)),
    ((2, 1), (2,), 4, Fraction(0)),
])
def test_bruteforce_zcoeff_examples(level, k, m, expected):
    assert bruteforce_zcoeff(level, k, m) == expected


def test_bruteforce_interp_examples():
    assert bruteforce_interp_zcoeff((2, 1), (2, 1), 3) == RPolynomial([Fraction(1, 9), Fraction(1, 27)])
    assert bruteforce_interp_zcoeff((2, 1), (5,), 1) == RPolynomial([1])


@given(levels, admissible, st.integers(0, 30))
def test_congruence_filter(level, k, m):
    N, a = level
    if m % N != a % N:
        assert bruteforce_interp_zcoeff(level, k, m).is_zero()


def test_bruteforce_X_examples():
    assert bruteforce_X_zcoeff((2, 1), 2, 1, 1, 3) == RPolynomial([Fraction(1, 9)])
    assert bruteforce_X_zcoeff((2, 1), 3, 2, 1, 3) == RPolynomial([Fraction(1, 9), Fraction(1, 27)])
    assert bruteforce_X_zcoeff((2, 1), 0, 0, 0, 0) == RPolynomial([1])


def test_oracle_cap():
    with pytest.raises(ValueError):
        bruteforce_zcoeff((1, 1), (2,), 61)
    assert bruteforce_zcoeff((1, 1), (2,), 70, m_max=80) == Fraction(1, 4900)


def _literal(level, parts, m, weak):
    N, a = level
    vals = [x for x in range(1, m + 1) if x % N == a % N]
    total = Fraction(0)
    for chain in product(vals, repeat=len(parts)):
        if chain[0] != m:
            continue
        pairs = zip(chain, chain[1:])
        if all((x >= y) if weak else (x > y) for x, y in pairs):
            term = Fraction(1)
            for x, k in zip(chain, parts):
                term /= x ** k
            total += term
    return total


@given(levels, admissible.filter(lambda k: k.depth <= 3), st.integers(1, 12))
def test_prefix_tables_match_literal_enumeration(level, k, m):
    assert bruteforce_zcoeff(level, k, m) == _literal(level, k.parts, m, weak=False)
    assert bruteforce_star_zcoeff(level, k, m) == _literal(level, k.parts, m, weak=True)


@given(levels, admissible, st.integers(0, 25))
def test_specialization_r0_r1(level, k, m):
    poly = bruteforce_interp_zcoeff(level, k, m)
    assert poly(0) == bruteforce_zcoeff(level, k, m)
    assert poly(1) == bruteforce_star_zcoeff(level, k, m)


@pytest.mark.parametrize("level", LEVELS)
def test_main_oracle_small_grid(level):
    sol = solve_phi0(level, 24, *uvw_bounds_for_weight(6))
    rows = oracle_table(sol, 6)
    assert rows and all(row["equal"] for row in rows), [r for r in rows if not r["equal"]][:3]


@pytest.mark.parametrize("level", LEVELS)
def test_structural_zeros_and_degree_bound(level):
    N, a = level
    sol = solve_phi0(level, 20, *uvw_bounds_for_weight(6))
    for m in range(21):
        coeff = sol.series[m]
        if m < a or m % N != a % N:
            assert coeff.is_zero()
        for (i, j, l), c in coeff.items():
            assert l % 2 == 0
            assert c.degree <= j + l // 2 + 1


@pytest.mark.parametrize("level, M", [((2, 1), 21), ((1, 1), 10), ((3, 2), 15)])
def test_ode_residual_vanishes(level, M):
    sol = solve_phi0(level, M, *uvw_bounds_for_weight(6))
    res = ode_residual(sol)
    assert all(res[m].is_zero() for m in range(residual_window(sol) + 1))


def test_ode_residual_of_zero_series():
    sol = solve_phi0((2, 1), 9, *uvw_bounds_for_weight(5))
    zero = Phi0Solution(sol.level, TruncatedSeriesZ.zero(9, sol.series.ring), sol.bounds)
    res = ode_residual(zero)
    assert not res[1].is_zero()
    assert res[1][(0, 0, 0)] == RPolynomial([-1])


def test_perturbed_recurrence_breaks_ode():
    sol = solve_phi0((2, 1), 11, *uvw_bounds_for_weight(5), _perturb=Fraction(1, 10 ** 6))
    res = ode_residual(sol)
    assert any(not res[m].is_zero() for m in range(residual_window(sol) + 1))


@pytest.mark.parametrize("k, n, s", [(3, 2, 1), (2, 2, 0), (4, 2, 1), (5, 3, 2), (4, 3, 0)])
def test_recurrence_residuals_vanish(k, n, s):
    for m in range(1, 16):
        res = recurrence_residual((2, 1), k, n, s, m)
        assert all(x is None or x.is_zero() for x in res)


def test_recurrence_negative_control():
    res = recurrence_residual((2, 1), 3, 2, 1, 3, _bump=True)
    assert not res.dX0.is_zero()


def test_recurrence_outside_regions():
    with pytest.raises(ValueError):
        recurrence_residual((2, 1), 2, 1, 0, 3)
