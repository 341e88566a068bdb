import logging
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st
from mpmath import hyp3f2, mp, mpf, pi as mp_pi, zeta

from imtv.numeric.bigreal import BigReal, working_precision
from imtv.numeric.cache import CACHE_ENV, ValueCache, cache_key
from imtv.numeric.constants import const_pi_log2
from imtv.numeric.hypergeom import DivergentSeries, PFQParams, pfq_at_1, pfq_terms_exact
from imtv.numeric.tails import power_tail
from imtv.numeric.tvalues import (NotAdmissible, ToleranceUnreachable, t_depth1, t_interp_eval,
                                  t_nested, t_partial_sum, t_star)

LEVELS = [(1, 1), (2, 1), (2, 2), (3, 2), (4, 3)]


def close(x, y, tol):
    with mp.workdps(60):
        return abs(mpf(x) - mpf(y)) < tol


# -- constants ------------------------------------------------------------------

def _pi_euler(terms=90):
    # pi/2 = sum n! / (2n+1)!!
    total, term = Fraction(0), Fraction(1)
    for n in range(terms):
        total += term
        term = term * (n + 1) / (2 * n + 3)
    return 2 * total


def _log2_series(terms=90):
    return sum(Fraction(1, k * 2 ** k) for k in range(1, terms))


def test_constants_against_independent_series():
    pi, log2 = const_pi_log2(20)
    with mp.workdps(40):
        ref_pi = mpf(_pi_euler().numerator) / _pi_euler().denominator
        ref_log2 = mpf(_log2_series().numerator) / _log2_series().denominator
        assert abs(pi.value - ref_pi) < mpf(10) ** -20 and pi.err < mpf(10) ** -20
        assert abs(log2.value - ref_log2) < mpf(10) ** -20 and log2.err < mpf(10) ** -20
    assert mp.nstr(pi.value, 21) == "3.14159265358979323846"
    assert mp.nstr(log2.value, 20) == "0.69314718055994530942"


def test_constants_reject_low_precision():
    with pytest.raises(ValueError):
        const_pi_log2(5)


# -- depth one --------------------------------------------------------------------

def test_depth_one_examples():
    pi, _ = const_pi_log2(30)
    with working_precision(30):
        assert close(t_depth1((1, 1), 2, 30).value, pi.value ** 2 / 6, 1e-29)
        t2 = t_depth1((2, 1), 2, 30)
        assert close(t2.value, pi.value ** 2 / 8, 1e-29)
        assert mp.nstr(t2.value, 20) == "1.2337005501361698274"
        assert mp.nstr(t_depth1((2, 1), 3, 30).value, 21) == "1.05179979026464499972"


@given(st.sampled_from(LEVELS), st.integers(2, 9))
def test_depth_one_against_hurwitz_zeta(level, k):
    N, a = level
    v = t_depth1(level, k, 30)
    with mp.workdps(50):
        ref = mpf(N) ** -k * zeta(k, mpf(a) / N)
        assert abs(v.value - ref) <= v.err + mpf(10) ** -30
        assert v.err < mpf(10) ** -30


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_depth_one_reductions(k):
    with working_precision(30):
        z = t_depth1((1, 1), k, 30)
        assert close(t_depth1((2, 1), k, 30).value, z.value * (1 - mpf(2) ** -k), 1e-25)
        assert close(t_depth1((3, 3), k, 30).value, z.value * mpf(3) ** -k, 1e-25)


def test_depth_one_rejects_divergent():
    with pytest.raises(NotAdmissible):
        t_depth1((2, 1), 1)


def test_power_tail_refuses_too_early_start():
    with working_precision(30), pytest.raises(ArithmeticError):
        power_tail(2, 5)


@given(st.integers(2, 6), st.integers(30, 100), st.integers(0, 5), st.integers(1, 3))
def test_power_tail_against_hurwitz(s, blocks, offset, step):
    start = blocks * step + offset
    with working_precision(30):
        v = power_tail(s, start, step)
        ref = mpf(step) ** -s * zeta(s, mpf(start) / step)
        assert abs(v.value - ref) <= v.err + mpf(10) ** -35


# -- nested values ------------------------------------------------------------------

def test_t21_from_weight_three_identity():
    _, log2 = const_pi_log2(30)
    with working_precision(30):
        t21 = t_nested((2, 1), (2, 1), 30)
        ref = t_depth1((2, 1), 2, 30).value * log2.value - t_depth1((2, 1), 3, 30).value / 2
        assert close(t21.value, ref, 1e-28)
        # frozen from the identity above (t(2) log 2 - t(3)/2)
        assert mp.nstr(t21.value, 7) == "0.3292362"


def test_classical_nested_values():
    with working_precision(30):
        z3 = t_depth1((1, 1), 3, 30).value
        z21 = t_nested((1, 1), (2, 1), 30)
        assert close(z21.value, z3, 1e-28)
        assert close(t_nested((3, 3), (2, 1), 30).value, z21.value / 27, 1e-28)
        assert close(t_nested((1, 1), (3, 1), 30).value, mp_pi ** 4 / 360, 1e-28)
        assert close(t_nested((1, 1), (2, 2), 30).value, mp_pi ** 4 / 120, 1e-28)
        assert close(t_nested((2, 1), (2, 2), 30).value, mp_pi ** 4 / 384, 1e-28)
        assert close(t_nested((1, 1), (2, 1, 1, 1, 1, 1), 30).value, zeta(7), 1e-28)
        assert close(t_star((1, 1), (2, 1), 30).value, 2 * z3, 1e-28)


def test_interpolated_values():
    with working_precision(30):
        t21 = t_nested((2, 1), (2, 1), 30).value
        t3 = t_depth1((2, 1), 3, 30).value
        assert t_interp_eval((2, 1), (2, 1), 0, 30).value == t21
        assert close(t_interp_eval((2, 1), (2, 1), 1, 30).value, t21 + t3, 1e-28)
        assert close(t_interp_eval((2, 1), (2, 1), Fraction(1, 2), 30).value, t21 + t3 / 2, 1e-28)
        assert t_interp_eval((2, 1), (), 0).value == 1


@settings(max_examples=20)
@given(st.sampled_from(LEVELS),
       st.lists(st.integers(1, 3), min_size=1, max_size=3).map(lambda p: (p[0] + 1,) + tuple(p[1:])))
def test_star_matches_weak_sum_and_expansion(level, k):
    with working_precision(25):
        star = t_star(level, k, 25)
        via_r = t_interp_eval(level, k, 1, 25)
        assert abs(star.value - via_r.value) <= star.err + via_r.err
        # raw partial sums approach from below and stay under the limit
        raw = t_partial_sum(level, k, 400, star=True)
        assert raw < star.value + star.err


@settings(max_examples=15)
@given(st.sampled_from(LEVELS),
       st.lists(st.integers(1, 3), min_size=1, max_size=4).map(lambda p: (p[0] + 1,) + tuple(p[1:])),
       st.booleans())
def test_error_bound_soundness(level, k, star):
    lo = t_nested(level, k, 20, star=star, cache=False)
    hi = t_nested(level, k, 30, star=star, cutoff=2 * 95, cache=False)
    with mp.workdps(50):
        assert abs(lo.value - hi.value) <= lo.err + hi.err


def test_not_admissible():
    with pytest.raises(NotAdmissible):
        t_nested((2, 1), (1, 2))


def test_tolerance_unreachable():
    with pytest.raises(ToleranceUnreachable):
        t_nested((2, 1), (2, 1), 20, tol=1e-60)


# -- hypergeometric ----------------------------------------------------------------------

def test_pfq_terminates_with_zero_parameter():
    v = pfq_at_1(PFQParams([0, Fraction(1, 2), 1], [2, 3]), 30)
    assert v.value == 1


def test_pfq_height_one_at_origin_is_t2():
    pi, _ = const_pi_log2(30)
    h = Fraction(1, 2)
    v = pfq_at_1(PFQParams([h, h, 1], [Fraction(3, 2), Fraction(3, 2)]), 30)
    with mp.workdps(50):
        assert abs(v.value - pi.value ** 2 / 8) <= v.err + pi.err * 2


def test_pfq_gamma_identity_and_mpmath():
    from mpmath import gamma
    with working_precision(30):
        a, b, c = mpf("0.3"), mpf("0.4"), mpf("1.7")
        v = pfq_at_1(PFQParams([a, b, 1], [c, 2 + a + b - c]), 30)
        ref = (1 + a + b - c) / ((1 + a - c) * (1 + b - c)) * (
            1 - c + gamma(c) * gamma(1 + a + b - c) / (gamma(a) * gamma(b)))
        assert abs(v.value - ref) < mpf(10) ** -15
        assert abs(v.value - hyp3f2(a, b, 1, c, 2 + a + b - c, 1)) <= v.err + mpf(10) ** -28


@given(st.lists(st.fractions(Fraction(1, 5), 3, max_denominator=6), min_size=5, max_size=5))
def test_pfq_exact_term_ratio(ps):
    params = PFQParams(ps[:3], ps[3:])
    terms = pfq_terms_exact(params, 50)
    for n in range(50):
        num = Fraction(1)
        for b in params.b:
            num *= b + n
        den = Fraction(n + 1)
        for c in params.c:
            den *= c + n
        assert terms[n + 1] == terms[n] * num / den


def test_pfq_validation():
    with pytest.raises(DivergentSeries):
        pfq_at_1(PFQParams([1, 1, 1], [1, 2]))
    with pytest.raises(ValueError):
        PFQParams([1, 1], [-2])
    with pytest.raises(ValueError):
        PFQParams([1], [1])


# -- BigReal and cache ------------------------------------------------------------------------

@given(st.lists(st.fractions(-10, 10, max_denominator=9).filter(bool), min_size=3, max_size=3))
def test_bigreal_encloses_exact_arithmetic(xs):
    a, b, c = xs
    exact = (a * b + c) / (a - Fraction(1, 7)) - c ** 3
    with working_precision(20):
        got = (BigReal(a) * b + c) / (BigReal(a) - Fraction(1, 7)) - BigReal(c) ** 3
        with mp.workdps(60):
            assert got.contains(mpf(exact.numerator) / exact.denominator)


def test_cache_roundtrip_and_corrupt_lines(tmp_path, caplog):
    cache = ValueCache(tmp_path)
    key = cache_key(2, 1, "2,1", 30, None)
    assert key == "2:1:2,1:30:none"
    v = t_nested((2, 1), (2, 1), 30, cache=cache)
    with open(tmp_path / "values.txt", "a") as fh:
        fh.write("garbage line\n2:1:3:30:none notanumber 1e-5\n")
    with caplog.at_level(logging.WARNING):
        reloaded = ValueCache(tmp_path)
    assert reloaded.skipped == 2 and "corrupt" in caplog.text
    hit = reloaded.get(key)
    with mp.workdps(60):
        assert abs(hit.value - v.value) <= v.err
    assert reloaded.clear() == 1 and len(ValueCache(tmp_path)) == 0


def test_cache_env_directory(tmp_path, monkeypatch):
    from imtv.numeric import cache as cache_mod
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    cache_mod.set_default_cache(None)
    assert cache_mod.default_cache().path == tmp_path / "values.txt"
