"""Static check catalogue, the harness that runs it, and JSON reports.

Exact checks compare QQ[r] coefficients for equality.  Numeric checks pass
when ``|lhs - rhs| <= tol + err`` with ``err`` the propagated error of both
sides; a case whose error bound already exceeds ``tol`` cannot be decided
and marks the check skipped.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from mpmath import gamma, mp, mpf

from .. import __version__
from ..genfun import (LevelData, bruteforce_interp_zcoeff, bruteforce_star_zcoeff,
                      bruteforce_zcoeff, in_region_dX0, in_region_dXX0, ode_residual,
                      oracle_table, recurrence_residual, residual_window, solve_phi0,
                      uvw_bounds_for_weight)
from ..index import Index, format_index
from ..numeric.bigreal import BigReal, working_precision
from ..numeric.hypergeom import PFQParams, pfq_at_1
from ..numeric.identities import (example_sides, height_one_lhs, height_one_rhs_coeffs,
                                  maxheight_lhs, maxheight_rhs, twos_lhs, twos_rhs,
                                  weighted_lhs, weighted_rhs)
from ..numeric.tvalues import _default_cutoff, t_depth1, t_nested

SCHEMA = "imtv.report/1"
CATALOGUE_VERSION = 1
UNDECIDABLE = "tolerance below achievable error bound"
MAX_LISTED = 20

ALL_LEVELS = [[1, 1], [2, 1], [2, 2], [3, 2], [4, 3]]


class UnknownCheck(KeyError):
    pass


class InvalidParams(ValueError):
    pass


@dataclass
class Case:
    desc: str
    lhs: str
    rhs: str
    ok: bool
    delta: str | None = None
    coeff_diff: str | None = None
    undecided: bool = False

    def to_json(self) -> dict:
        out = {"desc": self.desc, "lhs": self.lhs, "rhs": self.rhs}
        if self.delta is not None:
            out["delta"] = self.delta
        if self.coeff_diff is not None:
            out["coeff_diff"] = self.coeff_diff
        out["ok"] = self.ok
        return out


@dataclass
class Report:
    id: str
    kind: str
    params: dict
    status: str
    cases: list[Case] = field(default_factory=list)
    ms: int = 0
    tool_version: str = __version__
    reason: str | None = None

    @property
    def counterexamples(self) -> list[Case]:
        return [c for c in self.cases if not c.ok and not c.undecided]

    def to_json(self, with_time: bool = True) -> dict:
        out = {"id": self.id, "kind": self.kind, "params": self.params, "status": self.status}
        if self.reason is not None:
            out["reason"] = self.reason
        out["cases"] = [c.to_json() for c in self.cases]
        if with_time:
            out["ms"] = self.ms
        return out


@dataclass(frozen=True)
class CheckInfo:
    id: str
    kind: str
    statement: str
    defaults: dict
    runner: Callable[[dict], list[Case]]


@dataclass
class CheckSpec:
    id: str
    params: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.id not in REGISTRY:
            raise UnknownCheck(f"unknown check id {self.id!r}; known: {', '.join(REGISTRY)}")
        info = REGISTRY[self.id]
        unknown = sorted(k for k in self.params if k not in info.defaults and not k.startswith("_"))
        if unknown:
            raise InvalidParams(f"check {self.id!r} has no parameter(s) {', '.join(unknown)}")
        self.params = {**info.defaults, **self.params}
        _validate(self.params)

    @property
    def kind(self) -> str:
        return REGISTRY[self.id].kind

    def public_params(self) -> dict:
        return {k: v for k, v in self.params.items() if not k.startswith("_")}


def _validate(params: dict) -> None:
    for key in ("levels", "level"):
        if key in params:
            levels = params[key] if key == "levels" else [params[key]]
            for lv in levels:
                LevelData(*lv)
    for key in ("r_values",):
        for r in params.get(key, []):
            Fraction(r)
    if "P" in params and (int(params["P"]) != params["P"] or params["P"] < 10):
        raise InvalidParams("precision P must be an integer ≥ 10")
    if "tol" in params and not float(params["tol"]) > 0:
        raise InvalidParams("tolerance must be positive")


# -- helpers -------------------------------------------------------------------

def _fmt(x, digits: int = 25) -> str:
    return mp.nstr(x, digits)


def _numeric_case(desc: str, lhs: BigReal, rhs: BigReal, tol, *, relative: bool = False,
                  digits: int = 25) -> Case:
    with mp.workdps(max(mp.dps, digits + 10)):
        delta = abs(lhs.value - rhs.value)
        err = lhs.err + rhs.err
        bound = mpf(tol) * (abs(rhs.value) if relative else 1)
        ok = delta <= bound + err
        return Case(desc, _fmt(lhs.value, digits), _fmt(rhs.value, digits), ok,
                    delta=_fmt(delta, 5), undecided=ok and err > bound)


def _exact_summary(desc: str, compared: int, bad: list[Case], unit: str = "coefficients") -> list[Case]:
    summary = Case(desc, f"{compared} {unit}", "oracle", not bad,
                   coeff_diff=f"{len(bad)} mismatched")
    return [summary] + bad[:MAX_LISTED]


def _level_str(lv) -> str:
    return f"({lv[0]},{lv[1]})"


def _rs(params) -> list[Fraction]:
    return [Fraction(r) for r in params["r_values"]]


def _precheck(params: dict) -> str | None:
    """Reason to skip before computing anything, or None."""
    if "tol" in params and "P" in params:
        if float(params["tol"]) < 10.0 ** (-params["P"]):
            return UNDECIDABLE
    return None


# -- exact checks ----------------------------------------------------------------

def _thm_main(params: dict) -> list[Case]:
    cases = []
    bounds = uvw_bounds_for_weight(params["max_weight"])
    for lv in params["levels"]:
        sol = solve_phi0(lv, params["M"], *bounds, _perturb=params.get("_perturb"))
        rows = oracle_table(sol, params["max_weight"], as_text=False, _drop=params.get("_drop"))
        bad = [Case(f"level {_level_str(lv)} z^{row['m']} (k,n,s)=({row['k']},{row['n']},{row['s']})",
                    str(row["lhs"]), str(row["rhs"]), False,
                    coeff_diff=str(row["lhs"] - row["rhs"]))
               for row in rows if not row["equal"]]
        cases += _exact_summary(f"level {_level_str(lv)}: Phi_0 coefficients through z^{params['M']}, "
                                f"weight ≤ {params['max_weight']}", len(rows), bad)
    return cases


def _ode(params: dict) -> list[Case]:
    cases = []
    bounds = uvw_bounds_for_weight(params["max_weight"])
    for lv in params["levels"]:
        sol = solve_phi0(lv, params["M"], *bounds, _perturb=params.get("_perturb"))
        res = ode_residual(sol)
        window = residual_window(sol)
        bad, compared = [], 0
        for m in range(window + 1):
            for mono, c in res[m].items():
                bad.append(Case(f"level {_level_str(lv)} z^{m} {mono}", str(c), "0", False,
                                coeff_diff=str(c)))
            compared += 1
        cases += _exact_summary(f"level {_level_str(lv)}: ODE residual through z^{window}",
                                compared, bad, "z-orders")
    return cases


def _recurrences(params: dict) -> list[Case]:
    cases = []
    K, m_max = params["max_weight"], params["m_max"]
    for lv in params["levels"]:
        bad, compared = [], 0
        for k in range(K + 1):
            for n in range(k + 1):
                for s in range(n + 1):
                    if not (in_region_dX0(k, n, s) or in_region_dXX0(k, n, s)):
                        continue
                    for m in range(1, m_max + 1):
                        res = recurrence_residual(lv, k, n, s, m, max(m_max, 60),
                                                  _bump=params.get("_bump", False))
                        for name, val in (("dX0", res.dX0), ("dXX0", res.dXX0)):
                            if val is None:
                                continue
                            compared += 1
                            if not val.is_zero():
                                bad.append(Case(f"level {_level_str(lv)} {name} (k,n,s)=({k},{n},{s}) m={m}",
                                                str(val), "0", False, coeff_diff=str(val)))
        cases += _exact_summary(f"level {_level_str(lv)}: derivative relations, weight ≤ {K}, "
                                f"m ≤ {m_max}", compared, bad, "relations")
    return cases


def random_indices(count: int, seed: int, max_weight: int) -> list[Index]:
    """Reproducible admissible indices with weight in [2, max_weight]."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        k = rng.randint(2, max_weight)
        first = rng.randint(2, k)
        rest, left = [], k - first
        while left:
            part = rng.randint(1, left)
            rest.append(part)
            left -= part
        out.append(Index((first, *rest)))
    return out


def _specialization(params: dict) -> list[Case]:
    cases = []
    levels = params["levels"]
    m_max = params["m_max"]
    for pos, idx in enumerate(random_indices(params["count"], params["seed"], params["max_weight"])):
        lv = levels[pos % len(levels)]
        bad = []
        for m in range(m_max + 1):
            poly = bruteforce_interp_zcoeff(lv, idx, m, m_max)
            strict = bruteforce_zcoeff(lv, idx, m, m_max)
            star = bruteforce_star_zcoeff(lv, idx, m, m_max)
            for r, want in ((0, strict), (1, star)):
                got = poly(r)
                if got != want:
                    bad.append(Case(f"level {_level_str(lv)} index {format_index(idx)} z^{m} r={r}",
                                    str(got), str(want), False, coeff_diff=str(got - want)))
        ok = not bad
        cases.append(Case(f"level {_level_str(lv)} index {format_index(idx)}: r=0 strict, r=1 star, "
                          f"z^0..z^{m_max}", "specialized interpolation", "direct sums", ok,
                          coeff_diff=f"{len(bad)} mismatched"))
        cases += bad[:3]
    return cases


# -- numeric checks -----------------------------------------------------------------

def _example(k: int):
    def run(params: dict) -> list[Case]:
        P, tol, a = params["P"], params["tol"], params["a"]
        cases = []
        for star in (False, True):
            lhs, rhs = example_sides(k, star, P, a=a, _nudge=params.get("_nudge"))
            label = "star" if star else "strict"
            cases.append(_numeric_case(f"weight {k}, {label} values, level ({2 * a},{a})",
                                       lhs, rhs, tol))
        return cases
    return run


def _weighted(params: dict) -> list[Case]:
    P, tol = params["P"], params["tol"]
    cases = []
    for k in params["ks"]:
        for a in params["as"]:
            rhs = weighted_rhs(k, a, P, _nudge=params.get("_nudge"))
            for r in _rs(params):
                lhs = weighted_lhs(k, a, r, P)
                cases.append(_numeric_case(f"k={k} a={a} r={r}", lhs, rhs, tol, relative=True))
    return cases


def _max_height(params: dict) -> list[Case]:
    P, tol, K = params["P"], params["tol"], params["max_weight"]
    lv = params["level"]
    cases = []
    for r in _rs(params):
        series = maxheight_rhs(lv, r, K - 2, 2 * (K // 2), P, _nudge=params.get("_nudge"))
        for k in range(2, K + 1):
            for n in range(1, k // 2 + 1):
                lhs = maxheight_lhs(lv, r, k, n, P)
                rhs = series[(k - 2 * n, 0, 2 * n)]
                cases.append(_numeric_case(f"level {_level_str(lv)} r={r} u^{k - 2 * n} w^{2 * n}",
                                           lhs, rhs, tol))
    return cases


def _twos(params: dict) -> list[Case]:
    P, tol, n_max = params["P"], params["tol"], params["n_max"]
    cases = []
    for lv in params["levels"]:
        for r in _rs(params):
            series = twos_rhs(lv, r, n_max, P)
            for n in range(1, n_max + 1):
                cases.append(_numeric_case(f"level {_level_str(lv)} r={r} {{2}}^{n}",
                                           twos_lhs(lv, r, n, P), series[n], tol))
    return cases


def _height_one(params: dict) -> list[Case]:
    P, tol, n_max = params["P"], params["tol"], params["n_max"]
    lv = params["level"]
    cases = []
    for m in params["ms"]:
        for r in _rs(params):
            coeffs = height_one_rhs_coeffs(lv, m, r, n_max, P + 10)
            for n in range(1, n_max + 1):
                lhs = height_one_lhs(lv, m, r, n, P)
                cases.append(_numeric_case(f"level {_level_str(lv)} m={m} r={r} v^{n - 1}",
                                           lhs, coeffs[n - 1], tol))
    return cases


def _reductions(params: dict) -> list[Case]:
    P, tol = params["P"], params["tol"]
    cases = []
    with working_precision(P):
        for k in params["ks"]:
            # zeta(k) from the nested-sum engine, checked against the depth-one summation
            zeta = t_nested((1, 1), (k,), P, cache=False)
            cases.append(_numeric_case(f"t_(1,1)({k}) = zeta({k})", t_depth1((1, 1), k, P), zeta, tol))
            cases.append(_numeric_case(f"t_(2,1)({k}) = (1 - 2^-{k}) zeta({k})",
                                       t_depth1((2, 1), k, P), zeta * (1 - Fraction(1, 2 ** k)), tol))
            N = params["N"]
            cases.append(_numeric_case(f"t_({N},{N})({k}) = {N}^-{k} zeta({k})",
                                       t_depth1((N, N), k, P), zeta * Fraction(1, N ** k), tol))
    return cases


def _pfq_spot(params: dict) -> list[Case]:
    P, tol = params["P"], params["tol"]
    cases = []
    with working_precision(P):
        a, b, c = (mpf(Fraction(x).numerator) / Fraction(x).denominator for x in params["abc"])
        exact = (1 + a + b - c) / ((1 + a - c) * (1 + b - c)) * (
            1 - c + gamma(c) * gamma(1 + a + b - c) / (gamma(a) * gamma(b)))
        got = pfq_at_1(PFQParams([a, b, 1], [c, 2 + a + b - c]), P)
        cases.append(_numeric_case(f"3F2(a,b,1;c,2+a+b-c;1) at {tuple(params['abc'])} vs gamma quotient",
                                   got, BigReal(exact, abs(exact) * mpf(10) ** (2 - mp.dps)), tol))
        a, b, c = (mpf(Fraction(x).numerator) / Fraction(x).denominator for x in params["dixon"])
        exact = (gamma(1 + a / 2) * gamma(1 + a - b) * gamma(1 + a - c) * gamma(1 + a / 2 - b - c)
                 / (gamma(1 + a) * gamma(1 + a / 2 - b) * gamma(1 + a / 2 - c) * gamma(1 + a - b - c)))
        got = pfq_at_1(PFQParams([a, b, c], [1 + a - b, 1 + a - c]), P)
        cases.append(_numeric_case(f"3F2{tuple(params['dixon'])} well-poised vs gamma quotient", got,
                                   BigReal(exact, abs(exact) * mpf(10) ** (2 - mp.dps)), tol))
    return cases


def _soundness(params: dict) -> list[Case]:
    """Recompute at P+10 with a doubled cutoff; the change must stay within err."""
    P = params["P"]
    cases = []
    J = 2 * _default_cutoff(P + 10 + 15)
    for lv in params["levels"]:
        for text in params["indices"]:
            idx = Index.parse(text)
            for star in (False, True):
                lo = t_nested(lv, idx, P, star=star, cache=False)
                hi = t_nested(lv, idx, P + 10, star=star, cutoff=J, cache=False)
                with mp.workdps(P + 30):
                    delta = abs(lo.value - hi.value)
                    ok = delta <= lo.err + hi.err
                    name = "t*" if star else "t"
                    cases.append(Case(f"level {_level_str(lv)} {name}({text}) at P={P} vs P={P + 10}",
                                      _fmt(lo.value), _fmt(hi.value), ok,
                                      delta=f"{_fmt(delta, 5)} (bound {_fmt(lo.err + hi.err, 5)})"))
        for k in (2, 3):
            lo, hi = t_depth1(lv, k, P), t_depth1(lv, k, P + 10)
            with mp.workdps(P + 30):
                delta = abs(lo.value - hi.value)
                cases.append(Case(f"level {_level_str(lv)} t({k}) depth one at P={P} vs P={P + 10}",
                                  _fmt(lo.value), _fmt(hi.value), delta <= lo.err + hi.err,
                                  delta=f"{_fmt(delta, 5)} (bound {_fmt(lo.err + hi.err, 5)})"))
    params_h = PFQParams([1, Fraction(2, 3), Fraction(1, 2)], [Fraction(5, 3), Fraction(3, 2)])
    lo = pfq_at_1(params_h, P)
    hi = pfq_at_1(params_h, P + 10, n_direct=4 * max(200, 4 * (P + 25)))
    with mp.workdps(P + 30):
        delta = abs(lo.value - hi.value)
        cases.append(Case(f"3F2(1,2/3,1/2;5/3,3/2;1) at P={P} vs P={P + 10}",
                          _fmt(lo.value), _fmt(hi.value), delta <= lo.err + hi.err,
                          delta=f"{_fmt(delta, 5)} (bound {_fmt(lo.err + hi.err, 5)})"))
    return cases


# mutated runs that must fail: (description, check id, parameter overrides)
NEGATIVE_CONTROLS = [
    ("perturbed recurrence coefficient", "thm-main-exact",
     {"levels": [[2, 1]], "M": 12, "max_weight": 5, "_perturb": "1/1000000"}),
    ("one enumerated index dropped from the oracle", "thm-main-exact",
     {"levels": [[2, 1]], "M": 12, "max_weight": 5, "_drop": 0}),
    ("oracle term bumped in a derivative relation", "recurrence-relations",
     {"levels": [[1, 1]], "max_weight": 4, "m_max": 4, "_bump": True}),
    ("t(2) scaled by 1 + 1e-6 in the weight-3 example", "example-k3", {"_nudge": "1e-6"}),
    ("t(2) scaled by 1 + 1e-6 in the weighted sum", "weighted-sum",
     {"ks": [3], "as": [1], "r_values": ["1/2"], "_nudge": "1e-6"}),
    ("t(2) scaled by 1 + 1e-6 in the maximal-height series", "max-height",
     {"max_weight": 4, "r_values": ["1/2"], "_nudge": "1e-6"}),
]


def _negative_controls(params: dict) -> list[Case]:
    cases = []
    for desc, check_id, overrides in NEGATIVE_CONTROLS:
        overrides = dict(overrides)
        if "_perturb" in overrides:
            overrides["_perturb"] = Fraction(overrides["_perturb"])
        report = run_check(CheckSpec(check_id, overrides))
        cases.append(Case(f"mutation: {desc} ({check_id})", report.status, "fail",
                          report.status == "fail"))
    return cases


REGISTRY: dict[str, CheckInfo] = {}


def _register(id: str, kind: str, statement: str, defaults: dict, runner) -> None:
    REGISTRY[id] = CheckInfo(id, kind, statement, defaults, runner)


_register("thm-main-exact", "exact",
          "[z^m u^{k-n-s} v^{n-s} w^{2s-2}] Phi_0^r = sum over I_0(k,n,s) of [z^m] L^r_{N,a}",
          {"levels": ALL_LEVELS, "M": 60, "max_weight": 7}, _thm_main)
_register("ode-residual", "exact",
          "z^2(1-z^N)Phi'' + z[(1-u)(1-z^N) - v(r+(1-r)z^N)]Phi' + (r+(1-r)z^N)(uv-w^2)Phi = z^a",
          {"levels": ALL_LEVELS, "M": 41, "max_weight": 7}, _ode)
_register("recurrence-relations", "exact",
          "m X_0(k,n,s) = X(k-1,n,s-1) + X_0(k-1,n,s) - X_0(k-1,n,s-1);  "
          "m (X - X_0)(k,n,s) = r X(k-1,n-1,s) + sum_{j>=1} [z^{m-jN}] X(k-1,n-1,s)",
          {"levels": [[1, 1], [2, 1]], "max_weight": 6, "m_max": 20}, _recurrences)
_register("specialization-exact", "exact",
          "t^r at r=0 is the strict sum and at r=1 the weak-inequality sum, coefficientwise in z",
          {"levels": [[1, 1], [2, 1], [3, 2]], "count": 50, "seed": 20240601, "max_weight": 7,
           "m_max": 30}, _specialization)
_register("example-k3", "numeric",
          "±t(3) + 2t(2,1) = 2 t(2) log 2 for strict (+) and star (-) values at level (2,1)",
          {"a": 1, "P": 30, "tol": "1e-10"}, _example(3))
_register("example-k4", "numeric",
          "t(4) ± 2(t(3,1) + t(2,2)) + 4t(2,1,1) = (2/3) t(2)^2 + 2 t(2) log^2 2",
          {"a": 1, "P": 30, "tol": "1e-10"}, _example(4))
_register("weighted-sum", "numeric",
          "sum_n (1-2r)^{k-n-1} 2^{n-1} sum_{I_0(k,n)} t^r_{2a,a} in closed form via t(n) and log 2",
          {"ks": [3, 4, 5], "as": [1, 2], "r_values": ["0", "1", "1/2"], "P": 30, "tol": "1e-8"},
          _weighted)
_register("max-height", "numeric",
          "sum X_0^r(k,n,n) u^{k-2n} w^{2n} = exp(sum t(n)/n (alpha_1^n + alpha_2^n - gamma_1^n - gamma_2^n))",
          {"level": [2, 1], "r_values": ["0", "1", "1/2"], "max_weight": 8, "P": 30, "tol": "1e-8"},
          _max_height)
_register("twos-gf", "numeric",
          "sum_n t^r({2}^n) x^n = exp(sum_n (r^n - (r-1)^n) t(2n) x^n / n)",
          {"levels": [[1, 1], [2, 1]], "r_values": ["0", "1", "1/2"], "n_max": 5, "P": 30,
           "tol": "1e-10"}, _twos)
_register("height-one", "numeric",
          "sum_n t^r(m,{1}^{n-1}) v^{n-1} = _{m+1}F_m(...; 1) / (a^{m-1}(a - v r))",
          {"level": [2, 1], "ms": [2, 3], "r_values": ["0", "1"], "n_max": 6, "P": 30,
           "tol": "1e-6"}, _height_one)
_register("reductions", "numeric",
          "t_{1,1}(k) = zeta(k), t_{2,1}(k) = (1-2^{-k}) zeta(k), t_{N,N}(k) = N^{-k} zeta(k)",
          {"ks": [2, 3, 4], "N": 3, "P": 30, "tol": "1e-20"}, _reductions)
_register("pfq-3f2-spotcheck", "numeric",
          "3F2(a,b,1;c,2+a+b-c;1) and a well-poised 3F2 at 1 against gamma quotients",
          {"abc": ["3/10", "2/5", "17/10"], "dixon": ["1/2", "1/5", "1/7"], "P": 30,
           "tol": "1e-15"}, _pfq_spot)
_register("error-bound-soundness", "numeric",
          "values recomputed at P+10 with a doubled cutoff differ by at most the reported error",
          {"levels": [[1, 1], [2, 1], [3, 2]], "indices": ["2", "2,1", "3,1,1", "2,2,1", "2,1,1,1"],
           "P": 30}, _soundness)
_register("negative-controls", "numeric",
          "mutated recurrences, enumerations and constants must make their checks fail",
          {}, _negative_controls)


def catalogue() -> list[dict]:
    return [{"id": c.id, "kind": c.kind, "statement": c.statement, "defaults": c.defaults}
            for c in REGISTRY.values()]


def run_check(spec: CheckSpec) -> Report:
    """Execute one check; exceptions inside the runner become a failed report."""
    info = REGISTRY[spec.id]
    start = time.perf_counter()
    reason = _precheck(spec.params)
    cases: list[Case] = []
    if reason is None:
        try:
            cases = info.runner(spec.params)
        except ArithmeticError as exc:
            # an unreachable error bound is an infeasible parameter set, not a pass
            reason = f"{UNDECIDABLE}: {exc}"
    if reason is not None:
        status = "skipped"
    elif any(not c.ok for c in cases):
        status = "fail"
    elif any(c.undecided for c in cases):
        status, reason = "skipped", UNDECIDABLE
    else:
        status = "pass"
    ms = int((time.perf_counter() - start) * 1000)
    return Report(spec.id, info.kind, spec.public_params(), status, cases, ms, reason=reason)


def _run_one(args: tuple[str, dict]) -> Report:
    return run_check(CheckSpec(*args))


def run_checks(specs: list[CheckSpec], jobs: int = 1) -> list[Report]:
    """Run several checks, in parallel processes when ``jobs > 1``; sorted by check id."""
    if jobs > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_one, [(s.id, s.params) for s in specs]))
    else:
        reports = [run_check(s) for s in specs]
    return sorted(reports, key=lambda r: r.id)


def report_json(reports: list[Report], with_time: bool = True) -> dict:
    return {"schema": SCHEMA, "tool_version": __version__, "catalogue_version": CATALOGUE_VERSION,
            "checks": [r.to_json(with_time) for r in reports]}


def exit_code(reports: list[Report]) -> int:
    """0 when every executed check passes, 1 on any failure, 3 when everything was skipped."""
    if any(r.status == "fail" for r in reports):
        return 1
    if reports and all(r.status == "skipped" for r in reports):
        return 3
    return 0
