"""Acceptance gate: one test per criterion, reported in the terminal summary.

Run alone with ``pytest -m acceptance -rA``; each criterion prints a
``[PASS]``/``[FAIL]`` line under "acceptance criteria".
"""
import json
import math
import random
import statistics
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from ratderiv.calculus import antiderivative, partial_fractions, residues
from ratderiv.cli import run
from ratderiv.errors import FormulaInadmissible, NOutOfRange
from ratderiv.interpolation import HermiteSpec, hermite_interpolate
from ratderiv.numeric import FactoredDenominator, GaussianRational, Polynomial, expand_factored
from ratderiv.oracle import (
    RationalFunctionExpr,
    euler_finite_difference,
    hermite_by_linear_solve,
    oracle_derivative_at,
)
from ratderiv.recurrence import (
    RecurrenceSpec,
    closed_form_term,
    iterate_recurrence,
    partial_fraction_closed_form,
    term_from_partial_fractions,
)
from ratderiv.reciprocal import (
    EvalContext,
    ParamSet,
    canonical_params,
    derivative,
    derivative_formula_I,
    derivative_formula_I_unchecked,
    derivative_formula_II,
    validate_params,
)
from ratderiv.sampling import (
    random_denominator,
    random_derivative_case,
    random_distinct_scalars,
    random_point_off,
    random_poly,
    random_scalar,
)

pytestmark = pytest.mark.filterwarnings("error")

H3 = FactoredDenominator([(0, 1), (2, 2)])
Z1 = FactoredDenominator([(0, 1)])
Z2 = FactoredDenominator([(0, 2)])
SAMPLES = [5, 1, Fraction(-2, 3), GaussianRational(1, 1), GaussianRational(Fraction(7, 2), -4)]


def _median_ms(fn, repeats=25):
    fn()  # warm caches
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append((time.perf_counter() - t0) * 1e3)
    return statistics.median(times)


@pytest.mark.acceptance("C1 worked example h'(1) = 1 via both formulas, < 1 ms each")
def test_c1_worked_example():
    ctx_i = EvalContext(H3, 1, 1, ParamSet([0, -1], 3), N=2)
    ctx_ii = EvalContext(H3, 1, 1, ParamSet([0, -6], 1))
    assert derivative_formula_I(ctx_i) == 1
    assert derivative_formula_II(ctx_ii) == 1
    ms_i = _median_ms(lambda: derivative_formula_I(ctx_i))
    ms_ii = _median_ms(lambda: derivative_formula_II(ctx_ii))
    print(f"formula I {ms_i:.3f} ms, formula II {ms_ii:.3f} ms (median)")
    assert ms_i < 1.0 and ms_ii < 1.0


@pytest.mark.acceptance("C2 negative control: N=1 gives 3/16, true value -1/4, checked entry rejects")
def test_c2_negative_control():
    ctx = EvalContext(Z2, 2, 1, ParamSet([7], 2), N=1)
    assert derivative_formula_I_unchecked(ctx) == Fraction(3, 16)
    assert derivative(Z2, 1, 2) == Fraction(-1, 4)
    with pytest.raises(NOutOfRange):
        derivative_formula_I(ctx)


@pytest.mark.acceptance("C3 1/z and 1/z^2 reproduced at 5 points; 1/z, t=0 inadmissible for formula II")
def test_c3_simple_reciprocals():
    for z in SAMPLES:
        z = GaussianRational.coerce(z)
        assert derivative_formula_I(EvalContext(Z1, z, 0, ParamSet([0], 1), N=2)) == 1 / z
        assert derivative_formula_I(EvalContext(Z2, z, 0, ParamSet([1], 2), N=1)) == 1 / (z * z)
    with pytest.raises(FormulaInadmissible):
        derivative_formula_II(EvalContext(Z1, 3, 0, ParamSet([0], 1)))


@pytest.mark.acceptance("C4 300 random instances equal the quotient-rule oracle, < 60 s")
def test_c4_oracle_equivalence():
    rng = random.Random(20240531)
    t0 = time.perf_counter()
    mismatches = []
    for k in range(300):
        d, t, z = random_derivative_case(rng, max_factors=3, max_mult=3, max_t=4)
        if derivative(d, t, z) != oracle_derivative_at(d, t, z):
            mismatches.append(k)
    elapsed = time.perf_counter() - t0
    print(f"300 cases in {elapsed:.1f} s, mismatches: {mismatches}")
    assert not mismatches
    assert elapsed < 60


def _distinct_valid_params(rng, d, z, t, count):
    N_top = t + 4
    found = [canonical_params(d, z, t, N_top)]
    for _ in range(5000):
        if len(found) == count:
            return found
        s_list = [0 if n == 0 else random_scalar(rng, num=9, den=5) for n in d.orders]
        if any(not s for s, n in zip(s_list, d.orders) if n):
            continue
        cand = ParamSet(s_list, random_scalar(rng, num=9, den=5))
        if cand not in found and validate_params(d, z, t, N_top, cand).ok:
            found.append(cand)
    raise AssertionError("could not find enough valid parameter sets")


@pytest.mark.acceptance("C5 N-independence, parameter independence and formula I == formula II on 50 instances")
def test_c5_independence():
    rng = random.Random(5)
    for _ in range(50):
        d, t, z = random_derivative_case(rng, max_factors=3, max_mult=3, max_t=3)
        values = set()
        for params in _distinct_valid_params(rng, d, z, t, 5):
            for N in range(t + 1, t + 5):
                values.add(derivative_formula_I(EvalContext(d, z, t, params, N)))
            if sum(d.orders) + t >= 1:
                values.add(derivative_formula_II(EvalContext(d, z, t, params)))
        assert len(values) == 1
        assert values == {oracle_derivative_at(d, t, z)}


@pytest.mark.acceptance("C6 Euler finite difference identity for n <= 12")
def test_c6_euler():
    for n in range(13):
        for p in range(n):
            assert euler_finite_difference(n, p) == 0
        assert euler_finite_difference(n, n) == (-1) ** n * math.factorial(n)


def _lagrange_by_products(points, values):
    # sum_i v_i prod_{j != i} (z - a_j)/(a_i - a_j), written out independently
    total = Polynomial()
    for i, (ai, v) in enumerate(zip(points, values)):
        term = Polynomial([v])
        for j, aj in enumerate(points):
            if j != i:
                term = term * Polynomial([-aj, 1]) * (1 / (ai - aj))
        total = total + term
    return total


@pytest.mark.acceptance("C7 100 Hermite specs satisfy conditions, degree bound, match linear solve and Lagrange, < 60 s")
def test_c7_hermite():
    rng = random.Random(7)
    t0 = time.perf_counter()
    lagrange_cases = 0
    for k in range(100):
        L = rng.randint(1, 4)
        pts = random_distinct_scalars(rng, L)
        # every fifth spec has only value conditions
        top = 0 if k % 5 == 0 else 3
        nodes = [(a, [random_scalar(rng) for _ in range(rng.randint(0, top) + 1)]) for a in pts]
        spec = HermiteSpec(nodes)
        p = hermite_interpolate(spec)
        assert p.degree <= spec.max_degree
        for a, targets in spec.nodes:
            for l, v in enumerate(targets):
                assert p.derivative(l)(a) == v
        assert p.coeffs == hermite_by_linear_solve(nodes).coeffs
        if all(n == 0 for n in spec.orders):
            lagrange_cases += 1
            assert p == _lagrange_by_products(spec.points, [ts[0] for _, ts in spec.nodes])
    elapsed = time.perf_counter() - t0
    print(f"100 specs in {elapsed:.1f} s ({lagrange_cases} value-only)")
    assert lagrange_cases >= 20
    assert elapsed < 60


@pytest.mark.acceptance("C8 partial fractions and antiderivatives round-trip; residue sums vanish")
def test_c8_calculus_round_trips():
    rng = random.Random(8)
    for _ in range(100):
        d = random_denominator(rng, max_factors=3, max_mult=3)
        num = random_poly(rng, rng.randint(0, d.degree + 2))
        target = RationalFunctionExpr(num, expand_factored(d))
        assert partial_fractions(num, d).recombine(d).equals(target)
    for _ in range(100):
        d = random_denominator(rng, max_factors=3, max_mult=3)
        num = random_poly(rng, rng.randint(0, d.degree + 2))
        target = RationalFunctionExpr(num, expand_factored(d))
        assert antiderivative(num, d).derivative().equals(target)
    checked = 0
    while checked < 100:
        d = random_denominator(rng, max_factors=3, max_mult=3)
        if d.degree < 2:
            continue
        num = random_poly(rng, rng.randint(0, d.degree - 2))
        assert sum((r for _, r in residues(num, d)), GaussianRational(0)) == 0
        checked += 1


def _random_rational_rooted_spec(rng):
    k = rng.randint(2, 5)
    factors, remaining = [], k
    while remaining:
        m = rng.randint(1, remaining)
        while True:
            a = GaussianRational(Fraction(rng.choice([-1, 1]) * rng.randint(1, 5), rng.randint(1, 4)))
            if all(a != b for b, _ in factors):
                break
        factors.append((a, m))
        remaining -= m
    d = FactoredDenominator(factors)
    monic = expand_factored(d)
    q = monic * (1 / monic(0))
    coeffs = [-c for c in q.coeffs[1:]]
    initials = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(k)]
    return RecurrenceSpec(initials, coeffs, d)


@pytest.mark.acceptance("C9 2^n closed form for n <= 30; 20 random specs agree with iteration via both paths")
def test_c9_recurrences():
    doubling = RecurrenceSpec([1, 2], [3, -2], FactoredDenominator([(1, 1), (Fraction(1, 2), 1)]))
    for n in range(31):
        assert closed_form_term(doubling, n) == 2**n
    rng = random.Random(9)
    for _ in range(20):
        spec = _random_rational_rooted_spec(rng)
        assert 2 <= len(spec.coefficients) <= 5
        pf = partial_fraction_closed_form(spec)
        for n in range(21):
            want = iterate_recurrence(spec, n)
            assert closed_form_term(spec, n) == want
            assert term_from_partial_fractions(pf, n) == want


def _cli(args, payload=None):
    proc = subprocess.run(
        [sys.executable, "-m", "ratderiv", *args],
        input=None if payload is None else json.dumps(payload),
        capture_output=True, text=True, timeout=120,
    )
    return json.loads(proc.stdout), proc.returncode


@pytest.mark.acceptance("C10 CLI subcommands round-trip, headline values end-to-end, selftest --seed 0 deterministic")
def test_c10_cli():
    one = {"re": "1", "im": "0"}
    roots = [{"root": "0", "mult": 1}, {"root": "2", "mult": 2}]
    assert _cli(["derive"], {"roots": roots, "order": 1, "at": "1"}) == ({"value": one}, 0)
    assert _cli(["derive", "--formula", "II", "--params", '{"s_list": ["0", "-6"], "s": "1"}'],
                {"roots": roots, "order": 1, "at": "1"}) == ({"value": one}, 0)

    rec = {"initials": ["1", "2"], "coefficients": ["3", "-2"],
           "roots": [{"root": "1", "mult": 1}, {"root": "1/2", "mult": 1}], "range": [0, 30]}
    for method in ("leibniz", "partial_fractions"):
        out, code = _cli(["recur"], dict(rec, method=method))
        assert code == 0
        assert out["values"] == [{"re": str(2**n), "im": "0"} for n in range(31)]

    # partfrac output recombines to the input
    out, code = _cli(["partfrac"], {"num": ["1"], "roots": roots})
    assert code == 0
    d = H3
    expr = RationalFunctionExpr(Polynomial([]), Polynomial([1]))
    for term in out["terms"]:
        a = GaussianRational(Fraction(term["root"]["re"]), Fraction(term["root"]["im"]))
        c = GaussianRational(Fraction(term["coef"]["re"]), Fraction(term["coef"]["im"]))
        expr = expr + RationalFunctionExpr(Polynomial([c]), Polynomial([-a, 1]) ** term["order"])
    assert expr.equals(RationalFunctionExpr(Polynomial([1]), expand_factored(d)))

    out, code = _cli(["integrate"], {"num": ["1"], "roots": roots})
    assert code == 0 and set(out) == {"poly", "logs", "powers"}
    out, code = _cli(["interp"], {"nodes": [{"point": "0", "targets": ["0", "1"]},
                                            {"point": "1", "targets": ["1"]}]})
    assert (out, code) == ({"poly": [{"re": "0", "im": "0"}, one]}, 0)

    first = _cli(["selftest", "--seed", "0"])
    second = _cli(["selftest", "--seed", "0"])
    assert first == second
    assert first[1] == 0 and first[0]["passed"]
