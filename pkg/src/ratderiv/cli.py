"""JSON command-line front end.

Every subcommand reads one JSON document (stdin or ``--in``) and writes one
JSON document (stdout or ``--out``). Scalars are exact rational strings, or
``{"re": .., "im": ..}`` objects; JSON floats are rejected.

Exit codes: 0 success, 1 domain error, 2 malformed input.
"""
from __future__ import annotations

import argparse
import json
import math
import random
import sys

from .calculus import antiderivative, partial_fractions
from .errors import ParseError, PoleError, RatDerivError
from .interpolation import HermiteSpec, hermite_interpolate
from .numeric import FactoredDenominator, format_poly, format_scalar, parse_poly, parse_scalar
from .oracle import euler_finite_difference, oracle_derivative_at
from .recurrence import (
    RecurrenceSpec,
    closed_form_term,
    partial_fraction_closed_form,
    term_from_partial_fractions,
)
from .reciprocal import (
    EvalContext,
    ParamSet,
    canonical_params,
    derivative,
    derivative_formula_I,
    derivative_formula_II,
)
from .sampling import random_derivative_case

SUBCOMMANDS = ("derive", "partfrac", "integrate", "interp", "recur", "selftest")

EXIT_OK, EXIT_DOMAIN, EXIT_INPUT = 0, 1, 2


class SchemaError(ParseError):
    code = "schema_error"


def _reject_float(text):
    raise SchemaError(f"JSON floats are not accepted ({text}); use exact rational strings")


def loads(text: str):
    try:
        return json.loads(text, parse_float=_reject_float, parse_constant=_reject_float)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", position=exc.pos) from None


# -- payload decoding -------------------------------------------------------


def _require(payload, key):
    if not isinstance(payload, dict):
        raise SchemaError("payload must be a JSON object")
    if key not in payload:
        raise SchemaError(f"missing field {key!r}")
    return payload[key]


def _int(value, name, minimum=None):
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError(f"{name} must be an integer")
    if minimum is not None and value < minimum:
        raise SchemaError(f"{name} must be >= {minimum}")
    return value


def _check_keys(payload, allowed):
    extra = set(payload) - set(allowed)
    if extra:
        raise SchemaError(f"unexpected fields: {sorted(extra)}")


def parse_roots(obj) -> FactoredDenominator:
    if not isinstance(obj, list) or not obj:
        raise SchemaError("roots must be a non-empty array")
    factors = []
    for item in obj:
        if not isinstance(item, dict):
            raise SchemaError("each root must be an object {root, mult}")
        _check_keys(item, ("root", "mult"))
        factors.append((parse_scalar(_require(item, "root")), _int(_require(item, "mult"), "mult", 1)))
    try:
        return FactoredDenominator(factors)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def format_roots(d: FactoredDenominator):
    return [{"root": format_scalar(a), "mult": m} for a, m in d.factors]


def parse_params(obj) -> ParamSet:
    if not isinstance(obj, dict):
        raise SchemaError("params must be an object {s_list, s}")
    _check_keys(obj, ("s_list", "s"))
    s_list = _require(obj, "s_list")
    if not isinstance(s_list, list):
        raise SchemaError("params.s_list must be an array")
    return ParamSet([parse_scalar(x) for x in s_list], parse_scalar(_require(obj, "s")))


# -- subcommands --------------------------------------------------------------


def cmd_derive(payload, formula=None, N=None, params=None):
    _check_keys(payload, ("roots", "order", "at", "formula", "N", "params"))
    d = parse_roots(_require(payload, "roots"))
    t = _int(_require(payload, "order"), "order", 0)
    z = parse_scalar(_require(payload, "at"))
    formula = formula or payload.get("formula", "I")
    if formula not in ("I", "II"):
        raise SchemaError("formula must be 'I' or 'II'")
    if N is None and "N" in payload:
        N = _int(payload["N"], "N")
    if params is None and "params" in payload:
        params = parse_params(payload["params"])
    if params is not None and len(params.s_list) != d.L:
        raise SchemaError("params.s_list must have one entry per root")
    if d.is_pole(z):
        raise PoleError(f"pole: z = {z} is a root of the denominator")
    if formula == "I":
        N = t + 1 if N is None else N
        if params is None:
            params = canonical_params(d, z, t, max(N, t + 1))
        value = derivative_formula_I(EvalContext(d, z, t, params, N))
    else:
        if N is not None:
            raise SchemaError("N only applies to formula I")
        if params is None:
            params = canonical_params(d, z, t, t + 1)
        value = derivative_formula_II(EvalContext(d, z, t, params))
    return {"value": format_scalar(value)}


def _num_and_roots(payload):
    _check_keys(payload, ("num", "roots"))
    return parse_poly(_require(payload, "num")), parse_roots(_require(payload, "roots"))


def cmd_partfrac(payload):
    num, d = _num_and_roots(payload)
    pf = partial_fractions(num, d)
    return {
        "poly": format_poly(pf.polynomial_part),
        "terms": [
            {"root": format_scalar(a), "order": j, "coef": format_scalar(c)} for a, j, c in pf.terms
        ],
    }


def cmd_integrate(payload):
    num, d = _num_and_roots(payload)
    F = antiderivative(num, d)
    return {
        "poly": format_poly(F.polynomial_part),
        "logs": [{"coef": format_scalar(c), "root": format_scalar(a)} for c, a in F.log_terms],
        "powers": [
            {"coef": format_scalar(c), "root": format_scalar(a), "exp": e} for c, a, e in F.power_terms
        ],
    }


def cmd_interp(payload):
    _check_keys(payload, ("nodes",))
    nodes = _require(payload, "nodes")
    if not isinstance(nodes, list) or not nodes:
        raise SchemaError("nodes must be a non-empty array")
    parsed = []
    for node in nodes:
        if not isinstance(node, dict):
            raise SchemaError("each node must be an object {point, targets}")
        _check_keys(node, ("point", "targets"))
        targets = _require(node, "targets")
        if not isinstance(targets, list) or not targets:
            raise SchemaError("targets must be a non-empty array")
        parsed.append((parse_scalar(_require(node, "point")), [parse_scalar(x) for x in targets]))
    try:
        spec = HermiteSpec(parsed)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None
    return {"poly": format_poly(hermite_interpolate(spec))}


def cmd_recur(payload):
    _check_keys(payload, ("initials", "coefficients", "roots", "n", "range", "method"))
    initials = _require(payload, "initials")
    coefficients = _require(payload, "coefficients")
    if not isinstance(initials, list) or not isinstance(coefficients, list):
        raise SchemaError("initials and coefficients must be arrays")
    d = parse_roots(_require(payload, "roots"))
    try:
        spec = RecurrenceSpec(
            [parse_scalar(x) for x in initials], [parse_scalar(x) for x in coefficients], d
        )
    except RatDerivError:
        raise
    except ValueError as exc:
        raise SchemaError(str(exc)) from None
    method = payload.get("method", "leibniz")
    if method == "leibniz":
        term = lambda n: closed_form_term(spec, n)  # noqa: E731
    elif method == "partial_fractions":
        pf = partial_fraction_closed_form(spec)
        term = lambda n: term_from_partial_fractions(pf, n)  # noqa: E731
    else:
        raise SchemaError("method must be 'leibniz' or 'partial_fractions'")
    if ("n" in payload) == ("range" in payload):
        raise SchemaError("give exactly one of 'n' or 'range'")
    if "n" in payload:
        return {"value": format_scalar(term(_int(payload["n"], "n", 0)))}
    rng = payload["range"]
    if not isinstance(rng, list) or len(rng) != 2:
        raise SchemaError("range must be [first, last]")
    lo, hi = _int(rng[0], "range[0]", 0), _int(rng[1], "range[1]", 0)
    return {"values": [format_scalar(term(n)) for n in range(lo, hi + 1)]}


def selftest(seed=0, cases=50):
    suites = []

    failures = []
    count = 0
    for n in range(13):
        for p in range(n + 1):
            count += 1
            want = 0 if p < n else (-1) ** n * math.factorial(n)
            if euler_finite_difference(n, p) != want:
                failures.append([n, p])
    suites.append({"name": "euler_finite_difference", "cases": count, "passed": not failures,
                   "failures": failures})

    rng = random.Random(seed)
    failures = []
    for k in range(cases):
        d, t, z = random_derivative_case(rng)
        if derivative(d, t, z) != oracle_derivative_at(d, t, z):
            failures.append({"case": k, "roots": format_roots(d), "order": t, "at": format_scalar(z)})
    suites.append({"name": "oracle_equivalence", "seed": seed, "cases": cases, "passed": not failures,
                   "failures": failures})

    return {"passed": all(s["passed"] for s in suites), "suites": suites}


def cmd_selftest(payload, seed=None):
    _check_keys(payload, ("seed",))
    if seed is None:
        seed = _int(payload.get("seed", 0), "seed")
    return selftest(seed)


# -- driver -----------------------------------------------------------------


def run(subcommand, payload, **options):
    """Execute one request; returns ``(result_json, exit_code)``."""
    try:
        if not isinstance(payload, dict):
            raise SchemaError("payload must be a JSON object")
        if subcommand == "derive":
            result = cmd_derive(payload, **options)
        elif subcommand == "selftest":
            result = cmd_selftest(payload, **options)
            return result, EXIT_OK if result["passed"] else EXIT_DOMAIN
        elif subcommand in ("partfrac", "integrate", "interp", "recur"):
            result = globals()[f"cmd_{subcommand}"](payload)
        else:
            raise SchemaError(f"unknown subcommand {subcommand!r}")
    except ParseError as exc:
        return _error(exc), EXIT_INPUT
    except RatDerivError as exc:
        return _error(exc), EXIT_DOMAIN
    return result, EXIT_OK


def _error(exc):
    err = {"code": exc.code, "message": str(exc)}
    if getattr(exc, "witness", None) is not None:
        err["witness"] = list(exc.witness)
    return {"error": err}


def build_parser():
    parser = argparse.ArgumentParser(prog="ratderiv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--in", dest="infile", help="read the request from this file; '-' is stdin (default stdin, except selftest)")
        sp.add_argument("--out", dest="outfile", help="write the result to this file (default stdout)")
        if name == "derive":
            sp.add_argument("--formula", choices=("I", "II"))
            sp.add_argument("--N", type=int, dest="N")
            sp.add_argument("--params", help='JSON object {"s_list": [...], "s": ...}')
        if name == "selftest":
            sp.add_argument("--seed", type=int)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    options = {}
    try:
        if args.infile == "-":
            text = sys.stdin.read()
        elif args.infile:
            with open(args.infile, encoding="utf-8") as fh:
                text = fh.read()
        elif args.subcommand == "selftest":
            # the payload is optional; only read it when asked to
            text = ""
        else:
            text = sys.stdin.read()
        payload = loads(text) if text.strip() else {}
        if args.subcommand == "derive":
            if args.formula:
                options["formula"] = args.formula
            if args.N is not None:
                options["N"] = args.N
            if args.params:
                options["params"] = parse_params(loads(args.params))
        if args.subcommand == "selftest" and args.seed is not None:
            options["seed"] = args.seed
    except ParseError as exc:
        result, code = _error(exc), EXIT_INPUT
    else:
        result, code = run(args.subcommand, payload, **options)

    out = json.dumps(result)
    if args.outfile:
        with open(args.outfile, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    else:
        print(out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
