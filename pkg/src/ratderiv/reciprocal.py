"""Closed-form derivatives of any order of ``1 / prod (z - a_r)**(n_r + 1)``.

Two families are implemented:

* formula I, valid for every integer ``N >= t + 1``::

      h^(t)(z) = t!/s^t (-1)^(N+t) sum_{j=1..N} psi1(j)

* formula II, valid when ``sum(n) + t >= 1``, built from ``phi2``/``theta2``
  plus a ``psi1`` correction with ``N`` replaced by ``t``.

Both depend on free parameters ``s_1..s_L, s`` whose value does not change
the result as long as no denominator vanishes. :func:`validate_params`
checks that, :func:`canonical_params` produces a safe choice.

Factor indices ``r``/``m`` are 0-based throughout; ``j`` and ``p``/``q`` keep
their natural ranges (``j >= 1``, ``0 <= p <= n_r``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import FormulaInadmissible, InvalidParameters, NOutOfRange, PoleError
from .numeric import ONE, ZERO, FactoredDenominator, GaussianRational

__all__ = [
    "ParamSet",
    "EvalContext",
    "ValidityReport",
    "theta1",
    "theta2",
    "phi1",
    "phi2",
    "psi1",
    "derivative_formula_I",
    "derivative_formula_I_unchecked",
    "derivative_formula_II",
    "canonical_params",
    "validate_params",
    "derivative",
]

_MAX_WIDENINGS = 64


@dataclass(frozen=True)
class ParamSet:
    """Dummy parameters: one ``s_list`` entry per factor, plus ``s``."""

    s_list: tuple
    s: GaussianRational

    def __init__(self, s_list, s):
        object.__setattr__(self, "s_list", tuple(GaussianRational.coerce(x) for x in s_list))
        object.__setattr__(self, "s", GaussianRational.coerce(s))


@dataclass(frozen=True)
class EvalContext:
    denominator: FactoredDenominator
    z: GaussianRational
    t: int
    params: ParamSet
    N: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "z", GaussianRational.coerce(self.z))
        if self.t < 0:
            raise ValueError("derivative order t must be non-negative")
        if len(self.params.s_list) != self.denominator.L:
            raise ValueError("params.s_list must have one entry per factor")
        if self.denominator.is_pole(self.z):
            raise PoleError(f"pole: z = {self.z} is a root of the denominator")

    @property
    def n(self):
        return self.denominator.orders

    @property
    def total_n(self):
        return sum(self.denominator.orders)


@dataclass(frozen=True)
class ValidityReport:
    ok: bool
    witness: tuple | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def _dist(ctx):
    # z - a_m for every factor
    return [ctx.z - a for a in ctx.denominator.roots]


def _raise_zero(witness):
    raise InvalidParameters(
        f"invalid parameters: vanishing denominator at (j, r, m, p, q) = {witness}",
        witness=witness,
    )


def theta1(ctx: EvalContext, j: int, r: int, p: int, *, _dist_cache=None) -> GaussianRational:
    n = ctx.n
    if j < 1 or not 0 <= p <= n[r]:
        raise ValueError(f"theta1 index out of range: j={j}, p={p}, n_r={n[r]}")
    L = ctx.denominator.L
    s, s_list = ctx.params.s, ctx.params.s_list
    dz = _dist_cache if _dist_cache is not None else _dist(ctx)
    w = j * s - p * s_list[r]
    num = w ** (ctx.total_n + L - 1 + ctx.t)
    if p & 1:
        num = -num
    den = ONE
    for m in range(L):
        if m == r:
            continue
        for q in range(n[m] + 1):
            f = dz[m] * w - dz[r] * (j * s - q * s_list[m])
            if not f:
                _raise_zero((j, r, m, p, q))
            den = den * f
    return num / (den * (math.factorial(p) * math.factorial(n[r] - p)))


def theta2(ctx: EvalContext, r: int, p: int, *, _dist_cache=None) -> GaussianRational:
    n = ctx.n
    if not 1 <= p <= n[r]:
        raise ValueError(f"theta2 needs 1 <= p <= n_r, got p={p}, n_r={n[r]}")
    L = ctx.denominator.L
    s_list = ctx.params.s_list
    dz = _dist_cache if _dist_cache is not None else _dist(ctx)
    num = GaussianRational(Fraction(p) ** (ctx.total_n + ctx.t))
    if p & 1:
        num = -num
    den = ONE
    for m in range(L):
        if m == r:
            continue
        for q in range(1, n[m] + 1):
            f = q * s_list[m] * dz[r] - p * s_list[r] * dz[m]
            if not f:
                _raise_zero((None, r, m, p, q))
            den = den * f
    return num / (den * (math.factorial(p) * math.factorial(n[r] - p)))


def phi1(ctx: EvalContext, j: int, r: int, *, _dist_cache=None) -> GaussianRational:
    dz = _dist_cache if _dist_cache is not None else _dist(ctx)
    nr = ctx.n[r]
    acc = ZERO
    for p in range(nr + 1):
        acc = acc + theta1(ctx, j, r, p, _dist_cache=dz)
    # s_r**0 == 1 even when s_r == 0
    scale = ctx.params.s_list[r] ** nr * dz[r] ** (nr + 1 + ctx.t)
    return acc / scale


def psi1(ctx: EvalContext, j: int, upper: int, *, _dist_cache=None) -> GaussianRational:
    """Inner j-term; ``upper`` is N for formula I and t for formula II."""
    dz = _dist_cache if _dist_cache is not None else _dist(ctx)
    acc = ZERO
    for r in range(ctx.denominator.L):
        acc = acc + phi1(ctx, j, r, _dist_cache=dz)
    coef = Fraction(j) ** (upper - ctx.t) / (math.factorial(j) * math.factorial(upper - j))
    if j & 1:
        coef = -coef
    return acc * coef


def phi2(ctx: EvalContext, r: int, *, _dist_cache=None) -> GaussianRational:
    dz = _dist_cache if _dist_cache is not None else _dist(ctx)
    nr = ctx.n[r]
    if nr < 1:
        raise ValueError("phi2 is only defined for factors with n_r >= 1")
    acc = ZERO
    for p in range(1, nr + 1):
        acc = acc + theta2(ctx, r, p, _dist_cache=dz)
    return acc * ctx.params.s_list[r] ** (ctx.total_n - nr + ctx.t) / dz[r] ** (nr + ctx.t)


def _check_param_shape(d, params):
    if len(params.s_list) != d.L:
        return ValidityReport(False, None, "s_list length does not match the number of factors")
    if not params.s:
        return ValidityReport(False, None, "s must be nonzero")
    for i, (si, ni) in enumerate(zip(params.s_list, d.orders)):
        if (not si) != (ni == 0):
            return ValidityReport(
                False, (i,), f"s_{i} must be zero exactly when factor {i} is simple"
            )
    return ValidityReport(True)


def _require_valid(ctx, j_max):
    report = validate_params(ctx.denominator, ctx.z, ctx.t, j_max, ctx.params)
    if not report.ok:
        raise InvalidParameters(f"invalid parameters: {report.reason}", witness=report.witness)


def _formula_I(ctx):
    dz = _dist(ctx)
    N, t = ctx.N, ctx.t
    acc = ZERO
    for j in range(1, N + 1):
        acc = acc + psi1(ctx, j, N, _dist_cache=dz)
    coef = Fraction(math.factorial(t))
    if (N + t) & 1:
        coef = -coef
    return acc * coef / ctx.params.s ** t


def derivative_formula_I(ctx: EvalContext) -> GaussianRational:
    """h^(t)(z) by formula I; requires ``ctx.N >= t + 1``."""
    if ctx.N is None:
        raise ValueError("formula I needs N")
    if ctx.N < ctx.t + 1:
        raise NOutOfRange(f"N below admissible range: N={ctx.N} < t+1={ctx.t + 1}")
    _require_valid(ctx, max(ctx.N, ctx.t))
    return _formula_I(ctx)


def derivative_formula_I_unchecked(ctx: EvalContext) -> GaussianRational:
    """Formula I body without the ``N >= t + 1`` guard.

    Only meaningful as a negative control: outside the admissible range the
    value is generally wrong.
    """
    if ctx.N is None or ctx.N < 1:
        raise ValueError("N must be at least 1")
    _require_valid(ctx, max(ctx.N, ctx.t))
    return _formula_I(ctx)


def derivative_formula_II(ctx: EvalContext) -> GaussianRational:
    """h^(t)(z) by formula II; inadmissible when every n_m and t are zero."""
    t, S = ctx.t, ctx.total_n
    if S + t < 1:
        raise FormulaInadmissible()
    _require_valid(ctx, t)
    dz = _dist(ctx)
    principal = ZERO
    for r, nr in enumerate(ctx.n):
        if nr >= 1:
            principal = principal + phi2(ctx, r, _dist_cache=dz)
    pole_prod = ONE
    for x in dz:
        pole_prod = pole_prod * x
    if (S + t) & 1:
        principal = -principal
    s_t = ctx.params.s ** t
    value = principal / (pole_prod * s_t)
    if t:
        corr = ZERO
        for j in range(1, t + 1):
            corr = corr + psi1(ctx, j, t, _dist_cache=dz)
        value = value + corr * math.factorial(t) / s_t
    return value


# ---------------------------------------------------------------------------
# parameters


def validate_params(d: FactoredDenominator, z, t: int, N: int, params: ParamSet) -> ValidityReport:
    """Check every denominator of both formula families.

    Scans ``1 <= j <= max(N, t)``, ordered factor pairs ``r != m`` and
    ``0 <= p <= n_r``, ``0 <= q <= n_m``, then the ``p, q >= 1`` family used
    by formula II. Returns the first vanishing tuple ``(j, r, m, p, q)``
    (``j`` is None for the second family).
    """
    z = GaussianRational.coerce(z)
    if d.is_pole(z):
        raise PoleError(f"pole: z = {z} is a root of the denominator")
    shape = _check_param_shape(d, params)
    if not shape.ok:
        return shape
    n = d.orders
    s, sl = params.s, params.s_list
    dz = [z - a for a in d.roots]
    L = d.L
    for j in range(1, max(N, t) + 1):
        js = j * s
        for r in range(L):
            for m in range(L):
                if m == r:
                    continue
                for p in range(n[r] + 1):
                    w = js - p * sl[r]
                    for q in range(n[m] + 1):
                        if not dz[m] * w - dz[r] * (js - q * sl[m]):
                            return ValidityReport(
                                False, (j, r, m, p, q), f"vanishing denominator at {(j, r, m, p, q)}"
                            )
    for r in range(L):
        for m in range(L):
            if m == r:
                continue
            for p in range(1, n[r] + 1):
                for q in range(1, n[m] + 1):
                    if not q * sl[m] * dz[r] - p * sl[r] * dz[m]:
                        return ValidityReport(
                            False, (None, r, m, p, q), f"vanishing denominator at {(None, r, m, p, q)}"
                        )
    return ValidityReport(True)


def separation_bound(d: FactoredDenominator, z) -> Fraction:
    """Rational M' >= prod_{m != r} (1 + |(a_r - z)/(a_m - z)|)."""
    z = GaussianRational.coerce(z)
    dz = [a - z for a in d.roots]
    M = Fraction(1)
    for r in range(d.L):
        for m in range(d.L):
            if m != r:
                M *= 1 + dz[r].modulus_upper() / dz[m].modulus_lower()
    return M


def canonical_params(d: FactoredDenominator, z, t: int = 0, N: int | None = None) -> ParamSet:
    """Deterministic valid parameters for ``d`` at ``z``.

    Factors with ``n_i >= 1`` are taken first (in input order) and get
    ``1, (3M) n_1, (3M)^2 n_1 n_2, ...``; ``s`` continues the chain. Simple
    factors get 0. If the result still collides for ``(t, N)`` the multiplier
    is doubled until it does not.
    """
    z = GaussianRational.coerce(z)
    if d.is_pole(z):
        raise PoleError(f"pole: z = {z} is a root of the denominator")
    if N is None:
        N = t + 1
    n = d.orders
    multi = [i for i, ni in enumerate(n) if ni >= 1]
    mult = 3 * separation_bound(d, z)
    for _ in range(_MAX_WIDENINGS):
        s_list = [Fraction(0)] * d.L
        val = Fraction(1)
        for i in multi:
            s_list[i] = val
            val = val * mult * n[i]
        params = ParamSet(s_list, val)
        if validate_params(d, z, t, N, params).ok:
            return params
        mult *= 2
    raise RuntimeError("could not find valid parameters")  # pragma: no cover


def derivative(d: FactoredDenominator, t: int, z) -> GaussianRational:
    """t-th derivative of ``1/prod (z - a_i)**m_i`` at ``z`` (formula I, N = t + 1)."""
    z = GaussianRational.coerce(z)
    if d.is_pole(z):
        raise PoleError(f"pole: z = {z} is a root of the denominator")
    params = canonical_params(d, z, t, t + 1)
    return derivative_formula_I(EvalContext(d, z, t, params, t + 1))
