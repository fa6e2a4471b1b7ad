"""Partial fractions, derivatives, residues and antiderivatives of ``num / den``.

``den`` is always a :class:`FactoredDenominator`; all derivatives of
reciprocals come from :func:`ratderiv.reciprocal.derivative` combined with the
Leibniz rule.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import PoleError
from .numeric import (
    ONE,
    ZERO,
    FactoredDenominator,
    GaussianRational,
    Polynomial,
    expand_factored,
)
from .oracle import RationalFunctionExpr
from .reciprocal import derivative as reciprocal_derivative

__all__ = [
    "PartialFractionDecomposition",
    "AntiderivativeExpr",
    "partial_fractions",
    "rational_derivative",
    "residues",
    "antiderivative",
    "contour_integral_sum",
]


def _reciprocal_derivs(d: FactoredDenominator | None, z, orders):
    """[(1/d)^(k)(z) for k in range(orders)]; ``d is None`` means d == 1."""
    if d is None:
        return [ONE] + [ZERO] * (orders - 1)
    return [reciprocal_derivative(d, k, z) for k in range(orders)]


def _leibniz(num: Polynomial, d: FactoredDenominator | None, t: int, z) -> GaussianRational:
    # (num * 1/d)^(t) = sum_j C(t, j) num^(j) (1/d)^(t-j); num^(j) == 0 past its degree
    if num.is_zero():
        return ZERO
    top = min(t, len(num) - 1)
    recip = _reciprocal_derivs(d, z, t + 1)
    acc = ZERO
    for j in range(top + 1):
        acc = acc + num.derivative(j)(z) * recip[t - j] * math.comb(t, j)
    return acc


def rational_derivative(num: Polynomial, den: FactoredDenominator, t: int, z) -> GaussianRational:
    """t-th derivative of ``num / den`` at ``z``."""
    z = GaussianRational.coerce(z)
    if den.is_pole(z):
        raise PoleError(f"pole: z = {z} is a root of the denominator")
    return _leibniz(num, den, t, z)


@dataclass(frozen=True)
class PartialFractionDecomposition:
    """``polynomial_part + sum coef / (z - root)**order``.

    Every ``(root, order)`` with ``1 <= order <= multiplicity`` appears once,
    including zero coefficients.
    """

    polynomial_part: Polynomial
    terms: tuple

    def coefficient(self, root, order):
        root = GaussianRational.coerce(root)
        for a, j, c in self.terms:
            if a == root and j == order:
                return c
        return ZERO

    def __call__(self, z):
        z = GaussianRational.coerce(z)
        acc = self.polynomial_part(z)
        for a, j, c in self.terms:
            acc = acc + c / (z - a) ** j
        return acc

    def recombine(self, den: FactoredDenominator) -> RationalFunctionExpr:
        """Put every term over ``den`` and return the (unreduced) quotient."""
        q = expand_factored(den)
        num = self.polynomial_part * q
        for a, j, c in self.terms:
            cofactor, rem = divmod(q, Polynomial.linear_factor(a) ** j)
            assert rem.is_zero()
            num = num + cofactor * c
        return RationalFunctionExpr(num, q)


def partial_fractions(num: Polynomial, den: FactoredDenominator) -> PartialFractionDecomposition:
    q = expand_factored(den)
    poly_part, rem = divmod(num, q)
    terms = []
    for i, (a, mult) in enumerate(den.factors):
        rest = den.without(i)
        # B_j = ((z - a)^mult * rem/q)^(mult - j) / (mult - j)! at a
        top = mult - 1
        recip = _reciprocal_derivs(rest, a, top + 1)
        rem_derivs = [rem.derivative(l)(a) for l in range(min(top, max(len(rem) - 1, 0)) + 1)]
        for j in range(1, mult + 1):
            k = mult - j
            acc = ZERO
            for l in range(min(k, len(rem_derivs) - 1) + 1):
                acc = acc + rem_derivs[l] * recip[k - l] * math.comb(k, l)
            terms.append((a, j, acc / math.factorial(k)))
    return PartialFractionDecomposition(poly_part, tuple(terms))


def residues(num: Polynomial, den: FactoredDenominator):
    pf = partial_fractions(num, den)
    return [(a, c) for a, j, c in pf.terms if j == 1]


def contour_integral_sum(num: Polynomial, den: FactoredDenominator, enclosed) -> GaussianRational:
    """Sum of residues at the ``enclosed`` poles, i.e. the contour integral over 2*pi*i."""
    enclosed = [GaussianRational.coerce(a) for a in enclosed]
    for a in enclosed:
        if a not in den.roots:
            raise ValueError(f"{a} is not a root of the denominator")
    res = dict(residues(num, den))
    acc = ZERO
    for a in set(enclosed):
        acc = acc + res[a]
    return acc


@dataclass(frozen=True)
class AntiderivativeExpr:
    """``polynomial_part + sum c log(z - a) + sum c (z - a)**e`` with ``e <= -1``."""

    polynomial_part: Polynomial
    log_terms: tuple = field(default=())
    power_terms: tuple = field(default=())

    def derivative(self) -> RationalFunctionExpr:
        """Formal derivative, returned over the product of all pole factors."""
        roots, mults = [], []
        for c, a in self.log_terms:
            if a not in roots:
                roots.append(a)
                mults.append(1)
        for c, a, e in self.power_terms:
            need = 1 - e
            if a in roots:
                k = roots.index(a)
                mults[k] = max(mults[k], need)
            else:
                roots.append(a)
                mults.append(need)
        q = Polynomial([ONE])
        for a, m in zip(roots, mults):
            q = q * Polynomial.linear_factor(a) ** m
        num = self.polynomial_part.derivative() * q
        for c, a in self.log_terms:
            num = num + divmod(q, Polynomial.linear_factor(a))[0] * c
        for c, a, e in self.power_terms:
            # d/dz c (z-a)^e = c e (z-a)^(e-1)
            num = num + divmod(q, Polynomial.linear_factor(a) ** (1 - e))[0] * (c * e)
        return RationalFunctionExpr(num, q)


def antiderivative(num: Polynomial, den: FactoredDenominator) -> AntiderivativeExpr:
    """Primitive of ``num / den`` with zero constant of integration; zero terms dropped."""
    pf = partial_fractions(num, den)
    logs, powers = [], []
    for a, j, c in pf.terms:
        if not c:
            continue
        if j == 1:
            logs.append((c, a))
        else:
            powers.append((c / (1 - j), a, 1 - j))
    return AntiderivativeExpr(pf.polynomial_part.antiderivative(), tuple(logs), tuple(powers))
