"""Closed forms for constant-coefficient linear recurrences.

``b_{n+k+1} = c_0 b_{n+k} + c_1 b_{n+k-1} + ... + c_k b_n`` has the rational
generating function ``f = p/q`` with ``q(z) = 1 - c_0 z - ... - c_k z^(k+1)``.
The caller supplies the roots of ``q``; they are checked, never computed.
``b_n`` is then read off as ``f^(n)(0)/n!``, or from the partial fractions of
``f``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .calculus import PartialFractionDecomposition, partial_fractions, rational_derivative
from .errors import RootsMismatch
from .numeric import ONE, ZERO, FactoredDenominator, GaussianRational, Polynomial, expand_factored

__all__ = [
    "RecurrenceSpec",
    "build_generating_function",
    "closed_form_term",
    "iterate_recurrence",
    "partial_fraction_closed_form",
    "term_from_partial_fractions",
]


@dataclass(frozen=True)
class RecurrenceSpec:
    initials: tuple
    coefficients: tuple
    denominator_roots: FactoredDenominator

    def __init__(self, initials, coefficients, denominator_roots):
        initials = tuple(GaussianRational.coerce(x) for x in initials)
        coefficients = tuple(GaussianRational.coerce(x) for x in coefficients)
        if not coefficients:
            raise ValueError("need at least one recurrence coefficient")
        if len(initials) != len(coefficients):
            raise ValueError("need exactly as many initial values as coefficients")
        if not coefficients[-1]:
            raise ValueError("the last recurrence coefficient must be nonzero")
        object.__setattr__(self, "initials", initials)
        object.__setattr__(self, "coefficients", coefficients)
        object.__setattr__(self, "denominator_roots", denominator_roots)
        self._verify_roots()

    @property
    def k(self):
        return len(self.coefficients) - 1

    def q(self) -> Polynomial:
        return Polynomial([ONE] + [-c for c in self.coefficients])

    @property
    def leading(self) -> GaussianRational:
        """A in q = A * prod (z - a_i)^m_i."""
        return -self.coefficients[-1]

    def _verify_roots(self):
        expanded = expand_factored(self.denominator_roots) * self.leading
        if expanded != self.q():
            raise RootsMismatch(
                f"roots do not expand to q: got {expanded!r}, expected {self.q()!r}"
            )


def build_generating_function(spec: RecurrenceSpec):
    """Return ``(p, q)`` with ``sum b_n z^n = p/q`` near 0."""
    b, c = spec.initials, spec.coefficients
    p = []
    for m in range(spec.k + 1):
        acc = b[m]
        for j in range(m):
            acc = acc - c[j] * b[m - 1 - j]
        p.append(acc)
    return Polynomial(p), spec.q()


def iterate_recurrence(spec: RecurrenceSpec, n: int) -> GaussianRational:
    b = list(spec.initials)
    c = spec.coefficients
    while len(b) <= n:
        acc = ZERO
        for j, cj in enumerate(c):
            acc = acc + cj * b[-1 - j]
        b.append(acc)
    return b[n]


def _monic_numerator(spec):
    p, _ = build_generating_function(spec)
    return p * spec.leading.reciprocal()


def closed_form_term(spec: RecurrenceSpec, n: int) -> GaussianRational:
    """b_n = f^(n)(0)/n! through the Leibniz rule."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n <= spec.k:
        return spec.initials[n]
    p = _monic_numerator(spec)
    return rational_derivative(p, spec.denominator_roots, n, 0) / math.factorial(n)


def partial_fraction_closed_form(spec: RecurrenceSpec) -> PartialFractionDecomposition:
    return partial_fractions(_monic_numerator(spec), spec.denominator_roots)


def term_from_partial_fractions(pf: PartialFractionDecomposition, n: int) -> GaussianRational:
    """Coefficient of z^n in the expansion of ``pf`` about 0.

    ``1/(z - a)^j = (-1)^j a^(-j) (1 - z/a)^(-j)``, whose z^n coefficient is
    ``(-1)^j C(n+j-1, j-1) a^(-n-j)``.
    """
    acc = pf.polynomial_part[n]
    for a, j, c in pf.terms:
        if c:
            term = c * math.comb(n + j - 1, j - 1) * a ** (-n - j)
            acc = acc + (term if j % 2 == 0 else -term)
    return acc
