"""Brute-force ground truth, sharing no code with the closed-form formulas.

Differentiation here uses the quotient rule and nothing else. The results are
deliberately left unreduced; compare them with :meth:`RationalFunctionExpr.equals`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import PoleError
from .numeric import (
    ONE,
    ZERO,
    FactoredDenominator,
    GaussianRational,
    Polynomial,
    expand_factored,
    poly_eval,
)

__all__ = [
    "RationalFunctionExpr",
    "symbolic_derivative",
    "oracle_derivative_at",
    "euler_finite_difference",
    "solve_linear",
    "hermite_by_linear_solve",
]


@dataclass(frozen=True)
class RationalFunctionExpr:
    numerator: Polynomial
    denominator: Polynomial

    def __post_init__(self):
        if self.denominator.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")

    def derivative(self):
        n, d = self.numerator, self.denominator
        return RationalFunctionExpr(n.derivative() * d - n * d.derivative(), d * d)

    def __call__(self, z):
        z = GaussianRational.coerce(z)
        den = poly_eval(self.denominator, z)
        if not den:
            raise PoleError(f"pole: denominator vanishes at z = {z}")
        return poly_eval(self.numerator, z) / den

    def equals(self, other: "RationalFunctionExpr") -> bool:
        """Equality as functions, by cross-multiplication."""
        return self.numerator * other.denominator == other.numerator * self.denominator

    def __add__(self, other):
        return RationalFunctionExpr(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )


def symbolic_derivative(f: RationalFunctionExpr, t: int) -> RationalFunctionExpr:
    if t < 0:
        raise ValueError("derivative order must be non-negative")
    for _ in range(t):
        f = f.derivative()
    return f


def oracle_derivative_at(d: FactoredDenominator, t: int, z) -> GaussianRational:
    z = GaussianRational.coerce(z)
    if d.is_pole(z):
        raise PoleError(f"pole: z = {z} is a root of the denominator")
    f = RationalFunctionExpr(Polynomial([ONE]), expand_factored(d))
    return symbolic_derivative(f, t)(z)


def euler_finite_difference(n: int, p: int) -> int:
    """sum_{j=0..n} (-1)^j C(n, j) j^p, with 0**0 == 1."""
    if not 0 <= p <= n:
        raise ValueError(f"need 0 <= p <= n, got n={n}, p={p}")
    return sum((-1) ** j * math.comb(n, j) * j**p for j in range(n + 1))


def solve_linear(A, b):
    """Exact Gauss-Jordan elimination over the Gaussian rationals."""
    n = len(A)
    M = [[GaussianRational.coerce(x) for x in row] + [GaussianRational.coerce(rhs)] for row, rhs in zip(A, b)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if M[r][col]), None)
        if pivot is None:
            raise ValueError("singular system")
        M[col], M[pivot] = M[pivot], M[col]
        inv = M[col][col].reciprocal()
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def hermite_by_linear_solve(nodes) -> Polynomial:
    """Interpolant from the confluent Vandermonde system.

    ``nodes`` is a sequence of ``(point, [A_0, ..., A_k])``.
    """
    rows, rhs = [], []
    size = sum(len(targets) for _, targets in nodes)
    for point, targets in nodes:
        a = GaussianRational.coerce(point)
        for l, value in enumerate(targets):
            # l-th derivative of z^k at a
            row = []
            for k in range(size):
                if k < l:
                    row.append(ZERO)
                else:
                    row.append(a ** (k - l) * (math.factorial(k) // math.factorial(k - l)))
            rows.append(row)
            rhs.append(value)
    return Polynomial(solve_linear(rows, rhs))
