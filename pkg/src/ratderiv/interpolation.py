"""General Hermite interpolation.

Given distinct nodes ``a_i`` and targets ``A_0..A_{n_i}`` for each, the
unique polynomial of degree ``<= sum(n_i) + L - 1`` with ``p^(l)(a_i) = A_l``
is ``sum_i sum_l Q_{i,l} A_l`` where::

    Q_{i,l}(z) = p_i(z) (z - a_i)^l / l!  sum_{t=0}^{n_i - l} g_i^(t)(a_i)/t! (z - a_i)^t

with ``p_i`` the product of the other node factors ``(z - a_k)^(n_k + 1)``
and ``g_i = 1/p_i``. The ``g_i^(t)(a_i)`` values come from the closed-form
reciprocal derivatives.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .numeric import ONE, ZERO, FactoredDenominator, GaussianRational, Polynomial, expand_factored
from .reciprocal import derivative as reciprocal_derivative

__all__ = ["HermiteSpec", "lagrange_basis", "spitzbart_Q", "hermite_interpolate", "hermite_phi_psi"]


def _check_distinct(points):
    seen = set()
    for a in points:
        if a in seen:
            raise ValueError(f"duplicate interpolation point {a}")
        seen.add(a)


@dataclass(frozen=True)
class HermiteSpec:
    nodes: tuple

    def __init__(self, nodes):
        norm = []
        for point, targets in nodes:
            targets = tuple(GaussianRational.coerce(x) for x in targets)
            if not targets:
                raise ValueError("each node needs at least one target value")
            norm.append((GaussianRational.coerce(point), targets))
        _check_distinct([a for a, _ in norm])
        object.__setattr__(self, "nodes", tuple(norm))

    @property
    def points(self):
        return [a for a, _ in self.nodes]

    @property
    def orders(self):
        """n_i, i.e. one less than the number of targets at node i."""
        return [len(ts) - 1 for _, ts in self.nodes]

    @property
    def max_degree(self):
        return sum(self.orders) + len(self.nodes) - 1

    def denominator(self) -> FactoredDenominator:
        return FactoredDenominator([(a, len(ts)) for a, ts in self.nodes])


def lagrange_basis(points, i) -> Polynomial:
    points = [GaussianRational.coerce(a) for a in points]
    _check_distinct(points)
    ai = points[i]
    out = Polynomial([ONE])
    scale = ONE
    for j, aj in enumerate(points):
        if j != i:
            out = out * Polynomial.linear_factor(aj)
            scale = scale * (ai - aj)
    return out * scale.reciprocal()


def spitzbart_Q(spec: HermiteSpec, i: int, l: int) -> Polynomial:
    n_i = spec.orders[i]
    if not 0 <= l <= n_i:
        raise ValueError(f"order l={l} out of range 0..{n_i} for node {i}")
    a = spec.points[i]
    rest = spec.denominator().without(i)
    if rest is None:
        p_i = Polynomial([ONE])
        g = [ONE] + [ZERO] * n_i
    else:
        p_i = expand_factored(rest)
        g = [reciprocal_derivative(rest, t, a) for t in range(n_i - l + 1)]
    shift = Polynomial.linear_factor(a)
    taylor = Polynomial([])
    power = Polynomial([ONE])
    for t in range(n_i - l + 1):
        taylor = taylor + power * (g[t] / math.factorial(t))
        power = power * shift
    return p_i * shift**l * taylor * Fraction(1, math.factorial(l))


def hermite_interpolate(spec: HermiteSpec) -> Polynomial:
    out = Polynomial([])
    for i, (_, targets) in enumerate(spec.nodes):
        for l, value in enumerate(targets):
            if value:
                out = out + spitzbart_Q(spec, i, l) * value
    return out


def hermite_phi_psi(points, i):
    """Classical first-derivative Hermite basis pair ``(phi_i, psi_i)``.

    ``phi_i`` has value 1 and slope 0 at ``a_i``; ``psi_i`` value 0 and slope 1;
    both vanish to second order at the other points.
    """
    points = [GaussianRational.coerce(a) for a in points]
    l_i = lagrange_basis(points, i)
    a = points[i]
    slope = l_i.derivative()(a)
    shift = Polynomial.linear_factor(a)
    l2 = l_i * l_i
    phi = (Polynomial([ONE]) - shift * (2 * slope)) * l2
    psi = shift * l2
    return phi, psi
