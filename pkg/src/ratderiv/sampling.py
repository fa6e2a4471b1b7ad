"""Seeded random instances for self-tests and property checks."""
from __future__ import annotations

import random
from fractions import Fraction

from .numeric import FactoredDenominator, GaussianRational, Polynomial


def random_rational(rng: random.Random, num=6, den=4) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_scalar(rng: random.Random, num=6, den=4, real_prob=0.3) -> GaussianRational:
    re = random_rational(rng, num, den)
    if rng.random() < real_prob:
        return GaussianRational(re)
    return GaussianRational(re, random_rational(rng, num, den))


def random_distinct_scalars(rng, k, **kw):
    out = []
    while len(out) < k:
        x = random_scalar(rng, **kw)
        if x not in out:
            out.append(x)
    return out


def random_denominator(rng, max_factors=3, max_mult=3, **kw) -> FactoredDenominator:
    L = rng.randint(1, max_factors)
    roots = random_distinct_scalars(rng, L, **kw)
    return FactoredDenominator([(a, rng.randint(1, max_mult)) for a in roots])


def random_point_off(rng, d: FactoredDenominator, **kw) -> GaussianRational:
    while True:
        z = random_scalar(rng, **kw)
        if not d.is_pole(z):
            return z


def random_poly(rng, degree, **kw) -> Polynomial:
    return Polynomial([random_scalar(rng, **kw) for _ in range(degree + 1)])


def random_derivative_case(rng, max_factors=3, max_mult=3, max_t=4):
    d = random_denominator(rng, max_factors, max_mult)
    z = random_point_off(rng, d)
    t = rng.randint(0, max_t)
    return d, t, z
