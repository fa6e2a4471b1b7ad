"""Exact scalars and dense polynomials over the Gaussian rationals.

Rationals are :class:`fractions.Fraction`; :class:`GaussianRational` pairs two
of them. Everything is immutable, so values can be shared freely.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational as _RationalABC

from .errors import ParseError

__all__ = [
    "GaussianRational",
    "Polynomial",
    "FactoredDenominator",
    "rat_normalize",
    "gr_div",
    "poly_eval",
    "poly_mul",
    "poly_derivative",
    "poly_long_division",
    "expand_factored",
    "binomial",
    "parse_rational",
    "format_rational",
    "parse_scalar",
    "format_scalar",
    "parse_poly",
    "format_poly",
]


def rat_normalize(n, d):
    """Canonical rational n/d: positive denominator, lowest terms."""
    if d == 0:
        raise ZeroDivisionError("division by zero")
    return Fraction(n, d)


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class GaussianRational:
    """Complex number ``re + i*im`` with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    @classmethod
    def _raw(cls, re, im):
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating-point complex values are not exact")
        return cls(x)

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            if not other.im:
                return GaussianRational._raw(self.re + other.re, self.im)
            if not self.im:
                return GaussianRational._raw(self.re + other.re, other.im)
            return GaussianRational._raw(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational._raw(self.re + other, self.im)
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self + other

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            if not other.im:
                return GaussianRational._raw(self.re - other.re, self.im)
            return GaussianRational._raw(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational._raw(self.re - other, self.im)
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self - other

    def __rsub__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return other - self

    def __neg__(self):
        if not self.im:
            return GaussianRational._raw(-self.re, self.im)
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b:
                if not d:
                    return GaussianRational._raw(a * c, b)
                return GaussianRational._raw(a * c, a * d)
            if not d:
                return GaussianRational._raw(a * c, b * c)
            return GaussianRational._raw(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            if not self.im:
                return GaussianRational._raw(self.re * other, self.im)
            return GaussianRational._raw(self.re * other, self.im * other)
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            if not self.im:
                return GaussianRational._raw(self.re / other, self.im)
            return GaussianRational._raw(self.re / other, self.im / other)
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        if not other.im:
            return self / other.re
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return other * self.reciprocal()

    def reciprocal(self):
        a, b = self.re, self.im
        if not b:
            if not a:
                raise ZeroDivisionError("division by zero")
            return GaussianRational._raw(1 / a, b)
        n = a * a + b * b
        return GaussianRational._raw(a / n, -b / n)

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.reciprocal() ** (-k)
        if not self.im:
            return GaussianRational._raw(self.re ** k, self.im)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self):
        return GaussianRational._raw(self.re, -self.im)

    def norm2(self) -> Fraction:
        """Squared modulus (exact)."""
        return self.re * self.re + self.im * self.im

    def modulus_upper(self) -> Fraction:
        """|re| + |im|, a rational upper bound on the modulus."""
        return abs(self.re) + abs(self.im)

    def modulus_lower(self) -> Fraction:
        """max(|re|, |im|), a rational lower bound on the modulus."""
        return max(abs(self.re), abs(self.im))

    # -- comparisons ------------------------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self):
        return not self.im

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, _RationalABC)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}i"


ZERO = GaussianRational._raw(Fraction(0), Fraction(0))
ONE = GaussianRational._raw(Fraction(1), Fraction(0))
I = GaussianRational._raw(Fraction(0), Fraction(1))


def gr_div(a, b) -> GaussianRational:
    a = GaussianRational.coerce(a)
    b = GaussianRational.coerce(b)
    return a / b


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Dense polynomial; ``coeffs[k]`` multiplies ``z**k``.

    Trailing zeros are stripped, so the zero polynomial has no coefficients
    and its degree is ``-inf``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [GaussianRational.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def _raw(cls, cs):
        cs = list(cs)
        while cs and not cs[-1]:
            cs.pop()
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", tuple(cs))
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    def __reduce__(self):
        return (Polynomial, (self.coeffs,))

    @classmethod
    def constant(cls, c):
        return cls((c,))

    @classmethod
    def monomial(cls, k, c=1):
        return cls._raw([ZERO] * k + [GaussianRational.coerce(c)])

    @classmethod
    def linear_factor(cls, a):
        """z - a"""
        return cls._raw([-GaussianRational.coerce(a), ONE])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def is_zero(self):
        return not self.coeffs

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ZERO

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self == Polynomial((other,))

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial([{', '.join(str(c) for c in self.coeffs)}])"

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Polynomial._raw([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return poly_mul(self, other)
        try:
            c = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return Polynomial._raw([x * c for x in self.coeffs])

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = Polynomial._raw([ONE])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        return poly_long_division(self, _as_poly(other))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, z):
        return poly_eval(self, z)

    def derivative(self, t=1):
        return poly_derivative(self, t)

    def antiderivative(self):
        """Termwise integral with zero constant term."""
        return Polynomial._raw([ZERO] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def shift(self, k):
        """Multiply by z**k."""
        if not self.coeffs:
            return self
        return Polynomial._raw([ZERO] * k + list(self.coeffs))


def _as_poly(x):
    if isinstance(x, Polynomial):
        return x
    try:
        return Polynomial((GaussianRational.coerce(x),))
    except TypeError:
        return None


def poly_eval(p: Polynomial, z) -> GaussianRational:
    """Horner evaluation."""
    z = GaussianRational.coerce(z)
    acc = ZERO
    for c in reversed(p.coeffs):
        acc = acc * z + c
    return acc


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    a, b = p.coeffs, q.coeffs
    if not a or not b:
        return Polynomial._raw([])
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return Polynomial._raw(out)


def poly_derivative(p: Polynomial, t: int = 1) -> Polynomial:
    if t < 0:
        raise ValueError("derivative order must be non-negative")
    cs = p.coeffs
    if t >= len(cs):
        return Polynomial._raw([])
    # d^t/dz^t z^k = k!/(k-t)! z^(k-t)
    out = []
    for k in range(t, len(cs)):
        out.append(cs[k] * (math.factorial(k) // math.factorial(k - t)))
    return Polynomial._raw(out)


def poly_long_division(p: Polynomial, q: Polynomial):
    """Return ``(quotient, remainder)`` with ``p = quotient*q + remainder``."""
    if q is None or q.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p.coeffs)
    dq = len(q.coeffs) - 1
    lead_inv = q.coeffs[-1].reciprocal()
    if len(rem) - 1 < dq:
        return Polynomial._raw([]), p
    quot = [ZERO] * (len(rem) - dq)
    for k in range(len(rem) - 1, dq - 1, -1):
        c = rem[k] * lead_inv
        quot[k - dq] = c
        if c:
            for i, qc in enumerate(q.coeffs):
                rem[k - dq + i] = rem[k - dq + i] - c * qc
    return Polynomial._raw(quot), Polynomial._raw(rem[:dq])


def binomial(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise ValueError("binomial arguments must be non-negative")
    if k > n:
        raise ValueError(f"binomial({n}, {k}): k exceeds n")
    return math.comb(n, k)


# ---------------------------------------------------------------------------
# factored denominators


class FactoredDenominator:
    """Monic polynomial stored as ``prod (z - root)**mult`` over distinct roots.

    ``mult`` is the multiplicity; the derivative formulas work with
    ``order = mult - 1`` which :attr:`orders` exposes.
    """

    __slots__ = ("roots", "mults")

    def __init__(self, factors):
        roots, mults = [], []
        for root, mult in factors:
            root = GaussianRational.coerce(root)
            if not isinstance(mult, int) or isinstance(mult, bool) or mult < 1:
                raise ValueError(f"multiplicity must be a positive integer, got {mult!r}")
            if root in roots:
                raise ValueError(f"repeated root {root}")
            roots.append(root)
            mults.append(mult)
        if not roots:
            raise ValueError("a factored denominator needs at least one factor")
        object.__setattr__(self, "roots", tuple(roots))
        object.__setattr__(self, "mults", tuple(mults))

    def __setattr__(self, name, value):
        raise AttributeError("FactoredDenominator is immutable")

    def __reduce__(self):
        return (FactoredDenominator, (list(self.factors),))

    @property
    def factors(self):
        return tuple(zip(self.roots, self.mults))

    @property
    def orders(self):
        return tuple(m - 1 for m in self.mults)

    @property
    def L(self):
        return len(self.roots)

    @property
    def degree(self):
        return sum(self.mults)

    def without(self, i):
        """The denominator with factor ``i`` removed, or None if nothing is left."""
        rest = [f for k, f in enumerate(self.factors) if k != i]
        return FactoredDenominator(rest) if rest else None

    def index(self, root):
        return self.roots.index(GaussianRational.coerce(root))

    def is_pole(self, z):
        return GaussianRational.coerce(z) in self.roots

    def __eq__(self, other):
        if not isinstance(other, FactoredDenominator):
            return NotImplemented
        return self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        inner = ", ".join(f"({r}, {m})" for r, m in self.factors)
        return f"FactoredDenominator([{inner}])"


def expand_factored(d: FactoredDenominator) -> Polynomial:
    out = Polynomial._raw([ONE])
    for root, mult in d.factors:
        out = out * Polynomial.linear_factor(root) ** mult
    return out


# ---------------------------------------------------------------------------
# text encoding

_RAT_RE = re.compile(r"\s*([+-]?)(\d+)(?:/(\d+))?\s*\Z")


def parse_rational(text) -> Fraction:
    """Parse ``"n"`` or ``"n/d"`` with an optional sign. Floats are rejected."""
    if not isinstance(text, str):
        raise ParseError(f"expected a rational string, got {type(text).__name__}")
    norm = text.replace("−", "-")
    m = _RAT_RE.match(norm)
    if m is None:
        pos = _first_bad_position(norm)
        raise ParseError(f"malformed rational {text!r}", position=pos)
    sign, num, den = m.groups()
    n = int(num)
    d = int(den) if den is not None else 1
    if d == 0:
        raise ParseError(f"zero denominator in {text!r}", position=norm.index("/") + 1)
    if sign == "-":
        n = -n
    return Fraction(n, d)


def _first_bad_position(text):
    i = 0
    while i < len(text) and text[i].isspace():
        i += 1
    if i < len(text) and text[i] in "+-":
        i += 1
    seen_digit = seen_slash = False
    while i < len(text):
        ch = text[i]
        if ch.isdigit():
            seen_digit = True
        elif ch == "/" and seen_digit and not seen_slash:
            seen_slash = True
            seen_digit = False
        else:
            break
        i += 1
    return i


def format_rational(q) -> str:
    return str(Fraction(q))


def parse_scalar(obj) -> GaussianRational:
    """Decode ``{"re": .., "im": ..}`` (``im`` optional) or a bare rational string."""
    if isinstance(obj, str):
        return GaussianRational._raw(parse_rational(obj), Fraction(0))
    if isinstance(obj, dict):
        extra = set(obj) - {"re", "im"}
        if extra:
            raise ParseError(f"unexpected keys in scalar: {sorted(extra)}")
        if "re" not in obj:
            raise ParseError("scalar object is missing 're'")
        return GaussianRational._raw(parse_rational(obj["re"]), parse_rational(obj.get("im", "0")))
    raise ParseError(f"expected a scalar string or {{re, im}} object, got {type(obj).__name__}")


def format_scalar(x) -> dict:
    x = GaussianRational.coerce(x)
    return {"re": str(x.re), "im": str(x.im)}


def parse_poly(obj) -> Polynomial:
    if not isinstance(obj, list):
        raise ParseError("polynomial must be a JSON array of scalars")
    return Polynomial([parse_scalar(c) for c in obj])


def format_poly(p: Polynomial) -> list:
    return [format_scalar(c) for c in p.coeffs]

