"""Exact Gaussian rationals: the field Q(i).

Real and imaginary parts are :class:`fractions.Fraction`, which already keeps
numerator and denominator reduced with a positive denominator.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC

from .errors import DivisionByZero, OverflowToFloat

__all__ = ["GaussianRational", "GR", "parse_scalar", "scalar_arith", "to_complex_float"]

_RAT = r"[+-]?\d+(?:/\d+)?"
_REAL_RE = re.compile(rf"^({_RAT})$")
_COMPLEX_RE = re.compile(rf"^({_RAT})([+-])(\d+(?:/\d+)?)\*i$")
_IMAG_RE = re.compile(rf"^({_RAT})?\*?i$")


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def _fmt_rat(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class GaussianRational:
    """Immutable exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> GaussianRational:
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    @staticmethod
    def coerce(value) -> GaussianRational:
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            raise TypeError("floating-point complex values are not exact; use GaussianRational")
        if isinstance(value, str):
            return parse_scalar(value)
        return GaussianRational._raw(_frac(value), Fraction(0))

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self):
        return not self.is_zero()

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational._raw(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational._raw(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational._raw(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational._raw(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational._raw(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return GaussianRational._raw(a * c, b)
            return GaussianRational._raw(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return GaussianRational._raw(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> GaussianRational:
        return GaussianRational._raw(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus ``re**2 + im**2``."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> GaussianRational:
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        n = self.norm()
        return GaussianRational._raw(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise DivisionByZero("division by zero")
            return GaussianRational._raw(self.re / other, self.im / other)
        if isinstance(other, GaussianRational):
            if other.is_zero():
                raise DivisionByZero("division by zero")
            if not other.im:
                return GaussianRational._raw(self.re / other.re, self.im / other.re)
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational.coerce(other) / self
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = GaussianRational._raw(Fraction(1), Fraction(0))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(self.re) if not self.im else hash((self.re, self.im))
            object.__setattr__(self, "_hash", h)
        return h

    # -- conversion -------------------------------------------------------

    def __complex__(self):
        return to_complex_float(self)

    def __str__(self):
        if not self.im:
            return _fmt_rat(self.re)
        sign = "-" if self.im < 0 else "+"
        return f"{_fmt_rat(self.re)}{sign}{_fmt_rat(abs(self.im))}*i"

    def __repr__(self):
        return f"GaussianRational({str(self)!r})"


GR = GaussianRational

ZERO = GaussianRational(0)
ONE = GaussianRational(1)


def parse_scalar(text: str) -> GaussianRational:
    """Parse the canonical textual form (``"a/b"`` or ``"a/b+c/d*i"``).

    A bare imaginary part (``"i"``, ``"-3/2*i"``) is also accepted.
    """
    s = text.strip().replace(" ", "")
    m = _REAL_RE.match(s)
    if m:
        return GaussianRational(Fraction(m.group(1)))
    m = _COMPLEX_RE.match(s)
    if m:
        im = Fraction(m.group(3))
        return GaussianRational(Fraction(m.group(1)), -im if m.group(2) == "-" else im)
    m = _IMAG_RE.match(s)
    if m:
        coeff = m.group(1)
        if coeff in (None, "", "+"):
            im = Fraction(1)
        elif coeff == "-":
            im = Fraction(-1)
        else:
            im = Fraction(coeff)
        return GaussianRational(0, im)
    raise ValueError(f"not a Gaussian rational: {text!r}")


def scalar_arith(x: GaussianRational, y: GaussianRational, op: str) -> GaussianRational:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def to_complex_float(x: GaussianRational) -> complex:
    """Nearest double-precision complex value (componentwise correct rounding)."""
    try:
        return complex(float(x.re), float(x.im))
    except OverflowError as exc:
        raise OverflowToFloat(f"{x} exceeds double range") from exc
