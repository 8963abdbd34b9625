"""Gaussian integers and Gaussian rationals with exact arithmetic.

Rational numbers are plain :class:`fractions.Fraction` values; a rational
integer ``n`` is the Gaussian integer ``n + 0i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Union

IntLike = Union[int, "GaussianInteger"]


def _round_div(a: int, b: int) -> int:
    """Nearest integer to a/b (b > 0), ties rounded up."""
    return (2 * a + b) // (2 * b)


@dataclass(frozen=True, slots=True)
class GaussianInteger:
    re: int = 0
    im: int = 0

    @staticmethod
    def coerce(value) -> "GaussianInteger":
        if isinstance(value, GaussianInteger):
            return value
        if isinstance(value, int):
            return GaussianInteger(value, 0)
        if isinstance(value, Fraction) and value.denominator == 1:
            return GaussianInteger(value.numerator, 0)
        raise TypeError(f"cannot interpret {value!r} as a Gaussian integer")

    def __add__(self, other):
        if isinstance(other, int):
            return GaussianInteger(self.re + other, self.im)
        if isinstance(other, GaussianInteger):
            return GaussianInteger(self.re + other.re, self.im + other.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussianInteger(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, (int, GaussianInteger)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, int):
            return GaussianInteger(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, int):
            return GaussianInteger(self.re * other, self.im * other)
        if isinstance(other, GaussianInteger):
            return GaussianInteger(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return bool(self.re or self.im)

    def conj(self) -> "GaussianInteger":
        return GaussianInteger(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def is_rational(self) -> bool:
        return self.im == 0

    def __divmod__(self, other):
        """Euclidean division with remainder of norm at most half the divisor's."""
        other = GaussianInteger.coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero Gaussian integer")
        num = self * other.conj()
        n = other.norm()
        q = GaussianInteger(_round_div(num.re, n), _round_div(num.im, n))
        return q, self - q * other

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: IntLike) -> bool:
        """True when self | other in Z[i]."""
        other = GaussianInteger.coerce(other)
        if not self:
            return not other
        num = other * self.conj()
        n = self.norm()
        return num.re % n == 0 and num.im % n == 0

    def exact_div(self, other: IntLike) -> "GaussianInteger":
        other = GaussianInteger.coerce(other)
        num = self * other.conj()
        n = other.norm()
        if n == 0 or num.re % n or num.im % n:
            raise ArithmeticError(f"{other} does not divide {self}")
        return GaussianInteger(num.re // n, num.im // n)

    def __str__(self):
        return format_gaussian(self.re, self.im)


def format_gaussian(re, im) -> str:
    if im == 0:
        return str(re)
    if im == 1:
        imag = "i"
    elif im == -1:
        imag = "-i"
    elif getattr(im, "denominator", 1) == 1:
        imag = f"{im}i"
    else:
        imag = f"{im}*i"
    if re == 0:
        return imag
    if imag.startswith("-"):
        return f"{re}{imag}"
    return f"{re}+{imag}"


ZERO = GaussianInteger(0, 0)
ONE = GaussianInteger(1, 0)
I = GaussianInteger(0, 1)
UNITS = (ONE, I, -ONE, -I)


def canonical_associate(g: GaussianInteger) -> GaussianInteger:
    """The associate u*g with re > 0 and im >= 0 (zero maps to zero)."""
    g = GaussianInteger.coerce(g)
    if not g:
        return g
    for u in UNITS:
        h = u * g
        if h.re > 0 and h.im >= 0:
            return h
    raise AssertionError("unreachable")


def unit_part(g: GaussianInteger) -> GaussianInteger:
    """The unit u with g = u * canonical_associate(g)."""
    c = canonical_associate(g)
    for u in UNITS:
        if u * c == g:
            return u
    raise ValueError("zero has no unit part")


def norm(g: IntLike) -> int:
    return GaussianInteger.coerce(g).norm()


def gaussian_gcd(a: IntLike, b: IntLike) -> GaussianInteger:
    """Canonical generator of the ideal (a, b)."""
    a, b = GaussianInteger.coerce(a), GaussianInteger.coerce(b)
    if a.im == 0 and b.im == 0:
        return GaussianInteger(gcd(a.re, b.re), 0)
    while b:
        a, b = b, a % b
    return canonical_associate(a)


@dataclass(frozen=True, slots=True)
class GaussianRational:
    """An element of Q(i); components are reduced fractions."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        if not isinstance(self.re, Fraction):
            object.__setattr__(self, "re", Fraction(self.re))
        if not isinstance(self.im, Fraction):
            object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def coerce(value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, GaussianInteger):
            return GaussianRational(Fraction(value.re), Fraction(value.im))
        if isinstance(value, (int, Fraction)):
            return GaussianRational(Fraction(value), Fraction(0))
        return NotImplemented

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return GaussianRational(self.re / other, self.im / other)
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __eq__(self, other):
        other = GaussianRational.coerce(other)
        if other is NotImplemented:
            return False
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re or self.im)

    def is_rational(self) -> bool:
        return self.im == 0

    def as_fraction(self) -> Fraction:
        if self.im:
            raise ValueError(f"{self} is not rational")
        return self.re

    def split(self) -> tuple[GaussianInteger, int]:
        """Write self = g / w with g in Z[i], w >= 1 and gcd(g.re, g.im, w) = 1."""
        w = self.re.denominator * self.im.denominator // gcd(
            self.re.denominator, self.im.denominator
        )
        g = GaussianInteger(int(self.re * w), int(self.im * w))
        return g, w

    def __str__(self):
        return format_gaussian(self.re, self.im)


def as_gaussian_rational(value) -> GaussianRational:
    out = GaussianRational.coerce(value)
    if out is NotImplemented:
        raise TypeError(f"cannot interpret {value!r} as an element of Q(i)")
    return out
