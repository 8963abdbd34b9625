"""Long Weierstrass curves over Q and Q(i) with exact affine arithmetic.

The group law is written once over any field whose elements support
``+ - * /`` and ``==`` with ints mixed in; the same functions serve the
exact curves here and the reduced curves in :mod:`cmeds.reduction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Literal, Sequence

from .numberfield import (
    ONE,
    FactoredIdeal,
    GaussianIdeal,
    GaussianInteger,
    GaussianRational,
    Order,
    PreconditionError,
    check_order,
    factor_ideal,
    gaussian_gcd,
    ideal,
)
from .numberfield.factor import RHO_ITERATIONS, TRIAL_BOUND, factor_gaussian, factor_integer

Field = Literal["Q", "Qi"]

TORSION_SEARCH_NORM = 144


@dataclass(frozen=True, slots=True)
class CurvePoint:
    """An affine point (x, y), or the point at infinity when both are None."""

    x: object = None
    y: object = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self):
        return "O" if self.is_infinity else f"({self.x}, {self.y})"


INFINITY = CurvePoint()


# --- field-generic group law -------------------------------------------------


def on_curve(a: Sequence, R: CurvePoint) -> bool:
    if R.is_infinity:
        return True
    a1, a2, a3, a4, a6 = a
    x, y = R.x, R.y
    return y * y + a1 * x * y + a3 * y == x * x * x + a2 * x * x + a4 * x + a6


def group_neg(a: Sequence, R: CurvePoint) -> CurvePoint:
    if R.is_infinity:
        return R
    a1, _, a3, _, _ = a
    return CurvePoint(R.x, -R.y - a1 * R.x - a3)


def group_add(a: Sequence, R1: CurvePoint, R2: CurvePoint) -> CurvePoint:
    if R1.is_infinity:
        return R2
    if R2.is_infinity:
        return R1
    a1, a2, a3, a4, a6 = a
    x1, y1, x2, y2 = R1.x, R1.y, R2.x, R2.y
    if x1 == x2:
        denom = y1 + y2 + a1 * x2 + a3
        if denom == 0:
            return INFINITY
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / denom
        nu = (-x1 * x1 * x1 + a4 * x1 + 2 * a6 - a3 * y1) / denom
    else:
        dx = x2 - x1
        lam = (y2 - y1) / dx
        nu = (y1 * x2 - y2 * x1) / dx
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return CurvePoint(x3, y3)


def group_mul(a: Sequence, n: int, R: CurvePoint) -> CurvePoint:
    if n < 0:
        return group_mul(a, -n, group_neg(a, R))
    result = INFINITY
    while n:
        if n & 1:
            result = group_add(a, result, R)
        n >>= 1
        if n:
            R = group_add(a, R, R)
    return result


def b_invariants(a: Sequence):
    a1, a2, a3, a4, a6 = a
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return b2, b4, b6, b8


def discriminant_of(a: Sequence):
    b2, b4, b6, b8 = b_invariants(a)
    return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6


# --- curves over Q and Q(i) ---------------------------------------------------


def _to_field(value, field: Field):
    if field == "Q":
        if isinstance(value, GaussianRational):
            return value.as_fraction()
        if isinstance(value, GaussianInteger):
            if value.im:
                raise ValueError(f"{value} is not rational")
            return Fraction(value.re)
        return Fraction(value)
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, GaussianInteger):
        return GaussianRational(value.re, value.im)
    return GaussianRational(Fraction(value))


def _is_integral(v) -> bool:
    if isinstance(v, Fraction):
        return v.denominator == 1
    return v.re.denominator == 1 and v.im.denominator == 1


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with integral coefficients.

    ``cm`` marks the family y^2 = x^3 + d x over Q(i), where i acts as
    (x, y) -> (-x, i y).
    """

    a1: object
    a2: object
    a3: object
    a4: object
    a6: object
    field: Field = "Q"
    cm: bool = False

    def __post_init__(self):
        if self.field not in ("Q", "Qi"):
            raise ValueError(f"unknown field {self.field!r}")
        for name in ("a1", "a2", "a3", "a4", "a6"):
            v = _to_field(getattr(self, name), self.field)
            if not _is_integral(v):
                raise ValueError(f"coefficient {name}={v} is not integral")
            object.__setattr__(self, name, v)
        if self.discriminant() == 0:
            raise ValueError("singular curve: discriminant is zero")
        if self.cm:
            if self.field != "Qi":
                raise ValueError("the CM action needs the field Q(i)")
            if any(getattr(self, n) != 0 for n in ("a1", "a2", "a3", "a6")):
                raise ValueError("CM curves must have the shape y^2 = x^3 + d x")

    @classmethod
    def from_coefficients(cls, coeffs: Sequence, field: Field = "Q", cm: bool = False):
        return cls(*coeffs, field=field, cm=cm)

    @property
    def a(self) -> tuple:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def element(self, value):
        return _to_field(value, self.field)

    def point(self, x, y) -> CurvePoint:
        R = CurvePoint(self.element(x), self.element(y))
        if not on_curve(self.a, R):
            raise ValueError(f"point {R} is not on the curve")
        return R

    def contains(self, R: CurvePoint) -> bool:
        return on_curve(self.a, R)

    def discriminant(self):
        return discriminant_of(self.a)

    def discriminant_integer(self) -> GaussianInteger:
        d = self.discriminant()
        if isinstance(d, Fraction):
            return GaussianInteger(d.numerator, 0)
        return GaussianInteger(d.re.numerator, d.im.numerator)

    def _check(self, *points: CurvePoint) -> None:
        for R in points:
            if not on_curve(self.a, R):
                raise ValueError(f"point {R} is not on the curve")

    def add(self, R1: CurvePoint, R2: CurvePoint) -> CurvePoint:
        self._check(R1, R2)
        return group_add(self.a, R1, R2)

    def neg(self, R: CurvePoint) -> CurvePoint:
        return group_neg(self.a, R)

    def sub(self, R1: CurvePoint, R2: CurvePoint) -> CurvePoint:
        return group_add(self.a, R1, group_neg(self.a, R2))

    def mul(self, n: int, R: CurvePoint) -> CurvePoint:
        return group_mul(self.a, n, R)

    def multiples(self, R: CurvePoint, n: int) -> list[CurvePoint]:
        """[0R, 1R, ..., nR] by repeated addition."""
        out = [INFINITY]
        for _ in range(n):
            out.append(group_add(self.a, out[-1], R))
        return out

    def i_action(self, R: CurvePoint) -> CurvePoint:
        if not self.cm:
            raise PreconditionError("curve has no Z[i] action")
        if R.is_infinity:
            return R
        return CurvePoint(-R.x, GaussianRational(0, 1) * R.y)

    def __str__(self):
        terms = "[" + ",".join(str(c) for c in self.a) + "]"
        return f"E{terms} over {self.field}" + (" (CM by Z[i])" if self.cm else "")


def add(E: WeierstrassCurve, R1: CurvePoint, R2: CurvePoint) -> CurvePoint:
    return E.add(R1, R2)


def apply_endo(E: WeierstrassCurve, alpha, R: CurvePoint) -> CurvePoint:
    """alpha(R) = re(alpha) R + im(alpha) [i]R."""
    alpha = GaussianInteger.coerce(alpha)
    if alpha.im == 0:
        return E.mul(alpha.re, R)
    if not E.cm:
        raise PreconditionError(f"{alpha} is not an endomorphism of a curve without CM")
    return group_add(E.a, E.mul(alpha.re, R), E.i_action(E.mul(alpha.im, R)))


# --- torsion --------------------------------------------------------------------


class TorsionInconclusive(RuntimeError):
    """Neither torsion detector could decide."""


class _NonTorsion:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NON_TORSION"

    __str__ = __repr__


NON_TORSION = _NonTorsion()


def integer_order(a: Sequence, R: CurvePoint, limit: int) -> int | None:
    """Smallest n in [1, limit] with nR = O, or None."""
    S = R
    for n in range(1, limit + 1):
        if S.is_infinity:
            return n
        S = group_add(a, S, R)
    return None


def annihilator_from_order(
    m: int, kills: Callable[[GaussianInteger], bool], order: Order
) -> GaussianIdeal:
    """Generator of {alpha : alpha R = O} given the additive order m of R.

    In a PID the annihilator is (g) with g | m, so stripping primes from m
    while the quotient still kills R lands exactly on g.
    """
    if order == "Z" or m == 1:
        return ideal(m)
    _, factors = factor_gaussian(GaussianInteger(m, 0))
    g = GaussianInteger(m, 0)
    for pi, e in factors:
        for _ in range(e):
            candidate = g.exact_div(pi)
            if kills(candidate):
                g = candidate
            else:
                break
    return ideal(g)


def torsion_annihilator(
    E: WeierstrassCurve, Q: CurvePoint, order: Order = "Z"
) -> GaussianIdeal | _NonTorsion:
    """The ideal {s in O : sQ = O}, or NON_TORSION.

    Two detectors run: a search for killing multiples, and the canonical
    height against a fixed threshold. Disagreement is an error.
    """
    from .heights import TORSION_THRESHOLD, canonical_height

    order = check_order(order)
    if order == "Zi" and not E.cm:
        raise PreconditionError("order Z[i] needs a CM curve")
    E._check(Q)
    if Q.is_infinity:
        return ideal(ONE)
    small = int(TORSION_SEARCH_NORM**0.5)
    m = integer_order(E.a, Q, small)
    h = canonical_height(E, Q)
    if m is None and h.value < TORSION_THRESHOLD:
        m = integer_order(E.a, Q, TORSION_SEARCH_NORM)
        if m is None:
            raise TorsionInconclusive(
                f"height {h.value:.3g} is below threshold but no multiple up to "
                f"{TORSION_SEARCH_NORM} kills {Q}"
            )
    if m is None:
        return NON_TORSION
    if h.value >= TORSION_THRESHOLD:
        raise TorsionInconclusive(f"{m}Q = O but the canonical height is {h.value}")
    return annihilator_from_order(
        m, lambda g: apply_endo(E, g, Q).is_infinity, order
    )


# --- denominators -----------------------------------------------------------------


class _ZeroTerm:
    """Marker for B = 0, the term where alpha(P) + Q is the identity."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO_TERM"

    def __str__(self):
        return "0"


ZERO_TERM = _ZeroTerm()


def x_denominator(E: WeierstrassCurve, R: CurvePoint) -> GaussianInteger:
    """A generator of the denominator ideal of x(R) (canonical form)."""
    if R.is_infinity:
        raise PreconditionError("the point at infinity has no x-coordinate")
    x = R.x
    if isinstance(x, Fraction):
        return GaussianInteger(x.denominator, 0)
    g, w = x.split()
    return GaussianInteger.coerce(w).exact_div(gaussian_gcd(g, w)) if g else ONE


def x_denominator_ideal(
    E: WeierstrassCurve,
    R: CurvePoint,
    trial_bound: int = TRIAL_BOUND,
    rho_iterations: int | None = None,
) -> FactoredIdeal:
    """Factored denominator ideal of x(R) in O_K (Z over Q, Z[i] over Q(i))."""
    d = x_denominator(E, R)
    return factor_ideal(d, "Z" if E.field == "Q" else "Zi", trial_bound, rho_iterations)


def shifted_point(E: WeierstrassCurve, P: CurvePoint, Q: CurvePoint, alpha) -> CurvePoint:
    return group_add(E.a, apply_endo(E, alpha, P), Q)


def shifted_term(
    E: WeierstrassCurve,
    P: CurvePoint,
    Q: CurvePoint,
    alpha,
    trial_bound: int = TRIAL_BOUND,
    rho_iterations: int | None = RHO_ITERATIONS,
):
    """B_alpha(P, Q): the denominator ideal of x(alpha(P) + Q), or ZERO_TERM."""
    E._check(P, Q)
    R = shifted_point(E, P, Q, alpha)
    if R.is_infinity:
        return ZERO_TERM
    return x_denominator_ideal(E, R, trial_bound, rho_iterations)


__all__ = [
    "CurvePoint",
    "INFINITY",
    "NON_TORSION",
    "ZERO_TERM",
    "TorsionInconclusive",
    "WeierstrassCurve",
    "add",
    "annihilator_from_order",
    "apply_endo",
    "b_invariants",
    "discriminant_of",
    "factor_integer",
    "group_add",
    "group_mul",
    "group_neg",
    "integer_order",
    "on_curve",
    "shifted_point",
    "shifted_term",
    "torsion_annihilator",
    "x_denominator",
    "x_denominator_ideal",
]
