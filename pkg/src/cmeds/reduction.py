"""Reduction modulo primes of O_K, residue-field arithmetic, annihilators, bad places.

Residue fields are F_p, or F_{p^2} = F_p[t]/(t^2 + 1) at an inert prime of
Z[i]. At a split prime a + bi the image of i is -a/b mod p; at 1 + i it is 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .curve import (
    INFINITY,
    CurvePoint,
    WeierstrassCurve,
    annihilator_from_order,
    discriminant_of,
    group_add,
    group_mul,
    group_neg,
    on_curve,
)
from .numberfield import (
    UNIT_IDEAL,
    GaussianIdeal,
    GaussianInteger,
    GaussianRational,
    Order,
    PreconditionError,
    check_order,
    factor_gaussian,
    factor_integer,
    gaussian_primes_over,
    gaussian_valuation,
    ideal,
    is_prime,
    primes_up_to,
)


class BadReduction(ValueError):
    """The curve has bad reduction at the requested prime."""


# --- valuations -------------------------------------------------------------------


def _prime_generator(pi) -> GaussianInteger:
    return pi.generator if isinstance(pi, GaussianIdeal) else GaussianIdeal(GaussianInteger.coerce(pi)).generator


def valuation(x, pi) -> int:
    """nu_pi(x) for nonzero x in Q or Q(i)."""
    g_pi = _prime_generator(pi)
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        if x == 0:
            raise ValueError("valuation of zero")
        if g_pi.im == 0:
            p = g_pi.re
            return _int_val(x.numerator, p) - _int_val(x.denominator, p)
        x = GaussianRational(x)
    elif isinstance(x, GaussianInteger):
        x = GaussianRational(x.re, x.im)
    if not x:
        raise ValueError("valuation of zero")
    g, w = x.split()
    return gaussian_valuation(g, g_pi) - gaussian_valuation(GaussianInteger(w, 0), g_pi)


def _int_val(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# --- residue fields ------------------------------------------------------------------


@dataclass(frozen=True)
class ResidueField:
    """O_K / pi, with ``i_image`` the residue of i (None over Q; the generator t when inert)."""

    prime: GaussianIdeal
    p: int
    degree: int
    i_image: int | None

    @property
    def size(self) -> int:
        return self.p**self.degree

    def __call__(self, a: int, b: int = 0) -> "FFElement":
        return FFElement(self, a % self.p, b % self.p)

    def i(self) -> "FFElement":
        if self.degree == 2:
            return self(0, 1)
        if self.i_image is None:
            raise PreconditionError("the residue field of a rational prime has no image of i")
        return self(self.i_image)

    def _reduce_gaussian(self, g: GaussianInteger) -> "FFElement":
        if self.degree == 2:
            return self(g.re, g.im)
        if g.im and self.i_image is None:
            raise PreconditionError(f"{g} is not rational")
        return self(g.re + g.im * (self.i_image or 0))

    def reduce(self, x) -> "FFElement":
        """Image of a pi-integral element of K; ValueError if pi divides the denominator."""
        if isinstance(x, FFElement):
            return x
        if isinstance(x, int):
            return self(x)
        if isinstance(x, Fraction):
            # a reduced fraction is pi-integral iff p does not divide its denominator
            if x.denominator % self.p == 0:
                raise ValueError(f"{x} is not integral at {self.prime}")
            return self(x.numerator) / self(x.denominator)
        x = GaussianRational.coerce(x)
        g, w = x.split()
        pi = self.prime.generator
        wg = GaussianInteger(w, 0)
        k = gaussian_valuation(wg, pi)
        if k:
            # strip pi^k from both sides before inverting
            pk = pi**k
            try:
                g = g.exact_div(pk)
            except ArithmeticError:
                raise ValueError(f"{x} is not integral at {self.prime}") from None
            wg = wg.exact_div(pk)
        return self._reduce_gaussian(g) / self._reduce_gaussian(wg)

    def __str__(self):
        return f"F_{self.p}" + ("^2" if self.degree == 2 else "")


@lru_cache(maxsize=4096)
def residue_field(pi: GaussianIdeal, field: str) -> ResidueField:
    """The residue field of a prime ideal of Z (field "Q") or Z[i] (field "Qi")."""
    g = pi.generator
    if field == "Q":
        if g.im or not is_prime(g.re):
            raise PreconditionError(f"{pi} is not a prime of Z")
        return ResidueField(pi, g.re, 1, None)
    n = g.norm()
    if g.im == 0:
        p = g.re
        if not is_prime(p) or p % 4 != 3:
            raise PreconditionError(f"{pi} is not a prime of Z[i]")
        return ResidueField(pi, p, 2, None)
    if not is_prime(n):
        raise PreconditionError(f"{pi} is not a prime of Z[i]")
    if n == 2:
        return ResidueField(pi, 2, 1, 1)
    # a + b i = 0 mod pi, so i = -a / b
    return ResidueField(pi, n, 1, (-g.re * pow(g.im, -1, n)) % n)


@dataclass(frozen=True, slots=True)
class FFElement:
    """An element a + b t of a residue field (b = 0 in degree 1)."""

    field: ResidueField
    a: int
    b: int = 0

    def _lift(self, other) -> "FFElement | None":
        if isinstance(other, FFElement):
            return other
        if isinstance(other, int):
            return FFElement(self.field, other % self.field.p, 0)
        if isinstance(other, (Fraction, GaussianRational, GaussianInteger)):
            return self.field.reduce(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FFElement(self.field, (self.a + o.a) % p, (self.b + o.b) % p)

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FFElement(self.field, -self.a % p, -self.b % p)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            p = self.field.p
            return FFElement(self.field, self.a * other % p, self.b * other % p)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        if self.b == 0 and o.b == 0:
            return FFElement(self.field, self.a * o.a % p, 0)
        return FFElement(
            self.field, (self.a * o.a - self.b * o.b) % p, (self.a * o.b + self.b * o.a) % p
        )

    __rmul__ = __mul__

    def inverse(self) -> "FFElement":
        p = self.field.p
        if self.b == 0:
            if self.a == 0:
                raise ZeroDivisionError("inverse of zero in a residue field")
            return FFElement(self.field, pow(self.a, -1, p), 0)
        # (a + bt)^-1 = (a - bt) / (a^2 + b^2) since t^2 = -1
        n = (self.a * self.a + self.b * self.b) % p
        if n == 0:
            raise ZeroDivisionError("inverse of zero in a residue field")
        inv = pow(n, -1, p)
        return FFElement(self.field, self.a * inv % p, -self.b * inv % p)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, FFElement):
            return self.a == other.a and self.b == other.b and self.field.p == other.field.p
        if isinstance(other, int):
            return self.b == 0 and self.a == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a or self.b)

    def __str__(self):
        if self.field.degree == 1:
            return str(self.a)
        return f"{self.a}+{self.b}t"


# --- reduced curves ----------------------------------------------------------------


@dataclass(frozen=True)
class ReducedCurve:
    """A curve reduced at a prime of good reduction."""

    source: WeierstrassCurve
    residue: ResidueField
    a: tuple

    @property
    def prime(self) -> GaussianIdeal:
        return self.residue.prime

    def reduce_point(self, R: CurvePoint) -> CurvePoint:
        if R.is_infinity or valuation(R.x, self.prime) < 0:
            return INFINITY
        return CurvePoint(self.residue.reduce(R.x), self.residue.reduce(R.y))

    def add(self, R1: CurvePoint, R2: CurvePoint) -> CurvePoint:
        return group_add(self.a, R1, R2)

    def neg(self, R: CurvePoint) -> CurvePoint:
        return group_neg(self.a, R)

    def mul(self, n: int, R: CurvePoint) -> CurvePoint:
        return group_mul(self.a, n, R)

    def contains(self, R: CurvePoint) -> bool:
        return on_curve(self.a, R)

    def i_action(self, R: CurvePoint) -> CurvePoint:
        if not self.source.cm:
            raise PreconditionError("curve has no Z[i] action")
        if R.is_infinity:
            return R
        return CurvePoint(-R.x, self.residue.i() * R.y)

    def endo(self, gamma, R: CurvePoint) -> CurvePoint:
        gamma = GaussianInteger.coerce(gamma)
        out = self.mul(gamma.re, R)
        if gamma.im:
            out = self.add(out, self.i_action(self.mul(gamma.im, R)))
        return out

    def point_order(self, R: CurvePoint, multiple: int | None = None) -> int:
        """Additive order of a reduced point.

        A known multiple (for instance a torsion order) skips the search;
        otherwise baby-step giant-step over the Hasse interval finds one.
        """
        if R.is_infinity:
            return 1
        if multiple is None:
            multiple = self._killing_multiple(R)
        elif not self.mul(multiple, R).is_infinity:
            raise ValueError(f"{multiple} does not kill {R}")
        n = multiple
        for p, _ in factor_integer(n):
            while n % p == 0 and self.mul(n // p, R).is_infinity:
                n //= p
        return n

    def _killing_multiple(self, R: CurvePoint) -> int:
        q = self.residue.size
        lo = q + 1 - 2 * isqrt(q) - 2
        hi = q + 1 + 2 * isqrt(q) + 2
        lo = max(lo, 1)
        if hi <= 64:
            S = R
            for n in range(1, hi + 1):
                if S.is_infinity:
                    return n
                S = self.add(S, R)
            raise AssertionError("no killing multiple inside the Hasse interval")
        m = isqrt(hi - lo) + 1
        baby: dict[CurvePoint, int] = {}
        S = INFINITY
        for j in range(m + 1):
            baby.setdefault(S, j)
            S = self.add(S, R)
        step = self.mul(m, R)
        T = self.mul(lo, R)
        for k in range(m + 2):
            base = lo + k * m
            if T in baby and base - baby[T] > 0:
                return base - baby[T]
            negT = self.neg(T)
            if negT in baby:
                return base + baby[negT]
            T = self.add(T, step)
        raise AssertionError("baby-step giant-step found no killing multiple")

    def __str__(self):
        return f"E mod {self.prime}"


def reduce_curve(E: WeierstrassCurve, pi) -> ReducedCurve:
    """Reduce E at pi; BadReduction when pi divides the discriminant."""
    pi = pi if isinstance(pi, GaussianIdeal) else ideal(pi)
    F = residue_field(pi, E.field)
    try:
        a = tuple(F.reduce(c) for c in E.a)
    except ValueError as exc:
        raise BadReduction(str(exc)) from None
    if discriminant_of(a) == 0:
        raise BadReduction(f"{E} has bad reduction at {pi}")
    return ReducedCurve(E, F, a)


def is_zero_mod(E: WeierstrassCurve, R: CurvePoint, pi) -> bool:
    """R = O mod pi, i.e. R is infinity or nu_pi(x(R)) < 0."""
    Er = reduce_curve(E, pi)
    return Er.reduce_point(R).is_infinity


def default_order(E: WeierstrassCurve) -> Order:
    return "Zi" if E.cm else "Z"


def ann_ideal(
    E: WeierstrassCurve,
    pi,
    R: CurvePoint,
    order: Order | None = None,
    multiple: int | None = None,
    reduced: ReducedCurve | None = None,
) -> GaussianIdeal:
    """{alpha in O : alpha(R) = O mod pi} as a canonical principal ideal."""
    order = check_order(order or default_order(E))
    if order == "Zi" and not E.cm:
        raise PreconditionError("order Z[i] needs a CM curve")
    Er = reduced or reduce_curve(E, pi)
    Rr = Er.reduce_point(R)
    if Rr.is_infinity:
        return UNIT_IDEAL
    m = Er.point_order(Rr, multiple)
    return annihilator_from_order(m, lambda g: Er.endo(g, Rr).is_infinity, order)


# --- bad places ----------------------------------------------------------------------

BAD_REDUCTION = "bad-reduction"
TORSION_NORM = "divides-torsion-norm"
RAMIFIED = "ramified"
TORSION_INJECTIVITY = "torsion-injectivity"


@dataclass(frozen=True)
class BadPlaceSet:
    """Finite places excluded from good-prime arguments, each with its reasons.

    Torsion injectivity is tested directly only for primes of norm up to
    ``prime_cap``; :func:`is_good_prime` decides any single prime.
    """

    entries: tuple[tuple[GaussianIdeal, frozenset[str]], ...]
    prime_cap: int
    field: str = "Q"

    def __contains__(self, pi) -> bool:
        pi = pi if isinstance(pi, GaussianIdeal) else ideal(pi)
        return any(p == pi for p, _ in self.entries)

    def reasons(self, pi) -> frozenset[str]:
        pi = pi if isinstance(pi, GaussianIdeal) else ideal(pi)
        for p, r in self.entries:
            if p == pi:
                return r
        return frozenset()

    @property
    def primes(self) -> list[GaussianIdeal]:
        return [p for p, _ in self.entries]

    def __str__(self):
        return ", ".join(f"{p}[{'/'.join(sorted(r))}]" for p, r in self.entries)


def primes_of_field(field: str, bound: int) -> list[GaussianIdeal]:
    """Prime ideals of O_K of norm at most ``bound``, sorted by norm."""
    out = []
    for p in primes_up_to(bound):
        if field == "Q":
            out.append(ideal(p))
            continue
        for pi in gaussian_primes_over(p):
            if pi.norm() <= bound:
                out.append(GaussianIdeal(pi))
    out.sort(key=lambda P: (P.generator.norm(), P.generator.re, P.generator.im))
    return out


def primes_above(field: str, p: int) -> list[GaussianIdeal]:
    if field == "Q":
        return [ideal(p)]
    return [GaussianIdeal(pi) for pi in gaussian_primes_over(p)]


def _discriminant_primes(E: WeierstrassCurve) -> list[GaussianIdeal]:
    d = E.discriminant_integer()
    if E.field == "Q":
        return [ideal(p) for p, _ in factor_integer(abs(d.re))]
    _, pairs = factor_gaussian(d)
    return [GaussianIdeal(pi) for pi, _ in pairs]


def _torsion_multiple(s: GaussianIdeal) -> int:
    """A positive integer in s (its norm), used as a known order multiple."""
    return s.generator.norm()


def is_good_prime(
    E: WeierstrassCurve, Q: CurvePoint, s: GaussianIdeal, pi, order: Order | None = None
) -> bool:
    """pi lies outside the bad-place set (tested directly at this one prime)."""
    return not _reasons_at(E, Q, s, pi if isinstance(pi, GaussianIdeal) else ideal(pi), order)


def _reasons_at(E, Q, s, pi: GaussianIdeal, order) -> set[str]:
    if s.is_zero():
        raise PreconditionError("Q must be torsion; its annihilator is the zero ideal")
    reasons: set[str] = set()
    g = pi.generator
    p = g.norm() if g.im else g.re
    if E.field == "Qi" and p == 2:
        reasons.add(RAMIFIED)
    if _torsion_multiple(s) % p == 0:
        reasons.add(TORSION_NORM)
    try:
        Er = reduce_curve(E, pi)
    except BadReduction:
        reasons.add(BAD_REDUCTION)
        return reasons
    if not reasons and not s.is_unit():
        if ann_ideal(E, pi, Q, order, _torsion_multiple(s), reduced=Er) != s:
            reasons.add(TORSION_INJECTIVITY)
    return reasons


def bad_places(
    E: WeierstrassCurve,
    P: CurvePoint,
    Q: CurvePoint,
    s: GaussianIdeal,
    prime_cap: int = 10_000,
    order: Order | None = None,
) -> BadPlaceSet:
    """The bad-place set restricted to finite places.

    Always contains the primes of bad reduction, those over primes dividing
    N(s), and 1 + i over Q(i); primes of norm <= prime_cap where Q does not
    reduce injectively are found by direct test.
    """
    E._check(P, Q)
    if s.is_zero():
        raise PreconditionError("Q must be torsion; its annihilator is the zero ideal")
    found: dict[GaussianIdeal, set[str]] = {}
    for pi in _discriminant_primes(E):
        found.setdefault(pi, set()).add(BAD_REDUCTION)
    for p, _ in factor_integer(_torsion_multiple(s)):
        for pi in primes_above(E.field, p):
            found.setdefault(pi, set()).add(TORSION_NORM)
    if E.field == "Qi":
        found.setdefault(ideal(GaussianInteger(1, 1)), set()).add(RAMIFIED)
    if not s.is_unit():
        for pi in primes_of_field(E.field, prime_cap):
            if pi in found:
                continue
            r = _reasons_at(E, Q, s, pi, order)
            if r:
                found[pi] = r
    entries = sorted(
        ((pi, frozenset(r)) for pi, r in found.items()),
        key=lambda t: (t[0].generator.norm(), t[0].generator.re, t[0].generator.im),
    )
    return BadPlaceSet(tuple(entries), prime_cap, E.field)


__all__ = [
    "BAD_REDUCTION",
    "RAMIFIED",
    "TORSION_INJECTIVITY",
    "TORSION_NORM",
    "BadPlaceSet",
    "BadReduction",
    "FFElement",
    "ReducedCurve",
    "ResidueField",
    "ann_ideal",
    "bad_places",
    "default_order",
    "is_good_prime",
    "is_zero_mod",
    "primes_above",
    "primes_of_field",
    "reduce_curve",
    "residue_field",
    "valuation",
]
