"""Ideals of Z and Z[i], their factorizations, and the Moebius function.

Both rings are principal, so an ideal is stored as its canonical generator.
The order tag ``"Z"`` or ``"Zi"`` decides how rational primes factor and how
ideal norms are measured; elements are always :class:`GaussianInteger`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import prod
from typing import Iterable, Literal

from .factor import (
    RHO_ITERATIONS,
    TRIAL_BOUND,
    partial_factor,
    partial_factor_gaussian,
    prime_sort_key,
)
from .gaussian import ONE, UNITS, ZERO, GaussianInteger, canonical_associate, gaussian_gcd

Order = Literal["Z", "Zi"]
ORDERS = ("Z", "Zi")


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""


def check_order(order: str) -> Order:
    if order not in ORDERS:
        raise ValueError(f"unknown order {order!r}; expected 'Z' or 'Zi'")
    return order  # type: ignore[return-value]


def in_order(g: GaussianInteger, order: Order) -> bool:
    return order == "Zi" or g.im == 0


@dataclass(frozen=True, slots=True)
class GaussianIdeal:
    """The principal ideal generated by ``generator`` (stored canonically)."""

    generator: GaussianInteger = ONE

    def __post_init__(self):
        object.__setattr__(
            self, "generator", canonical_associate(GaussianInteger.coerce(self.generator))
        )

    def __mul__(self, other: "GaussianIdeal") -> "GaussianIdeal":
        return GaussianIdeal(self.generator * other.generator)

    def __pow__(self, e: int) -> "GaussianIdeal":
        return GaussianIdeal(self.generator**e)

    def is_zero(self) -> bool:
        return not self.generator

    def is_unit(self) -> bool:
        return self.generator == ONE

    def contains(self, element) -> bool:
        return self.generator.divides(element)

    def divides(self, other: "GaussianIdeal") -> bool:
        """self | other, i.e. other is contained in self."""
        return self.generator.divides(other.generator)

    def gcd(self, other: "GaussianIdeal") -> "GaussianIdeal":
        return GaussianIdeal(gaussian_gcd(self.generator, other.generator))

    def coprime(self, other: "GaussianIdeal") -> bool:
        return self.gcd(other).is_unit()

    def lcm(self, other: "GaussianIdeal") -> "GaussianIdeal":
        if self.is_zero() or other.is_zero():
            return GaussianIdeal(ZERO)
        return GaussianIdeal((self.generator * other.generator).exact_div(self.gcd(other).generator))

    def quotient(self, other: "GaussianIdeal") -> "GaussianIdeal":
        """The integral ideal self / other; ArithmeticError if it is fractional."""
        return GaussianIdeal(self.generator.exact_div(other.generator))

    def norm(self, order: Order = "Zi") -> int:
        """Absolute norm |O / I|."""
        g = self.generator
        return abs(g.re) if order == "Z" else g.norm()

    def __str__(self):
        return f"({self.generator})"


def ideal(g) -> GaussianIdeal:
    if isinstance(g, GaussianIdeal):
        return g
    return GaussianIdeal(GaussianInteger.coerce(g))


UNIT_IDEAL = GaussianIdeal(ONE)


@dataclass(frozen=True)
class FactoredIdeal:
    """An ideal as sorted (prime, exponent) pairs plus an unfactored cofactor.

    The cofactor is the unit ideal whenever the factorization is complete;
    otherwise it is a product of primes none of which appear in ``factors``.
    """

    order: Order
    factors: tuple[tuple[GaussianIdeal, int], ...] = ()
    cofactor: GaussianIdeal = field(default=UNIT_IDEAL)

    @property
    def complete(self) -> bool:
        return self.cofactor.is_unit()

    @property
    def primes(self) -> list[GaussianIdeal]:
        return [p for p, _ in self.factors]

    def is_unit(self) -> bool:
        return not self.factors and self.complete

    def to_ideal(self) -> GaussianIdeal:
        g = prod((p.generator**e for p, e in self.factors), start=ONE) * self.cofactor.generator
        return GaussianIdeal(g)

    def norm(self) -> int:
        return self.to_ideal().norm(self.order)

    def exponent(self, prime: GaussianIdeal) -> int:
        """Exponent of a prime; exact even if the prime hides in the cofactor."""
        for p, e in self.factors:
            if p == prime:
                return e
        v, c = 0, self.cofactor.generator
        while prime.generator.divides(c):
            c = c.exact_div(prime.generator)
            v += 1
        return v

    def __str__(self):
        parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors]
        if not self.complete:
            parts.append(f"<{self.cofactor.generator}>")
        return "*".join(parts) if parts else "(1)"


def _sorted_factors(pairs: Iterable[tuple[GaussianIdeal, int]]) -> tuple:
    return tuple(sorted(pairs, key=lambda t: prime_sort_key(t[0].generator)))


def make_factored(order: Order, pairs: Iterable[tuple[GaussianIdeal, int]]) -> FactoredIdeal:
    merged: dict[GaussianIdeal, int] = {}
    for p, e in pairs:
        if e:
            merged[p] = merged.get(p, 0) + e
    return FactoredIdeal(check_order(order), _sorted_factors(merged.items()))


def factor_ideal(
    I: GaussianIdeal | GaussianInteger | int,
    order: Order,
    trial_bound: int = TRIAL_BOUND,
    rho_iterations: int | None = None,
) -> FactoredIdeal:
    """Factor a nonzero ideal; complete unless an iteration budget is given."""
    order = check_order(order)
    if not isinstance(I, GaussianIdeal):
        I = ideal(I)
    if I.is_zero():
        raise ValueError("cannot factor the zero ideal")
    g = I.generator
    if order == "Z":
        if g.im:
            raise ValueError(f"{g} is not an element of Z")
        pairs, cof = partial_factor(g.re, trial_bound, rho_iterations)
        return FactoredIdeal(
            order, _sorted_factors((ideal(p), e) for p, e in pairs), ideal(cof)
        )
    _, pairs, cof = partial_factor_gaussian(g, trial_bound, rho_iterations)
    return FactoredIdeal(order, _sorted_factors((GaussianIdeal(p), e) for p, e in pairs), GaussianIdeal(cof))


def _require_complete(I: FactoredIdeal) -> None:
    if not I.complete:
        raise PreconditionError(f"ideal {I} is only partially factored")


def ideal_divisors(I: FactoredIdeal) -> list[FactoredIdeal]:
    """All integral divisors of I, smallest norm first."""
    _require_complete(I)
    out = []
    for exps in product(*(range(e + 1) for _, e in I.factors)):
        out.append(
            FactoredIdeal(
                I.order, tuple((p, k) for (p, _), k in zip(I.factors, exps) if k)
            )
        )
    out.sort(key=lambda d: (d.norm(), prime_sort_key(d.to_ideal().generator)))
    return out


def mobius(I: FactoredIdeal) -> int:
    _require_complete(I)
    if any(e > 1 for _, e in I.factors):
        return 0
    return -1 if len(I.factors) % 2 else 1


def mobius_sum_and_euler_product(
    alpha, s, order: Order, *, degree: bool = False
) -> tuple[Fraction, Fraction]:
    """Sum of mu(J)/N(J) over J | (alpha) coprime to s, and the matching Euler product.

    N is the absolute norm |O/J|; with ``degree=True`` it is the degree of
    the endomorphism instead (N((m)) = m^2 over Z, unchanged over Z[i]).
    """
    a, s_ideal = ideal(alpha), ideal(s)
    if a.is_zero() or s_ideal.is_zero():
        raise PreconditionError("alpha and s must be nonzero")
    fa = factor_ideal(a, order)

    def n(J: GaussianIdeal) -> int:
        return J.generator.norm() if degree else J.norm(order)

    total = Fraction(0)
    for d in ideal_divisors(fa):
        J = d.to_ideal()
        if J.coprime(s_ideal):
            total += Fraction(mobius(d), n(J))
    euler = Fraction(1)
    for p in fa.primes:
        if p.coprime(s_ideal):
            euler *= 1 - Fraction(1, n(p))
    return total, euler


def inverse_mod(a, m, order: Order = "Zi") -> GaussianInteger:
    """An inverse of a modulo m; ArithmeticError when (a, m) is not the unit ideal."""
    a, m = GaussianInteger.coerce(a), GaussianInteger.coerce(m)
    if order == "Z":
        return GaussianInteger(pow(a.re, -1, abs(m.re)) if abs(m.re) > 1 else 0, 0)
    # extended Euclid: track x with x * a = r (mod m)
    r0, r1, x0, x1 = m, a % m, ZERO, ONE
    while r1:
        q, r = divmod(r0, r1)
        r0, r1, x0, x1 = r1, r, x1, x0 - q * x1
    if r0.norm() != 1:
        raise ArithmeticError(f"{a} is not invertible modulo {m}")
    # r0 is a unit u with x0 * a = u
    return (x0 * r0.conj()) % m


def _tie_key(g: GaussianInteger) -> tuple:
    return (g.norm(), canonical_associate(g) != g, -g.re, -g.im)


def coset_min_norm(alpha, I, order: Order = "Zi") -> GaussianInteger:
    """A minimal-norm element of alpha + I, ties broken toward the canonical associate."""
    alpha = GaussianInteger.coerce(alpha)
    m = I.generator if isinstance(I, GaussianIdeal) else GaussianInteger.coerce(I)
    if not m:
        raise PreconditionError("coset of the zero ideal")
    if order == "Z":
        if alpha.im or m.im:
            raise PreconditionError("elements of Z expected")
        r = alpha.re % abs(m.re)
        cands = [GaussianInteger(r + k * abs(m.re), 0) for k in (-1, 0, 1)]
    else:
        # the nearest lattice point to alpha lies within one step of the rounded quotient
        _, r = divmod(alpha, m)
        cands = [r + m * GaussianInteger(a, b) for a in (-1, 0, 1) for b in (-1, 0, 1)]
    return min(cands, key=_tie_key)


def lemma_k_gap(f, g, alpha, beta) -> tuple[int, bool]:
    """Gap N(beta*g + f) - N(alpha*g + f) and whether it is at most 4|f g| sqrt(N(alpha))."""
    f, g, alpha, beta = (GaussianInteger.coerce(v) for v in (f, g, alpha, beta))
    if not beta.norm() < alpha.norm():
        raise PreconditionError(f"need N(beta) < N(alpha), got {beta.norm()} >= {alpha.norm()}")
    hi, lo = (beta * g + f).norm(), (alpha * g + f).norm()
    if hi < lo:
        raise PreconditionError(f"need N(beta g + f) >= N(alpha g + f), got {hi} < {lo}")
    gap = hi - lo
    return gap, gap * gap <= 16 * f.norm() * g.norm() * alpha.norm()


def elements_up_to_norm(order: Order, bound: int) -> list[GaussianInteger]:
    """Nonzero elements of the order with norm <= bound (unsorted)."""
    out = []
    r = int(bound**0.5) + 1
    if order == "Z":
        for a in range(1, r + 1):
            if a * a <= bound:
                out += [GaussianInteger(a, 0), GaussianInteger(-a, 0)]
        return out
    for a in range(-r, r + 1):
        for b in range(-r, r + 1):
            if 0 < a * a + b * b <= bound:
                out.append(GaussianInteger(a, b))
    return out


def units(order: Order) -> tuple[GaussianInteger, ...]:
    return UNITS if order == "Zi" else (ONE, -ONE)
