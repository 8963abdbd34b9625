"""Naive and canonical heights with explicit error bounds.

The canonical height is the limit of h(x(2^n R)) / (2 * 4^n), computed by
exact x-only doubling on projective pairs (X : Z). Over Q(i) common factors
of X and Z can only sit above primes dividing 2 * discriminant (the
doubling polynomials have resultant a power of the discriminant), so those
primes are stripped after each step instead of running a Gaussian gcd on
numbers with tens of thousands of digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpz

from .curve import CurvePoint, WeierstrassCurve, b_invariants
from .numberfield import (
    GaussianInteger,
    GaussianRational,
    factor_gaussian,
    gaussian_gcd,
    mobius_sum_and_euler_product,
    primes_up_to,
)
from .reports import LemmaReport, verdict

MAX_DOUBLINGS = 8
CONVERGENCE_STEP = 1e-8
TORSION_THRESHOLD = 1e-6
ERROR_FLOOR = 1e-6
_FLOAT_SLACK = 1e-12
EULER_GAMMA = 0.5772156649015329


@dataclass(frozen=True)
class HeightValue:
    """A real number with a bound on its distance to the true height."""

    value: float
    error_bound: float = 0.0

    def __sub__(self, other: "HeightValue") -> "HeightValue":
        return HeightValue(self.value - other.value, self.error_bound + other.error_bound)

    def scaled(self, k: float) -> "HeightValue":
        return HeightValue(self.value * k, self.error_bound * abs(k))

    def __str__(self):
        return f"{self.value:.12f} +/- {self.error_bound:.3g}"


def _log_abs(n) -> float:
    """log |n| for a nonzero integer of any size."""
    n = abs(int(n))
    bl = n.bit_length()
    if bl <= 1000:
        return math.log(n)
    shift = bl - 64
    return math.log(n >> shift) + shift * math.log(2)


# --- naive heights -----------------------------------------------------------------


def coprime_parts(x) -> tuple[GaussianInteger, GaussianInteger]:
    """x = a / b with a, b coprime in Z[i] (b canonical)."""
    x = GaussianRational.coerce(x)
    g, w = x.split()
    if not g:
        return g, GaussianInteger(1, 0)
    d = gaussian_gcd(g, w)
    return g.exact_div(d), GaussianInteger(w, 0).exact_div(d)


def naive_height(x, field: str = "Q") -> HeightValue:
    """Absolute logarithmic height, normalized by [K : Q]."""
    if field == "Q":
        x = Fraction(x) if not isinstance(x, GaussianRational) else x.as_fraction()
        if x == 0:
            return HeightValue(0.0)
        return HeightValue(max(_log_abs(x.numerator), _log_abs(x.denominator)))
    if not GaussianRational.coerce(x):
        return HeightValue(0.0)
    a, b = coprime_parts(x)
    return HeightValue(0.5 * max(_log_abs(a.norm()), _log_abs(b.norm())))


def local_heights(x) -> dict[str, float]:
    """Weighted local heights n_v * max(0, log|x|_v) over Q(i), keyed by place.

    The archimedean place is keyed "inf"; finite places by their prime.
    Their sum divided by 2 is the naive height.
    """
    a, b = coprime_parts(x)
    out = {"inf": max(0.0, _log_abs(a.norm()) - _log_abs(b.norm())) if a else 0.0}
    if b.norm() > 1:
        _, pairs = factor_gaussian(b)
        for pi, e in pairs:
            out[str(pi)] = e * math.log(pi.norm())
    return out


def product_formula_holds(x) -> bool:
    """Exact check that prod_v |x|_v^{n_v} = 1 for nonzero x in Q(i).

    With |x|_pi = N(pi)^{-nu_pi(x)} at finite places and |x|^2 at the
    complex place, the identity reads N(x) = prod N(pi)^{nu_pi(x)}.
    """
    a, b = coprime_parts(x)
    if not a:
        raise ValueError("product formula needs x != 0")
    finite = Fraction(1)
    for g, sign in ((a, 1), (b, -1)):
        if g.norm() > 1:
            for pi, e in factor_gaussian(g)[1]:
                finite *= Fraction(pi.norm()) ** (sign * e)
    archimedean = Fraction(a.norm(), b.norm())
    return archimedean * (1 / finite) == 1


# --- canonical height ----------------------------------------------------------------


def _integral_b_invariants(E: WeierstrassCurve):
    out = []
    for b in b_invariants(E.a):
        if isinstance(b, Fraction):
            out.append(mpz(b.numerator))
        else:
            out.append((mpz(b.re.numerator), mpz(b.im.numerator)))
    return out


def _double_q(X, Z, b2, b4, b6, b8):
    X2, Z2 = X * X, Z * Z
    XZ = X * Z
    Xn = X2 * X2 - b4 * X2 * Z2 - 2 * b6 * XZ * Z2 - b8 * Z2 * Z2
    Zn = 4 * X2 * XZ + b2 * X2 * Z2 + 2 * b4 * XZ * Z2 + b6 * Z2 * Z2
    g = gmpy2.gcd(Xn, Zn)
    if g > 1:
        Xn, Zn = Xn // g, Zn // g
    if Zn < 0:
        Xn, Zn = -Xn, -Zn
    return Xn, Zn


def _gm(u, v):
    return (u[0] * v[0] - u[1] * v[1], u[0] * v[1] + u[1] * v[0])


def _gadd(*terms):
    return (sum(t[0] for t in terms), sum(t[1] for t in terms))


def _gscale(k, u):
    return (k * u[0], k * u[1])


def _gdiv_exact(u, pi, n):
    """u / pi when pi | u, else None (n = N(pi))."""
    re = u[0] * pi[0] + u[1] * pi[1]
    im = u[1] * pi[0] - u[0] * pi[1]
    if re % n or im % n:
        return None
    return (re // n, im // n)


def _double_qi(X, Z, b2, b4, b6, b8, strip):
    X2, Z2 = _gm(X, X), _gm(Z, Z)
    XZ = _gm(X, Z)
    Z4 = _gm(Z2, Z2)
    X2Z2 = _gm(X2, Z2)
    XZ3 = _gm(XZ, Z2)
    Xn = _gadd(_gm(X2, X2), _gscale(-1, _gm(b4, X2Z2)), _gscale(-2, _gm(b6, XZ3)), _gscale(-1, _gm(b8, Z4)))
    Zn = _gadd(_gscale(4, _gm(X2, XZ)), _gm(b2, X2Z2), _gscale(2, _gm(b4, XZ3)), _gm(b6, Z4))
    for pi, n in strip:
        while True:
            a, b = _gdiv_exact(Xn, pi, n), _gdiv_exact(Zn, pi, n)
            if a is None or b is None:
                break
            Xn, Zn = a, b
    return Xn, Zn


def _strip_primes(E: WeierstrassCurve):
    d = E.discriminant_integer() * 2
    _, pairs = factor_gaussian(d)
    return [((mpz(pi.re), mpz(pi.im)), pi.norm()) for pi, _ in pairs]


def _projective_x(E: WeierstrassCurve, R: CurvePoint):
    if E.field == "Q":
        x = R.x
        return mpz(x.numerator), mpz(x.denominator)
    a, b = coprime_parts(R.x)
    return (mpz(a.re), mpz(a.im)), (mpz(b.re), mpz(b.im))


def _is_zero(Z) -> bool:
    return Z == 0 if not isinstance(Z, tuple) else (Z[0] == 0 and Z[1] == 0)


def _height_of_pair(X, Z, field: str) -> float:
    if field == "Q":
        return max(_log_abs(X) if X else 0.0, _log_abs(Z))
    nx = X[0] * X[0] + X[1] * X[1]
    nz = Z[0] * Z[0] + Z[1] * Z[1]
    return 0.5 * max(_log_abs(nx) if nx else 0.0, _log_abs(nz))


def _pair_key(X, Z, field):
    if field == "Q":
        return (int(X), int(Z))
    # normalize the unit so that the key is independent of associates
    zg = GaussianInteger(int(Z[0]), int(Z[1]))
    xg = GaussianInteger(int(X[0]), int(X[1]))
    for u in (GaussianInteger(1, 0), GaussianInteger(0, 1), GaussianInteger(-1, 0), GaussianInteger(0, -1)):
        zz = zg * u
        if zz.re > 0 and zz.im >= 0:
            return (xg * u, zz)
    return (xg, zg)


def height_sequence(E: WeierstrassCurve, R: CurvePoint, doublings: int = MAX_DOUBLINGS):
    """[h(x(2^k R)) for k = 0..], stopping early at the identity or a cycle.

    Returns (heights, torsion) where torsion is True when the doubling orbit
    reached the identity or repeated a value.
    """
    if R.is_infinity:
        return [], True
    b2, b4, b6, b8 = _integral_b_invariants(E)
    X, Z = _projective_x(E, R)
    strip = _strip_primes(E) if E.field == "Qi" else None
    seen = {_pair_key(X, Z, E.field)}
    hs = [_height_of_pair(X, Z, E.field)]
    for _ in range(doublings):
        if E.field == "Q":
            X, Z = _double_q(X, Z, b2, b4, b6, b8)
        else:
            X, Z = _double_qi(X, Z, b2, b4, b6, b8, strip)
        if _is_zero(Z):
            return hs, True
        key = _pair_key(X, Z, E.field)
        if key in seen:
            return hs, True
        seen.add(key)
        hs.append(_height_of_pair(X, Z, E.field))
    return hs, False


def canonical_height(
    E: WeierstrassCurve,
    R: CurvePoint,
    max_doublings: int = MAX_DOUBLINGS,
    step_tolerance: float = CONVERGENCE_STEP,
) -> HeightValue:
    """Neron-Tate height with an empirical error bound.

    The bound is C/4^n where C = max_k |h(2^k R) - 2 * 4^k * estimate| over
    the computed orbit; it is an estimate of the height-difference constant,
    not a proof.
    """
    E._check(R)
    hs, torsion = height_sequence(E, R, max_doublings)
    if torsion:
        return HeightValue(0.0, 0.0)
    estimates = [h / (2 * 4**k) for k, h in enumerate(hs)]
    n = len(estimates) - 1
    for k in range(1, len(estimates)):
        if abs(estimates[k] - estimates[k - 1]) < step_tolerance:
            n = k
            break
    est = estimates[n]
    c_est = max(abs(hs[k] - 2 * 4**k * est) for k in range(n + 1))
    err = c_est / 4**n + _FLOAT_SLACK * max(1.0, abs(est))
    return HeightValue(est, err)


def within_bounds(diff: float, *errors: float, floor: float = ERROR_FLOOR) -> bool:
    return abs(diff) <= max(sum(errors), floor)


def check_height_axioms(E: WeierstrassCurve, R: CurvePoint, alpha) -> LemmaReport:
    """h(alpha R) = N(alpha) h(R), and h(R) < threshold iff R is torsion."""
    from .curve import NON_TORSION, TorsionInconclusive, apply_endo, torsion_annihilator

    alpha = GaussianInteger.coerce(alpha)
    if not alpha:
        raise ValueError("alpha must be nonzero")
    h0 = canonical_height(E, R)
    h1 = canonical_height(E, apply_endo(E, alpha, R))
    n = alpha.norm()
    diff = h1.value - n * h0.value
    scaling = within_bounds(diff, h1.error_bound, n * h0.error_bound)
    try:
        s = torsion_annihilator(E, R, "Zi" if E.cm else "Z")
        torsion = s is not NON_TORSION
        detector = "ok"
    except TorsionInconclusive as exc:
        torsion, detector = None, str(exc)
    agree = torsion is not None and torsion == (h0.value < TORSION_THRESHOLD)
    return LemmaReport(
        "canheight",
        verdict(scaling and agree),
        str(alpha),
        "",
        {
            "h_R": h0.value,
            "h_R_error": h0.error_bound,
            "h_alphaR": h1.value,
            "h_alphaR_error": h1.error_bound,
            "difference": diff,
            "scaling_ok": scaling,
            "torsion": torsion,
            "torsion_detectors_agree": agree,
            "detector": detector,
        },
    )


# --- Mertens ---------------------------------------------------------------------------


def mertens_product(N: int) -> Fraction:
    """prod_{p <= N} (1 - 1/p), exactly."""
    out = Fraction(1)
    for p in primes_up_to(N):
        out *= Fraction(p - 1, p)
    return out


def mertens_lower_bound(N: int) -> tuple[float, float]:
    """(prod_{p <= N}(1 - 1/p), e^-gamma / log N) as floats."""
    if N < 2:
        raise ValueError("N must be at least 2")
    return float(mertens_product(N)), math.exp(-EULER_GAMMA) / math.log(N)


def mobius_mertens_chain(alpha, s, order: str) -> tuple[Fraction, Fraction]:
    """(sum mu(J)/N(J) over J | (alpha) coprime to s, prod_{p <= N(alpha)} (1 - 1/p)^2).

    N(alpha) is the degree; the sum always dominates the product.
    """
    total, _ = mobius_sum_and_euler_product(alpha, s, order)
    bound = mertens_product(max(2, GaussianInteger.coerce(alpha).norm())) ** 2
    return total, bound


__all__ = [
    "ERROR_FLOOR",
    "HeightValue",
    "TORSION_THRESHOLD",
    "canonical_height",
    "check_height_axioms",
    "coprime_parts",
    "height_sequence",
    "local_heights",
    "mertens_lower_bound",
    "mertens_product",
    "mobius_mertens_chain",
    "naive_height",
    "product_formula_holds",
    "within_bounds",
]
