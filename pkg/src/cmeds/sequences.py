"""Shifted divisibility sequences B_alpha(P, Q), primitive divisors and the good-prime lemmas.

Indices run over O = Z or Z[i] ordered by norm. A prime of B_alpha is
primitive when it divides no nonzero B_beta with N(beta) < N(alpha); indices
of equal norm never block each other.

The auxiliary sequence attached to a divisor I = (m) of (alpha) is the
denominator of x(mP + (mq/alpha)Q), where q generates the part of (alpha)
coprime to the torsion annihilator s of Q, adjusted to be 1 mod s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import groupby
from math import lcm, prod

from .config import DEFAULT_CONFIG, ScanConfig
from .curve import (
    INFINITY,
    NON_TORSION,
    ZERO_TERM,
    CurvePoint,
    WeierstrassCurve,
    apply_endo,
    integer_order,
    torsion_annihilator,
    x_denominator,
)
from .numberfield import (
    UNITS,
    FactoredIdeal,
    GaussianIdeal,
    GaussianInteger,
    Order,
    PreconditionError,
    canonical_associate,
    check_order,
    coset_min_norm,
    elements_up_to_norm,
    factor_ideal,
    gaussian_gcd,
    gaussian_valuation,
    ideal,
    ideal_divisors,
    inverse_mod,
    mobius,
    parse_factored_ideal,
    parse_gaussian,
    primes_up_to,
)
from .reduction import (
    BadReduction,
    ReducedCurve,
    ann_ideal,
    default_order,
    is_good_prime,
    primes_above,
    reduce_curve,
    valuation,
)
from .reports import LemmaReport, verdict


class LemmaViolation(ArithmeticError):
    """A statement that must hold at a good prime failed."""


# --- indices --------------------------------------------------------------------------


def _rotation(alpha: GaussianInteger) -> int:
    c = canonical_associate(alpha)
    for k, u in enumerate(UNITS):
        if u * c == alpha:
            return k
    return 0


def index_key(alpha: GaussianInteger) -> tuple[int, int, int, int]:
    """Norm first, then the canonical associate, then the unit rotation."""
    c = canonical_associate(alpha)
    return (alpha.norm(), c.re, c.im, _rotation(alpha))


def enumerate_indices(order: Order, N: int) -> list[GaussianInteger]:
    """All alpha in O with 0 < N(alpha) <= N in scan order."""
    return sorted(elements_up_to_norm(check_order(order), N), key=index_key)


# --- term engine -------------------------------------------------------------------------


class TermEngine:
    """Caches multiples of P and Q so that alpha(P) + Q is cheap to revisit."""

    def __init__(self, E: WeierstrassCurve, P: CurvePoint, Q: CurvePoint, order: Order,
                 config: ScanConfig = DEFAULT_CONFIG):
        E._check(P, Q)
        self.E, self.P, self.Q = E, P, Q
        self.order = check_order(order)
        if self.order == "Zi" and not E.cm:
            raise PreconditionError("order Z[i] needs a CM curve")
        self.config = config
        self._mult = {0: INFINITY, 1: P}
        self._points: dict[GaussianInteger, CurvePoint] = {}
        self._terms: dict[GaussianInteger, object] = {}
        self._iP = E.i_action(P) if E.cm else None

    def multiple(self, n: int) -> CurvePoint:
        if n < 0:
            return self.E.neg(self.multiple(-n))
        if n not in self._mult:
            top = max(self._mult)
            if n - top <= 64:
                R = self._mult[top]
                for k in range(top + 1, n + 1):
                    R = self.E.add(R, self.P)
                    self._mult[k] = R
            else:
                self._mult[n] = self.E.mul(n, self.P)
        return self._mult[n]

    def endo_P(self, alpha: GaussianInteger) -> CurvePoint:
        alpha = GaussianInteger.coerce(alpha)
        R = self.multiple(alpha.re)
        if alpha.im:
            R = self.E.add(R, self.E.i_action(self.multiple(alpha.im)))
        return R

    def point(self, alpha) -> CurvePoint:
        """alpha(P) + Q."""
        alpha = GaussianInteger.coerce(alpha)
        if alpha not in self._points:
            self._points[alpha] = self.E.add(self.endo_P(alpha), self.Q)
        return self._points[alpha]

    def is_zero(self, alpha) -> bool:
        return self.point(alpha).is_infinity

    def denominator(self, alpha) -> GaussianInteger | None:
        R = self.point(alpha)
        return None if R.is_infinity else x_denominator(self.E, R)

    def term(self, alpha):
        alpha = GaussianInteger.coerce(alpha)
        if alpha not in self._terms:
            d = self.denominator(alpha)
            if d is None:
                self._terms[alpha] = ZERO_TERM
            else:
                self._terms[alpha] = factor_ideal(
                    d, self.ideal_order, self.config.trial_bound, self.config.rho_iterations
                )
        return self._terms[alpha]

    @property
    def ideal_order(self) -> Order:
        return "Z" if self.E.field == "Q" else "Zi"


def shifted_sequence(E, P, Q, indices, order: Order = "Z", config: ScanConfig = DEFAULT_CONFIG):
    engine = TermEngine(E, P, Q, order, config)
    return [engine.term(a) for a in indices]


# --- primitive-divisor scan ------------------------------------------------------------


@dataclass(frozen=True)
class SequenceRecord:
    """One term B_alpha with its primitive-divisor verdict.

    ``primitive`` is None for the zero term. ``witness`` is a primitive prime,
    or an unfactored part "<c>" none of whose primes divide an earlier term.
    """

    index: GaussianInteger
    order: Order
    term: object
    primitive: bool | None
    witness: str | None
    reason: str

    @property
    def norm(self) -> int:
        return self.index.norm()

    @property
    def is_zero(self) -> bool:
        return self.term is ZERO_TERM

    def as_dict(self) -> dict:
        return {
            "index": str(self.index),
            "norm": self.norm,
            "order": self.order,
            "term": str(self.term),
            "term_order": self.order if self.is_zero else self.term.order,
            "term_complete": True if self.is_zero else self.term.complete,
            "primitive": self.primitive,
            "witness": self.witness,
            "reason": self.reason,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SequenceRecord":
        term = ZERO_TERM if d["term"] == "0" else parse_factored_ideal(d["term"], d["term_order"])
        return cls(parse_gaussian(d["index"]), d["order"], term, d["primitive"], d["witness"], d["reason"])


class _History:
    """Primes (and unfactored parts) of all nonzero terms of strictly smaller norm."""

    def __init__(self):
        self.known: dict[GaussianIdeal, int] = {}
        self.cofactors: list[GaussianInteger] = []

    def blocks(self, p: GaussianIdeal) -> bool:
        return p in self.known or any(p.generator.divides(c) for c in self.cofactors)

    def new_part(self, cofactor: GaussianInteger) -> GaussianInteger:
        """The part of an unfactored cofactor coprime to everything recorded."""
        c = cofactor
        for p in self.known:
            while p.generator.divides(c) and c.norm() > 1:
                c = c.exact_div(p.generator)
        for old in self.cofactors:
            g = gaussian_gcd(c, old)
            while g.norm() > 1:
                c = c.exact_div(g)
                g = gaussian_gcd(c, old)
        return canonical_associate(c)

    def absorb(self, term: FactoredIdeal, norm: int) -> None:
        for p in term.primes:
            self.known.setdefault(p, norm)
        if not term.complete:
            self.cofactors.append(term.cofactor.generator)


def primitive_verdict(term, history: _History) -> tuple[bool | None, str | None, str]:
    if term is ZERO_TERM:
        return None, None, "zero term"
    if term.is_unit():
        return False, None, "unit term"
    for p in term.primes:
        if not history.blocks(p):
            return True, str(p), "prime absent from earlier terms"
    if not term.complete:
        rest = history.new_part(term.cofactor.generator)
        if rest.norm() > 1:
            return True, f"<{rest}>", "unfactored part coprime to earlier terms"
    return False, None, "every prime divides an earlier term"


def scan(
    E: WeierstrassCurve,
    P: CurvePoint,
    Q: CurvePoint,
    order: Order,
    N: int,
    config: ScanConfig = DEFAULT_CONFIG,
    engine: TermEngine | None = None,
) -> list[SequenceRecord]:
    """Terms and primitive-divisor verdicts for every index of norm <= N.

    Index 0 comes first when ``config.include_zero`` is set; it blocks later
    terms like any other index of smaller norm.
    """
    if N < 1:
        raise ValueError("norm cap must be at least 1")
    engine = engine or TermEngine(E, P, Q, order, config)
    indices = ([GaussianInteger(0, 0)] if config.include_zero else []) + enumerate_indices(order, N)
    history = _History()
    out: list[SequenceRecord] = []
    for norm, group in groupby(indices, key=lambda a: a.norm()):
        group = list(group)
        terms = [engine.term(a) for a in group]
        for a, t in zip(group, terms):
            prim, wit, why = primitive_verdict(t, history)
            out.append(SequenceRecord(a, engine.order, t, prim, wit, why))
        for t in terms:
            if t is not ZERO_TERM:
                history.absorb(t, norm)
    return out


@dataclass(frozen=True)
class ZsygmondyReport:
    exceptional: tuple[GaussianInteger, ...]
    largest_norm: int
    max_norm: int
    records: tuple[SequenceRecord, ...] = field(repr=False, default=())


def zsygmondy(
    E: WeierstrassCurve,
    P: CurvePoint,
    Q: CurvePoint,
    order: Order,
    N: int,
    config: ScanConfig = DEFAULT_CONFIG,
) -> ZsygmondyReport:
    """Indices alpha != 0 with N(alpha) <= N and B_alpha nonzero without a primitive divisor."""
    if torsion_annihilator(E, P, order) is not NON_TORSION:
        raise PreconditionError("P must be non-torsion for a primitive-divisor bound")
    records = scan(E, P, Q, order, N, config)
    bad = tuple(r.index for r in records if r.norm > 0 and r.primitive is False)
    return ZsygmondyReport(bad, max((a.norm() for a in bad), default=0), N, tuple(records))


def divisibility_pattern(
    E: WeierstrassCurve,
    P: CurvePoint,
    Q: CurvePoint,
    pi,
    N: int,
    order: Order | None = None,
) -> list[GaussianInteger]:
    """All alpha with N(alpha) <= N (including 0) such that pi divides B_alpha.

    Good primes are handled on the reduced curve; at a bad prime the exact
    x-coordinates are used.
    """
    order = check_order(order or default_order(E))
    pi = pi if isinstance(pi, GaussianIdeal) else ideal(pi)
    indices = [GaussianInteger(0, 0)] + enumerate_indices(order, N)
    try:
        Er = reduce_curve(E, pi)
    except BadReduction:
        engine = TermEngine(E, P, Q, order)
        return [a for a in indices if engine.is_zero(a) or valuation(engine.point(a).x, pi) < 0]
    Pr, Qr = Er.reduce_point(P), Er.reduce_point(Q)
    return [a for a in indices if Er.add(Er.endo(a, Pr), Qr).is_infinity]


# --- auxiliary index sets -------------------------------------------------------------------


@dataclass(frozen=True)
class AuxiliaryIndex:
    """Divisors I of (alpha) with ((alpha)/I, s) = 1, their cofactors J, and the shift q."""

    alpha: GaussianInteger
    s: GaussianIdeal
    order: Order
    I_set: tuple[GaussianIdeal, ...]
    J_set: tuple[GaussianIdeal, ...]
    q: GaussianInteger

    @property
    def alpha_ideal(self) -> GaussianIdeal:
        return ideal(self.alpha)

    def complement(self, I: GaussianIdeal) -> GaussianIdeal:
        return self.alpha_ideal.quotient(I)


def _as_ideal(x) -> GaussianIdeal:
    return x if isinstance(x, GaussianIdeal) else ideal(x)


def index_sets(alpha, s, order: Order = "Z") -> AuxiliaryIndex:
    """The sets of divisors I and J of (alpha), and a minimal-norm shift q.

    q lies in the largest J (the part of (alpha) coprime to s) and satisfies
    q = 1 mod s. When s = (1) the congruence is empty and q is taken to be
    the generator of that largest J itself, the smallest nonzero choice.
    """
    order = check_order(order)
    alpha = GaussianInteger.coerce(alpha)
    s = _as_ideal(s)
    if not alpha or s.is_zero():
        raise PreconditionError("alpha and s must be nonzero")
    a = ideal(alpha)
    fa = factor_ideal(a, order)
    divisors = [d.to_ideal() for d in ideal_divisors(fa)]
    I_set = tuple(I for I in divisors if a.quotient(I).coprime(s))
    J_set = tuple(J for J in divisors if J.coprime(s))
    j = prod((p.generator**e for p, e in fa.factors if p.coprime(s)), start=GaussianInteger(1, 0))
    if s.is_unit():
        t = GaussianInteger(1, 0)
    else:
        t0 = inverse_mod(j, s.generator, order)
        t = coset_min_norm(t0, s, order)
    q = j * t
    return AuxiliaryIndex(alpha, s, order, I_set, J_set, q)


def aux_term(
    E: WeierstrassCurve,
    P: CurvePoint,
    Q: CurvePoint,
    alpha,
    I,
    order: Order = "Z",
    s: GaussianIdeal | None = None,
    config: ScanConfig = DEFAULT_CONFIG,
):
    """The auxiliary term for I in the index set of alpha, factored (or ZERO_TERM)."""
    point = aux_point(E, P, Q, alpha, I, order, s)
    if point.is_infinity:
        return ZERO_TERM
    return factor_ideal(
        x_denominator(E, point), "Z" if E.field == "Q" else "Zi",
        config.trial_bound, config.rho_iterations,
    )


def _torsion_ideal(E, Q, order) -> GaussianIdeal:
    s = torsion_annihilator(E, Q, order)
    if s is NON_TORSION:
        raise PreconditionError("Q must be torsion")
    return s


def aux_point(E, P, Q, alpha, I, order: Order = "Z", s=None, engine: TermEngine | None = None,
              aux: AuxiliaryIndex | None = None) -> CurvePoint:
    """mP + (mq/alpha)Q for I = (m) in the index set of alpha."""
    order = check_order(order)
    alpha = GaussianInteger.coerce(alpha)
    I = _as_ideal(I)
    if order == "Zi" and not Q.is_infinity:
        raise PreconditionError("auxiliary terms over Z[i] are only available when Q = O")
    s = s or _torsion_ideal(E, Q, order)
    aux = aux or index_sets(alpha, s, order)
    if I not in aux.I_set:
        raise PreconditionError(f"{I} is not in the index set of {alpha}")
    m = I.generator
    k, r = divmod(m * aux.q, alpha)
    if r:
        raise LemmaViolation(f"{m}*{aux.q}/{alpha} is not integral")
    mP = engine.endo_P(m) if engine else apply_endo(E, m, P)
    if Q.is_infinity:
        return mP
    kq = k.re % s.generator.re if s.generator.re else k.re
    kQ = E.mul(kq, Q)
    return E.add(mP, kQ)


def ip_jp(alpha, pi, ann: GaussianIdeal, s) -> tuple[GaussianIdeal, GaussianIdeal]:
    """(Ann / s, (alpha) / (Ann / s)) as integral ideals, or LemmaViolation."""
    s = _as_ideal(s)
    try:
        Ip = ann.quotient(s)
    except ArithmeticError:
        raise LemmaViolation(f"s={s} does not divide Ann={ann} at {pi}") from None
    try:
        Jp = ideal(alpha).quotient(Ip)
    except ArithmeticError:
        raise LemmaViolation(f"I_p={Ip} does not divide ({alpha}) at {pi}") from None
    return Ip, Jp


# --- shift construction -------------------------------------------------------------------


def shift_construction(
    E: WeierstrassCurve,
    P: CurvePoint,
    Q: CurvePoint,
    R: CurvePoint,
    a,
    b,
    T1: CurvePoint = INFINITY,
    T2: CurvePoint = INFINITY,
    torsion_limit: int = 144,
) -> tuple[GaussianInteger, GaussianInteger]:
    """(f, g) = (b n, a n) with f(P) = g(Q), from P = aR + T1 and Q = bR + T2.

    n is the lcm of the orders of T1 and T2. The decomposition and the
    resulting identity are both checked with the exact group law.
    """
    a, b = GaussianInteger.coerce(a), GaussianInteger.coerce(b)
    if not a:
        raise PreconditionError("a = 0 means P is torsion")
    E._check(P, Q, R, T1, T2)
    if E.add(apply_endo(E, a, R), T1) != P or E.add(apply_endo(E, b, R), T2) != Q:
        raise PreconditionError("the supplied decomposition does not reproduce P and Q")
    orders = []
    for T in (T1, T2):
        n = integer_order(E.a, T, torsion_limit)
        if n is None:
            raise PreconditionError(f"{T} has no order up to {torsion_limit}")
        orders.append(n)
    n = lcm(*orders)
    f, g = b * n, a * n
    if apply_endo(E, f, P) != apply_endo(E, g, Q):
        raise LemmaViolation("f(P) != g(Q) after the shift construction")
    return f, g


# --- good-prime lemma suite ----------------------------------------------------------------

INF = math.inf


def _num(v):
    """JSON-safe valuation: an int, or "inf" for the zero term."""
    return "inf" if v == INF else int(v)


class LemmaSuite:
    """Checks the good-prime lemmas for one (E, P, Q) with shared caches."""

    def __init__(
        self,
        E: WeierstrassCurve,
        P: CurvePoint,
        Q: CurvePoint,
        order: Order | None = None,
        config: ScanConfig = DEFAULT_CONFIG,
        s: GaussianIdeal | None = None,
    ):
        self.E, self.P, self.Q = E, P, Q
        self.order = check_order(order or default_order(E))
        self.config = config
        self.engine = TermEngine(E, P, Q, self.order, config)
        self.s = s or _torsion_ideal(E, Q, self.order)
        self._good: dict[GaussianIdeal, bool] = {}
        self._reduced: dict[GaussianIdeal, tuple[ReducedCurve, CurvePoint, CurvePoint]] = {}
        self._ann: dict[GaussianIdeal, GaussianIdeal] = {}
        self._hit: dict[tuple[GaussianIdeal, GaussianInteger], bool] = {}
        self._aux: dict[GaussianInteger, AuxiliaryIndex] = {}
        self._aux_val: dict[tuple[GaussianIdeal, GaussianInteger, GaussianIdeal], float] = {}

    @cached_property
    def aux_available(self) -> bool:
        return self.order == "Z" or self.Q.is_infinity

    def is_good(self, pi: GaussianIdeal) -> bool:
        if pi not in self._good:
            self._good[pi] = is_good_prime(self.E, self.Q, self.s, pi, self.order)
        return self._good[pi]

    def reduced(self, pi: GaussianIdeal):
        if pi not in self._reduced:
            Er = reduce_curve(self.E, pi)
            self._reduced[pi] = (Er, Er.reduce_point(self.P), Er.reduce_point(self.Q))
        return self._reduced[pi]

    def ann(self, pi: GaussianIdeal) -> GaussianIdeal:
        if pi not in self._ann:
            self._ann[pi] = ann_ideal(self.E, pi, self.P, self.order, reduced=self.reduced(pi)[0])
        return self._ann[pi]

    def divides_term(self, alpha: GaussianInteger, pi: GaussianIdeal) -> bool:
        """pi | B_alpha, read off the reduced curve (true for the zero term)."""
        key = (pi, alpha)
        if key not in self._hit:
            Er, Pr, Qr = self.reduced(pi)
            self._hit[key] = Er.add(Er.endo(alpha, Pr), Qr).is_infinity
        return self._hit[key]

    def non_primitive(self, alpha: GaussianInteger, pi: GaussianIdeal) -> GaussianInteger | None:
        """An earlier index beta with B_beta != 0 and pi | B_beta, if any."""
        n = alpha.norm()
        earlier = [GaussianInteger(0, 0)] + (enumerate_indices(self.order, n - 1) if n > 1 else [])
        for beta in earlier:
            if self.divides_term(beta, pi) and not self.engine.is_zero(beta):
                return beta
        return None

    def aux_index(self, alpha: GaussianInteger) -> AuxiliaryIndex:
        if alpha not in self._aux:
            self._aux[alpha] = index_sets(alpha, self.s, self.order)
        return self._aux[alpha]

    def aux_valuation(self, alpha: GaussianInteger, I: GaussianIdeal, pi: GaussianIdeal) -> float:
        """Exponent of pi in the auxiliary term of I (infinite for a zero term)."""
        key = (pi, alpha, I)
        if key not in self._aux_val:
            R = aux_point(self.E, self.P, self.Q, alpha, I, self.order, self.s,
                          self.engine, self.aux_index(alpha))
            self._aux_val[key] = INF if R.is_infinity else max(0, -valuation(R.x, pi))
        return self._aux_val[key]

    def term_valuation(self, alpha: GaussianInteger, pi: GaussianIdeal) -> float:
        R = self.engine.point(alpha)
        return INF if R.is_infinity else max(0, -valuation(R.x, pi))

    def candidate_primes(self, alpha: GaussianInteger, cap: int | None) -> list[GaussianIdeal]:
        """Good primes dividing B_alpha, of norm <= cap (all of them when cap is None)."""
        d = self.engine.denominator(alpha)
        if d is None:
            return []
        field = self.E.field
        if cap is None:
            term = self.engine.term(alpha)
            primes = list(term.primes)
        else:
            n = d.norm() if field == "Qi" else abs(d.re)
            primes = []
            for p in primes_up_to(cap):
                if n % p == 0:
                    primes += [pi for pi in primes_above(field, p)
                               if pi.norm("Zi" if field == "Qi" else "Z") <= cap and pi.generator.divides(d)]
        return [pi for pi in primes if self.is_good(pi)]

    # the checks

    def verify(self, alpha, pi) -> list[LemmaReport]:
        alpha = GaussianInteger.coerce(alpha)
        pi = _as_ideal(pi)
        if not alpha:
            raise PreconditionError("alpha must be nonzero")
        if not self.is_good(pi):
            raise PreconditionError(f"{pi} is a bad prime")
        tags = ("Ipmid", "defK", "S", "primdiv", "maxideal", "2nu", "nuW")
        a_str, p_str = str(alpha), str(pi)
        if not self.divides_term(alpha, pi):
            return [LemmaReport(t, "vacuous", a_str, p_str, {"reason": "pi does not divide B_alpha"})
                    for t in tags]
        s = self.s
        ann = self.ann(pi)
        a_ideal = ideal(alpha)
        base = {"ann": str(ann), "s": str(s)}
        reports = []

        # (a) Ann | (alpha) s
        reports.append(LemmaReport("Ipmid", verdict(ann.divides(a_ideal * s)), a_str, p_str, dict(base)))

        # (b) I_p and J_p integral, J_p coprime to s
        try:
            Ip, Jp = ip_jp(alpha, pi, ann, s)
        except LemmaViolation as exc:
            reports.append(LemmaReport("defK", "fail", a_str, p_str, {**base, "error": str(exc)}))
            reports += [LemmaReport(t, "vacuous", a_str, p_str, {"reason": "I_p undefined"})
                        for t in tags[2:]]
            return reports
        reports.append(LemmaReport("defK", "pass", a_str, p_str, {**base, "I_p": str(Ip), "J_p": str(Jp)}))
        reports.append(LemmaReport("S", verdict(Jp.coprime(s)), a_str, p_str, {**base, "J_p": str(Jp)}))

        # (c) non-primitive implies Ann != (alpha) s
        beta = self.non_primitive(alpha, pi)
        if beta is None:
            reports.append(LemmaReport("primdiv", "vacuous", a_str, p_str, {"reason": "pi is primitive"}))
        else:
            reports.append(LemmaReport("primdiv", verdict(ann != a_ideal * s), a_str, p_str,
                                       {**base, "earlier_index": str(beta)}))

        if not self.aux_available:
            reports += [LemmaReport(t, "vacuous", a_str, p_str, {"reason": "auxiliary terms need O = Z or Q = O"})
                        for t in ("maxideal", "2nu", "nuW")]
            return reports

        aux = self.aux_index(alpha)
        vals = {I: self.aux_valuation(alpha, I, pi) for I in aux.I_set}
        hit = [I for I in aux.I_set if vals[I] > 0]
        expected = [I for I in aux.I_set if Ip.divides(I)]

        # (d) the divisible members are exactly the multiples of I_p
        ok_d = hit == expected and Ip in hit
        reports.append(LemmaReport("maxideal", verdict(ok_d), a_str, p_str,
                                   {"I_p": str(Ip), "divisible": [str(I) for I in hit],
                                    "expected": [str(I) for I in expected]}))

        # (e) valuation increments along nested pairs
        bad_pairs = []
        g = pi.generator
        for I1 in hit:
            for I2 in hit:
                if I1 != I2 and I1.divides(I2):
                    inc = 2 * (gaussian_valuation(I2.generator, g) - gaussian_valuation(I1.generator, g))
                    if vals[I2] != vals[I1] + inc:
                        bad_pairs.append([str(I1), str(I2), _num(vals[I1]), _num(vals[I2]), inc])
        status = "vacuous" if len(hit) < 2 else verdict(not bad_pairs)
        reports.append(LemmaReport("2nu", status, a_str, p_str,
                                   {"valuations": {str(I): _num(vals[I]) for I in hit}, "violations": bad_pairs}))

        # (f) valuation form of the bad-place bound, for non-primitive pi
        if beta is None:
            reports.append(LemmaReport("nuW", "vacuous", a_str, p_str, {"reason": "pi is primitive"}))
        else:
            lhs = vals[a_ideal]
            rhs = 2 * gaussian_valuation(alpha, g)
            for I in aux.I_set:
                if I != a_ideal:
                    mu = mobius(factor_ideal(a_ideal.quotient(I), self.order))
                    if mu:
                        rhs -= mu * vals[I]
            reports.append(LemmaReport("nuW", verdict(lhs <= rhs), a_str, p_str, {"lhs": _num(lhs), "rhs": _num(rhs)}))
        return reports

    def run(self, N: int, cap: int | None) -> list[LemmaReport]:
        """All reports for indices of norm <= N and good primes of norm <= cap dividing B_alpha."""
        out = []
        for alpha in enumerate_indices(self.order, N):
            for pi in self.candidate_primes(alpha, cap):
                out += self.verify(alpha, pi)
        return out


def verify_good_prime_lemmas(
    E: WeierstrassCurve,
    P: CurvePoint,
    Q: CurvePoint,
    alpha,
    pi,
    order: Order | None = None,
    suite: LemmaSuite | None = None,
) -> list[LemmaReport]:
    suite = suite or LemmaSuite(E, P, Q, order)
    return suite.verify(alpha, pi)


__all__ = [
    "AuxiliaryIndex",
    "LemmaSuite",
    "LemmaViolation",
    "SequenceRecord",
    "TermEngine",
    "ZsygmondyReport",
    "aux_point",
    "aux_term",
    "divisibility_pattern",
    "enumerate_indices",
    "index_key",
    "index_sets",
    "ip_jp",
    "primitive_verdict",
    "scan",
    "shift_construction",
    "shifted_sequence",
    "verify_good_prime_lemmas",
    "zsygmondy",
]
