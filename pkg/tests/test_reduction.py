from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cmeds.curve import INFINITY, WeierstrassCurve, apply_endo, x_denominator_ideal
from cmeds.numberfield import GaussianInteger, GaussianRational, ideal, is_prime, primes_up_to
from cmeds.reduction import (
    BAD_REDUCTION,
    RAMIFIED,
    TORSION_NORM,
    BadReduction,
    ann_ideal,
    bad_places,
    is_good_prime,
    is_zero_mod,
    primes_of_field,
    reduce_curve,
    residue_field,
    valuation,
)

G = GaussianInteger
GR = GaussianRational

EXAMPLE = WeierstrassCurve.from_coefficients([0, 0, 0, -11, 890])
EP, EQ = EXAMPLE.point(-1, 30), EXAMPLE.point(7, 34)
CM = WeierstrassCurve.from_coefficients([0, 0, 0, -2, 0], "Qi", cm=True)
CR = CM.point(-1, 1)
GOOD_SMALL = [p for p in primes_up_to(200) if p not in (2, 17)]


@lru_cache(maxsize=None)
def example_point(a, b):
    return EXAMPLE.add(EXAMPLE.mul(a, EP), EXAMPLE.mul(b, EQ))


def test_valuation_examples():
    assert valuation(GR(0, Fraction(-1, 2)), G(1, 1)) == -2
    assert valuation(1, 19) == 0
    assert valuation(Fraction(19, 4), 19) == 1
    assert valuation(Fraction(19, 4), 2) == -2
    with pytest.raises(ValueError):
        valuation(0, 19)


nonzero_q = st.fractions(max_denominator=10**6).filter(bool)
nonzero_qi = st.builds(GR, nonzero_q, st.fractions(max_denominator=1000)).filter(bool)


@settings(max_examples=300)
@given(nonzero_q, nonzero_q, st.sampled_from([2, 3, 5, 19]))
def test_valuation_is_discrete_over_q(x, y, p):
    assert valuation(x * y, p) == valuation(x, p) + valuation(y, p)
    if x + y:
        assert valuation(x + y, p) >= min(valuation(x, p), valuation(y, p))


@settings(max_examples=200)
@given(nonzero_qi, nonzero_qi, st.sampled_from([G(1, 1), G(2, 1), G(1, 2), G(3, 0), G(3, 2)]))
def test_valuation_is_discrete_over_gaussian_rationals(x, y, pi):
    assert valuation(x * y, pi) == valuation(x, pi) + valuation(y, pi)
    if x + y:
        assert valuation(x + y, pi) >= min(valuation(x, pi), valuation(y, pi))


def test_residue_fields():
    F = residue_field(ideal(G(2, 1)), "Qi")
    assert (F.p, F.degree) == (5, 1)
    assert F.i() * F.i() == F(-1)
    assert F.reduce(G(2, 1)) == F(0)
    F3 = residue_field(ideal(3), "Qi")
    assert (F3.p, F3.degree) == (3, 2)
    assert F3.i() * F3.i() == F3(-1)
    assert residue_field(ideal(G(1, 1)), "Qi").i() == residue_field(ideal(G(1, 1)), "Qi")(1)


@pytest.mark.parametrize("p", [5, 13, 29, 37, 7, 11])
def test_residue_field_reduction_is_a_ring_map(p):
    for pi in {ideal(x) for x in primes_of_field("Qi", p * p) if x.generator.norm() in (p, p * p)}:
        F = residue_field(pi, "Qi")
        for a, b in [(G(3, 4), G(-2, 7)), (G(10, -1), G(5, 5))]:
            assert F.reduce(a * b) == F.reduce(a) * F.reduce(b)
            assert F.reduce(a + b) == F.reduce(a) + F.reduce(b)


def test_reduce_curve_examples():
    assert reduce_curve(EXAMPLE, 19).contains(reduce_curve(EXAMPLE, 19).reduce_point(EP))
    for p in (2, 17):
        with pytest.raises(BadReduction):
            reduce_curve(EXAMPLE, p)
    with pytest.raises(BadReduction):
        reduce_curve(CM, G(1, 1))
    reduce_curve(CM, G(2, 1))
    reduce_curve(CM, 3)


def test_is_zero_mod_examples():
    assert is_zero_mod(EXAMPLE, example_point(2, 1), 19)
    assert not is_zero_mod(EXAMPLE, EQ, 19)
    assert is_zero_mod(EXAMPLE, INFINITY, 19)


@settings(max_examples=150)
@given(st.integers(-6, 6), st.integers(0, 3), st.sampled_from(GOOD_SMALL))
def test_is_zero_mod_matches_denominator(a, b, p):
    R = example_point(a, b)
    if R.is_infinity:
        assert is_zero_mod(EXAMPLE, R, p)
        return
    den = x_denominator_ideal(EXAMPLE, R)
    assert is_zero_mod(EXAMPLE, R, p) == any(q == ideal(p) for q, _ in den.factors)


@settings(max_examples=150)
@given(st.integers(-5, 5), st.integers(0, 3), st.integers(-5, 5), st.integers(0, 3), st.sampled_from(GOOD_SMALL))
def test_reduction_is_a_homomorphism(a, b, c, d, p):
    Er = reduce_curve(EXAMPLE, p)
    R, S = example_point(a, b), example_point(c, d)
    assert Er.reduce_point(EXAMPLE.add(R, S)) == Er.add(Er.reduce_point(R), Er.reduce_point(S))


@settings(max_examples=60)
@given(
    st.builds(G, st.integers(-3, 3), st.integers(-3, 3)),
    st.builds(G, st.integers(-3, 3), st.integers(-3, 3)),
    st.sampled_from([G(2, 1), G(1, 2), G(3, 0), G(3, 2), G(7, 0)]),
)
def test_cm_reduction_commutes_with_endomorphisms(a, b, pi):
    Er = reduce_curve(CM, pi)
    R = apply_endo(CM, a, CR)
    assert Er.reduce_point(apply_endo(CM, b, R)) == Er.endo(b, Er.reduce_point(R))


def naive_count(Er):
    """#E(F_p) by listing every affine point."""
    F = Er.residue
    p = F.p
    pts = 1
    for x in range(p):
        for y in range(p):
            if Er.contains(type(EP)(F(x), F(y))):
                pts += 1
    return pts


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 19, 23, 31, 43, 59])
def test_point_order_against_naive_count(p):
    Er = reduce_curve(EXAMPLE, p)
    n = naive_count(Er)
    for R in (EP, EQ, example_point(1, 1)):
        Rr = Er.reduce_point(R)
        m = Er.point_order(Rr)
        assert n % m == 0
        assert Er.mul(m, Rr).is_infinity
        # order by repeated addition
        k, S = 1, Rr
        while not S.is_infinity:
            S, k = Er.add(S, Rr), k + 1
        assert k == m


def brute_ann_z(Er, R):
    Rr = Er.reduce_point(R)
    k, S = 1, Rr
    while not S.is_infinity:
        S, k = Er.add(S, Rr), k + 1
    return ideal(k)


def test_ann_ideal_examples():
    assert ann_ideal(EXAMPLE, 19, EP) == ideal(8)
    assert ann_ideal(EXAMPLE, 19, EQ) == ideal(4)
    assert ann_ideal(EXAMPLE, 19, example_point(2, 1)) == ideal(1)
    with pytest.raises(BadReduction):
        ann_ideal(EXAMPLE, 17, EP)


@pytest.mark.parametrize("p", GOOD_SMALL[:20])
def test_ann_ideal_matches_brute_force_over_z(p):
    Er = reduce_curve(EXAMPLE, p)
    for R in (EP, EQ, example_point(3, 1)):
        ann = ann_ideal(EXAMPLE, p, R, reduced=Er)
        assert ann == brute_ann_z(Er, R)


@pytest.mark.parametrize("pi", [G(2, 1), G(1, 2), G(3, 2), G(2, 3), G(3, 0), G(4, 1), G(5, 2)])
def test_ann_ideal_matches_brute_force_over_gaussian_integers(pi):
    Er = reduce_curve(CM, pi)
    Rr = Er.reduce_point(CR)
    ann = ann_ideal(CM, pi, CR, "Zi")
    m = Er.point_order(Rr)
    # (m) is inside Ann, and the generator kills R
    assert ann.contains(G(m, 0))
    assert Er.endo(ann.generator, Rr).is_infinity
    # no element of smaller norm kills R unless it is a multiple of the generator
    bound = ann.generator.norm()
    for a in range(-6, 7):
        for b in range(-6, 7):
            g = G(a, b)
            if g.norm() == 0 or g.norm() > 4 * bound:
                continue
            assert Er.endo(g, Rr).is_infinity == ann.contains(g)


@settings(max_examples=100)
@given(st.integers(-6, 6), st.integers(0, 3), st.sampled_from(GOOD_SMALL))
def test_ann_contains_point_order(a, b, p):
    Er = reduce_curve(EXAMPLE, p)
    R = example_point(a, b)
    Rr = Er.reduce_point(R)
    m = Er.point_order(Rr)
    assert ann_ideal(EXAMPLE, p, R, reduced=Er).contains(G(m, 0))


def test_annihilator_of_q_is_four_at_good_primes():
    for p in primes_up_to(500):
        if p in (2, 17):
            continue
        assert ann_ideal(EXAMPLE, p, EQ) == ideal(4), p


def test_bad_places_example_curve():
    W = bad_places(EXAMPLE, EP, EQ, ideal(4), prime_cap=500)
    assert ideal(2) in W and ideal(17) in W
    assert ideal(19) not in W
    assert W.primes == [ideal(2), ideal(17)]
    assert W.reasons(2) == {BAD_REDUCTION, TORSION_NORM}
    assert is_good_prime(EXAMPLE, EQ, ideal(4), 19)
    assert not is_good_prime(EXAMPLE, EQ, ideal(4), 17)


def test_bad_places_cm_curve():
    W = bad_places(CM, CR, INFINITY, ideal(1), prime_cap=500)
    assert W.primes == [ideal(G(1, 1))]
    assert W.reasons(G(1, 1)) == {BAD_REDUCTION, RAMIFIED}


def test_bad_places_flags_torsion_injectivity():
    # with Q = O but a claimed annihilator (2), every odd good prime fails injectivity
    W = bad_places(EXAMPLE, EP, INFINITY, ideal(2), prime_cap=20)
    assert all(is_prime(p.generator.re) for p in W.primes)
    assert ideal(3) in W
