from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cmeds.curve import (
    INFINITY,
    NON_TORSION,
    ZERO_TERM,
    CurvePoint,
    TorsionInconclusive,
    WeierstrassCurve,
    apply_endo,
    shifted_term,
    torsion_annihilator,
    x_denominator_ideal,
)
from cmeds.numberfield import GaussianInteger, GaussianRational, PreconditionError, factor_ideal, ideal

G = GaussianInteger
GR = GaussianRational

EXAMPLE = WeierstrassCurve.from_coefficients([0, 0, 0, -11, 890])
EP, EQ = EXAMPLE.point(-1, 30), EXAMPLE.point(7, 34)
CM = WeierstrassCurve.from_coefficients([0, 0, 0, -2, 0], "Qi", cm=True)
CR = CM.point(-1, 1)
# every a-invariant nonzero, with a6 chosen so that (1, 1) lies on the curve
LONG = WeierstrassCurve.from_coefficients([1, -1, 1, -6, 9])
LP = LONG.point(1, 1)


@lru_cache(maxsize=None)
def example_point(a, b):
    return EXAMPLE.add(EXAMPLE.mul(a, EP), EXAMPLE.mul(b, EQ))


@lru_cache(maxsize=None)
def cm_point(a, b):
    return apply_endo(CM, G(a, b), CR)


@lru_cache(maxsize=None)
def long_point(n):
    return LONG.mul(n, LP)


coef = st.integers(-5, 5)
example_points = st.builds(example_point, coef, st.integers(0, 3))
cm_points = st.builds(cm_point, st.integers(-3, 3), st.integers(-3, 3))


def test_curve_validation():
    with pytest.raises(ValueError):
        WeierstrassCurve.from_coefficients([0, 0, 0, 0, 0])
    with pytest.raises(ValueError):
        WeierstrassCurve.from_coefficients([0, 0, 0, Fraction(1, 2), 1])
    with pytest.raises(ValueError):
        WeierstrassCurve.from_coefficients([0, 0, 0, -2, 1], "Qi", cm=True)
    with pytest.raises(ValueError):
        WeierstrassCurve.from_coefficients([0, 0, 0, -2, 0], "Q", cm=True)
    with pytest.raises(ValueError):
        EXAMPLE.point(0, 0)


def test_discriminants():
    assert EXAMPLE.discriminant() == -(2**12) * 17**4
    # -16 (4 (-2)^3) = 2^9
    assert CM.discriminant() == 2**9


def test_add_identity_and_inverse():
    assert EXAMPLE.add(EP, INFINITY) == EP
    assert EXAMPLE.add(INFINITY, EP) == EP
    assert EXAMPLE.add(EP, EXAMPLE.neg(EP)).is_infinity


def test_add_rejects_points_off_curve():
    with pytest.raises(ValueError):
        EXAMPLE.add(EP, CurvePoint(Fraction(0), Fraction(0)))


def test_cm_chord_example():
    S = CM.point(1, GR(0, 1))
    expected = CurvePoint(GR(0, Fraction(-1, 2)), GR(Fraction(-3, 4), Fraction(-3, 4)))
    assert CM.add(CR, S) == expected
    assert CM.contains(expected)


def test_apply_endo_examples():
    assert apply_endo(EXAMPLE, 2, EP) == EXAMPLE.add(EP, EP)
    assert apply_endo(CM, G(0, 1), CR) == CM.point(1, GR(0, 1))
    assert apply_endo(CM, G(1, 1), CR) == CurvePoint(GR(0, Fraction(-1, 2)), GR(Fraction(-3, 4), Fraction(-3, 4)))
    with pytest.raises(PreconditionError):
        apply_endo(EXAMPLE, G(0, 1), EP)


@settings(max_examples=200)
@given(example_points, example_points, example_points)
def test_group_law_associative_commutative(R, S, T):
    E = EXAMPLE
    assert E.add(R, S) == E.add(S, R)
    assert E.add(E.add(R, S), T) == E.add(R, E.add(S, T))
    assert E.contains(E.add(R, S))


@settings(max_examples=60)
@given(*(st.builds(long_point, st.integers(-4, 4)) for _ in range(3)))
def test_long_form_group_law(R, S, T):
    E = LONG
    assert E.add(E.add(R, S), T) == E.add(R, E.add(S, T))
    assert E.add(R, E.neg(R)).is_infinity
    assert E.contains(E.mul(3, R))


@settings(max_examples=60)
@given(cm_points, cm_points, cm_points)
def test_cm_group_law(R, S, T):
    E = CM
    assert E.add(E.add(R, S), T) == E.add(R, E.add(S, T))
    assert E.contains(E.add(R, S))


@settings(max_examples=60)
@given(st.builds(G, st.integers(-3, 3), st.integers(-3, 3)), st.builds(G, st.integers(-3, 3), st.integers(-3, 3)))
def test_apply_endo_additive(a, b):
    lhs = apply_endo(CM, a + b, CR)
    rhs = CM.add(apply_endo(CM, a, CR), apply_endo(CM, b, CR))
    assert lhs == rhs
    assert CM.contains(lhs)


@settings(max_examples=40)
@given(cm_points)
def test_i_squared_is_minus_one(R):
    i = G(0, 1)
    assert apply_endo(CM, i, apply_endo(CM, i, R)) == CM.neg(R)


@settings(max_examples=40)
@given(st.builds(G, st.integers(-3, 3), st.integers(-3, 3)), st.builds(G, st.integers(-2, 2), st.integers(-2, 2)))
def test_apply_endo_multiplicative(a, b):
    assert apply_endo(CM, a * b, CR) == apply_endo(CM, a, apply_endo(CM, b, CR))


def test_torsion_annihilator_examples():
    assert torsion_annihilator(EXAMPLE, EQ) == ideal(4)
    assert torsion_annihilator(EXAMPLE, INFINITY) == ideal(1)
    assert torsion_annihilator(EXAMPLE, EP) is NON_TORSION
    assert torsion_annihilator(EXAMPLE, EXAMPLE.mul(2, EQ)) == ideal(2)
    # (0, 0) is 2-torsion; over Z[i] it is killed by 1 + i
    T = CM.point(0, 0)
    assert torsion_annihilator(CM, T, "Z") == ideal(2)
    assert torsion_annihilator(CM, T, "Zi") == ideal(G(1, 1))
    assert torsion_annihilator(CM, CR, "Zi") is NON_TORSION


def test_torsion_annihilator_detectors_must_agree(monkeypatch):
    import cmeds.heights as heights

    monkeypatch.setattr(heights, "canonical_height", lambda E, R: heights.HeightValue(0.5, 0.0))
    with pytest.raises(TorsionInconclusive):
        torsion_annihilator(EXAMPLE, EQ)
    monkeypatch.setattr(heights, "canonical_height", lambda E, R: heights.HeightValue(0.0, 0.0))
    with pytest.raises(TorsionInconclusive):
        torsion_annihilator(EXAMPLE, EP)


def test_x_denominator_examples():
    assert str(x_denominator_ideal(EXAMPLE, EQ)) == "(1)"
    assert str(x_denominator_ideal(EXAMPLE, EXAMPLE.add(EP, EQ))) == "(2)^2"
    R = apply_endo(CM, G(1, 1), CR)
    assert x_denominator_ideal(CM, R) == factor_ideal(2, "Zi")
    assert str(x_denominator_ideal(CM, R)) == "(1+i)^2"


GOLDEN = ["(1)", "(2)^2", "(19)^2", "(6991)^2", "(12338681)^2", "(2)^2*(4890590069)^2"]


@pytest.mark.parametrize("n", range(6))
def test_shifted_term_golden_table(n):
    assert str(shifted_term(EXAMPLE, EP, EQ, n)) == GOLDEN[n]


def test_shifted_term_zero_marker():
    # -P + P = O, so with Q = P the index -1 gives the zero term
    assert shifted_term(EXAMPLE, EP, EP, -1) is ZERO_TERM
    assert str(ZERO_TERM) == "0"


@settings(max_examples=50)
@given(example_points)
def test_x_denominator_is_square_over_q(R):
    if R.is_infinity:
        return
    f = x_denominator_ideal(EXAMPLE, R)
    assert all(e % 2 == 0 for _, e in f.factors)
