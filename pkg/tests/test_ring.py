"""Ring axioms and structural invariants of the arithmetic tower."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from biperiodic.ring import (
    ABX2,
    AX,
    BX,
    A,
    B,
    K,
    LaurentPoly,
    Mat2,
    T,
    TowerElem,
    U,
    V,
    X,
    monomial_inverse,
)

coefficients = st.fractions(
    min_value=-9, max_value=9, max_denominator=6)
exponents = st.integers(min_value=-2, max_value=2)


@st.composite
def laurent_polys(draw, max_terms=4):
    n_terms = draw(st.integers(min_value=0, max_value=max_terms))
    p = LaurentPoly.zero()
    for _ in range(n_terms):
        c = draw(coefficients)
        ea, eb, ex, et = (draw(exponents) for _ in range(4))
        p = p + LaurentPoly.monomial(c, ea, eb, ex, et)
    return p


@st.composite
def tower_elems(draw):
    return TowerElem(*(draw(laurent_polys(max_terms=2)) for _ in range(4)))


@settings(max_examples=200)
@given(laurent_polys(), laurent_polys(), laurent_polys())
def test_laurent_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + LaurentPoly.zero() == p
    assert p * LaurentPoly.one() == p
    assert (p - p).is_zero


@settings(max_examples=200)
@given(tower_elems(), tower_elems(), tower_elems())
def test_tower_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * TowerElem.one() == p
    assert (p - p).is_zero


def test_tower_defining_relations():
    """u^2 = ax, v^2 = bx, and w = uv behaves as x*sqrt(ab)."""
    assert U * U == TowerElem.from_poly(AX)
    assert V * V == TowerElem.from_poly(BX)
    assert U * V == K
    assert K * K == TowerElem.from_poly(ABX2)
    assert K * U == TowerElem(cv=AX)
    assert K * V == TowerElem(cu=BX)


@settings(max_examples=100)
@given(tower_elems(), tower_elems())
def test_sector_grading(p, q):
    """Even {1,w} and odd {u,v} sectors multiply like Z/2 degrees."""
    even_p = TowerElem(c1=p.c1, cuv=p.cuv)
    even_q = TowerElem(c1=q.c1, cuv=q.cuv)
    odd_p = TowerElem(cu=p.cu, cv=p.cv)
    odd_q = TowerElem(cu=q.cu, cv=q.cv)
    assert (even_p * even_q).is_even_sector
    assert (even_p * odd_q).is_odd_sector
    assert (odd_p * odd_q).is_even_sector


@settings(max_examples=60)
@given(laurent_polys(max_terms=2), laurent_polys(max_terms=2),
       laurent_polys(max_terms=2), laurent_polys(max_terms=2),
       laurent_polys(max_terms=2), laurent_polys(max_terms=2),
       laurent_polys(max_terms=2), laurent_polys(max_terms=2))
def test_det_is_multiplicative(a11, a12, a21, a22, b11, b12, b21, b22):
    m = Mat2(a11, a12, a21, a22)
    n = Mat2(b11, b12, b21, b22)
    assert (m * n).det() == m.det() * n.det()


@settings(max_examples=100)
@given(laurent_polys(), laurent_polys(),
       st.fractions(min_value=1, max_value=5, max_denominator=3),
       st.fractions(min_value=1, max_value=5, max_denominator=3),
       st.fractions(min_value=1, max_value=5, max_denominator=3),
       st.fractions(min_value=1, max_value=5, max_denominator=3))
def test_eval_is_ring_homomorphism(p, q, a0, b0, x0, t0):
    point = (a0, b0, x0, t0)
    assert (p + q).eval(*point) == p.eval(*point) + q.eval(*point)
    assert (p * q).eval(*point) == p.eval(*point) * q.eval(*point)


def test_eval_rejects_zero_into_negative_exponent():
    p = LaurentPoly.monomial(1, 0, 0, 0, -2)
    with pytest.raises(ZeroDivisionError):
        p.eval(1, 1, 1, 0)
    assert p.eval(1, 1, 1, 2) == Fraction(1, 4)


def test_power_negative_exponent_monomials_only():
    m = LaurentPoly.monomial(Fraction(2, 3), 1, 0, 2, -1)
    assert m ** -1 == LaurentPoly.monomial(Fraction(3, 2), -1, 0, -2, 1)
    assert m ** -2 * m ** 2 == LaurentPoly.one()
    with pytest.raises(ValueError):
        (A + B) ** -1


def test_monomial_inverse_errors():
    with pytest.raises(ZeroDivisionError):
        monomial_inverse(LaurentPoly.zero())
    with pytest.raises(ValueError):
        monomial_inverse(A + B)


def test_t_slice_and_coefficient():
    p = T ** 2 * A + T * B - X + T ** -3
    assert p.t_slice(0, None) == T ** 2 * A + T * B - X
    assert p.t_slice(None, -1) == T ** -3
    assert p.t_slice(1, 1) == T * B
    assert p.t_coefficient(2) == A
    assert p.t_coefficient(5).is_zero
    assert p.t_exponents() == [-3, 0, 1, 2]


def test_rendering_is_canonical():
    """Terms print in descending (t, a, b, x) exponent order with
    unit coefficients and zero exponents omitted."""
    assert str(LaurentPoly.zero()) == "0"
    assert str(LaurentPoly.one()) == "1"
    assert str(-A) == "-a"
    assert str(A * B ** 2 * X - T + LaurentPoly.const(Fraction(1, 2))) == \
        "-t + a*b^2*x + 1/2"
    assert str(B * monomial_inverse(A)) == "a^-1*b"
    assert str(TowerElem(cu=BX)) == "(0) + (b*x)*u + (0)*v + (0)*w"
    assert str(Mat2(A, B, X, T)) == "[[a, b], [x, t]]"


def test_coercion_rejects_unknown_types():
    assert LaurentPoly.one().__add__("junk") is NotImplemented
    assert TowerElem.one().__mul__("junk") is NotImplemented
    assert A + 1 == LaurentPoly.one() + A
    assert 2 * U == U + U
    assert (3 - A) == -(A - 3)


def test_eval_float_uses_positive_roots():
    elem = U + V  # sqrt(a x) + sqrt(b x)
    val = elem.eval_float(4, 9, 1)
    assert val == pytest.approx(2.0 + 3.0)
    k_val = K.eval_float(4, 9, 1)
    assert k_val == pytest.approx(6.0)
