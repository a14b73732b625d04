"""Exact kernel: rationals, matrices, polynomials, truncated series."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logarr.exact.laurent import LaurentPoly, poly_divexact, poly_eval, poly_mul
from logarr.exact.linalg import RationalMatrix, RrefSpan, rank, rank_and_kernel
from logarr.exact.multipoly import MultiPoly, monomial_count, monomials
from logarr.exact.series import TruncatedSeries

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
nonzero_rationals = rationals.filter(lambda x: x != 0)


# -- field axioms of the ground rationals ------------------------------------

@given(rationals, rationals, rationals)
def test_rational_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == 0


@given(nonzero_rationals)
def test_rational_inverse(a):
    assert a * (1 / a) == 1
    assert Fraction(a).denominator > 0


# -- rank and kernel ----------------------------------------------------------

def test_rank_identity():
    M = RationalMatrix([[1, 0], [0, 1]])
    r, ker = rank_and_kernel(M)
    assert r == 2 and ker == []


def test_rank_zero_matrix():
    M = RationalMatrix([[0] * 5 for _ in range(3)])
    r, ker = rank_and_kernel(M)
    assert r == 0 and len(ker) == 5


def test_kernel_rank_one():
    M = RationalMatrix([[1, 2], [2, 4]])
    r, ker = rank_and_kernel(M)
    assert r == 1 and len(ker) == 1
    v = ker[0]
    # spanned by (2, -1)
    assert v[0] * (-1) == v[1] * 2
    assert M.mul_vector(v) == (0, 0)


@st.composite
def small_matrices(draw):
    rows = draw(st.integers(1, 5))
    cols = draw(st.integers(1, 5))
    ents = draw(st.lists(st.lists(st.integers(-6, 6), min_size=cols, max_size=cols),
                         min_size=rows, max_size=rows))
    return RationalMatrix(ents)


@given(small_matrices())
def test_kernel_annihilates_and_counts(M):
    r, ker = rank_and_kernel(M)
    assert r + len(ker) == M.cols
    for v in ker:
        assert all(x == 0 for x in M.mul_vector(v))


@given(small_matrices())
def test_rank_equals_rank_of_transpose(M):
    assert rank(M) == rank(M.transpose())


def test_rref_span_membership():
    span = RrefSpan()
    assert span.add({0: Fraction(1, 2), 1: Fraction(1)})
    assert not span.add({0: 1, 1: 2})
    assert span.add({1: 1})
    assert span.dim == 2
    assert span.contains({0: 7, 1: -3})


# -- multivariate polynomials ---------------------------------------------------

def test_monomial_enumeration():
    assert monomials(2, 2) == ((2, 0), (1, 1), (0, 2))
    assert len(monomials(3, 4)) == monomial_count(3, 4) == 15
    assert monomials(3, 0) == ((0, 0, 0),)
    assert monomials(2, -1) == ()


def test_reduce_mod_linear_examples():
    # x*y mod <y> = 0
    xy = MultiPoly.variable(2, 0) * MultiPoly.variable(2, 1)
    assert xy.reduce_mod_linear([0, 1]).is_zero()
    # x^2 + y^2 mod <x - y>: substitute y = x (pivot is the largest index)
    p = MultiPoly.variable(2, 0) ** 2 + MultiPoly.variable(2, 1) ** 2
    red = p.reduce_mod_linear([1, -1])
    assert red == MultiPoly.variable(2, 0) ** 2 * 2
    # constants are untouched
    one = MultiPoly.constant(3, 1)
    assert one.reduce_mod_linear([1, 2, 3]) == one


def test_reduce_mod_linear_rejects_zero_form():
    with pytest.raises(ValueError):
        MultiPoly.variable(2, 0).reduce_mod_linear([0, 0])


@st.composite
def homogeneous_polys(draw, nvars=3, degree=None):
    if degree is None:
        degree = draw(st.integers(0, 3))
    mons = monomials(nvars, degree)
    coeffs = draw(st.lists(st.integers(-4, 4), min_size=len(mons), max_size=len(mons)))
    return MultiPoly(nvars, dict(zip(mons, coeffs)))


@st.composite
def linear_forms(draw, nvars=3):
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=nvars, max_size=nvars)
                  .filter(lambda c: any(c)))
    return coeffs


@given(homogeneous_polys(), linear_forms())
def test_reduction_detects_divisibility(p, alpha):
    """For homogeneous p: reduce = 0 iff the form divides p (checked against
    exact division)."""
    form = MultiPoly.linear_form(alpha)
    multiple = p * form
    assert multiple.reduce_mod_linear(alpha).is_zero()
    if not p.is_zero():
        reduced = p.reduce_mod_linear(alpha)
        divisible = True
        try:
            q = p.divexact_linear(alpha)
            divisible = q * form == p
        except ValueError:
            divisible = False
        assert reduced.is_zero() == divisible


@given(homogeneous_polys(), linear_forms())
def test_divexact_linear_inverts_multiplication(p, alpha):
    form = MultiPoly.linear_form(alpha)
    assert (p * form).divexact_linear(alpha) == p


@given(homogeneous_polys(nvars=2), homogeneous_polys(nvars=2), homogeneous_polys(nvars=2))
def test_multipoly_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a


# -- Laurent polynomials ---------------------------------------------------------

def test_laurent_divexact_one_minus_t():
    # (1 - t)(2 t^-1 + 3) = 2 t^-1 + 1 - 3t
    p = LaurentPoly({-1: 2, 0: 1, 1: -3})
    q = p.divexact_one_minus_t()
    assert q == LaurentPoly({-1: 2, 0: 3})
    with pytest.raises(ValueError):
        LaurentPoly({0: 1}).divexact_one_minus_t()


def test_laurent_invert_variable_and_eval():
    p = LaurentPoly({-2: 1, 1: 5})
    assert p.invert_variable() == LaurentPoly({2: 1, -1: 5})
    assert p.evaluate(2) == Fraction(1, 4) + 10


def test_int_poly_helpers():
    assert poly_mul([1, 1], [1, -1]) == [1, 0, -1]
    assert poly_divexact([1, 0, -1], [1, 1]) == [1, -1]
    assert poly_eval([1, 2, 3], -1) == 2
    with pytest.raises(ValueError):
        poly_divexact([1, 1, 1], [1, 1])


# -- truncated bivariate series ---------------------------------------------------

def test_series_product_truncates():
    one_plus_t = TruncatedSeries.from_t_coeffs(3, [1, 1])
    one_minus_t = TruncatedSeries.from_t_coeffs(3, [1, -1])
    prod = one_plus_t * one_minus_t
    assert prod == TruncatedSeries.from_t_coeffs(3, [1, 0, -1, 0])


def test_series_inverse_geometric():
    # 1 + u t  ->  1 - u t + u^2 t^2
    s = TruncatedSeries(2, [(Fraction(1),), (Fraction(0), Fraction(1))])
    inv = s.inverse()
    assert inv.coefficient(0, 0) == 1
    assert inv.coefficient(1, 1) == -1
    assert inv.coefficient(2, 2) == 1
    assert inv.u_degree(0) == 0


def test_series_inverse_requires_scalar_unit():
    s = TruncatedSeries(2, [(Fraction(1), Fraction(1))])  # constant term 1 + u
    with pytest.raises(ValueError):
        s.inverse()
    with pytest.raises(ValueError):
        TruncatedSeries.zero(2).inverse()


@st.composite
def small_series(draw, order=3, udeg=2):
    coeffs = []
    for _ in range(order + 1):
        n = draw(st.integers(0, udeg))
        coeffs.append(tuple(Fraction(draw(st.integers(-3, 3))) for _ in range(n + 1)))
    return TruncatedSeries(order, coeffs)


@given(small_series(), small_series(), small_series())
@settings(max_examples=40)
def test_series_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


@given(small_series())
def test_series_inverse_roundtrip(a):
    unit = TruncatedSeries.one(a.order) + a * TruncatedSeries.from_t_coeffs(
        a.order, [0, 1])  # 1 + t*a has scalar unit constant term
    assert unit * unit.inverse() == TruncatedSeries.one(a.order)


@given(small_series(), small_series())
def test_truncation_is_ring_homomorphism(a, b):
    assert (a * b).truncate(2) == a.truncate(2) * b.truncate(2)
    assert (a + b).truncate(2) == a.truncate(2) + b.truncate(2)
