from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from moulcalc.errors import MouldError
from moulcalc.poly import Poly

coef = st.fractions(min_value=-5, max_value=5, max_denominator=7)
exps = st.tuples(st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(exps, coef, max_size=5).map(lambda t: Poly(2, t))


def test_cap_drops_high_terms():
    p = Poly(1, {(1,): 1, (4,): 2}, cap=3)
    assert p == Poly(1, {(1,): 1})
    assert (Poly.variable(1, 0, 3) ** 5) == 0


def test_derivative_and_evaluation():
    x, y = Poly.variable(2, 0), Poly.variable(2, 1)
    p = x * x * y + 3 * y
    assert p.derivative(0) == 2 * x * y
    assert p(2, Fraction(1, 3)) == Fraction(4, 3) + 1


def test_substitute_composes():
    x = Poly.variable(1, 0)
    p = x * x + x
    assert p.substitute([x + 1]) == x * x + 3 * x + 2


def test_divide_difference_exact_and_inexact():
    a, b = Poly.variable(2, 0), Poly.variable(2, 1)
    assert (a * a - b * b).divide_difference(0, 1) == a + b
    with pytest.raises(MouldError):
        (a * a + b).divide_difference(0, 1)


@given(polys, polys, polys)
def test_ring_laws(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == 0


@given(polys, polys)
def test_product_rule(p, q):
    assert (p * q).derivative(1) == p.derivative(1) * q + p * q.derivative(1)


@given(polys)
def test_truncation_commutes_with_product(p):
    q = p.truncated(3)
    assert (q * q).truncated(3) == (p * p).truncated(3)
