from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from otlab import polynomials as P

small_polys = st.lists(st.integers(-9, 9), min_size=1, max_size=6).map(P.trim)
monic_polys = st.lists(st.integers(-9, 9), min_size=1, max_size=5).map(lambda c: c + [1])


def test_discriminant_known_values():
    assert P.discriminant([-1, -1, 0, 1]) == -23
    assert P.discriminant([-2, 0, 1]) == 8
    assert P.discriminant([-1, -1, 0, 0, 1]) == -283
    assert P.discriminant([-1, -1, 0, 0, 0, 1]) == 2869


@given(monic_polys)
def test_discriminant_agrees_with_sympy(f):
    x = sympy.Symbol("x")
    expr = sum(c * x**k for k, c in enumerate(f))
    assert P.discriminant(f) == sympy.discriminant(expr, x)


@given(small_polys, small_polys)
def test_multiplication_matches_evaluation(f, g):
    for x in (-2, 0, 3, Fraction(1, 3)):
        assert P.evaluate(P.mul(f, g), x) == P.evaluate(f, x) * P.evaluate(g, x)


@given(small_polys, monic_polys)
def test_division_identity(f, g):
    q, r = P.divmod_poly(f, g)
    assert P.add(P.mul(q, g), r) == P.trim(f)
    assert P.degree(r) < P.degree(g)


@given(small_polys, st.integers(-4, 4))
def test_shift_composition(f, c):
    g = P.compose_shift(f, c)
    for x in (-1, 0, 2):
        assert P.evaluate(g, x) == P.evaluate(f, x + c)


def test_bareiss_matches_fraction_determinant():
    m = [[2, -1, 0], [3, 4, 1], [-2, 5, 7]]
    assert P.bareiss_det(m) == P.fraction_det(m) == int(sympy.Matrix(m).det())


def test_integer_roots():
    assert sorted(P.integer_roots([-6, 11, -6, 1])) == [1, 2, 3]
    assert P.integer_roots([-1, -1, 0, 1]) == []


def test_squarefree_integers():
    assert P.is_squarefree_integer(-23)
    assert P.is_squarefree_integer(2869)
    assert not P.is_squarefree_integer(8)
    assert not P.is_squarefree_integer(49 * 101)
    assert all(P.is_squarefree_integer(n) == (sympy.factorint(n) and max(sympy.factorint(n).values()) == 1)
               for n in range(2, 400))
