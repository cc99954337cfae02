import sympy
from hypothesis import given, strategies as st

from sll.field import GF, QQ
from sll.matrix import Matrix
from sll.poly import Poly, characteristic_polynomial, invariant_factors

from conftest import matrices


def sympy_charpoly(m: Matrix):
    x = sympy.Symbol("x")
    s = sympy.Matrix(m.nrows, m.ncols, lambda i, j: sympy.Rational(m.rows[i][j]))
    return [sympy.Rational(c) for c in reversed(s.charpoly(x).all_coeffs())]


def test_examples():
    x = Poly.x(QQ)
    assert invariant_factors(Matrix.identity(QQ, 2).scale(2)) == [x - Poly.const(QQ, 2)] * 2
    assert invariant_factors(Matrix(QQ, [[0, 1], [0, 0]])) == [x * x]
    assert str(x * x - Poly.const(QQ, 2)) == "x^2 - 2"
    assert invariant_factors(Matrix.zeros(QQ, 0, 0)) == []


@given(matrices(field=QQ, nrows=3, ncols=3))
def test_charpoly_matches_sympy(m):
    cp = characteristic_polynomial(m)
    assert [sympy.Rational(c) for c in cp.coeffs] == sympy_charpoly(m)


@given(st.sampled_from([QQ, GF(3), GF(5)]).flatmap(lambda f: matrices(field=f, nrows=4, ncols=4)))
def test_invariant_factor_chain(m):
    facts = invariant_factors(m)
    assert sum(d.degree for d in facts) == 4
    for a, b in zip(facts, facts[1:]):
        assert b.divmod(a)[1].is_zero()
    for d in facts:
        assert d.lead == m.field.one
    # the largest factor is the minimal polynomial: it annihilates m
    assert facts[-1](m).is_zero()


@given(st.sampled_from([QQ, GF(5)]).flatmap(lambda f: matrices(field=f, nrows=3, ncols=3)),
       st.integers(0, 10 ** 6))
def test_similarity_invariance(m, seed):
    import random
    from sll.instances import random_invertible
    p = random_invertible(m.field, 3, random.Random(seed))
    assert invariant_factors(p @ m @ p.inverse()) == invariant_factors(m)
