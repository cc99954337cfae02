import math

import pytest
from hypothesis import given, strategies as st

from sll.field import GF, QQ
from sll.matrix import Matrix
from sll.subspace import (Subspace, SubspaceError, annihilator, cohomogeneous, enumerate_subspaces,
                          homogeneous, intersect, is_direct_sum, quotient_coords, span, sum_)
from sll.twosum import make

from conftest import FIELDS, subspace_tuples


def e(f, n, *idx):
    return Subspace.unit(f, n, *idx)


# -- examples -----------------------------------------------------------------------


@pytest.mark.parametrize("f", FIELDS)
def test_sum_and_intersection_examples(f):
    assert sum_(e(f, 3, 0), e(f, 3, 1)) == e(f, 3, 0, 1)
    a = e(f, 3, 0, 2)
    assert a + a == a and a & a == a
    assert intersect(e(f, 3, 0, 1), e(f, 3, 1, 2)) == e(f, 3, 1)
    assert span(f, 2, [1, 0]) + span(f, 2, [1, 1]) == Subspace.full(f, 2)


@pytest.mark.parametrize("f", FIELDS)
def test_direct_sum_examples(f):
    assert is_direct_sum([e(f, 2, 0), e(f, 2, 1)])
    assert not is_direct_sum([e(f, 2, 0), e(f, 2, 0)])
    assert is_direct_sum([e(f, 2, 0), span(f, 2, [1, 1])])


def test_homogeneity_examples():
    f = QQ
    e1, e2 = e(f, 2, 0), e(f, 2, 1)
    assert homogeneous(e1, e1, e2)
    assert not homogeneous(span(f, 2, [1, 1]), e1, e2)
    assert cohomogeneous(Subspace.zero(f, 2), e1, e2)
    assert cohomogeneous(Subspace.full(f, 2), e1, e2)


def test_annihilator_examples():
    f = QQ
    assert annihilator(Subspace.zero(f, 2)) == Subspace.full(f, 2)
    assert annihilator(Subspace.full(f, 2)).is_zero()
    assert annihilator(e(f, 2, 0)) == e(f, 2, 1)


def test_quotient_examples():
    f = QQ
    q = quotient_coords(Subspace.full(f, 2), Subspace.zero(f, 2))
    assert q.section == Matrix.identity(f, 2) and q.project == Matrix.identity(f, 2)
    q = quotient_coords(e(f, 3, 0, 1), e(f, 3, 0))
    assert q.dim == 1
    assert Subspace.from_matrix(q.section) == e(f, 3, 1)
    # G2 fixture interval: (V1+W1)/(V1∩W1) = Q^2/{0}
    v1, w1 = span(f, 2, [1, 0]), span(f, 2, [1, 1])
    q = quotient_coords(v1 + w1, v1 & w1)
    assert q.section @ q.project == Matrix.identity(f, 2)


def test_quotient_requires_containment():
    with pytest.raises(SubspaceError):
        quotient_coords(e(QQ, 2, 0), e(QQ, 2, 1))


def test_ambient_mismatch():
    with pytest.raises(SubspaceError):
        e(QQ, 2, 0) + e(QQ, 3, 0)
    with pytest.raises(SubspaceError):
        e(QQ, 2, 0) + e(GF(3), 2, 0)


def test_canonical_form_equality():
    f = GF(5)
    a = Subspace(f, 3, [[1, 2, 3], [0, 1, 1]])
    b = Subspace(f, 3, [[1, 3, 4], [2, 4, 1]])
    assert (a == b) == (a.dim == (a + b).dim == b.dim)
    assert hash(a) == hash(Subspace(f, 3, list(a.rows)))


# -- enumeration -----------------------------------------------------------------------


def gaussian_binomial(n, k, q):
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@pytest.mark.parametrize("p,n", [(3, 2), (3, 3), (3, 4), (5, 3)])
def test_enumeration_counts(p, n):
    subs = list(enumerate_subspaces(GF(p), n))
    assert len(subs) == len(set(subs))
    for k in range(n + 1):
        assert sum(1 for s in subs if s.dim == k) == gaussian_binomial(n, k, p)


def test_enumeration_needs_finite_field():
    with pytest.raises(SubspaceError):
        list(enumerate_subspaces(QQ, 2))


# -- lattice-theoretic properties ------------------------------------------------------


@given(subspace_tuples(3))
def test_absorption_and_modular_law(t):
    f, n, (a, b, c) = t
    assert a + (a & b) == a
    assert a & (a + b) == a
    if a <= c:
        assert (a + b) & c == a + (b & c)


@given(subspace_tuples(2))
def test_dimension_formula(t):
    f, n, (a, b) = t
    assert (a + b).dim + (a & b).dim == a.dim + b.dim


@given(subspace_tuples(2))
def test_annihilator_properties(t):
    f, n, (a, b) = t
    assert a.annihilator().annihilator() == a
    assert a.annihilator().dim == n - a.dim
    assert (a + b).annihilator() == a.annihilator() & b.annihilator()
    assert (a & b).annihilator() == a.annihilator() + b.annihilator()


@given(subspace_tuples(2))
def test_quotient_section_project_identity(t):
    f, n, (a, b) = t
    u, w = a + b, a & b
    q = quotient_coords(u, w)
    assert q.dim == u.dim - w.dim
    if q.dim:
        assert q.section @ q.project == Matrix.identity(f, q.dim)
    for row in w.rows:
        assert all(x == f.zero for x in (Matrix.raw(f, [row], n) @ q.project).rows[0]) or q.dim == 0


@given(subspace_tuples(1))
def test_inclusion_order(t):
    f, n, (a,) = t
    assert Subspace.zero(f, n) <= a <= Subspace.full(f, n)
    for row in a.rows:
        assert a.contains(row)


@given(st.sampled_from([GF(3), GF(5)]), st.integers(0, 10 ** 6))
def test_random_twosum_chain_parts_cohomogeneous(f, seed):
    from sll.instances import random_twosum, rng_for
    dec = random_twosum(f, 4, rng_for(seed))
    c = dec.chains
    for s in c.f_e + c.f_tau:
        assert cohomogeneous(s, dec.v1, dec.v2)
    assert homogeneous(c.ftilde[-1], dec.v1, dec.v2)
    assert make(dec.v1, dec.v2, dec.w1, dec.w2) == dec
