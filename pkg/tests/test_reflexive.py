import pytest
from hypothesis import given, strategies as st

from sll.field import GF, QQ
from sll.fixtures import aligned, aligned_hyperbolic, swapped, swapped_identity
from sll.instances import random_block_reflexive, random_form, random_reflexive, rng_for
from sll.matrix import Matrix
from sll.reflexive import (BilinearForm, FormError, FormKind, Isotropy, adjoint, hyperbolic, isotropy,
                           para_kahler_check, perp, reflexive_decomposition, verify_ffforth)
from sll.report import PreconditionError
from sll.subspace import Subspace, span
from sll.twosum import NotComplementary, canonical_split, make

E1 = Subspace.unit(QQ, 2, 0)
E2 = Subspace.unit(QQ, 2, 1)


def identity_form(f=QQ, n=2):
    return BilinearForm(Matrix.identity(f, n))


def test_form_validation():
    with pytest.raises(FormError):
        BilinearForm(Matrix(QQ, [[1, 1], [0, 1]]))
    with pytest.raises(FormError):
        BilinearForm(Matrix(QQ, [[1, 1], [1, 1]]))
    with pytest.raises(FormError):
        BilinearForm(Matrix.zeros(QQ, 3, 3), FormKind.antisymmetric)
    BilinearForm(Matrix(QQ, [[0, 1], [-1, 0]]), FormKind.antisymmetric)


def test_perp_examples():
    h = hyperbolic(QQ)
    assert perp(h, E1) == E1
    g = identity_form(QQ, 3)
    assert perp(g, Subspace.unit(QQ, 3, 0)) == Subspace.unit(QQ, 3, 1, 2)
    assert perp(h, Subspace.zero(QQ, 2)) == Subspace.full(QQ, 2)


def test_reflexive_decomposition_examples():
    dec, _ = reflexive_decomposition(hyperbolic(QQ), E1, E2)
    assert dec == aligned()
    dec, _ = reflexive_decomposition(identity_form(), E1, E2)
    assert dec == swapped()
    with pytest.raises(NotComplementary):
        reflexive_decomposition(hyperbolic(QQ), E1)
    dec, v2 = reflexive_decomposition(identity_form(), E1)
    assert v2 == E2


def test_isotropy_examples():
    assert isotropy(hyperbolic(QQ), E1) is Isotropy.totally_isotropic
    assert isotropy(identity_form(), E1) is Isotropy.nondegenerate
    g = BilinearForm(Matrix.diag(QQ, [1, -1]))
    assert isotropy(g, span(QQ, 2, [1, 1])) is Isotropy.totally_isotropic
    assert isotropy(g, Subspace.zero(QQ, 2)) is Isotropy.nondegenerate
    g3 = BilinearForm(Matrix.diag(QQ, [1, 1, -1]))
    assert isotropy(g3, Subspace(QQ, 3, [[1, 0, 1], [0, 1, 0]])) is Isotropy.degenerate


def test_adjoint_examples():
    m = Matrix(QQ, [[1, 2], [3, 4]])
    assert adjoint(identity_form(), m) == m.T
    d = Matrix.diag(QQ, [1, -1])
    assert adjoint(hyperbolic(QQ), d) == -d
    h = hyperbolic(QQ)
    assert adjoint(h, adjoint(h, m)) == m


def test_para_kahler_examples():
    d = Matrix.diag(QQ, [1, -1])
    assert para_kahler_check(hyperbolic(QQ), d)
    assert not para_kahler_check(identity_form(), d)
    assert not para_kahler_check(hyperbolic(QQ), Matrix.identity(QQ, 2))


def test_ffforth_fixtures():
    for form, dec in (aligned_hyperbolic(), swapped_identity()):
        assert verify_ffforth(form, dec).passed


def test_ffforth_rejects_non_reflexive():
    from sll.fixtures import g2
    with pytest.raises(PreconditionError):
        verify_ffforth(identity_form(), g2())


# -- properties ---------------------------------------------------------------------------


@st.composite
def reflexive_instances(draw, max_n=6, fields=(GF(3), GF(5), QQ)):
    f = draw(st.sampled_from(fields))
    n = draw(st.integers(1, max_n))
    rng = rng_for(draw(st.integers(0, 10 ** 9)))
    if draw(st.booleans()):
        return random_reflexive(f, n, rng)
    return random_block_reflexive(f, n, rng)[0]


@st.composite
def form_and_pair(draw):
    f = draw(st.sampled_from([GF(3), GF(5), QQ]))
    n = draw(st.integers(1, 5))
    rng = rng_for(draw(st.integers(0, 10 ** 9)))
    g = random_form(f, n, rng)
    from sll.instances import random_subspace
    a = random_subspace(f, n, rng.randint(0, n), rng)
    b = random_subspace(f, n, rng.randint(0, n), rng)
    return g, a, b, rng


@given(form_and_pair())
def test_perp_lattice_duality(t):
    g, a, b, _ = t
    assert perp(g, perp(g, a)) == a
    assert perp(g, a).dim == g.dim - a.dim
    assert perp(g, a + b) == perp(g, a) & perp(g, b)
    assert perp(g, a & b) == perp(g, a) + perp(g, b)
    if a <= b:
        assert perp(g, b) <= perp(g, a)


@given(form_and_pair())
def test_adjoint_anti_automorphism(t):
    g, _, _, rng = t
    from sll.instances import random_matrix
    m = random_matrix(g.field, g.dim, g.dim, rng)
    n = random_matrix(g.field, g.dim, g.dim, rng)
    assert adjoint(g, m @ n) == adjoint(g, n) @ adjoint(g, m)
    x = [g.field.random(rng) for _ in range(g.dim)]
    y = [g.field.random(rng) for _ in range(g.dim)]
    assert g(m.apply(x), y) == g(x, adjoint(g, m).apply(y))


@given(reflexive_instances())
def test_l_operators_adjointness(inst):
    from sll.representation import operator_l, operator_l_prime
    dec = inst.dec
    assert adjoint(inst.form, operator_l(dec)) == -operator_l(dec)
    assert adjoint(inst.form, operator_l_prime(dec)) == operator_l_prime(dec)


@given(reflexive_instances())
def test_ffforth_random(inst):
    rep = verify_ffforth(inst.form, inst.dec, canonical_split(inst.dec))
    assert rep.passed, rep.summary()


@given(reflexive_instances(max_n=4, fields=(GF(3), GF(5))))
def test_ffforth_antisymmetric(inst):
    n = inst.form.dim
    if n % 2:
        return
    rng = rng_for(n)
    inst2 = random_reflexive(inst.form.field, n, rng, FormKind.antisymmetric)
    assert verify_ffforth(inst2.form, inst2.dec).passed
