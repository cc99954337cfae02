import random
from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from sll import matrix as mx
from sll.field import GF, QQ
from sll.matrix import Matrix, image, kernel, matpow_kernel, rref
from sll.subspace import Subspace

from conftest import FIELDS, matrices


def to_sympy(m: Matrix):
    return sympy.Matrix(m.nrows, m.ncols, lambda i, j: sympy.Rational(m.rows[i][j]))


# -- examples -----------------------------------------------------------------------


def test_rref_identity_and_zero():
    r = rref(Matrix.identity(QQ, 3))
    assert r.reduced == Matrix.identity(QQ, 3) and r.pivots == (0, 1, 2) and r.rank == 3
    r = rref(Matrix.zeros(QQ, 2, 2))
    assert r.reduced == Matrix.zeros(QQ, 2, 2) and r.pivots == () and r.rank == 0


def test_rref_dependent_rows():
    r = rref(Matrix(QQ, [[1, 2], [2, 4]]))
    assert r.reduced == Matrix(QQ, [[1, 2], [0, 0]]) and r.rank == 1


def test_kernel_examples():
    for f in FIELDS:
        assert kernel(Matrix.identity(f, 3)).nrows == 0
        assert Subspace.from_matrix(kernel(Matrix.zeros(f, 3, 3))) == Subspace.full(f, 3)


def test_kernel_gf3_enumerated():
    f = GF(3)
    m = Matrix(f, [[1, 1]])
    brute = [(a, b) for a in range(3) for b in range(3) if (a + b) % 3 == 0]
    got = Subspace.from_matrix(kernel(m))
    assert got == Subspace(f, 2, [[1, 2]])
    assert sorted(brute) == sorted(v for v in brute if got.contains(v))
    assert got.dim == 1


def test_image_examples():
    assert Subspace.from_matrix(image(Matrix.identity(QQ, 2))) == Subspace.full(QQ, 2)
    assert image(Matrix.zeros(QQ, 2, 2)).nrows == 0
    th = Matrix(QQ, [[0, "-1/2"], ["1/2", 0]])
    assert image(th).nrows == 2


def test_matpow_kernel_examples():
    th = Matrix(QQ, [[0, "-1/2"], ["1/2", 0]])
    assert matpow_kernel(th, 0).nrows == 0
    assert Subspace.from_matrix(matpow_kernel(Matrix(QQ, [[0, 1], [0, 0]]), 2)) == Subspace.full(QQ, 2)
    for k in (1, 2, 3):
        assert matpow_kernel(th, k).nrows == 0
    assert th @ th == Matrix.identity(QQ, 2).scale(Fraction(-1, 4))


# -- oracle: sympy -------------------------------------------------------------------


@given(matrices(field=QQ))
def test_rank_and_rref_match_sympy(m):
    s = to_sympy(m)
    red, piv = s.rref()
    r = rref(m)
    assert r.rank == s.rank()
    assert r.pivots == tuple(piv)
    assert to_sympy(r.reduced) == red


@given(matrices(field=QQ))
def test_kernel_matches_sympy(m):
    # row-vector convention: kernel rows x satisfy m x = 0
    ours = Subspace.from_matrix(kernel(m)) if kernel(m).nrows else Subspace.zero(QQ, m.ncols)
    theirs = Subspace(QQ, m.ncols, [[Fraction(int(x.p), int(x.q)) for x in v] for v in to_sympy(m).nullspace()])
    assert ours == theirs


@given(st.sampled_from([3, 5, 7]).flatmap(lambda p: matrices(field=GF(p))))
def test_rank_matches_sympy_mod_p(m):
    p = m.field.p
    s = sympy.Matrix(m.nrows, m.ncols, lambda i, j: m.rows[i][j]) if m.nrows else None
    if s is None:
        assert rref(m).rank == 0
        return
    from sympy.polys.matrices import DomainMatrix
    from sympy import GF as SGF
    dm = DomainMatrix.from_Matrix(s).convert_to(SGF(p))
    assert rref(m).rank == dm.rank()


# -- properties ----------------------------------------------------------------------


@given(matrices())
def test_rank_nullity(m):
    assert rref(m).rank + kernel(m).nrows == m.ncols


@given(matrices())
def test_rref_idempotent(m):
    r = rref(m)
    again = rref(r.reduced)
    assert again.reduced == r.reduced and again.pivots == r.pivots


@given(matrices())
def test_kernel_vectors_are_killed(m):
    for v in kernel(m).rows:
        assert all(x == m.field.zero for x in m.apply(v))


def test_numpy_path_agrees_with_pure_path(monkeypatch):
    rng = random.Random("numpy-vs-pure")
    for p in (3, 5, 7):
        f = GF(p)
        for _ in range(40):
            r, c = rng.randint(1, 12), rng.randint(1, 12)
            rows = [[rng.randrange(p) for _ in range(c)] for _ in range(r)]
            fast = mx._rref_rows_numpy(rows, c, p)
            monkeypatch.setattr(mx, "_NUMPY_THRESHOLD", 10 ** 9)
            slow = mx._rref_rows(rows, c, f)
            monkeypatch.undo()
            assert [list(x) for x in fast[0]] == [list(x) for x in slow[0]]
            assert list(fast[1]) == list(slow[1])


@given(st.sampled_from(FIELDS).flatmap(lambda f: matrices(field=f, nrows=3, ncols=3)))
def test_inverse_and_det(m):
    if m.det():
        assert m @ m.inverse() == Matrix.identity(m.field, 3)
    else:
        assert rref(m).rank < 3
