from math import comb

import pytest
from hypothesis import given, strategies as st

from sll.curvature import (AntisymmetryViolated, CurvatureTensor, berger_algebra, bianchi_check,
                           curvature_solution_space, evaluate, exterior_product_check, matches,
                           sample_tensor, verify_block_vanishing, verify_exterior_product,
                           verify_metric_theorem, verify_pair_symmetry, verify_theta2_corollary)
from sll.field import GF, QQ
from sll.fixtures import aligned_hyperbolic
from sll.instances import random_curvature_instance, random_invertible, random_matrix, rng_for
from sll.matrix import Matrix
from sll.reflexive import BilinearForm, hyperbolic
from sll.report import PreconditionError
from sll.representation import lie_closure, zero_algebra
from sll.subspace import Subspace

D = Matrix.diag(QQ, [1, -1])


def free_dim(n):
    """Antisymmetric arrays satisfying Bianchi: n²·C(n,2) − n·C(n,3)."""
    return n * n * comb(n, 2) - n * comb(n, 3)


def metric_dim(n):
    """Algebraic curvature tensors of a nondegenerate symmetric form: n²(n²−1)/12."""
    return n * n * (n * n - 1) // 12


# -- examples -------------------------------------------------------------------------


def test_bianchi_examples():
    assert bianchi_check(CurvatureTensor.zero(QQ, 3))
    a = Matrix(QQ, [[1, 2], [3, 4]])
    assert bianchi_check(CurvatureTensor.from_matrices(QQ, 2, {(0, 1): a}))


def test_bianchi_perturbation():
    basis = curvature_solution_space([], None, QQ, 3)
    r = sample_tensor(basis, rng_for("perturb"), QQ, 3)
    assert bianchi_check(r)
    m = r.matrix(0, 1)
    bumped = [list(row) for row in m.rows]
    bumped[0][2] += 1          # R(e0,e1)e2 gains an e0 component
    r2 = CurvatureTensor.from_matrices(QQ, 3, {(0, 1): Matrix(QQ, bumped), (0, 2): r.matrix(0, 2),
                                               (1, 2): r.matrix(1, 2)})
    assert not bianchi_check(r2)


def test_antisymmetry_violation():
    arr = [[[[0] * 2 for _ in range(2)] for _ in range(2)] for _ in range(2)]
    arr[0][1][0][0] = 1
    with pytest.raises(AntisymmetryViolated):
        bianchi_check(CurvatureTensor.from_array(QQ, arr))
    with pytest.raises(AntisymmetryViolated):
        CurvatureTensor.from_matrices(QQ, 2, {(1, 1): D})


def test_evaluate_examples():
    r = CurvatureTensor.from_matrices(QQ, 2, {(0, 1): D})
    assert evaluate(r, [1, 2], [1, 2]).is_zero()
    assert evaluate(CurvatureTensor.zero(QQ, 2), [1, 0], [0, 1]).is_zero()
    assert evaluate(r, [1, 0], [0, 1]) == D
    assert evaluate(r, [0, 1], [1, 0]) == -D


def test_berger_examples():
    assert berger_algebra([CurvatureTensor.zero(QQ, 2)]).dim == 0
    assert berger_algebra([], QQ, 2).dim == 0
    r = CurvatureTensor.from_matrices(QQ, 2, {(0, 1): D})
    alg = berger_algebra([r])
    assert alg.dim == 1 and matches(r, alg)
    assert matches(CurvatureTensor.zero(QQ, 2), alg)
    other = CurvatureTensor.from_matrices(QQ, 2, {(0, 1): Matrix(QQ, [[0, 1], [0, 0]])})
    assert not matches(other, alg)


@pytest.mark.parametrize("f", [QQ, GF(3), GF(5)])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_solution_space_dimensions(f, n):
    assert len(curvature_solution_space([], None, f, n)) == free_dim(n)
    assert len(curvature_solution_space([], BilinearForm(Matrix.identity(f, n)), f, n)) == metric_dim(n)


def test_solution_space_hyperbolic_parts():
    parts = [Subspace.unit(QQ, 2, 0), Subspace.unit(QQ, 2, 1)]
    basis = curvature_solution_space(parts, hyperbolic(QQ))
    assert len(basis) == 1
    assert lie_closure([basis[0].matrix(0, 1)]).contains(D)


def test_solution_space_requires_direct_sum():
    e1 = Subspace.unit(QQ, 2, 0)
    with pytest.raises(PreconditionError):
        curvature_solution_space([e1, e1])


def test_block_vanishing_examples():
    parts = [Subspace.unit(QQ, 2, 0), Subspace.unit(QQ, 2, 1)]
    r = CurvatureTensor.from_matrices(QQ, 2, {(0, 1): D})
    rep = verify_block_vanishing(r, parts)
    assert rep.passed and rep["distinct_parts"].detail.startswith("vacuous")
    parts3 = [Subspace.unit(QQ, 3, k) for k in range(3)]
    basis = curvature_solution_space(parts3)
    for seed in range(5):
        assert verify_block_vanishing(sample_tensor(basis, rng_for(seed), QQ, 3), parts3).passed
    bad = CurvatureTensor.from_matrices(QQ, 2, {(0, 1): Matrix(QQ, [[0, 1], [0, 0]])})
    with pytest.raises(PreconditionError):
        verify_block_vanishing(bad, [Subspace.unit(QQ, 2, 1), Subspace.unit(QQ, 2, 0)])


def test_exterior_product_examples():
    parts = [Subspace.unit(QQ, 2, 0), Subspace.unit(QQ, 2, 1)]
    assert exterior_product_check(zero_algebra(QQ, 2), parts)
    assert not exterior_product_check(lie_closure([D]), parts)


def test_pair_symmetry_examples():
    h = hyperbolic(QQ)
    assert verify_pair_symmetry(h, CurvatureTensor.zero(QQ, 2))
    basis = curvature_solution_space([], h)
    for seed in range(4):
        assert verify_pair_symmetry(h, sample_tensor(basis, rng_for(seed), QQ, 2))
    not_skew = CurvatureTensor.from_matrices(QQ, 2, {(0, 1): Matrix.identity(QQ, 2)})
    with pytest.raises(PreconditionError):
        verify_pair_symmetry(h, not_skew)


def test_metric_theorem_fixture():
    form, dec = aligned_hyperbolic()
    assert verify_metric_theorem(form, dec, []).passed
    r = CurvatureTensor.from_matrices(QQ, 2, {(0, 1): D})
    rep = verify_metric_theorem(form, dec, [r])
    assert rep.passed and rep["r_vanishes_on_vi"].passed


def test_corollary_fixture():
    form, dec = aligned_hyperbolic(GF(3))
    r = CurvatureTensor.from_matrices(GF(3), 2, {(0, 1): Matrix.diag(GF(3), [1, -1])})
    rep = verify_theta2_corollary(form, dec, [r])
    assert rep["theta_squared_zero"].status == "pass"
    # the zero algebra leaves every line invariant: decomposable
    rep = verify_theta2_corollary(form, dec, [])
    assert rep["theta_squared_zero"].status == "inapplicable"
    assert rep["theta_squared_zero"].witness["witness"]["dim"] == 1
    # over Q the oracle cannot decide unless the caller asserts it
    form_q, dec_q = aligned_hyperbolic()
    assert verify_theta2_corollary(form_q, dec_q, [])["theta_squared_zero"].status == "inapplicable"
    assert verify_theta2_corollary(form_q, dec_q, [], assume_indecomposable=True).passed


# -- properties ------------------------------------------------------------------------


@given(st.sampled_from([GF(3), GF(5), QQ]), st.integers(2, 4), st.integers(0, 10 ** 9))
def test_sampled_tensors_are_valid(f, n, seed):
    inst = random_curvature_instance(f, n, rng_for(seed))
    alg = berger_algebra(list(inst.tensors), f, n)
    for r in inst.tensors:
        assert bianchi_check(r)
        assert matches(r, alg)
        assert verify_pair_symmetry(inst.form, r)
    rep = verify_metric_theorem(inst.form, inst.dec, inst.tensors)
    assert rep.passed, rep.summary()


@given(st.sampled_from([GF(3), GF(5), QQ]), st.integers(2, 4), st.integers(0, 10 ** 9))
def test_evaluate_bilinear(f, n, seed):
    rng = rng_for(seed)
    basis = curvature_solution_space([], None, f, n)
    r = sample_tensor(basis, rng, f, n)
    x, x2, y = ([f.random(rng) for _ in range(n)] for _ in range(3))
    xs = [f.add(a, b) for a, b in zip(x, x2)]
    assert evaluate(r, xs, y) == evaluate(r, x, y) + evaluate(r, x2, y)
    assert evaluate(r, x, y) == -evaluate(r, y, x)


@given(st.sampled_from([GF(3), GF(5)]), st.integers(2, 4), st.integers(0, 10 ** 9))
def test_exterior_product_on_sampled_instances(f, n, seed):
    from sll.representation import stabilizer_algebra
    inst = random_curvature_instance(f, n, rng_for(seed))
    dec = inst.dec
    # tensors preserving all four subspaces
    basis = curvature_solution_space([s for s in (dec.v1, dec.v2) if not s.is_zero()], inst.form)
    alg4 = stabilizer_algebra(f, n, [dec.v1, dec.v2, dec.w1, dec.w2], inst.form)
    rng = rng_for(seed + 1)
    tensors = [t for t in (sample_tensor(basis, rng, f, n) for _ in range(3))
               if all(alg4.contains(t.matrix(i, j)) for i in range(n) for j in range(i + 1, n))]
    rep = verify_exterior_product(dec, tensors, inst.form)
    assert rep.passed, rep.summary()


@given(st.sampled_from([GF(3), GF(5)]), st.integers(0, 10 ** 9))
def test_block_vanishing_three_parts(f, seed):
    rng = rng_for(seed)
    n = 4
    p = random_invertible(f, n, rng)
    parts = [Subspace.unit(f, n, 0).apply(p), Subspace.unit(f, n, 1, 2).apply(p), Subspace.unit(f, n, 3).apply(p)]
    basis = curvature_solution_space(parts)
    r = sample_tensor(basis, rng, f, n)
    assert verify_block_vanishing(r, parts).passed
