"""Formal curvature tensors, Berger algebras and the metric theorems about θ."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .field import FieldSpec
from .matrix import Matrix, kernel
from .reflexive import BilinearForm, FormKind, is_degenerate, is_reflexive_type, is_skew
from .report import PreconditionError, TheoremReport
from .representation import (MatrixLieAlgebra, Verdict, leaves_invariant, lie_closure,
                             weakly_irreducible_oracle, zero_algebra)
from .subspace import Subspace, SubspaceError, is_direct_sum
from .twosum import TwoSumDecomposition, projection


class AntisymmetryViolated(ValueError):
    pass


def _pairs(n: int):
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


@dataclass(frozen=True)
class CurvatureTensor:
    """``coeffs[i][j][k][l]`` is the e_l-coordinate of R(e_i, e_j) e_k."""

    field: FieldSpec
    ambient_dim: int
    coeffs: tuple

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> CurvatureTensor:
        z = field.zero
        return cls(field, n, tuple(tuple(tuple(tuple(z for _ in range(n)) for _ in range(n))
                                         for _ in range(n)) for _ in range(n)))

    @classmethod
    def from_array(cls, field: FieldSpec, arr) -> CurvatureTensor:
        n = len(arr)
        return cls(field, n, tuple(tuple(tuple(tuple(field(x) for x in arr[i][j][k]) for k in range(n))
                                         for j in range(n)) for i in range(n)))

    @classmethod
    def from_matrices(cls, field: FieldSpec, n: int, values: dict[tuple[int, int], Matrix]) -> CurvatureTensor:
        """Antisymmetric extension of R(e_i, e_j) = values[i, j] for i < j."""
        arr = [[[[field.zero] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
        for (i, j), m in values.items():
            if i == j:
                raise AntisymmetryViolated("R(e_i, e_i) must vanish")
            for k in range(n):
                for l in range(n):
                    arr[i][j][k][l] = m.rows[l][k]
                    arr[j][i][k][l] = field.neg(m.rows[l][k])
        return cls.from_array(field, arr)

    def matrix(self, i: int, j: int) -> Matrix:
        """R(e_i, e_j) as a matrix acting on column vectors."""
        n = self.ambient_dim
        c = self.coeffs[i][j]
        return Matrix.raw(self.field, [tuple(c[k][l] for k in range(n)) for l in range(n)], n)

    def flat(self) -> tuple:
        n = self.ambient_dim
        return tuple(self.coeffs[i][j][k][l] for i, j in _pairs(n) for k in range(n) for l in range(n))

    def __add__(self, other: CurvatureTensor) -> CurvatureTensor:
        f = self.field
        return CurvatureTensor(f, self.ambient_dim, _zip4(self.coeffs, other.coeffs, f.add))

    def scale(self, c) -> CurvatureTensor:
        f = self.field
        return CurvatureTensor(f, self.ambient_dim, _map4(self.coeffs, lambda x: f.mul(c, x)))

    def to_strings(self):
        fmt = self.field.format
        return [[[[fmt(x) for x in r] for r in b] for b in a] for a in self.coeffs]

    def is_zero(self) -> bool:
        return not any(self.flat())


def _map4(c, fn):
    return tuple(tuple(tuple(tuple(fn(x) for x in r) for r in b) for b in a) for a in c)


def _zip4(c, d, fn):
    return tuple(tuple(tuple(tuple(fn(x, y) for x, y in zip(r, s)) for r, s in zip(b, bb))
                       for b, bb in zip(a, aa)) for a, aa in zip(c, d))


def _from_flat(field: FieldSpec, n: int, vec) -> CurvatureTensor:
    arr = [[[[field.zero] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    it = iter(vec)
    for i, j in _pairs(n):
        for k in range(n):
            for l in range(n):
                x = next(it)
                arr[i][j][k][l] = x
                arr[j][i][k][l] = field.neg(x)
    return CurvatureTensor.from_array(field, arr)


def _check_antisymmetric(coeffs, field: FieldSpec):
    n = len(coeffs)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    if field.add(coeffs[i][j][k][l], coeffs[j][i][k][l]):
                        raise AntisymmetryViolated(f"c[{i}][{j}][{k}][{l}] ≠ −c[{j}][{i}][{k}][{l}]")


def bianchi_check(r: CurvatureTensor) -> bool:
    """R(x,y)z + R(y,z)x + R(z,x)y = 0 on all basis triples."""
    f, c, n = r.field, r.coeffs, r.ambient_dim
    _check_antisymmetric(c, f)
    for i, j, k in itertools.combinations(range(n), 3):
        for l in range(n):
            if f.add(f.add(c[i][j][k][l], c[j][k][i][l]), c[k][i][j][l]):
                return False
    return True


def evaluate(r: CurvatureTensor, x: Sequence, y: Sequence) -> Matrix:
    """The endomorphism z ↦ R(x, y) z."""
    n, f = r.ambient_dim, r.field
    if len(x) != n or len(y) != n:
        raise SubspaceError("vector length does not match the tensor")
    out = Matrix.zeros(f, n, n)
    for i in range(n):
        if not x[i]:
            continue
        for j in range(n):
            if not y[j] or i == j:
                continue
            out = out + r.matrix(i, j).scale(f.mul(f(x[i]), f(y[j])))
    return out


def _values(r: CurvatureTensor) -> list[Matrix]:
    return [r.matrix(i, j) for i, j in _pairs(r.ambient_dim)]


def berger_algebra(tensors: Sequence[CurvatureTensor], field: FieldSpec | None = None,
                   n: int | None = None) -> MatrixLieAlgebra:
    if not tensors:
        if field is None:
            raise ValueError("field and dimension are needed for an empty tensor list")
        return zero_algebra(field, n)
    t0 = tensors[0]
    for t in tensors[1:]:
        if t.field != t0.field or t.ambient_dim != t0.ambient_dim:
            raise SubspaceError("tensors live on different spaces")
    gens = [m for t in tensors for m in _values(t) if not m.is_zero()]
    return lie_closure(gens, t0.field, t0.ambient_dim)


def matches(r: CurvatureTensor, alg: MatrixLieAlgebra) -> bool:
    if r.field != alg.field or r.ambient_dim != alg.ambient_dim:
        raise SubspaceError("tensor and algebra act on different spaces")
    return all(alg.contains(m) for m in _values(r))


# -- sampling -----------------------------------------------------------------------------


def curvature_solution_space(parts: Sequence[Subspace], form: BilinearForm | None = None,
                             field: FieldSpec | None = None, n: int | None = None) -> list[CurvatureTensor]:
    """Basis of the tensors satisfying Bianchi, invariance of each part and form-skewness.

    Unknowns are c[i][j][k][l] for i < j; antisymmetry is built in.
    """
    if parts:
        field, n = parts[0].field, parts[0].ambient_dim
        if not is_direct_sum(list(parts)):
            raise PreconditionError("invariant parts do not form a direct sum of E")
    elif form is not None:
        field, n = form.field, form.dim
    if field is None:
        raise ValueError("field and dimension are required without parts or form")
    f = field
    pairs = _pairs(n)
    pidx = {p: a for a, p in enumerate(pairs)}
    nunk = len(pairs) * n * n

    def var(i, j, k, l):
        """(index, sign) of c[i][j][k][l] in the unknown vector."""
        if i < j:
            return (pidx[i, j] * n + k) * n + l, f.one
        return (pidx[j, i] * n + k) * n + l, f.neg(f.one)

    cons = []
    for i, j, k in itertools.combinations(range(n), 3):
        for l in range(n):
            row = [f.zero] * nunk
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                idx, s = var(a, b, c, l)
                row[idx] = f.add(row[idx], s)
            cons.append(row)
    for part in parts:
        for a in part.annihilator_rows:
            for v in part.rows:
                for i, j in pairs:
                    row = [f.zero] * nunk
                    for k in range(n):
                        for l in range(n):
                            idx, _ = var(i, j, k, l)
                            row[idx] = f.mul(a[l], v[k])
                    cons.append(row)
    if form is not None:
        g = form.gram.rows
        for i, j in pairs:
            for s in range(n):
                for t in range(n):
                    # (G M + Mᵀ G)_{st}, M[l][k] = c[i][j][k][l]
                    row = [f.zero] * nunk
                    for l in range(n):
                        idx, _ = var(i, j, t, l)
                        row[idx] = f.add(row[idx], g[s][l])
                        idx, _ = var(i, j, s, l)
                        row[idx] = f.add(row[idx], g[l][t])
                    cons.append(row)
    if cons:
        sol = kernel(Matrix.raw(f, cons, nunk)).rows
    else:
        sol = Matrix.identity(f, nunk).rows
    return [_from_flat(f, n, r) for r in sol]


def sample_tensor(basis: Sequence[CurvatureTensor], rng, field: FieldSpec, n: int) -> CurvatureTensor:
    """Random combination of ``basis``: uniform over GF(p), integers in [−3, 3] over ℚ."""
    out = CurvatureTensor.zero(field, n)
    for b in basis:
        c = field.random(rng)
        if c:
            out = out + b.scale(c)
    return out


# -- theorems --------------------------------------------------------------------------------


def _check_parts(parts: Sequence[Subspace]):
    if parts and not is_direct_sum(list(parts)):
        raise PreconditionError("parts do not form a direct sum of E")


def verify_block_vanishing(r: CurvatureTensor, parts: Sequence[Subspace]) -> TheoremReport:
    """R(x, y) z = 0 for x ∈ F_i, y ∈ F_j, z ∈ F_k whenever k ∉ {i, j}."""
    _check_parts(parts)
    if not bianchi_check(r):
        raise PreconditionError("tensor violates the Bianchi identity")
    alg = berger_algebra([r])
    if not all(leaves_invariant(alg, p) for p in parts):
        raise PreconditionError("the generated algebra does not leave every part invariant")
    rep = TheoremReport("block vanishing")

    def vanish(ks):
        for i, j, k in ks:
            for x in parts[i].rows:
                for y in parts[j].rows:
                    m = evaluate(r, x, y)
                    if any(any(m.apply(z)) for z in parts[k].rows):
                        return False, {"i": i, "j": j, "k": k}
        return True, {}

    m = len(parts)
    distinct = [(i, j, k) for i, j, k in itertools.permutations(range(m), 3)]
    same = [(i, i, k) for i in range(m) for k in range(m) if k != i]
    if len(distinct) == 0:
        rep.vacuous("distinct_parts", "i, j, k distinct ⇒ R(F_i, F_j) F_k = 0", "fewer than three parts")
    else:
        ok, wit = vanish(distinct)
        rep.truth("distinct_parts", "i, j, k distinct ⇒ R(F_i, F_j) F_k = 0", ok, "", **wit)
    ok, wit = vanish(same)
    rep.truth("repeated_part", "k ≠ i ⇒ R(F_i, F_i) F_k = 0", ok, "", **wit)
    return rep


def _block_projection(parts: Sequence[Subspace], idx: int) -> Matrix:
    p = parts[idx]
    rest = Subspace.zero(p.field, p.ambient_dim)
    for k, q in enumerate(parts):
        if k != idx:
            rest = rest + q
    return projection(p, rest)


def exterior_product_check(alg: MatrixLieAlgebra, parts: Sequence[Subspace]) -> bool:
    """Every a|_{F_i} (extended by zero on the other parts) lies in the algebra."""
    _check_parts(parts)
    if not all(leaves_invariant(alg, p) for p in parts):
        raise PreconditionError("algebra does not leave every part invariant")
    projs = [_block_projection(parts, i) for i in range(len(parts))]
    return all(alg.contains(a @ pr) for a in alg.basis for pr in projs)


def _check_metric_tensor(form: BilinearForm, r: CurvatureTensor):
    if not bianchi_check(r):
        raise PreconditionError("tensor violates the Bianchi identity")
    if not all(is_skew(form, m) for m in _values(r)):
        raise PreconditionError("tensor values are not skew for the form")


def verify_pair_symmetry(form: BilinearForm, r: CurvatureTensor) -> bool:
    """⟨R(x,y)z, t⟩ = ⟨R(z,t)x, y⟩ on all basis quadruples."""
    _check_metric_tensor(form, r)
    n, f, g = r.ambient_dim, r.field, form.gram.rows
    c = r.coeffs

    def val(i, j, k, t):
        # ⟨R(e_i,e_j)e_k, e_t⟩ = Σ_l c[i][j][k][l] G[l][t]
        acc = f.zero
        for l in range(n):
            acc = f.add(acc, f.mul(c[i][j][k][l], g[l][t]))
        return acc

    return all(val(i, j, k, t) == val(k, t, i, j) for i, j, k, t in itertools.product(range(n), repeat=4))


def _metric_alg(form: BilinearForm, dec: TwoSumDecomposition, tensors: Sequence[CurvatureTensor]):
    if form.kind is not FormKind.symmetric:
        raise PreconditionError("the metric theorems need a symmetric form")
    if not is_reflexive_type(form, dec):
        raise PreconditionError("decomposition is not (V1, V2, V1⊥, V2⊥)")
    for r in tensors:
        _check_metric_tensor(form, r)
    alg = berger_algebra(list(tensors), form.field, form.dim)
    if not (leaves_invariant(alg, dec.v1) and leaves_invariant(alg, dec.v2)):
        raise PreconditionError("Berger algebra does not preserve V1 and V2")
    return alg


def verify_metric_theorem(form: BilinearForm, dec: TwoSumDecomposition,
                          tensors: Sequence[CurvatureTensor]) -> TheoremReport:
    """𝔤E ⊂ ker θ and 𝔤·im θ = 0 for a metric Berger algebra preserving V1 ⊕ V2."""
    alg = _metric_alg(form, dec, tensors)
    th = dec.theta
    rep = TheoremReport("metric Berger algebra and θ")
    rep.truth("gE_in_ker_theta", "𝔤E ⊂ ker θ", all((th @ a).is_zero() for a in alg.basis), "")
    rep.truth("g_kills_im_theta", "𝔤 im θ = {0}", all((a @ th).is_zero() for a in alg.basis), "")
    if dec.split.f_e.is_full():
        ok = True
        for v in (dec.v1, dec.v2):
            for r in tensors:
                for x, y in itertools.combinations(v.rows, 2):
                    ok = ok and evaluate(r, x, y).is_zero()
        rep.truth("r_vanishes_on_vi", "E = F_e ⇒ R(V_i, V_i) = 0", ok, "")
    else:
        rep.inapplicable("r_vanishes_on_vi", "E = F_e ⇒ R(V_i, V_i) = 0", "E ≠ F_e")
    return rep


def verify_exterior_product(dec: TwoSumDecomposition, tensors: Sequence[CurvatureTensor],
                            form: BilinearForm | None = None) -> TheoremReport:
    """The Berger algebra splits as an exterior product along F ⊕ F̃ (and F_e ⊕ F_τ ⊕ F̃)."""
    alg = berger_algebra(list(tensors), dec.field, dec.ambient_dim)
    for s in (dec.v1, dec.v2, dec.w1, dec.w2):
        if not leaves_invariant(alg, s):
            raise PreconditionError("Berger algebra does not preserve V1, V2, W1, W2")
    sp = dec.split
    rep = TheoremReport("exterior product decomposition")
    rep.truth("f_ftilde", "exterior product along F ⊕ F̃",
              exterior_product_check(alg, [p for p in (sp.f, sp.ftilde) if not p.is_zero()]), "")
    if form is not None and is_reflexive_type(form, dec):
        rep.truth("fe_ftau_ftilde", "exterior product along F_e ⊕ F_τ ⊕ F̃",
                  exterior_product_check(alg, [p for p in sp.parts if not p.is_zero()]), "")
    return rep


def verify_theta2_corollary(form: BilinearForm, dec: TwoSumDecomposition,
                            tensors: Sequence[CurvatureTensor], oracle_bound: tuple[int, int] = (4, 3),
                            assume_indecomposable: bool = False) -> TheoremReport:
    """θ² = 0 for a metric indecomposable representation with a degenerate V_i.

    Indecomposable is taken to mean: no proper nonzero invariant subspace
    that is nondegenerate for the form, checked by exhaustive enumeration.
    """
    alg = _metric_alg(form, dec, tensors)
    rep = TheoremReport("θ² = 0 for indecomposable metric representations")
    rep.notes.append("indecomposable := no proper nonzero nondegenerate invariant subspace")
    tag = "θ² = 0"
    if not (is_degenerate(form, dec.v1) or is_degenerate(form, dec.v2)):
        rep.inapplicable("theta_squared_zero", tag, "neither V1 nor V2 is degenerate")
        return rep
    res = weakly_irreducible_oracle(form, alg, *oracle_bound)
    if res.verdict is Verdict.no:
        rep.inapplicable("theta_squared_zero", tag, "decomposable", witness=res.witness)
        return rep
    if res.verdict is Verdict.infeasible:
        if not assume_indecomposable:
            rep.inapplicable("theta_squared_zero", tag, "indecomposability not decidable within bounds")
            return rep
        rep.notes.append("indecomposability asserted by the caller")
    th = dec.theta
    rep.truth("theta_squared_zero", tag, (th @ th).is_zero(), "θ² ≠ 0", theta=th)
    return rep
