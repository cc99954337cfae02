"""Seeded random instances: subspaces, complements, two-sum decompositions and
reflexive decompositions with a prescribed block profile."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .field import FieldSpec
from .matrix import Matrix
from .reflexive import BilinearForm, FormKind, perp
from .subspace import Subspace, is_direct_sum
from .twosum import TwoSumDecomposition, make

BLOCK_KINDS = ("e", "tau", "tilde")


def rng_for(seed) -> random.Random:
    return random.Random(seed)


def random_matrix(field: FieldSpec, nrows: int, ncols: int, rng) -> Matrix:
    return Matrix.raw(field, [[field.random(rng) for _ in range(ncols)] for _ in range(nrows)], ncols)


def random_invertible(field: FieldSpec, n: int, rng) -> Matrix:
    while True:
        m = random_matrix(field, n, n, rng)
        if m.det():
            return m


def random_subspace(field: FieldSpec, n: int, k: int, rng) -> Subspace:
    if k == 0:
        return Subspace.zero(field, n)
    while True:
        s = Subspace.from_matrix(random_matrix(field, k, n, rng))
        if s.dim == k:
            return s


def random_complement(s: Subspace, rng) -> Subspace:
    """Uniform complement: graph of a random map from the standard complement into s."""
    f, n = s.field, s.ambient_dim
    free = [j for j in range(n) if j not in set(s.pivots)]
    vecs = []
    for j in free:
        v = [f.zero] * n
        v[j] = f.one
        for row in s.rows:
            c = f.random(rng)
            v = [f.add(a, f.mul(c, b)) for a, b in zip(v, row)]
        vecs.append(v)
    return Subspace(f, n, vecs)


def random_twosum(field: FieldSpec, n: int, rng) -> TwoSumDecomposition:
    """Unstructured instance: random V1, W1 with random complements."""
    v1 = random_subspace(field, n, rng.randint(0, n), rng)
    w1 = random_subspace(field, n, rng.randint(0, n), rng)
    return make(v1, random_complement(v1, rng), w1, random_complement(w1, rng))


def _pure(dec: TwoSumDecomposition, kind: str) -> bool:
    sp = dec.split
    part = {"e": sp.f_e, "tau": sp.f_tau, "tilde": sp.ftilde}[kind]
    return part.is_full()


def _fallback_block(field: FieldSpec, kind: str, d: int) -> TwoSumDecomposition:
    full, zero = Subspace.full(field, d), Subspace.zero(field, d)
    if kind == "e":
        return make(full, zero, full, zero)
    if kind == "tau":
        return make(full, zero, zero, full)
    # d even: V1, V2 coordinate halves, W1 = graph(I), W2 = graph(-I)
    h = d // 2
    v1 = Subspace.unit(field, d, *range(h))
    v2 = Subspace.unit(field, d, *range(h, d))
    w1 = Subspace(field, d, [[1 if j in (i, i + h) else 0 for j in range(d)] for i in range(h)])
    w2 = Subspace(field, d, [[1 if j == i else (-1 if j == i + h else 0) for j in range(d)] for i in range(h)])
    return make(v1, v2, w1, w2)


def _tilde_block(field: FieldSpec, d: int, rng) -> TwoSumDecomposition:
    """Graphs of A and B over the coordinate split, with A, B, A−B invertible."""
    h = d // 2
    for _ in range(200):
        a = random_invertible(field, h, rng)
        b = random_invertible(field, h, rng)
        if not (a - b).det():
            continue
        v1 = Subspace.unit(field, d, *range(h))
        v2 = Subspace.unit(field, d, *range(h, d))
        w1 = Subspace(field, d, [[1 if j == i else 0 for j in range(h)] + list(a.column(i)) for i in range(h)])
        w2 = Subspace(field, d, [[1 if j == i else 0 for j in range(h)] + list(b.column(i)) for i in range(h)])
        return make(v1, v2, w1, w2)
    return _fallback_block(field, "tilde", d)


def random_block(field: FieldSpec, kind: str, d: int, rng, attempts: int = 60) -> TwoSumDecomposition:
    """A decomposition of K^d whose canonical split is pure of the given kind."""
    if kind == "tilde":
        return _tilde_block(field, d, rng)
    for _ in range(attempts):
        dec = random_twosum(field, d, rng)
        if _pure(dec, kind):
            return dec
    return _fallback_block(field, kind, d)


def block_profile(n: int, rng) -> list[tuple[str, int]]:
    """Random list of (kind, dim) blocks with dims summing to n; F̃ blocks are even."""
    blocks = []
    left = n
    while left:
        kinds = ["e", "tau"] + (["tilde"] if left >= 2 else [])
        kind = rng.choice(kinds)
        if kind == "tilde":
            d = 2 * rng.randint(1, min(2, left // 2))
        else:
            d = rng.randint(1, min(3, left))
        blocks.append((kind, d))
        left -= d
    return blocks


def _direct_sum_subspaces(parts: list[Subspace], n: int) -> Subspace:
    f = parts[0].field
    vecs = []
    off = 0
    for s in parts:
        for r in s.rows:
            vecs.append([f.zero] * off + list(r) + [f.zero] * (n - off - s.ambient_dim))
        off += s.ambient_dim
    return Subspace._span_raw(f, n, vecs)


def direct_sum(decs: list[TwoSumDecomposition]) -> TwoSumDecomposition:
    n = sum(d.ambient_dim for d in decs)
    return make(*(_direct_sum_subspaces([getattr(d, name) for d in decs], n)
                  for name in ("v1", "v2", "w1", "w2")))


def random_block_twosum(field: FieldSpec, n: int, rng) -> tuple[TwoSumDecomposition, list[tuple[str, int]]]:
    """Direct sum of pure blocks, conjugated by a random invertible matrix."""
    profile = block_profile(n, rng)
    dec = direct_sum([random_block(field, k, d, rng) for k, d in profile])
    return dec.transform(random_invertible(field, n, rng)), profile


# -- forms -----------------------------------------------------------------------


def random_form(field: FieldSpec, n: int, rng, kind: FormKind = FormKind.symmetric) -> BilinearForm:
    kind = FormKind(kind)
    while True:
        rows = [[field.zero] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                x = field.random(rng)
                if kind is FormKind.antisymmetric:
                    if i == j:
                        continue
                    rows[i][j], rows[j][i] = x, field.neg(x)
                else:
                    rows[i][j] = rows[j][i] = x
        g = Matrix.raw(field, rows, n)
        if g.det():
            return BilinearForm(g, kind)


@dataclass(frozen=True, eq=False)
class ReflexiveInstance:
    form: BilinearForm
    v1: Subspace
    v2: Subspace

    @property
    def dec(self) -> TwoSumDecomposition:
        return make(self.v1, self.v2, perp(self.form, self.v1), perp(self.form, self.v2))

    def transform(self, p: Matrix) -> ReflexiveInstance:
        """Push forward by x -> p x; the Gram matrix becomes p⁻ᵀ G p⁻¹."""
        pinv = p.inverse()
        g = pinv.T @ self.form.gram @ pinv
        return ReflexiveInstance(BilinearForm(g, self.form.kind), self.v1.apply(p), self.v2.apply(p))


def random_reflexive(field: FieldSpec, n: int, rng, kind: FormKind = FormKind.symmetric) -> ReflexiveInstance:
    """Random nondegenerate form with a random V1 and random complement V2."""
    form = random_form(field, n, rng, kind)
    v1 = random_subspace(field, n, rng.randint(0, n), rng)
    return ReflexiveInstance(form, v1, random_complement(v1, rng))


def _reflexive_fallback(field: FieldSpec, kind: str, d: int) -> ReflexiveInstance:
    if kind == "e":
        # hyperbolic planes, V1 and V2 the two isotropic halves
        rows = [[0] * d for _ in range(d)]
        h = d // 2
        for i in range(h):
            rows[i][i + h] = rows[i + h][i] = 1
        g = Matrix(field, rows)
        return ReflexiveInstance(BilinearForm(g), Subspace.unit(field, d, *range(h)),
                                 Subspace.unit(field, d, *range(h, d)))
    if kind == "tau":
        g = Matrix.identity(field, d)
        return ReflexiveInstance(BilinearForm(g), Subspace.full(field, d), Subspace.zero(field, d))
    h = d // 2
    g = Matrix.identity(field, d)
    v1 = Subspace.unit(field, d, *range(h))
    v2 = Subspace(field, d, [[1 if j in (i, i + h) else 0 for j in range(d)] for i in range(h)])
    return ReflexiveInstance(BilinearForm(g), v1, v2)


def random_reflexive_block(field: FieldSpec, kind: str, d: int, rng, attempts: int = 60) -> ReflexiveInstance:
    for _ in range(attempts):
        inst = random_reflexive(field, d, rng)
        if _pure(inst.dec, kind):
            return inst
    return _reflexive_fallback(field, kind, d)


def reflexive_profile(n: int, rng) -> list[tuple[str, int]]:
    blocks = []
    left = n
    while left:
        kinds = ["tau"] + (["e", "tilde"] if left >= 2 else [])
        kind = rng.choice(kinds)
        d = 2 * rng.randint(1, min(2, left // 2)) if kind != "tau" else rng.randint(1, min(3, left))
        blocks.append((kind, d))
        left -= d
    return blocks


def orthogonal_sum(insts: list[ReflexiveInstance]) -> ReflexiveInstance:
    f = insts[0].form.field
    n = sum(i.form.dim for i in insts)
    rows = [[f.zero] * n for _ in range(n)]
    off = 0
    for inst in insts:
        d = inst.form.dim
        for i in range(d):
            for j in range(d):
                rows[off + i][off + j] = inst.form.gram.rows[i][j]
        off += d
    g = Matrix.raw(f, rows, n)
    return ReflexiveInstance(BilinearForm(g, insts[0].form.kind),
                             _direct_sum_subspaces([i.v1 for i in insts], n),
                             _direct_sum_subspaces([i.v2 for i in insts], n))


def random_block_reflexive(field: FieldSpec, n: int, rng) -> tuple[ReflexiveInstance, list[tuple[str, int]]]:
    """Orthogonal sum of pure reflexive blocks under a random change of basis."""
    profile = reflexive_profile(n, rng)
    inst = orthogonal_sum([random_reflexive_block(field, k, d, rng) for k, d in profile])
    return inst.transform(random_invertible(field, n, rng)), profile


def is_valid_reflexive(inst: ReflexiveInstance) -> bool:
    return is_direct_sum([inst.v1, inst.v2])


# -- curvature ---------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CurvatureInstance:
    reflexive: ReflexiveInstance
    tensors: tuple

    @property
    def form(self) -> BilinearForm:
        return self.reflexive.form

    @property
    def dec(self) -> TwoSumDecomposition:
        return self.reflexive.dec


def random_curvature_instance(field: FieldSpec, n: int, rng, n_tensors: int | None = None) -> CurvatureInstance:
    """Symmetric form, V1 ⊕ V2 and tensors from the metric solution space preserving V1, V2.

    Half of the draws use a pure F_e block (even n), where indecomposable
    representations are common; the rest use an unstructured V1.
    """
    from .curvature import curvature_solution_space, sample_tensor

    if n % 2 == 0 and n >= 2 and rng.random() < 0.5:
        inst = random_reflexive_block(field, "e", n, rng, attempts=400)
        inst = inst.transform(random_invertible(field, n, rng))
    else:
        inst = random_reflexive(field, n, rng)
    basis = curvature_solution_space([s for s in (inst.v1, inst.v2) if not s.is_zero()], inst.form)
    k = n_tensors if n_tensors is not None else rng.randint(1, 3)
    tensors = tuple(sample_tensor(basis, rng, field, n) for _ in range(k))
    return CurvatureInstance(inst, tensors)


# -- corpora -----------------------------------------------------------------------


def twosum_corpus(count: int = 200) -> list[TwoSumDecomposition]:
    """Seeded two-sum instances over GF(3) and GF(5), dims 2..8.

    Every third instance is unstructured; the rest are block sums, so that all
    three canonical summands occur with nonzero dimension.
    """
    out = []
    for k in range(count):
        field = FieldSpec(3 if k % 2 == 0 else 5)
        n = 2 + k % 7
        rng = rng_for(f"twosum-corpus/{k}")
        out.append(random_twosum(field, n, rng) if k % 3 == 0 else random_block_twosum(field, n, rng)[0])
    return out


def reflexive_corpus(count: int = 100, field: FieldSpec | None = None) -> list[ReflexiveInstance]:
    """Seeded symmetric reflexive instances over GF(5) (by default), dims 2..6."""
    field = field or FieldSpec(5)
    out = []
    for k in range(count):
        n = 2 + k % 5
        rng = rng_for(f"reflexive-corpus/{field.name}/{k}")
        out.append(random_reflexive(field, n, rng) if k % 2 == 0 else random_block_reflexive(field, n, rng)[0])
    return out
