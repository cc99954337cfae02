"""Nondegenerate symmetric and antisymmetric bilinear forms."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

from .matrix import Matrix
from .report import PreconditionError, TheoremReport, eq_witness
from .subspace import Subspace, SubspaceError, is_direct_sum
from .twosum import CanonicalSplit, NotComplementary, Sigma, TwoSumDecomposition, make


class FormError(ValueError):
    pass


class FormKind(str, enum.Enum):
    symmetric = "symmetric"
    antisymmetric = "antisymmetric"


class Isotropy(str, enum.Enum):
    totally_isotropic = "TotallyIsotropic"
    nondegenerate = "Nondegenerate"
    degenerate = "Degenerate"


@dataclass(frozen=True, eq=False)
class BilinearForm:
    gram: Matrix
    kind: FormKind = FormKind.symmetric

    def __post_init__(self):
        g = self.gram
        object.__setattr__(self, "kind", FormKind(self.kind))
        if not g.is_square:
            raise FormError("Gram matrix must be square")
        if self.kind is FormKind.symmetric and g != g.T:
            raise FormError("Gram matrix is not symmetric")
        if self.kind is FormKind.antisymmetric:
            if g != -g.T:
                raise FormError("Gram matrix is not antisymmetric")
            if g.nrows % 2:
                raise FormError("an antisymmetric form on an odd-dimensional space is degenerate")
        if not g.det():
            raise FormError("form is degenerate (det = 0)")

    @property
    def field(self):
        return self.gram.field

    @property
    def dim(self) -> int:
        return self.gram.nrows

    def __eq__(self, other):
        if not isinstance(other, BilinearForm):
            return NotImplemented
        return self.gram == other.gram and self.kind == other.kind

    def __hash__(self):
        return hash((self.gram, self.kind))

    @cached_property
    def gram_inverse(self) -> Matrix:
        return self.gram.inverse()

    def __call__(self, x, y):
        """⟨x, y⟩ = xᵀ G y."""
        gy = self.gram.apply(y)
        f = self.field
        return f.reduce(sum((a * b for a, b in zip(x, gy)), f.zero))

    def pairing_matrix(self, a: Subspace, b: Subspace) -> Matrix:
        """Entries ⟨a_i, b_j⟩ for the RREF bases of a and b."""
        f = self.field
        return Matrix.raw(f, [[self(x, y) for y in b.rows] for x in a.rows], b.dim)

    def orthogonal(self, a: Subspace, b: Subspace) -> bool:
        return all(not self(x, y) for x in a.rows for y in b.rows)

    def _check(self, v: Subspace):
        if v.field != self.field or v.ambient_dim != self.dim:
            raise SubspaceError("subspace and form live on different spaces")


def form(gram: Matrix, kind: str | FormKind = FormKind.symmetric) -> BilinearForm:
    return BilinearForm(gram, FormKind(kind))


def hyperbolic(field, n_planes: int = 1) -> BilinearForm:
    """Orthogonal sum of hyperbolic planes [[0,1],[1,0]]."""
    n = 2 * n_planes
    rows = [[0] * n for _ in range(n)]
    for k in range(n_planes):
        rows[2 * k][2 * k + 1] = rows[2 * k + 1][2 * k] = 1
    return BilinearForm(Matrix(field, rows), FormKind.symmetric)


def perp(f: BilinearForm, v: Subspace) -> Subspace:
    """``{x : ⟨x, v⟩ = 0}``."""
    f._check(v)
    if v.is_zero():
        return Subspace.full(f.field, f.dim)
    cons = [f.gram.apply(b) for b in v.rows]
    return Subspace._kernel_of_rows(f.field, f.dim, cons)


def isotropy(f: BilinearForm, v: Subspace) -> Isotropy:
    f._check(v)
    if v.is_zero():
        return Isotropy.nondegenerate
    vp = perp(f, v)
    if v <= vp:
        return Isotropy.totally_isotropic
    if not (v & vp).is_zero():
        return Isotropy.degenerate
    return Isotropy.nondegenerate


def is_degenerate(f: BilinearForm, v: Subspace) -> bool:
    """``v ∩ v⊥ ≠ {0}`` (totally isotropic nonzero subspaces count)."""
    return not (v & perp(f, v)).is_zero()


def adjoint(f: BilinearForm, m: Matrix) -> Matrix:
    """The unique m* with ⟨m x, y⟩ = ⟨x, m* y⟩, namely G⁻¹ mᵀ G."""
    if not m.is_square or m.nrows != f.dim or m.field != f.field:
        raise SubspaceError("matrix does not act on the form's space")
    return f.gram_inverse @ m.T @ f.gram


def is_skew(f: BilinearForm, m: Matrix) -> bool:
    """⟨m x, y⟩ + ⟨x, m y⟩ = 0 for all x, y."""
    g = f.gram
    return (g @ m + m.T @ g).is_zero()


def para_kahler_check(f: BilinearForm, l: Matrix) -> bool:
    ident = Matrix.identity(f.field, f.dim)
    return l @ l == ident and adjoint(f, l) == -l


def reflexive_decomposition(f: BilinearForm, v1: Subspace, v2: Subspace | None = None
                            ) -> tuple[TwoSumDecomposition, Subspace]:
    """(E, V1, V2, V1⊥, V2⊥); V2 defaults to V1⊥ when that is a complement."""
    f._check(v1)
    if v2 is None:
        v2 = perp(f, v1)
        if not is_direct_sum([v1, v2]):
            raise NotComplementary("V", "V1 ⊕ V1⊥ ≠ E and no complement was given")
    f._check(v2)
    dec = make(v1, v2, perp(f, v1), perp(f, v2))
    return dec, v2


def is_reflexive_type(f: BilinearForm, dec: TwoSumDecomposition) -> bool:
    return dec.w1 == perp(f, dec.v1) and dec.w2 == perp(f, dec.v2)


def verify_ffforth(f: BilinearForm, dec: TwoSumDecomposition,
                   split: CanonicalSplit | None = None) -> TheoremReport:
    """Orthogonality of the canonical split and F_σ(n)⊥ = F̃_σ(n)."""
    if not is_reflexive_type(f, dec):
        raise PreconditionError("decomposition is not of the form (V1, V2, V1⊥, V2⊥)")
    split = split or dec.split
    ch = dec.chains
    rep = TheoremReport("orthogonal canonical split")
    fe, ft, fw = split.f_e, split.f_tau, split.ftilde
    rep.truth("direct_sum", "E = F_e ⊕ F_τ ⊕ F̃", is_direct_sum(split.parts), "not a direct sum",
              f_e=fe, f_tau=ft, ftilde=fw)
    rep.truth("fe_perp_ftau", "F_e ⊥ F_τ", f.orthogonal(fe, ft), "", f_e=fe, f_tau=ft)
    rep.truth("fe_perp_ftilde", "F_e ⊥ F̃", f.orthogonal(fe, fw), "", f_e=fe, ftilde=fw)
    rep.truth("ftau_perp_ftilde", "F_τ ⊥ F̃", f.orthogonal(ft, fw), "", f_tau=ft, ftilde=fw)
    N = ch.horizon + 1
    for s in (Sigma.e, Sigma.tau):
        rep.over_range(f"perp_f_{s.value}", "F_σ(n)⊥ = F̃_σ(n)", range(0, N + 1),
                       lambda n, s=s: eq_witness(perp(f, ch.Fs(s, n)), ch.Fts(s, n)))
        rep.equal(f"ftilde_{s.value}_limit", "F̃_σ = F_σ̄ ⊕ F̃",
                  ch.Fts(s, N + 1), ch.Fs(s.bar, N + 1) + fw)
    return rep
