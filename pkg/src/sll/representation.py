"""Matrix Lie algebras acting on a two-sum decomposition: invariance, the
involutions L and L', generalized eigenspaces, dual pairings, K²-factors and
a bounded weak-irreducibility oracle."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .field import FieldSpec
from .matrix import Matrix, kernel
from .reflexive import BilinearForm, adjoint, is_reflexive_type, perp
from .report import PreconditionError, TheoremReport
from .subspace import Subspace, SubspaceError, enumerate_subspaces, is_direct_sum, is_independent
from .twosum import NotComplementary, TwoSumDecomposition, projection


@dataclass(frozen=True, eq=False)
class MatrixLieAlgebra:
    field: FieldSpec
    ambient_dim: int
    basis: tuple[Matrix, ...]
    generators: tuple[Matrix, ...] = ()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, m: Matrix) -> bool:
        if not self.basis:
            return m.is_zero()
        span = Subspace._span_raw(self.field, self.ambient_dim ** 2, [b.flatten() for b in self.basis])
        return span.contains(m.flatten())

    def is_bracket_closed(self) -> bool:
        return all(self.contains(a.commutator(b)) for a in self.basis for b in self.basis)


def _check_square(mats: Sequence[Matrix], field=None, n=None):
    for m in mats:
        if not m.is_square:
            raise SubspaceError("Lie algebra elements must be square")
        if field is None:
            field, n = m.field, m.nrows
        elif m.field != field or m.nrows != n:
            raise SubspaceError("matrices act on different spaces")
    return field, n


def _from_flat(field: FieldSpec, n: int, vec) -> Matrix:
    return Matrix.raw(field, [tuple(vec[i * n:(i + 1) * n]) for i in range(n)], n)


def lie_closure(generators: Sequence[Matrix], field: FieldSpec | None = None,
                n: int | None = None) -> MatrixLieAlgebra:
    """Smallest bracket-closed span containing ``generators``.

    ``field`` and ``n`` are only needed when ``generators`` is empty.
    """
    generators = tuple(generators)
    field, n = _check_square(generators, field, n)
    if field is None:
        raise SubspaceError("field and dimension are required for an empty generator list")
    span = Subspace._span_raw(field, n * n, [g.flatten() for g in generators])
    while True:
        basis = [_from_flat(field, n, r) for r in span.rows]
        new = [a.commutator(b).flatten() for i, a in enumerate(basis) for b in basis[i + 1:]]
        grown = span + Subspace._span_raw(field, n * n, new) if new else span
        if grown.dim == span.dim:
            return MatrixLieAlgebra(field, n, tuple(basis), generators)
        span = grown


def zero_algebra(field: FieldSpec, n: int) -> MatrixLieAlgebra:
    return MatrixLieAlgebra(field, n, ())


def _check_alg(alg: MatrixLieAlgebra, v: Subspace):
    if alg.field != v.field or alg.ambient_dim != v.ambient_dim:
        raise SubspaceError("algebra and subspace live on different spaces")


def leaves_invariant(alg: MatrixLieAlgebra, v: Subspace) -> bool:
    _check_alg(alg, v)
    return all(v.contains(b.apply(x)) for b in alg.basis for x in v.rows)


def commutes_with_algebra(m: Matrix, alg: MatrixLieAlgebra) -> bool:
    if m.field != alg.field or m.nrows != alg.ambient_dim:
        raise SubspaceError("matrix and algebra act on different spaces")
    return all(m @ b == b @ m for b in alg.basis)


def stabilizer_algebra(field: FieldSpec, n: int, subspaces: Sequence[Subspace] = (),
                       form: BilinearForm | None = None) -> MatrixLieAlgebra:
    """All matrices preserving each subspace (and skew for ``form`` if given).

    Solved as one linear system in the n² entries of the unknown matrix.
    """
    f = field
    cons = []
    for s in subspaces:
        ann = s.annihilator_rows
        for a in ann:
            for v in s.rows:
                # a · (m v) = Σ_ij a_i m_ij v_j
                cons.append([f.mul(a[i], v[j]) for i in range(n) for j in range(n)])
    if form is not None:
        g = form.gram.rows
        # (G m + mᵀ G)_{kl} = Σ_i G_ki m_il + Σ_i m_ik G_il
        for k in range(n):
            for l in range(n):
                row = [f.zero] * (n * n)
                for i in range(n):
                    row[i * n + l] = f.add(row[i * n + l], g[k][i])
                    row[i * n + k] = f.add(row[i * n + k], g[i][l])
                cons.append(row)
    if cons:
        sol = kernel(Matrix.raw(f, cons, n * n)).rows
    else:
        sol = Matrix.identity(f, n * n).rows
    basis = tuple(_from_flat(f, n, r) for r in sol)
    return MatrixLieAlgebra(f, n, basis, basis)


def decomposition_algebra(dec: TwoSumDecomposition, form: BilinearForm | None = None) -> MatrixLieAlgebra:
    """gl(V1, V2, W1, W2), intersected with the form's skew matrices if given."""
    return stabilizer_algebra(dec.field, dec.ambient_dim, [dec.v1, dec.v2, dec.w1, dec.w2], form)


def restrict(m: Matrix, s: Subspace) -> Matrix:
    """Matrix of m|_s in the RREF basis of s (columns are coordinates of images)."""
    cols = []
    for x in s.rows:
        y = m.apply(x)
        if not s.contains(y):
            raise SubspaceError("subspace is not invariant")
        cols.append(s.coords(y))
    return Matrix.from_columns(m.field, cols, s.dim)


# -- involutions and eigenspaces ---------------------------------------------------------


def involution_from_split(arg) -> Matrix:
    """L = p_{V1}^{V2} − p_{V2}^{V1} = 2p − I for a complementary pair."""
    if isinstance(arg, TwoSumDecomposition):
        v1, v2 = arg.v1, arg.v2
    else:
        v1, v2 = arg
    if not is_direct_sum([v1, v2]):
        raise NotComplementary("V")
    p = projection(v1, v2)
    return p.scale(2) - Matrix.identity(p.field, p.nrows)


def operator_l(dec: TwoSumDecomposition) -> Matrix:
    """L = p_{V1}^{V2} − p_{W2}^{W1}."""
    return dec.projectors["p1"] - dec.projectors["q2"]


def operator_l_prime(dec: TwoSumDecomposition) -> Matrix:
    """L' = p_{V1}^{V2} − p_{W1}^{W2}."""
    return dec.projectors["p1"] - dec.projectors["q1"]


def generalized_eigenspace(m: Matrix, lam) -> Subspace:
    """ker (m − λI)^n."""
    f, n = m.field, m.nrows
    shifted = m - Matrix.identity(f, n).scale(f(lam))
    return Subspace.from_matrix(kernel(shifted ** n)) if n else Subspace.zero(f, 0)


@dataclass(frozen=True)
class EigenSplit:
    entries: tuple[tuple[object, Subspace, int], ...]
    residual: Subspace

    def space(self, lam) -> Subspace:
        for l, s, _ in self.entries:
            if l == lam:
                return s
        raise KeyError(lam)


def eigen_split(m: Matrix, lambdas: Sequence) -> EigenSplit:
    """Generalized eigenspaces at the requested λ and the common image residual."""
    f, n = m.field, m.nrows
    entries = []
    residual = Subspace.full(f, n)
    seen = set()
    for lam in lambdas:
        lam = f(lam)
        if lam in seen:
            continue
        seen.add(lam)
        shifted = (m - Matrix.identity(f, n).scale(lam)) ** n
        s = Subspace.from_matrix(kernel(shifted))
        entries.append((lam, s, s.dim))
        residual = residual & Subspace.column_space(shifted)
    return EigenSplit(tuple(entries), residual)


# -- isotropy helpers ---------------------------------------------------------------------


def _totally_isotropic(form: BilinearForm, v: Subspace) -> bool:
    return form.orthogonal(v, v)


def _nondegenerate(form: BilinearForm, v: Subspace) -> bool:
    return (v & perp(form, v)).is_zero()


def _require_reflexive(form: BilinearForm, dec: TwoSumDecomposition):
    if not is_reflexive_type(form, dec):
        raise PreconditionError("decomposition is not (V1, V2, V1⊥, V2⊥) for the form")


def verify_deux_isotropes(dec: TwoSumDecomposition, form: BilinearForm | None = None) -> TheoremReport:
    """F_e and F_τ as ±1 generalized eigenspaces of L and L'."""
    if form is not None:
        _require_reflexive(form, dec)
    rep = TheoremReport("two isotropic summands")
    sp = dec.split
    one, mone = dec.field.one, dec.field.neg(dec.field.one)
    L, Lp = operator_l(dec), operator_l_prime(dec)
    th = dec.theta
    rep.truth("theta_anticommutes_l", "θL = −Lθ", th @ L == -(L @ th), "")
    rep.truth("theta_anticommutes_l_prime", "θL' = −L'θ", th @ Lp == -(Lp @ th), "")
    for tag, op, part, name, (a, b), (c, d) in (
            ("l", L, sp.f_e, "F_e", (dec.v1, dec.w1), (dec.v2, dec.w2)),
            ("l_prime", Lp, sp.f_tau, "F_τ", (dec.v1, dec.w2), (dec.v2, dec.w1))):
        ep, em = generalized_eigenspace(op, one), generalized_eigenspace(op, mone)
        sym = "L" if tag == "l" else "L'"
        rep.truth(f"{tag}_split", f"{name} = E_({sym},−1) ⊕ E_({sym},1)",
                  is_independent([ep, em]) and ep + em == part, "", part=part, plus=ep, minus=em)
        rep.truth(f"{tag}_plus_contains", f"{'V1∩W1' if tag == 'l' else 'V1∩W2'} ⊂ E_({sym},1)",
                  (a & b) <= ep, "", plus=ep)
        rep.truth(f"{tag}_minus_contains", f"{'V2∩W2' if tag == 'l' else 'V2∩W1'} ⊂ E_({sym},−1)",
                  (c & d) <= em, "", minus=em)
        if form is None:
            continue
        if tag == "l":
            rep.truth("l_anti_self_adjoint", "L* = −L", adjoint(form, L) == -L, "")
            rep.truth("l_eigen_isotropic", "E_(L,±1) totally isotropic",
                      _totally_isotropic(form, ep) and _totally_isotropic(form, em), "", plus=ep, minus=em)
            rep.truth("l_eigen_sum_nondegenerate", "E_(L,−1) ⊕ E_(L,1) nondegenerate",
                      _nondegenerate(form, ep + em), "", total=ep + em)
        else:
            rep.truth("l_prime_self_adjoint", "L'* = L'", adjoint(form, Lp) == Lp, "")
            rep.truth("l_prime_eigen_nondegenerate", "E_(L',±1) nondegenerate",
                      _nondegenerate(form, ep) and _nondegenerate(form, em), "", plus=ep, minus=em)
            rep.truth("l_prime_eigen_orthogonal", "E_(L',−1) ⊥ E_(L',1)", form.orthogonal(ep, em), "")
    return rep


def verify_olbrich(form: BilinearForm, v1: Subspace, v2: Subspace,
                   alg: MatrixLieAlgebra | None = None) -> TheoremReport:
    """E = E_(L,1) ⊕ E_(L,−1) for L = p − p*, when E = F_e."""
    if not is_direct_sum([v1, v2]):
        raise NotComplementary("V")
    rep = TheoremReport("isotropic splitting by p − p*")
    dec = TwoSumDecomposition(v1, v2, perp(form, v1), perp(form, v2))
    if not dec.split.f_e.is_full():
        rep.inapplicable("olbrich", "E = E_(L,1) ⊕ E_(L,−1)", "E ≠ F_e", f_e=dec.split.f_e)
        return rep
    if alg is not None and not (leaves_invariant(alg, v1) and leaves_invariant(alg, v2)):
        raise PreconditionError("algebra does not preserve V1 and V2")
    f = form.field
    p = projection(v1, v2)
    L = p - adjoint(form, p)
    ep, em = generalized_eigenspace(L, f.one), generalized_eigenspace(L, f.neg(f.one))
    rep.truth("split", "E = E_(L,1) ⊕ E_(L,−1)", is_direct_sum([ep, em]) and (ep + em).is_full(), "",
              plus=ep, minus=em)
    rep.truth("plus_contains", "V1∩V1⊥ ⊂ E_(L,1)", (v1 & perp(form, v1)) <= ep, "", plus=ep)
    rep.truth("minus_contains", "V2∩V2⊥ ⊂ E_(L,−1)", (v2 & perp(form, v2)) <= em, "", minus=em)
    rep.truth("isotropic", "E_(L,±1) totally isotropic",
              _totally_isotropic(form, ep) and _totally_isotropic(form, em), "", plus=ep, minus=em)
    rep.truth("sum_nondegenerate", "E_(L,1) ⊕ E_(L,−1) nondegenerate", _nondegenerate(form, ep + em), "")
    if alg is not None:
        rep.truth("eigenspaces_invariant", "E_(L,±1) are sub-representations",
                  leaves_invariant(alg, ep) and leaves_invariant(alg, em), "")
    return rep


# -- dual pairing and K² factor ----------------------------------------------------------


@dataclass(frozen=True)
class DualIdentification:
    pairing: Matrix   # rows: basis of e2, columns: basis of e1
    injective: bool
    bijective: bool


def _pairing(form: BilinearForm, e1: Subspace, e2: Subspace) -> DualIdentification:
    m = form.pairing_matrix(e2, e1)
    inj = m.rank() == e2.dim
    return DualIdentification(m, inj, inj and e1.dim == e2.dim)


def dual_identification(form: BilinearForm, e1: Subspace, e2: Subspace) -> DualIdentification:
    """Matrix of e2 → e1*, v' ↦ ⟨v', ·⟩, with its injectivity verdict."""
    if not is_direct_sum([e1, e2]):
        raise NotComplementary("E1/E2")
    return _pairing(form, e1, e2)


def k2_factor(f1: Subspace, f2: Subspace, f3: Subspace,
              alg: MatrixLieAlgebra | None = None) -> Matrix | None:
    """p_{F1}^{F2} restricted to F3, as an (F1 × F3) coordinate matrix.

    The three subspaces must pairwise complement each other inside their sum.
    Returns None when ``alg`` does not preserve all three.
    """
    amb = f1 + f2
    for a, b in ((f1, f2), (f2, f3), (f1, f3)):
        if a.dim + b.dim != amb.dim or (a + b) != amb:
            raise PreconditionError("F1, F2, F3 are not pairwise complementary")
    if alg is not None and not all(leaves_invariant(alg, s) for s in (f1, f2, f3)):
        return None
    f = f1.field
    cols = []
    for x in f3.rows:
        cols.append(_split_coords(x, f1, f2))
    return Matrix.from_columns(f, cols, f1.dim)


def _split_coords(x, a: Subspace, b: Subspace) -> tuple:
    """Coordinates in a's basis of the a-component of x ∈ a ⊕ b."""
    f = a.field
    m = Matrix.raw(f, a.rows + b.rows, a.ambient_dim)
    target = Matrix.raw(f, [tuple(x)], a.ambient_dim)
    sol = m.solve_left(target)
    if sol is None:
        raise SubspaceError("vector not in a ⊕ b")
    return tuple(sol.rows[0][: a.dim])


def intertwines(iso: Matrix, alg: MatrixLieAlgebra, src: Subspace, dst: Subspace) -> bool:
    """iso ∘ b|src = b|dst ∘ iso for every basis element b."""
    return all(iso @ restrict(b, src) == restrict(b, dst) @ iso for b in alg.basis)


def verify_ts(form: BilinearForm, dec: TwoSumDecomposition,
              alg: MatrixLieAlgebra | None = None) -> TheoremReport:
    """Four-point structure of a representation preserving a form and V1 ⊕ V2."""
    _require_reflexive(form, dec)
    if alg is None:
        alg = decomposition_algebra(dec, form)
    elif not (leaves_invariant(alg, dec.v1) and leaves_invariant(alg, dec.v2)):
        raise PreconditionError("algebra does not preserve V1 and V2")
    f = form.field
    one, mone = f.one, f.neg(f.one)
    sp = dec.split
    fe, ft, fw = sp.parts
    rep = TheoremReport("structure of a reflexive representation")

    # (i)
    rep.truth("i_direct_sum", "E = F_e ⊕ F_τ ⊕ F̃", is_direct_sum(sp.parts), "")
    rep.truth("i_orthogonal", "F_e ⊥ F_τ ⊥ F̃",
              form.orthogonal(fe, ft) and form.orthogonal(fe, fw) and form.orthogonal(ft, fw), "")
    rep.truth("i_invariant", "F_e, F_τ, F̃ are sub-representations",
              all(leaves_invariant(alg, s) for s in sp.parts), "")

    # (ii) F_e⁺ = E_(L,1) ∩ F_e, paired with E_(L,−1) ∩ F_e
    L = operator_l(dec)
    fe_p = generalized_eigenspace(L, one) & fe
    fe_m = generalized_eigenspace(L, mone) & fe
    if fe.is_zero():
        rep.vacuous("ii_split", "F_e = F_e⁺ ⊕ (F_e⁺)*", "F_e = {0}")
    else:
        rep.truth("ii_split", "F_e = F_e⁺ ⊕ F_e⁻", is_independent([fe_p, fe_m]) and fe_p + fe_m == fe, "",
                  plus=fe_p, minus=fe_m)
        rep.truth("ii_isotropic", "F_e⁺ and F_e⁻ totally isotropic",
                  _totally_isotropic(form, fe_p) and _totally_isotropic(form, fe_m), "")
        rep.truth("ii_dual_pairing", "F_e⁻ ≅ (F_e⁺)* via the form", _pairing(form, fe_p, fe_m).bijective, "")
        rep.truth("ii_invariant", "F_e± are sub-representations",
                  leaves_invariant(alg, fe_p) and leaves_invariant(alg, fe_m), "")

    # (iii) F_τ± = E_(L',±1) ∩ F_τ
    Lp = operator_l_prime(dec)
    ft_p = generalized_eigenspace(Lp, one) & ft
    ft_m = generalized_eigenspace(Lp, mone) & ft
    if ft.is_zero():
        rep.vacuous("iii_split", "F_τ = F_τ⁺ ⊕⊥ F_τ⁻", "F_τ = {0}")
    else:
        rep.truth("iii_split", "F_τ = F_τ⁺ ⊕ F_τ⁻", is_independent([ft_p, ft_m]) and ft_p + ft_m == ft, "",
                  plus=ft_p, minus=ft_m)
        rep.truth("iii_orthogonal", "F_τ⁺ ⊥ F_τ⁻", form.orthogonal(ft_p, ft_m), "")
        rep.truth("iii_nondegenerate", "F_τ± nondegenerate",
                  _nondegenerate(form, ft_p) and _nondegenerate(form, ft_m), "")
        rep.truth("iii_invariant", "F_τ± are sub-representations",
                  leaves_invariant(alg, ft_p) and leaves_invariant(alg, ft_m), "")

    # (iv) F̃ = F̃_0 ⊗ K², F̃_0 = F̃ ∩ V1
    if fw.is_zero():
        rep.vacuous("iv_k2_factor", "F̃ = F̃_0 ⊗ K²", "F̃ = {0}")
    else:
        f0, f2, f3 = fw & dec.v1, fw & dec.v2, fw & dec.w1
        rep.truth("iv_nondegenerate", "F̃_0 = F̃∩V1 nondegenerate", _nondegenerate(form, f0), "", f0=f0)
        try:
            iso = k2_factor(f0, f2, f3, alg)
        except PreconditionError as e:
            rep.truth("iv_k2_factor", "F̃ = F̃_0 ⊗ K²", False, str(e))
        else:
            ok = iso is not None and iso.is_square and iso.is_invertible() and intertwines(iso, alg, f3, f0)
            rep.truth("iv_k2_factor", "F̃∩W1 ≅ F̃∩V1 as representations", ok, "", f0=f0, f3=f3)
    return rep


# -- weak irreducibility ------------------------------------------------------------------


class Verdict(str, enum.Enum):
    yes = "Yes"
    no = "No"
    infeasible = "Infeasible"


@dataclass(frozen=True)
class OracleResult:
    verdict: Verdict
    witness: Subspace | None = None

    def __bool__(self):
        return self.verdict is Verdict.yes


def weakly_irreducible_oracle(form: BilinearForm, alg: MatrixLieAlgebra,
                              max_dim: int = 4, max_p: int = 3) -> OracleResult:
    """Exhaustive search for a proper nondegenerate invariant subspace.

    Subspaces are visited in canonical order, so the witness is the first
    one found.
    """
    f, n = form.field, form.dim
    if not f.is_finite or n > max_dim or f.p > max_p:
        return OracleResult(Verdict.infeasible)
    for s in enumerate_subspaces(f, n, range(1, n)):
        if _nondegenerate(form, s) and leaves_invariant(alg, s):
            return OracleResult(Verdict.no, s)
    return OracleResult(Verdict.yes)
