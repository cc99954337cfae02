"""Decompositions of E into two direct sums, the commutator θ, its fixed-point
chains and the canonical split E = F_e ⊕ F_τ ⊕ F̃."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

from .field import FieldSpec
from .matrix import Matrix
from .report import PreconditionError, TheoremReport, eq_witness
from .subspace import Subspace, SubspaceError, homogeneous, cohomogeneous, is_direct_sum


class NotComplementary(PreconditionError):
    def __init__(self, which: str, detail: str = ""):
        self.which = which
        super().__init__(f"{which} pair is not a direct sum decomposition of E" + (f": {detail}" if detail else ""))


class Sigma(enum.Enum):
    """The two permutations of {1, 2}."""

    e = "e"
    tau = "tau"

    def __call__(self, i: int) -> int:
        return i if self is Sigma.e else 3 - i

    @property
    def bar(self) -> Sigma:
        return Sigma.tau if self is Sigma.e else Sigma.e

    def compose(self, other: Sigma) -> Sigma:
        return Sigma.e if self is other else Sigma.tau


def projection(onto: Subspace, along: Subspace) -> Matrix:
    """Projection onto ``onto`` parallel to ``along`` (requires onto ⊕ along = E)."""
    if not is_direct_sum([onto, along]):
        raise NotComplementary("projection", f"dims {onto.dim}+{along.dim}")
    f, n = onto.field, onto.ambient_dim
    basis = Matrix.raw(f, onto.rows + along.rows, n).T  # columns = adapted basis
    keep = Matrix.diag(f, [1] * onto.dim + [0] * along.dim)
    return basis @ keep @ basis.inverse()


@dataclass(frozen=True, eq=False)
class TwoSumDecomposition:
    """(E, V1, V2, W1, W2) with V1 ⊕ V2 = W1 ⊕ W2 = E."""

    v1: Subspace
    v2: Subspace
    w1: Subspace
    w2: Subspace

    @property
    def field(self) -> FieldSpec:
        return self.v1.field

    @property
    def ambient_dim(self) -> int:
        return self.v1.ambient_dim

    def V(self, i: int) -> Subspace:
        return self.v1 if i == 1 else self.v2

    def W(self, j: int) -> Subspace:
        return self.w1 if j == 1 else self.w2

    def __eq__(self, other):
        if not isinstance(other, TwoSumDecomposition):
            return NotImplemented
        return (self.v1, self.v2, self.w1, self.w2) == (other.v1, other.v2, other.w1, other.w2)

    def __hash__(self):
        return hash((self.v1, self.v2, self.w1, self.w2))

    @cached_property
    def projectors(self) -> dict[str, Matrix]:
        p1 = projection(self.v1, self.v2)
        q1 = projection(self.w1, self.w2)
        ident = Matrix.identity(self.field, self.ambient_dim)
        return {"p1": p1, "p2": ident - p1, "q1": q1, "q2": ident - q1}

    @cached_property
    def theta(self) -> Matrix:
        pr = self.projectors
        return pr["q1"] @ pr["p1"] - pr["p1"] @ pr["q1"]

    @cached_property
    def chains(self) -> ChainReport:
        return _chains(self)

    @cached_property
    def split(self) -> CanonicalSplit:
        c = self.chains
        return CanonicalSplit(c.f_e[-1], c.f_tau[-1], c.ftilde[-1])

    def transform(self, m: Matrix) -> TwoSumDecomposition:
        """Image of the decomposition under an invertible change of basis."""
        return TwoSumDecomposition(self.v1.apply(m), self.v2.apply(m), self.w1.apply(m), self.w2.apply(m))


def make(v1: Subspace, v2: Subspace, w1: Subspace, w2: Subspace) -> TwoSumDecomposition:
    for s in (v2, w1, w2):
        if s.field != v1.field or s.ambient_dim != v1.ambient_dim:
            raise SubspaceError("subspaces live in different ambient spaces")
    if not is_direct_sum([v1, v2]):
        raise NotComplementary("V", f"dim V1={v1.dim}, dim V2={v2.dim}, dim(V1+V2)={(v1 + v2).dim}")
    if not is_direct_sum([w1, w2]):
        raise NotComplementary("W", f"dim W1={w1.dim}, dim W2={w2.dim}, dim(W1+W2)={(w1 + w2).dim}")
    return TwoSumDecomposition(v1, v2, w1, w2)


def projector(dec: TwoSumDecomposition, which: str) -> Matrix:
    """One of ``p1, p2`` (onto V_i along V_{3-i}) or ``q1, q2`` (same for W)."""
    try:
        return dec.projectors[which]
    except KeyError:
        raise ValueError(f"unknown projector {which!r}") from None


def theta(dec: TwoSumDecomposition) -> Matrix:
    """θ = q1∘p1 − p1∘q1."""
    return dec.theta


def theta_expressions(dec: TwoSumDecomposition) -> list[Matrix]:
    """The four commutator expressions that all equal θ."""
    pr = dec.projectors
    p1, p2, q1, q2 = pr["p1"], pr["p2"], pr["q1"], pr["q2"]
    return [
        q1 @ p1 - p1 @ q1,
        q2 @ p2 - p2 @ q2,
        p2 @ q1 - q1 @ p2,
        p1 @ q2 - q2 @ p1,
    ]


def dual(dec: TwoSumDecomposition) -> TwoSumDecomposition:
    """(E*, W1', W2', V1', V2') in dual-basis coordinates."""
    return TwoSumDecomposition(dec.w1.annihilator(), dec.w2.annihilator(),
                               dec.v1.annihilator(), dec.v2.annihilator())


# -- chains ------------------------------------------------------------------------


@dataclass(frozen=True)
class ChainReport:
    f: tuple[Subspace, ...]
    ftilde: tuple[Subspace, ...]
    f_e: tuple[Subspace, ...]
    f_tau: tuple[Subspace, ...]
    ftilde_e: tuple[Subspace, ...]
    ftilde_tau: tuple[Subspace, ...]

    @staticmethod
    def index(chain) -> int:
        """First n with chain[n] == chain[n+1]."""
        return len(chain) - 2

    @property
    def stabilization(self) -> dict[str, int]:
        return {name: self.index(getattr(self, name))
                for name in ("f", "ftilde", "f_e", "f_tau", "ftilde_e", "ftilde_tau")}

    @property
    def horizon(self) -> int:
        """Largest stabilization index over all chains."""
        return max(self.stabilization.values())

    @staticmethod
    def at(chain, n: int) -> Subspace:
        return chain[min(n, len(chain) - 1)]

    def F(self, n: int) -> Subspace:
        return self.at(self.f, n)

    def Ft(self, n: int) -> Subspace:
        return self.at(self.ftilde, n)

    def Fs(self, sigma: Sigma, n: int) -> Subspace:
        return self.at(self.f_e if sigma is Sigma.e else self.f_tau, n)

    def Fts(self, sigma: Sigma, n: int) -> Subspace:
        return self.at(self.ftilde_e if sigma is Sigma.e else self.ftilde_tau, n)


def _iterate(start: Subspace, step, cap: int) -> tuple[Subspace, ...]:
    out = [start]
    for _ in range(cap + 1):
        nxt = step(out[-1])
        out.append(nxt)
        if nxt == out[-2]:
            return tuple(out)
    raise AssertionError("chain failed to stabilise within ambient_dim + 1 steps")


def _chains(dec: TwoSumDecomposition) -> ChainReport:
    f, n = dec.field, dec.ambient_dim
    V, W = dec.V, dec.W
    zero, full = Subspace.zero(f, n), Subspace.full(f, n)
    pairs_all = [(i, j) for i in (1, 2) for j in (1, 2)]

    def up(pairs):
        def step(x):
            acc = zero
            for i, j in pairs:
                acc = acc + ((x + V(i)) & (x + W(j)))
            return acc
        return step

    def down(pairs):
        def step(x):
            acc = full
            for i, j in pairs:
                acc = acc & ((x & V(i)) + (x & W(j)))
            return acc
        return step

    pairs_e = [(1, 1), (2, 2)]
    pairs_t = [(1, 2), (2, 1)]
    return ChainReport(
        f=_iterate(zero, up(pairs_all), n),
        ftilde=_iterate(full, down(pairs_all), n),
        f_e=_iterate(zero, up(pairs_e), n),
        f_tau=_iterate(zero, up(pairs_t), n),
        ftilde_e=_iterate(full, down(pairs_e), n),
        ftilde_tau=_iterate(full, down(pairs_t), n),
    )


def chains(dec: TwoSumDecomposition) -> ChainReport:
    return dec.chains


@dataclass(frozen=True)
class CanonicalSplit:
    f_e: Subspace
    f_tau: Subspace
    ftilde: Subspace

    @property
    def parts(self) -> list[Subspace]:
        return [self.f_e, self.f_tau, self.ftilde]

    @property
    def f(self) -> Subspace:
        return self.f_e + self.f_tau


def canonical_split(dec: TwoSumDecomposition) -> CanonicalSplit:
    return dec.split


def restricted_nilpotency_index(m: Matrix, s: Subspace) -> int | None:
    """Smallest k with m^k(s) = 0, or None if m is not nilpotent on s."""
    cur = s
    for k in range(s.dim + 1):
        if cur.is_zero():
            return k
        cur = cur.apply(m)
    return None


def nilpotency_index(dec: TwoSumDecomposition) -> int:
    """Nilpotency index of θ on F(∞) (equals the F-chain stabilization index)."""
    return ChainReport.index(dec.chains.f)


# -- verification ------------------------------------------------------------------


def verify_section2(dec: TwoSumDecomposition) -> TheoremReport:
    """Evaluate every identity about θ and the chains, for all n up to stabilization."""
    rep = TheoremReport("two-sum identities")
    f, dim = dec.field, dec.ambient_dim
    th = dec.theta
    ch = dec.chains
    zero = Subspace.zero(f, dim)
    V, W = dec.V, dec.W
    N = max(ch.horizon + 1, 1)
    ns = range(0, N + 1)
    ns1 = range(1, N + 1)
    sigmas = (Sigma.e, Sigma.tau)

    exprs = theta_expressions(dec)
    rep.truth("theta_four_expressions", "q1p1−p1q1 = q2p2−p2q2 = p2q1−q1p2 = p1q2−q2p1",
              all(e == exprs[0] for e in exprs), "commutator expressions differ",
              expressions=exprs)
    rep.truth("theta_swaps_summands", "θ(V_i) ⊂ V_τ(i), θ(W_i) ⊂ W_τ(i)",
              all(V(i).apply(th) <= V(3 - i) and W(i).apply(th) <= W(3 - i) for i in (1, 2)),
              "θ does not swap the summands")
    rep.equal("dual_theta_is_transpose", "θ_{V*} = (θ_V)*", dual(dec).theta, th.T)

    powers = [Matrix.identity(f, dim)]
    for _ in range(N):
        powers.append(powers[-1] @ th)

    rep.over_range("kernel_theta_power", "ker θ^n = F(n)", ns,
                   lambda n: eq_witness(Subspace.from_matrix(_kernel_matrix(powers[n])), ch.F(n)))
    rep.over_range("image_theta_power", "im θ^n = F̃(n)", ns,
                   lambda n: eq_witness(Subspace.column_space(powers[n]), ch.Ft(n)))
    rep.over_range("f_preimage", "F(n+1) = θ^{-1}(F(n))", range(0, N),
                   lambda n: eq_witness(ch.F(n).preimage(th), ch.F(n + 1)))
    rep.over_range("ftilde_image", "F̃(n+1) = θ(F̃(n))", range(0, N),
                   lambda n: eq_witness(ch.Ft(n).apply(th), ch.Ft(n + 1)))

    inter = [V(i) & W(j) for i in (1, 2) for j in (1, 2)]
    f1_direct = sum(x.dim for x in inter) == ch.F(1).dim
    rep.truth("f1_direct_sum", "F(1) = ⊕_{i,j} V_i ∩ W_j",
              f1_direct and _sum(inter, zero) == ch.F(1), "F(1) is not the direct sum",
              f1=ch.F(1), intersections=inter)

    # Fitting split
    F, Ft = ch.f[-1], ch.ftilde[-1]
    rep.truth("fitting_split", "E = F ⊕ F̃", is_direct_sum([F, Ft]), "F and F̃ are not supplementary",
              f=F, ftilde=Ft)
    rep.truth("theta_nilpotent_on_f", "θ|_F nilpotent",
              F.apply(th) <= F and restricted_nilpotency_index(th, F) is not None,
              "θ is not nilpotent on F", f=F)
    rep.truth("theta_invertible_on_ftilde", "θ|_F̃ invertible", Ft.apply(th) == Ft,
              "θ(F̃) ≠ F̃", ftilde=Ft, image=Ft.apply(th))

    # F̃ homogeneity
    rep.truth("ftilde_split_v", "(F̃∩V1) ⊕ (F̃∩V2) = F̃", _is_split(Ft, V(1), V(2)), "", ftilde=Ft)
    rep.truth("ftilde_split_w", "(F̃∩W1) ⊕ (F̃∩W2) = F̃", _is_split(Ft, W(1), W(2)), "", ftilde=Ft)
    rep.truth("ftilde_split_vw", "(F̃∩V_i) ⊕ (F̃∩W_j) = F̃",
              all(_is_split(Ft, V(i), W(j)) for i in (1, 2) for j in (1, 2)), "", ftilde=Ft)
    rep.over_range("ftilde_n_split", "(F̃(n)∩V1) ⊕ (F̃(n)∩V2) = F̃(n), same for W", ns,
                   lambda n: (_is_split(ch.Ft(n), V(1), V(2)) and _is_split(ch.Ft(n), W(1), W(2)),
                              {"ftilde_n": ch.Ft(n)}))
    rep.over_range("ftilde_n_homogeneous", "F̃(n) ∩ (V1+V2) = (F̃(n)∩V1) + (F̃(n)∩V2)", ns,
                   lambda n: homogeneous(ch.Ft(n), V(1), V(2)) and homogeneous(ch.Ft(n), W(1), W(2)))

    for s in sigmas:
        tag = s.value
        sb = s.bar
        rep.over_range(f"theta_lowers_f_{tag}", "θ(F_σ(n+1)) ⊂ F_σ(n)", range(0, N),
                       lambda n, s=s: (ch.Fs(s, n + 1).apply(th) <= ch.Fs(s, n),
                                       {"f_sigma_next": ch.Fs(s, n + 1), "f_sigma": ch.Fs(s, n)}))
        rep.over_range(f"f_{tag}_cohomogeneous", "(F_σ(n)+V1)∩(F_σ(n)+V2) = F_σ(n), same for W", ns,
                       lambda n, s=s: (cohomogeneous(ch.Fs(s, n), V(1), V(2))
                                       and cohomogeneous(ch.Fs(s, n), W(1), W(2)),
                                       {"f_sigma": ch.Fs(s, n)}))
        rep.over_range(f"f_{tag}_meets_fbar1_trivially", "F_σ(n) ∩ F_σ̄(1) = {0}", ns,
                       lambda n, s=s, sb=sb: eq_witness(ch.Fs(s, n) & ch.Fs(sb, 1), zero))
        rep.over_range(f"f_{tag}_meet_f1", "F_σ(n) ∩ F(1) = F_σ(1)", ns1,
                       lambda n, s=s: eq_witness(ch.Fs(s, n) & ch.F(1), ch.Fs(s, 1)))
        rep.over_range(f"f_{tag}_inside_vi_wbar", "F_σ(n) ⊂ V_i + W_σ̄(i)", ns,
                       lambda n, s=s, sb=sb: all(ch.Fs(s, n) <= V(i) + W(sb(i)) for i in (1, 2)))
        rep.over_range(f"f_{tag}_homogeneous", "F_σ(n) = (F_σ(n)∩V1) ⊕ (F_σ(n)∩V2), same for W", ns,
                       lambda n, s=s: _is_split(ch.Fs(s, n), V(1), V(2)) and _is_split(ch.Fs(s, n), W(1), W(2)))
        rep.over_range(f"f_{tag}_split_v_wbar", "(F_σ(n)∩V_i) ⊕ (F_σ(n)∩W_σ̄(i)) = F_σ(n)", ns,
                       lambda n, s=s, sb=sb: all(_is_split(ch.Fs(s, n), V(i), W(sb(i))) for i in (1, 2)))
        rep.over_range(f"lemma_ab_{tag}", "(A+B0)∩(A0+B) = A0+B0+(A∩B)", ns,
                       lambda n, s=s: _lemma_ab(ch.Fs(s, n), dec, s))

    rep.over_range("f_e_meet_f_tau", "F_e(n) ∩ F_τ(n) = {0}", ns,
                   lambda n: eq_witness(ch.Fs(Sigma.e, n) & ch.Fs(Sigma.tau, n), zero))
    rep.over_range("f_e_plus_f_tau", "F_e(n) ⊕ F_τ(n) = F(n)", ns,
                   lambda n: (ch.Fs(Sigma.e, n).dim + ch.Fs(Sigma.tau, n).dim == ch.F(n).dim
                              and ch.Fs(Sigma.e, n) + ch.Fs(Sigma.tau, n) == ch.F(n),
                              {"f_e": ch.Fs(Sigma.e, n), "f_tau": ch.Fs(Sigma.tau, n), "f": ch.F(n)}))
    rep.over_range("vw_homogeneous_wrt_fe_ftau", "V_i+W_j homogeneous w.r.t. F_e(n)+F_τ(n)", ns,
                   lambda n: all(homogeneous(V(i) + W(j), ch.Fs(Sigma.e, n), ch.Fs(Sigma.tau, n))
                                 for i in (1, 2) for j in (1, 2)))

    sp = dec.split
    rep.truth("canonical_split", "E = F_e ⊕ F_τ ⊕ F̃", is_direct_sum(sp.parts),
              "the three canonical parts are not supplementary",
              f_e=sp.f_e, f_tau=sp.f_tau, ftilde=sp.ftilde)
    rep.truth("stabilization_bounded", "stabilization index ≤ dim E",
              all(v <= dim for v in ch.stabilization.values()), "", indices=list(ch.stabilization.values()))
    return rep


def _kernel_matrix(m: Matrix) -> Matrix:
    from .matrix import kernel
    return kernel(m)


def _sum(parts, zero):
    acc = zero
    for p in parts:
        acc = acc + p
    return acc


def _is_split(x: Subspace, a: Subspace, b: Subspace) -> bool:
    """(x∩a) ⊕ (x∩b) = x."""
    xa, xb = x & a, x & b
    return xa.dim + xb.dim == x.dim and (xa + xb) == x


def _lemma_ab(fs: Subspace, dec: TwoSumDecomposition, s: Sigma):
    V, W = dec.V, dec.W
    A = fs + V(1)
    B = fs + V(2)
    A0 = (fs + V(1)) & (fs + W(s(1)))
    B0 = (fs + V(2)) & (fs + W(s(2)))
    lhs = (A + B0) & (A0 + B)
    rhs = A0 + B0 + (A & B)
    return eq_witness(lhs, rhs)
