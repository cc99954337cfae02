"""Sublattices of the subspace lattice: closure, Hasse diagrams, the
conjugacy invariant of the five-direct-sums configuration and the θ² = 0
catalog."""

from __future__ import annotations

import itertools
import os
from collections import deque
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .field import FieldSpec
from .matrix import Matrix
from .poly import Poly, invariant_factors
from .report import PreconditionError, TheoremReport
from .subspace import Quotient, Subspace, SubspaceError, is_direct_sum, quotient_coords
from .twosum import CanonicalSplit, NotComplementary, TwoSumDecomposition, make, projection

DEFAULT_MAX_ELEMENTS = 10000


def default_max_elements() -> int:
    env = os.environ.get("SLL_MAX_ELEMENTS")
    return int(env) if env else DEFAULT_MAX_ELEMENTS


class FourSumViolated(PreconditionError):
    def __init__(self, which: str):
        self.which = which
        super().__init__(f"{which} is not a direct sum decomposition of E")


class TruncatedLattice(PreconditionError):
    pass


@dataclass(frozen=True)
class SubspaceLattice:
    elements: tuple[Subspace, ...]
    cover_edges: tuple[tuple[int, int], ...]
    generators: tuple[int, ...]
    truncated: bool

    def __len__(self):
        return len(self.elements)

    def __contains__(self, s: Subspace) -> bool:
        return s in set(self.elements)

    def index(self, s: Subspace) -> int:
        return self.elements.index(s)


def _covers(elements: Sequence[Subspace]) -> list[tuple[int, int]]:
    """Hasse edges (lower, upper) of the inclusion order."""
    below: list[set[int]] = []
    for b, sb in enumerate(elements):
        below.append({a for a, sa in enumerate(elements) if a != b and sa.dim < sb.dim and sa <= sb})
    edges = []
    for b in range(len(elements)):
        for a in sorted(below[b]):
            if not any(a in below[c] for c in below[b]):
                edges.append((a, b))
    return edges


def closure(seeds: Sequence[Subspace], max_elements: int | None = None) -> SubspaceLattice:
    """Close ``seeds`` under pairwise sum and intersection.

    Stops with ``truncated=True`` as soon as a new element would exceed
    ``max_elements``.
    """
    if max_elements is None:
        max_elements = default_max_elements()
    seeds = list(seeds)
    if not seeds:
        return SubspaceLattice((), (), (), False)
    for s in seeds[1:]:
        seeds[0]._check(s)
    if max_elements < len(set(seeds)):
        raise ValueError("max_elements is smaller than the number of seeds")
    elems: list[Subspace] = []
    seen: set[Subspace] = set()
    for s in seeds:
        if s not in seen:
            seen.add(s)
            elems.append(s)
    queue = deque(range(len(elems)))
    truncated = False
    while queue and not truncated:
        k = queue.popleft()
        x = elems[k]
        # each unordered pair is met exactly once, when its later member is dequeued
        for y in elems[:k]:
            if x <= y or y <= x:
                continue
            for z in (x + y, x & y):
                if z not in seen:
                    if len(elems) >= max_elements:
                        truncated = True
                        break
                    seen.add(z)
                    elems.append(z)
                    queue.append(len(elems) - 1)
            if truncated:
                break
    order = sorted(range(len(elems)), key=lambda i: elems[i].sort_key())
    ordered = tuple(elems[i] for i in order)
    pos = {s: i for i, s in enumerate(ordered)}
    gens = tuple(sorted({pos[s] for s in seeds}))
    return SubspaceLattice(ordered, tuple(_covers(ordered)), gens, truncated)


def is_closed(elements: Sequence[Subspace]) -> bool:
    s = set(elements)
    return all((a + b) in s and (a & b) in s for a, b in itertools.combinations(elements, 2))


def verify_treillis_homogene(lat: SubspaceLattice, split: CanonicalSplit) -> TheoremReport:
    """Every lattice element V satisfies V = (V∩F_e) ⊕ (V∩F_τ) ⊕ (V∩F̃)."""
    if lat.truncated:
        raise TruncatedLattice("lattice closure was truncated")
    rep = TheoremReport("lattice homogeneity")
    for idx, v in enumerate(lat.elements):
        parts = [v & p for p in split.parts]
        total = parts[0] + parts[1] + parts[2]
        ok = sum(p.dim for p in parts) == v.dim and total == v
        if not ok:
            rep.truth("element_homogeneous", "V = (V∩F_e) ⊕ (V∩F_τ) ⊕ (V∩F̃)", False,
                      f"element {idx} is not homogeneous", element=v, parts=parts)
            return rep
    rep.truth("element_homogeneous", "V = (V∩F_e) ⊕ (V∩F_τ) ⊕ (V∩F̃)", True)
    return rep


# -- five direct sums ------------------------------------------------------------------


def check_four_sums(dec: TwoSumDecomposition):
    for name, a, b in (("V1+V2", dec.v1, dec.v2), ("W1+W2", dec.w1, dec.w2),
                       ("V1+W2", dec.v1, dec.w2), ("W1+V2", dec.w1, dec.v2)):
        if not is_direct_sum([a, b]):
            raise FourSumViolated(name)


@dataclass(frozen=True)
class FiveSumInvariant:
    t1: Subspace
    u1: Subspace
    i_matrix: Matrix
    j_matrix: Matrix
    invariant_factors: tuple[Poly, ...]
    quotient: Quotient = dc_field(repr=False)
    v1q: Subspace = dc_field(repr=False)
    w1q: Subspace = dc_field(repr=False)
    t1q: Subspace = dc_field(repr=False)
    u1q: Subspace = dc_field(repr=False)

    @property
    def conjugacy_operator(self) -> Matrix:
        """j⁻¹∘i on V1' (coordinates in the RREF basis of V1')."""
        return self.j_matrix.inverse() @ self.i_matrix

    @property
    def t_meet_u(self) -> Subspace:
        return self.t1q & self.u1q

    def factor_strings(self) -> list[str]:
        return [str(p) for p in self.invariant_factors]


def _graph_map(src: Subspace, dst: Subspace, along: Subspace) -> Matrix:
    """Matrix (dst coords × src coords) of v ↦ the dst-component of v along ``along``."""
    f = src.field
    proj = projection(dst, along)
    cols = [dst.coords(proj.apply(v)) for v in src.rows]
    return Matrix.from_columns(f, cols, dst.dim)


def five_sum_invariant(dec: TwoSumDecomposition) -> FiveSumInvariant:
    check_four_sums(dec)
    v1, v2, w1, w2 = dec.v1, dec.v2, dec.w1, dec.w2
    bottom, top = v1 & w1, v1 + w1
    t1 = bottom + (v2 & top)
    u1 = bottom + (w2 & top)
    q = quotient_coords(top, bottom)
    v1q, w1q, t1q, u1q = (q.to_quotient(s) for s in (v1, w1, t1, u1))
    for name, a in (("T1'", t1q), ("U1'", u1q)):
        if not (is_direct_sum([a, w1q]) and is_direct_sum([a, v1q])):
            raise PreconditionError(f"{name} is not a common complement of V1' and W1'")
    i_mat = _graph_map(v1q, w1q, t1q)
    j_mat = _graph_map(v1q, w1q, u1q)
    op = j_mat.inverse() @ i_mat
    return FiveSumInvariant(t1, u1, i_mat, j_mat, tuple(invariant_factors(op)),
                            q, v1q, w1q, t1q, u1q)


def m3_relations(atoms: Sequence[Subspace]) -> bool:
    """Pairwise meets are {0} and pairwise joins are the whole (quotient) space."""
    for a, b in itertools.combinations(atoms, 2):
        if not (a & b).is_zero() or not (a + b).is_full():
            return False
    return True


# -- θ² = 0 catalog -------------------------------------------------------------------


@dataclass(frozen=True)
class Theta2Catalog:
    xs: tuple[Subspace, ...]
    ys: tuple[Subspace, ...]

    def cells(self) -> dict[tuple[int, int], Subspace]:
        return {(i, j): self.xs[i] + self.ys[j] for i in range(4) for j in range(4)}


def theta2_catalog(dec: TwoSumDecomposition) -> Theta2Catalog:
    v1, v2, w1, w2 = dec.v1, dec.v2, dec.w1, dec.w2
    f, n = dec.field, dec.ambient_dim
    zero = Subspace.zero(f, n)
    xs = (zero, (v2 + w2) & v1, v1 & w1, v1)
    ys = (zero, (v1 + w1) & v2, v2 & w2, v2)
    return Theta2Catalog(xs, ys)


def verify_theta2_lattice(dec: TwoSumDecomposition, max_elements: int | None = None) -> TheoremReport:
    try:
        check_four_sums(dec)
    except FourSumViolated as e:
        raise PreconditionError(f"precondition failed: {e}") from None
    th = dec.theta
    if not (th @ th).is_zero():
        raise PreconditionError("precondition failed: θ² ≠ 0")
    v1, v2, w1, w2 = dec.v1, dec.v2, dec.w1, dec.w2
    rep = TheoremReport("θ² = 0 lattice catalog")
    a1, a2 = (v1 + w1) & v2, (v1 + w1) & w2
    rep.truth("lemma_first", "(V1+W1)∩V2 = (V1+W1)∩W2 ⊂ V2∩W2", a1 == a2 and a1 <= (v2 & w2),
              "", lhs=a1, rhs=a2)
    b1, b2 = (v2 + w2) & v1, (v2 + w2) & w1
    rep.truth("lemma_second", "(V2+W2)∩V1 = (V2+W2)∩W1 ⊂ V1∩W1", b1 == b2 and b1 <= (v1 & w1),
              "", lhs=b1, rhs=b2)
    cat = theta2_catalog(dec)
    xs, ys = cat.xs, cat.ys
    rep.truth("x_chain", "X0 ⊂ X1 ⊂ X2 ⊂ X3", all(xs[k] <= xs[k + 1] for k in range(3)), "", xs=list(xs))
    rep.truth("y_chain", "Y0 ⊂ Y1 ⊂ Y2 ⊂ Y3", all(ys[k] <= ys[k + 1] for k in range(3)), "", ys=list(ys))
    cells = cat.cells()
    ok = all(xs[i].dim + ys[j].dim == cells[i, j].dim and cells[i, j] == ((xs[i] + v2) & (v1 + ys[j]))
             for i in range(4) for j in range(4))
    rep.truth("cell_as_meet", "X_i ⊕ Y_j = (X_i ⊕ V2) ∩ (V1 ⊕ Y_j)", ok, "")
    rep.truth("x1_prime", "((V2+W2)∩V1) + V2 = V2 + W2", xs[1] + v2 == v2 + w2, "")
    rep.truth("y1_prime", "((V1+W1)∩V2) + V1 = V1 + W1", ys[1] + v1 == v1 + w1, "")
    catalog = set(cells.values()) | {w1, w2}
    rep.truth("catalog_is_lattice", "{X_i ⊕ Y_j} ∪ {W1, W2} closed under + and ∩",
              is_closed(sorted(catalog, key=Subspace.sort_key)), "")
    lat = closure([v1, v2, w1, w2], max_elements or default_max_elements())
    elems = set(lat.elements)
    rep.truth("closure_in_catalog", "lattice(V1,V2,W1,W2) ⊂ {X_i ⊕ Y_j} ∪ {W1, W2}",
              not lat.truncated and elems <= catalog, "", extra=sorted(elems - catalog, key=Subspace.sort_key))
    rep.truth("closure_size", "at most 18 elements", len(elems) <= 18, f"{len(elems)} elements")
    rep.notes.append(f"closure has {len(elems)} of the {len(catalog)} catalog elements")
    return rep


def search_theta2_instances(field: FieldSpec, n: int = 4, limit: int | None = None) -> list[TwoSumDecomposition]:
    """All instances with θ ≠ 0, θ² = 0 and the four direct sums, up to change of basis.

    Every such instance is conjugate to one with V1, V2 spanned by the first
    k and last n−k coordinate vectors; W1 is then the graph of a map
    V1 → V2 (being a complement of V2) and W2 the graph of a map V2 → V1.
    Those maps are enumerated exhaustively.
    """
    if not field.is_finite:
        raise ValueError("exhaustive search needs a finite field")
    found = []
    elems = list(field.elements())
    for k in range(1, n):
        v1 = Subspace.unit(field, n, *range(k))
        v2 = Subspace.unit(field, n, *range(k, n))
        h = n - k
        for a in itertools.product(elems, repeat=k * h):
            w1 = Subspace._span_raw(field, n, [
                [field.one if c == r else field.zero for c in range(k)] + [a[r * h + c] for c in range(h)]
                for r in range(k)])
            for b in itertools.product(elems, repeat=k * h):
                w2 = Subspace._span_raw(field, n, [
                    [b[r * k + c] for c in range(k)] + [field.one if c == r else field.zero for c in range(h)]
                    for r in range(h)])
                if not is_direct_sum([w1, w2]):
                    continue
                dec = TwoSumDecomposition(v1, v2, w1, w2)
                th = dec.theta
                if th.is_zero() or not (th @ th).is_zero():
                    continue
                found.append(dec)
                if limit and len(found) >= limit:
                    return found
    return found


# -- DOT output ------------------------------------------------------------------------


def _fmt_basis(s: Subspace) -> str:
    if s.is_zero():
        return "0"
    return " ".join("(" + ",".join(r) + ")" for r in s.to_strings())


def to_dot(lat: SubspaceLattice, labels: str = "dims", name: str = "lattice") -> str:
    """Hasse diagram as a DOT digraph, bottom to top, generators highlighted."""
    if labels not in ("dims", "bases"):
        raise ValueError("labels must be 'dims' or 'bases'")
    gens = set(lat.generators)
    out = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
    for i, s in enumerate(lat.elements):
        text = f"n{i}: dim {s.dim}" if labels == "dims" else _fmt_basis(s)
        style = ", style=filled, fillcolor=lightblue" if i in gens else ""
        out.append(f'  n{i} [label="{text}"{style}];')
    for a, b in lat.cover_edges:
        out.append(f"  n{a} -> n{b};")
    out.append("}")
    return "\n".join(out) + "\n"


def legend(lat: SubspaceLattice) -> dict[str, dict]:
    return {f"n{i}": {"dim": s.dim, "basis": s.to_strings(), "generator": i in set(lat.generators)}
            for i, s in enumerate(lat.elements)}
