"""Subspaces of K^n held in canonical reduced-row-echelon form.

Two subspaces are equal exactly when their RREF bases are identical, which
makes them hashable and gives exact duplicate detection for lattice closure.
"""

from __future__ import annotations

import itertools
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

from .field import FieldSpec
from .matrix import Matrix, ShapeError, _kernel_rows, _rref_rows, rref_basis


class SubspaceError(ValueError):
    pass


class Subspace:
    __slots__ = ("field", "ambient_dim", "rows", "pivots", "_hash", "__dict__")

    def __init__(self, field: FieldSpec, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        vecs = [[field(x) for x in v] for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ShapeError(f"vector of length {len(v)} in K^{ambient_dim}")
        rows, pivots = rref_basis(field, vecs, ambient_dim)
        self._set(field, ambient_dim, rows, pivots)

    def _set(self, field, ambient_dim, rows, pivots):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "pivots", pivots)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def _from_rref(cls, field, ambient_dim, rows, pivots) -> Subspace:
        s = object.__new__(cls)
        s._set(field, ambient_dim, tuple(tuple(r) for r in rows), tuple(pivots))
        return s

    @classmethod
    def _span_raw(cls, field, ambient_dim, vecs) -> Subspace:
        rows, pivots = rref_basis(field, vecs, ambient_dim)
        return cls._from_rref(field, ambient_dim, rows, pivots)

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> Subspace:
        return cls._from_rref(field, n, (), ())

    @classmethod
    def full(cls, field: FieldSpec, n: int) -> Subspace:
        m = Matrix.identity(field, n)
        return cls._from_rref(field, n, m.rows, tuple(range(n)))

    @classmethod
    def from_matrix(cls, m: Matrix) -> Subspace:
        """Row space of ``m``."""
        return cls._span_raw(m.field, m.ncols, m.rows)

    @classmethod
    def column_space(cls, m: Matrix) -> Subspace:
        return cls._span_raw(m.field, m.nrows, m.T.rows if m.ncols else ())

    @classmethod
    def unit(cls, field: FieldSpec, n: int, *indices: int) -> Subspace:
        """Span of the standard basis vectors with the given 0-based indices."""
        vecs = []
        for i in indices:
            v = [0] * n
            v[i] = 1
            vecs.append(v)
        return cls(field, n, vecs)

    # -- protocol ------------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> Matrix:
        return Matrix.raw(self.field, self.rows, self.ambient_dim)

    def key(self):
        return (self.ambient_dim, self.rows)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.field == other.field and self.ambient_dim == other.ambient_dim and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.field, self.ambient_dim, self.rows)))
        return self._hash

    def __repr__(self):
        fmt = self.field.format
        vecs = ", ".join("(" + ", ".join(fmt(x) for x in r) + ")" for r in self.rows)
        return f"Subspace(dim={self.dim} in {self.field!r}^{self.ambient_dim}: <{vecs}>)"

    def to_strings(self) -> list[list[str]]:
        fmt = self.field.format
        return [[fmt(x) for x in r] for r in self.rows]

    def sort_key(self):
        """Canonical order: dimension first, then RREF entries."""
        if self.field.p:
            return (self.dim, self.rows)
        return (self.dim, tuple(tuple((x.numerator, x.denominator) for x in r) for r in self.rows))

    def is_zero(self) -> bool:
        return not self.rows

    def is_full(self) -> bool:
        return len(self.rows) == self.ambient_dim

    def _check(self, other: Subspace):
        if self.field != other.field or self.ambient_dim != other.ambient_dim:
            raise SubspaceError(
                f"mismatch: {self.field!r}^{self.ambient_dim} vs {other.field!r}^{other.ambient_dim}"
            )

    # -- membership ------------------------------------------------------------

    def _reduce(self, vec) -> list:
        """Remainder of ``vec`` after eliminating this subspace's pivots."""
        f = self.field
        v = list(vec)
        p = f.p
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if c:
                if p:
                    v = [(a - c * b) % p for a, b in zip(v, row)]
                else:
                    v = [a - c * b for a, b in zip(v, row)]
        return v

    def contains(self, vec: Sequence) -> bool:
        vec = [self.field(x) for x in vec] if not self.field.p else [x % self.field.p for x in vec]
        if len(vec) != self.ambient_dim:
            raise ShapeError("vector length mismatch")
        return not any(self._reduce(vec))

    def coords(self, vec: Sequence) -> tuple:
        """Coordinates of ``vec`` in the RREF basis; raises if not a member."""
        if any(self._reduce(vec)):
            raise SubspaceError("vector is not in the subspace")
        return tuple(vec[pc] for pc in self.pivots)

    def __le__(self, other: Subspace) -> bool:
        self._check(other)
        if self.dim > other.dim:
            return False
        return all(not any(other._reduce(r)) for r in self.rows)

    def __ge__(self, other: Subspace) -> bool:
        return other <= self

    def __lt__(self, other: Subspace) -> bool:
        return self.dim < other.dim and self <= other

    # -- lattice operations ------------------------------------------------------

    def __add__(self, other: Subspace) -> Subspace:
        self._check(other)
        if not other.rows:
            return self
        if not self.rows:
            return other
        extra = [r for r in (self._reduce(v) for v in other.rows) if any(r)]
        if not extra:
            return self
        return Subspace._span_raw(self.field, self.ambient_dim, list(self.rows) + extra)

    def __and__(self, other: Subspace) -> Subspace:
        self._check(other)
        if self.is_zero() or other.is_full():
            return self
        if other.is_zero() or self.is_full():
            return other
        # (a ∩ b) = (a' + b')'
        ann = list(self.annihilator_rows) + list(other.annihilator_rows)
        return Subspace._kernel_of_rows(self.field, self.ambient_dim, ann)

    @staticmethod
    def _kernel_of_rows(field, n, rows) -> Subspace:
        if not rows:
            return Subspace.full(field, n)
        red, pivots = _rref_rows(rows, n, field)
        vecs = _kernel_rows(field, red, pivots, n)
        return Subspace._span_raw(field, n, vecs)

    @cached_property
    def annihilator_rows(self) -> tuple:
        n = self.ambient_dim
        if not self.rows:
            return Matrix.identity(self.field, n).rows
        return tuple(tuple(v) for v in _kernel_rows(self.field, self.rows, self.pivots, n))

    def annihilator(self) -> Subspace:
        """``{u in E* : u(self) = 0}`` in dual-basis coordinates."""
        return Subspace._span_raw(self.field, self.ambient_dim, self.annihilator_rows)

    def apply(self, m: Matrix) -> Subspace:
        """Image ``m(self)`` for a square matrix acting on column vectors."""
        if m.ncols != self.ambient_dim or m.field != self.field:
            raise SubspaceError("matrix does not act on this ambient space")
        if not self.rows:
            return Subspace.zero(self.field, m.nrows)
        imgs = [m.apply(r) for r in self.rows]
        return Subspace._span_raw(self.field, m.nrows, imgs)

    def preimage(self, m: Matrix) -> Subspace:
        """``{x : m @ x in self}``."""
        if m.nrows != self.ambient_dim or m.field != self.field:
            raise SubspaceError("matrix does not map into this ambient space")
        ann = Matrix.raw(self.field, self.annihilator_rows, self.ambient_dim)
        cons = ann @ m if ann.nrows else Matrix.zeros(self.field, 0, m.ncols)
        return Subspace._kernel_of_rows(self.field, m.ncols, list(cons.rows))

    def is_invariant_under(self, m: Matrix) -> bool:
        return all(self.contains(m.apply(r)) for r in self.rows)


# -- free-function API ---------------------------------------------------------


def span(field: FieldSpec, n: int, *vectors: Sequence) -> Subspace:
    return Subspace(field, n, vectors)


def sum_(a: Subspace, b: Subspace) -> Subspace:
    return a + b


def sum_all(parts: Sequence[Subspace], field: FieldSpec | None = None, n: int | None = None) -> Subspace:
    if not parts:
        if field is None or n is None:
            raise SubspaceError("empty sum needs field and ambient dimension")
        return Subspace.zero(field, n)
    out = parts[0]
    for p in parts[1:]:
        out = out + p
    return out


def intersect(a: Subspace, b: Subspace) -> Subspace:
    return a & b


def intersect_all(parts: Sequence[Subspace]) -> Subspace:
    if not parts:
        raise SubspaceError("empty intersection")
    out = parts[0]
    for p in parts[1:]:
        out = out & p
    return out


def is_independent(parts: Sequence[Subspace]) -> bool:
    """True iff the sum of ``parts`` is direct (dimensions add up)."""
    if not parts:
        raise SubspaceError("empty list")
    return sum(p.dim for p in parts) == sum_all(parts).dim


def is_direct_sum(parts: Sequence[Subspace]) -> bool:
    """True iff ``parts`` form a direct sum equal to the whole ambient space."""
    if not parts:
        raise SubspaceError("empty list")
    total = sum_all(parts)
    return sum(p.dim for p in parts) == total.dim == parts[0].ambient_dim


def homogeneous(v: Subspace, e1: Subspace, e2: Subspace) -> bool:
    """``v ∩ (e1 + e2) == (v ∩ e1) + (v ∩ e2)``."""
    return (v & (e1 + e2)) == ((v & e1) + (v & e2))


def cohomogeneous(v: Subspace, e1: Subspace, e2: Subspace) -> bool:
    """``v + (e1 ∩ e2) == (v + e1) ∩ (v + e2)``."""
    return (v + (e1 & e2)) == ((v + e1) & (v + e2))


def annihilator(v: Subspace) -> Subspace:
    return v.annihilator()


class Quotient(NamedTuple):
    section: Matrix   # rows: lifts in E of the quotient basis
    project: Matrix   # n x d: row vector x in u  ->  x @ project = quotient coordinates

    @property
    def dim(self) -> int:
        return self.section.nrows

    def to_quotient(self, s: Subspace) -> Subspace:
        """Image in quotient coordinates of a subspace of ``u``."""
        f = self.project.field
        if not s.rows:
            return Subspace.zero(f, self.dim)
        imgs = (Matrix.raw(f, s.rows, s.ambient_dim) @ self.project).rows
        return Subspace._span_raw(f, self.dim, imgs)

    def lift(self, s: Subspace) -> Subspace:
        """Preimage representative span (without the kernel) of a quotient subspace."""
        f = self.section.field
        if not s.rows:
            return Subspace.zero(f, self.section.ncols)
        return Subspace.from_matrix(Matrix.raw(f, s.rows, s.ambient_dim) @ self.section)


def quotient_coords(u: Subspace, w: Subspace) -> Quotient:
    """Coordinates on ``u / w`` for ``w ⊆ u``.

    The section is spanned by the rows of ``u`` reduced modulo ``w``; these
    vanish on the pivot columns of ``w``.  ``section @ project`` is the
    identity of the quotient.
    """
    u._check(w)
    if not w <= u:
        raise SubspaceError("w is not contained in u")
    f = u.field
    n = u.ambient_dim
    reduced = [r for r in (w._reduce(v) for v in u.rows) if any(r)]
    sec_rows, sec_piv = rref_basis(f, reduced, n) if reduced else ((), ())
    # x -> x - sum_i x[pw_i] * w_i, then read off the section pivots.
    strip = [[f.one if i == j else f.zero for j in range(n)] for i in range(n)]
    for row, pc in zip(w.rows, w.pivots):
        strip[pc] = [f.sub(a, b) for a, b in zip(strip[pc], row)]
    project = Matrix.raw(f, [[strip[i][c] for c in sec_piv] for i in range(n)], len(sec_piv))
    section = Matrix.raw(f, sec_rows, n)
    return Quotient(section, project)


def enumerate_subspaces(field: FieldSpec, n: int, dims: Iterable[int] | None = None) -> Iterator[Subspace]:
    """Every subspace of GF(p)^n, by dimension then RREF entries."""
    if not field.is_finite:
        raise SubspaceError("subspace enumeration needs a finite field")
    elems = list(field.elements())
    out_dims = range(n + 1) if dims is None else sorted(dims)
    for k in out_dims:
        found = []
        for piv in itertools.combinations(range(n), k):
            # free slots: columns right of each pivot that are not pivot columns
            slots = [(r, c) for r, pc in enumerate(piv) for c in range(pc + 1, n) if c not in piv]
            for vals in itertools.product(elems, repeat=len(slots)):
                rows = [[field.zero] * n for _ in range(k)]
                for r, pc in enumerate(piv):
                    rows[r][pc] = field.one
                for (r, c), x in zip(slots, vals):
                    rows[r][c] = x
                found.append(Subspace._from_rref(field, n, tuple(tuple(r) for r in rows), piv))
        found.sort(key=Subspace.sort_key)
        yield from found
