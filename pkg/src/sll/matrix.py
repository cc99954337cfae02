"""Dense matrices over an exact field, with row reduction, kernels and images.

Matrices act on column vectors.  Subspace bases elsewhere in the package are
stored as the *rows* of a matrix, so the image of a row-basis ``B`` under
``m`` is ``B @ m.T``.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .field import FieldSpec, Scalar

# Above this many entries, prime-field row reduction is done with numpy int64
# arrays (exact: all intermediate values stay below p**2).
_NUMPY_THRESHOLD = 400


class ShapeError(ValueError):
    pass


class Matrix:
    """Immutable dense matrix over a :class:`FieldSpec`."""

    __slots__ = ("field", "nrows", "ncols", "rows", "_hash")

    def __init__(self, field: FieldSpec, rows: Iterable[Sequence], ncols: int | None = None):
        rows = tuple(tuple(field(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ShapeError("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ShapeError("ragged rows")
        self._set(field, rows, ncols)

    def _set(self, field, rows, ncols):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def raw(cls, field: FieldSpec, rows, ncols: int) -> Matrix:
        """Build from already-reduced field elements without coercion."""
        m = object.__new__(cls)
        m._set(field, tuple(tuple(r) for r in rows), ncols)
        return m

    @classmethod
    def zeros(cls, field: FieldSpec, nrows: int, ncols: int) -> Matrix:
        z = field.zero
        return cls.raw(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> Matrix:
        z, o = field.zero, field.one
        return cls.raw(field, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def diag(cls, field: FieldSpec, values: Sequence) -> Matrix:
        n = len(values)
        z = field.zero
        return cls.raw(
            field, [[field(values[i]) if i == j else z for j in range(n)] for i in range(n)], n
        )

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence], nrows: int) -> Matrix:
        cols = [tuple(c) for c in columns]
        return cls.raw(field, [[c[i] for c in cols] for i in range(nrows)], len(cols))

    @classmethod
    def vstack(cls, field: FieldSpec, mats: Sequence[Matrix], ncols: int) -> Matrix:
        rows = []
        for m in mats:
            if m.ncols != ncols:
                raise ShapeError("vstack column mismatch")
            rows.extend(m.rows)
        return cls.raw(field, rows, ncols)

    # -- basic protocol ----------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.field, self.ncols, self.rows)))
        return self._hash

    def __repr__(self):
        body = ", ".join(
            "[" + ", ".join(self.field.format(x) for x in r) + "]" for r in self.rows
        )
        return f"Matrix({self.field!r}, {self.nrows}x{self.ncols}, [{body}])"

    def to_strings(self) -> list[list[str]]:
        fmt = self.field.format
        return [[fmt(x) for x in r] for r in self.rows]

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def flatten(self) -> tuple:
        return tuple(x for r in self.rows for x in r)

    # -- arithmetic ----------------------------------------------------------

    def _check_same(self, other: Matrix):
        if self.field != other.field:
            raise ShapeError(f"field mismatch: {self.field!r} vs {other.field!r}")
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        red = self.field.reduce
        rows = [[red(a + b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        return Matrix.raw(self.field, rows, self.ncols)

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        red = self.field.reduce
        rows = [[red(a - b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        return Matrix.raw(self.field, rows, self.ncols)

    def __neg__(self) -> Matrix:
        red = self.field.reduce
        return Matrix.raw(self.field, [[red(-a) for a in r] for r in self.rows], self.ncols)

    def scale(self, c) -> Matrix:
        c = self.field(c)
        red = self.field.reduce
        return Matrix.raw(self.field, [[red(c * a) for a in r] for r in self.rows], self.ncols)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.field != other.field:
            raise ShapeError(f"field mismatch: {self.field!r} vs {other.field!r}")
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        red = self.field.reduce
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        zero = self.field.zero
        rows = [
            [red(sum((a * b for a, b in zip(r, c)), zero)) for c in cols] for r in self.rows
        ]
        return Matrix.raw(self.field, rows, other.ncols)

    def apply(self, vec: Sequence) -> tuple:
        """``m @ vec`` for a column vector given as a sequence."""
        if len(vec) != self.ncols:
            raise ShapeError("vector length mismatch")
        red = self.field.reduce
        zero = self.field.zero
        return tuple(red(sum((a * b for a, b in zip(r, vec)), zero)) for r in self.rows)

    def __pow__(self, k: int) -> Matrix:
        if not self.is_square:
            raise ShapeError("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    @property
    def T(self) -> Matrix:
        if self.nrows == 0:
            return Matrix.zeros(self.field, self.ncols, 0)
        return Matrix.raw(self.field, list(zip(*self.rows)), self.nrows)

    def commutator(self, other: Matrix) -> Matrix:
        return self @ other - other @ self

    def trace(self):
        return self.field.reduce(sum((self.rows[i][i] for i in range(self.nrows)), self.field.zero))

    def rank(self) -> int:
        return rref(self).rank

    def det(self):
        if not self.is_square:
            raise ShapeError("determinant of a non-square matrix")
        f = self.field
        rows = [list(r) for r in self.rows]
        n = self.nrows
        det = f.one
        for c in range(n):
            piv = next((i for i in range(c, n) if rows[i][c]), None)
            if piv is None:
                return f.zero
            if piv != c:
                rows[c], rows[piv] = rows[piv], rows[c]
                det = f.neg(det)
            det = f.mul(det, rows[c][c])
            inv = f.inv(rows[c][c])
            for i in range(c + 1, n):
                if rows[i][c]:
                    factor = f.mul(rows[i][c], inv)
                    rows[i] = [f.sub(a, f.mul(factor, b)) for a, b in zip(rows[i], rows[c])]
        return det

    def is_invertible(self) -> bool:
        return self.is_square and rref(self).rank == self.nrows

    def inverse(self) -> Matrix:
        if not self.is_square:
            raise ShapeError("inverse of a non-square matrix")
        n = self.nrows
        f = self.field
        if n == 0:
            return self
        aug = [list(r) + [f.one if i == j else f.zero for j in range(n)] for i, r in enumerate(self.rows)]
        red, pivots = _rref_rows(aug, 2 * n, f)
        if len(pivots) < n or pivots[n - 1] >= n:
            raise ZeroDivisionError("matrix is singular")
        return Matrix.raw(f, [r[n:] for r in red[:n]], n)

    def solve_left(self, target: Matrix) -> Matrix | None:
        """Return X with ``X @ self == target`` (rows of target expressed in
        the row space of self), or None when no solution exists."""
        if self.ncols != target.ncols:
            raise ShapeError("solve_left column mismatch")
        f = self.field
        # Solve self.T @ X.T = target.T  column by column via one reduction.
        a = self.T
        k = target.nrows
        aug = [list(a.rows[i]) + [target.rows[j][i] for j in range(k)] for i in range(a.nrows)]
        red, pivots = _rref_rows(aug, a.ncols + k, f)
        if any(p >= a.ncols for p in pivots):
            return None
        sol = [[f.zero] * a.ncols for _ in range(k)]
        for r, pc in enumerate(pivots):
            for j in range(k):
                sol[j][pc] = red[r][a.ncols + j]
        return Matrix.raw(f, sol, a.ncols)


class RREF(NamedTuple):
    reduced: Matrix
    pivots: tuple[int, ...]
    rank: int


def _rref_rows_numpy(rows, ncols: int, p: int):
    a = np.array(rows, dtype=np.int64).reshape(len(rows), ncols) % p
    nrows = a.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            a[mask] = (a[mask] - np.outer(col[mask], a[r])) % p
        pivots.append(c)
        r += 1
    return [[int(x) for x in row] for row in a.tolist()], pivots


def _rref_rows(rows, ncols: int, field: FieldSpec):
    """Gauss-Jordan on a list of row lists; returns (rows, pivot columns)."""
    p = field.p
    nrows = len(rows)
    if p and nrows * ncols > _NUMPY_THRESHOLD:
        return _rref_rows_numpy(rows, ncols, p)
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][c]
        if p:
            if lead != 1:
                inv = pow(lead, -1, p)
                rows[r] = [(x * inv) % p for x in rows[r]]
            prow = rows[r]
            for i in range(nrows):
                if i != r:
                    fct = rows[i][c]
                    if fct:
                        rows[i] = [(a - fct * b) % p for a, b in zip(rows[i], prow)]
        else:
            if lead != 1:
                rows[r] = [x / lead for x in rows[r]]
            prow = rows[r]
            for i in range(nrows):
                if i != r:
                    fct = rows[i][c]
                    if fct:
                        rows[i] = [a - fct * b for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: Matrix) -> RREF:
    """Reduced row echelon form, pivot columns and rank of ``m``."""
    red, pivots = _rref_rows(m.rows, m.ncols, m.field)
    return RREF(Matrix.raw(m.field, red, m.ncols), tuple(pivots), len(pivots))


def rref_basis(field: FieldSpec, rows, ncols: int) -> tuple[tuple, tuple[int, ...]]:
    """Nonzero RREF rows of the span of ``rows`` plus their pivots."""
    if not rows:
        return (), ()
    red, pivots = _rref_rows(rows, ncols, field)
    return tuple(tuple(r) for r in red[: len(pivots)]), tuple(pivots)


def _kernel_rows(field: FieldSpec, red_rows, pivots, ncols: int):
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    out = []
    zero, one = field.zero, field.one
    neg = field.neg
    for fcol in free:
        v = [zero] * ncols
        v[fcol] = one
        for r, pc in enumerate(pivots):
            if red_rows[r][fcol]:
                v[pc] = neg(red_rows[r][fcol])
        out.append(v)
    return out


def kernel(m: Matrix) -> Matrix:
    """Basis (rows, in RREF) of ``{x : m @ x = 0}``."""
    field = m.field
    if m.nrows == 0:
        return Matrix.identity(field, m.ncols)
    red, pivots = _rref_rows(m.rows, m.ncols, field)
    vecs = _kernel_rows(field, red, pivots, m.ncols)
    if not vecs:
        return Matrix.zeros(field, 0, m.ncols)
    # Kernel vectors are already independent; canonicalise to RREF.
    basis, _ = rref_basis(field, vecs, m.ncols)
    return Matrix.raw(field, basis, m.ncols)


def image(m: Matrix) -> Matrix:
    """Basis (rows, in RREF) of the column space ``{m @ x}``."""
    if m.ncols == 0:
        return Matrix.zeros(m.field, 0, m.nrows)
    basis, _ = rref_basis(m.field, m.T.rows, m.nrows)
    return Matrix.raw(m.field, basis, m.nrows)


def matpow_kernel(m: Matrix, k: int) -> Matrix:
    """Basis of ``ker(m**k)``; ``k == 0`` gives the empty basis."""
    if not m.is_square:
        raise ShapeError("matpow_kernel needs a square matrix")
    if k < 0:
        raise ValueError("negative power")
    return kernel(m ** k)


def matrix(field: FieldSpec, rows, ncols: int | None = None) -> Matrix:
    return Matrix(field, rows, ncols)
