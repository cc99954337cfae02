"""Univariate polynomials over a FieldSpec and invariant factors of a matrix."""

from __future__ import annotations

from .field import FieldSpec
from .matrix import Matrix


class Poly:
    """Immutable polynomial; ``coeffs[k]`` is the coefficient of x**k."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs):
        c = [field(x) if not isinstance(x, int) or field.p is None else x % field.p for x in coeffs]
        while c and not c[-1]:
            c.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def x(cls, field):
        return cls(field, [0, 1])

    @classmethod
    def const(cls, field, c):
        return cls(field, [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # zero polynomial has degree -1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self):
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, Poly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __add__(self, other: Poly) -> Poly:
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (f.zero,) * (n - len(self.coeffs))
        b = other.coeffs + (f.zero,) * (n - len(other.coeffs))
        return Poly(f, [f.add(x, y) for x, y in zip(a, b)])

    def __neg__(self) -> Poly:
        return Poly(self.field, [self.field.neg(x) for x in self.coeffs])

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        f = self.field
        if self.is_zero() or other.is_zero():
            return Poly(f, [])
        out = [f.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = f.add(out[i + j], f.mul(a, b))
        return Poly(f, out)

    def scale(self, c) -> Poly:
        return Poly(self.field, [self.field.mul(c, x) for x in self.coeffs])

    def divmod(self, d: Poly) -> tuple[Poly, Poly]:
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        r = list(self.coeffs)
        q = [f.zero] * max(len(r) - len(d.coeffs) + 1, 0)
        inv = f.inv(d.lead)
        dd = d.degree
        while len(r) - 1 >= dd and r:
            c = f.mul(r[-1], inv)
            k = len(r) - 1 - dd
            q[k] = c
            for i, b in enumerate(d.coeffs):
                r[k + i] = f.sub(r[k + i], f.mul(c, b))
            while r and not r[-1]:
                r.pop()
        return Poly(f, q), Poly(f, r)

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lead))

    def __call__(self, m: Matrix) -> Matrix:
        """Evaluate at a square matrix (Horner)."""
        out = Matrix.zeros(m.field, m.nrows, m.ncols)
        ident = Matrix.identity(m.field, m.nrows)
        for c in reversed(self.coeffs):
            out = out @ m + ident.scale(c)
        return out

    def __str__(self):
        f = self.field
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            neg = f.p is None and c < 0
            mag = -c if neg else c
            if k == 0:
                body = f.format(mag)
            else:
                xs = "x" if k == 1 else f"x^{k}"
                body = xs if mag == 1 else f"{f.format(mag)}*{xs}"
            if not terms:
                terms.append(("-" if neg else "") + body)
            else:
                terms.append((" - " if neg else " + ") + body)
        return "".join(terms)

    __repr__ = __str__


def _smith_diagonal(mat: list[list[Poly]]) -> list[Poly]:
    """Diagonal of the Smith normal form over K[x] (monic, dividing chain)."""
    n = len(mat)
    m = [row[:] for row in mat]
    f = m[0][0].field if n else None
    diag = []
    for t in range(n):
        while True:
            # pivot: nonzero entry of least degree in the trailing block
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    if not m[i][j].is_zero() and (best is None or m[i][j].degree < m[best[0]][best[1]].degree):
                        best = (i, j)
            if best is None:
                diag.extend([Poly(f, [])] * (n - t))
                return diag
            i, j = best
            m[t], m[i] = m[i], m[t]
            for row in m:
                row[t], row[j] = row[j], row[t]
            piv = m[t][t]
            dirty = False
            for i in range(t + 1, n):
                if not m[i][t].is_zero():
                    q, r = m[i][t].divmod(piv)
                    m[i] = [a - q * b for a, b in zip(m[i], m[t])]
                    dirty |= not r.is_zero()
            for j in range(t + 1, n):
                if not m[t][j].is_zero():
                    q, r = m[t][j].divmod(piv)
                    for row in m:
                        row[j] = row[j] - q * row[t]
                    dirty |= not r.is_zero()
            if dirty:
                continue
            # pivot must divide every remaining entry
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, n)
                        if not m[i][j].divmod(piv)[1].is_zero()), None)
            if bad is None:
                break
            m[t] = [a + b for a, b in zip(m[t], m[bad[0]])]
        diag.append(m[t][t].monic())
    return diag


def invariant_factors(a: Matrix) -> list[Poly]:
    """Non-unit invariant factors of ``a`` (Smith form of xI − A), divisibility order."""
    if not a.is_square:
        raise ValueError("invariant factors need a square matrix")
    f = a.field
    n = a.nrows
    if n == 0:
        return []
    mat = [[Poly(f, [f.neg(a.rows[i][j])] + ([f.one] if i == j else [])) for j in range(n)] for i in range(n)]
    return [d for d in _smith_diagonal(mat) if d.degree >= 1]


def characteristic_polynomial(a: Matrix) -> Poly:
    out = Poly.const(a.field, 1)
    for d in invariant_factors(a):
        out = out * d
    return out
