"""Exact scalar fields: the rationals and prime fields GF(p), p odd."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

Scalar = Union[Fraction, int]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


class FieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def parse_rational(text: str) -> Fraction:
    """Parse ``"a"`` or ``"a/b"`` (integers only, no decimals)."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise FieldError(f"not an exact rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise FieldError(f"zero denominator in {text!r}")
    return Fraction(num, den)


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``p is None``) or GF(p) for an odd prime p.

    Elements are plain Python values: :class:`fractions.Fraction` for the
    rationals, ``int`` residues in ``[0, p)`` for prime fields.
    """

    p: int | None = None

    def __post_init__(self):
        if self.p is None:
            return
        if not isinstance(self.p, int) or not _is_prime(self.p):
            raise FieldError(f"{self.p!r} is not prime")
        if self.p == 2:
            raise FieldError("characteristic 2 is not supported")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        text = text.strip().lower()
        if text in ("q", "qq", "rationals"):
            return cls(None)
        if text.startswith("gf:"):
            try:
                p = int(text[3:])
            except ValueError:
                raise FieldError(f"bad field spec {text!r}") from None
            return cls(p)
        raise FieldError(f"bad field spec {text!r}; expected 'q' or 'gf:p'")

    @property
    def name(self) -> str:
        return "q" if self.p is None else f"gf:{self.p}"

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    # -- elements --------------------------------------------------------

    @property
    def zero(self) -> Scalar:
        return 0 if self.p else Fraction(0)

    @property
    def one(self) -> Scalar:
        return 1 if self.p else Fraction(1)

    def __call__(self, value) -> Scalar:
        """Coerce an int, Fraction or literal string into this field."""
        if isinstance(value, str):
            value = parse_rational(value)
        if self.p is None:
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
            raise FieldError(f"cannot coerce {value!r} into QQ")
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise FieldError(f"{value} has no image in GF({self.p})")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        if isinstance(value, int):
            return value % self.p
        raise FieldError(f"cannot coerce {value!r} into GF({self.p})")

    def reduce(self, x):
        return x % self.p if self.p else x

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return (a + b) % self.p if self.p else a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return (a - b) % self.p if self.p else a - b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return (a * b) % self.p if self.p else a * b

    def neg(self, a: Scalar) -> Scalar:
        return (-a) % self.p if self.p else -a

    def inv(self, a: Scalar) -> Scalar:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p) if self.p else 1 / a

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def format(self, x: Scalar) -> str:
        if self.p:
            return str(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def elements(self) -> Iterator[Scalar]:
        if not self.p:
            raise FieldError("QQ is infinite")
        return iter(range(self.p))

    def random(self, rng, lo: int = -3, hi: int = 3) -> Scalar:
        """Uniform over GF(p); a small integer in ``[lo, hi]`` over QQ."""
        if self.p:
            return rng.randrange(self.p)
        return Fraction(rng.randint(lo, hi))


QQ = FieldSpec(None)


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)
