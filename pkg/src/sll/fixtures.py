"""Small hand-checkable instances used by the tests and the CLI."""

from __future__ import annotations

from .field import QQ, FieldSpec
from .matrix import Matrix
from .reflexive import BilinearForm, hyperbolic
from .subspace import span
from .twosum import TwoSumDecomposition, make


def g2(field: FieldSpec = QQ) -> TwoSumDecomposition:
    """Four pairwise independent lines ⟨e1⟩, ⟨e2⟩, ⟨e1+e2⟩, ⟨e1−e2⟩."""
    return make(span(field, 2, [1, 0]), span(field, 2, [0, 1]),
                span(field, 2, [1, 1]), span(field, 2, [1, -1]))


def aligned(field: FieldSpec = QQ) -> TwoSumDecomposition:
    e1, e2 = span(field, 2, [1, 0]), span(field, 2, [0, 1])
    return make(e1, e2, e1, e2)


def swapped(field: FieldSpec = QQ) -> TwoSumDecomposition:
    e1, e2 = span(field, 2, [1, 0]), span(field, 2, [0, 1])
    return make(e1, e2, e2, e1)


def aligned_hyperbolic(field: FieldSpec = QQ) -> tuple[BilinearForm, TwoSumDecomposition]:
    """Hyperbolic plane with V1 = ⟨e1⟩, V2 = ⟨e2⟩; both lines are isotropic."""
    return hyperbolic(field, 1), aligned(field)


def swapped_identity(field: FieldSpec = QQ) -> tuple[BilinearForm, TwoSumDecomposition]:
    """Identity form with V1 = ⟨e1⟩, V2 = ⟨e2⟩, so W1 = ⟨e2⟩ and W2 = ⟨e1⟩."""
    return BilinearForm(Matrix.identity(field, 2)), swapped(field)
