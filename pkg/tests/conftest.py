"""Shared strategies and the acceptance summary hook."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from sll.field import GF, QQ
from sll.matrix import Matrix
from sll.subspace import Subspace

settings.register_profile("sll", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("sll")

FIELDS = [QQ, GF(3), GF(5), GF(7)]

ACCEPTANCE_LINES: list[str] = []


def scalars(field):
    if field.p:
        return st.integers(0, field.p - 1)
    return st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))


@st.composite
def matrices(draw, field=None, nrows=None, ncols=None, max_dim=4):
    field = field or draw(st.sampled_from(FIELDS))
    r = nrows if nrows is not None else draw(st.integers(0, max_dim))
    c = ncols if ncols is not None else draw(st.integers(1, max_dim))
    rows = [[draw(scalars(field)) for _ in range(c)] for _ in range(r)]
    return Matrix(field, rows, c)


@st.composite
def subspaces(draw, field, n):
    k = draw(st.integers(0, n))
    vecs = [[draw(scalars(field)) for _ in range(n)] for _ in range(k)]
    return Subspace(field, n, vecs)


@st.composite
def subspace_tuples(draw, count, max_n=5):
    field = draw(st.sampled_from(FIELDS))
    n = draw(st.integers(1, max_n))
    return field, n, [draw(subspaces(field, n)) for _ in range(count)]


@pytest.fixture
def record_criterion():
    """Record an acceptance verdict line; printed in the terminal summary."""

    def rec(number: int, title: str, ok: bool, detail: str = ""):
        ACCEPTANCE_LINES.append(f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}"
                                + (f"  [{detail}]" if detail else ""))
        return ok

    return rec


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
