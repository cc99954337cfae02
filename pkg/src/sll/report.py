"""Structured pass/fail reports for identity checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from .subspace import Subspace

PASS = "pass"
FAIL = "fail"
INAPPLICABLE = "inapplicable"


class PreconditionError(ValueError):
    """Raised when an operation's input does not satisfy its stated hypotheses."""


@dataclass
class Clause:
    name: str
    tag: str
    status: str
    n_range: tuple[int, int] | None = None
    n: int | None = None
    detail: str = ""
    witness: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        out: dict[str, Any] = {"name": self.name, "tag": self.tag, "status": self.status}
        if self.n_range is not None:
            out["n_range"] = list(self.n_range)
        if self.n is not None:
            out["n"] = self.n
        if self.detail:
            out["detail"] = self.detail
        if self.witness:
            out["witness"] = self.witness
        return out


def describe(x) -> Any:
    """JSON-friendly rendering of subspaces, matrices and scalars."""
    if isinstance(x, Subspace):
        return {"dim": x.dim, "basis": x.to_strings()}
    if hasattr(x, "to_strings"):
        return x.to_strings()
    if isinstance(x, (list, tuple)):
        return [describe(y) for y in x]
    return x


@dataclass
class TheoremReport:
    title: str
    clauses: list[Clause] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """True iff every applicable clause passes."""
        return all(c.status != FAIL for c in self.clauses)

    @property
    def failures(self) -> list[Clause]:
        return [c for c in self.clauses if c.status == FAIL]

    def __getitem__(self, name: str) -> Clause:
        for c in self.clauses:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self) -> list[str]:
        return [c.name for c in self.clauses]

    def add(self, clause: Clause) -> Clause:
        self.clauses.append(clause)
        return clause

    def extend(self, other: TheoremReport, prefix: str = ""):
        for c in other.clauses:
            c.name = prefix + c.name
            self.clauses.append(c)
        self.notes.extend(other.notes)

    def inapplicable(self, name: str, tag: str, why: str, **witness) -> Clause:
        return self.add(Clause(name, tag, INAPPLICABLE, detail=why,
                               witness={k: describe(v) for k, v in witness.items()}))

    def vacuous(self, name: str, tag: str, why: str) -> Clause:
        """A clause that holds trivially (e.g. the subspace involved is {0})."""
        return self.add(Clause(name, tag, PASS, detail=f"vacuous: {why}"))

    def truth(self, name: str, tag: str, ok: bool, detail: str = "", n=None, **witness) -> Clause:
        status = PASS if ok else FAIL
        return self.add(Clause(name, tag, status, n=n, detail="" if ok else detail,
                               witness={} if ok else {k: describe(v) for k, v in witness.items()}))

    def equal(self, name: str, tag: str, lhs, rhs, n=None) -> Clause:
        ok = lhs == rhs
        return self.truth(name, tag, ok, "sides differ", n=n, lhs=lhs, rhs=rhs)

    def over_range(self, name: str, tag: str, ns: Iterable[int],
                   check: Callable[[int], tuple[bool, dict] | bool]) -> Clause:
        """Evaluate ``check(n)`` for each n; record the first failing n.

        ``check`` returns a bool, or ``(ok, witness)`` where the witness is
        a dict of the offending objects.
        """
        ns = list(ns)
        rng = (ns[0], ns[-1]) if ns else None
        for n in ns:
            res = check(n)
            ok, wit = (res, {}) if isinstance(res, bool) else res
            if not ok:
                return self.add(Clause(name, tag, FAIL, n_range=rng, n=n, detail=f"fails at n={n}",
                                       witness={k: describe(v) for k, v in wit.items()}))
        return self.add(Clause(name, tag, PASS, n_range=rng))

    def to_json(self) -> dict:
        out = {
            "title": self.title,
            "passed": self.passed,
            "clauses": [c.to_json() for c in self.clauses],
        }
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def summary(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.clauses:
            rng = f" n={c.n_range[0]}..{c.n_range[1]}" if c.n_range else ""
            lines.append(f"  [{c.status:>12}] {c.name}{rng}  {c.tag}" + (f"  ({c.detail})" if c.detail else ""))
        return "\n".join(lines)


def eq_witness(lhs: Subspace, rhs: Subspace) -> tuple[bool, dict]:
    return (lhs == rhs, {"lhs": lhs, "rhs": rhs})
