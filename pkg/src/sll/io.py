"""Instance files: a JSON document with exact-string scalars.

::

    {
      "field": "gf:3",
      "dim": 2,
      "subspaces": {"V1": [["1", "0"]], "V2": [["0", "1"]], ...},
      "form": {"kind": "symmetric", "gram": [["0", "1"], ["1", "0"]]},
      "algebra": [[["1", "0"], ["0", "-1"]]],
      "curvature": [<n×n×n×n array>]
    }

``form``, ``algebra`` and ``curvature`` are optional.  With a form, W1 and
W2 may be omitted and default to V1⊥ and V2⊥.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field as dc_field
from typing import Any

from .curvature import CurvatureTensor
from .field import FieldError, FieldSpec
from .matrix import Matrix
from .reflexive import BilinearForm, FormError, FormKind, perp
from .report import PreconditionError
from .subspace import Subspace
from .twosum import TwoSumDecomposition, make

SUBSPACE_NAMES = ("V1", "V2", "W1", "W2")


class InstanceParseError(ValueError):
    """Malformed instance file; ``where`` is "line L, column C" or a JSON path."""

    def __init__(self, message: str, where: str = ""):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


@dataclass(frozen=True, eq=False)
class InstanceFile:
    field: FieldSpec
    dim: int
    subspaces: dict[str, Subspace]
    form: BilinearForm | None = None
    algebra: tuple[Matrix, ...] = ()
    curvature: tuple[CurvatureTensor, ...] = ()
    extra: dict[str, Any] = dc_field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, InstanceFile):
            return NotImplemented
        return emit(self) == emit(other)

    def decomposition(self) -> TwoSumDecomposition:
        """The quintuple, with W_j = V_j⊥ filled in from the form when absent.

        Raises NotComplementary (a PreconditionError) when a pair fails.
        """
        s = self.subspaces
        for name in ("V1", "V2"):
            if name not in s:
                raise PreconditionError(f"instance does not declare {name}")
        w1, w2 = s.get("W1"), s.get("W2")
        if w1 is None or w2 is None:
            if self.form is None:
                raise PreconditionError("W1/W2 missing and no form to derive them from")
            w1 = w1 if w1 is not None else perp(self.form, s["V1"])
            w2 = w2 if w2 is not None else perp(self.form, s["V2"])
        return make(s["V1"], s["V2"], w1, w2)


# -- scalars ---------------------------------------------------------------------------


def _scalar(field: FieldSpec, x, path: str):
    if isinstance(x, bool) or isinstance(x, float):
        raise InstanceParseError(f"expected an integer or 'a/b' string, got {x!r}", path)
    if isinstance(x, (int, str)):
        try:
            return field(x)
        except (FieldError, ValueError, ZeroDivisionError) as e:
            raise InstanceParseError(str(e), path) from None
    raise InstanceParseError(f"expected a scalar, got {type(x).__name__}", path)


def _vector(field, dim, v, path):
    if not isinstance(v, list) or len(v) != dim:
        raise InstanceParseError(f"expected a list of {dim} scalars", path)
    return [_scalar(field, x, f"{path}[{i}]") for i, x in enumerate(v)]


def _matrix(field, dim, m, path) -> Matrix:
    if not isinstance(m, list) or len(m) != dim:
        raise InstanceParseError(f"expected a {dim}×{dim} matrix", path)
    return Matrix.raw(field, [tuple(_vector(field, dim, r, f"{path}[{i}]")) for i, r in enumerate(m)], dim)


# -- parsing ---------------------------------------------------------------------------


def parse(text: str) -> InstanceFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceParseError(e.msg, f"line {e.lineno}, column {e.colno}") from None
    return from_json(doc)


def from_json(doc) -> InstanceFile:
    if not isinstance(doc, dict):
        raise InstanceParseError("top level must be an object", "$")
    try:
        field = FieldSpec.parse(doc.get("field", ""))
    except (FieldError, AttributeError, TypeError) as e:
        raise InstanceParseError(str(e), "$.field") from None
    dim = doc.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 0:
        raise InstanceParseError("dim must be a non-negative integer", "$.dim")
    subs_doc = doc.get("subspaces")
    if not isinstance(subs_doc, dict):
        raise InstanceParseError("subspaces must be an object", "$.subspaces")
    subspaces = {}
    for name, basis in subs_doc.items():
        path = f"$.subspaces.{name}"
        if not isinstance(basis, list):
            raise InstanceParseError("expected a list of basis vectors", path)
        vecs = [_vector(field, dim, v, f"{path}[{i}]") for i, v in enumerate(basis)]
        subspaces[name] = Subspace(field, dim, vecs)
    form = None
    if doc.get("form") is not None:
        fd = doc["form"]
        if not isinstance(fd, dict):
            raise InstanceParseError("form must be an object", "$.form")
        try:
            kind = FormKind(fd.get("kind", "symmetric"))
        except ValueError:
            raise InstanceParseError("kind must be 'symmetric' or 'antisymmetric'", "$.form.kind") from None
        gram = _matrix(field, dim, fd.get("gram"), "$.form.gram")
        try:
            form = BilinearForm(gram, kind)
        except FormError as e:
            raise PreconditionError(f"$.form: {e}") from None
    algebra = []
    for i, m in enumerate(doc.get("algebra") or []):
        algebra.append(_matrix(field, dim, m, f"$.algebra[{i}]"))
    tensors = []
    for t, arr in enumerate(doc.get("curvature") or []):
        path = f"$.curvature[{t}]"
        try:
            ok = (isinstance(arr, list) and len(arr) == dim
                  and all(isinstance(a, list) and len(a) == dim for a in arr)
                  and all(isinstance(b, list) and len(b) == dim for a in arr for b in a))
        except TypeError:
            ok = False
        if not ok:
            raise InstanceParseError(f"expected a {dim}×{dim}×{dim}×{dim} array", path)
        vals = [[[_vector(field, dim, arr[i][j][k], f"{path}[{i}][{j}][{k}]") for k in range(dim)]
                 for j in range(dim)] for i in range(dim)]
        r = CurvatureTensor.from_array(field, vals)
        tensors.append(r)
    known = {"field", "dim", "subspaces", "form", "algebra", "curvature"}
    extra = {k: v for k, v in doc.items() if k not in known}
    return InstanceFile(field, dim, subspaces, form, tuple(algebra), tuple(tensors), extra)


def load(path: str) -> InstanceFile:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


# -- emission --------------------------------------------------------------------------


def _strs(field: FieldSpec, row) -> list[str]:
    return [field.format(x) for x in row]


def to_json(inst: InstanceFile) -> dict:
    f = inst.field
    doc: dict[str, Any] = {"field": f.name, "dim": inst.dim}
    order = [n for n in SUBSPACE_NAMES if n in inst.subspaces]
    order += sorted(n for n in inst.subspaces if n not in SUBSPACE_NAMES)
    doc["subspaces"] = {n: [_strs(f, r) for r in inst.subspaces[n].rows] for n in order}
    if inst.form is not None:
        doc["form"] = {"kind": inst.form.kind.value, "gram": inst.form.gram.to_strings()}
    if inst.algebra:
        doc["algebra"] = [m.to_strings() for m in inst.algebra]
    if inst.curvature:
        doc["curvature"] = [t.to_strings() for t in inst.curvature]
    for k in sorted(inst.extra):
        doc[k] = inst.extra[k]
    return doc


def dumps(obj, indent: int = 2) -> str:
    """JSON with innermost scalar lists kept on one line."""

    def render(x, level):
        pad = " " * (indent * level)
        inner = " " * (indent * (level + 1))
        if isinstance(x, dict):
            if not x:
                return "{}"
            items = [f"{inner}{json.dumps(k, ensure_ascii=False)}: {render(v, level + 1)}" for k, v in x.items()]
            return "{\n" + ",\n".join(items) + "\n" + pad + "}"
        if isinstance(x, list):
            if all(not isinstance(y, (list, dict)) for y in x):
                return json.dumps(x, ensure_ascii=False)
            return "[\n" + ",\n".join(inner + render(y, level + 1) for y in x) + "\n" + pad + "]"
        return json.dumps(x, ensure_ascii=False)

    return render(obj, 0) + "\n"


def emit(inst: InstanceFile) -> str:
    return dumps(to_json(inst))


def write_atomic(path: str, text: str):
    """Write via a temporary file in the same directory and rename."""
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- constructors ------------------------------------------------------------------------


def from_decomposition(dec: TwoSumDecomposition, form: BilinearForm | None = None,
                       tensors=(), algebra=()) -> InstanceFile:
    subs = {"V1": dec.v1, "V2": dec.v2, "W1": dec.w1, "W2": dec.w2}
    return InstanceFile(dec.field, dec.ambient_dim, subs, form, tuple(algebra), tuple(tensors))


def from_reflexive(form: BilinearForm, v1: Subspace, v2: Subspace, tensors=(), algebra=()) -> InstanceFile:
    return InstanceFile(form.field, form.dim, {"V1": v1, "V2": v2}, form, tuple(algebra), tuple(tensors))


# -- reports -----------------------------------------------------------------------------


@dataclass
class ReportDocument:
    command: str
    instance: dict
    reports: list[dict] = dc_field(default_factory=list)
    data: dict = dc_field(default_factory=dict)
    timing: dict = dc_field(default_factory=dict)
    notices: list[str] = dc_field(default_factory=list)

    def to_json(self) -> dict:
        out = {"command": self.command, "instance": self.instance}
        if self.data:
            out["data"] = self.data
        if self.reports:
            out["reports"] = self.reports
        if self.notices:
            out["notices"] = self.notices
        out["timing"] = self.timing
        return out

    def dumps(self) -> str:
        return dumps(self.to_json())


def instance_summary(inst: InstanceFile, path: str | None = None) -> dict:
    out = {"field": inst.field.name, "dim": inst.dim,
           "subspaces": {n: s.dim for n, s in inst.subspaces.items()}}
    if path:
        out["path"] = path
    if inst.form is not None:
        out["form"] = inst.form.kind.value
    if inst.algebra:
        out["algebra_generators"] = len(inst.algebra)
    if inst.curvature:
        out["curvature_tensors"] = len(inst.curvature)
    return out


__all__ = [
    "InstanceFile", "InstanceParseError", "ReportDocument", "parse", "from_json", "load", "emit",
    "to_json", "dumps", "write_atomic", "from_decomposition", "from_reflexive", "instance_summary",
]
