"""Command-line interface: ``sll decompose | lattice | verify | random``.

Exit codes: 0 ok, 2 parse or parameter error, 3 precondition failure,
4 truncated lattice, 5 a theorem clause failed.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
import time

from . import instances, io, lattice
from .curvature import (AntisymmetryViolated, verify_block_vanishing, verify_exterior_product,
                        verify_metric_theorem, verify_pair_symmetry, verify_theta2_corollary)
from .field import FieldError, FieldSpec
from .reflexive import is_reflexive_type, verify_ffforth
from .report import PreconditionError, TheoremReport, describe
from .representation import (decomposition_algebra, lie_closure, verify_deux_isotropes, verify_olbrich,
                             verify_ts)
from .subspace import SubspaceError
from .twosum import nilpotency_index, verify_section2

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_TRUNCATED, EXIT_CLAUSE = 0, 2, 3, 4, 5
SUITES = ("section2", "reflexive", "representation", "curvature", "all")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def _load(path: str) -> io.InstanceFile:
    try:
        return io.load(path)
    except io.InstanceParseError as e:
        raise CliError(EXIT_PARSE, f"{path}: {e}") from None
    except OSError as e:
        raise CliError(EXIT_PARSE, f"{path}: {e.strerror}") from None


def _output(doc_text: str, out: str | None):
    if out:
        io.write_atomic(out, doc_text)
    else:
        sys.stdout.write(doc_text)


# -- decompose ---------------------------------------------------------------------------


def cmd_decompose(args) -> int:
    t0 = time.perf_counter()
    inst = _load(args.path)
    dec = inst.decomposition()
    ch, sp = dec.chains, dec.split
    doc = io.ReportDocument("decompose", io.instance_summary(inst, args.path))
    doc.data = {
        "f_e": describe(sp.f_e),
        "f_tau": describe(sp.f_tau),
        "ftilde": describe(sp.ftilde),
        "theta": dec.theta.to_strings(),
        "nilpotency_index": nilpotency_index(dec),
        "chains": {name: [describe(s) for s in getattr(ch, name)]
                   for name in ("f", "ftilde", "f_e", "f_tau", "ftilde_e", "ftilde_tau")},
        "stabilization": ch.stabilization,
    }
    doc.timing = {"seconds": round(time.perf_counter() - t0, 6)}
    _output(doc.dumps(), args.out)
    return EXIT_OK


# -- lattice -----------------------------------------------------------------------------


def cmd_lattice(args) -> int:
    t0 = time.perf_counter()
    inst = _load(args.path)
    dec = inst.decomposition()
    cap = args.max if args.max is not None else lattice.default_max_elements()
    if cap < 1:
        raise CliError(EXIT_PARSE, "--max must be positive")
    seeds = [dec.v1, dec.v2, dec.w1, dec.w2]
    n_seeds = len(set(seeds))
    if cap < n_seeds:
        # a cap below the seed count truncates before any closure step
        lat = dataclasses.replace(lattice.closure(seeds, n_seeds), truncated=True)
    else:
        lat = lattice.closure(seeds, cap)
    doc = io.ReportDocument("lattice", io.instance_summary(inst, args.path))
    doc.data = {"elements": len(lat), "cover_edges": len(lat.cover_edges), "truncated": lat.truncated,
                "generators": [f"n{i}" for i in lat.generators]}
    if lat.truncated:
        doc.notices.append(f"closure truncated at {cap} elements")
    else:
        doc.reports.append(lattice.verify_treillis_homogene(lat, dec.split).to_json())
    if args.dot:
        io.write_atomic(args.dot, lattice.to_dot(lat, args.labels))
        legend = args.legend or args.dot + ".legend.json"
        io.write_atomic(legend, io.dumps(lattice.legend(lat)))
        doc.data["dot"] = args.dot
        doc.data["legend"] = legend
    doc.timing = {"seconds": round(time.perf_counter() - t0, 6)}
    _output(doc.dumps(), args.out)
    if lat.truncated and not args.allow_truncated:
        return EXIT_TRUNCATED
    return EXIT_OK if all(r["passed"] for r in doc.reports) else EXIT_CLAUSE


# -- verify ------------------------------------------------------------------------------


def _guarded(title: str, fn) -> TheoremReport:
    """Run a verifier; a failed hypothesis of that theorem becomes an inapplicable clause."""
    try:
        return fn()
    except PreconditionError as e:
        rep = TheoremReport(title)
        rep.inapplicable("precondition", title, str(e))
        return rep


def _section2_reports(inst, dec, cap) -> list[TheoremReport]:
    out = [verify_section2(dec)]
    lat = lattice.closure([dec.v1, dec.v2, dec.w1, dec.w2], cap)
    if lat.truncated:
        rep = TheoremReport("lattice homogeneity")
        rep.inapplicable("element_homogeneous", "V = (V∩F_e) ⊕ (V∩F_τ) ⊕ (V∩F̃)", "closure truncated")
        out.append(rep)
    else:
        out.append(lattice.verify_treillis_homogene(lat, dec.split))

    def five():
        inv = lattice.five_sum_invariant(dec)
        rep = TheoremReport("five direct sums")
        top = inv.quotient.dim
        rep.truth("i_invertible", "i : V1' → W1' invertible",
                  inv.i_matrix.is_square and inv.i_matrix.is_invertible(), "")
        rep.truth("j_invertible", "j : V1' → W1' invertible",
                  inv.j_matrix.is_square and inv.j_matrix.is_invertible(), "")
        rep.truth("m3_t", "{0, E', V1', W1', T1'} is M3", lattice.m3_relations([inv.v1q, inv.w1q, inv.t1q]), "")
        rep.truth("m3_u", "{0, E', V1', W1', U1'} is M3", lattice.m3_relations([inv.v1q, inv.w1q, inv.u1q]), "")
        rep.notes.append("invariant factors of j⁻¹∘i: " + ", ".join(inv.factor_strings()))
        rep.notes.append(f"dim (V1+W1)/(V1∩W1) = {top}; dim T1'∩U1' = {inv.t_meet_u.dim}")
        return rep

    out.append(_guarded("five direct sums", five))
    out.append(_guarded("θ² = 0 lattice catalog", lambda: lattice.verify_theta2_lattice(dec, cap)))
    return out


def _algebra(inst, dec):
    if inst.algebra:
        return lie_closure(inst.algebra, inst.field, inst.dim)
    return decomposition_algebra(dec, inst.form if inst.form is not None and is_reflexive_type(inst.form, dec)
                                 else None)


def _reflexive_reports(inst, dec) -> list[TheoremReport]:
    if inst.form is None or not is_reflexive_type(inst.form, dec):
        rep = TheoremReport("orthogonal canonical split")
        rep.inapplicable("reflexive", "W_j = V_j⊥", "no form, or W_j ≠ V_j⊥")
        return [rep]
    return [verify_ffforth(inst.form, dec)]


def _representation_reports(inst, dec) -> list[TheoremReport]:
    reflexive = inst.form is not None and is_reflexive_type(inst.form, dec)
    out = [verify_deux_isotropes(dec, inst.form if reflexive else None)]
    if not reflexive:
        for title in ("isotropic splitting by p − p*", "structure of a reflexive representation"):
            rep = TheoremReport(title)
            rep.inapplicable("reflexive", "W_j = V_j⊥", "no form, or W_j ≠ V_j⊥")
            out.append(rep)
        return out
    alg = _algebra(inst, dec)
    out.append(_guarded("isotropic splitting by p − p*", lambda: verify_olbrich(inst.form, dec.v1, dec.v2, alg)))
    out.append(_guarded("structure of a reflexive representation", lambda: verify_ts(inst.form, dec, alg)))
    return out


def _curvature_reports(inst, dec, oracle_bound) -> list[TheoremReport]:
    tensors = list(inst.curvature)
    if not tensors or inst.form is None or not is_reflexive_type(inst.form, dec):
        rep = TheoremReport("curvature")
        rep.inapplicable("curvature", "formal curvature tensors", "no tensors, no form, or W_j ≠ V_j⊥")
        return [rep]
    form = inst.form
    out = []
    sym = TheoremReport("pair symmetry")
    for k, r in enumerate(tensors):
        try:
            ok = verify_pair_symmetry(form, r)
        except PreconditionError as e:
            sym.inapplicable(f"tensor_{k}", "⟨R(x,y)z,t⟩ = ⟨R(z,t)x,y⟩", str(e))
        else:
            sym.truth(f"tensor_{k}", "⟨R(x,y)z,t⟩ = ⟨R(z,t)x,y⟩", ok, "")
    out.append(sym)
    parts = [p for p in dec.split.parts if not p.is_zero()]
    for k, r in enumerate(tensors):
        rep = _guarded("block vanishing", lambda r=r: verify_block_vanishing(r, parts))
        rep.title = f"block vanishing (tensor {k})"
        out.append(rep)
    out.append(_guarded("exterior product decomposition", lambda: verify_exterior_product(dec, tensors, form)))
    out.append(_guarded("metric Berger algebra and θ", lambda: verify_metric_theorem(form, dec, tensors)))
    out.append(_guarded("θ² = 0 for indecomposable metric representations",
                        lambda: verify_theta2_corollary(form, dec, tensors, oracle_bound)))
    return out


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    inst = _load(args.path)
    dec = inst.decomposition()
    cap = lattice.default_max_elements()
    suites = SUITES[:-1] if args.suite == "all" else (args.suite,)
    doc = io.ReportDocument("verify", io.instance_summary(inst, args.path))
    reports: list[TheoremReport] = []
    for s in suites:
        if s == "section2":
            reports += _section2_reports(inst, dec, cap)
        elif s == "reflexive":
            reports += _reflexive_reports(inst, dec)
        elif s == "representation":
            reports += _representation_reports(inst, dec)
        elif s == "curvature":
            reports += _curvature_reports(inst, dec, (args.oracle_max_dim, args.oracle_max_p))
    for r in reports:
        if r.clauses and all(c.status == "inapplicable" for c in r.clauses):
            doc.notices.append(f"{r.title}: inapplicable")
    doc.reports = [r.to_json() for r in reports]
    failed = [r.title for r in reports if not r.passed]
    doc.data = {"suites": list(suites), "passed": not failed, "failed_reports": failed}
    doc.timing = {"seconds": round(time.perf_counter() - t0, 6)}
    _output(doc.dumps(), args.out)
    return EXIT_CLAUSE if failed else EXIT_OK


# -- random ------------------------------------------------------------------------------


def make_random_instance(field: FieldSpec, dim: int, seed: int, kind: str) -> io.InstanceFile:
    rng = instances.rng_for(f"{field.name}/{dim}/{seed}/{kind}")
    if kind == "twosum":
        dec, _ = instances.random_block_twosum(field, dim, rng)
        return io.from_decomposition(dec)
    if kind == "reflexive":
        inst, _ = instances.random_block_reflexive(field, dim, rng)
        return io.from_reflexive(inst.form, inst.v1, inst.v2)
    if kind == "curvature":
        ci = instances.random_curvature_instance(field, dim, rng)
        r = ci.reflexive
        return io.from_reflexive(r.form, r.v1, r.v2, tensors=ci.tensors)
    raise CliError(EXIT_PARSE, f"unknown kind {kind!r}")


def cmd_random(args) -> int:
    try:
        field = FieldSpec.parse(args.field)
    except FieldError as e:
        raise CliError(EXIT_PARSE, str(e)) from None
    if args.dim < 1:
        raise CliError(EXIT_PARSE, "--dim must be at least 1")
    inst = make_random_instance(field, args.dim, args.seed, args.kind)
    _output(io.emit(inst), args.out)
    return EXIT_OK


# -- entry point ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(EXIT_PARSE, message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sll", description="Subspace lattices of two direct-sum decompositions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("decompose", help="canonical split, chains and θ of an instance")
    d.add_argument("path")
    d.add_argument("--out")
    d.set_defaults(func=cmd_decompose)

    lt = sub.add_parser("lattice", help="lattice generated by V1, V2, W1, W2")
    lt.add_argument("path")
    lt.add_argument("--dot", help="write the Hasse diagram as DOT")
    lt.add_argument("--legend", help="legend file (default: <dot>.legend.json)")
    lt.add_argument("--labels", choices=("dims", "bases"), default="dims")
    lt.add_argument("--max", type=int, help="closure cap (default 10000 or $SLL_MAX_ELEMENTS)")
    lt.add_argument("--allow-truncated", action="store_true")
    lt.add_argument("--out")
    lt.set_defaults(func=cmd_lattice)

    v = sub.add_parser("verify", help="run the theorem checks applicable to an instance")
    v.add_argument("path")
    v.add_argument("--suite", choices=SUITES, default="all")
    v.add_argument("--oracle-max-dim", type=int, default=4)
    v.add_argument("--oracle-max-p", type=int, default=5)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("random", help="seeded random instance")
    r.add_argument("--field", default="gf:3")
    r.add_argument("--dim", type=int, default=4)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--kind", choices=("twosum", "reflexive", "curvature"), default="twosum")
    r.add_argument("--out")
    r.set_defaults(func=cmd_random)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except CliError as e:
        print(f"sll: error: {e}", file=sys.stderr)
        return e.code
    except (PreconditionError, SubspaceError, AntisymmetryViolated) as e:
        print(f"sll: precondition failed: {e}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
