"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource cap hit.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import cayley, repcheck
from .apolar import PolyKind, shafiei_generators, verify_annihilation
from .config import FORMATS, RunConfig
from .syzygy import (
    IncompleteTableError,
    betti_closed_forms,
    betti_koszul,
    canonical_relations,
    generation_check,
    hilbert_identity_check,
    multigraded_betti,
    parse_multidegree,
    parse_relation,
    relation_dims,
    relations_multidegree,
)
from .syzygy.formulas import linear_relations_polynomial
from .syzygy.render import render_dots_and_boxes

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class CapExceeded(RuntimeError):
    pass


def _verdict(ok: bool, what: str, report: dict) -> tuple[int, str]:
    line = f"{'PASS' if ok else 'FAIL'}: {what}"
    return (EXIT_OK if ok else EXIT_FAIL), line + "\n" + json.dumps(report, sort_keys=True) + "\n"


def _config(args) -> RunConfig:
    return RunConfig(
        kind=getattr(args, "kind", "det"), n=getattr(args, "n", 2), field=getattr(args, "field", "gf:32003"),
        max_step=getattr(args, "max_step", None), max_degree=getattr(args, "max_degree", None),
        memory_budget=getattr(args, "memory_budget", 400_000), width=getattr(args, "width", 1),
        format=getattr(args, "format", "table"), seed=getattr(args, "seed", 0),
    ).validate()


# ---------------------------------------------------------------------------
# commands


def cmd_betti(args, cfg: RunConfig):
    t = betti_koszul(cfg.poly_kind, cfg.n, cfg.field_obj(), config=cfg.koszul_config())
    code = EXIT_CAP if t.overflow else EXIT_OK
    return code, t.serialize(cfg.format)


def cmd_formulas(args, cfg: RunConfig):
    d = betti_closed_forms(cfg.n).to_dict()
    d["linear_relations"] = linear_relations_polynomial(cfg.n)
    return EXIT_OK, json.dumps(d, sort_keys=True) + "\n"


def cmd_relations(args, cfg: RunConfig):
    mu = parse_multidegree(args.multidegree)
    if mu.n != cfg.n:
        raise ValueError(f"multidegree has length {mu.n}, expected {cfg.n}")
    basis = relations_multidegree(cfg.poly_kind, cfg.n, mu, cfg.field_obj())
    if cfg.format == "json":
        return EXIT_OK, json.dumps({"multidegree": [list(mu.rows), list(mu.cols)], "dimension": len(basis),
                                    "basis": [r.render() for r in basis]}, sort_keys=True) + "\n"
    lines = [f"dimension {len(basis)}"] + [r.render() for r in basis]
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_verify(args, cfg: RunConfig):
    kind, n, fld = cfg.poly_kind, cfg.n, cfg.field_obj()
    if args.what == "annihilation":
        rep = verify_annihilation(kind, n, field=fld)
        report = {"kind": str(kind), "n": n, "generators": len(shafiei_generators(kind, n)),
                  "annihilates": rep.annihilates, "span_dimension": rep.span_dimension,
                  "expected_dimension": rep.expected_dimension}
        return _verdict(rep.ok, f"generators of {kind} n={n} span the degree-2 apolar space", report)
    if args.what == "hilbert":
        t = betti_koszul(kind, n, fld, config=cfg.koszul_config())
        if t.overflow:
            raise CapExceeded("Betti table hit the block budget")
        try:
            res = {d: hilbert_identity_check(kind, n, d, t) for d in range(n * n + n + 1)}
        except IncompleteTableError as exc:
            raise CapExceeded(str(exc)) from exc
        report = {"kind": str(kind), "n": n, "residuals": {str(d): r for d, r in res.items()}}
        return _verdict(all(r == 0 for r in res.values()), f"Hilbert identity for {kind} n={n}", report)
    # generation
    if args.max_degree is None:
        raise ValueError("verify generation needs --max-degree")
    quad = None if args.quadratic == "auto" else args.quadratic == "yes"
    rep = generation_check(kind, n, args.max_degree, fld, include_quadratic=quad)
    if not rep.complete:
        raise CapExceeded("some multidegree exceeded the term budget")
    expected = args.expect_deficiency
    ok = rep.total_deficiency == expected
    report = rep.to_dict()
    report["total_deficiency"] = rep.total_deficiency
    report["expected_deficiency"] = expected
    return _verdict(ok, f"generation of {kind} n={n} relations up to degree {args.max_degree}: "
                        f"deficiency {rep.total_deficiency} (expected {expected})", report)


def cmd_cayley(args, cfg: RunConfig):
    m = args.m
    if args.action == "dot":
        return EXIT_OK, cayley.build_graph(m).to_dot()
    if args.action == "basis":
        g = cayley.build_graph(m)
        cycles = cayley.fundamental_cycles(g)
        rank = cayley.labelings_rank([cayley.cycle_labeling(c, g) for c in cycles])
        circuit = g.num_edges - g.num_vertices + 1
        lines = [f"{c.start.one_line()} ; {cayley.format_word(c.word)}" for c in cycles]
        report = {"m": m, "vertices": g.num_vertices, "edges": g.num_edges, "circuit_rank": circuit,
                  "basis_size": len(cycles), "rank": rank}
        code, text = _verdict(len(cycles) == rank == circuit, f"zero-magic basis of size {len(cycles)} for m={m}",
                              report)
        return code, text + "\n".join(lines) + ("\n" if lines else "")
    if args.word is None:
        raise ValueError("cayley reduce needs --word")
    start = cayley.Permutation(tuple(int(x) for x in args.start.split())) if args.start else None
    w = cayley.CycleWord.parse(args.word, m, start)
    try:
        terms = cayley.commutator_reduce(w, max_steps=args.max_steps)
    except cayley.StepBudgetExceeded as exc:
        raise CapExceeded(str(exc)) from exc
    text = "\n".join(cayley.certificate_lines(terms)) + ("\n" if terms else "")
    return (EXIT_OK if cayley.check_certificate(w, terms) else EXIT_FAIL), text


def cmd_repcheck(args, cfg: RunConfig):
    n, fld = cfg.n, cfg.field_obj()
    if args.component == "generators":
        computed = multigraded_betti(PolyKind.DET, n, 1, 2, fld, cfg.koszul_config())
    elif args.component == "relations":
        computed = relation_dims(PolyKind.DET, n, 3, fld)
    else:
        computed = multigraded_betti(PolyKind.DET, n, 3, 4, fld, cfg.koszul_config())
    rep = repcheck.weight_refined_check(args.component, n, computed)
    if rep.partial:
        raise CapExceeded("some multidegrees were not computed")
    return _verdict(rep.ok, f"{args.component} n={n} weight multiplicities; {repcheck.CHARACTER_NOTE}",
                    rep.to_dict())


def cmd_render(args, cfg: RunConfig):
    kind, fld = cfg.poly_kind, cfg.field_obj()
    if args.relation:
        rel = parse_relation(args.relation, kind, cfg.n, fld)
    else:
        names = {t.name: t for t in canonical_relations(kind)}
        if args.template not in names:
            raise ValueError(f"unknown template {args.template!r}; choose from {sorted(names)}")
        t = names[args.template]
        rel = t.instantiate(max(cfg.n, t.footprint), fld)
    status = "is a relation" if rel.is_relation() else "NOT a relation"
    out = f"{rel.render()}\n{status}\n{render_dots_and_boxes(rel)}"
    return (EXIT_OK if rel.is_relation() else EXIT_FAIL), out


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="apolar-syzygy", description="Betti numbers of apolar ideals of det and perm.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, kind=True, n=True):
        if kind:
            sp.add_argument("--kind", choices=["det", "perm"], default="det")
        if n:
            sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--field", default="gf:32003", help="qq or gf:<prime>")
        sp.add_argument("--out", help="write output to FILE")
        sp.add_argument("--seed", type=int, default=0)

    def caps(sp):
        sp.add_argument("--max-step", type=int)
        sp.add_argument("--max-degree", type=int)
        sp.add_argument("--memory-budget", type=int, default=400_000, help="basis elements per block")
        sp.add_argument("--width", type=int, default=1, help="worker processes")

    sp = sub.add_parser("betti", help="graded Betti table by Koszul homology")
    common(sp)
    caps(sp)
    sp.add_argument("--format", choices=FORMATS, default="table")
    sp.set_defaults(func=cmd_betti)

    sp = sub.add_parser("formulas", help="closed-form Betti numbers as JSON")
    common(sp, kind=False)
    sp.set_defaults(func=cmd_formulas)

    sp = sub.add_parser("relations", help="basis of relations in one multidegree")
    common(sp)
    sp.add_argument("--multidegree", required=True, help='row and column degrees, e.g. "2,1,0;1,1,1"')
    sp.add_argument("--format", choices=["table", "json"], default="table")
    sp.set_defaults(func=cmd_relations)

    sp = sub.add_parser("verify", help="run a verification and print a verdict")
    sp.add_argument("what", choices=["generation", "annihilation", "hilbert"])
    common(sp)
    caps(sp)
    sp.add_argument("--quadratic", choices=["auto", "yes", "no"], default="auto",
                    help="include the quadratic permanent template")
    sp.add_argument("--expect-deficiency", type=int, default=0)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("cayley", help="Cayley graph of S_m and commutator certificates")
    sp.add_argument("action", choices=["basis", "reduce", "dot"])
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--word", help='closed walk, e.g. "(1 2)(3 4)(1 2)(3 4)"')
    sp.add_argument("--start", help='start vertex in one-line notation, e.g. "2 1 3"')
    sp.add_argument("--max-steps", type=int, default=100_000)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_cayley)

    sp = sub.add_parser("repcheck", help="weight-multiplicity check of the hook decompositions")
    sp.add_argument("--component", choices=sorted(repcheck.COMPONENTS), required=True)
    common(sp, kind=False)
    caps(sp)
    sp.set_defaults(func=cmd_repcheck, field="qq")

    sp = sub.add_parser("render-relation", help="dots-and-boxes picture of a relation")
    common(sp, n=False)
    sp.add_argument("--n", type=int, default=2)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--template", help="canonical template name, e.g. rho1")
    g.add_argument("--relation", help='e.g. "X[1,2]*(X[1,1]^2) - X[1,1]*(X[1,1]*X[1,2])"')
    sp.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        code, text = args.func(args, cfg)
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except MemoryError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ValueError, IndexError, KeyError) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
