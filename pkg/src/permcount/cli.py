"""Command-line front end.

Output is line-oriented ``key=value`` text (or one JSON object per record with
``--format json``).  Exit codes: 0 success, 1 fixture/verification mismatch,
2 non-planar double cover, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import gadgets as gd
from .errors import DeciderFailure, NonPlanarBDC, PermcountError
from .formulas import count_sat_brute, parse_dimacs
from .pipeline import (
    BuildReport,
    algorithm_b,
    build_forest_graph,
    build_pn_planar_graph,
    build_valiant_graph,
    extract_solution,
    make_decider,
    report,
)
from .planarity import BdcClass
from .search import SearchConfig, conjecture_survey, search_gadgets

EXIT_OK, EXIT_MISMATCH, EXIT_NONPLANAR, EXIT_INPUT = 0, 1, 2, 3
BRUTE_LIMIT = 20


class InputError(Exception):
    pass


class _Out:
    """Collects records and prints them as key=value lines or JSON."""

    def __init__(self, fmt: str, stream):
        self.fmt = fmt
        self.stream = stream

    def record(self, **fields) -> None:
        if self.fmt == "json":
            self.stream.write(json.dumps(fields) + "\n")
        else:
            self.stream.write(" ".join(f"{k}={_fmt(v)}" for k, v in fields.items()) + "\n")

    def line(self, text: str) -> None:
        if self.fmt == "json":
            self.stream.write(json.dumps({"line": text}) + "\n")
        else:
            self.stream.write(text + "\n")


def _fmt(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("PERMCOUNT_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise InputError(f"PERMCOUNT_SEED must be an integer, got {env!r}") from None


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _load_formula(path: str):
    return parse_dimacs(_read(path))


def _parse_faces(text: str) -> dict[int, int]:
    """One face (1 or 2) per clause, in clause order; '#' starts a comment."""
    vals = []
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0]
        vals += ln.split()
    try:
        return {j: int(v) for j, v in enumerate(vals)}
    except ValueError:
        raise InputError("faces file must contain integers 1 or 2") from None


def _parse_var_order(s: Optional[str], n: int) -> list[int]:
    if s is None:
        return list(range(1, n + 1))
    try:
        return [int(x) for x in s.replace(",", " ").split()]
    except ValueError:
        raise InputError(f"bad --var-order {s!r}") from None


def _builder_kw(args, f) -> dict:
    if args.builder != "pn":
        return {}
    if not args.faces:
        raise InputError("--builder pn needs --faces")
    return {"var_order": _parse_var_order(args.var_order, f.var_count), "face_of_clause": _parse_faces(_read(args.faces))}


def _report_fields(rep: BuildReport) -> dict:
    return dict(
        builder=rep.builder,
        nodes=rep.nodes,
        edges=rep.edges,
        bdc_nodes=rep.bdc_nodes,
        graph_planar=rep.graph_planar,
        bdc_planar=rep.bdc_planar,
        residue=rep.residue,
    )


# --------------------------------------------------------------------------
# subcommands


def _fixtures(args) -> dict[str, tuple[int, ...]]:
    if not args.fixtures:
        return dict(gd.PAPER_SIGNATURES)
    out = {}
    for ln in _read(args.fixtures).splitlines():
        ln = ln.split("#", 1)[0].strip()
        if not ln:
            continue
        name, _, tup = ln.partition("=")
        try:
            vals = tuple(int(x) for x in tup.strip().strip("()").split(","))
        except ValueError:
            raise InputError(f"bad fixture line {ln!r}") from None
        if len(vals) != 6:
            raise InputError(f"fixture {name.strip()} needs six values")
        out[name.strip()] = vals
    return out


def cmd_verify_gadgets(args, out: _Out) -> int:
    p = args.modulus
    ok = True
    for name, expected in _fixtures(args).items():
        try:
            g = gd.builtin_gadget(name)
        except PermcountError as exc:
            raise InputError(str(exc)) from exc
        got = gd.signature(g, p)
        want = gd.Signature(expected, p)
        match = got.values == want.values
        ok &= match
        shown = "(" + ",".join(map(str, got.values)) + ")"
        out.record(gadget=name, signature=shown, modulus=p, expected="(" + ",".join(map(str, want.values)) + ")",
                   status="ok" if match else "MISMATCH")
    if not args.fixtures:
        xor_ok = gd.verify_pattern(gd.builtin_gadget("valiant_xor"), gd.VALIANT_XOR_PATTERN)
        bd = gd.builtin_gadget("bendor_clause")
        bd_ok = gd.verify_clause_rules(bd)
        c = gd.clause_rule_values(bd)["M"]
        out.record(gadget="valiant_xor", rules="A-F", c=4, status="ok" if xor_ok else "MISMATCH")
        out.record(gadget="bendor_clause", rules=len(gd.CLAUSE_RULES), c=c, status="ok" if bd_ok else "MISMATCH")
        ok &= xor_ok and bd_ok
    return EXIT_OK if ok else EXIT_MISMATCH


def _build(f, args):
    kw = _builder_kw(args, f)
    if args.builder == "forest":
        vg = build_forest_graph(f)
        return vg, report(vg)
    if args.builder == "g3":
        vg = build_valiant_graph(f, "g3_xor")
        return vg, report(vg)
    return build_pn_planar_graph(f, kw["var_order"], kw["face_of_clause"])


def cmd_count(args, out: _Out) -> int:
    f = _load_formula(args.input)
    _, rep = _build(f, args)
    fields = _report_fields(rep)
    if len(f.free_vars()) <= BRUTE_LIMIT:
        exact = count_sat_brute(f)
        fields.update(exact_count=exact, exact_mod3=exact % 3)
    out.record(**fields)
    return EXIT_OK if rep.bdc_planar else EXIT_NONPLANAR


def cmd_decide(args, out: _Out) -> int:
    f = _load_formula(args.input)
    kw = _builder_kw(args, f)
    v = algorithm_b(f, args.trials, _seed(args), args.builder, **kw)
    out.line("SATISFIABLE" if v.satisfiable else "UNSATISFIABLE")
    out.record(trials_used=v.trials_used, trials=args.trials, seed=_seed(args))
    for r, (values, s) in enumerate(v.residue_trace):
        fixed = ",".join(f"{k}:{int(b)}" for k, b in sorted(values.items())) or "-"
        out.record(trial=r, fixed=fixed, nonzero=bool(s))
    return EXIT_OK


def cmd_solve(args, out: _Out) -> int:
    f = _load_formula(args.input)
    kw = _builder_kw(args, f)
    base = f if args.builder == "pn" else None
    decider = make_decider(args.decider, args.builder, args.trials, _seed(args), base=base, **kw)
    a, calls = extract_solution(f, decider)
    if a is None:
        out.line("s UNSATISFIABLE")
    else:
        out.line("s SATISFIABLE")
        out.line(a.v_line())
    out.record(calls=calls)
    return EXIT_OK


def cmd_search(args, out: _Out) -> int:
    try:
        pattern = gd.NAMED_PATTERNS[args.pattern]
    except KeyError:
        raise InputError(f"unknown pattern {args.pattern!r}") from None
    req = BdcClass(args.require.capitalize()) if args.require else None
    cfg = SearchConfig(
        dim=args.dim, p=args.p, pattern=pattern, budget=args.budget, seed=_seed(args),
        require_classification=req, max_results=args.max_results,
    )
    certs = search_gadgets(cfg, shards=args.shards, workers=args.workers)
    text = "".join(c.to_text() for c in certs)
    if args.out:
        Path(args.out).write_text(text)
    out.record(dim=cfg.dim, p=cfg.p, pattern=args.pattern, budget=cfg.budget, seed=cfg.seed, found=len(certs))
    for k, c in enumerate(certs):
        out.record(index=k, signature=str(c.signature), signature_mod=str(c.signature_mod),
                   classification=c.bdc_classification.value, mu="holds" if c.mu_result else "fails")
    if not args.out and args.format == "text":
        out.stream.write(text)
    return EXIT_OK


def cmd_survey(args, out: _Out) -> int:
    rep = conjecture_survey(args.dim, args.p, args.budget, _seed(args))
    if args.format == "json":
        out.record(
            dim=rep.dim, p=rep.p, sampled=rep.sampled,
            table={f"{'holds' if m else 'fails'}/{c.value}": n for (m, c), n in sorted(rep.table.items())},
            counterexamples=len(rep.counterexamples),
            exception_hits=len(rep.exception_hits),
        )
    else:
        out.stream.write(rep.format())
    for c in rep.counterexamples:
        out.line(c.to_text().rstrip())
    for c in rep.exception_hits:
        out.line("# escalated: all residues nonzero, extendable BDC")
        out.line(c.to_text().rstrip())
    return EXIT_OK


# --------------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="RNG seed (fallback: $PERMCOUNT_SEED, then 0)")
    common.add_argument("--format", choices=("text", "json"), default="text")

    build = argparse.ArgumentParser(add_help=False)
    build.add_argument("input", help="DIMACS CNF file")
    build.add_argument("--builder", choices=("g3", "pn", "forest"), default="forest")
    build.add_argument("--faces", help="pn builder: one face (1|2) per clause")
    build.add_argument("--var-order", help="pn builder: variable cycle, e.g. 1,3,2")
    build.add_argument("--trials", type=int, default=20, help="algorithm B rounds k")

    p = argparse.ArgumentParser(prog="permcount", description="Permanent-based #SAT mod 3 toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify-gadgets", parents=[common], help="recompute builtin signatures vs fixtures")
    v.add_argument("--modulus", type=int, default=None)
    v.add_argument("--fixtures", help="file of name=(r1,...,r6) lines")
    v.set_defaults(func=cmd_verify_gadgets)

    c = sub.add_parser("count", parents=[common, build], help="#models mod 3 via FKT")
    c.set_defaults(func=cmd_count)
    d = sub.add_parser("decide", parents=[common, build], help="randomised satisfiability (algorithm B)")
    d.set_defaults(func=cmd_decide)
    s = sub.add_parser("solve", parents=[common, build], help="extract a satisfying assignment")
    s.add_argument("--decider", choices=("a", "b"), default="b")
    s.set_defaults(func=cmd_solve)

    se = sub.add_parser("search", parents=[common], help="random gadget search")
    se.add_argument("--dim", type=int, default=6)
    se.add_argument("--p", "--modulus", dest="p", type=int, default=3)
    se.add_argument("--pattern", default="xor", help="xor | equality | planarity")
    se.add_argument("--budget", type=int, default=100_000)
    se.add_argument("--max-results", type=int, default=10)
    se.add_argument("--require", choices=("connectable", "extendable"))
    se.add_argument("--shards", type=int, default=1)
    se.add_argument("--workers", type=int, default=1)
    se.add_argument("--out", help="write certificates here")
    se.set_defaults(func=cmd_search)

    su = sub.add_parser("survey", parents=[common], help="mu congruence vs BDC classification table")
    su.add_argument("--dim", type=int, default=6)
    su.add_argument("--p", "--modulus", dest="p", type=int, default=3)
    su.add_argument("--budget", type=int, default=2000)
    su.set_defaults(func=cmd_survey)
    return p


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:  # argparse usage errors are input errors
        return EXIT_INPUT if exc.code else EXIT_OK
    if getattr(args, "trials", 1) < 1:
        stderr.write("error: --trials must be >= 1\n")
        return EXIT_INPUT
    out = _Out(args.format, stdout)
    try:
        return args.func(args, out)
    except NonPlanarBDC as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_NONPLANAR
    except DeciderFailure as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_NONPLANAR if isinstance(exc.__cause__, NonPlanarBDC) else EXIT_INPUT
    except (InputError, PermcountError, ValueError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
