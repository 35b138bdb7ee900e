"""Command-line entry point.

Exit codes: 0 success, 1 verification mismatch, 2 input/parse error, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .derived import (
    CatalogObject,
    Decomposition,
    TensorGrid,
    catalog_complex,
    decompose,
    predict_tensor,
    verify_tensor_theorem,
)
from .gentle import NotGentleError, QuiverParseError, hopf_admissible, is_gentle, parse_quiver
from .homalg import BoundedComplex, ComplexError, cohomology, direct_sum, total_tensor
from .hopf_core import (
    InvalidDatumError,
    MalformedGroupError,
    build_group_datum_algebra,
    check_hopf_axioms,
    cyclic_datum,
    datum_from_json,
    dualize,
    validate_group_datum,
    verify_dual_presentation,
)
from .nakayama import build_H

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3

GRIDS = {
    "default": dict(k_values=(0, 1, 2, 3, 4), t_values=(0, 1, 2, 3, 4), p_values=(-1, 0, 1), q_values=(-1, 0, 1)),
    "small": dict(k_values=(0, 1, 2), t_values=(0, 1, 2), p_values=(0,), q_values=(0,)),
}


class InputError(ValueError):
    pass


def _dump(doc, fmt: str, table) -> str:
    if fmt == "json":
        return json.dumps(doc, separators=(",", ":"), ensure_ascii=True)
    return table(doc)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_json(path: str):
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _check_n(n: int) -> int:
    if n < 2 or n % 2:
        raise InputError(f"--n must be an even integer >= 2 (got {n})")
    return n


def _objects(specs, n: int) -> list[CatalogObject]:
    out = []
    for s in specs:
        try:
            out.append(CatalogObject.parse(s, n))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    return out


def _complex_from_args(args) -> BoundedComplex:
    n = args.n
    if args.file:
        try:
            X = BoundedComplex.from_json(_load_json(args.file), n)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"{args.file}: {exc}") from None
        if X.n != n:
            raise InputError(f"{args.file}: complex lives over n={X.n}, not {n}")
        return X
    objs = _objects(args.objects, n)
    if not objs:
        raise InputError("give --file or at least one catalog object")
    return direct_sum(*[catalog_complex(o) for o in objs])


def _decomp_table(doc) -> str:
    rows = doc["summands"]
    if not rows:
        return "0"
    out = []
    for r in rows:
        lab = f"M({r['i']},{r['j']})[{r['shift']}]" if r["kind"] == "M" else f"N({r['i']})[{r['shift']}]"
        out.append(f"{r['mult']} x {lab}")
    return "\n".join(out)


# ---------------------------------------------------------------------------
# subcommands


def cmd_tensor(args) -> int:
    n = _check_n(args.n)
    a, b = _objects([args.a, args.b], n)
    pred = predict_tensor(a, b)
    if not args.check:
        print(_dump(pred.to_json(), args.format, _decomp_table))
        return EXIT_OK
    H = build_H(n, args.mu)
    got = decompose(total_tensor(catalog_complex(a), catalog_complex(b), H), depth=args.depth)
    verdict = "MATCH" if got == pred else "MISMATCH"
    doc = {"predicted": pred.to_json(), "computed": got.to_json(), "verdict": verdict}

    def table(d):
        return "\n".join([
            "predicted:", _decomp_table(d["predicted"]),
            "computed:", _decomp_table(d["computed"]),
            d["verdict"],
        ])

    print(_dump(doc, args.format, table))
    return EXIT_OK if verdict == "MATCH" else EXIT_MISMATCH


def cmd_decompose(args) -> int:
    _check_n(args.n)
    X = _complex_from_args(args)
    d = decompose(X, depth=args.depth)
    print(_dump(d.to_json(), args.format, _decomp_table))
    return EXIT_OK


def cmd_cohomology(args) -> int:
    _check_n(args.n)
    X = _complex_from_args(args)
    doc = {"cohomology": cohomology(X).to_json()}

    def table(d):
        if not d["cohomology"]:
            return "0"
        lines = []
        for m, entry in d["cohomology"].items():
            parts = [f"{s['mult']}x{s['kind']}{s['i']}" for s in entry["summands"]]
            lines.append(f"H^{m}: dims {entry['dims']}  {' + '.join(parts)}")
        return "\n".join(lines)

    print(_dump(doc, args.format, table))
    return EXIT_OK


def _datum(args):
    if args.datum:
        try:
            alpha = datum_from_json(_load_json(args.datum))
        except (MalformedGroupError, TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"{args.datum}: {exc}") from None
        return alpha
    if args.n is None:
        raise InputError("give --datum FILE or --n N")
    return cyclic_datum(args.n, (1, 2), args.mu)


def cmd_dual(args) -> int:
    alpha = _datum(args)
    rep = validate_group_datum(alpha)
    if not rep.valid:
        raise InputError("invalid group datum: " + "; ".join(rep.violations))
    A = build_group_datum_algebra(alpha)
    D = dualize(A)
    axioms = check_hopf_axioms(D)
    pres = verify_dual_presentation(alpha)
    doc = {
        "datum": rep.to_dict(),
        "dual": D.to_json(),
        "axioms": axioms.to_dict(),
        "presentation": pres.to_dict(),
    }

    def table(d):
        lines = [f"datum: d={d['datum']['d']} o(g)={d['datum']['order_g']} type={d['datum']['type']}"]
        lines.append(f"dual dimension: {len(d['dual']['basis'])}")
        lines.append("axioms: " + ", ".join(f"{k}={'ok' if v == 'pass' else 'FAIL'}" for k, v in d["axioms"].items()))
        for k, v in d["presentation"]["relations"].items():
            lines.append(f"relation {k}: {'holds' if v else 'FAILS'}")
        dx = d["presentation"]["delta_xi"]
        lines.append(f"Delta(xi) closed form {dx['closed_form']}: {'matches' if dx['closed_form_matches'] else 'differs'}")
        lines.append(f"Delta(xi) variant {dx['variant_form']}: {'matches' if dx['variant_matches'] else 'differs'}")
        for conv, r in d["presentation"]["delta_p"]["conventions"].items():
            lines.append(f"Delta(p_h) [{conv}]: matches={r['matches']} with -mu: {r['matches_with_mu_negated']}")
        return "\n".join(lines)

    print(_dump(doc, args.format, table))
    return EXIT_OK if axioms.ok else EXIT_INTERNAL


def cmd_verify(args) -> int:
    if args.n is not None:
        ns = [_check_n(args.n)]
    else:
        ns = [2, 4, 6] + ([8] if args.extended else [])
    mus = [args.mu] if args.mu is not None else ([0, 1] if args.extended else [0])
    grid = TensorGrid(**GRIDS[args.grid], check_tables=not args.no_tables)
    reports, bad = [], 0
    for n in ns:
        for mu in mus:
            if mu == 1 and n < 4:
                continue
            t0 = time.perf_counter()
            rep = verify_tensor_theorem(n, mu, grid, workers=args.workers)
            elapsed = time.perf_counter() - t0
            if args.timing:
                print(f"n={n} mu={mu}: {rep.checked} tuples in {elapsed:.1f}s", file=sys.stderr)
            reports.append(rep.to_json())
            bad += len(rep.mismatches) + len(rep.table_mismatches)
    doc = {"grid": args.grid, "reports": reports, "total_mismatches": bad}

    def table(d):
        lines = []
        for r in d["reports"]:
            lines.append(
                f"n={r['n']} mu={r['mu']}: {r['checked']} tuples, {r['mismatch_count']} decomposition mismatches, "
                f"{r['table_mismatch_count']} cohomology-table mismatches"
            )
            for m in r["mismatches"][:10]:
                lines.append(f"  MISMATCH {m['a']} (x) {m['b']}")
        lines.append("OK" if d["total_mismatches"] == 0 else f"FAILED ({d['total_mismatches']} mismatches)")
        return "\n".join(lines)

    print(_dump(doc, args.format, table))
    return EXIT_OK if bad == 0 else EXIT_MISMATCH


def cmd_gentle(args) -> int:
    if args.file:
        text = _read(args.file)
    elif args.text:
        text = args.text
    else:
        raise InputError("give --file FILE or --text QUIVER")
    q = parse_quiver(text)
    g = is_gentle(q)
    doc = {"gentle": g.gentle, "violations": g.to_dict()["violations"]}
    if g.gentle:
        ok, reason = hopf_admissible(q)
        doc["admissible"] = ok
        doc["reason"] = reason
    else:
        doc["admissible"] = None
        doc["reason"] = "not gentle"

    def table(d):
        lines = [f"gentle: {str(d['gentle']).lower()}"]
        for v in d["violations"]:
            lines.append(f"  ({v['condition']}) {v['witness']}")
        adm = "n/a" if d["admissible"] is None else str(d["admissible"]).lower()
        lines.append(f"admissible: {adm}")
        lines.append(f"reason: {d['reason']}")
        return "\n".join(lines)

    print(_dump(doc, args.format, table))
    return EXIT_OK


def cmd_classify(args) -> int:
    alpha = _datum(args)
    rep = validate_group_datum(alpha)
    if not rep.valid:
        raise InputError("invalid group datum: " + "; ".join(rep.violations))
    discrete = rep.d == 2
    doc = {
        "order_g": rep.order_g,
        "d": rep.d,
        "type": rep.to_dict()["type"],
        "derived_discrete": discrete,
        "reason": f"o(chi(g)) = {rep.d}" + (" = 2" if discrete else " != 2"),
    }

    def table(d):
        return "\n".join([f"o(g) = {d['order_g']}", f"o(chi(g)) = {d['d']}", f"type: {d['type']}",
                          f"derived discrete: {str(d['derived_discrete']).lower()}"])

    print(_dump(doc, args.format, table))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dhopf", description="Exact computations in D^b(kZ_n/J^2) with its Hopf structure.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--depth", type=int, default=None, help="truncation depth for projective replacements")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tensor", parents=[common], help="tensor two catalog objects")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--mu", type=int, choices=(0, 1), default=0)
    t.add_argument("a", help="M:i,j,p or N:i,p")
    t.add_argument("b", help="M:i,j,p or N:i,p")
    t.add_argument("--check", action="store_true", help="also decompose the tensor complex and compare")
    t.set_defaults(func=cmd_tensor)

    for name, func, hlp in (("decompose", cmd_decompose, "decompose a complex into catalog objects"),
                            ("cohomology", cmd_cohomology, "cohomology of a complex")):
        d = sub.add_parser(name, parents=[common], help=hlp)
        d.add_argument("--n", type=int, required=True)
        d.add_argument("--file", help="complex as JSON {lo, hi, terms, diffs}")
        d.add_argument("objects", nargs="*", help="catalog objects to sum instead of --file")
        d.set_defaults(func=func)

    for name, func, hlp in (("dual", cmd_dual, "dual presentation and axiom report for a group datum"),
                            ("classify", cmd_classify, "derived-discreteness verdict for a group datum")):
        d = sub.add_parser(name, parents=[common], help=hlp)
        d.add_argument("--datum", help="group datum JSON")
        d.add_argument("--n", type=int, help="use the cyclic datum A(n,2,mu,-1) instead of --datum")
        d.add_argument("--mu", type=int, choices=(0, 1), default=0)
        d.set_defaults(func=func)

    v = sub.add_parser("verify", parents=[common], help="check the tensor formulas on a parameter grid")
    v.add_argument("--n", type=int, default=None, help="single n (default: 2, 4, 6)")
    v.add_argument("--mu", type=int, choices=(0, 1), default=None)
    v.add_argument("--grid", choices=sorted(GRIDS), default="default")
    v.add_argument("--extended", action="store_true", help="add n=8 and mu=1")
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--no-tables", action="store_true", help="skip the cohomology case tables")
    v.add_argument("--timing", action="store_true", help="print timings to stderr")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gentle", parents=[common], help="gentleness and Hopf admissibility of a quiver")
    g.add_argument("--file")
    g.add_argument("--text")
    g.set_defaults(func=cmd_gentle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "depth", None) is not None and args.depth < 0:
        parser.error("--depth must be nonnegative")
    try:
        return args.func(args)
    except (InputError, QuiverParseError, InvalidDatumError, MalformedGroupError, ComplexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotGentleError as exc:  # pragma: no cover - guarded in cmd_gentle
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (AssertionError, ArithmeticError, RuntimeError) as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
