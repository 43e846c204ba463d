"""Command line entry point: ``cyforge <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from .errors import DomainError
from .gw import gw_pipeline
from .io import parse_laurent, parse_vertex_matrix
from .period import Support, period_step, principal_period, support_from_polytope
from .pfops import DiffOperator, fit_details, mobius_equivalent
from .polytope import polar_dual
from .report import analyze
from .series import format_fraction

log = logging.getLogger("cyforge")


def _strip_comments(text: str) -> str:
    return "\n".join(ln for ln in text.splitlines() if not ln.lstrip().startswith("#"))


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise DomainError(f"{path}: {exc.strerror}") from None


def _looks_laurent(text: str) -> bool:
    return "t" in _strip_comments(text)


def _load_polytope(path: str, transpose: bool = False, dual: bool = False):
    text = _read(path)
    if _looks_laurent(text):
        from .polytope import LatticePolytope

        p = LatticePolytope(parse_laurent(_strip_comments(text)).monomials)
    else:
        p = parse_vertex_matrix(text, transpose=transpose)
    return polar_dual(p) if dual else p


def _load_support(args) -> Support:
    """Support from --laurent, a Laurent file, or the vertices of a polytope file."""
    if args.laurent:
        return parse_laurent(args.laurent)
    if not args.file:
        raise SystemExit("error: give FILE or --laurent")
    text = _read(args.file)
    if _looks_laurent(text):
        return parse_laurent(_strip_comments(text))
    p = parse_vertex_matrix(text, transpose=args.transpose)
    return support_from_polytope(polar_dual(p) if args.dual else p)


def _series_order(support: Support, depth: int) -> int:
    """Raw order giving ``depth`` terms in the period's natural variable."""
    probe = principal_period(support, 12)
    step = period_step(probe) or 1
    return depth * step


def _emit(obj, as_json: bool, text: str):
    if as_json:
        print(json.dumps(obj, separators=(", ", ": ")))
    else:
        print(text)


def cmd_analyze(args) -> int:
    delta = _load_polytope(args.file, args.transpose, args.dual)
    rep = analyze(delta, args.multiplicity, source=args.file)
    print(rep.to_json() if args.json else rep.to_text())
    return 0


def cmd_period(args) -> int:
    s = _load_support(args)
    ser = principal_period(s, args.order)
    coeffs = [format_fraction(c) for c in ser]
    _emit({"order": args.order, "coefficients": coeffs}, args.json, "\n".join(f"{k} {c}" for k, c in enumerate(coeffs)))
    return 0


def _fit(args):
    s = _load_support(args)
    order = _series_order(s, args.order)
    return fit_details(principal_period(s, order), args.dmax)


def cmd_pf_fit(args) -> int:
    fr = _fit(args)
    if not fr.self_dual:
        log.warning("operator does not satisfy C3 = 2 theta C4")
    obj = {
        "step": fr.step,
        "operator": fr.operator.to_json(),
        "text": fr.operator.to_text(),
        "minimal_order_confirmed": fr.minimal_order_confirmed,
        "self_dual": fr.self_dual,
    }
    _emit(obj, args.json, fr.operator.to_text())
    return 0


def cmd_gw(args) -> int:
    if args.operator:
        text = args.operator
        if Path(text).is_file():
            text = _read(text).strip()
        op = DiffOperator.from_text(text)
    else:
        op = _fit(args).operator
    _, _, k, inst = gw_pipeline(op, args.h3, args.nmax)
    obj = {
        "operator": op.to_text(),
        "yukawa": [format_fraction(c) for c in k.coefficients[: args.nmax + 1]],
        "instantons": [str(n) for n in inst],
    }
    _emit(obj, args.json, "\n".join(f"n_{d} = {n}" for d, n in enumerate(inst, 1)))
    return 0


def _operator_arg(value: str) -> DiffOperator:
    if Path(value).is_file():
        value = _read(value).strip()
    return DiffOperator.from_text(value)


def cmd_transform_check(args) -> int:
    a, b = _operator_arg(args.opa), _operator_arg(args.opb)
    c = Fraction(args.c)
    e = mobius_equivalent(a, b, c, order=args.order)
    obj = {"c": format_fraction(c), "exponent": None if e is None else format_fraction(Fraction(e))}
    _emit(obj, args.json, "no exponent found" if e is None else f"exponent {format_fraction(Fraction(e))}")
    return 0 if e is not None else 1


def _batch_one(job):
    path, multiplicity, transpose = job
    try:
        delta = _load_polytope(path, transpose)
        return analyze(delta, multiplicity, source=Path(path).name).to_dict()
    except DomainError as exc:
        return {"source": Path(path).name, "error": f"{type(exc).__name__}: {exc}"}


def cmd_batch(args) -> int:
    root = Path(args.dir)
    if not root.is_dir():
        raise DomainError(f"{root} is not a directory")
    files = sorted(str(p) for p in root.iterdir() if p.is_file())
    jobs = [(f, args.multiplicity, args.transpose) for f in files]
    n = args.jobs or int(os.environ.get("CYFORGE_JOBS", "1") or 1)
    if n > 1:
        with ProcessPoolExecutor(max_workers=n) as pool:
            results = list(pool.map(_batch_one, jobs))
    else:
        results = [_batch_one(j) for j in jobs]
    for r in results:
        if args.json:
            print(json.dumps(r, separators=(", ", ": ")))
        else:
            print(" ".join(f"{k}={v}" for k, v in r.items()))
    return 1 if any("error" in r for r in results) else 0


def _source_args(p):
    p.add_argument("file", nargs="?", help="Laurent expression file or vertex matrix")
    p.add_argument("--laurent", help="Laurent polynomial whose monomials form the support")
    p.add_argument("--dual", action="store_true", help="use the vertices of the polar dual of FILE")
    p.add_argument("--transpose", action="store_true", help="read a 4x4 block column-wise")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyforge", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="conifold, Hodge and intersection data of a Newton polytope")
    p.add_argument("file")
    p.add_argument("--multiplicity", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.add_argument("--transpose", action="store_true")
    p.add_argument("--dual", action="store_true", help="FILE holds the polar dual (period support side)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("period", help="coefficients of the principal period")
    _source_args(p)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("pf-fit", help="fit the Picard-Fuchs operator of a support")
    _source_args(p)
    p.add_argument("--order", type=int, default=25, help="series depth in the operator variable")
    p.add_argument("--dmax", type=int, default=4)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_pf_fit)

    p = sub.add_parser("gw", help="genus-0 instanton numbers")
    _source_args(p)
    p.add_argument("--operator", help="operator text (or a file holding it) instead of fitting")
    p.add_argument("--order", type=int, default=25)
    p.add_argument("--dmax", type=int, default=4)
    p.add_argument("--nmax", type=int, default=7)
    p.add_argument("--h3", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gw)

    p = sub.add_parser("transform-check", help="search z -> z/(1+cz) relating two operators")
    p.add_argument("opa")
    p.add_argument("opb")
    p.add_argument("--c", required=True)
    p.add_argument("--order", type=int, default=24)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_transform_check)

    p = sub.add_parser("batch", help="analyze every file in a directory")
    p.add_argument("dir")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--multiplicity", type=int, default=1)
    p.add_argument("--transpose", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_batch)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except DomainError as exc:
        where = getattr(args, "file", None) or getattr(args, "dir", None)
        prefix = f"{where}: " if where else ""
        print(f"error: {prefix}{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
