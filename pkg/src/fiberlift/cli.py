"""Command-line entry point: ``fiberlift <subcommand> FILE [flags]``."""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from typing import List, Optional

from .alexander import ZeroSpecialization, abelian_cover_alexander, char_poly_fibered
from .fixtures import FixtureError, load_automorphism, load_polynomial, load_record, read_json, record_from_dict
from .lpoly import IntLinearMap, format_poly, normalized, substitute_linear
from .mahler import MahlerConvergenceError, MahlerResult, is_extended_cyclotomic_product, mahler_multivariate, mahler_univariate
from .pipeline import PipelineConfig, format_report, run_pipeline
from .surfcover import spectral_lift_search, spectral_radius
from .torsion import RootOfUnityZero, torsion_cyclic_cover

log = logging.getLogger("fiberlift")


class CommandError(Exception):
    pass


def _emit(args, text_lines: List[str], doc: dict) -> None:
    if args.format == "machine":
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _fmt(x: Optional[float]) -> str:
    return "nan" if x is None or math.isnan(x) else f"{x:.12g}"


# -- subcommands ---------------------------------------------------------


def cmd_mahler(args) -> None:
    p, factors = load_polynomial(args.file)
    if p.is_zero():
        raise CommandError("zero polynomial has no Mahler measure")
    detector = None
    if factors is not None:
        detector = is_extended_cyclotomic_product(p, factors)
    if detector:
        res = MahlerResult.exact_one()
    elif p.num_vars == 1:
        res = mahler_univariate(p)
    else:
        try:
            res = mahler_multivariate(p, grid=args.grid, tol=args.tol, jobs=args.jobs)
        except MahlerConvergenceError as exc:
            raise CommandError(str(exc)) from exc
    doc = {
        "polynomial": format_poly(p),
        "value": res.value,
        "log_value": res.log_value,
        "method": res.method,
        "error_estimate": res.error_estimate,
    }
    if detector is not None:
        doc["extended_cyclotomic_product"] = detector
    lines = [f"{k}: {_fmt(v) if isinstance(v, float) else v}" for k, v in doc.items()]
    _emit(args, lines, doc)


def cmd_alexander(args) -> None:
    rec = load_record(args.file)
    delta = normalized(rec.alexander())
    lines = [f"manifold: {rec.name}", f"b1: {rec.b1}", f"alexander: {delta}"]
    doc = {"name": rec.name, "b1": rec.b1, "alexander": str(delta), "alexander_pairs": delta.to_pairs()}
    classes = []
    for fc in rec.fibered_classes:
        spec = normalized(substitute_linear(delta, IntLinearMap([list(fc.a)])))
        cp = char_poly_fibered(fc)
        classes.append({"a": list(fc.a), "specialization": str(spec), "monodromy_char_poly": str(cp)})
        lines.append(f"class {list(fc.a)}: a(delta) = {spec}, monodromy char poly = {cp}")
    doc["fibered_classes"] = classes
    _emit(args, lines, doc)


def _parse_twist(text: str, num_vars: int) -> List[int]:
    try:
        idx = [int(s) - 1 for s in text.split(",") if s.strip()]
    except ValueError as exc:
        raise CommandError(f"bad --twist list {text!r}") from exc
    if not idx or any(not 0 <= j < num_vars for j in idx):
        raise CommandError(f"--twist entries must lie in 1..{num_vars}")
    return idx


def cmd_cover_alex(args) -> None:
    p, _ = load_polynomial(args.file)
    twist = _parse_twist(args.twist, p.num_vars) if args.twist else list(range(1, p.num_vars))
    if not twist:
        raise CommandError("nothing to twist in a one-variable polynomial")
    cover = abelian_cover_alexander(p, args.k, twist)
    doc = {
        "input": format_poly(p),
        "k": args.k,
        "twisted": [j + 1 for j in twist],
        "cover_alexander": format_poly(cover),
        "cover_alexander_pairs": cover.to_pairs(),
    }
    lines = [f"input: {doc['input']}", f"k: {args.k}", f"twisted: {doc['twisted']}",
             f"cover alexander: {doc['cover_alexander']}"]
    if args.pullback:
        row = [int(s) for s in args.pullback.split(",")]
        if len(row) != cover.num_vars:
            raise CommandError("--pullback length differs from the number of variables")
        try:
            spec = normalized(substitute_linear(cover, IntLinearMap([row])))
        except ValueError as exc:
            raise CommandError(str(exc)) from exc
        if spec.is_zero():
            raise CommandError("pullback specialization is 0")
        m = mahler_univariate(spec)
        doc.update(pullback=row, pullback_poly=str(spec), pullback_mahler=m.value)
        lines += [f"pullback {row}: {spec}", f"pullback mahler: {_fmt(m.value)}"]
    _emit(args, lines, doc)


def cmd_torsion_growth(args) -> None:
    p, _ = load_polynomial(args.file)
    if p.num_vars != 1:
        raise CommandError("torsion growth expects a one-variable polynomial")
    if p.is_zero():
        raise CommandError("zero polynomial")
    rows = []
    lines = [f"{'n':>4}  {'torsion':>24}  {'log(torsion)/n':>16}"]
    for n in range(1, args.n_max + 1):
        try:
            tor = torsion_cyclic_cover(p, n)
        except RootOfUnityZero:
            rows.append({"n": n, "torsion": None, "growth": None})
            lines.append(f"{n:>4}  {'infinite':>24}  {'skipped':>16}")
            continue
        g = math.log(tor) / n
        rows.append({"n": n, "torsion": tor, "growth": g})
        lines.append(f"{n:>4}  {tor:>24}  {g:>16.10f}")
    m = mahler_univariate(p)
    lines.append(f"log M = {m.log_value:.10f}")
    _emit(args, lines, {"polynomial": format_poly(p), "rows": rows, "log_mahler": m.log_value})


def cmd_lift_search(args) -> None:
    phi = load_automorphism(args.file)
    base = phi.abelianization()
    base_radius = spectral_radius(base)
    found = spectral_lift_search(phi, args.d_max, tol=args.tol)
    doc = {"automorphism": phi.to_strings(), "base_radius": base_radius, "d_max": args.d_max, "found": found is not None}
    lines = [f"base spectral radius: {base_radius:.12g}"]
    if found is None:
        lines.append(f"no lift with radius > 1 found up to degree {args.d_max} (inconclusive)")
    else:
        doc.update(
            degree=found.cover.degree,
            cover=found.cover.to_one_line(),
            power=found.lift.power,
            tau=[x + 1 for x in found.lift.tau],
            homology_matrix=found.lift.homology_matrix,
            radius=found.radius,
        )
        lines += [
            f"found at degree {found.cover.degree}, power {found.lift.power}",
            f"cover: {found.cover.to_one_line()}",
            f"lift radius: {found.radius:.12g}",
        ]
    _emit(args, lines, doc)


def cmd_pipeline(args) -> None:
    doc = read_json(args.file)
    try:
        rec = record_from_dict(doc)
    except (TypeError, ValueError) as exc:
        raise CommandError(str(exc)) from exc
    cfg = PipelineConfig(
        tol=args.tol if args.tol is not None else 1e-9,
        quad_tol=args.quad_tol,
        grid=args.grid,
        jobs=args.jobs,
    )
    rep = run_pipeline(rec, cfg)
    if args.format == "machine":
        sys.stdout.write(json.dumps(rep.to_dict(), sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(format_report(rep))


# -- parser --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for quadrature")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="fiberlift", description="Mahler measures, Alexander polynomials and covers.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mahler", parents=[common], help="Mahler measure of a polynomial fixture")
    p.add_argument("file")
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--tol", type=float, default=1e-4, help="quadrature convergence tolerance")
    p.set_defaults(func=cmd_mahler)

    p = sub.add_parser("alexander", parents=[common], help="Alexander polynomial of a manifold record")
    p.add_argument("file")
    p.set_defaults(func=cmd_alexander)

    p = sub.add_parser("cover-alex", parents=[common], help="Alexander polynomial of a Z_k cover")
    p.add_argument("file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--twist", default=None, help="comma-separated 1-based variables (default 2..n)")
    p.add_argument("--pullback", default=None, help="comma-separated class to specialize the result along")
    p.set_defaults(func=cmd_cover_alex)

    p = sub.add_parser("torsion-growth", parents=[common], help="torsion of cyclic covers")
    p.add_argument("file")
    p.add_argument("--n-max", type=int, default=30)
    p.set_defaults(func=cmd_torsion_growth)

    p = sub.add_parser("lift-search", parents=[common], help="search covers for a lift of radius > 1")
    p.add_argument("file")
    p.add_argument("--d-max", type=int, default=4)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_lift_search)

    p = sub.add_parser("pipeline", parents=[common], help="check the three statements on a manifold record")
    p.add_argument("file")
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--tol", type=float, default=None, help="threshold above 1 (default 1e-9)")
    p.add_argument("--quad-tol", type=float, default=1e-4)
    p.set_defaults(func=cmd_pipeline)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return 2
    try:
        args.func(args)
    except (CommandError, FixtureError, ZeroSpecialization, ArithmeticError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
