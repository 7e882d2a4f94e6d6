"""Command-line interface: ``doublegon <command> ...``.

Exit codes: 0 success, 1 search exhausted without a certificate, 2 usage,
3 unparsable element expression, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .expansion import (
    DEFAULT_MAX_STEPS,
    Hyperbolic,
    Parabolic,
    certify,
    classify,
    normalize_direction,
    result_json,
    word_matrix,
)
from .field import FieldError, make_ext, make_field
from .flow import (
    DEFAULT_MAX_CROSSINGS,
    central_points,
    recheck_report,
    search_hyperbolic_separatrix,
    segment_candidates,
    word_candidates,
)
from .model import (
    build_double_heptagon,
    build_staircase,
    cylinder_decomposition,
    model_invariants,
    model_json,
    staircase_model,
    transition_maps,
    vertex_classes,
)
from .parse import ParseError
from .survey import SurveyConfig, record_direction, records_to_csv, records_to_json, run_survey

OUTDIR_ENV = "DOUBLEGON_OUTDIR"

EXIT_OK, EXIT_EXHAUSTED, EXIT_USAGE, EXIT_PARSE, EXIT_INVARIANT = 0, 1, 2, 3, 4

log = logging.getLogger("doublegon")


class UsageError(Exception):
    pass


class InvariantError(Exception):
    pass


def _emit(obj):
    print(json.dumps(obj, indent=2))


def _ctx(N: int):
    try:
        return make_field(N)
    except FieldError as exc:
        raise UsageError(str(exc)) from exc


def _matrix_str(M) -> list:
    return [[str(c) for c in row] for row in M.rows()]


# ---------------------------------------------------------------------------


def cmd_field(args) -> int:
    ctx = _ctx(args.N)
    info = {
        "N": ctx.N,
        "minpoly": ctx.minpoly_str(),
        "degree": ctx.degree,
        "embedding": ctx.gen.approx(args.digits) if ctx.gen is not None else None,
        "note": ctx.trace_field_note,
    }
    if args.json:
        _emit(info)
    else:
        print(info["minpoly"])
        print(f"degree {info['degree']}, a = 2cos(pi/{ctx.N}) ~ {info['embedding']}")
        if info["note"]:
            print(f"note: {info['note']}")
    return EXIT_OK


def cmd_model(args) -> int:
    ctx = _ctx(args.N)
    model = staircase_model(args.N)
    checks = model_invariants(model)
    surf = build_staircase(ctx)
    cyl = {ax: cylinder_decomposition(surf, ax) for ax in ("horizontal", "vertical")}
    checks["cylinder_moduli_equal_a"] = all(c.modulus == ctx.gen for cs in cyl.values() for c in cs)
    classes = vertex_classes(surf)
    out = model_json(model)
    out["cylinders"] = {
        ax: [
            {"rectangles": c.members, "circumference": str(c.circumference), "height": str(c.height), "modulus": str(c.modulus)}
            for c in cs
        ]
        for ax, cs in cyl.items()
    }
    out["vertex_classes"] = [{"corners": len(v.corners), "angle_over_pi": str(v.angle)} for v in classes]
    out["genus"] = surf.genus()
    out["invariants"] = checks
    if args.json:
        _emit(out)
    else:
        print(f"N = {model.N}, n = {model.n}")
        print("u: " + ", ".join(out["u"]))
        for i, d in enumerate(out["diagonals"]):
            print(f"D_{i} = ({d[0]}, {d[1]})")
        for i, m in enumerate(out["sectors"]):
            print(f"M_{i} = {m}")
        for ax, cs in out["cylinders"].items():
            for c in cs:
                print(f"{ax} cylinder R{c['rectangles']}: modulus {c['modulus']}")
        for v in out["vertex_classes"]:
            print(f"vertex class: {v['corners']} corners, angle {v['angle_over_pi']} pi")
        print(f"genus {out['genus']}")
        for name, ok in checks.items():
            print(f"{'ok  ' if ok else 'FAIL'} {name}")
    if args.plot:
        from .plotting import plot_staircase

        plot_staircase(model, args.plot)
    if not all(checks.values()):
        raise InvariantError("model invariant violated: " + ", ".join(k for k, v in checks.items() if not v))
    return EXIT_OK


def cmd_classify(args) -> int:
    ctx = _ctx(args.N)
    model = staircase_model(args.N)
    x, y = ctx(args.X), ctx(args.Y)
    if x.is_zero() and y.is_zero():
        raise UsageError("the zero vector has no direction")
    d = normalize_direction(x, y)
    res = classify(d, model, args.max_steps)
    if not certify(d, res, model):
        raise InvariantError("classification certificate did not replay")
    out = result_json(d, res, args.N)
    if args.json:
        _emit(out)
        return EXIT_OK
    print(f"direction ({out['x']}, {out['y']}): {res.kind} after {res.steps} steps")
    if isinstance(res, Parabolic):
        print(f"word {out['word']} ends {res.terminal}")
    elif isinstance(res, Hyperbolic):
        print(f"preperiod {out['preperiod']}, period {out['period']}")
        print(f"periodic direction ({out['periodic_direction'][0]}, {out['periodic_direction'][1]})")
        print(f"stabilizer {out['stabilizer']}, trace {out['trace']}, eigenvalue {out['eigenvalue']}")
    else:
        print(f"no terminal or cycle within {res.steps} steps")
    return EXIT_OK


def _parse_word(src: str) -> list:
    src = src.strip()
    if not src:
        return []
    try:
        return [int(t) for t in src.split(",")]
    except ValueError as exc:
        raise ParseError("word must be a comma-separated list of integers", src, 0) from exc


def cmd_stabilizer(args) -> int:
    _ctx(args.N)
    model = staircase_model(args.N)
    word = _parse_word(args.W)
    if any(not 0 <= i < len(model.sectors) for i in word):
        raise UsageError(f"sector indices must lie in 0..{len(model.sectors) - 1}")
    M = word_matrix(word, model)
    tr = M.trace()
    det = M.det()
    if det != 1:
        raise InvariantError("word matrix has determinant != 1")
    s = (tr * tr - 4).sign()
    kind = "hyperbolic" if s > 0 else "parabolic" if s == 0 else "elliptic"
    out = {"N": args.N, "word": word, "matrix": _matrix_str(M), "trace": str(tr), "det": str(det), "type": kind}
    if args.json:
        _emit(out)
    else:
        print(f"M = {out['matrix']}")
        print(f"trace {out['trace']} ~ {float(tr):.6f}, {kind}")
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    from .reproduce import reproduce_paper

    report = reproduce_paper()
    if args.json:
        _emit(report.to_json())
    else:
        print("\n".join(report.lines()))
    if not report.internal_ok:
        raise InvariantError("an exact internal check failed")
    return EXIT_OK


def _seed_directions(max_steps: int) -> list:
    res = run_survey(SurveyConfig(7, 1, max_steps))
    return [record_direction(r) for r in res["records"] if r.cls == "hyperbolic"]


def cmd_central_point(args) -> int:
    K = make_field(7)
    L = make_ext(K)
    surface = build_double_heptagon(L)
    tm = transition_maps(L)
    model = staircase_model(7)
    points = dict(zip(("c1", "c2"), central_points(surface)))
    labels = list(points) if args.point == "both" else [args.point]
    seeds = _seed_directions(args.max_steps) if args.strategy == "words" else None
    reports = {}
    for label in labels:
        pt = points[label]
        log.info("searching %s with strategy %s, depth %d", label, args.strategy, args.depth)
        stats = {}
        if args.strategy == "words":
            cands = word_candidates(model, seeds, args.depth)
        else:
            cands = segment_candidates(surface, pt, tm, model, args.depth, args.max_steps, stats)
        result = search_hyperbolic_separatrix(
            surface,
            pt,
            cands,
            tm,
            model,
            max_crossings=args.max_crossings,
            max_steps=args.max_steps,
            label=label,
            strategy=args.strategy,
        )
        status = result.status
        if status == "empty" and stats:
            # segment directions were classified, none of them hyperbolic
            status = "exhausted"
        entry = {"status": status, "tried": result.tried}
        if stats:
            entry["segment_classes"] = stats
        if result.report is not None:
            entry["report"] = result.report.to_json()
            entry["recheck"] = recheck_report(result.report, surface, model, args.max_crossings)
            if not entry["recheck"]:
                raise InvariantError(f"certified report for {label} did not re-check")
            if args.svg:
                from .plotting import plot_trace

                p = Path(args.svg)
                if len(labels) > 1:
                    p = p.with_name(f"{p.stem}_{label}{p.suffix or '.svg'}")
                plot_trace(surface, result.report.backward, p, title=f"separatrix through {label}")
                entry["svg"] = str(p)
        else:
            entry["transcript"] = result.transcript
        reports[label] = entry
    certified = any(e["status"] == "certified" for e in reports.values())
    out = {"strategy": args.strategy, "depth": args.depth, "max_crossings": args.max_crossings, "points": reports}
    out["not_a_connection_point"] = [k for k, e in reports.items() if e["status"] == "certified"]
    if args.json:
        _emit(out)
    else:
        for label, e in reports.items():
            print(f"{label}: {e['status']} after {e['tried']} candidates")
            r = e.get("report")
            if r:
                c = r["classification"]
                print(f"  heptagon direction ({r['heptagon_direction'][0]}, {r['heptagon_direction'][1]})")
                print(f"  staircase direction ({r['staircase_direction'][0]}, {r['staircase_direction'][1]})")
                print(f"  {c['class']}: preperiod {c['preperiod']}, period {c['period']}, trace {c['trace']}")
                b = r["backward_trace"]
                print(f"  ray reaches the singularity after {b['crossings']} crossings, length^2 {b['squared_length']}")
                print(f"  verdict: {label} is not a connection point")
    return EXIT_OK if certified else EXIT_EXHAUSTED


def cmd_survey(args) -> int:
    out = args.out
    if out is None:
        base = os.environ.get(OUTDIR_ENV)
        if not base:
            raise UsageError(f"--out is required (or set {OUTDIR_ENV})")
        out = Path(base) / f"survey_N{args.N}_H{args.height}.{args.format}"
    out = Path(out)
    _ctx(args.N)
    try:
        config = SurveyConfig(args.N, args.height, args.max_steps, args.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    result = run_survey(config)
    text = records_to_csv(result["records"]) if args.format == "csv" else records_to_json(result)
    try:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write survey output to {out}: {exc}") from exc
    if not args.no_plot:
        from .plotting import plot_survey

        plot_survey(result, out.with_suffix(".svg"))
    stats = result["stats"]
    print(
        f"N={stats['N']} H={stats['height']} max_steps={stats['max_steps']}: {stats['total']} directions, "
        f"{stats['parabolic']} parabolic, {stats['hyperbolic']} hyperbolic, {stats['unresolved']} unresolved"
    )
    if stats["hyperbolic_traces"]:
        print("hyperbolic stabilizer traces: " + "; ".join(stats["hyperbolic_traces"]))
    print(f"wrote {out}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="doublegon", description="Directions and separatrices on double (2n+1)-gons.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("field", help="minimal polynomial and embedding of a = 2cos(pi/N)")
    s.add_argument("N", type=int)
    s.add_argument("--digits", type=int, default=20)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_field)

    s = sub.add_parser("model", help="staircase data, cylinders and vertex classes")
    s.add_argument("N", type=int)
    s.add_argument("--json", action="store_true")
    s.add_argument("--plot", metavar="PATH", help="write a staircase figure (svg/png)")
    s.set_defaults(func=cmd_model)

    s = sub.add_parser("classify", help="run the sector expansion on a direction (X, Y)")
    s.add_argument("N", type=int)
    s.add_argument("X")
    s.add_argument("Y")
    s.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("stabilizer", help="product of sector matrices for a word such as 5,0")
    s.add_argument("N", type=int)
    s.add_argument("W")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_stabilizer)

    s = sub.add_parser("verify-paper", help="recheck the heptagon matrix M, its conjugate and the caption slope")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_verify_paper)

    s = sub.add_parser("central-point", help="certify that heptagon centres are not connection points")
    s.add_argument("--depth", type=int, default=6, help="max word length (words) or unfolding depth (segments)")
    s.add_argument("--max-crossings", type=int, default=DEFAULT_MAX_CROSSINGS)
    s.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    s.add_argument("--strategy", choices=("words", "segments"), default="words")
    s.add_argument("--point", choices=("c1", "c2", "both"), default="both")
    s.add_argument("--svg", metavar="PATH")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_central_point)

    s = sub.add_parser("survey", help="classify all directions up to a coefficient height")
    s.add_argument("N", type=int)
    s.add_argument("--height", type=int, default=3)
    s.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    s.add_argument("--out", metavar="PATH", help=f"output file (default: ${OUTDIR_ENV}/survey_N<N>_H<H>.<fmt>)")
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--no-plot", action="store_true", help="skip the figure written next to the output")
    s.set_defaults(func=cmd_survey)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvariantError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
