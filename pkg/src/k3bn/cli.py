"""Command-line front end.

Exit codes: 0 pass or found, 1 fail or none, 2 inconclusive, 3 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

from . import criteria as cr
from .exactnum import PrecisionExhausted, RadicalExpr, precision_cap
from .geometry import ORIGIN, Segment, point, region_membership, Region
from .lattice import DegenerateInput, MukaiVector, SurfaceContext, UsageError, derived_vectors
from .regions import Bounds, OmegaQuery, WallStatus, admits_no_wall

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3

_VERDICT_EXIT = {
    cr.Verdict.Pass: EXIT_OK,
    cr.Verdict.Fail: EXIT_FAIL,
    cr.Verdict.Inconclusive: EXIT_INCONCLUSIVE,
}
_WALL_EXIT = {
    WallStatus.NoWall: EXIT_OK,
    WallStatus.WallCandidates: EXIT_FAIL,
    WallStatus.Inconclusive: EXIT_INCONCLUSIVE,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# serialisation

def radical_json(x: RadicalExpr) -> dict:
    return {
        "terms": [[str(q), b] for q, b in x.terms],
        "approx": str(x.to_decimal(30)),
    }


def _vec(v) -> list:
    return [int(t) for t in v]


def condition_json(c: cr.Condition) -> dict:
    out = {"name": c.name, "anchor": c.anchor, "status": c.status.value, "witness": c.witness}
    if c.values:
        out["values"] = {k: radical_json(x) for k, x in c.values}
    return out


def report_json(rep: cr.CriterionReport) -> dict:
    g, m, v = rep.input
    return {
        "input": {"g": g, "m": m, "v": _vec(v)},
        "verdict": rep.verdict.value,
        "route": rep.route,
        "conditions": [condition_json(c) for c in rep.conditions],
    }


def pipeline_json(rep: cr.PipelineReport) -> dict:
    g, m, v = rep.input
    conds = []
    for stage, sub in rep.stages.items():
        for c in sub.conditions:
            conds.append({"stage": stage, **condition_json(c)})
    return {
        "input": {"g": g, "m": m, "v": _vec(v)},
        "verdict": rep.verdict.value,
        "route": rep.route,
        "stages": {k: {"verdict": s.verdict.value, "route": s.route} for k, s in rep.stages.items()},
        "conditions": conds,
    }


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _text_conditions(conds) -> list[str]:
    return [f"  [{c['status']:>12}] {c['name']}  ({c['witness']})" for c in conds]


# commands

def _check(args):
    ctx = SurfaceContext(args.g)
    v = MukaiVector(args.r, args.c, args.s)
    rep = cr.check_pipeline(ctx, args.m, v)
    data = pipeline_json(rep)
    if args.emit_svg:
        from . import plotting
        from .hnpolygon import polygon_data

        plotting.plot_stability_plane(ctx, f"{args.emit_svg}-plane.svg", v=v)
        try:
            plotting.plot_model_polygon(ctx, polygon_data(ctx, args.m, v, 1), f"{args.emit_svg}-polygon.svg")
        except DegenerateInput:
            pass
    if args.format == "text":
        lines = [f"g={args.g} m={args.m} v={v}: {data['verdict']} via {data['route']}"]
        for stage, s in data["stages"].items():
            lines.append(f"{stage}: {s['verdict']} ({s['route']})")
        lines += _text_conditions(data["conditions"])
        return "\n".join(lines), _VERDICT_EXIT[rep.verdict], data
    if args.format == "csv":
        row = [args.g, args.m, *v] + [data["stages"][k]["verdict"] for k in
                                      ("injectivity", "surjectivity", "isomorphism")] + [data["route"]]
        return _csv([row]), _VERDICT_EXIT[rep.verdict], data
    return None, _VERDICT_EXIT[rep.verdict], data


def _suggest(args):
    found = cr.suggest_vector(args.g, args.m)
    data = {"g": args.g, "m": args.m,
            "v": _vec(found[0]) if found else None,
            "route": found[1] if found else None}
    text = f"g={args.g} m={args.m}: " + (f"{found[0]} ({found[1]})" if found else "none")
    code = EXIT_OK if found else EXIT_FAIL
    if args.format == "csv":
        v = found[0] if found else ("", "", "")
        return _csv([[args.g, args.m, *v, "", "", "", data["route"] or "none"]]), code, data
    return (text if args.format == "text" else None), code, data


def _csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["g", "m", "r", "c", "s", "inj", "surj", "iso", "route"])
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _range(text: str) -> range:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return range(int(lo), int(hi) + 1)
        return range(int(text), int(text) + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer range like 3..7, got {text!r}")


def _scan(args):
    if any(g < 2 for g in args.g_range) or any(m < 1 for m in args.m_range):
        raise UsageError("scan needs g >= 2 and m >= 1")
    rows = cr.scan(args.g_range, args.m_range)
    data = [{"g": r.g, "m": r.m, "v": _vec(r.v) if r.v else None, "route": r.route,
             "inj": r.inj, "surj": r.surj, "iso": r.iso} for r in rows]
    if args.emit_svg:
        from . import plotting

        plotting.plot_scan(rows, f"{args.emit_svg}-scan.svg")
    if args.format == "csv":
        out = [[r.g, r.m, *(r.v if r.v else ("", "", "")), r.inj, r.surj, r.iso, r.route] for r in rows]
        return _csv(out), EXIT_OK, data
    if args.format == "text":
        lines = [f"{r.g:>4} {r.m:>3}  {str(r.v) if r.v else '-':<16} {r.route}" for r in rows]
        return "\n".join(lines), EXIT_OK, data
    return None, EXIT_OK, {"rows": data}


def _hk(args):
    res = cr.find_hk_vector(args.n, args.g)
    data = {"p": res.p, "c": res.c, "v": _vec(res.v)} if res else None
    text = f"n={args.n} g={args.g}: " + (f"p={res.p} c={res.c} v={res.v}" if res else "none")
    if args.format == "csv":
        return ("p,c,r,c,s\n" + (f"{res.p},{res.c},{res.v.r},{res.v.c},{res.v.s}" if res else "")).rstrip("\n"), \
            (EXIT_OK if res else EXIT_FAIL), data
    return (text if args.format == "text" else None), (EXIT_OK if res else EXIT_FAIL), data


def _parse_point(text: str):
    try:
        x, y = text.split(",")
        return point(Fraction(x), Fraction(y))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a point like 2/9,0, got {text!r}")


def _oracle(args):
    ctx = SurfaceContext(args.g)
    v = MukaiVector(args.r, args.c, args.s)
    sigma = args.sigma
    if sigma is None:
        sigma = derived_vectors(ctx, args.m, v).require("sigma_v")
    if sigma == ORIGIN:
        raise UsageError("sigma must differ from the origin")
    if sigma.x <= 0 or not region_membership(ctx, sigma, Region.V):
        raise UsageError(f"sigma=({sigma.x},{sigma.y}) is not in V")
    seg = Segment(ORIGIN, sigma, include_a=False)
    bounds = Bounds(y_max=args.y_max, root_bound=args.root_bound)
    verdict = admits_no_wall(ctx, OmegaQuery(v, seg, bounds), strict=not args.non_strict)
    data = {
        "input": {"g": args.g, "v": _vec(v), "sigma": [str(sigma.x), str(sigma.y)],
                  "strict": not args.non_strict},
        "status": verdict.status.value,
        "witnesses": [_vec(w) for w in verdict.witnesses],
        "note": verdict.note,
    }
    if args.emit_svg:
        from . import plotting

        plotting.plot_stability_plane(ctx, f"{args.emit_svg}-plane.svg", v=v, segment=seg,
                                      marks=verdict.witnesses)
    text = f"{verdict.status.value}: {verdict.note}" + \
        ("".join(f"\n  {w}" for w in verdict.witnesses))
    if args.format == "csv":
        out = "r,c,s\n" + "\n".join(f"{w.r},{w.c},{w.s}" for w in verdict.witnesses)
        return out.rstrip("\n"), _WALL_EXIT[verdict.status], data
    return (text if args.format == "text" else None), _WALL_EXIT[verdict.status], data


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--precision-bits", type=int, default=None,
                        help="cap on fractional bits used by radical sign decisions")
    common.add_argument("--emit-svg", metavar="PREFIX", default=None,
                        help="also write figures named PREFIX-*.svg")
    common.add_argument("--timings", action="store_true", help="report wall-clock time in milliseconds")

    p = _Parser(prog="k3bn", description="Brill-Noether restriction criteria on K3 surfaces of Picard rank one")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", parents=[common], help="injectivity, surjectivity and isomorphism for (g, m, v)")
    for name in ("g", "m", "r", "c", "s"):
        c.add_argument(name, type=int)
    c.set_defaults(func=_check)

    s = sub.add_parser("suggest", parents=[common], help="propose a Mukai vector for (g, m)")
    s.add_argument("g", type=int)
    s.add_argument("m", type=int)
    s.set_defaults(func=_suggest)

    sc = sub.add_parser("scan", parents=[common], help="suggest over a grid of (g, m)")
    sc.add_argument("g_range", type=_range, metavar="G0..G1")
    sc.add_argument("m_range", type=_range, metavar="M0..M1")
    sc.set_defaults(func=_scan)

    h = sub.add_parser("hk", parents=[common], help="vector of square 2n on a genus g surface")
    h.add_argument("n", type=int)
    h.add_argument("g", type=int)
    h.set_defaults(func=_hk)

    o = sub.add_parser("oracle", help="exact region oracles")
    osub = o.add_subparsers(dest="oracle", required=True, parser_class=_Parser)
    nw = osub.add_parser("no-wall", parents=[common], help="search for walls along (o, sigma]")
    for name in ("g", "r", "c", "s"):
        nw.add_argument(name, type=int)
    nw.add_argument("--m", type=int, default=1, help="multiple used for the default sigma")
    nw.add_argument("--sigma", type=_parse_point, default=None, help="segment end point as x,y")
    nw.add_argument("--y-max", type=int, default=None)
    nw.add_argument("--root-bound", type=int, default=None)
    nw.add_argument("--non-strict", action="store_true", help="search the whole region, diagonal included")
    nw.set_defaults(func=_oracle)
    return p


def run(argv=None) -> tuple[int, str]:
    """Run one invocation; returns the exit code and the text for standard output."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.precision_bits is not None and args.precision_bits < 64:
        parser.error("--precision-bits must be at least 64")
    started = time.perf_counter()
    try:
        if args.precision_bits is not None:
            with precision_cap(args.precision_bits):
                text, code, data = args.func(args)
        else:
            text, code, data = args.func(args)
    except (UsageError, DegenerateInput, ValueError) as exc:
        print(f"k3bn: error: {exc}", file=sys.stderr)
        return EXIT_USAGE, ""
    except PrecisionExhausted as exc:
        print(f"k3bn: precision exhausted: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE, ""
    if text is None:
        if isinstance(data, dict):
            data = dict(data)
            data["timings_ms"] = round((time.perf_counter() - started) * 1000, 3) if args.timings else None
        text = _dump(data)
    elif args.timings:
        print(f"time: {(time.perf_counter() - started) * 1000:.3f} ms", file=sys.stderr)
    return code, text


def main(argv=None) -> int:
    code, text = run(argv)
    if text:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
