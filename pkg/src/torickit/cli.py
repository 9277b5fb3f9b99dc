"""Command-line surface.

Exit codes: 0 success or verdict-true, 1 verdict-false (not ample, curve
meets the locus, retry budget exhausted), 2 malformed input or violated
precondition.  Documents go to stdout as canonical JSON; ``--format tsv``
switches census-like output to tab-separated lines.  The ``report``
subcommand writes delimited files and rank-2 figures into a directory.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__, documents
from .curves import (
    PointSpec,
    avoidance_verify,
    interpolate_avoiding,
    interpolate_through_points,
)
from .divisors import divisor_polytope, ft_certificate, is_ample
from .errors import InputError, ParseError, ToricKitError, VerdictError
from .fans import (
    codim2_orbits,
    is_complete,
    is_simplicial,
    is_smooth_cone,
    list_orbits,
    validate_fan,
)
from .isogeny import reverse_isogeny, smoothing_isogeny
from .plans import main_lemma_plan, main_theorem_plan
from .refine import qfactorialize, resolve_marked, resolve_to_smooth


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _emit(doc: dict) -> None:
    sys.stdout.write(documents.canonical_json(doc))


def _parse_point(text: str) -> PointSpec:
    try:
        return PointSpec(tuple(Fraction(x) for x in text.split(",")))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad point {text!r}; expected comma-separated rationals")


def _parse_param(text: str):
    try:
        s, t = text.split(":")
        return (Fraction(s), Fraction(t))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad parameter {text!r}; expected s:t")


def _parse_cone(text: str):
    try:
        return tuple(int(i) for i in text.split(","))
    except ValueError:
        raise InputError(f"bad cone {text!r}; expected comma-separated ray indices")


def _parse_allow(text: str):
    try:
        param, point = text.split("=")
    except ValueError:
        raise InputError(f"bad allowance {text!r}; expected s:t=coords")
    return _parse_param(param), _parse_point(point)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("TORICKIT_SEED")
    return int(env) if env else 0


def _maybe_figure(fan, path, highlight=()):
    if path is None:
        return None
    if fan.rank != 2:
        print(f"note: skipping figure (rank {fan.rank} fan)", file=sys.stderr)
        return None
    from . import viz

    viz.draw_fan(fan, path, highlight=highlight)
    return path


def _cmd_validate(args) -> int:
    fan = documents.load_fan(_read(args.fan))
    report = validate_fan(fan)
    if args.format == "tsv":
        for v in report.violations:
            sys.stdout.write(f"{v.code}\t{v.detail}\n")
    else:
        _emit(documents.wrap("report", documents.validation_payload(report)))
    _maybe_figure(fan, args.figure)
    return 0 if report.ok else 2


def _cmd_orbits(args) -> int:
    fan = documents.load_fan(_read(args.fan))
    report = validate_fan(fan)
    if not report.ok:
        raise InputError("; ".join(v.code for v in report.violations))
    orbits = codim2_orbits(fan) if args.codim2 else list_orbits(fan)
    if args.format == "tsv":
        sys.stdout.write("cone\torbit_dim\tis_singular\n")
        for o in orbits:
            cone = ",".join(str(i) for i in o.cone)
            sys.stdout.write(f"{cone}\t{o.orbit_dim}\t{o.is_singular}\n")
    else:
        payload = {"report": "orbits", "orbits": [documents.orbit_payload(o) for o in orbits]}
        _emit(documents.wrap("report", payload))
    _maybe_figure(fan, args.figure)
    return 0


def _cmd_qfactorialize(args) -> int:
    fan = documents.load_fan(_read(args.fan))
    out, steps = qfactorialize(fan)
    payload = {
        "fan": documents.fan_payload(out),
        "steps": [documents.step_payload(s) for s in steps],
    }
    _emit(documents.wrap("report", {"report": "subdivision", **payload}))
    _maybe_figure(out, args.figure)
    return 0


def _cmd_resolve(args) -> int:
    fan = documents.load_fan(_read(args.fan))
    if args.marked:
        marked = [_parse_cone(m) for m in args.marked]
        out, steps = resolve_marked(fan, marked)
    else:
        current, steps_q = qfactorialize(fan)
        out, steps_r = resolve_to_smooth(current)
        steps = tuple(steps_q) + tuple(steps_r)
    payload = {
        "report": "subdivision",
        "fan": documents.fan_payload(out),
        "steps": [documents.step_payload(s) for s in steps],
        "smooth": all(is_smooth_cone(out.cone(c)) for c in out.max_cones),
    }
    _emit(documents.wrap("report", payload))
    new = range(len(fan.rays), len(out.rays))
    _maybe_figure(out, args.figure, highlight=new)
    return 0


def _cmd_isogeny_smooth(args) -> int:
    fan = documents.load_fan(_read(args.fan))
    iso = smoothing_isogeny(fan, _parse_cone(args.cone))
    _emit(documents.wrap("isogeny", documents.isogeny_payload(iso)))
    return 0


def _cmd_isogeny_reverse(args) -> int:
    iso = documents.load_isogeny(_read(args.isogeny))
    _emit(documents.wrap("isogeny", documents.isogeny_payload(reverse_isogeny(iso))))
    return 0


def _cmd_ft_cert(args) -> int:
    fan = documents.load_fan(_read(args.fan))
    divisor = documents.load_divisor(_read(args.divisor))
    cert = ft_certificate(fan, divisor)
    _emit(documents.wrap("certificate", documents.certificate_payload(fan, cert)))
    if args.figure and fan.rank == 2:
        from . import viz

        viz.draw_polytope(
            divisor_polytope(fan, cert.ample), args.figure, interior=cert.u
        )
    return 0


def _cmd_curve_interpolate(args) -> int:
    fan = documents.load_fan(_read(args.fan))
    points = [_parse_point(p) for p in args.point or []]
    params = [_parse_param(p) for p in args.at or []]
    curve = interpolate_through_points(
        fan, points, params, args.degree, seed=_seed(args)
    )
    _emit(documents.wrap("curve", documents.curve_payload(curve)))
    return 0


def _cmd_curve_verify(args) -> int:
    curve = documents.load_curve(_read(args.curve))
    gens = documents.load_ideal(_read(args.ideal))
    allowed = [_parse_allow(a) for a in args.allow or []]
    report = avoidance_verify(curve, gens, allowed=allowed)
    _emit(documents.wrap("report", documents.avoidance_payload(report)))
    return 0 if report.verdict == "disjoint" else 1


def _cmd_curve_avoid(args) -> int:
    fan = documents.load_fan(_read(args.fan))
    gens = documents.load_ideal(_read(args.ideal))
    points = [_parse_point(p) for p in args.point or []]
    params = [_parse_param(p) for p in args.at or []]
    curve = interpolate_avoiding(
        fan, points, params, gens, args.degree, seed=_seed(args), budget=args.budget
    )
    _emit(documents.wrap("curve", documents.curve_payload(curve)))
    return 0


def _cmd_plan_main_lemma(args) -> int:
    fan = documents.load_fan(_read(args.fan))
    p = _parse_point(args.p)
    q = _parse_point(args.q)
    locus = documents.load_ideal(_read(args.s_ideal)) if args.s_ideal else None
    _emit(main_lemma_plan(fan, p, q, locus))
    return 0


def _cmd_plan_main_theorem(args) -> int:
    fan = documents.load_fan(_read(args.fan))
    points = [_parse_point(p) for p in args.point or []]
    gens = documents.load_ideal(_read(args.s_ideal))
    _emit(main_theorem_plan(fan, points, gens, degree=args.degree, seed=_seed(args)))
    return 0


def _cmd_report(args) -> int:
    fan = documents.load_fan(_read(args.fan))
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    report = validate_fan(fan)
    orbits = list_orbits(fan) if report.ok else ()
    files = {}

    rays_path = out_dir / "rays.tsv"
    with rays_path.open("w", encoding="utf-8") as fh:
        fh.write("index\tray\tprimitive\n")
        for i, r in enumerate(fan.rays):
            fh.write(f"{i}\t{','.join(str(x) for x in r)}\ttrue\n")
    files["rays"] = rays_path.name

    orbits_path = out_dir / "orbits.tsv"
    with orbits_path.open("w", encoding="utf-8") as fh:
        fh.write("cone\torbit_dim\tis_singular\n")
        for o in orbits:
            fh.write(
                f"{','.join(str(i) for i in o.cone)}\t{o.orbit_dim}\t{o.is_singular}\n"
            )
    files["orbits"] = orbits_path.name

    cones_path = out_dir / "cones.tsv"
    with cones_path.open("w", encoding="utf-8") as fh:
        fh.write("cone\tdim\tsmooth\tmultiplicity\n")
        for c in fan.max_cones:
            cone = fan.cone(c)
            mult = ""
            if len(c) == cone.dim:
                from .fans import cone_multiplicity

                mult = str(cone_multiplicity(cone))
            fh.write(
                f"{','.join(str(i) for i in c)}\t{cone.dim}\t{is_smooth_cone(cone)}\t{mult}\n"
            )
    files["cones"] = cones_path.name

    if fan.rank == 2:
        from . import viz

        viz.draw_fan(fan, str(out_dir / "fan.png"))
        files["figure"] = "fan.png"

    divisor = None
    if args.divisor:
        divisor = documents.load_divisor(_read(args.divisor))
        if fan.rank == 2:
            from . import viz

            try:
                viz.draw_polytope(
                    divisor_polytope(fan, divisor), str(out_dir / "polytope.png")
                )
                files["polytope"] = "polytope.png"
            except ValueError:
                pass

    payload = {
        "report": "survey",
        "valid": report.ok,
        "violations": [
            {"code": v.code, "detail": v.detail} for v in report.violations
        ],
        "complete": is_complete(fan) if report.ok else None,
        "simplicial": is_simplicial(fan) if report.ok else None,
        "smooth": all(is_smooth_cone(fan.cone(c)) for c in fan.max_cones)
        if report.ok
        else None,
        "ray_count": len(fan.rays),
        "max_cone_count": len(fan.max_cones),
        "orbit_count": len(orbits),
        "ample": (is_ample(fan, divisor) if (report.ok and divisor is not None) else None),
        "files": files,
        "out_dir": str(out_dir),
    }
    _emit(documents.wrap("report", payload))
    return 0 if report.ok else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torickit",
        description="Exact toolkit for complete toric varieties: fans, isogenies, "
        "resolutions, Fano-type certificates, and rational curves.",
    )
    parser.add_argument("--version", action="version", version=f"torickit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("json", "tsv"), default="json")

    def add_figure(p):
        p.add_argument("--figure", metavar="PATH", help="write a rank-2 fan figure")

    def add_seed(p):
        p.add_argument("--seed", type=int, default=None,
                       help="random seed (default: $TORICKIT_SEED or 0)")

    p = sub.add_parser("validate", help="check the fan axioms")
    p.add_argument("fan")
    add_format(p)
    add_figure(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("orbits", help="orbit census in the paper order")
    p.add_argument("fan")
    p.add_argument("--codim2", action="store_true", help="only codimension >= 2")
    add_format(p)
    add_figure(p)
    p.set_defaults(func=_cmd_orbits)

    p = sub.add_parser("qfactorialize", help="triangulate with existing rays")
    p.add_argument("fan")
    add_figure(p)
    p.set_defaults(func=_cmd_qfactorialize)

    p = sub.add_parser("resolve", help="resolve to a smooth fan")
    p.add_argument("fan")
    p.add_argument("--marked", action="append", metavar="I,J,K",
                   help="marked fixed-point cone (repeatable)")
    add_figure(p)
    p.set_defaults(func=_cmd_resolve)

    p = sub.add_parser("isogeny", help="isogeny constructions")
    iso_sub = p.add_subparsers(dest="iso_command", required=True)
    ps = iso_sub.add_parser("smooth", help="smoothing isogeny for a cone")
    ps.add_argument("fan")
    ps.add_argument("cone", help="ray indices i,j,...")
    ps.set_defaults(func=_cmd_isogeny_smooth)
    pr = iso_sub.add_parser("reverse", help="reverse an isogeny")
    pr.add_argument("isogeny")
    pr.set_defaults(func=_cmd_isogeny_reverse)

    p = sub.add_parser("ft-cert", help="Fano-type certificate from an ample divisor")
    p.add_argument("fan")
    p.add_argument("divisor")
    p.add_argument("--figure", metavar="PATH", help="rank-2 polytope figure")
    p.set_defaults(func=_cmd_ft_cert)

    p = sub.add_parser("curve", help="rational curves in Cox coordinates")
    curve_sub = p.add_subparsers(dest="curve_command", required=True)
    pi = curve_sub.add_parser("interpolate", help="curve through prescribed points")
    pi.add_argument("fan")
    pi.add_argument("--point", action="append", metavar="C0,C1,...")
    pi.add_argument("--at", action="append", metavar="S:T")
    pi.add_argument("--degree", type=int, required=True)
    add_seed(pi)
    pi.set_defaults(func=_cmd_curve_interpolate)
    pv = curve_sub.add_parser("verify", help="avoidance verdict for a curve")
    pv.add_argument("curve")
    pv.add_argument("ideal")
    pv.add_argument("--allow", action="append", metavar="S:T=C0,C1,...")
    pv.set_defaults(func=_cmd_curve_verify)
    pa = curve_sub.add_parser("avoid", help="interpolate avoiding a locus")
    pa.add_argument("fan")
    pa.add_argument("ideal")
    pa.add_argument("--point", action="append", metavar="C0,C1,...")
    pa.add_argument("--at", action="append", metavar="S:T")
    pa.add_argument("--degree", type=int, required=True)
    pa.add_argument("--budget", type=int, default=8)
    add_seed(pa)
    pa.set_defaults(func=_cmd_curve_avoid)

    p = sub.add_parser("plan", help="proof-pipeline certificates")
    plan_sub = p.add_subparsers(dest="plan_command", required=True)
    pl = plan_sub.add_parser("main-lemma", help="two-point avoidance plan")
    pl.add_argument("fan")
    pl.add_argument("--p", required=True, metavar="C0,C1,...")
    pl.add_argument("--q", required=True, metavar="C0,C1,...")
    pl.add_argument("--s-ideal", dest="s_ideal", metavar="IDEAL")
    pl.set_defaults(func=_cmd_plan_main_lemma)
    pt = plan_sub.add_parser("main-theorem", help="many-point plan")
    pt.add_argument("fan")
    pt.add_argument("--point", action="append", metavar="C0,C1,...")
    pt.add_argument("--s-ideal", dest="s_ideal", required=True, metavar="IDEAL")
    pt.add_argument("--degree", type=int, default=None)
    add_seed(pt)
    pt.set_defaults(func=_cmd_plan_main_theorem)

    p = sub.add_parser("report", help="fan survey: TSV census plus figures")
    p.add_argument("fan")
    p.add_argument("--divisor", metavar="DIVISOR")
    p.add_argument("--out-dir", dest="out_dir", default="report")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VerdictError as exc:
        print(f"verdict: {exc}", file=sys.stderr)
        return 1
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ToricKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
