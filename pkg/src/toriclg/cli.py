"""Command-line interface.

Exit codes: 0 success/pass, 1 verification failure, 2 input error.
"""

import argparse
import json
import sys

from . import verify as verify_mod
from .contractions import ContractionSpec, build_degeneration_charts, validate_contraction
from .errors import ToricLGError
from .iseries import ToricCIData, regularized_coefficient, restricted_coefficient
from .lattice import Fan
from .laurent import from_json as laurent_from_json
from .laurent import parse as laurent_parse
from .laurent import period_coefficients
from .quotsing import CyclicQuotient, classify, quotient_from_cone
from .report import golden_compare, render_text, write_report


def _read(path):
    with open(path) as fh:
        return fh.read()


def _ints(text):
    return tuple(int(x) for x in text.split(","))


def _emit(args, payload, text):
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _cmd_fan_check(args):
    fan = Fan.from_json(_read(args.file))
    rep = fan.validate()
    _emit(args, {"ok": rep.ok, "failures": [m for m, _ in rep.failures]}, str(rep))
    return 0 if rep.ok else 1


def _cmd_fan_blowup(args):
    fan = Fan.from_json(_read(args.file))
    out = fan.star_subdivide(_ints(args.cone), _ints(args.ray))
    text = out.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        print(f"wrote {args.out}")
    else:
        print(text)
    return 0


def _cmd_fan_polytope(args):
    fan = Fan.from_json(_read(args.file))
    vertices, others = fan.fan_polytope()
    payload = {"vertices": [list(v) for v in vertices], "non_vertex_rays": [list(v) for v in others]}
    text = "vertices:\n" + "\n".join(f"  {v}" for v in vertices)
    if others:
        text += "\nnon-vertex rays:\n" + "\n".join(f"  {v}" for v in others)
    _emit(args, payload, text)
    return 0


def _classification_payload(dec, cls):
    return {
        "quotient": str(dec),
        "is_smooth": cls.is_smooth,
        "is_terminal": cls.is_terminal,
        "is_canonical": cls.is_canonical,
        "is_gorenstein": cls.is_gorenstein,
        "min_age": str(cls.min_age) if cls.min_age is not None else None,
    }


def _cmd_sing_classify(args):
    q = CyclicQuotient.parse(args.quotient)
    cls = classify(q)
    _emit(args, _classification_payload(q, cls), f"{q}: {cls}")
    return 0


def _cmd_sing_from_cone(args):
    fan = Fan.from_json(_read(args.file))
    cone = fan.cone(_ints(args.cone))
    dec = quotient_from_cone(cone)
    cls = classify(dec)
    _emit(args, _classification_payload(dec, cls), f"{dec}: {cls}")
    return 0


def _cmd_contraction_validate(args):
    spec = ContractionSpec.from_json(_read(args.file))
    rep = validate_contraction(spec)
    payload = {
        "kind": spec.kind.value,
        "ok": rep.ok,
        "conditions": [{"name": n, "status": s, "detail": d} for n, s, d in rep.conditions],
    }
    _emit(args, payload, str(rep))
    return 0 if rep.ok else 1


def _cmd_contraction_charts(args):
    spec = ContractionSpec.from_json(_read(args.file))
    charts = build_degeneration_charts(spec)
    payload = []
    lines = []
    for c in charts:
        payload.append(
            {
                "chart": c.chart,
                "ambient_dim": c.ambient_dim,
                "quotient": str(c.quotient),
                "presentation": str(c.presentation) if c.presentation else "smooth",
                "shape": c.shape.value,
                "binomial_pair": list(c.binomial_pair) if c.binomial_pair else None,
                "hypersurface_note": c.hypersurface_note,
            }
        )
        lines.append(c.describe())
    _emit(args, payload, "\n".join(lines))
    return 0


def _load_laurent(args):
    if args.text:
        return laurent_parse(args.text)
    if args.file:
        return laurent_from_json(_read(args.file))
    raise ToricLGError("supply --file or --text")


def _cmd_period_laurent(args):
    f = _load_laurent(args)
    series = period_coefficients(f, args.order)
    if args.json:
        print(json.dumps({"coefficients": [str(c) for c in series.coefficients]}, indent=2))
    else:
        print(series)
    return 0


def _cmd_period_givental(args):
    data = ToricCIData.from_json(_read(args.file))
    values = [regularized_coefficient(data, d) for d in range(args.order + 1)]
    if args.json:
        print(json.dumps({"coefficients": [str(v) for v in values]}, indent=2))
    else:
        for d, v in enumerate(values):
            print(f"{d}: {v}")
    return 0


def _cmd_period_restricted(args):
    data = ToricCIData.from_json(_read(args.file))
    if data.divisor_of_interest is None:
        raise ToricLGError("toric data JSON must carry divisor_of_interest for restricted periods")
    polys = [restricted_coefficient(data, data.divisor_of_interest, d) for d in range(args.order + 1)]
    if args.json:
        print(json.dumps({"coefficients": [str(p) for p in polys]}, indent=2))
    else:
        for d, p in enumerate(polys):
            print(f"{d}: {p}")
    return 0


def _finish_verify(args, report):
    if args.json:
        print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    else:
        print(render_text(report))
    if args.report_dir:
        for path in write_report(report, args.report_dir):
            print(f"wrote {path}")
    if args.golden:
        ok, message = golden_compare(report, args.golden)
        print(message)
        if not ok:
            return 1
    return 0 if report.verdict else 1


def _cmd_verify_contraction(args):
    fixtures = verify_mod.builtin_fixtures()
    if args.fixture not in fixtures:
        raise ToricLGError(f"unknown fixture {args.fixture!r}; available: {', '.join(sorted(fixtures))}")
    report = verify_mod.verify_toric_contraction(fixtures[args.fixture], order=args.order)
    return _finish_verify(args, report)


def _cmd_verify_example(args):
    report = verify_mod.run_example_40836(order=args.order)
    return _finish_verify(args, report)


def build_parser():
    parser = argparse.ArgumentParser(prog="toriclg", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    fan = sub.add_parser("fan", help="fan validation, blow-ups, polytopes")
    fan_sub = fan.add_subparsers(dest="subcommand", required=True)
    p = fan_sub.add_parser("check")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_fan_check)
    p = fan_sub.add_parser("blowup")
    p.add_argument("file")
    p.add_argument("--cone", required=True, help="comma-separated ray indices of the cone")
    p.add_argument("--ray", required=True, help="comma-separated coordinates of the new ray")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_fan_blowup)
    p = fan_sub.add_parser("polytope")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_fan_polytope)

    sing = sub.add_parser("sing", help="quotient singularity classification")
    sing_sub = sing.add_subparsers(dest="subcommand", required=True)
    p = sing_sub.add_parser("classify")
    p.add_argument("quotient", help="text form 1/n(a1,...,ak)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_sing_classify)
    p = sing_sub.add_parser("from-cone")
    p.add_argument("file")
    p.add_argument("--cone", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_sing_from_cone)

    con = sub.add_parser("contraction", help="classified contraction specs and charts")
    con_sub = con.add_subparsers(dest="subcommand", required=True)
    p = con_sub.add_parser("validate")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_contraction_validate)
    p = con_sub.add_parser("charts")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_contraction_charts)

    period = sub.add_parser("period", help="period and quantum-period coefficients")
    period_sub = period.add_subparsers(dest="subcommand", required=True)
    p = period_sub.add_parser("laurent")
    p.add_argument("--file")
    p.add_argument("--text")
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_period_laurent)
    p = period_sub.add_parser("givental")
    p.add_argument("--file", required=True)
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_period_givental)
    p = period_sub.add_parser("restricted")
    p.add_argument("--file", required=True)
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_period_restricted)

    ver = sub.add_parser("verify", help="end-to-end verification")
    ver_sub = ver.add_subparsers(dest="subcommand", required=True)
    p = ver_sub.add_parser("contraction")
    p.add_argument("--fixture", required=True)
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--json", action="store_true")
    p.add_argument("--golden")
    p.add_argument("--report-dir")
    p.set_defaults(func=_cmd_verify_contraction)
    p = ver_sub.add_parser("example-40836")
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--json", action="store_true")
    p.add_argument("--golden")
    p.add_argument("--report-dir")
    p.set_defaults(func=_cmd_verify_example)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ToricLGError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
