"""Command-line surface: generate / spectrum / verify / curve / plot.

All numeric payloads on standard output are exact (rational strings or
integers); wall-clock timings go to standard error. Identical inputs produce
byte-identical outputs.

Exit codes: 0 success, 1 failed verification, 2 invalid input or parameters,
3 undecided predicate, 4 no witness known.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import constructions as C
from .curves import (
    CurvePoly,
    circular_class,
    fit_bicircular_quartic,
    inversion_case_battery,
    invert_curve,
    singular_points_cubic,
    verify_inversion_case_table,
)
from .errors import (
    CaseMismatch,
    GroupGeometryMismatch,
    InvalidParameters,
    NoWitnessKnown,
    OrdinaryCirclesError,
    PredicateUndecided,
)
from .exactnum import Angle
from .geometry import (
    InversionSpec,
    circle_through,
    point_set_from_json,
    point_set_to_json,
)
from .spectrum import spectrum_fast, spectrum_naive
from .svg import render_svg

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INVALID = 2
EXIT_UNDECIDED = 3
EXIT_NO_WITNESS = 4


def _emit(payload, out_path=None):
    text = json.dumps(payload, indent=2) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_points(path):
    with open(path) as fh:
        obj = json.load(fh)
    return point_set_from_json(obj)


# ---------------- subcommands ----------------


def _cmd_generate(args) -> int:
    params = {}
    for key in ("n", "m", "special_k", "removed", "h"):
        val = getattr(args, key.replace("-", "_"), None)
        if val is not None:
            params[key] = val
    if args.r is not None:
        params["r"] = Fraction(args.r)
    if args.s is not None:
        params["s"] = Fraction(args.s)
    if args.variant is not None:
        params["variant"] = args.variant
    try:
        spec = C.ConstructionSpec(args.kind, **params)
        pts = C.generate(spec)
    except (InvalidParameters, NoWitnessKnown) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    payload = point_set_to_json(pts, meta={"construction": spec.to_json()})
    _emit(payload, args.out)
    return EXIT_OK


def _cmd_spectrum(args) -> int:
    try:
        pts, _meta = _load_points(args.file)
    except (OSError, ValueError, KeyError) as exc:
        sys.stderr.write(f"error: malformed point set: {exc}\n")
        return EXIT_INVALID
    try:
        if args.backend == "naive":
            report = spectrum_naive(pts)
        else:
            report = spectrum_fast(pts, workers=args.workers)
    except OrdinaryCirclesError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    sys.stderr.write(f"wall_time: {report.wall_time:.3f}s\n")
    if report.undecided_predicates:
        sys.stderr.write(
            f"error: {report.undecided_predicates} undecided predicates\n"
        )
        return EXIT_UNDECIDED
    if args.format == "csv":
        out = report.spectrum.to_csv()
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(out)
        else:
            sys.stdout.write(out)
    else:
        _emit(report.to_json(), args.out)
    return EXIT_OK


def _verdict_line(claim, expected, measured) -> tuple[str, bool]:
    ok = expected == measured
    verdict = "pass" if ok else "FAIL"
    return f"{claim}: expected {expected}, measured {measured} -> {verdict}", ok


def _cmd_verify(args) -> int:
    lines = []
    all_ok = True
    try:
        if args.theorem:
            if args.n is None:
                sys.stderr.write("error: --theorem needs --n\n")
                return EXIT_INVALID
            expected = C.theorem_value(args.theorem, args.n)
            spec = C.extremal_witness(args.theorem, args.n)
            pts = C.generate(spec)
            s = spectrum_fast(pts).spectrum
            measured = {
                "1.1": s.ordinary_circles,
                "1.2": s.ordinary_generalised,
                "1.3": s.four_point_generalised,
            }[args.theorem]
            line, ok = _verdict_line(
                f"theorem {args.theorem} at n={args.n} via {spec.kind}",
                expected,
                measured,
            )
            lines.append(line)
            all_ok &= ok
        elif args.construction:
            raw = args.construction
            try:
                obj = json.loads(raw)
            except json.JSONDecodeError:
                with open(raw) as fh:
                    obj = json.load(fh)
            spec = C.ConstructionSpec.from_json(obj)
            expected = C.expected_counts(spec)
            pts = C.generate(spec)
            s = spectrum_fast(pts).spectrum
            for name, exp, meas in (
                ("ordinary circles", expected.ordinary_circles, s.ordinary_circles),
                (
                    "ordinary generalised",
                    expected.ordinary_generalised,
                    s.ordinary_generalised,
                ),
                ("four-point generalised", expected.four_point, s.four_point_generalised),
            ):
                if exp is None:
                    lines.append(f"{spec.kind} {name}: no closed form, measured {meas}")
                    continue
                line, ok = _verdict_line(f"{spec.kind} {name}", exp, meas)
                lines.append(line)
                all_ok &= ok
        elif args.inversion_table:
            for name, curve, centre in inversion_case_battery():
                spec = InversionSpec.rational(centre[0], centre[1], 1)
                try:
                    label = verify_inversion_case_table(curve, spec)
                    lines.append(f"{name}: {label} -> pass")
                except CaseMismatch as exc:
                    lines.append(f"{name}: FAIL ({exc})")
                    all_ok = False
        elif args.group_laws:
            all_ok &= _verify_group_laws(lines)
        else:
            sys.stderr.write("error: nothing to verify\n")
            return EXIT_INVALID
    except NoWitnessKnown as exc:
        sys.stderr.write(f"error: no witness known: {exc}\n")
        return EXIT_NO_WITNESS
    except (InvalidParameters, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    except PredicateUndecided as exc:
        sys.stderr.write(f"error: undecided predicate: {exc}\n")
        return EXIT_UNDECIDED
    for line in lines:
        sys.stdout.write(line + "\n")
    return EXIT_OK if all_ok else EXIT_FAIL


def _verify_group_laws(lines) -> bool:
    import random

    from .groups import (
        ConcentricGroup,
        CubicPoint,
        EllipseGroup,
        acnodal_battery_host,
        cubic_add,
        cubic_concyclicity_check,
        cubic_neg,
        synthesize_coset,
    )

    ok = True
    rnd = random.Random(0)
    ell = EllipseGroup()
    mismatches = 0
    for _ in range(40):
        n = rnd.randint(5, 16)
        a, b, c = (Angle(rnd.randrange(n), n) for _ in range(3))
        d = -(a + b + c)
        try:
            if not ell.concyclic(a, b, c, d):
                mismatches += 1
            if ell.concyclic(a, b, c, d + Angle(1, 17)):
                mismatches += 1
        except GroupGeometryMismatch:
            mismatches += 1
    lines.append(
        f"ellipse criterion, 80 quadruples: {mismatches} mismatches -> "
        + ("pass" if mismatches == 0 else "FAIL")
    )
    ok &= mismatches == 0
    conc = ConcentricGroup()
    mismatches = 0
    for _ in range(40):
        n = rnd.randint(5, 16)
        a, b, c = (Angle(rnd.randrange(n), n) for _ in range(3))
        d = -(a + b + c)
        try:
            if not conc.concyclic(a, b, c, d):
                mismatches += 1
            if conc.concyclic(a, b, c, d + Angle(1, 19)):
                mismatches += 1
        except GroupGeometryMismatch:
            mismatches += 1
    lines.append(
        f"concentric criterion, 80 quadruples: {mismatches} mismatches -> "
        + ("pass" if mismatches == 0 else "FAIL")
    )
    ok &= mismatches == 0
    host = acnodal_battery_host()
    pts = synthesize_coset(host, 7, "cyclic", verify=False)
    cps = [CubicPoint.from_point(host, p) for p in pts[:4]]
    a, b, c, dd = cps
    axioms = (
        cubic_add(a, host.o) == a
        and cubic_add(a, cubic_neg(a)) == host.o
        and cubic_add(cubic_add(a, b), c) == cubic_add(a, cubic_add(b, c))
    )
    lines.append(f"cubic group axioms: {'pass' if axioms else 'FAIL'}")
    ok &= axioms
    d_good = cubic_add(host.omega, cubic_neg(cubic_add(cubic_add(a, b), c)))
    try:
        crit = cubic_concyclicity_check(a, b, c, d_good) and not cubic_concyclicity_check(
            a, b, c, dd
        )
    except GroupGeometryMismatch:
        crit = False
    lines.append(f"cubic four-point criterion: {'pass' if crit else 'FAIL'}")
    ok &= crit
    return ok


def _parse_center(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError("centre must be 'x,y'")
    return Fraction(parts[0]), Fraction(parts[1])


def _cmd_curve(args) -> int:
    try:
        if args.action == "fit":
            pts, _ = _load_points(args.file)
            report = fit_bicircular_quartic(pts, args.max_outliers)
            _emit(report.to_json(), args.out)
            return EXIT_OK
        with open(args.file) as fh:
            curve = CurvePoly.from_json(json.load(fh))
        if args.action == "invert":
            cx, cy = _parse_center(args.center)
            spec = InversionSpec.rational(cx, cy, Fraction(args.r2))
            out = invert_curve(spec, curve)
            _emit(out.to_json(), args.out)
        elif args.action == "classify":
            _emit({"class": repr(circular_class(curve))}, args.out)
        elif args.action == "singular":
            sings = singular_points_cubic(curve)
            _emit(
                {
                    "singular_points": [
                        {
                            "point": [str(c) for c in pt],
                            "kind": kind,
                        }
                        for pt, kind in sings
                    ]
                },
                args.out,
            )
        else:
            raise ValueError(f"unknown curve action {args.action!r}")
    except PredicateUndecided as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_UNDECIDED
    except (OSError, ValueError, KeyError, OrdinaryCirclesError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    return EXIT_OK


def _cmd_plot(args) -> int:
    try:
        pts, _ = _load_points(args.file)
    except (OSError, ValueError, KeyError) as exc:
        sys.stderr.write(f"error: malformed point set: {exc}\n")
        return EXIT_INVALID
    if len(pts) > 200:
        sys.stderr.write("error: render budget is 200 points\n")
        return EXIT_INVALID
    overlays = []
    if args.show_circles != "none":
        want = 3 if args.show_circles == "ordinary" else 4
        from .spectrum import spanned_circles

        try:
            _table, groups = spanned_circles(pts)
        except PredicateUndecided as exc:
            sys.stderr.write(f"error: {exc}\n")
            return EXIT_UNDECIDED
        for key in sorted(groups):
            if len(key) != want:
                continue
            try:
                overlays.append(circle_through(pts[key[0]], pts[key[1]], pts[key[2]]))
            except OrdinaryCirclesError:
                continue
    svg = render_svg([p.approx() for p in pts], overlays)
    with open(args.out, "w") as fh:
        fh.write(svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ordinarycircles",
        description="Exact spectra and extremal configurations of ordinary circles",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate a construction point set")
    g.add_argument("kind", choices=sorted(C._KINDS))
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--r", type=str)
    g.add_argument("--s", type=str)
    g.add_argument("--special-k", dest="special_k", type=int)
    g.add_argument("--removed", type=int)
    g.add_argument("--variant", choices=["cyclic", "Z_half_times_Z2"])
    g.add_argument("--h", type=int)
    g.add_argument("--out")
    g.set_defaults(func=_cmd_generate)

    s = sub.add_parser("spectrum", help="count the incidence spectrum of a point set")
    s.add_argument("file")
    s.add_argument("--backend", choices=["naive", "fast"], default="fast")
    s.add_argument("--format", choices=["json", "csv"], default="json")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out")
    s.set_defaults(func=_cmd_spectrum)

    v = sub.add_parser("verify", help="verify counts against the value tables")
    v.add_argument("--theorem", choices=["1.1", "1.2", "1.3"])
    v.add_argument("--n", type=int)
    v.add_argument("--construction", help="construction spec JSON (inline or file)")
    v.add_argument("--inversion-table", action="store_true")
    v.add_argument("--group-laws", action="store_true")
    v.set_defaults(func=_cmd_verify)

    c = sub.add_parser("curve", help="curve algebra: invert/classify/singular/fit")
    c.add_argument("action", choices=["invert", "classify", "singular", "fit"])
    c.add_argument("file")
    c.add_argument("--center", default="0,0")
    c.add_argument("--r2", default="1")
    c.add_argument("--max-outliers", dest="max_outliers", type=int, default=0)
    c.add_argument("--out")
    c.set_defaults(func=_cmd_curve)

    p = sub.add_parser("plot", help="render a point set to SVG")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.add_argument(
        "--show-circles",
        dest="show_circles",
        choices=["ordinary", "4point", "none"],
        default="none",
    )
    p.set_defaults(func=_cmd_plot)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
