"""Command-line front end: single-case checks, grid scans, formula
self-verification and report emission.

Output is a single report per invocation, rendered as a plain table,
JSON or CSV (``--format``).  All values are exact; rationals print as
p/q.  Exit codes: 0 ran, 2 input error, 3 formula-verification failure.
The default seed for randomized verification comes from the
PROJNORM_SEED environment variable (falling back to 7) and can be
overridden with ``--seed``.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from importlib import resources

from .chern import ChernVector
from .exactalg import (
    DEFAULT_SEED,
    DataError,
    ParityError,
    SolverError,
    binom,
    parse_rational,
    ring_degree,
)
from .normality import (
    CurveCase,
    ci_example_scan,
    classify_p3_hypersurface,
    classify_p4_hypersurface,
    curve_thresholds,
    dimension_test,
    kko_audit,
    kko_curve_window,
    mrc_check,
    sectional_curve_criterion,
    surface_acm_criterion,
)
from .report import ScanReport
from .rr import (
    HypersurfaceP3,
    HypersurfaceP4,
    chi_surface,
    chi_threefold_hypersurface,
    solve_ulrich_chern,
    surface_model,
)
from .ulrich import casnati_c2, h0_powers_p3_hypersurface, ulrich_c3_p4_hypersurface
from .verify import formula_suite

_CHECK_COLUMNS = ("status", "k", "lhs", "relation", "rhs", "value", "threshold", "notes")


def _default_seed() -> int:
    return int(os.environ.get("PROJNORM_SEED", DEFAULT_SEED))


def _value_row(name: str, value):
    return (("value", name), (None, None, None, None, None, value, None, ""))


def _verdict_row(v):
    w = v.witness
    return (
        ("verdict", v.rule),
        (
            v.status_label,
            v.k,
            w.lhs if w else None,
            w.relation if w else None,
            w.rhs if w else None,
            None,
            v.theorem,
            "; ".join(v.notes),
        ),
    )


def _check_report(title: str, provenance: str, rows) -> ScanReport:
    return ScanReport.build(
        title=title,
        params=("kind", "name"),
        columns=_CHECK_COLUMNS,
        provenance=(provenance,) * len(_CHECK_COLUMNS),
        rows=rows,
    )


# ---------------------------------------------------------------------------
# check commands


def check_surface_hyp(d: int, r: int) -> ScanReport:
    V = HypersurfaceP3(d)
    S = V.surface()
    E = solve_ulrich_chern(V, r)
    counts = h0_powers_p3_hypersurface(d, r)
    h0 = r * d
    lat = S.lattice
    c1sq = ring_degree(lat, E.c1 * E.c1, 2)
    c1k = ring_degree(lat, E.c1 * S.canonical, 2)
    c2 = ring_degree(lat, E.c2, 2)
    v2, v3 = classify_p3_hypersurface(d, r)

    rows = [
        _value_row("d", d),
        _value_row("r", r),
        _value_row("h0", h0),
        _value_row("chi_structure_sheaf", S.chi_o),
        _value_row("c1_h_coefficient", Fraction(r * (d - 1), 2)),
        _value_row("c1_sq", c1sq),
        _value_row("c1_k", c1k),
        _value_row("c2", c2),
        _value_row("chi_bundle", chi_surface(S, E)),
        _value_row("h0_tensor2", counts.tensor2),
        _value_row("h0_sym2", counts.sym2),
        _value_row("h0_sym3", counts.sym3),
        _value_row("dim_tensor2_h0", h0 * h0),
        _value_row("dim_sym2_h0", binom(h0 + 1, 2)),
        _value_row("dim_sym3_h0", binom(h0 + 2, 3)),
        _value_row("slack3", v3.value("slack3")),
        _verdict_row(dimension_test(h0, 2, counts.tensor2, strong=True)),
        _verdict_row(v2),
        _verdict_row(v3),
    ]
    if r >= 2 and h0 >= r + 3:
        acm = surface_acm_criterion(h0, r, c1sq, c1k, c2)
        deg = acm.degeneracy
        rows.extend(
            [
                _verdict_row(acm.verdict),
                _value_row("degeneracy_sections", deg.sections),
                _value_row("degeneracy_z_length", deg.z_length),
                _value_row("degeneracy_curve_multiple", deg.curve_multiple),
                _value_row("degeneracy_curve_genus", deg.curve_genus),
                _value_row("degeneracy_h0_lower", deg.h0_lower),
                _value_row("degeneracy_h1_lower", deg.h1_lower),
                _value_row("degeneracy_h1_lower_rr", deg.h1_lower_rr),
            ]
        )
    else:
        rows.append(_value_row("acm_criterion_note", "skipped: needs rank >= 2 and h0 >= r+3"))
    rows.append(_verdict_row(sectional_curve_criterion(S, E)))
    return _check_report(
        f"surface hypersurface check (d={d}, r={r})",
        "rr.solve_ulrich_chern; ulrich.h0_powers_p3_hypersurface; normality.classify_p3_hypersurface",
        rows,
    )


def check_threefold_hyp(d: int, r: int) -> ScanReport:
    V = HypersurfaceP4(d)
    E = solve_ulrich_chern(V, r)
    ring = V.ring
    h0 = r * d
    strong, plain = classify_p4_hypersurface(d, r)
    rows = [
        _value_row("d", d),
        _value_row("r", r),
        _value_row("h0", h0),
        _value_row("c1_h_coefficient", Fraction(r * (d - 1), 2)),
        _value_row("c2_h", ring_degree(ring, E.c2, 2)),
        _value_row("c3", ring_degree(ring, E.c3, 3)),
        _value_row("c3_closed_form", ulrich_c3_p4_hypersurface(d, r)),
        _value_row("chi_bundle", chi_threefold_hypersurface(d, E)),
        _value_row("chi_tensor2", strong.value("chi_tensor2")),
        _value_row("chi_sym2", plain.value("chi_sym2")),
        _value_row("c3_tensor2", strong.value("c3_tensor2")),
        _value_row("c3_sym2", plain.value("c3_sym2")),
        _value_row("dim_tensor2_h0", h0 * h0),
        _value_row("dim_sym2_h0", binom(h0 + 1, 2)),
        _verdict_row(strong),
        _verdict_row(plain),
        _verdict_row(sectional_curve_criterion(V, E)),
    ]
    return _check_report(
        f"threefold hypersurface check (d={d}, r={r})",
        "rr.solve_ulrich_chern; ulrich.chi_powers_p4_hypersurface; normality.classify_p4_hypersurface",
        rows,
    )


def check_curve(args) -> ScanReport:
    case = CurveCase(
        genus=args.g,
        degree=args.d,
        rank=args.r,
        syzygy_levels=tuple(args.p or ()),
        clifford=args.cliff,
        very_ample=args.very_ample,
        curve_general=args.general,
        bundle_general=args.general,
    )
    rows = [
        _value_row("g", case.genus),
        _value_row("d", case.degree),
        _value_row("r", case.rank),
        _value_row("clifford_index", case.clifford),
        _value_row("slope", Fraction(case.degree + case.genus - 1)),
        _value_row("h0", case.rank * case.degree),
    ]
    rows.extend(_verdict_row(v) for v in curve_thresholds(case))
    if case.genus >= 3:
        rows.append(_verdict_row(mrc_check(case.genus, case.degree)))
        rows.extend(_verdict_row(v) for v in kko_curve_window(case.genus, case.degree))
    else:
        rows.append(_value_row("mrc_note", "skipped: needs genus >= 3"))
    return _check_report(
        f"curve check (g={case.genus}, d={case.degree}, r={case.rank})",
        "normality.curve_thresholds; normality.mrc_check; normality.kko_curve_window",
        rows,
    )


def _parse_divisor(text: str):
    parts = [parse_rational(chunk) for chunk in text.split(",")]
    if len(parts) == 1:
        return (parts[0], Fraction(0))
    if len(parts) == 2:
        return tuple(parts)
    raise ValueError("divisor spec must be 'a' (a*H) or 'a,b' (a*H + b*K)")


def check_surface(args) -> ScanReport:
    S = surface_model(args.h2, args.hk, args.k2, args.chi)
    c1 = _parse_divisor(args.c1)
    E = ChernVector.of(S.lattice, args.r, c1, args.c2)
    lat = S.lattice
    c1sq = ring_degree(lat, E.c1 * E.c1, 2)
    c1k = ring_degree(lat, E.c1 * S.canonical, 2)
    degree = S.degree
    h0 = args.h if args.h is not None else args.r * degree
    if isinstance(h0, Fraction):
        if h0.denominator != 1:
            raise DataError("h^0 must be an integer")
        h0 = int(h0)
    rows = [
        _value_row("h2", S.lattice.gram[0][0]),
        _value_row("hk", S.lattice.gram[0][1]),
        _value_row("k2", S.lattice.gram[1][1]),
        _value_row("chi_structure_sheaf", S.chi_o),
        _value_row("r", args.r),
        _value_row("h0", h0),
        _value_row("c1_sq", c1sq),
        _value_row("c1_k", c1k),
        _value_row("c2", args.c2),
        _value_row("casnati_c2_reference", casnati_c2(c1sq, c1k, args.r, degree, S.chi_o)),
    ]
    acm = surface_acm_criterion(h0, args.r, c1sq, c1k, args.c2)
    deg = acm.degeneracy
    rows.extend(
        [
            _verdict_row(acm.verdict),
            _value_row("degeneracy_sections", deg.sections),
            _value_row("degeneracy_z_length", deg.z_length),
            _value_row("degeneracy_curve_multiple", deg.curve_multiple),
            _value_row("degeneracy_curve_genus", deg.curve_genus),
            _value_row("degeneracy_h0_lower", deg.h0_lower),
            _value_row("degeneracy_h1_lower", deg.h1_lower),
            _value_row("degeneracy_h1_lower_rr", deg.h1_lower_rr),
            _verdict_row(sectional_curve_criterion(S, E)),
        ]
    )
    return _check_report(
        "general surface check",
        "normality.surface_acm_criterion; normality.sectional_curve_criterion",
        rows,
    )


def _load_presets() -> dict:
    text = resources.files("projnorm").joinpath("presets.cfg").read_text(encoding="utf-8")
    presets = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, _, spec = line.partition("=")
        tokens = spec.split()
        kind, kv = tokens[0], dict(token.split("=", 1) for token in tokens[1:])
        presets[name.strip()] = (kind, kv)
    return presets


def check_preset(name: str, r: int) -> ScanReport:
    presets = _load_presets()
    if name not in presets:
        raise ValueError(f"unknown preset {name!r}; available: {', '.join(sorted(presets))}")
    kind, kv = presets[name]
    if kind == "surface-hyp":
        return check_surface_hyp(int(kv["d"]), r)
    if kind == "threefold-hyp":
        return check_threefold_hyp(int(kv["d"]), r)
    raise ValueError(f"preset {name!r} has unsupported kind {kind!r}")


# ---------------------------------------------------------------------------
# scans


def scan_p3(dmax: int, rmax: int) -> ScanReport:
    rows = []
    for d in range(2, dmax + 1):
        for r in range(1, rmax + 1):
            if (r * (d - 1)) % 2:
                rows.append(((d, r), ("odd", None, None, None, None)))
                continue
            v2, v3 = classify_p3_hypersurface(d, r)
            rows.append(
                (
                    (d, r),
                    ("ok", v2.status_label, v2.witness.lhs, v2.witness.rhs, v3.value("slack3")),
                )
            )
    return ScanReport.build(
        title=f"surface hypersurface scan (2 <= d <= {dmax}, r <= {rmax})",
        params=("d", "r"),
        columns=("parity", "status", "dim_sym2_h0", "h0_sym2", "slack3"),
        provenance=("normality.classify_p3_hypersurface",) * 5,
        rows=rows,
        sort=True,
    )


def scan_p4(dmax: int, rmax: int) -> ScanReport:
    rows = []
    for d in range(4, dmax + 1):
        for r in range(1, rmax + 1):
            if (r * (d - 1)) % 2:
                rows.append(((d, r), ("odd", None, None, None, None, None, None)))
                continue
            strong, plain = classify_p4_hypersurface(d, r)
            rows.append(
                (
                    (d, r),
                    (
                        "ok",
                        strong.status_label,
                        strong.witness.lhs,
                        strong.witness.rhs,
                        plain.status_label,
                        plain.witness.lhs,
                        plain.witness.rhs,
                    ),
                )
            )
    return ScanReport.build(
        title=f"threefold hypersurface scan (4 <= d <= {dmax}, r <= {rmax})",
        params=("d", "r"),
        columns=(
            "parity",
            "strong_status",
            "dim_tensor2_h0",
            "chi_tensor2",
            "status",
            "dim_sym2_h0",
            "chi_sym2",
        ),
        provenance=("normality.classify_p4_hypersurface",) * 7,
        rows=rows,
        sort=True,
    )


def scan_curve(gmax: int, dmax: int) -> ScanReport:
    rows = []
    for g in range(0, gmax + 1):
        for d in range(1, dmax + 1):
            case = CurveCase(
                genus=g,
                degree=d,
                syzygy_levels=(2,),
                very_ample=True,
                curve_general=True,
                bundle_general=True,
            )
            by_rule = {v.rule: v.fired for v in curve_thresholds(case)}
            mrc = mrc_check(g, d).fired if g >= 3 else None
            rows.append(
                (
                    (g, d),
                    (
                        by_rule["pn-degree"],
                        by_rule["n1-koszul-degree"],
                        by_rule["np-degree-p2"],
                        by_rule["general-sharp-degree"],
                        mrc,
                    ),
                )
            )
    return ScanReport.build(
        title=f"curve threshold scan (g <= {gmax}, d <= {dmax}; generality flags assumed)",
        params=("g", "d"),
        columns=("pn", "n1_koszul", "np_p2", "general_sharp", "mrc"),
        provenance=("normality.curve_thresholds",) * 4 + ("normality.mrc_check",),
        rows=rows,
        sort=True,
    )


def kko_audit_report() -> ScanReport:
    rows = [
        ((row.h, row.j, row.a, row.b), (row.genus_floor, row.bound, row.ok))
        for row in kko_audit()
    ]
    return ScanReport.build(
        title="special line-bundle locus audit (low-degree window: d in {g, g+1} is always projectively normal for Ulrich line bundles, g >= 3)",
        params=("h", "j", "a", "b"),
        columns=("genus_floor", "bound", "ok"),
        provenance=("normality.kko_audit",) * 3,
        rows=rows,
        sort=True,
    )


# ---------------------------------------------------------------------------
# argument parsing and dispatch


def build_parser() -> argparse.ArgumentParser:
    # --format is accepted both before and after the subcommand; the
    # trailing occurrence wins
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("table", "json", "csv"), dest="format_leaf", default=None)

    parser = argparse.ArgumentParser(
        prog="projnorm",
        description="Exact projective-normality checks for Ulrich bundles on curves, surfaces and low-dimensional hypersurfaces.",
    )
    parser.add_argument("--format", choices=("table", "json", "csv"), dest="format_root", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    vf = sub.add_parser("verify-formulas", parents=[fmt], help="run the splitting-principle and Riemann-Roch self-checks")
    vf.add_argument("--ranks", default="1..6", help="rank range, e.g. 1..6")
    vf.add_argument("--trials", type=int, default=20)
    vf.add_argument("--seed", type=int, default=None)

    check = sub.add_parser("check", help="single-case verdicts")
    check_sub = check.add_subparsers(dest="target", required=True)

    curve = check_sub.add_parser("curve", parents=[fmt])
    curve.add_argument("--g", type=int, required=True)
    curve.add_argument("--d", type=int, required=True)
    curve.add_argument("--r", type=int, default=1)
    curve.add_argument("--p", type=int, action="append", help="syzygy level(s) p >= 2, repeatable")
    curve.add_argument("--cliff", type=int, default=None, help="Clifford index of the curve, if known")
    curve.add_argument("--general", action="store_true", help="treat curve and bundle as general")
    curve.add_argument("--very-ample", action="store_true", dest="very_ample")

    for name in ("surface-hyp", "threefold-hyp"):
        p = check_sub.add_parser(name, parents=[fmt])
        p.add_argument("--d", type=int, required=True)
        p.add_argument("--r", type=int, required=True)

    surf = check_sub.add_parser("surface", parents=[fmt])
    surf.add_argument("--h2", type=parse_rational, required=True)
    surf.add_argument("--hk", type=parse_rational, required=True)
    surf.add_argument("--k2", type=parse_rational, required=True)
    surf.add_argument("--chi", type=parse_rational, required=True)
    surf.add_argument("--r", type=int, required=True)
    surf.add_argument("--c1", required=True, help="divisor 'a' (a*H) or 'a,b' (a*H + b*K)")
    surf.add_argument("--c2", type=parse_rational, required=True)
    surf.add_argument("--h", type=int, default=None, help="h^0(E); defaults to r*H^2")

    preset = check_sub.add_parser("preset", parents=[fmt])
    preset.add_argument("name")
    preset.add_argument("--r", type=int, default=2)

    scan = sub.add_parser("scan", help="grid scans")
    scan_sub = scan.add_subparsers(dest="grid", required=True)
    ci = scan_sub.add_parser("ci", parents=[fmt])
    ci.add_argument("--rmax", type=int, required=True)
    p3 = scan_sub.add_parser("p3", parents=[fmt])
    p3.add_argument("--dmax", type=int, required=True)
    p3.add_argument("--rmax", type=int, required=True)
    p4 = scan_sub.add_parser("p4", parents=[fmt])
    p4.add_argument("--dmax", type=int, required=True)
    p4.add_argument("--rmax", type=int, required=True)
    cscan = scan_sub.add_parser("curve", parents=[fmt])
    cscan.add_argument("--gmax", type=int, required=True)
    cscan.add_argument("--dmax", type=int, required=True)

    sub.add_parser("kko-audit", parents=[fmt], help="audit the special line-bundle locus dimension bounds")
    return parser


def _parse_ranks(spec: str):
    lo, sep, hi = spec.partition("..")
    if not sep:
        value = int(spec)
        return range(value, value + 1)
    return range(int(lo), int(hi) + 1)


def dispatch(args) -> tuple:
    if args.command == "verify-formulas":
        seed = args.seed if args.seed is not None else _default_seed()
        report, ok = formula_suite(_parse_ranks(args.ranks), args.trials, seed)
        return report, 0 if ok else 3
    if args.command == "check":
        if args.target == "curve":
            return check_curve(args), 0
        if args.target == "surface-hyp":
            return check_surface_hyp(args.d, args.r), 0
        if args.target == "threefold-hyp":
            return check_threefold_hyp(args.d, args.r), 0
        if args.target == "surface":
            return check_surface(args), 0
        if args.target == "preset":
            return check_preset(args.name, args.r), 0
    if args.command == "scan":
        if args.grid == "ci":
            return ci_example_scan(args.rmax), 0
        if args.grid == "p3":
            return scan_p3(args.dmax, args.rmax), 0
        if args.grid == "p4":
            return scan_p4(args.dmax, args.rmax), 0
        if args.grid == "curve":
            return scan_curve(args.gmax, args.dmax), 0
    if args.command == "kko-audit":
        return kko_audit_report(), 0
    raise AssertionError("unhandled command")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = getattr(args, "format_leaf", None) or args.format_root or "table"
    try:
        report, code = dispatch(args)
    except ParityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DataError, SolverError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(report.render(fmt))
    return code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
