"""Command-line interface.

Exit codes: 0 success, 1 validation/domain failure, 2 usage error.
Scheme arguments accept a catalog name, a JSON file path, or ``-`` (stdin).
``--exact`` switches rational arithmetic on wherever the input permits;
``--json`` selects machine output for the reporting commands.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import io as scheme_io
from .catalog import catalog_get, catalog_names
from .exceptions import SchemeError, UnknownSchemeError
from .integrate import BENCHMARKS, error_at_end, solve
from .matrices import augment, factorize, identity_residuals, build_G
from .order_conditions import (
    CONDITION_LABELS,
    ORDER_OF,
    classify_order,
    fifth_order_breaking,
    tall_tree,
)
from .reflection import reflect_scheme, wcurve_scan
from .schemes import (
    ButcherTableau,
    DForm,
    TwoNScheme,
    butcher_to_twon,
    dform_to_butcher,
    dform_to_twon,
    twon_to_butcher,
    twon_to_dform,
    validate,
)
from .search import (
    SearchConfig,
    branch_walk,
    newton_solve,
    dform_to_vector,
)
from .stability import stability_region


class UsageError(Exception):
    """Bad flag combination or malformed flag value (exit code 2)."""


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 2
    except SchemeError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except (ValueError, OSError, json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lsrk",
        description="Two-register Runge-Kutta schemes: verify, reflect, "
        "convert, factorize, integrate, and search.",
    )
    parser.add_argument("--exact", action="store_true",
                        help="use exact rational arithmetic where inputs permit")
    parser.add_argument("--json", action="store_true",
                        help="machine-readable output for reporting commands")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list or show built-in schemes")
    catsub = p.add_subparsers(dest="catalog_command", required=True)
    pl = catsub.add_parser("list", help="list catalog names")
    pl.set_defaults(func=_cmd_catalog_list)
    ps = catsub.add_parser("show", help="print a catalog scheme as JSON")
    ps.add_argument("name")
    ps.set_defaults(func=_cmd_catalog_show)

    p = sub.add_parser("verify", help="order-condition report for a scheme")
    p.add_argument("scheme")
    p.add_argument("--tol", type=float, default=None,
                   help="classification tolerance (default: exact 0 / 1e-9)")
    p.add_argument("--tall-trees", type=int, default=0, metavar="N",
                   help="also print Tr[P A^n C] for n up to N")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("reflect", help="emit the mirror scheme")
    p.add_argument("scheme")
    p.add_argument("--check-order", action="store_true",
                   help="report order and tall-tree conservation on stderr")
    p.set_defaults(func=_cmd_reflect)

    p = sub.add_parser("convert", help="convert between representations")
    p.add_argument("scheme")
    p.add_argument("--to", required=True, choices=("butcher", "2n", "dform"))
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("factorize", help="emit F, D, G and identity residuals")
    p.add_argument("scheme")
    p.set_defaults(func=_cmd_factorize)

    p = sub.add_parser("integrate", help="fixed-step benchmark integration")
    p.add_argument("--scheme", required=True)
    p.add_argument("--problem", type=int, required=True, choices=(1, 2, 3))
    p.add_argument("--h", type=float, default=None)
    p.add_argument("--sweep", default=None, metavar="HMIN:HMAX:N",
                   help="geometric sweep of step sizes, CSV output")
    p.add_argument("--out", default=None, help="CSV path (default stdout)")
    p.set_defaults(func=_cmd_integrate)

    p = sub.add_parser("stability", help="stability-region grid as CSV")
    p.add_argument("--scheme", required=True)
    p.add_argument("--grid", default=None, metavar="RE0:RE1:IM0:IM1:N")
    p.add_argument("--out", default=None, help="CSV path (default stdout)")
    p.add_argument("--boundary-out", default=None,
                   help="also write marching-squares boundary segments")
    p.set_defaults(func=_cmd_stability)

    p = sub.add_parser("scan", help="walk a five-stage solution branch")
    p.add_argument("--seed", required=True, help="scheme (catalog name/file/-)")
    p.add_argument("--param", default="c2", choices=("c2",),
                   help="walk parameter (projection axis)")
    p.add_argument("--eps", type=float, default=0.02, help="walk step size")
    p.add_argument("--steps", type=int, default=2000, help="points per direction")
    p.add_argument("--direction", default="both", choices=("+1", "-1", "both"))
    p.add_argument("--out", default=None, help="CSV path (default stdout)")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("solve54", help="Newton-solve the five-stage system at fixed c2")
    p.add_argument("--fix", required=True, metavar="c2=VALUE")
    p.add_argument("--x0", required=True,
                   help="initial guess: scheme (catalog/file/-) or JSON 7-array")
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=_cmd_solve54)

    p = sub.add_parser("wcurve", help="scan the three-stage scheme curve")
    p.add_argument("--min", type=float, required=True, dest="c2_min")
    p.add_argument("--max", type=float, required=True, dest="c2_max")
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--out", default=None, help="CSV path (default stdout)")
    p.set_defaults(func=_cmd_wcurve)

    return parser


# -- scheme loading -----------------------------------------------------------


def _load(ref: str, exact: bool):
    """Resolve a scheme reference: '-', a file path, or a catalog name.
    Returns (scheme object, name, claimed order)."""
    if ref == "-":
        return scheme_io.loads(sys.stdin.read(), exact=True if exact else None)
    path = Path(ref)
    if path.exists():
        return scheme_io.loads(path.read_text(), exact=True if exact else None)
    try:
        entry = catalog_get(ref)
    except UnknownSchemeError:
        if ref.endswith(".json"):
            raise OSError(f"no such file: {ref}") from None
        raise
    want = True if exact else None
    if entry.kind == "dform":
        return entry.dform(want), entry.name, entry.claimed_order
    return entry.twon(want), entry.name, entry.claimed_order


def _as_butcher(obj) -> ButcherTableau:
    if isinstance(obj, ButcherTableau):
        return obj
    if isinstance(obj, TwoNScheme):
        return twon_to_butcher(obj)
    return dform_to_butcher(obj)


def _as_twon(obj) -> TwoNScheme:
    if isinstance(obj, TwoNScheme):
        return obj
    if isinstance(obj, ButcherTableau):
        return butcher_to_twon(obj)
    return dform_to_twon(obj)


def _as_dform(obj) -> DForm:
    if isinstance(obj, DForm):
        return obj
    return twon_to_dform(_as_twon(obj))


def _write_csv(path, header, rows, comments=()):
    out = open(path, "w", newline="") if path else sys.stdout
    try:
        for line in comments:
            out.write(f"# {line}\n")
        writer = csv.writer(out)
        writer.writerow(header)
        writer.writerows(rows)
    finally:
        if path:
            out.close()


# -- commands -----------------------------------------------------------------


def _cmd_catalog_list(args) -> int:
    for name in catalog_names():
        print(name)
    return 0


def _cmd_catalog_show(args) -> int:
    entry = catalog_get(args.name)
    obj = entry.dform(True if args.exact else None) if entry.kind == "dform" \
        else entry.twon(True if args.exact else None)
    print(scheme_io.dumps(obj, name=entry.name, order=entry.claimed_order))
    return 0


def _cmd_verify(args) -> int:
    obj, name, claimed = _load(args.scheme, args.exact)
    tab = _as_butcher(obj)
    vrep = validate(tab, args.tol if args.tol is not None else (0 if tab.exact else 1e-12))
    report = classify_order(tab, args.tol)
    talls = {}
    if args.tall_trees:
        aug = augment(tab)
        c_ext = list(tab.c) + [1]
        for n in range(1, min(args.tall_trees, tab.s - 1) + 1):
            talls[n] = tall_tree(aug, c_ext, n)
    breaking = fifth_order_breaking(tab)
    ok = vrep.valid and (claimed is None or report.order >= claimed)
    payload = {
        "name": name,
        "s": tab.s,
        "valid": vrep.valid,
        "max_row_sum_residual": _num(vrep.max_row_sum_residual),
        "order": report.order,
        "claimed_order": claimed,
        "tol": _num(report.tol),
        "residuals": {k: _num(v) for k, v in report.residuals.items()},
        "tall_trees": {str(n): _num(v) for n, v in talls.items()},
        "fifth_order_breaking": _num(breaking),
    }
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(f"scheme {name or '<anonymous>'}: {tab.s} stages")
        print(f"  valid tableau: {vrep.valid} "
              f"(max row-sum residual {_fmt(vrep.max_row_sum_residual)})")
        print(f"  classified order: {report.order}"
              + (f" (claimed {claimed})" if claimed is not None else "")
              + f" at tol {_fmt(report.tol)}")
        print("  condition residuals:")
        for k in CONDITION_LABELS:
            print(f"    order {ORDER_OF[k]}  {k:<5} {_fmt(report.residuals[k])}")
        for n, v in talls.items():
            print(f"  tall tree n={n}: {_fmt(v)}")
        print(f"  fifth-order breaking value: {_fmt(breaking)} (1/20 at order 5)")
    return 0 if ok else 1


def _cmd_reflect(args) -> int:
    obj, name, claimed = _load(args.scheme, args.exact)
    sch = _as_twon(obj)
    refl = reflect_scheme(sch)
    out_name = f"{name}~reflected" if name else "reflected"
    print(scheme_io.dumps(refl, name=out_name, order=claimed))
    if args.check_order:
        tab, rtab = twon_to_butcher(sch), twon_to_butcher(refl)
        rep, rrep = classify_order(tab), classify_order(rtab)
        lines = [f"order: original {rep.order}, reflected {rrep.order}"]
        aug, raug = augment(tab), augment(rtab)
        c_ext = list(tab.c) + [1]
        rc_ext = list(rtab.c) + [1]
        for n in range(1, tab.s):
            t0 = tall_tree(aug, c_ext, n)
            t1 = tall_tree(raug, rc_ext, n)
            lines.append(f"tall tree n={n}: delta {_fmt(abs(t0 - t1))}")
        print("conservation report:", file=sys.stderr)
        for line in lines:
            print(f"  {line}", file=sys.stderr)
    return 0


def _cmd_convert(args) -> int:
    obj, name, claimed = _load(args.scheme, args.exact)
    target = {"butcher": _as_butcher, "2n": _as_twon, "dform": _as_dform}[args.to]
    print(scheme_io.dumps(target(obj), name=name, order=claimed))
    return 0


def _cmd_factorize(args) -> int:
    obj, name, _ = _load(args.scheme, args.exact)
    df = _as_dform(obj)
    F, D = factorize(df)
    payload = {
        "name": name,
        "F": [[_num(x) for x in row] for row in F],
        "D": [[_num(x) for x in row] for row in D],
        "G": [[_num(x) for x in row] for row in build_G(df.d)],
        "residuals": {k: _num(v) for k, v in identity_residuals(df).items()},
    }
    print(json.dumps(payload, indent=2))
    return 0


def _cmd_integrate(args) -> int:
    obj, name, _ = _load(args.scheme, args.exact)
    method = _as_twon(obj) if not isinstance(obj, ButcherTableau) else obj
    if isinstance(method, TwoNScheme):
        method = TwoNScheme(
            s=method.s,
            A=[float(x) for x in method.A],
            B=[float(x) for x in method.B],
            c=[float(x) for x in method.c],
        )
    problem = BENCHMARKS[args.problem]
    if args.sweep:
        h_min, h_max, count = args.sweep.split(":")
        hs = np.geomspace(float(h_min), float(h_max), int(count))
        rows = []
        for h in hs:
            res = solve(problem, method, float(h))
            err = abs(res.y_end - problem.exact_at_end)
            rows.append((f"{h:.12g}", f"{err:.12g}", res.steps))
        _write_csv(args.out, ("h", "error", "steps"), rows)
        return 0
    if args.h is None:
        raise UsageError("either --h or --sweep is required")
    res = solve(problem, method, args.h)
    err = error_at_end(problem, method, args.h)
    print(json.dumps({
        "name": name, "problem": args.problem, "h": args.h,
        "steps": res.steps, "y_end": res.y_end, "error": err,
    }, indent=2))
    return 0


def _cmd_stability(args) -> int:
    obj, _, _ = _load(args.scheme, args.exact)
    tab = _as_butcher(obj)
    if args.grid:
        re0, re1, im0, im1, n = args.grid.split(":")
        re_grid = np.linspace(float(re0), float(re1), int(n))
        im_grid = np.linspace(float(im0), float(im1), int(n))
        region = stability_region(tab, re_grid, im_grid)
    else:
        region = stability_region(tab)
    rows = (
        (f"{re:.12g}", f"{im:.12g}", f"{region.abs_r[j, i]:.12g}",
         int(region.inside[j, i]))
        for j, im in enumerate(region.im)
        for i, re in enumerate(region.re)
    )
    _write_csv(args.out, ("re", "im", "absR", "inside"), rows)
    if args.boundary_out:
        seg_rows = [
            (f"{p0[0]:.12g}", f"{p0[1]:.12g}", f"{p1[0]:.12g}", f"{p1[1]:.12g}")
            for p0, p1 in region.boundary
        ]
        _write_csv(args.boundary_out, ("re0", "im0", "re1", "im1"), seg_rows)
    return 0


def _cmd_scan(args) -> int:
    obj, name, _ = _load(args.seed, args.exact)
    df = _as_dform(obj)
    if df.s != 5:
        raise ValueError("scan needs a five-stage scheme")
    cfg = SearchConfig(eps_walk=args.eps, max_steps=args.steps)
    directions = {"+1": (1,), "-1": (-1,), "both": (1, -1)}[args.direction]
    header = ("c2", "c5", "c3", "c4", "d2", "d3", "d4", "d5", "residual")
    rows = []
    comments = [f"seed: {name or args.seed}; eps={args.eps}"]
    for direction in directions:
        walk = branch_walk(df, direction, cfg)
        comments.append(
            f"direction {direction:+d}: {len(walk.points)} points, "
            f"{len(walk.gaps)} gaps at {walk.gaps}"
        )
        for pt in walk.points:
            x = dform_to_vector(pt.dform)
            rows.append(tuple(f"{v:.15g}" for v in
                              (x[0], x[3], x[1], x[2], x[4], x[5], x[6], x[7]))
                        + (f"{pt.residual_norm:.3g}",))
    _write_csv(args.out, header, rows, comments=comments)
    return 0


def _cmd_solve54(args) -> int:
    key, _, value = args.fix.partition("=")
    if key.strip() != "c2" or not value:
        raise UsageError("--fix must look like c2=VALUE")
    c2 = float(value)
    x0_text = args.x0.strip()
    if x0_text.startswith("["):
        x0 = json.loads(x0_text)
        if len(x0) != 7:
            raise UsageError("--x0 JSON array must have 7 entries (c3,c4,c5,d2..d5)")
    else:
        obj, _, _ = _load(args.x0, args.exact)
        df = _as_dform(obj)
        if df.s != 5:
            raise ValueError("solve54 needs a five-stage scheme")
        x0 = dform_to_vector(df)[1:]
    cfg = SearchConfig(tol=args.tol)
    point = newton_solve(np.asarray(x0, dtype=float), c2, cfg)
    print(scheme_io.dumps(point.dform, name=f"solve54(c2={c2})"))
    print(f"residual norm: {point.residual_norm:.3e}", file=sys.stderr)
    return 0


def _cmd_wcurve(args) -> int:
    points = wcurve_scan(args.c2_min, args.c2_max, args.step)
    rows = [(f"{c2:.15g}", f"{c3:.15g}", branch) for c2, c3, branch in points]
    _write_csv(args.out, ("c2", "c3", "branch"), rows)
    return 0


def _num(x):
    """JSON-friendly number: exact rationals stay strings, floats stay floats."""
    return float(x) if isinstance(x, float) else scheme_io.format_number(x)


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.6e}"
    return f"{x} ({float(x):.6e})" if x else "0"


if __name__ == "__main__":
    sys.exit(main())
