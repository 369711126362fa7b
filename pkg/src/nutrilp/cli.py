"""Command-line front door: solve a least-cost diet, score a guess, run
what-if price experiments, draw feasible regions, and emit report tables.

Exit codes are a contract: 0 success, 1 input error, 2 infeasible.
Reports go to stdout, diagnostics to stderr. --json output is the same
canonical JSON the HTTP service returns for the matching request.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from importlib import resources
from pathlib import Path

from . import serialize
from .diet import (
    DietInfeasibleError,
    StructuralInfeasibilityError,
    apply_price_overrides,
    solve_diet,
    whatif_price,
)
from .evaluate import Band, evaluate
from .geometry import build_region, min_cost_vertex, project_filler, region_geometry, render_region, two_food_halfplanes, GeometryError
from .io import DataFormatError, canonical_json, load_foods, load_plan, load_requirements
from .model import DietPlan, ModelError, UnknownFoodError, plan_to_grams
from .nutrients import ENERGY, unit_of

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2

DATA_DIR_ENV = "NUTRILP_DATA_DIR"

BAND_GLYPHS = {
    Band.DEFICIENT_SEVERE: "--",
    Band.DEFICIENT_MILD: "-",
    Band.ADEQUATE_LOW: "+",
    Band.ADEQUATE_MID: "++",
    Band.ADEQUATE_HIGH: "+++",
    Band.AT_BOUND: "=",
    Band.EXCESS_MILD: "^",
    Band.EXCESS_SEVERE: "^^",
}


class InputError(Exception):
    pass


def bundled_data_dir() -> Path:
    return Path(str(resources.files("nutrilp") / "data"))


def _resolve_file(raw: str, kind: str) -> Path:
    """A literal path, or a name looked up in $NUTRILP_DATA_DIR then the
    bundled fixtures (kind is 'foods' or 'requirements')."""
    p = Path(raw)
    if p.exists():
        return p
    name = raw if raw.endswith(".csv") else raw + ".csv"
    candidates = []
    env = os.environ.get(DATA_DIR_ENV)
    if env:
        candidates.append(Path(env) / kind / name)
    candidates.append(bundled_data_dir() / kind / name)
    for candidate in candidates:
        if candidate.exists():
            return candidate
    raise InputError(f"{kind} file not found: {raw!r} (tried {', '.join(map(str, candidates))})")


def _load_foods_arg(raw: str):
    path = _resolve_file(raw, "foods")
    dataset = load_foods(path, provenance=str(path))
    for warning in dataset.warnings:
        print(f"warning: {path}: {warning}", file=sys.stderr)
    return dataset


def _load_reqs_arg(raw: str):
    return load_requirements(_resolve_file(raw, "requirements"))


def _parse_assignments(pairs: list[str], what: str) -> dict[str, float]:
    out: dict[str, float] = {}
    for pair in pairs:
        if "=" not in pair:
            raise InputError(f"{what} must look like id=value, got {pair!r}")
        fid, _, raw = pair.partition("=")
        try:
            out[fid.strip()] = float(raw)
        except ValueError:
            raise InputError(f"{what} {pair!r}: {raw!r} is not a number") from None
    return out


def _table(rows: list[list[str]], header: list[str]) -> str:
    widths = [len(h) for h in header]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    def fmt(cells):
        return "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    lines = [fmt(header), fmt(["-" * w for w in widths])]
    lines += [fmt(r) for r in rows]
    return "\n".join(lines)


def cmd_solve(args) -> int:
    dataset = _load_foods_arg(args.foods)
    reqs = _load_reqs_arg(args.reqs)
    foods = list(dataset.foods)
    if args.price:
        foods = apply_price_overrides(foods, _parse_assignments(args.price, "--price"))
    try:
        solved = solve_diet(foods, reqs)
    except StructuralInfeasibilityError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        if args.json:
            print(canonical_json({"status": "infeasible", "conflicts": [str(exc)]}), end="")
        return EXIT_INFEASIBLE
    except DietInfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        if args.json:
            print(canonical_json({"status": "infeasible", "conflicts": exc.conflicts}), end="")
        return EXIT_INFEASIBLE

    if args.json:
        print(canonical_json(serialize.solved_diet_dict(solved)), end="")
        return EXIT_OK

    grams = plan_to_grams(solved.plan, foods)
    rows = [
        [fid, f"{qty:.2f}", f"{grams[fid]:.1f}"]
        for fid, qty in sorted(solved.plan.items())
    ]
    print(_table(rows, ["food", "servings/day", "g/day"]))
    print(f"\ntotal cost: {solved.cost:.2f} per day")
    print("\nbinding constraints (shadow price per unit):")
    for b in solved.binding:
        print(
            f"  {b.nutrient} {b.kind.value} {b.bound:g} {unit_of(b.nutrient)}"
            f"  ->  {b.shadow_price:+.4f}"
        )
    return EXIT_OK


def cmd_evaluate(args) -> int:
    dataset = _load_foods_arg(args.foods)
    reqs = _load_reqs_arg(args.reqs)
    if args.plan:
        plan = load_plan(args.plan)
    else:
        plan = DietPlan(_parse_assignments(args.set or [], "--set"))
    report = evaluate(plan, list(dataset.foods), reqs)
    if args.json:
        print(canonical_json(serialize.adequacy_dict(report)), end="")
        return EXIT_OK
    rows = []
    for row in report.rows:
        rows.append(
            [
                row.nutrient,
                f"{row.delivered:.2f} {unit_of(row.nutrient)}",
                "" if row.percent_of_lower is None else f"{row.percent_of_lower:.1f}%",
                "" if row.percent_of_upper is None else f"{row.percent_of_upper:.1f}%",
                f"{BAND_GLYPHS[row.band]} {row.band.value}",
            ]
        )
    print(_table(rows, ["nutrient", "delivered", "% of lower", "% of upper", "band"]))
    print(
        f"\nenergy: {report.energy_delivered:.1f} / {report.energy_target:g} kcal"
        f" ({report.energy_percent:.1f}%)"
    )
    print(f"cost: {report.cost:.2f} per day")
    print("fully adequate: " + ("yes" if report.fully_adequate else "no"))
    return EXIT_OK


def cmd_whatif(args) -> int:
    dataset = _load_foods_arg(args.foods)
    reqs = _load_reqs_arg(args.reqs)
    overrides = _parse_assignments(args.price, "--price")
    try:
        report = whatif_price(list(dataset.foods), reqs, overrides)
    except (StructuralInfeasibilityError, DietInfeasibleError) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    if args.json:
        print(canonical_json(serialize.whatif_dict(report)), end="")
        return EXIT_OK
    print(f"cost before: {report.before.cost:.2f}")
    print(f"cost after:  {report.after.cost:.2f}  (change {report.cost_change:+.2f})")
    print(f"entering: {', '.join(report.entering) or '(none)'}")
    print(f"leaving:  {', '.join(report.leaving) or '(none)'}")
    if report.binding_added or report.binding_removed:
        print(f"binding set changes: +{list(report.binding_added)} -{list(report.binding_removed)}")
    rows = []
    for fid in sorted(set(report.before.plan.servings) | set(report.after.plan.servings)):
        rows.append([fid, f"{report.before.plan[fid]:.2f}", f"{report.after.plan[fid]:.2f}"])
    print()
    print(_table(rows, ["food", "before", "after"]))
    return EXIT_OK


def _axes_foods(dataset, axes: str):
    parts = [p.strip() for p in axes.split(",")]
    if len(parts) != 2:
        raise InputError("--axes must name two food ids as idx,idy")
    index = {f.id: f for f in dataset.foods}
    missing = [p for p in parts if p not in index]
    if missing:
        raise InputError(f"unknown food id(s) in --axes: {', '.join(missing)}")
    return index[parts[0]], index[parts[1]]


def cmd_region(args) -> int:
    dataset = _load_foods_arg(args.foods)
    reqs = _load_reqs_arg(args.reqs)
    food_x, food_y = _axes_foods(dataset, args.axes)
    halfplanes = two_food_halfplanes(food_x, food_y, reqs, include_energy=not args.no_energy)
    if args.filler:
        assignment = _parse_assignments([args.filler], "--filler")
        (fid, servings), = assignment.items()
        index = {f.id: f for f in dataset.foods}
        if fid not in index:
            raise InputError(f"unknown filler food id {fid!r}")
        halfplanes = project_filler(halfplanes, index[fid], servings)
    region = build_region(halfplanes)
    prices = (food_x.price_per_serving, food_y.price_per_serving)
    cost_values = []
    if not region.empty and region.vertices:
        try:
            _, cost = min_cost_vertex(region, prices)
            cost_values = [cost]
        except GeometryError:
            pass
    if args.json:
        print(canonical_json(region_geometry(region, prices, cost_values)), end="")
    svg = render_region(
        region,
        prices,
        cost_values,
        title=f"{food_x.id} vs {food_y.id}",
        axis_labels=(f"{food_x.id} (servings/day)", f"{food_y.id} (servings/day)"),
    )
    if args.out:
        Path(args.out).write_text(svg, encoding="utf-8")
        print(f"wrote {args.out}", file=sys.stderr)
    elif not args.json:
        print(svg, end="")
    return EXIT_OK


def cmd_report(args) -> int:
    dataset = _load_foods_arg(args.foods)
    reqs = _load_reqs_arg(args.reqs)
    foods = list(dataset.foods)
    plans: dict[str, DietPlan] = {}
    for raw in args.plans:
        path = Path(raw)
        if not path.exists():
            raise InputError(f"plan file not found: {raw}")
        plans[path.stem] = load_plan(path)
    try:
        solved = solve_diet(foods, reqs)
    except (StructuralInfeasibilityError, DietInfeasibleError) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    plans["solved"] = solved.plan

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    plan_names = list(plans)

    def write(name: str, header: list[str], rows: list[list]) -> None:
        with open(out_dir / name, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)

    # Table 1: quantity of each food under each plan, then total cost.
    rows = []
    for food in foods:
        rows.append([food.id] + [f"{plans[p][food.id]:.4f}" for p in plan_names])
    from .model import plan_cost

    rows.append(["total_cost"] + [f"{plan_cost(plans[p], foods):.4f}" for p in plan_names])
    write("table1_quantities.csv", ["food"] + plan_names, rows)

    # Table 2: nutrient adequacy of each plan.
    reports = {p: evaluate(plans[p], foods, reqs) for p in plan_names}
    header = ["nutrient", "unit", "lower_bound", "upper_bound"]
    for p in plan_names:
        header += [f"{p}_delivered", f"{p}_pct_lower", f"{p}_pct_upper"]
    rows = []
    energy_row = ["energy", "kcal", f"{reqs.energy_kcal:g}", f"{reqs.energy_kcal:g}"]
    for p in plan_names:
        rep = reports[p]
        energy_row += [f"{rep.energy_delivered:.4f}", f"{rep.energy_percent:.2f}", f"{rep.energy_percent:.2f}"]
    rows.append(energy_row)
    for i, row0 in enumerate(reports[plan_names[0]].rows):
        lo = reqs.lower_bound(row0.nutrient)
        hi = reqs.upper_bound(row0.nutrient)
        row = [
            row0.nutrient,
            unit_of(row0.nutrient),
            "" if lo is None else f"{lo:g}",
            "" if hi is None else f"{hi:g}",
        ]
        for p in plan_names:
            r = reports[p].rows[i]
            row += [
                f"{r.delivered:.4f}",
                "" if r.percent_of_lower is None else f"{r.percent_of_lower:.2f}",
                "" if r.percent_of_upper is None else f"{r.percent_of_upper:.2f}",
            ]
        rows.append(row)
    write("table2_adequacy.csv", header, rows)

    # Table 3: composition of the solved least-cost diet.
    rows = [["energy", "kcal", f"{solved.nutrients.get(ENERGY, 0.0):.4f}"]]
    for nutrient, amount in solved.nutrients.items():
        if nutrient == ENERGY:
            continue
        rows.append([nutrient, unit_of(nutrient), f"{amount:.4f}"])
    write("table3_solved_composition.csv", ["nutrient", "unit", "delivered"], rows)
    print(f"wrote {out_dir}/table1_quantities.csv, table2_adequacy.csv, table3_solved_composition.csv", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nutrilp",
        description="Least-cost nutrient-adequate diet engine",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute the least-cost adequate diet")
    p.add_argument("--foods", required=True)
    p.add_argument("--reqs", required=True)
    p.add_argument("--price", action="append", default=[], metavar="ID=PRICE",
                   help="override a price before solving (repeatable)")
    _output_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("evaluate", help="score a guess against the requirements")
    p.add_argument("--foods", required=True)
    p.add_argument("--reqs", required=True)
    p.add_argument("--plan", help="plan JSON file ({id: servings} or a session)")
    p.add_argument("--set", action="append", metavar="ID=QTY",
                   help="inline plan entry (repeatable)")
    _output_flags(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("whatif", help="re-solve under new prices and diff")
    p.add_argument("--foods", required=True)
    p.add_argument("--reqs", required=True)
    p.add_argument("--price", action="append", required=True, metavar="ID=PRICE")
    _output_flags(p)
    p.set_defaults(func=cmd_whatif)

    p = sub.add_parser("region", help="draw the two-food feasible region")
    p.add_argument("--foods", required=True)
    p.add_argument("--reqs", required=True)
    p.add_argument("--axes", required=True, metavar="IDX,IDY")
    p.add_argument("--filler", metavar="ID=QTY",
                   help="project a third food at a fixed serving level")
    p.add_argument("--no-energy", action="store_true",
                   help="omit the energy line (micronutrient bounds only)")
    p.add_argument("--out", metavar="FILE.svg")
    p.add_argument("--json", action="store_true",
                   help="print the geometry JSON to stdout")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("report", help="emit the three report tables as CSV")
    p.add_argument("--foods", required=True)
    p.add_argument("--reqs", required=True)
    p.add_argument("--plans", nargs="*", default=[], metavar="FILE")
    p.add_argument("--out", required=True, metavar="DIR")
    p.set_defaults(func=cmd_report)
    return parser


def _output_flags(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group()
    group.add_argument("--json", action="store_true", help="canonical JSON output")
    group.add_argument("--table", action="store_true", help="plain table output (default)")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, DataFormatError, ModelError, UnknownFoodError, FileNotFoundError, GeometryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
