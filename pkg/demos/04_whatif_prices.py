"""What-if: double the price of the only vitamin A source and re-solve.

Because squash is the unique supplier of a binding floor, its quantity
cannot move; the bill simply rises. Contrast with corn, where a price
change re-weights the whole mix.
"""

from nutrilp import load_foods, load_requirements, whatif_price
from nutrilp.cli import bundled_data_dir

dataset = load_foods(bundled_data_dir() / "foods" / "three_sisters.csv")
reqs = load_requirements(bundled_data_dir() / "requirements" / "female_30.csv")
foods = list(dataset.foods)


def show(title, report):
    print(f"== {title}")
    print(f"   cost ${report.before.cost:.2f} -> ${report.after.cost:.2f}"
          f" ({report.cost_change:+.2f})")
    for fid in sorted(set(report.before.plan.servings) | set(report.after.plan.servings)):
        print(f"   {fid:8s} {report.before.plan[fid]:5.2f} -> {report.after.plan[fid]:5.2f}")
    print(f"   entering: {list(report.entering) or '-'}  leaving: {list(report.leaving) or '-'}")
    if report.binding_added or report.binding_removed:
        print(f"   binding changes: +{list(report.binding_added)} -{list(report.binding_removed)}")
    print()


show("squash price x2 (0.51 -> 1.02)", whatif_price(foods, reqs, {"squash": 1.02}))
show("corn price x4 (0.33 -> 1.32)", whatif_price(foods, reqs, {"corn": 1.32}))
show("beans nearly free (0.36 -> 0.05)", whatif_price(foods, reqs, {"beans": 0.05}))
