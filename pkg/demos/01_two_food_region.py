"""Two foods, two nutrients: draw the feasible region and walk to the
cheapest corner.

Black beans bring iron, butternut squash brings vitamin A. Between the
iron floor/ceiling and the vitamin A floor/ceiling the feasible servings
form a parallelogram; the least-cost diet sits at its lower-left corner.
"""

from nutrilp import build_region, load_foods, load_requirements, min_cost_vertex, render_region, two_food_halfplanes
from nutrilp.cli import bundled_data_dir

dataset = load_foods(bundled_data_dir() / "foods" / "three_sisters.csv")
reqs = load_requirements(bundled_data_dir() / "requirements" / "female_30.csv")
beans, squash, corn = dataset.foods

halfplanes = two_food_halfplanes(beans, squash, reqs, include_energy=False)
print("constraints:")
for h in halfplanes:
    print(f"  {h.a:7.2f}*x + {h.b:7.2f}*y {h.rel} {h.rhs:g}   ({h.label})")

region = build_region(halfplanes)
print("\nfeasible-region vertices (counterclockwise):")
for (x, y), gens in zip(region.vertices, region.generators):
    labels = " & ".join(region.halfplanes[i].label for i in gens)
    print(f"  ({x:6.3f}, {y:6.3f})   on: {labels}")

prices = (beans.price_per_serving, squash.price_per_serving)
(x, y), cost = min_cost_vertex(region, prices)
print(f"\nleast-cost corner: {x:.2f} servings of beans, {y:.2f} of squash")
print(f"daily cost there:  ${cost:.2f}")
print(f"energy delivered:  {x * beans.energy_kcal + y * squash.energy_kcal:.1f} kcal"
      f" of the {reqs.energy_kcal:g} kcal target -- hence the third food")

svg = render_region(region, prices, [cost], title="beans vs squash",
                    axis_labels=("beans (servings/day)", "squash (servings/day)"))
out = "two_food_region.svg"
with open(out, "w") as fh:
    fh.write(svg)
print(f"\nwrote {out}")
