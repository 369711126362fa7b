"""Put a 1971 village consumption survey next to the modeled least-cost
diet: corn-heavy observed intake vs the corn/beans/squash mix the bounds
demand.

Survey intake (adult women, start of pregnancy): 621 g/day corn
tortillas, 53 g/day beans, 46 g/day vegetables.
"""

from nutrilp import compare_to_observed, load_foods, load_requirements, solve_diet
from nutrilp.cli import bundled_data_dir
from nutrilp.nutrients import unit_of

dataset = load_foods(bundled_data_dir() / "foods" / "three_sisters.csv")
reqs = load_requirements(bundled_data_dir() / "requirements" / "female_30.csv")
foods = list(dataset.foods)

solved = solve_diet(foods, reqs)
observed = {"corn": 621.0, "beans": 53.0, "squash": 46.0}
cmp = compare_to_observed(solved, observed, foods)

print(f"{'food':8s} {'observed g/day':>15s} {'modeled g/day':>15s}")
for fid in sorted(set(cmp.observed_grams) | set(cmp.modeled_grams)):
    print(f"{fid:8s} {cmp.observed_grams.get(fid, 0.0):15.0f} "
          f"{cmp.modeled_grams.get(fid, 0.0):15.0f}")

print(f"\nobserved diet cost at these prices: ${cmp.observed_cost:.2f}/day"
      f" (modeled: ${solved.cost:.2f}/day)")

print("\nobserved diet delivers:")
for nutrient, amount in cmp.observed_nutrients.items():
    print(f"  {nutrient:10s} {amount:8.1f} {unit_of(nutrient)}")

print("\nbounds the observed diet violates:")
for violation in cmp.violations:
    print(f"  {violation}")
