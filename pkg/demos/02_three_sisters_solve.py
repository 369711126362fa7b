"""Solve the full three-food problem: energy equality plus micronutrient
floors and ceilings, and read the economics off the dual solution.
"""

from nutrilp import build_lp, load_foods, load_requirements, solve, solve_diet
from nutrilp.cli import bundled_data_dir
from nutrilp.nutrients import unit_of

dataset = load_foods(bundled_data_dir() / "foods" / "three_sisters.csv")
reqs = load_requirements(bundled_data_dir() / "requirements" / "female_30.csv")
foods = list(dataset.foods)

lp = build_lp(foods, reqs)
print(f"LP: {lp.problem.n} variables, {lp.problem.m} rows")
for label, rel, rhs in zip(lp.row_labels, lp.problem.relations, lp.problem.b):
    print(f"  {label.nutrient:10s} {rel:2s} {rhs:g}")

solved = solve_diet(foods, reqs)
print("\nleast-cost diet:")
for fid, qty in sorted(solved.plan.items()):
    food = next(f for f in foods if f.id == fid)
    print(f"  {fid:8s} {qty:5.2f} servings/day = {qty * food.serving_g:6.1f} g/day")
print(f"total: ${solved.cost:.2f} per day")

print("\nbinding constraints and their shadow prices:")
for b in solved.binding:
    print(f"  {b.nutrient} {b.kind.value} at {b.bound:g} {unit_of(b.nutrient)}: "
          f"${b.shadow_price:+.5f} per {unit_of(b.nutrient)}")
print("(a negative energy price: more allowed kcal lets cheap corn displace beans)")

raw = solve(lp.problem)
print(f"\nsimplex took {raw.iterations} pivots; basis {raw.basis}")
print(f"duality gap: {abs(raw.objective - raw.duals @ lp.problem.b):.2e}")
