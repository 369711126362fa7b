"""Play a few guesses against the evaluator and watch the color bands.

Same feedback loop as the interactive studio: percent attained of each
bound, band per nutrient, energy gauge, running cost.
"""

from nutrilp import DietPlan, evaluate, load_foods, load_requirements, solve_diet
from nutrilp.cli import bundled_data_dir

dataset = load_foods(bundled_data_dir() / "foods" / "three_sisters.csv")
reqs = load_requirements(bundled_data_dir() / "requirements" / "female_30.csv")
foods = list(dataset.foods)

guesses = {
    "nothing at all": DietPlan({}),
    "beans only": DietPlan({"beans": 10.0}),
    "nutrient-rich, energy-poor": DietPlan({"beans": 6.30, "squash": 0.94}),
    "big corn, some beans": DietPlan({"corn": 5.0, "beans": 1.0, "squash": 0.9}),
}
guesses["the solved diet"] = solve_diet(foods, reqs).plan

for name, plan in guesses.items():
    report = evaluate(plan, foods, reqs)
    print(f"== {name}")
    for row in report.rows:
        pol = "-" if row.percent_of_lower is None else f"{row.percent_of_lower:6.1f}%"
        pou = "-" if row.percent_of_upper is None else f"{row.percent_of_upper:6.1f}%"
        print(f"   {row.nutrient:10s} lower {pol:>8s}  upper {pou:>8s}  "
              f"{row.band.value} (intensity {row.intensity:.2f})")
    print(f"   energy {report.energy_percent:6.1f}% of {report.energy_target:g} kcal"
          f" | cost ${report.cost:.2f}"
          f" | fully adequate: {'yes' if report.fully_adequate else 'no'}\n")
