import numpy as np
import pytest

from conftest import random_instance
from nutrilp.diet import (
    DietInfeasibleError,
    StructuralInfeasibilityError,
    apply_price_overrides,
    build_lp,
    compare_to_observed,
    cost_per_energy,
    solve_diet,
    whatif_price,
)
from nutrilp.evaluate import evaluate
from nutrilp.model import (
    Bound,
    BoundKind,
    DietPlan,
    FoodGroup,
    FoodItem,
    ModelError,
    Provenance,
    RequirementSet,
    plan_cost,
)


def reqs_with(energy, **bounds):
    table = {}
    for nutrient, (lo, hi) in bounds.items():
        per = []
        if lo is not None:
            per.append(Bound(BoundKind.LOWER, lo, Provenance.CUSTOM))
        if hi is not None:
            per.append(Bound(BoundKind.UPPER, hi, Provenance.CUSTOM))
        table[nutrient] = tuple(per)
    return RequirementSet(label="test", energy_kcal=energy, bounds=table)


class TestBuildLp:
    def test_three_sisters_full_system(self, foods, female_30):
        lp = build_lp(foods, female_30)
        assert lp.problem.n == 3
        assert lp.problem.m == 5
        assert lp.food_ids == ("beans", "squash", "corn")
        # row order: energy =, lower bounds, upper bounds (canonical order)
        assert [l.nutrient for l in lp.row_labels] == [
            "energy", "vitamin_a", "iron", "vitamin_a", "iron",
        ]
        assert lp.problem.relations == ("=", ">=", ">=", "<=", "<=")
        np.testing.assert_allclose(lp.problem.A[0], [130, 63, 440])
        np.testing.assert_allclose(lp.problem.A[1], [0, 745, 0])
        np.testing.assert_allclose(lp.problem.A[2], [2.71, 0.98, 2.90])
        np.testing.assert_allclose(lp.problem.b, [2330, 700, 18, 3000, 45])

    def test_single_food_energy_only(self, corn):
        lp = build_lp([corn], reqs_with(2200))
        assert lp.problem.n == 1
        assert lp.problem.m == 1
        assert lp.problem.relations == ("=",)

    def test_structural_infeasibility_names_nutrient(self, beans, corn):
        reqs = reqs_with(2000, vitamin_a=(700, None))
        with pytest.raises(StructuralInfeasibilityError, match="vitamin_a"):
            build_lp([beans, corn], reqs)

    def test_empty_food_list(self, female_30):
        with pytest.raises(ModelError):
            build_lp([], female_30)


class TestSolveDiet:
    def test_three_sisters_solution(self, foods, female_30):
        solved = solve_diet(foods, female_30)
        assert solved.plan["corn"] == pytest.approx(4.82, abs=0.01)
        assert solved.plan["beans"] == pytest.approx(1.14, abs=0.01)
        assert solved.plan["squash"] == pytest.approx(0.94, abs=0.01)
        assert solved.cost == pytest.approx(2.48, abs=0.01)
        binding = {(b.nutrient, b.kind.value) for b in solved.binding}
        assert binding == {
            ("energy", "equality"),
            ("vitamin_a", "lower"),
            ("iron", "lower"),
        }

    def test_two_food_lower_bounds_only(self, beans, squash):
        reqs = reqs_with(2330, iron=(18, None), vitamin_a=(700, None))
        # energy equality cannot hold for two foods; drop it by bounding
        # the problem the way the lower-bounds-only sketch does
        lp_foods = [beans, squash]
        from nutrilp.simplex import LpProblem, solve as lp_solve

        problem = LpProblem(
            [f.price_per_serving for f in lp_foods],
            [
                [f.amount_of("iron") for f in lp_foods],
                [f.amount_of("vitamin_a") for f in lp_foods],
            ],
            [">=", ">="],
            [18.0, 700.0],
        )
        sol = lp_solve(problem)
        assert sol.x[0] == pytest.approx(6.30, abs=0.01)
        assert sol.x[1] == pytest.approx(0.94, abs=0.01)
        assert sol.objective == pytest.approx(2.75, abs=0.005)

    def test_two_food_energy_equality_infeasible(self, beans, squash, female_30):
        with pytest.raises(DietInfeasibleError) as err:
            solve_diet([beans, squash], female_30)
        message = str(err.value)
        assert "energy" in message
        assert "iron upper" in message

    def test_cost_matches_plan_cost(self, foods, female_30):
        solved = solve_diet(foods, female_30)
        assert solved.cost == pytest.approx(plan_cost(solved.plan, foods), abs=1e-12)
        assert solved.cost == pytest.approx(solved.lp_objective, abs=1e-9)

    def test_support_no_larger_than_binding(self, foods, female_30):
        solved = solve_diet(foods, female_30)
        assert len(solved.plan.support()) <= len(solved.binding)

    def test_delivered_amounts_satisfy_bounds(self, foods, female_30):
        solved = solve_diet(foods, female_30)
        nutrients = solved.nutrients
        assert nutrients["energy"] == pytest.approx(2330, abs=1e-5)
        assert nutrients["iron"] >= 18 - 1e-8
        assert nutrients["iron"] <= 45 + 1e-8
        assert nutrients["vitamin_a"] >= 700 - 1e-6
        assert nutrients["vitamin_a"] <= 3000 + 1e-6

    def test_nonbinding_constraints_have_zero_shadow_price(self, foods, female_30):
        lp = build_lp(foods, female_30)
        from nutrilp.simplex import solve as lp_solve

        sol = lp_solve(lp.problem)
        for i in range(lp.problem.m):
            if i not in sol.binding_rows:
                assert sol.duals[i] == pytest.approx(0.0, abs=1e-10)


class TestWhatIf:
    def test_squash_price_doubling_leaves_quantity(self, foods, female_30):
        report = whatif_price(foods, female_30, {"squash": 1.02})
        assert report.cost_change > 0
        # squash is the only vitamin A source; its lower bound stays binding
        assert report.after.plan["squash"] == pytest.approx(0.94, abs=0.01)
        assert report.after.plan["squash"] == pytest.approx(
            report.before.plan["squash"], abs=1e-9
        )
        assert report.entering == ()
        assert report.leaving == ()

    def test_noop_override_identical(self, foods, female_30):
        report = whatif_price(foods, female_30, {"beans": 0.36})
        assert report.cost_change == 0.0
        assert dict(report.before.plan.items()) == dict(report.after.plan.items())
        assert report.before.basis == report.after.basis

    def test_unknown_override_rejected(self, foods, female_30):
        from nutrilp.model import UnknownFoodError

        with pytest.raises(UnknownFoodError):
            whatif_price(foods, female_30, {"pizza": 1.0})

    def test_nonpositive_override_rejected(self, foods, female_30):
        with pytest.raises(ModelError):
            whatif_price(foods, female_30, {"beans": 0.0})

    def test_uniform_scaling_scales_cost_keeps_support(self, foods, female_30):
        base = solve_diet(foods, female_30)
        for lam in (0.5, 2.0, 7.5):
            overrides = {f.id: lam * f.price_per_serving for f in foods}
            scaled = solve_diet(apply_price_overrides(foods, overrides), female_30)
            assert scaled.cost == pytest.approx(lam * base.cost, rel=1e-9)
            assert set(scaled.plan.support()) == set(base.plan.support())


class TestCostPerEnergy:
    def test_paper_quoted_rates(self, foods):
        rates = cost_per_energy(foods)
        assert rates["squash"] == pytest.approx(0.81, abs=0.005)
        assert rates["beans"] == pytest.approx(0.28, abs=0.005)
        assert rates["corn"] == pytest.approx(0.075, abs=0.0005)

    def test_zero_energy_rejected(self):
        water = FoodItem(
            id="water", name="water", group=FoodGroup.MILK_BEVERAGES,
            price_per_serving=0.01, serving_g=240,
            composition={"energy": 0.0}, calorie_free=True,
        )
        with pytest.raises(ModelError):
            cost_per_energy([water])


class TestCompareToObserved:
    def test_guatemala_survey_vs_model(self, foods, female_30):
        solved = solve_diet(foods, female_30)
        cmp = compare_to_observed(
            solved, {"corn": 621.0, "beans": 53.0, "squash": 46.0}, foods
        )
        assert cmp.modeled_grams["corn"] == pytest.approx(589, abs=1)
        assert cmp.modeled_grams["beans"] == pytest.approx(163, abs=1)
        assert cmp.modeled_grams["squash"] == pytest.approx(132, abs=1)
        # the observed diet misses the iron and vitamin A floors
        assert any(v.startswith("iron lower") for v in cmp.violations)
        assert any(v.startswith("vitamin_a lower") for v in cmp.violations)

    def test_observed_equal_to_solved_has_no_violations(self, foods, female_30):
        solved = solve_diet(foods, female_30)
        from nutrilp.model import plan_to_grams

        cmp = compare_to_observed(solved, plan_to_grams(solved.plan, foods), foods)
        assert cmp.violations == ()
        for fid, grams in cmp.observed_grams.items():
            assert grams == pytest.approx(cmp.modeled_grams[fid], rel=1e-12)

    def test_empty_observed_breaks_every_floor(self, foods, female_30):
        solved = solve_diet(foods, female_30)
        cmp = compare_to_observed(solved, {}, foods)
        assert any(v.startswith("energy") for v in cmp.violations)
        assert any(v.startswith("iron lower") for v in cmp.violations)
        assert any(v.startswith("vitamin_a lower") for v in cmp.violations)
        assert cmp.observed_cost == 0.0


class TestOptimalityProperties:
    def test_adequate_random_plans_never_beat_solver(self, foods, female_30):
        solved = solve_diet(foods, female_30)
        rng = np.random.default_rng(42)
        lp = build_lp(foods, female_30)
        from nutrilp.simplex import LpProblem, LpStatus, solve as lp_solve

        vertices = [np.array([solved.plan[f.id] for f in foods])]
        for _ in range(8):
            alt = lp_solve(
                LpProblem(rng.uniform(0.1, 5, 3), lp.problem.A, lp.problem.relations, lp.problem.b)
            )
            if alt.status is LpStatus.OPTIMAL:
                vertices.append(alt.x)
        for _ in range(50):
            weights = rng.dirichlet(np.ones(len(vertices)))
            combo = sum(w * v for w, v in zip(weights, vertices))
            plan = DietPlan({f.id: float(q) for f, q in zip(foods, combo)})
            report = evaluate(plan, foods, female_30)
            assert report.fully_adequate
            assert plan_cost(plan, foods) >= solved.cost - 1e-9

    def test_adding_food_never_raises_cost(self, foods, female_30):
        base = solve_diet(foods, female_30)
        fortified = FoodItem(
            id="fortified", name="fortified meal", group=FoodGroup.STARCHY_STAPLES,
            price_per_serving=0.05, serving_g=100,
            composition={"energy": 300.0, "iron": 3.0, "vitamin_a": 100.0},
        )
        richer = solve_diet(foods + [fortified], female_30)
        assert richer.cost <= base.cost + 1e-12

    def test_tightening_bounds_never_lowers_cost(self, foods, female_30):
        base = solve_diet(foods, female_30)
        tighter = reqs_with(2330, iron=(20, 45), vitamin_a=(800, 3000))
        raised = solve_diet(foods, tighter)
        assert raised.cost >= base.cost - 1e-12
        looser = reqs_with(2330, iron=(10, 45), vitamin_a=(500, 3000))
        lowered = solve_diet(foods, looser)
        assert lowered.cost <= base.cost + 1e-12

    def test_random_feasible_instances_solve_clean(self):
        rng = np.random.default_rng(2024)
        solved_count = 0
        for _ in range(40):
            foods, reqs = random_instance(rng)
            solved = solve_diet(foods, reqs)
            solved_count += 1
            assert solved.nutrients["energy"] == pytest.approx(
                reqs.energy_kcal, rel=1e-6
            )
            assert len(solved.plan.support()) <= len(solved.binding)
        assert solved_count == 40
