"""Translate foods + requirements into an LP, solve, and read the result
back in nutrition terms: least-cost plan, binding nutrients, shadow price
per bound, what-if price experiments and observed-diet comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .model import (
    BoundKind,
    DietPlan,
    FoodItem,
    ModelError,
    RequirementSet,
    UnknownFoodError,
    plan_cost,
    plan_nutrients,
    plan_to_grams,
)
from .nutrients import ENERGY, canonical_sorted, unit_of
from .simplex import (
    EQ,
    GE,
    LE,
    LpProblem,
    LpSolution,
    LpStatus,
    SolverOptions,
    solve,
)

SUPPORT_EPS = 1e-6  # servings below this do not count as "in the diet"


class StructuralInfeasibilityError(ModelError):
    """A lower-bounded nutrient that no food supplies; no LP can help."""


class DietInfeasibleError(RuntimeError):
    """The requirement schedule cannot be met with the given foods."""

    def __init__(self, message: str, conflicts: list[str]):
        super().__init__(message)
        self.conflicts = conflicts


class DietUnboundedError(RuntimeError):
    """Should not happen with positive prices; kept for completeness."""


@dataclass(frozen=True)
class RowLabel:
    """Human meaning of one LP row: which nutrient, which bound."""

    nutrient: str
    kind: BoundKind
    value: float

    def describe(self) -> str:
        word = {
            BoundKind.EQUALITY: "target",
            BoundKind.LOWER: "lower bound",
            BoundKind.UPPER: "upper bound",
        }[self.kind]
        return f"{self.nutrient} {word} {self.value:g} {unit_of(self.nutrient)}"


@dataclass(frozen=True)
class DietLp:
    problem: LpProblem
    food_ids: tuple[str, ...]
    row_labels: tuple[RowLabel, ...]


@dataclass(frozen=True)
class BindingConstraint:
    nutrient: str
    kind: BoundKind
    bound: float
    shadow_price: float  # currency per unit of the nutrient's bound


@dataclass(frozen=True)
class SolvedDiet:
    plan: DietPlan  # strictly positive quantities only
    cost: float  # plan_cost of plan; equals lp_objective up to truncation noise
    nutrients: Mapping[str, float]
    binding: tuple[BindingConstraint, ...]
    requirements: RequirementSet
    iterations: int
    basis: tuple[str, ...]
    lp_objective: float


def build_lp(foods: Sequence[FoodItem], reqs: RequirementSet) -> DietLp:
    """One variable per food, objective = prices, rows in deterministic
    order: energy equality, then lower bounds, then upper bounds, each in
    canonical nutrient order.

    A nutrient with a lower bound that no food supplies is reported here
    as structurally infeasible rather than left to phase 1.
    """
    if not foods:
        raise ModelError("food list is empty")
    ids = [f.id for f in foods]
    if len(set(ids)) != len(ids):
        raise ModelError("duplicate food ids")

    lowers = canonical_sorted(reqs.nutrients_with_lower())
    uppers = canonical_sorted(reqs.nutrients_with_upper())
    for nutrient in lowers:
        if all(f.amount_of(nutrient) == 0.0 for f in foods):
            raise StructuralInfeasibilityError(
                f"no food in the list supplies {nutrient}, but it has a "
                f"lower bound of {reqs.lower_bound(nutrient):g} "
                f"{unit_of(nutrient)}"
            )

    def row(nutrient: str) -> list[float]:
        return [f.amount_of(nutrient) for f in foods]

    rows = [row(ENERGY)]
    rels = [EQ]
    rhs = [reqs.energy_kcal]
    labels = [RowLabel(ENERGY, BoundKind.EQUALITY, reqs.energy_kcal)]
    for nutrient in lowers:
        rows.append(row(nutrient))
        rels.append(GE)
        value = reqs.lower_bound(nutrient)
        rhs.append(value)
        labels.append(RowLabel(nutrient, BoundKind.LOWER, value))
    for nutrient in uppers:
        rows.append(row(nutrient))
        rels.append(LE)
        value = reqs.upper_bound(nutrient)
        rhs.append(value)
        labels.append(RowLabel(nutrient, BoundKind.UPPER, value))

    problem = LpProblem([f.price_per_serving for f in foods], rows, rels, rhs)
    return DietLp(problem, tuple(ids), tuple(labels))


def _interpret(lp: DietLp, sol: LpSolution, foods, reqs) -> SolvedDiet:
    plan = DietPlan(
        {
            fid: float(q)
            for fid, q in zip(lp.food_ids, sol.x)
            if q > SUPPORT_EPS
        }
    )
    binding = tuple(
        BindingConstraint(
            nutrient=lp.row_labels[i].nutrient,
            kind=lp.row_labels[i].kind,
            bound=lp.row_labels[i].value,
            shadow_price=float(sol.duals[i]),
        )
        for i in sol.binding_rows
    )
    return SolvedDiet(
        plan=plan,
        cost=plan_cost(plan, foods),
        nutrients=plan_nutrients(plan, foods),
        binding=binding,
        requirements=reqs,
        iterations=sol.iterations,
        basis=sol.basis,
        lp_objective=float(sol.objective),
    )


def solve_diet(
    foods: Sequence[FoodItem],
    reqs: RequirementSet,
    opts: SolverOptions | None = None,
) -> SolvedDiet:
    lp = build_lp(foods, reqs)
    sol = solve(lp.problem, opts)
    if sol.status is LpStatus.INFEASIBLE:
        report = sol.infeasibility
        violated = [
            f"{lp.row_labels[i].describe()} missed by {resid:g}"
            for i, resid in report.violated_rows
        ]
        blockers = [lp.row_labels[i].describe() for i in report.binding_rows]
        conflicts = violated + blockers
        message = "no feasible diet: cannot meet " + "; ".join(violated)
        if blockers:
            message += " while staying at " + "; ".join(blockers)
        raise DietInfeasibleError(message, conflicts)
    if sol.status is LpStatus.UNBOUNDED:  # pragma: no cover - prices > 0
        raise DietUnboundedError("diet cost is unbounded below")
    return _interpret(lp, sol, foods, reqs)


def apply_price_overrides(
    foods: Sequence[FoodItem], overrides: Mapping[str, float]
) -> list[FoodItem]:
    index = {f.id: f for f in foods}
    unknown = [fid for fid in overrides if fid not in index]
    if unknown:
        raise UnknownFoodError(f"unknown food id(s): {', '.join(sorted(unknown))}")
    for fid, price in overrides.items():
        if not price > 0:
            raise ModelError(f"{fid}: overridden price must be > 0")
    out = []
    for food in foods:
        if food.id in overrides:
            out.append(
                FoodItem(
                    id=food.id,
                    name=food.name,
                    group=food.group,
                    price_per_serving=float(overrides[food.id]),
                    serving_g=food.serving_g,
                    composition=dict(food.composition),
                    source_id=food.source_id,
                    calorie_free=food.calorie_free,
                )
            )
        else:
            out.append(food)
    return out


@dataclass(frozen=True)
class WhatIfReport:
    before: SolvedDiet
    after: SolvedDiet
    cost_change: float
    entering: tuple[str, ...]  # foods that join the plan
    leaving: tuple[str, ...]  # foods that drop out
    binding_added: tuple[str, ...]
    binding_removed: tuple[str, ...]


def whatif_price(
    foods: Sequence[FoodItem],
    reqs: RequirementSet,
    overrides: Mapping[str, float],
    opts: SolverOptions | None = None,
) -> WhatIfReport:
    """Re-solve under new prices and diff the two optima."""
    before = solve_diet(foods, reqs, opts)
    after = solve_diet(apply_price_overrides(foods, overrides), reqs, opts)
    support_before = set(before.plan.support(SUPPORT_EPS))
    support_after = set(after.plan.support(SUPPORT_EPS))
    keys_before = {(b.nutrient, b.kind.value) for b in before.binding}
    keys_after = {(b.nutrient, b.kind.value) for b in after.binding}
    return WhatIfReport(
        before=before,
        after=after,
        cost_change=after.cost - before.cost,
        entering=tuple(sorted(support_after - support_before)),
        leaving=tuple(sorted(support_before - support_after)),
        binding_added=tuple(sorted(f"{n}:{k}" for n, k in keys_after - keys_before)),
        binding_removed=tuple(sorted(f"{n}:{k}" for n, k in keys_before - keys_after)),
    )


def cost_per_energy(foods: Sequence[FoodItem]) -> dict[str, float]:
    """Currency per 100 kcal for each food; zero-energy foods are an error."""
    out = {}
    for food in foods:
        if food.energy_kcal <= 0:
            raise ModelError(f"{food.id}: no energy content, cost per 100 kcal undefined")
        out[food.id] = 100.0 * food.price_per_serving / food.energy_kcal
    return out


@dataclass(frozen=True)
class ObservedComparison:
    modeled_grams: Mapping[str, float]
    observed_grams: Mapping[str, float]
    observed_plan: DietPlan
    observed_nutrients: Mapping[str, float]
    observed_cost: float
    violations: tuple[str, ...]  # bound descriptions the observed diet breaks


def compare_to_observed(
    solved: SolvedDiet,
    observed_g: Mapping[str, float],
    foods: Sequence[FoodItem],
) -> ObservedComparison:
    """Put a consumption survey (grams/day) next to the solved diet."""
    index = {f.id: f for f in foods}
    unknown = [fid for fid in observed_g if fid not in index]
    if unknown:
        raise UnknownFoodError(f"unknown food id(s): {', '.join(sorted(unknown))}")
    observed_plan = DietPlan(
        {fid: grams / index[fid].serving_g for fid, grams in observed_g.items()}
    )
    delivered = plan_nutrients(observed_plan, foods)
    reqs = solved.requirements
    violations = []
    energy = delivered.get(ENERGY, 0.0)
    tol = 1e-9
    if abs(energy - reqs.energy_kcal) > max(1.0, reqs.energy_kcal) * 1e-3:
        violations.append(
            RowLabel(ENERGY, BoundKind.EQUALITY, reqs.energy_kcal).describe()
        )
    for nutrient in canonical_sorted(reqs.bounds):
        amount = delivered.get(nutrient, 0.0)
        lo = reqs.lower_bound(nutrient)
        hi = reqs.upper_bound(nutrient)
        if lo is not None and amount < lo - tol:
            violations.append(RowLabel(nutrient, BoundKind.LOWER, lo).describe())
        if hi is not None and amount > hi + tol:
            violations.append(RowLabel(nutrient, BoundKind.UPPER, hi).describe())
    return ObservedComparison(
        modeled_grams=plan_to_grams(solved.plan, foods),
        observed_grams=dict(observed_g),
        observed_plan=observed_plan,
        observed_nutrients=delivered,
        observed_cost=plan_cost(observed_plan, foods),
        violations=tuple(violations),
    )
