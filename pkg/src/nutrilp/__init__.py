"""Least-cost nutrient-adequate diet engine.

A bounded simplex LP core, a nutrition data model with real constraint
semantics (energy equality, RDA/AI lower bounds, UL/CDRR upper bounds,
AMDR ranges), a guesswork adequacy evaluator, two-food feasible-region
geometry, and what-if sensitivity analysis — exposed as a library, a CLI
(``nutrilp``) and a JSON service (``python -m nutrilp.service``).
"""

from .diet import (
    BindingConstraint,
    DietInfeasibleError,
    SolvedDiet,
    StructuralInfeasibilityError,
    WhatIfReport,
    build_lp,
    compare_to_observed,
    cost_per_energy,
    solve_diet,
    whatif_price,
)
from .evaluate import AdequacyReport, Band, classify_band, evaluate
from .geometry import (
    FeasibleRegion2D,
    Halfplane,
    build_region,
    min_cost_vertex,
    project_filler,
    render_region,
    two_food_halfplanes,
)
from .io import (
    Dataset,
    canonical_json,
    load_foods,
    load_plan,
    load_requirements,
    load_session,
    save_session,
)
from .model import (
    Bound,
    BoundKind,
    DietPlan,
    DriEntry,
    FoodGroup,
    FoodItem,
    ModelError,
    Provenance,
    RequirementSet,
    UnknownFoodError,
    build_requirement_set,
    plan_cost,
    plan_nutrients,
    plan_to_grams,
)
from .simplex import (
    LpProblem,
    LpSolution,
    LpStatus,
    SolverOptions,
    phase1_feasibility,
    solve,
)

__version__ = "0.1.0"

__all__ = [
    "AdequacyReport",
    "Band",
    "BindingConstraint",
    "Bound",
    "BoundKind",
    "Dataset",
    "DietInfeasibleError",
    "DietPlan",
    "DriEntry",
    "FeasibleRegion2D",
    "FoodGroup",
    "FoodItem",
    "Halfplane",
    "LpProblem",
    "LpSolution",
    "LpStatus",
    "ModelError",
    "Provenance",
    "RequirementSet",
    "SolvedDiet",
    "SolverOptions",
    "StructuralInfeasibilityError",
    "UnknownFoodError",
    "WhatIfReport",
    "build_lp",
    "build_region",
    "build_requirement_set",
    "canonical_json",
    "classify_band",
    "compare_to_observed",
    "cost_per_energy",
    "evaluate",
    "load_foods",
    "load_plan",
    "load_requirements",
    "load_session",
    "min_cost_vertex",
    "phase1_feasibility",
    "plan_cost",
    "plan_nutrients",
    "plan_to_grams",
    "project_filler",
    "render_region",
    "save_session",
    "solve",
    "solve_diet",
    "two_food_halfplanes",
    "whatif_price",
]
