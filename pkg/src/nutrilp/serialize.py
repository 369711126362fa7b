"""Plain-dict views of result objects.

Every machine-readable surface (CLI --json, HTTP bodies, report files)
goes through these builders and the canonical encoder in io.py, so the
CLI and the service emit byte-identical JSON for the same request.
"""

from __future__ import annotations

from .diet import ObservedComparison, SolvedDiet, WhatIfReport
from .evaluate import AdequacyReport
from .io import Dataset
from .model import FoodItem, RequirementSet


def food_dict(food: FoodItem) -> dict:
    return {
        "id": food.id,
        "name": food.name,
        "group": food.group.value,
        "price_per_serving": food.price_per_serving,
        "serving_g": food.serving_g,
        "source_id": food.source_id,
        "composition": {k: v for k, v in sorted(food.composition.items())},
    }


def dataset_dict(dataset_id: str, dataset: Dataset) -> dict:
    return {
        "id": dataset_id,
        "provenance": dataset.provenance,
        "schema_version": dataset.schema_version,
        "foods": [food_dict(f) for f in dataset.foods],
    }


def requirements_dict(reqs_id: str, reqs: RequirementSet) -> dict:
    bounds = []
    for nutrient, per in reqs.bounds.items():
        for bound in per:
            bounds.append(
                {
                    "nutrient": nutrient,
                    "kind": bound.kind.value,
                    "value": bound.value,
                    "provenance": bound.provenance.value,
                }
            )
    return {
        "id": reqs_id,
        "label": reqs.label,
        "energy_kcal": reqs.energy_kcal,
        "bounds": bounds,
    }


def solved_diet_dict(solved: SolvedDiet) -> dict:
    return {
        "status": "optimal",
        "plan": {fid: qty for fid, qty in sorted(solved.plan.items())},
        "cost": solved.cost,
        "nutrients": dict(solved.nutrients),
        "binding": [
            {
                "nutrient": b.nutrient,
                "kind": b.kind.value,
                "bound": b.bound,
                "shadow_price": b.shadow_price,
            }
            for b in solved.binding
        ],
        "iterations": solved.iterations,
        "basis": list(solved.basis),
    }


def adequacy_dict(report: AdequacyReport) -> dict:
    return {
        "nutrients": [
            {
                "nutrient": row.nutrient,
                "delivered": row.delivered,
                "percent_of_lower": row.percent_of_lower,
                "percent_of_upper": row.percent_of_upper,
                "band": row.band.value,
                "intensity": row.intensity,
            }
            for row in report.rows
        ],
        "energy": {
            "delivered": report.energy_delivered,
            "target": report.energy_target,
            "percent": report.energy_percent,
        },
        "fully_adequate": report.fully_adequate,
        "cost": report.cost,
    }


def whatif_dict(report: WhatIfReport) -> dict:
    return {
        "before": solved_diet_dict(report.before),
        "after": solved_diet_dict(report.after),
        "delta": {
            "cost_change": report.cost_change,
            "entering": list(report.entering),
            "leaving": list(report.leaving),
            "binding_added": list(report.binding_added),
            "binding_removed": list(report.binding_removed),
        },
    }


def comparison_dict(cmp: ObservedComparison) -> dict:
    return {
        "modeled_grams": {k: v for k, v in sorted(cmp.modeled_grams.items())},
        "observed_grams": {k: v for k, v in sorted(cmp.observed_grams.items())},
        "observed_nutrients": dict(cmp.observed_nutrients),
        "observed_cost": cmp.observed_cost,
        "violations": list(cmp.violations),
    }
