"""Canonical nutrient identifiers and units.

Every nutrient has exactly one unit across the whole system; amounts are
always per day (requirements) or per serving (food composition). Mixing
units for one nutrient is a construction-time error, enforced wherever
external data enters (CSV loaders, requirement builders).
"""

from __future__ import annotations

ENERGY = "energy"

# Canonical (nutrient, unit) registry. Insertion order is the canonical
# ordering used for constraint rows, report tables and serialized output:
# energy first, then macronutrients, then vitamins, then minerals.
UNITS: dict[str, str] = {
    "energy": "kcal",
    "protein": "g",
    "carbohydrate": "g",
    "fat": "g",
    "fiber": "g",
    "vitamin_a": "mcg_rae",
    "vitamin_c": "mg",
    "vitamin_d": "mcg",
    "vitamin_e": "mg",
    "vitamin_k": "mcg",
    "thiamin": "mg",
    "riboflavin": "mg",
    "niacin": "mg",
    "vitamin_b6": "mg",
    "folate": "mcg_dfe",
    "vitamin_b12": "mcg",
    "choline": "mg",
    "calcium": "mg",
    "iron": "mg",
    "magnesium": "mg",
    "zinc": "mg",
    "potassium": "mg",
    "sodium": "mg",
    "phosphorus": "mg",
    "selenium": "mcg",
    "copper": "mcg",
}

_ORDER = {key: i for i, key in enumerate(UNITS)}

# kcal per gram, used to linearize percent-of-energy macronutrient ranges
# into gram bounds against a fixed daily energy target.
ENERGY_DENSITY_KCAL_PER_G = {
    "protein": 4.0,
    "carbohydrate": 4.0,
    "fat": 9.0,
}


class UnknownNutrientError(KeyError):
    """A nutrient key absent from the canonical registry."""


def unit_of(nutrient: str) -> str:
    try:
        return UNITS[nutrient]
    except KeyError:
        raise UnknownNutrientError(f"unknown nutrient {nutrient!r}") from None


def check_known(nutrient: str) -> str:
    if nutrient not in UNITS:
        raise UnknownNutrientError(f"unknown nutrient {nutrient!r}")
    return nutrient


def canonical_sorted(nutrients) -> list[str]:
    """Sort nutrient keys into canonical order (registry order)."""
    return sorted(nutrients, key=lambda k: (_ORDER.get(k, len(_ORDER)), k))


def column_name(nutrient: str) -> str:
    """CSV column name for a nutrient: ``<nutrient>_<unit>``."""
    return f"{nutrient}_{unit_of(nutrient)}"


# Reverse map from CSV column name to nutrient key.
COLUMN_TO_NUTRIENT = {column_name(key): key for key in UNITS}
