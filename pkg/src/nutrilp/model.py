"""Domain types for foods, requirements and diet plans.

All types are immutable after construction and safe to share across
threads. Quantities in a DietPlan are servings per day; gram conversion
is an explicit operation, never implicit.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from . import nutrients
from .nutrients import ENERGY, canonical_sorted, check_known, unit_of


class ModelError(ValueError):
    """Invalid domain data (bad food, bound or requirement schedule)."""


class UnknownFoodError(ModelError):
    """A plan or override references a food id absent from the food list."""


class FoodGroup(enum.Enum):
    STARCHY_STAPLES = "starchy_staples"
    FRUITS_VEGETABLES = "fruits_vegetables"
    NUTS_BEANS_SEEDS_OILS = "nuts_beans_seeds_oils"
    ANIMAL_SOURCE = "animal_source"
    MILK_BEVERAGES = "milk_beverages"


@dataclass(frozen=True)
class FoodItem:
    """One purchasable item: price and mass per serving plus composition.

    Composition maps nutrient key -> amount per serving in the nutrient's
    canonical unit. Nutrients missing from the map count as 0. An energy
    entry is mandatory and must be positive unless the item is explicitly
    flagged calorie-free.
    """

    id: str
    name: str
    group: FoodGroup
    price_per_serving: float
    serving_g: float
    composition: Mapping[str, float]
    source_id: str | None = None
    calorie_free: bool = False

    def __post_init__(self):
        if not self.id:
            raise ModelError("food id must be non-empty")
        if not (self.price_per_serving > 0):
            raise ModelError(f"{self.id}: price_per_serving must be > 0")
        if not (self.serving_g > 0):
            raise ModelError(f"{self.id}: serving_g must be > 0")
        comp = dict(self.composition)
        for key, amount in comp.items():
            check_known(key)
            if not math.isfinite(amount) or amount < 0:
                raise ModelError(f"{self.id}: {key} amount must be finite and >= 0")
        if ENERGY not in comp:
            raise ModelError(f"{self.id}: composition must include energy")
        if comp[ENERGY] == 0 and not self.calorie_free:
            raise ModelError(
                f"{self.id}: zero energy requires the calorie_free flag"
            )
        object.__setattr__(self, "composition", MappingProxyType(comp))

    def amount_of(self, nutrient: str) -> float:
        return self.composition.get(nutrient, 0.0)

    @property
    def energy_kcal(self) -> float:
        return self.composition[ENERGY]


class BoundKind(enum.Enum):
    LOWER = "lower"
    UPPER = "upper"
    EQUALITY = "equality"


class Provenance(enum.Enum):
    RDA = "RDA"
    AI = "AI"
    UL = "UL"
    CDRR = "CDRR"
    AMDR_LOW = "AMDR_low"
    AMDR_HIGH = "AMDR_high"
    EER = "EER"
    CUSTOM = "custom"


@dataclass(frozen=True)
class Bound:
    kind: BoundKind
    value: float
    provenance: Provenance

    def __post_init__(self):
        if not math.isfinite(self.value) or self.value < 0:
            raise ModelError("bound value must be finite and >= 0")
        if self.kind is BoundKind.EQUALITY and self.provenance not in (
            Provenance.EER,
            Provenance.CUSTOM,
        ):
            raise ModelError(
                "equality bounds may only carry EER or custom provenance"
            )


@dataclass(frozen=True)
class RequirementSet:
    """One person's constraint schedule.

    Energy appears exactly once, as the equality target. Every other
    nutrient carries 0, 1 or 2 bounds, never two of the same kind, with
    lower < upper whenever both are present.
    """

    label: str
    energy_kcal: float
    bounds: Mapping[str, tuple[Bound, ...]] = field(default_factory=dict)
    energy_provenance: Provenance = Provenance.EER

    def __post_init__(self):
        if not (self.energy_kcal > 0):
            raise ModelError("energy target must be > 0")
        clean: dict[str, tuple[Bound, ...]] = {}
        for nutrient in canonical_sorted(self.bounds):
            check_known(nutrient)
            if nutrient == ENERGY:
                raise ModelError(
                    "energy is pinned by energy_kcal; do not add energy bounds"
                )
            per = tuple(self.bounds[nutrient])
            kinds = [b.kind for b in per]
            if len(set(kinds)) != len(kinds):
                raise ModelError(f"{nutrient}: duplicate bound kinds")
            if BoundKind.EQUALITY in kinds and len(kinds) > 1:
                raise ModelError(f"{nutrient}: equality excludes other bounds")
            lo = self.lower_value_of(per)
            hi = self.upper_value_of(per)
            if lo is not None and hi is not None and not (lo < hi):
                raise ModelError(
                    f"{nutrient}: lower bound {lo} must be < upper bound {hi}"
                )
            clean[nutrient] = per
        object.__setattr__(self, "bounds", MappingProxyType(clean))

    @staticmethod
    def lower_value_of(per: Sequence[Bound]) -> float | None:
        for b in per:
            if b.kind is BoundKind.LOWER:
                return b.value
        return None

    @staticmethod
    def upper_value_of(per: Sequence[Bound]) -> float | None:
        for b in per:
            if b.kind is BoundKind.UPPER:
                return b.value
        return None

    def lower_bound(self, nutrient: str) -> float | None:
        return self.lower_value_of(self.bounds.get(nutrient, ()))

    def upper_bound(self, nutrient: str) -> float | None:
        return self.upper_value_of(self.bounds.get(nutrient, ()))

    def nutrients_with_lower(self) -> list[str]:
        return [n for n in self.bounds if self.lower_bound(n) is not None]

    def nutrients_with_upper(self) -> list[str]:
        return [n for n in self.bounds if self.upper_bound(n) is not None]


@dataclass(frozen=True)
class DietPlan:
    """Serving quantities per day keyed by food id (a guess or a solution)."""

    servings: Mapping[str, float]

    def __post_init__(self):
        clean = {}
        for food_id, qty in self.servings.items():
            if not math.isfinite(qty) or qty < 0:
                raise ModelError(f"{food_id}: servings must be finite and >= 0")
            clean[food_id] = float(qty)
        object.__setattr__(self, "servings", MappingProxyType(clean))

    def __getitem__(self, food_id: str) -> float:
        return self.servings.get(food_id, 0.0)

    def items(self):
        return self.servings.items()

    def support(self, threshold: float = 1e-6) -> list[str]:
        return [fid for fid, q in self.servings.items() if q > threshold]


@dataclass(frozen=True)
class DriEntry:
    """One requirement-table row before conversion to a daily-amount bound.

    basis "amount" is the nutrient's own unit per day; "per_1000_kcal"
    is a density scaled by the energy target (fiber AI); "percent_energy"
    is an AMDR share linearized via 4/4/9 kcal/g.
    """

    nutrient: str
    kind: BoundKind
    value: float
    basis: str = "amount"
    provenance: Provenance = Provenance.CUSTOM


def _food_index(foods: Sequence[FoodItem]) -> dict[str, FoodItem]:
    return {f.id: f for f in foods}


def _resolve(plan: DietPlan, foods: Sequence[FoodItem]) -> dict[str, FoodItem]:
    index = _food_index(foods)
    missing = [fid for fid in plan.servings if fid not in index]
    if missing:
        raise UnknownFoodError(f"unknown food id(s): {', '.join(sorted(missing))}")
    return index


def build_requirement_set(
    label: str,
    energy_kcal: float,
    dri_table: Iterable[DriEntry] = (),
) -> RequirementSet:
    """Turn a requirement table into a RequirementSet for one person.

    Density and percent-of-energy entries are converted against the fixed
    energy target, which is exact because energy is an equality constraint.
    Fiber-style densities round to the nearest whole gram.
    """
    if not (energy_kcal > 0):
        raise ModelError("energy target must be > 0")
    bounds: dict[str, list[Bound]] = {}
    for entry in dri_table:
        nutrient = check_known(entry.nutrient)
        if entry.basis == "amount":
            value = entry.value
        elif entry.basis == "per_1000_kcal":
            value = round(entry.value * energy_kcal / 1000.0)
        elif entry.basis == "percent_energy":
            density = nutrients.ENERGY_DENSITY_KCAL_PER_G.get(nutrient)
            if density is None:
                raise ModelError(
                    f"{nutrient}: percent-of-energy basis needs a kcal/g density"
                )
            value = (entry.value / 100.0) * energy_kcal / density
        else:
            raise ModelError(f"unknown basis {entry.basis!r}")
        bounds.setdefault(nutrient, []).append(
            Bound(entry.kind, value, entry.provenance)
        )
    return RequirementSet(
        label=label,
        energy_kcal=energy_kcal,
        bounds={n: tuple(bs) for n, bs in bounds.items()},
    )


def plan_cost(plan: DietPlan, foods: Sequence[FoodItem]) -> float:
    """Total daily cost: sum of price per serving times servings."""
    index = _resolve(plan, foods)
    return sum(index[fid].price_per_serving * qty for fid, qty in plan.items())


def plan_nutrients(plan: DietPlan, foods: Sequence[FoodItem]) -> dict[str, float]:
    """Delivered amount per day for every nutrient present in any food."""
    index = _resolve(plan, foods)
    keys = set()
    for food in foods:
        keys.update(food.composition)
    totals = {key: 0.0 for key in canonical_sorted(keys)}
    for fid, qty in plan.items():
        for key, amount in index[fid].composition.items():
            totals[key] += amount * qty
    return totals


def plan_to_grams(plan: DietPlan, foods: Sequence[FoodItem]) -> dict[str, float]:
    """Servings to grams per day, item by item."""
    index = _resolve(plan, foods)
    return {fid: qty * index[fid].serving_g for fid, qty in plan.items()}
