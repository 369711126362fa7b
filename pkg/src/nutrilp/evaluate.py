"""Score a diet plan against a requirement set: percent-of-bound rows,
color-band classification and an energy-balance gauge, the same feedback
loop a guesser gets while hunting for an adequate low-cost diet.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Sequence

from .model import DietPlan, FoodItem, RequirementSet, plan_cost, plan_nutrients
from .nutrients import ENERGY, canonical_sorted

TOL_PCT = 0.5  # at-bound window and adequacy slack, in percent points


class Band(enum.Enum):
    DEFICIENT_SEVERE = "deficient-severe"
    DEFICIENT_MILD = "deficient-mild"
    ADEQUATE_LOW = "adequate-low"
    ADEQUATE_MID = "adequate-mid"
    ADEQUATE_HIGH = "adequate-high"
    AT_BOUND = "at-bound"
    EXCESS_MILD = "excess-mild"
    EXCESS_SEVERE = "excess-severe"


# Severity scale used by the one-step-per-small-change property; AT_BOUND
# sits outside the scale (it is a spike at exactly 100%).
BAND_ORDER = [
    Band.DEFICIENT_SEVERE,
    Band.DEFICIENT_MILD,
    Band.ADEQUATE_LOW,
    Band.ADEQUATE_MID,
    Band.ADEQUATE_HIGH,
    Band.EXCESS_MILD,
    Band.EXCESS_SEVERE,
]


def classify_band(percent_of_lower: float | None, percent_of_upper: float | None) -> Band:
    """Band from the two percent-attained values (either may be absent).

    Exactly 100% of either bound (within the 0.5% window) is its own
    white-cell band. Below the lower bound splits mild/severe at 75% of
    it; above the upper bound splits at 125%. Anything inside both bounds
    falls into thirds of the [LB, UB] interval; with a single bound the
    whole inside is the middle band.
    """
    pol, pou = percent_of_lower, percent_of_upper
    if pol is not None and abs(pol - 100.0) <= TOL_PCT:
        return Band.AT_BOUND
    if pou is not None and abs(pou - 100.0) <= TOL_PCT:
        return Band.AT_BOUND
    if pol is not None and pol < 100.0:
        return Band.DEFICIENT_MILD if pol >= 75.0 else Band.DEFICIENT_SEVERE
    if pou is not None and pou > 100.0:
        return Band.EXCESS_MILD if pou <= 125.0 else Band.EXCESS_SEVERE
    if pol is None or pou is None:
        return Band.ADEQUATE_MID
    # Inside both bounds: position within [LB, UB] from the two percents
    # (delivered/LB and delivered/UB determine UB/LB = pol/pou).
    t = (pol / 100.0 - 1.0) / (pol / pou - 1.0)
    if t < 1.0 / 3.0:
        return Band.ADEQUATE_LOW
    if t < 2.0 / 3.0:
        return Band.ADEQUATE_MID
    return Band.ADEQUATE_HIGH


def band_intensity(percent_of_lower: float | None, percent_of_upper: float | None) -> float:
    """Continuous [0, 1] scalar for the UI gradient.

    Red side: grows with distance outside a bound (1 at zero intake or at
    double the upper bound). Blue side: 1 at the midpoint of [LB, UB],
    fading to 0 at the bounds; flat 0.5 when only one bound exists.
    At-bound cells are white (0).
    """
    band = classify_band(percent_of_lower, percent_of_upper)
    if band is Band.AT_BOUND:
        return 0.0
    if band in (Band.DEFICIENT_MILD, Band.DEFICIENT_SEVERE):
        return min(1.0, (100.0 - percent_of_lower) / 100.0)
    if band in (Band.EXCESS_MILD, Band.EXCESS_SEVERE):
        return min(1.0, (percent_of_upper - 100.0) / 100.0)
    if percent_of_lower is None or percent_of_upper is None:
        return 0.5
    t = (percent_of_lower / 100.0 - 1.0) / (percent_of_lower / percent_of_upper - 1.0)
    return max(0.0, 1.0 - 2.0 * abs(t - 0.5))


@dataclass(frozen=True)
class NutrientAdequacy:
    nutrient: str
    delivered: float
    percent_of_lower: float | None
    percent_of_upper: float | None
    band: Band
    intensity: float


@dataclass(frozen=True)
class AdequacyReport:
    rows: tuple[NutrientAdequacy, ...]
    energy_delivered: float
    energy_target: float
    energy_percent: float
    fully_adequate: bool
    cost: float


def evaluate(
    plan: DietPlan, foods: Sequence[FoodItem], reqs: RequirementSet
) -> AdequacyReport:
    """Deterministic adequacy report for any plan (guess or solution)."""
    delivered: Mapping[str, float] = plan_nutrients(plan, foods)
    energy = delivered.get(ENERGY, 0.0)
    energy_percent = 100.0 * energy / reqs.energy_kcal
    adequate = abs(energy_percent - 100.0) <= TOL_PCT

    rows = []
    for nutrient in canonical_sorted(reqs.bounds):
        amount = delivered.get(nutrient, 0.0)
        lo = reqs.lower_bound(nutrient)
        hi = reqs.upper_bound(nutrient)
        pol = 100.0 * amount / lo if lo else None  # lo == 0 constrains nothing
        pou = 100.0 * amount / hi if hi else None
        if hi == 0 and amount > 0:
            adequate = False  # degenerate zero ceiling, percent undefined
        if pol is not None and pol < 100.0 - TOL_PCT:
            adequate = False
        if pou is not None and pou > 100.0 + TOL_PCT:
            adequate = False
        rows.append(
            NutrientAdequacy(
                nutrient=nutrient,
                delivered=amount,
                percent_of_lower=pol,
                percent_of_upper=pou,
                band=classify_band(pol, pou),
                intensity=band_intensity(pol, pou),
            )
        )
    return AdequacyReport(
        rows=tuple(rows),
        energy_delivered=energy,
        energy_target=reqs.energy_kcal,
        energy_percent=energy_percent,
        fully_adequate=adequate,
        cost=plan_cost(plan, foods),
    )
