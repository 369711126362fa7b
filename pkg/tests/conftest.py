import numpy as np
import pytest

from nutrilp.cli import bundled_data_dir
from nutrilp.io import load_foods, load_requirements
from nutrilp.model import Bound, BoundKind, FoodGroup, FoodItem, Provenance, RequirementSet


@pytest.fixture(scope="session")
def three_sisters():
    return load_foods(bundled_data_dir() / "foods" / "three_sisters.csv")


@pytest.fixture(scope="session")
def female_30():
    return load_requirements(bundled_data_dir() / "requirements" / "female_30.csv")


@pytest.fixture(scope="session")
def foods(three_sisters):
    return list(three_sisters.foods)


@pytest.fixture(scope="session")
def beans(foods):
    return next(f for f in foods if f.id == "beans")


@pytest.fixture(scope="session")
def squash(foods):
    return next(f for f in foods if f.id == "squash")


@pytest.fixture(scope="session")
def corn(foods):
    return next(f for f in foods if f.id == "corn")


def random_instance(rng: np.random.Generator):
    """A random feasible (foods, requirements) pair.

    Feasibility by construction: draw a strictly positive reference plan,
    set the energy target to what it delivers, put lower bounds at or
    below and upper bounds at or above its delivered amounts.
    """
    n_foods = int(rng.integers(3, 9))
    nutrient_pool = ["protein", "fiber", "iron", "vitamin_a", "calcium", "sodium"]
    n_nutrients = int(rng.integers(1, len(nutrient_pool) + 1))
    chosen = list(rng.choice(nutrient_pool, size=n_nutrients, replace=False))
    foods = []
    for i in range(n_foods):
        comp = {"energy": float(rng.uniform(20, 500))}
        for nutrient in chosen:
            if rng.random() < 0.8:
                comp[nutrient] = float(rng.uniform(0, 50))
        foods.append(
            FoodItem(
                id=f"food{i}",
                name=f"Food {i}",
                group=FoodGroup.STARCHY_STAPLES,
                price_per_serving=float(rng.uniform(0.05, 3.0)),
                serving_g=float(rng.uniform(20, 300)),
                composition=comp,
            )
        )
    reference = {f.id: float(rng.uniform(0.2, 4.0)) for f in foods}
    delivered = {"energy": 0.0, **{n: 0.0 for n in chosen}}
    for food in foods:
        for key in delivered:
            delivered[key] += food.amount_of(key) * reference[food.id]
    bounds = {}
    for nutrient in chosen:
        amount = delivered[nutrient]
        per = []
        if rng.random() < 0.8 and amount > 0:
            per.append(
                Bound(BoundKind.LOWER, amount * float(rng.uniform(0.3, 1.0)), Provenance.CUSTOM)
            )
        if rng.random() < 0.5:
            per.append(
                Bound(BoundKind.UPPER, amount * float(rng.uniform(1.5, 4.0)) + 1.0, Provenance.CUSTOM)
            )
        if per:
            bounds[nutrient] = tuple(per)
    reqs = RequirementSet(
        label="random", energy_kcal=delivered["energy"], bounds=bounds
    )
    return foods, reqs
