"""CSV ingestion for foods and requirements, session persistence, and the
canonical JSON encoder shared by the CLI and the HTTP service.

CSV dialect: UTF-8, comma-separated, double-quote quoting, '.' decimal
point, mandatory header. Nutrient columns are named <nutrient>_<unit>
and unknown columns are rejected by name rather than silently ignored.
"""

from __future__ import annotations

import csv
import io as _stdio
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Mapping

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
    build_requirement_set,
)
from .nutrients import COLUMN_TO_NUTRIENT, UNITS, unit_of

SCHEMA_VERSION = 1

MANDATORY_FOOD_COLUMNS = ("id", "name", "group", "price_per_serving", "serving_g")
OPTIONAL_FOOD_COLUMNS = ("source_id",)

REQUIREMENT_COLUMNS = ("nutrient", "unit", "bound_kind", "value", "provenance")

# Unit spellings that mark a value as a density or an energy share instead
# of a plain daily amount.
_DENSITY_SUFFIX = "_per_1000kcal"
_PERCENT_ENERGY_UNIT = "pct_energy"


class DataFormatError(ModelError):
    """Malformed CSV or session file; message carries row/column context."""


@dataclass(frozen=True)
class Dataset:
    foods: tuple[FoodItem, ...]
    provenance: str = ""
    schema_version: int = SCHEMA_VERSION
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        ids = [f.id for f in self.foods]
        if len(set(ids)) != len(ids):
            raise DataFormatError("duplicate food ids in dataset")

    def food_ids(self) -> list[str]:
        return [f.id for f in self.foods]

    def __iter__(self):
        return iter(self.foods)

    def __len__(self):
        return len(self.foods)


def _open(path_or_stream) -> tuple[IO[str], bool]:
    if hasattr(path_or_stream, "read"):
        return path_or_stream, False
    return open(path_or_stream, "r", encoding="utf-8", newline=""), True


def _parse_number(raw: str, row_num: int, column: str) -> tuple[float, bool]:
    """Returns (value, was_blank)."""
    raw = raw.strip() if raw is not None else ""
    if raw == "":
        return 0.0, True
    try:
        return float(raw), False
    except ValueError:
        raise DataFormatError(
            f"row {row_num}, column {column!r}: {raw!r} is not a number"
        ) from None


def load_foods(path_or_stream, provenance: str = "") -> Dataset:
    """Read a food-price/composition CSV into a Dataset.

    Blank numeric cells count as 0 and are tallied in Dataset.warnings.
    """
    stream, owned = _open(path_or_stream)
    try:
        reader = csv.DictReader(stream)
        if reader.fieldnames is None:
            raise DataFormatError("empty file: header row required")
        header = [h.strip() for h in reader.fieldnames]
        missing = [c for c in MANDATORY_FOOD_COLUMNS if c not in header]
        if missing:
            raise DataFormatError(f"missing mandatory column(s): {', '.join(missing)}")
        nutrient_cols = {}
        for col in header:
            if col in MANDATORY_FOOD_COLUMNS or col in OPTIONAL_FOOD_COLUMNS:
                continue
            if col not in COLUMN_TO_NUTRIENT:
                known = ", ".join(sorted(COLUMN_TO_NUTRIENT))
                raise DataFormatError(
                    f"unknown nutrient column {col!r}; expected <nutrient>_<unit> "
                    f"from: {known}"
                )
            nutrient_cols[col] = COLUMN_TO_NUTRIENT[col]

        foods = []
        seen = {}
        blank_cells = 0
        for row_num, row in enumerate(reader, start=2):
            fid = (row.get("id") or "").strip()
            if not fid:
                raise DataFormatError(f"row {row_num}: empty food id")
            if fid in seen:
                raise DataFormatError(
                    f"row {row_num}: duplicate id {fid!r} (first at row {seen[fid]})"
                )
            seen[fid] = row_num
            group_raw = (row.get("group") or "").strip()
            try:
                group = FoodGroup(group_raw)
            except ValueError:
                allowed = ", ".join(g.value for g in FoodGroup)
                raise DataFormatError(
                    f"row {row_num}: unknown group {group_raw!r} (one of: {allowed})"
                ) from None
            price, blank = _parse_number(row.get("price_per_serving", ""), row_num, "price_per_serving")
            blank_cells += blank
            serving, blank = _parse_number(row.get("serving_g", ""), row_num, "serving_g")
            blank_cells += blank
            composition = {}
            for col, nutrient in nutrient_cols.items():
                value, blank = _parse_number(row.get(col, ""), row_num, col)
                blank_cells += blank
                composition[nutrient] = value
            source = (row.get("source_id") or "").strip() or None
            try:
                foods.append(
                    FoodItem(
                        id=fid,
                        name=(row.get("name") or "").strip(),
                        group=group,
                        price_per_serving=price,
                        serving_g=serving,
                        composition=composition,
                        source_id=source,
                        calorie_free=composition.get("energy", 0.0) == 0.0,
                    )
                )
            except ModelError as exc:
                raise DataFormatError(f"row {row_num}: {exc}") from None
        warnings = []
        if blank_cells:
            warnings.append(f"{blank_cells} blank cell(s) treated as 0")
        if not foods:
            warnings.append("no food rows (header only)")
        return Dataset(tuple(foods), provenance=provenance, warnings=tuple(warnings))
    finally:
        if owned:
            stream.close()


def _requirement_entries(reader: csv.DictReader):
    energy_kcal = None
    entries = []
    for row_num, row in enumerate(reader, start=2):
        nutrient = (row.get("nutrient") or "").strip()
        unit = (row.get("unit") or "").strip()
        kind_raw = (row.get("bound_kind") or "").strip()
        prov_raw = (row.get("provenance") or "").strip() or "custom"
        value, blank = _parse_number(row.get("value", ""), row_num, "value")
        if blank:
            raise DataFormatError(f"row {row_num}: value is required")
        try:
            kind = BoundKind(kind_raw)
        except ValueError:
            raise DataFormatError(
                f"row {row_num}: bound_kind must be lower/upper/equality, got {kind_raw!r}"
            ) from None
        try:
            prov = Provenance(prov_raw)
        except ValueError:
            allowed = ", ".join(p.value for p in Provenance)
            raise DataFormatError(
                f"row {row_num}: unknown provenance {prov_raw!r} (one of: {allowed})"
            ) from None
        if nutrient == "energy":
            if kind is not BoundKind.EQUALITY:
                raise DataFormatError(f"row {row_num}: energy must be an equality bound")
            if unit != "kcal":
                raise DataFormatError(f"row {row_num}: energy unit must be kcal, got {unit!r}")
            if energy_kcal is not None:
                raise DataFormatError(f"row {row_num}: energy appears more than once")
            energy_kcal = value
            continue
        if nutrient not in UNITS:
            raise DataFormatError(f"row {row_num}: unknown nutrient {nutrient!r}")
        canonical = unit_of(nutrient)
        if unit == canonical:
            basis = "amount"
        elif unit == canonical + _DENSITY_SUFFIX:
            basis = "per_1000_kcal"
        elif unit == _PERCENT_ENERGY_UNIT:
            basis = "percent_energy"
        else:
            raise DataFormatError(
                f"row {row_num}: {nutrient} unit {unit!r} does not match the "
                f"canonical {canonical!r} (or {canonical + _DENSITY_SUFFIX!r} / "
                f"{_PERCENT_ENERGY_UNIT!r})"
            )
        entries.append(DriEntry(nutrient, kind, value, basis=basis, provenance=prov))
    if energy_kcal is None:
        raise DataFormatError("requirements must include an energy equality row")
    return energy_kcal, entries


def load_requirements(path_or_stream, label: str | None = None) -> RequirementSet:
    """Read a requirement-schedule CSV; delegates to build_requirement_set."""
    stream, owned = _open(path_or_stream)
    try:
        reader = csv.DictReader(stream)
        if reader.fieldnames is None:
            raise DataFormatError("empty file: header row required")
        header = [h.strip() for h in reader.fieldnames]
        missing = [c for c in REQUIREMENT_COLUMNS if c not in header]
        if missing:
            raise DataFormatError(f"missing mandatory column(s): {', '.join(missing)}")
        energy_kcal, entries = _requirement_entries(reader)
        if label is None:
            name = getattr(path_or_stream, "name", None) or getattr(stream, "name", "requirements")
            label = Path(str(name)).stem
        try:
            return build_requirement_set(label, energy_kcal, entries)
        except ModelError as exc:
            raise DataFormatError(str(exc)) from None
    finally:
        if owned:
            stream.close()


# ---------------------------------------------------------------------------
# Canonical JSON + sessions


def canonical_json(payload) -> str:
    """The one JSON shape used everywhere bytes matter (CLI, service,
    sessions): sorted keys, 2-space indent, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2, allow_nan=False) + "\n"


def save_session(
    path, plan: DietPlan, dataset_ref: str | None = None, reqs_ref: str | None = None
) -> None:
    payload = {
        "v": SCHEMA_VERSION,
        "plan": {fid: qty for fid, qty in sorted(plan.items())},
        "dataset": dataset_ref,
        "requirements": reqs_ref,
    }
    Path(path).write_text(canonical_json(payload), encoding="utf-8")


def load_session(path) -> tuple[DietPlan, str | None, str | None]:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DataFormatError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(payload, dict) or payload.get("v") != SCHEMA_VERSION:
        raise DataFormatError(f"{path}: expected session JSON with \"v\": {SCHEMA_VERSION}")
    plan_raw = payload.get("plan", {})
    if not isinstance(plan_raw, dict):
        raise DataFormatError(f"{path}: plan must be an object of id -> servings")
    try:
        plan = DietPlan({str(k): float(v) for k, v in plan_raw.items()})
    except (TypeError, ValueError, ModelError) as exc:
        raise DataFormatError(f"{path}: bad plan ({exc})") from None
    return plan, payload.get("dataset"), payload.get("requirements")


def load_plan(path) -> DietPlan:
    """A plan file is either a bare {id: servings} object or a session."""
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DataFormatError(f"{path}: not valid JSON ({exc})") from None
    if isinstance(payload, dict) and "v" in payload:
        plan, _, _ = load_session(path)
        return plan
    if not isinstance(payload, dict):
        raise DataFormatError(f"{path}: expected an object of id -> servings")
    try:
        return DietPlan({str(k): float(v) for k, v in payload.items()})
    except (TypeError, ValueError, ModelError) as exc:
        raise DataFormatError(f"{path}: bad plan ({exc})") from None


def dataset_to_csv(dataset: Dataset) -> str:
    """Inverse of load_foods for round-trip persistence."""
    nutrient_keys = []
    for food in dataset.foods:
        for key in food.composition:
            if key not in nutrient_keys:
                nutrient_keys.append(key)
    from .nutrients import canonical_sorted, column_name

    nutrient_keys = canonical_sorted(nutrient_keys)
    buf = _stdio.StringIO()
    writer = csv.writer(buf, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
    writer.writerow(
        list(MANDATORY_FOOD_COLUMNS) + ["source_id"] + [column_name(k) for k in nutrient_keys]
    )
    for food in dataset.foods:
        writer.writerow(
            [
                food.id,
                food.name,
                food.group.value,
                repr(food.price_per_serving),
                repr(food.serving_g),
                food.source_id or "",
            ]
            + [repr(food.amount_of(k)) for k in nutrient_keys]
        )
    return buf.getvalue()
