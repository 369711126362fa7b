"""Stateless JSON-over-HTTP API for the guesswork studio.

A thin adapter over the library: datasets and requirement schedules are
loaded once at startup into an immutable registry, every request handler
is a pure function over it, and response bodies are built by the same
canonical serializer the CLI uses, so they are byte-identical to the
matching ``nutrilp ... --json`` output.

Run with ``python -m nutrilp.service [--bind HOST:PORT] [--data-dir DIR]``.
"""

from __future__ import annotations

import argparse
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from . import serialize
from .cli import bundled_data_dir
from .diet import (
    DietInfeasibleError,
    StructuralInfeasibilityError,
    apply_price_overrides,
    solve_diet,
)
from .evaluate import evaluate
from .geometry import (
    GeometryError,
    build_region,
    min_cost_vertex,
    project_filler,
    region_geometry,
    two_food_halfplanes,
)
from .io import Dataset, canonical_json, load_foods, load_requirements
from .model import DietPlan, ModelError, RequirementSet, UnknownFoodError


class Registry:
    """Immutable dataset/requirement registry loaded at startup."""

    def __init__(self, data_dir: Path):
        self.data_dir = data_dir
        self.datasets: dict[str, Dataset] = {}
        self.requirements: dict[str, RequirementSet] = {}
        for path in sorted((data_dir / "foods").glob("*.csv")):
            self.datasets[path.stem] = load_foods(path, provenance=str(path))
        for path in sorted((data_dir / "requirements").glob("*.csv")):
            self.requirements[path.stem] = load_requirements(path)

    def dataset(self, dataset_id: str) -> Dataset:
        try:
            return self.datasets[dataset_id]
        except KeyError:
            raise HTTPException(404, f"unknown dataset {dataset_id!r}") from None

    def reqs(self, reqs_id: str) -> RequirementSet:
        try:
            return self.requirements[reqs_id]
        except KeyError:
            raise HTTPException(404, f"unknown requirement set {reqs_id!r}") from None


class EvaluateRequest(BaseModel):
    dataset: str
    reqs: str
    plan: dict[str, float] = Field(default_factory=dict)


class SolveRequest(BaseModel):
    dataset: str
    reqs: str
    price_overrides: dict[str, float] | None = None


class FillerSpec(BaseModel):
    id: str
    servings: float


class RegionRequest(BaseModel):
    dataset: str
    reqs: str
    axes: tuple[str, str]
    filler: FillerSpec | None = None
    include_energy: bool = True


def _json_response(payload, status_code: int = 200) -> Response:
    return Response(
        content=canonical_json(payload),
        status_code=status_code,
        media_type="application/json",
    )


def create_app(data_dir: Path | str | None = None, static_dir: Path | str | None = None) -> FastAPI:
    registry = Registry(Path(data_dir) if data_dir else bundled_data_dir())
    app = FastAPI(title="nutrilp", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.registry = registry

    @app.get("/api/datasets")
    def list_datasets() -> Response:
        return _json_response(
            {
                "datasets": [
                    {
                        "id": dataset_id,
                        "provenance": ds.provenance,
                        "food_count": len(ds),
                    }
                    for dataset_id, ds in sorted(registry.datasets.items())
                ],
                "requirement_sets": [
                    {
                        "id": reqs_id,
                        "label": reqs.label,
                        "energy_kcal": reqs.energy_kcal,
                        "nutrient_count": len(reqs.bounds),
                    }
                    for reqs_id, reqs in sorted(registry.requirements.items())
                ],
            }
        )

    @app.get("/api/datasets/{dataset_id}/foods")
    def dataset_foods(dataset_id: str) -> Response:
        return _json_response(
            serialize.dataset_dict(dataset_id, registry.dataset(dataset_id))
        )

    @app.get("/api/requirements/{reqs_id}")
    def requirement_set(reqs_id: str) -> Response:
        return _json_response(
            serialize.requirements_dict(reqs_id, registry.reqs(reqs_id))
        )

    @app.post("/api/evaluate")
    def evaluate_plan(req: EvaluateRequest) -> Response:
        dataset = registry.dataset(req.dataset)
        reqs = registry.reqs(req.reqs)
        try:
            plan = DietPlan(req.plan)
            report = evaluate(plan, list(dataset.foods), reqs)
        except (ModelError, UnknownFoodError) as exc:
            raise HTTPException(400, str(exc)) from None
        return _json_response(serialize.adequacy_dict(report))

    @app.post("/api/solve")
    def solve_endpoint(req: SolveRequest) -> Response:
        dataset = registry.dataset(req.dataset)
        reqs = registry.reqs(req.reqs)
        foods = list(dataset.foods)
        try:
            if req.price_overrides:
                foods = apply_price_overrides(foods, req.price_overrides)
            solved = solve_diet(foods, reqs)
        except StructuralInfeasibilityError as exc:
            return _json_response(
                {"status": "infeasible", "conflicts": [str(exc)]}, status_code=422
            )
        except DietInfeasibleError as exc:
            return _json_response(
                {"status": "infeasible", "conflicts": exc.conflicts}, status_code=422
            )
        except (ModelError, UnknownFoodError) as exc:
            raise HTTPException(400, str(exc)) from None
        return _json_response(serialize.solved_diet_dict(solved))

    @app.post("/api/region")
    def region_endpoint(req: RegionRequest) -> Response:
        dataset = registry.dataset(req.dataset)
        reqs = registry.reqs(req.reqs)
        index = {f.id: f for f in dataset.foods}
        missing = [fid for fid in req.axes if fid not in index]
        if missing:
            raise HTTPException(400, f"unknown food id(s) in axes: {', '.join(missing)}")
        food_x, food_y = index[req.axes[0]], index[req.axes[1]]
        halfplanes = two_food_halfplanes(
            food_x, food_y, reqs, include_energy=req.include_energy
        )
        if req.filler is not None:
            if req.filler.id not in index:
                raise HTTPException(400, f"unknown filler food id {req.filler.id!r}")
            try:
                halfplanes = project_filler(
                    halfplanes, index[req.filler.id], req.filler.servings
                )
            except GeometryError as exc:
                raise HTTPException(400, str(exc)) from None
        region = build_region(halfplanes)
        prices = (food_x.price_per_serving, food_y.price_per_serving)
        cost_values = []
        if not region.empty and region.vertices:
            try:
                _, cost = min_cost_vertex(region, prices)
                cost_values = [cost]
            except GeometryError:
                pass
        return _json_response(region_geometry(region, prices, cost_values))

    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="studio")
    return app


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--bind", default="127.0.0.1:8000", metavar="HOST:PORT")
    parser.add_argument("--data-dir", default=None)
    parser.add_argument(
        "--static-dir",
        default=None,
        help="serve the studio at / (the frontend/ dir, after npm run build)",
    )
    args = parser.parse_args(argv)
    host, _, port = args.bind.rpartition(":")
    import uvicorn

    uvicorn.run(
        create_app(args.data_dir, args.static_dir),
        host=host or "127.0.0.1",
        port=int(port),
    )


if __name__ == "__main__":
    main()
