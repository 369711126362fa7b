import json
import time

import pytest
from fastapi.testclient import TestClient

from nutrilp.cli import main as cli_main
from nutrilp.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


class TestDatasets:
    def test_listing(self, client):
        doc = client.get("/api/datasets").json()
        ids = [d["id"] for d in doc["datasets"]]
        assert "three_sisters" in ids
        three = next(d for d in doc["datasets"] if d["id"] == "three_sisters")
        assert three["food_count"] == 3
        req_ids = [r["id"] for r in doc["requirement_sets"]]
        assert {"female_30", "male_30"} <= set(req_ids)

    def test_food_detail(self, client):
        doc = client.get("/api/datasets/three_sisters/foods").json()
        foods = {f["id"]: f for f in doc["foods"]}
        assert foods["squash"]["composition"]["vitamin_a"] == 745
        assert foods["beans"]["price_per_serving"] == 0.36
        assert foods["corn"]["group"] == "starchy_staples"

    def test_unknown_dataset_404(self, client):
        assert client.get("/api/datasets/nope/foods").status_code == 404

    def test_requirements_detail(self, client):
        doc = client.get("/api/requirements/female_30").json()
        assert doc["energy_kcal"] == 2330
        kinds = {(b["nutrient"], b["kind"]) for b in doc["bounds"]}
        assert ("iron", "lower") in kinds


class TestEvaluate:
    def test_empty_plan_all_deficient(self, client):
        response = client.post(
            "/api/evaluate",
            json={"dataset": "three_sisters", "reqs": "female_30", "plan": {}},
        )
        assert response.status_code == 200
        doc = response.json()
        assert doc["fully_adequate"] is False
        assert all(
            row["band"] == "deficient-severe"
            for row in doc["nutrients"]
            if row["percent_of_lower"] is not None
        )

    def test_solved_plan_adequate(self, client):
        solved = client.post(
            "/api/solve", json={"dataset": "three_sisters", "reqs": "female_30"}
        ).json()
        response = client.post(
            "/api/evaluate",
            json={
                "dataset": "three_sisters",
                "reqs": "female_30",
                "plan": solved["plan"],
            },
        )
        doc = response.json()
        assert doc["fully_adequate"] is True
        assert doc["cost"] == pytest.approx(2.4815, abs=5e-4)

    def test_unknown_food_in_plan_400(self, client):
        response = client.post(
            "/api/evaluate",
            json={"dataset": "three_sisters", "reqs": "female_30", "plan": {"x": 1}},
        )
        assert response.status_code == 400

    def test_evaluation_is_fast(self, client):
        payload = {
            "dataset": "three_sisters",
            "reqs": "female_30",
            "plan": {"beans": 1.0, "corn": 2.0},
        }
        client.post("/api/evaluate", json=payload)  # warm-up
        start = time.perf_counter()
        for _ in range(10):
            client.post("/api/evaluate", json=payload)
        per_call = (time.perf_counter() - start) / 10
        assert per_call < 0.05


class TestSolve:
    def test_three_sisters_cost(self, client):
        doc = client.post(
            "/api/solve", json={"dataset": "three_sisters", "reqs": "female_30"}
        ).json()
        assert doc["cost"] == pytest.approx(2.48, abs=0.01)
        assert doc["plan"]["corn"] == pytest.approx(4.82, abs=0.01)

    def test_price_override(self, client):
        doc = client.post(
            "/api/solve",
            json={
                "dataset": "three_sisters",
                "reqs": "female_30",
                "price_overrides": {"squash": 1.02},
            },
        ).json()
        assert doc["plan"]["squash"] == pytest.approx(0.9396, abs=1e-3)

    def test_infeasible_422_with_diagnostics(self, client):
        response = client.post(
            "/api/solve", json={"dataset": "three_sisters", "reqs": "male_30"}
        )
        assert response.status_code == 422
        doc = response.json()
        assert doc["status"] == "infeasible"
        assert any("fiber" in c for c in doc["conflicts"])

    def test_cors_header(self, client):
        response = client.post(
            "/api/solve",
            json={"dataset": "three_sisters", "reqs": "female_30"},
            headers={"Origin": "http://localhost:5173"},
        )
        assert response.headers.get("access-control-allow-origin") == "*"


class TestRegion:
    def test_geometry_schema(self, client):
        doc = client.post(
            "/api/region",
            json={
                "dataset": "three_sisters",
                "reqs": "female_30",
                "axes": ["beans", "squash"],
                "include_energy": False,
            },
        ).json()
        assert len(doc["vertices"]) == 4
        assert doc["optimum"] == [pytest.approx(6.302286), pytest.approx(0.939597)]

    def test_unknown_axis_400(self, client):
        response = client.post(
            "/api/region",
            json={
                "dataset": "three_sisters",
                "reqs": "female_30",
                "axes": ["beans", "tofu"],
            },
        )
        assert response.status_code == 400


def cli_json(capsys, *argv) -> bytes:
    code = cli_main(list(argv))
    assert code == 0
    return capsys.readouterr().out.encode()


PARITY_CASES = []
for plan in (
    {}, {"beans": 1.0}, {"corn": 3.0, "beans": 0.5}, {"squash": 2.0},
    {"beans": 6.30, "squash": 0.94}, {"corn": 4.8241, "beans": 1.1399, "squash": 0.9396},
    {"corn": 10.0}, {"beans": 0.1, "squash": 0.1, "corn": 0.1},
):
    PARITY_CASES.append(("evaluate", plan))
for overrides in (None, {"squash": 1.02}, {"beans": 0.18}, {"corn": 0.66},
                  {"beans": 0.72, "squash": 0.255}, {"corn": 0.165}):
    PARITY_CASES.append(("solve", overrides))
for axes, filler, energy in (
    (["beans", "squash"], None, False),
    (["beans", "squash"], None, True),
    (["beans", "corn"], None, False),
    (["corn", "squash"], None, True),
    (["beans", "squash"], ("corn", 1.0), True),
    (["beans", "squash"], ("corn", 3.0), False),
):
    PARITY_CASES.append(("region", (axes, filler, energy)))


class TestCliServiceParity:
    @pytest.mark.parametrize("kind,arg", PARITY_CASES)
    def test_bodies_byte_identical(self, client, capsys, kind, arg):
        if kind == "evaluate":
            argv = ["evaluate", "--foods", "three_sisters", "--reqs", "female_30", "--json"]
            for fid, qty in arg.items():
                argv += ["--set", f"{fid}={qty}"]
            body = client.post(
                "/api/evaluate",
                json={"dataset": "three_sisters", "reqs": "female_30", "plan": arg},
            ).content
        elif kind == "solve":
            argv = ["solve", "--foods", "three_sisters", "--reqs", "female_30", "--json"]
            payload = {"dataset": "three_sisters", "reqs": "female_30"}
            if arg:
                payload["price_overrides"] = arg
                for fid, price in arg.items():
                    argv += ["--price", f"{fid}={price}"]
            body = client.post("/api/solve", json=payload).content
        else:
            axes, filler, energy = arg
            argv = [
                "region", "--foods", "three_sisters", "--reqs", "female_30",
                "--axes", ",".join(axes), "--json",
            ]
            payload = {
                "dataset": "three_sisters", "reqs": "female_30",
                "axes": axes, "include_energy": energy,
            }
            if not energy:
                argv += ["--no-energy"]
            if filler:
                argv += ["--filler", f"{filler[0]}={filler[1]}"]
                payload["filler"] = {"id": filler[0], "servings": filler[1]}
            body = client.post("/api/region", json=payload).content
        assert cli_json(capsys, *argv) == body

    def test_parity_corpus_is_large_enough(self):
        assert len(PARITY_CASES) >= 20
