import json

import pytest

from nutrilp.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSolveCommand:
    def test_table_output_and_exit_zero(self, capsys):
        code, out, err = run(
            capsys, "solve", "--foods", "three_sisters", "--reqs", "female_30"
        )
        assert code == 0
        assert "4.82" in out
        assert "1.14" in out
        assert "0.94" in out
        assert "2.48" in out
        assert "binding" in out

    def test_json_output_parses_and_agrees_with_table(self, capsys):
        code, out, _ = run(
            capsys, "solve", "--foods", "three_sisters", "--reqs", "female_30", "--json"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["status"] == "optimal"
        assert doc["plan"]["corn"] == pytest.approx(4.824, abs=5e-3)
        assert doc["cost"] == pytest.approx(2.4815, abs=5e-4)
        binding = {(b["nutrient"], b["kind"]) for b in doc["binding"]}
        assert binding == {("energy", "equality"), ("vitamin_a", "lower"), ("iron", "lower")}

    def test_missing_file_exits_one(self, capsys):
        code, out, err = run(
            capsys, "solve", "--foods", "no_such_file.csv", "--reqs", "female_30"
        )
        assert code == 1
        assert "error" in err

    def test_data_dir_env_var_resolves_names(self, capsys, tmp_path, monkeypatch):
        (tmp_path / "foods").mkdir()
        (tmp_path / "requirements").mkdir()
        (tmp_path / "foods" / "solo.csv").write_text(
            "id,name,group,price_per_serving,serving_g,energy_kcal\n"
            "oats,Oats,starchy_staples,0.20,40,150\n"
        )
        (tmp_path / "requirements" / "minimal.csv").write_text(
            "nutrient,unit,bound_kind,value,provenance\n"
            "energy,kcal,equality,1500,EER\n"
        )
        monkeypatch.setenv("NUTRILP_DATA_DIR", str(tmp_path))
        code, out, _ = run(capsys, "solve", "--foods", "solo", "--reqs", "minimal", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["plan"]["oats"] == pytest.approx(10.0)  # 1500 kcal / 150

    def test_infeasible_exits_two_with_named_bounds(self, capsys, tmp_path, foods):
        two = tmp_path / "two.csv"
        two.write_text(
            "id,name,group,price_per_serving,serving_g,vitamin_a_mcg_rae,iron_mg,energy_kcal\n"
            'beans,"Black beans",nuts_beans_seeds_oils,0.36,143,0,2.71,130\n'
            'squash,"Squash",fruits_vegetables,0.51,140,745,0.98,63\n'
        )
        code, out, err = run(
            capsys, "solve", "--foods", str(two), "--reqs", "female_30"
        )
        assert code == 2
        assert "energy" in err
        assert "iron upper" in err

    def test_price_override(self, capsys):
        code, out, _ = run(
            capsys, "solve", "--foods", "three_sisters", "--reqs", "female_30",
            "--price", "squash=1.02", "--json",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["plan"]["squash"] == pytest.approx(0.9396, abs=1e-3)
        assert doc["cost"] > 2.48


class TestEvaluateCommand:
    def test_inline_plan(self, capsys):
        code, out, _ = run(
            capsys, "evaluate", "--foods", "three_sisters", "--reqs", "female_30",
            "--set", "beans=6.30", "--set", "squash=0.94",
        )
        assert code == 0
        assert "37.7" in out
        assert "fully adequate: no" in out

    def test_plan_file(self, capsys, tmp_path):
        plan = tmp_path / "plan.json"
        plan.write_text(json.dumps({"corn": 4.8241, "beans": 1.1399, "squash": 0.9396}))
        code, out, _ = run(
            capsys, "evaluate", "--foods", "three_sisters", "--reqs", "female_30",
            "--plan", str(plan), "--json",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["fully_adequate"] is True
        assert doc["cost"] == pytest.approx(2.4815, abs=2e-3)

    def test_band_glyphs_present(self, capsys):
        code, out, _ = run(
            capsys, "evaluate", "--foods", "three_sisters", "--reqs", "female_30",
        )
        assert code == 0
        assert "deficient-severe" in out


class TestWhatIfCommand:
    def test_doubling_squash(self, capsys):
        code, out, _ = run(
            capsys, "whatif", "--foods", "three_sisters", "--reqs", "female_30",
            "--price", "squash=1.02",
        )
        assert code == 0
        assert "cost before: 2.48" in out
        assert "cost after:  2.96" in out
        assert "entering: (none)" in out

    def test_json_mode(self, capsys):
        code, out, _ = run(
            capsys, "whatif", "--foods", "three_sisters", "--reqs", "female_30",
            "--price", "squash=1.02", "--json",
        )
        doc = json.loads(out)
        assert doc["delta"]["cost_change"] == pytest.approx(0.479, abs=2e-3)
        assert doc["after"]["plan"]["squash"] == pytest.approx(0.9396, abs=1e-3)


class TestRegionCommand:
    def test_svg_file_written(self, capsys, tmp_path):
        out_file = tmp_path / "region.svg"
        code, out, err = run(
            capsys, "region", "--foods", "three_sisters", "--reqs", "female_30",
            "--axes", "beans,squash", "--no-energy", "--out", str(out_file),
        )
        assert code == 0
        svg = out_file.read_text()
        assert svg.startswith("<?xml")
        assert "<polygon" in svg

    def test_json_geometry(self, capsys):
        code, out, _ = run(
            capsys, "region", "--foods", "three_sisters", "--reqs", "female_30",
            "--axes", "beans,squash", "--no-energy", "--json",
        )
        doc = json.loads(out)
        assert len(doc["vertices"]) == 4
        assert doc["optimum"] == [pytest.approx(6.302286), pytest.approx(0.939597)]

    def test_filler_projection(self, capsys):
        # --no-energy keeps the test robust to the 4-decimal filler level;
        # the energy line passes within 4e-4 of the corner and would split
        # it into a sliver at anything but the exact solved level
        code, out, _ = run(
            capsys, "region", "--foods", "three_sisters", "--reqs", "female_30",
            "--axes", "beans,squash", "--filler", "corn=4.8241", "--no-energy",
            "--json",
        )
        doc = json.loads(out)
        assert len(doc["vertices"]) == 4
        corner = min(doc["vertices"], key=lambda v: (v[1], v[0]))
        assert corner[0] == pytest.approx(1.14, abs=0.01)
        assert corner[1] == pytest.approx(0.94, abs=0.01)

    def test_unknown_axis_food(self, capsys):
        code, out, err = run(
            capsys, "region", "--foods", "three_sisters", "--reqs", "female_30",
            "--axes", "beans,tofu",
        )
        assert code == 1
        assert "tofu" in err


class TestReportCommand:
    def test_three_tables_written(self, capsys, tmp_path):
        guess = tmp_path / "guess1.json"
        guess.write_text(json.dumps({"beans": 6.30, "squash": 0.94}))
        out_dir = tmp_path / "report"
        code, out, err = run(
            capsys, "report", "--foods", "three_sisters", "--reqs", "female_30",
            "--plans", str(guess), "--out", str(out_dir),
        )
        assert code == 0
        t1 = (out_dir / "table1_quantities.csv").read_text().splitlines()
        assert t1[0] == "food,guess1,solved"
        assert t1[-1].startswith("total_cost,2.7474,2.4815")
        t2 = (out_dir / "table2_adequacy.csv").read_text().splitlines()
        assert t2[0].startswith("nutrient,unit,lower_bound,upper_bound,guess1_delivered")
        assert any(line.startswith("energy,kcal") for line in t2)
        t3 = (out_dir / "table3_solved_composition.csv").read_text().splitlines()
        assert t3[0] == "nutrient,unit,delivered"
        assert any(line.startswith("iron,mg,18.0000") for line in t3)
