"""Scenario schema, dispatch, emission, CLI behavior, determinism."""

import json
import os
from fractions import Fraction as F

import pytest

from posterior_dynamics import cli
from posterior_dynamics import figures as fig
from posterior_dynamics import priors as pr
from posterior_dynamics.scenario import (
    Scenario,
    ScenarioError,
    run_scenario,
    scenario_from_json,
)


def minimal_scenario(**overrides) -> dict:
    base = {
        "family": {"kind": "bernoulli"},
        "prior": {
            "type": "atoms",
            "atoms": [
                {"theta": "1/2", "weight": "1/2"},
                {"theta": "1/1", "weight": "1/2"},
            ],
        },
        "theta0": "1/2",
        "theta1": "1/2",
        "horizon": 5,
    }
    base.update(overrides)
    return base


class TestScenarioSchema:
    def test_minimal_parses(self):
        scenario = scenario_from_json(minimal_scenario())
        assert scenario.numeric_mode == "auto"
        seq = run_scenario(scenario)
        assert seq.value(1).as_fraction() == F(2, 3)

    def test_missing_field(self):
        with pytest.raises(ScenarioError, match="horizon"):
            scenario_from_json({k: v for k, v in minimal_scenario().items() if k != "horizon"})

    def test_theta0_must_be_atom(self):
        with pytest.raises(ScenarioError, match="atom"):
            scenario_from_json(minimal_scenario(theta0="1/3"))

    def test_horizon_too_small_for_diagnostics(self):
        with pytest.raises(ScenarioError, match="horizon"):
            scenario_from_json(minimal_scenario(horizon=2))

    def test_bad_mode(self):
        with pytest.raises(ScenarioError):
            scenario_from_json(minimal_scenario(numeric_mode="sloppy"))

    def test_round_trip_through_loader(self, tmp_path):
        path = tmp_path / "scn.json"
        path.write_text(json.dumps(minimal_scenario()))
        from posterior_dynamics.scenario import load_scenario

        scenario = load_scenario(str(path))
        assert scenario.name == "scn"

    def test_json_error_is_line_anchored(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"family": }')
        from posterior_dynamics.scenario import load_scenario

        with pytest.raises(ScenarioError, match=r"broken\.json:1:"):
            load_scenario(str(path))


class TestBundledScenarios:
    def test_all_bundled_parse(self):
        for name in fig.BUNDLED:
            scenario = fig.bundled_scenario(name)
            assert scenario.name == name

    def test_unknown_bundled(self):
        with pytest.raises(ValueError):
            fig.bundled_scenario("figure9")


class TestCliCommands:
    def test_psi_writes_files(self, tmp_path):
        path = tmp_path / "scn.json"
        payload = minimal_scenario(horizon=6)
        payload["outputs"] = ["csv", "json", "svg"]
        path.write_text(json.dumps(payload))
        out = tmp_path / "out"
        code = cli.main(["psi", str(path), "--out", str(out)])
        assert code == 0
        csv_text = (out / "scn.csv").read_text()
        assert csv_text.splitlines()[0] == "n,psi,log_psi,is_mode,lc_violation"
        report = json.loads((out / "scn.json").read_text())
        assert report["schema"] == 1
        assert report["values"][0]["psi_rational"] == "2/3"
        svg = (out / "scn.svg").read_text()
        assert svg.startswith("<svg") and "polyline" in svg

    def test_psi_missing_scenario_is_schema_error(self, capsys):
        assert cli.main(["psi", "/nonexistent/file.json"]) == cli.EXIT_SCHEMA

    def test_psi_unsupported_pairing_is_numeric_error(self, tmp_path):
        payload = minimal_scenario(
            family={"kind": "poisson"},
            prior={"type": "stdnormal"},
            theta0=1.0,
            theta1=1.0,
        )
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(payload))
        assert cli.main(["psi", str(path), "--out", str(tmp_path)]) == cli.EXIT_NUMERIC

    def test_mode_override(self, tmp_path):
        path = tmp_path / "scn.json"
        path.write_text(json.dumps(minimal_scenario(horizon=6)))
        out = tmp_path / "out"
        code = cli.main(["psi", str(path), "--mode", "float", "--out", str(out)])
        assert code == 0
        report = json.loads((out / "scn.json").read_text())
        assert report["repr"] == "float"
        assert "psi_rational" not in report["values"][0]

    def test_audit_known_suite(self, tmp_path):
        assert cli.main(["audit", "turan", "--seed", "42", "--out", str(tmp_path)]) == 0
        report = json.loads((tmp_path / "audit_turan.json").read_text())
        assert report["pass"] is True

    def test_audit_alias_for_polynomial_suite(self, tmp_path):
        assert cli.main(["audit", "appendix_a4", "--out", str(tmp_path)]) == 0
        report = json.loads((tmp_path / "audit_appendix_a4.json").read_text())
        assert report["suite"] == "positivity"

    def test_beta_counterexample_via_cli(self, tmp_path):
        assert cli.main(["psi", "beta71", "--out", str(tmp_path)]) == 0
        report = json.loads((tmp_path / "beta71.json").read_text())
        violations = report["diagnostics"]["logconcavity_violations"]
        assert set(violations) & {2, 3, 4}


class TestDeterminism:
    def test_audit_reports_are_byte_identical(self, tmp_path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert cli.main(["audit", "orders", "--seed", "42", "--out", str(out1)]) == 0
        assert cli.main(["audit", "orders", "--seed", "42", "--out", str(out2)]) == 0
        a = (out1 / "audit_orders.json").read_bytes()
        b = (out2 / "audit_orders.json").read_bytes()
        assert a == b

    def test_scenario_outputs_are_byte_identical(self, tmp_path):
        path = tmp_path / "scn.json"
        path.write_text(json.dumps(minimal_scenario(horizon=8)))
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert cli.main(["psi", str(path), "--out", str(out1)]) == 0
        assert cli.main(["psi", str(path), "--out", str(out2)]) == 0
        for name in ("scn.csv", "scn.json"):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()

    def test_parallel_figures_match_serial(self, tmp_path, monkeypatch):
        serial, parallel = tmp_path / "serial", tmp_path / "parallel"
        monkeypatch.delenv("PD_THREADS", raising=False)
        assert cli.main(["figures", "3", "--out", str(serial)]) == 0
        monkeypatch.setenv("PD_THREADS", "2")
        assert cli.main(["figures", "3", "--out", str(parallel)]) == 0
        assert (serial / "figure3.csv").read_bytes() == (parallel / "figure3.csv").read_bytes()


class TestExponentialPriorScenario:
    def test_exp_prior_rate_path(self, tmp_path):
        payload = {
            "family": {"kind": "exponential"},
            "prior": {"type": "exp", "lambda": "2/1"},
            "theta0": 0.8,
            "theta1": 1.2,
            "horizon": 6,
            "outputs": ["json"],
        }
        path = tmp_path / "exp.json"
        path.write_text(json.dumps(payload))
        out = tmp_path / "out"
        assert cli.main(["psi", str(path), "--out", str(out)]) == 0
        report = json.loads((out / "exp.json").read_text())
        assert report["method"] == "closed_form_exp_bessel"
