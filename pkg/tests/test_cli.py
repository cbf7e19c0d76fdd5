"""CLI subcommands: exit codes, table output and engine agreement."""
from __future__ import annotations

import json
import subprocess
import sys

import pytest

from distaf.cli import main
from distaf.framework import Phase
from distaf.scoring import assessment_scorecard

from .conftest import DEMO_PATH, ROOT, TEMPLATE_PATH

TEMPLATE = str(TEMPLATE_PATH)
DEMO = str(DEMO_PATH)


class TestValidate:
    def test_sample_template_ok(self, capsys):
        assert main(["validate", TEMPLATE]) == 0
        out = capsys.readouterr().out
        assert "distaf-sample" in out and "OK" in out

    def test_coverage_gap_names_answer(self, tmp_path, capsys):
        doc = json.loads(TEMPLATE_PATH.read_text())
        pillar = next(p for p in doc["pillars"] if p["code"] == "S")
        mech = next(m for m in pillar["mechanisms"] if m["code"] == "AC")
        answer = mech["cluster_questions"][0]["answers"][2]
        del answer["configuration"]["S.AC.D9"]
        broken = tmp_path / "broken.json"
        broken.write_text(json.dumps(doc))

        assert main(["validate", str(broken)]) == 1
        out = capsys.readouterr().out
        assert "answer configuration incomplete" in out
        assert "c) advanced configuration" in out  # offending answer named

    def test_missing_file_is_io_error(self, capsys):
        assert main(["validate", "no-such-file.json"]) == 2

    def test_unparseable_json(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{nope")
        assert main(["validate", str(bad)]) == 1


class TestScore:
    def test_demo_table_has_six_pillars_two_phases(self, capsys):
        assert main(["score", TEMPLATE, DEMO]) == 0
        out = capsys.readouterr().out
        assert out.count("== Design phase") == 1
        assert out.count("== Operational phase") == 1
        for code in ("S ", "P ", "E ", "RES", "ROB", "REL"):
            assert out.count(code.strip() + " ") >= 2 or code.strip() in out

    def test_phase_filter(self, capsys):
        assert main(["score", TEMPLATE, DEMO, "--phase", "design"]) == 0
        out = capsys.readouterr().out
        assert "== Design phase" in out
        assert "== Operational phase" not in out

    def test_values_match_engine(self, capsys, sample_template, demo_state):
        card = assessment_scorecard(sample_template, demo_state)
        assert main(["score", TEMPLATE, DEMO]) == 0
        out = capsys.readouterr().out
        for phase in Phase:
            for code, node in card.phase(phase).pillars.items():
                if node.capped_score is not None:
                    assert f"{node.capped_score:.1f}" in out

    def test_values_match_api_scorecard(self, capsys, client, demo_state):
        # same inputs through the HTTP API must yield the numbers the CLI prints
        from .test_api import _login

        client.app.state.store.import_assessment(demo_state)
        headers = _login(client, "alice")
        served = client.get("/assessments/turing-demo/scorecard", headers=headers).json()
        assert main(["score", TEMPLATE, DEMO]) == 0
        out = capsys.readouterr().out
        for phase in ("design", "operational"):
            for node in served[phase]["pillars"].values():
                if node["capped_score"] is not None:
                    assert f"{node['capped_score']:.1f}" in out

    def test_template_mismatch_is_domain_error(self, tmp_path, capsys):
        doc = json.loads(DEMO_PATH.read_text())
        doc["template_id"] = "other"
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(doc))
        assert main(["score", TEMPLATE, str(bad)]) == 1

    def test_missing_assessment_file(self):
        assert main(["score", TEMPLATE, "ghost.json"]) == 2


class TestExport:
    def test_export_dump_roundtrip(self, capsys):
        assert main(["export", TEMPLATE, DEMO, "--format", "dump"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["assessment"]["id"] == "turing-demo"
        assert doc["scorecard"]["template_id"] == "distaf-sample"

    def test_export_tabular_to_file(self, tmp_path, capsys):
        out_file = tmp_path / "out.csv"
        assert main(["export", TEMPLATE, DEMO, "--format", "tabular",
                     "-o", str(out_file)]) == 0
        text = out_file.read_text(encoding="utf-8")
        assert text.startswith("code,phase,value,origin,mechanism,pillar,band")

    def test_usage_error_exit_3(self):
        with pytest.raises(SystemExit) as exc:
            main(["export", TEMPLATE, DEMO, "--format", "xlsx"])
        assert exc.value.code == 3


class TestMisc:
    def test_unknown_subcommand_exit_3(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 3

    def test_no_arguments_exit_3(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 3

    def test_init_admin(self, tmp_path, capsys):
        assert main(["init-admin", "--data-dir", str(tmp_path), "--username", "boss"]) == 0
        out = capsys.readouterr().out
        assert "temporary password" in out
        users = json.loads((tmp_path / "users.json").read_text())
        assert users[0]["username"] == "boss"
        assert users[0]["role"] == "admin"
        assert users[0]["must_change_password"] is True

    def test_init_admin_refuses_second_run(self, tmp_path, capsys):
        main(["init-admin", "--data-dir", str(tmp_path)])
        assert main(["init-admin", "--data-dir", str(tmp_path)]) == 1

    def test_module_entry_point(self):
        result = subprocess.run(
            [sys.executable, "-m", "distaf", "validate", TEMPLATE],
            capture_output=True, text=True, cwd=ROOT,
        )
        assert result.returncode == 0
        assert "OK" in result.stdout

    def test_deterministic_output(self, capsys):
        main(["score", TEMPLATE, DEMO])
        first = capsys.readouterr().out
        main(["score", TEMPLATE, DEMO])
        assert capsys.readouterr().out == first
