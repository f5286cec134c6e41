import json

import numpy as np
import pytest

from polargd.cli import main
from polargd.experiments import CSV_COLUMNS
from polargd.matrixio import read_matrix


def run(args):
    return main([str(a) for a in args])


class TestGen:
    def test_writes_requested_spectrum(self, tmp_path):
        out = tmp_path / "c.csv"
        assert run(["gen", "--n", 3, "--spectrum", "3,2,1", "--seed", 5, "--out", out]) == 0
        c = read_matrix(out)
        assert np.allclose(np.linalg.svd(c, compute_uv=False), [3, 2, 1], atol=1e-12)

    def test_matrixmarket_output(self, tmp_path):
        out = tmp_path / "c.mtx"
        assert run(["gen", "--n", 2, "--cond", 10, "--out", out]) == 0
        assert out.read_text().startswith("%%MatrixMarket matrix array real general")


class TestSolve:
    def test_smoke_outputs(self, tmp_path):
        csv, js, svg = tmp_path / "t.csv", tmp_path / "t.json", tmp_path / "t.svg"
        code = run([
            "solve", "--n", 2, "--trials", 1, "--seed", 3, "--radius", 1.0,
            "--csv", csv, "--json", js, "--svg", svg,
        ])
        assert code == 0
        lines = csv.read_text().splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert len(lines) > 2
        doc = json.loads(js.read_text())
        assert doc["trials"][0]["termination"] == "grad_tol"
        assert doc["envelope_violations"] == []
        assert svg.read_text().startswith("<svg")

    def test_byte_identical_reruns(self, tmp_path):
        csv, js, svg = tmp_path / "t.csv", tmp_path / "t.json", tmp_path / "t.svg"
        args = [
            "solve", "--n", 4, "--cond", 10, "--trials", 3, "--seed", 11,
            "--radius", 1.2, "--policy", "theorem",
            "--csv", csv, "--json", js, "--svg", svg,
        ]
        outs = []
        for _ in range(2):
            assert run(args) == 0
            outs.append((csv.read_bytes(), js.read_bytes(), svg.read_bytes()))
        for x, y in zip(*outs):
            assert x == y

    def test_json_paths_differ_only_in_config(self, tmp_path):
        # the config echo stores the output paths; everything else is identical
        docs = []
        for tag in ("a", "b"):
            js = tmp_path / f"{tag}.json"
            assert run(["solve", "--n", 3, "--trials", 2, "--seed", 7, "--json", js]) == 0
            doc = json.loads(js.read_text())
            doc["config"].pop("json_path")
            docs.append(doc)
        assert docs[0] == docs[1]

    def test_oversized_eta_reports_violation_with_exit_2(self, tmp_path):
        js = tmp_path / "bad.json"
        code = run([
            "solve", "--n", 3, "--spectrum", "1,0.9,0.5", "--trials", 1, "--seed", 2,
            "--radius", 1.5, "--policy", "fixed", "--eta", 2.4,
            "--max-iters", 200, "--json", js,
        ])
        assert code == 2
        doc = json.loads(js.read_text())
        assert doc["envelope_violations"]
        first = doc["envelope_violations"][0]
        assert {"trial", "t", "envelope", "observed", "bound"} <= set(first)

    def test_certify_samples_counted(self, tmp_path):
        js = tmp_path / "c.json"
        code = run([
            "solve", "--n", 3, "--trials", 1, "--seed", 1, "--radius", 0.8,
            "--certify-samples", 10, "--json", js,
        ])
        assert code == 0
        doc = json.loads(js.read_text())
        assert doc["certificates"]["reports"] == 90
        assert doc["certificates"]["failures"] == 0

    def test_config_file_with_flag_override(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"n": 3, "trials": 2, "seed": 9, "radius": 0.7}))
        js = tmp_path / "out.json"
        assert run(["solve", "--config", cfg, "--trials", 1, "--json", js]) == 0
        doc = json.loads(js.read_text())
        assert doc["config"]["n"] == 3  # from file
        assert doc["config"]["trials"] == 1  # overridden by flag

    def test_jobs_match_serial(self, tmp_path):
        outs = []
        for jobs in (1, 3):
            csv = tmp_path / f"j{jobs}.csv"
            assert run([
                "solve", "--n", 3, "--trials", 4, "--seed", 21, "--radius", 1.0,
                "--jobs", jobs, "--csv", csv,
            ]) == 0
            outs.append(csv.read_bytes())
        assert outs[0] == outs[1]

    def test_input_matrix(self, tmp_path):
        m = tmp_path / "m.csv"
        m.write_text("2,0\n0,1\n")
        js = tmp_path / "o.json"
        assert run(["solve", "--input", m, "--trials", 1, "--json", js]) == 0
        doc = json.loads(js.read_text())
        assert doc["trials"][0]["final_f_gap"] <= 1e-8

    def test_outdir_env(self, tmp_path, monkeypatch):
        monkeypatch.setenv("POLARGD_OUTDIR", str(tmp_path))
        assert run(["solve", "--n", 2, "--trials", 1, "--csv", "rel.csv"]) == 0
        assert (tmp_path / "rel.csv").exists()


class TestCertify:
    def test_smoke(self, tmp_path):
        csv, js = tmp_path / "cert.csv", tmp_path / "cert.json"
        code = run([
            "certify", "--n", 4, "--cond", 5, "--seed", 3, "--samples", 25,
            "--csv", csv, "--json", js,
        ])
        assert code == 0
        lines = csv.read_text().splitlines()
        assert lines[0].startswith("trial,kind,sample")
        assert len(lines) == 1 + 25 * 9  # 7 point/pair reports + 2 toponogov rows
        doc = json.loads(js.read_text())
        assert doc["failures"] == 0


class TestCompare:
    def test_smoke(self, tmp_path, capsys):
        js = tmp_path / "cmp.json"
        assert run(["compare", "--n", 5, "--cond", 10, "--seed", 4, "--json", js]) == 0
        doc = json.loads(js.read_text())
        assert {m["method"] for m in doc["methods"]} == {"svd", "rgd", "newton"}
        out = capsys.readouterr().out
        assert "svd" in out and "newton" in out

    def test_singular_skips_newton(self, tmp_path):
        js = tmp_path / "cmp.json"
        assert run([
            "compare", "--n", 3, "--spectrum", "2,1,0", "--seed", 4, "--json", js,
        ]) == 0
        doc = json.loads(js.read_text())
        assert {m["method"] for m in doc["methods"]} == {"svd", "rgd"}

    def test_csv_output(self, tmp_path):
        csv = tmp_path / "cmp.csv"
        assert run(["compare", "--n", 3, "--cond", 5, "--seed", 1, "--csv", csv]) == 0
        lines = csv.read_text().splitlines()
        assert lines[0] == "n,singular,method,iterations,wall_time,residual_to_svd,termination"
        assert len(lines) == 4


class TestExitCodes:
    def test_usage_error_is_1(self):
        with pytest.raises(SystemExit) as exc:
            run(["solve", "--policy", "warp"])
        assert exc.value.code == 1

    def test_config_error_is_1(self, tmp_path):
        assert run(["solve", "--n", 2, "--radius", 3.5]) == 1

    def test_io_error_is_3(self, tmp_path):
        code = run(["solve", "--n", 2, "--trials", 1,
                    "--csv", tmp_path / "missing" / "x.csv"])
        assert code == 3

    def test_parse_error_is_3(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("1,x\n0,1\n")
        assert run(["solve", "--input", bad, "--trials", 1]) == 3
