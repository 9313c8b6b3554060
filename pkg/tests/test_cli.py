import json

import numpy as np
import pytest

from optframe.cli import main

from golden import EX1_LAMBDA, EX2_ALPHA, EX2_PARTITION


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestSolve:
    def test_instance1_json(self, capsys):
        code, out, _ = run(capsys, "solve", "--alpha", "10,10,10,1,1", "--dims", "4,2")
        assert code == 0
        doc = json.loads(out)
        assert doc["schema"] == 1
        assert np.allclose(doc["lambda_sorted"], EX1_LAMBDA, atol=1e-9)
        assert doc["blocks"]["levels"] == pytest.approx([6.0, 2.0], abs=1e-9)
        assert doc["potentials"]["fp"] == pytest.approx(184.0, abs=1e-6)
        assert doc["stop_iteration"] == 1

    def test_instance2_csv(self, capsys):
        alpha = ",".join(str(v) for v in EX2_ALPHA)
        code, out, _ = run(capsys, "solve", "--alpha", alpha, "--dims", "7,5,3",
                           "--format", "csv")
        assert code == 0
        mat = np.array([[float(v) for v in line.split(",")]
                        for line in out.strip().splitlines()])
        assert mat.shape == (11, 3)
        assert np.allclose(np.round(mat, 4), EX2_PARTITION, atol=1e-3)

    def test_dim_too_large_exit2(self, capsys):
        code, _, err = run(capsys, "solve", "--alpha", "1,1,1,1,1", "--dims", "8")
        assert code == 2
        assert "error" in err

    def test_bad_number_exit2(self, capsys):
        code, _, _ = run(capsys, "solve", "--alpha", "1,x", "--dims", "1")
        assert code == 2

    def test_out_file_and_plot_data(self, capsys, tmp_path):
        out = tmp_path / "sol.json"
        plot = tmp_path / "profile.csv"
        code, _, _ = run(capsys, "solve", "--alpha", "10,10,10,1,1", "--dims", "4,2",
                         "--out", str(out), "--plot-data", str(plot))
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["schema"] == 1
        lines = plot.read_text().strip().splitlines()
        assert lines[0] == "group,index,level"
        assert len(lines) == 1 + 4 + 2  # header + d1 + d2

    def test_unsorted_input_reported_in_original_order(self, capsys):
        code, out, _ = run(capsys, "solve", "--alpha", "1,10,10,1,10", "--dims", "2,4")
        assert code == 0
        doc = json.loads(out)
        part = np.array(doc["partition_original_order"])
        # row sums recompose the original alpha; columns follow user dims
        assert np.allclose(part.sum(axis=1), [1, 10, 10, 1, 10], atol=1e-9)
        assert np.allclose(sorted(part[:, 1], reverse=True), [6, 6, 6, 1, 1], atol=1e-6)


class TestRoundTrip:
    def _solve_to(self, capsys, tmp_path):
        out = tmp_path / "sol.json"
        code, _, _ = run(capsys, "solve", "--alpha", "10,10,10,1,1", "--dims", "4,2",
                         "--out", str(out))
        assert code == 0
        return out

    def test_verify_ok(self, capsys, tmp_path):
        path = self._solve_to(capsys, tmp_path)
        code, out, _ = run(capsys, "verify", "--in", str(path))
        assert code == 0
        assert json.loads(out)["passed"] is True

    def test_verify_tampered_exit1(self, capsys, tmp_path):
        path = self._solve_to(capsys, tmp_path)
        doc = json.loads(path.read_text())
        doc["partition"][0][0] += 0.5
        path.write_text(json.dumps(doc))
        code, out, _ = run(capsys, "verify", "--in", str(path))
        assert code == 1
        rep = json.loads(out)
        assert rep["passed"] is False
        assert rep["checks"]["row_sums"]["passed"] is False

    def test_synth_from_file(self, capsys, tmp_path):
        path = self._solve_to(capsys, tmp_path)
        code, out, _ = run(capsys, "synth", "--in", str(path))
        assert code == 0
        doc = json.loads(out)
        mats = [np.array(m) for m in doc["matrices"]]
        assert mats[0].shape == (4, 5)
        assert mats[1].shape == (2, 5)
        assert doc["verification"]["passed"] is True
        assert doc["verification"]["max_spectrum_deviation"] < 1e-8

    def test_verify_missing_file_exit2(self, capsys, tmp_path):
        code, _, _ = run(capsys, "verify", "--in", str(tmp_path / "nope.json"))
        assert code == 2


class TestSynthInline:
    def test_inline(self, capsys):
        code, out, _ = run(capsys, "synth", "--alpha", "1,1,1,1,1,1", "--dims", "3")
        assert code == 0
        doc = json.loads(out)
        assert np.allclose(doc["verification"]["achieved_spectra"][0], 2.0, atol=1e-8)

    def test_csv_output(self, capsys):
        code, out, _ = run(capsys, "synth", "--alpha", "10,10,10,1,1", "--dims", "4,2",
                           "--format", "csv")
        assert code == 0
        assert out.startswith("# group 1 (4x5)")

    def test_missing_args_exit2(self, capsys):
        code, _, _ = run(capsys, "synth")
        assert code == 2


class TestSampleMono:
    def test_sample(self, capsys):
        code, out, _ = run(capsys, "sample", "--alpha", "10,10,10,1,1", "--dims", "4,2",
                           "--trials", "50", "--seed", "42")
        assert code == 0
        doc = json.loads(out)
        assert doc["violations"] == 0
        assert doc["seed"] == 42

    def test_env_seed(self, capsys, monkeypatch):
        monkeypatch.setenv("OPTFRAME_SEED", "7")
        code, out, _ = run(capsys, "sample", "--alpha", "2,1", "--dims", "1,1",
                           "--trials", "10")
        assert code == 0
        assert json.loads(out)["seed"] == 7

    def test_mono(self, capsys):
        code, out, _ = run(capsys, "mono", "--alpha", "4,3,2", "--beta", "2,1.5,1",
                           "--dims", "2,1")
        assert code == 0
        assert json.loads(out)["passed"] is True

    def test_mono_bad_beta_exit2(self, capsys):
        code, _, _ = run(capsys, "mono", "--alpha", "1,1", "--beta", "2,1",
                         "--dims", "1,1")
        assert code == 2

    def test_brute(self, capsys):
        code, out, _ = run(capsys, "brute", "--alpha", "2,1", "--dims", "1,1",
                           "--grid-steps", "100")
        assert code == 0
        doc = json.loads(out)
        assert doc["grid_min_fp"] >= doc["algorithm_fp"] - 1e-3


class TestUsage:
    def test_no_command_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2

    def test_unknown_format_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["solve", "--alpha", "1", "--dims", "1", "--format", "xml"])
        assert exc.value.code == 2
