import json
import math

import numpy as np
import pytest

from numphase import io
from numphase.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_phase_effect_half_circle(capsys):
    code, out, _ = run(capsys, "phase-effect", "--arcs", "0:3.141592653589793", "--dim", "2")
    assert code == 0
    E = io.matrix_from_json(json.loads(out))
    assert np.allclose(np.diag(E), 0.5)
    assert E[1, 0] == pytest.approx(1j / math.pi, abs=1e-15)


def test_phase_effect_full_circle(capsys):
    code, out, _ = run(capsys, "phase-effect", "--arcs", "0:6.283185307179586", "--dim", "4")
    assert code == 0
    assert np.allclose(io.matrix_from_json(json.loads(out)), np.eye(4), atol=1e-15)


@pytest.mark.parametrize("arcs", ["0:1 2:1", "0-1", "a:b", ""])
def test_malformed_arcs_exit_2(capsys, arcs):
    code, _, err = run(capsys, "phase-effect", "--arcs", arcs)
    assert code == 2 and "error" in err


def test_missing_file_exit_3(capsys, tmp_path):
    code, _, _ = run(capsys, "phase-effect", "--arcs-file", str(tmp_path / "none.json"))
    assert code == 3


def test_unknown_flag_exit_2(capsys):
    assert run(capsys, "ground", "--bogus")[0] == 2


def test_ground_commands(capsys):
    code, out, err = run(capsys, "ground", "--space", "torus")
    rep = json.loads(out)
    assert code == 0 and rep["converged"]
    assert rep["value"] == pytest.approx(0.9996, abs=5e-4)
    assert "0.7518" in err
    code, out, _ = run(capsys, "ground", "--space", "fock")
    assert json.loads(out)["value"] == pytest.approx(1.5818, abs=5e-4)
    code, out, _ = run(capsys, "ground", "--space", "fock", "--weight", "0")
    rep = json.loads(out)
    assert rep["value"] == 0.0 and rep["vector"][0] == [1.0, 0.0]


def test_ground_nonconvergence_exit_0(capsys):
    code, out, _ = run(capsys, "ground", "--space", "fock", "--dims", "2,3")
    assert code == 0 and json.loads(out)["converged"] is False


def test_lenard(capsys):
    code, out, _ = run(capsys, "lenard", "--arcs", "0:3.14159", "--set", "0,1", "--dim", "64")
    d = json.loads(out)
    assert code == 0
    assert d["a_plus"] == pytest.approx(0.8183, abs=1e-4)
    assert d["bound"] == pytest.approx(1.9046, abs=1e-4)
    assert d["truncated_sup"] <= d["bound"] + 1e-9


def test_lenard_full_circle_is_invalid(capsys):
    assert run(capsys, "lenard", "--arcs", "0:6.283185307179586", "--set", "0")[0] == 2


def test_complementarity_csv(capsys):
    code, out, _ = run(capsys, "complementarity", "--arcs", "0:3.14159",
                       "--dims", "8,16,32,64,128,256", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "k,alpha_max"
    vals = [float(l.split(",")[1]) for l in lines[1:]]
    assert all(v > 0 for v in vals) and all(b < a for a, b in zip(vals, vals[1:]))


def test_wasserstein(capsys):
    code, out, _ = run(capsys, "wasserstein", "--kind", "circle", "--mu", "uniform:1024", "--nu", "point:0")
    assert code == 0 and json.loads(out)["distance"] == pytest.approx(1.8138, abs=1e-2)
    code, out, _ = run(capsys, "wasserstein", "--kind", "integer", "--mu", "uniform:0..2", "--nu", "point:1")
    assert json.loads(out)["distance"] == pytest.approx(math.sqrt(2 / 3))


def test_wasserstein_reads_measure_files(capsys, tmp_path):
    f = tmp_path / "mu.json"
    f.write_text(json.dumps({"atoms": [[0.0, 0.5], [math.pi, 0.5]]}))
    code, out, _ = run(capsys, "wasserstein", "--mu", f"file:{f}", "--nu", f"point:{math.pi / 2}")
    assert json.loads(out)["distance"] == pytest.approx(math.pi / 2)
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"atoms": [[0.0, 0.5], [1.0, 0.4]]}))
    assert run(capsys, "wasserstein", "--mu", str(bad), "--nu", "point:0")[0] == 2


def test_mu_boundary_and_evidence(capsys, tmp_path):
    out_file = tmp_path / "b.csv"
    code, out, _ = run(capsys, "mu-boundary", "--tgrid", "0.25,0.5,0.75", "--evidence", "--out", str(out_file))
    assert code == 0
    curve = io.boundary_from_csv(out_file.read_text())
    assert curve.is_tradeoff_monotone()
    assert "not decided" in out
    code, out, err = run(capsys, "mu-boundary", "--space", "fock", "--tgrid", "0.5")
    assert "conjecture" in err


def test_error_sum(capsys, tmp_path):
    code, out, err = run(capsys, "error-sum")
    d = json.loads(out)
    assert code == 0 and d["satisfied"] and d["fock_bound_status"] == "conjecture"
    assert d["sum"] == pytest.approx(0.9996, abs=5e-4)
    f = tmp_path / "s.json"
    f.write_text(io.dumps({**io.matrix_to_json(np.diag([0.5, 0.5])), "kmin": 0}))
    code, out, _ = run(capsys, "error-sum", "--state", str(f))
    assert code == 0 and json.loads(out)["sum"] == pytest.approx(math.pi**2 / 3 + 0.5, abs=1e-5)


def test_error_sum_rejects_non_state(capsys, tmp_path):
    f = tmp_path / "s.json"
    f.write_text(io.dumps(io.matrix_to_json(np.diag([0.7, 0.7]))))
    assert run(capsys, "error-sum", "--state", str(f))[0] == 2


def test_embed(capsys, tmp_path):
    code, out, _ = run(capsys, "embed", "--nu", "uniform:0..1", "--dim", "6")
    d = json.loads(out)
    assert code == 0
    assert all(v == pytest.approx(1 / math.sqrt(2)) for v in d["errors"].values())
    assert d["max_deviation"] <= 1e-12
    kf = tmp_path / "k.json"
    kf.write_text(json.dumps({"phase_kernel": [{"atoms": [[0.0, 1.0]]}] * 3}))
    code, out, _ = run(capsys, "embed", "--kernel-file", str(kf))
    assert code == 0 and json.loads(out)["sup_embedded"] == 0.0


def test_config_file_precedence(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"dims": [4, 8, 16], "space": "torus"}))
    _, out, _ = run(capsys, "--config", str(cfg), "ground")
    assert json.loads(out)["dims"] == [4, 8, 16]
    _, out, _ = run(capsys, "--config", str(cfg), "ground", "--dims", "4,8")
    assert json.loads(out)["dims"] == [4, 8]
    cfg.write_text(json.dumps({"nonsense": 1}))
    assert run(capsys, "--config", str(cfg), "ground")[0] == 2


def test_dimension_caps(capsys, monkeypatch):
    assert run(capsys, "phase-effect", "--arcs", "0:1", "--dim", "5000")[0] == 2
    monkeypatch.setenv("NUMPHASE_MAX_DIM", "16")
    assert run(capsys, "phase-effect", "--arcs", "0:1", "--dim", "32")[0] == 2
    assert run(capsys, "ground", "--dims", "4,8,16")[0] == 2
    assert run(capsys, "ground", "--dims", "2,4,7")[0] == 0


def test_tolerance_must_be_positive(capsys):
    assert run(capsys, "ground", "--tol", "0")[0] == 2


def test_outputs_are_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for f in (a, b):
        assert run(capsys, "ground", "--space", "fock", "--out", str(f))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    for f in (a, b):
        run(capsys, "mu-boundary", "--tgrid", "0.2,0.7", "--out", str(f))
    assert a.read_bytes() == b.read_bytes()


def test_phase_effect_output_feeds_error_sum(capsys, tmp_path):
    # a matrix artifact written by one command is read by another
    f = tmp_path / "E.json"
    run(capsys, "phase-effect", "--arcs", "0:6.283185307179586", "--dim", "3", "--out", str(f))
    d = json.loads(f.read_text())
    d["re"] = [x / 3 for x in d["re"]]
    f.write_text(json.dumps(d))
    code, out, _ = run(capsys, "error-sum", "--state", str(f))
    assert code == 0 and json.loads(out)["satisfied"]
