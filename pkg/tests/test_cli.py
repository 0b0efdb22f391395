import json

import numpy as np
import pytest

from gswavelet import _parallel
from gswavelet.cli import main
from gswavelet.grid_io import HalfSpaceField, ScaleGrid, SignalGrid, write_array_file


@pytest.fixture(autouse=True)
def _reset_threads():
    yield
    _parallel.set_threads(None)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


@pytest.fixture(scope="module")
def artifacts(tmp_path_factory):
    d = tmp_path_factory.mktemp("cli")
    assert main(["design", "--dim", "1", "--rho2", "2", "--n", "1024", "--l", "32",
                 "--out", str(d / "w.json"), "--pair", str(d / "pair.json")]) == 0
    assert main(["signal", "--dim", "1", "--n", "1024", "--l", "32", "--kind", "bump",
                 "--out", str(d / "f.gsw")]) == 0
    assert main(["transform", "--signal", str(d / "f.gsw"), "--wavelet", str(d / "w.json"),
                 "--out", str(d / "W.gsw"), "--csv", str(d / "W.csv")]) == 0
    return d


def test_design(capsys, tmp_path):
    code, doc = run(capsys, "design", "--dim", 1, "--rho2", 2, "--n", 1024, "--l", 32,
                    "--out", tmp_path / "w.json")
    assert code == 0 and doc["exit_code"] == 0
    assert doc["result"]["moments"]["verdict"] and doc["result"]["nondegeneracy"]["verdict"]
    assert doc["config"]["command"] == "design" and doc["config"]["params"]["dim"] == 1
    assert (tmp_path / "w.json").exists()


def test_design_usage_errors(capsys):
    with pytest.raises(SystemExit) as err:
        main(["design", "--rho2", "2"])
    assert err.value.code == 1
    assert "--dim" in capsys.readouterr().err
    assert main(["design", "--dim", "1", "--n", "24"]) == 1
    with pytest.raises(SystemExit) as err:
        main([])
    assert err.value.code == 1


def test_verify_calderon(capsys, artifacts):
    d = artifacts
    code, doc = run(capsys, "verify-calderon", "--signal", d / "f.gsw", "--pair", d / "pair.json",
                    "--tol", "1e-3")
    assert code == 0 and doc["result"]["passed"]
    assert doc["result"]["report"]["rel_l2_error"] <= 1e-3
    code, doc = run(capsys, "verify-calderon", "--signal", d / "f.gsw", "--pair",
                    d / "pair.json", "--tol", "1e-9")
    assert code == 2 and not doc["result"]["passed"]


def test_fit_decay(capsys, artifacts):
    d = artifacts
    code, _ = run(capsys, "fit-decay", "--field", d / "W.gsw", "--s", 0.5, "--t", 2,
                  "--rho1", 0.25, "--rho2", 2)
    assert code == 2
    code, doc = run(capsys, "fit-decay", "--field", d / "W.gsw", "--s", 1.25, "--t", 3,
                    "--rho1", 0.25, "--rho2", 2)
    assert code == 0
    assert set(doc["result"]["fit"]["rates"]) == {"h_a_inf", "h_a_zero", "h_b"}


def test_seminorm_zero_field(capsys, tmp_path):
    g = SignalGrid(1, 256, 16.0)
    write_array_file(tmp_path / "z.gsw", HalfSpaceField(g, ScaleGrid(0.25, 4, 8),
                                                        np.zeros((8, 256))))
    code, doc = run(capsys, "seminorm", "--kind", "half_q", "--field", tmp_path / "z.gsw",
                    "--s", 1, "--t", 2, "--tau1", 1, "--tau2", 2)
    assert code == 0
    assert doc["result"]["seminorm"]["values"] == [0.0, 0.0, 0.0, 0.0]


def test_seminorm_gs(capsys, artifacts):
    code, doc = run(capsys, "seminorm", "--kind", "gs", "--signal", artifacts / "f.gsw",
                    "--rho1", 0.5, "--rho2", 2, "--h", 0.5)
    assert code == 0 and doc["result"]["seminorm"]["kind"] == "gs_p"


def test_synthesize(capsys, artifacts, tmp_path):
    d = artifacts
    code, doc = run(capsys, "synthesize", "--field", d / "W.gsw", "--pair", d / "pair.json",
                    "--out", tmp_path / "r.gsw")
    assert code == 0 and doc["result"]["c"][0] == pytest.approx(1.0, abs=1e-6)
    assert main(["synthesize", "--field", str(d / "W.gsw"),
                 "--out", str(tmp_path / "x.gsw")]) == 1


def test_csv_export(artifacts):
    lines = (artifacts / "W.csv").read_text().splitlines()
    assert len(lines) == 1 + 64 * 1024
    float(lines[1].split(",")[0])


def test_io_error(capsys, tmp_path, artifacts):
    code, _ = run(capsys, "transform", "--signal", tmp_path / "missing.gsw", "--wavelet",
                  artifacts / "w.json", "--out", tmp_path / "W.gsw")
    assert code == 3


def test_config_rerun_bit_identical(capsys, tmp_path, artifacts):
    out1, out2 = tmp_path / "a.gsw", tmp_path / "b.gsw"
    code, doc = run(capsys, "transform", "--signal", artifacts / "f.gsw", "--wavelet",
                    artifacts / "w.json", "--a-min", "1/8", "--k", 16, "--out", out1)
    assert code == 0 and doc["config"]["params"]["a_min"] == 0.125
    cfg = doc["config"]
    cfg["params"]["out"] = str(out2)
    (tmp_path / "cfg.json").write_text(json.dumps(doc))
    code, doc2 = run(capsys, "--config", tmp_path / "cfg.json")
    assert code == 0 and doc2["result"] == doc["result"]
    assert out1.read_bytes() == out2.read_bytes()
    # an explicit flag overrides the config value
    code, doc3 = run(capsys, "--config", tmp_path / "cfg.json", "transform", "--k", 8)
    assert doc3["config"]["params"]["k"] == 8 and doc3["config"]["params"]["a_min"] == 0.125


def test_threads(capsys, monkeypatch, artifacts):
    code, doc = run(capsys, "--threads", 2, "seminorm", "--kind", "gs", "--signal",
                    artifacts / "f.gsw", "--rho1", 0.5, "--rho2", 2, "--h", 0.5)
    assert code == 0 and doc["config"]["threads"] == 2
    assert _parallel.workers() == 2
    _parallel.set_threads(None)
    monkeypatch.setenv("GSW_THREADS", "3")
    assert _parallel.workers() == 3
    monkeypatch.setenv("GSW_THREADS", "x")
    assert _parallel.workers() == 1
    assert main(["--threads", "0", "design", "--dim", "1"]) == 1
