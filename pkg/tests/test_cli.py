import io
import json

import numpy as np
import pytest

from cubedec import cli, forms, selfcheck, symbols


def run_cli(args):
    return cli.main(args)


def test_verify_passes(capsys):
    rc = run_cli(["verify", "--n", "2", "--seed", "3"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "suites passed" in out
    assert "[FAIL]" not in out


def test_verify_rejects_tiny_dimension(capsys):
    rc = run_cli(["verify", "--n", "1"])
    err = capsys.readouterr().err
    assert rc == 2
    assert "error:" in err


def test_convergence_run_and_determinism(tmp_path, capsys):
    out1 = tmp_path / "a"
    args = [
        "convergence",
        "--n",
        "1",
        "--h-list",
        "0.125,0.0625,0.03125,0.015625",
        "--grid",
        "128",
        "--out",
        str(out1),
    ]
    rc = run_cli(args)
    text = capsys.readouterr().out
    assert rc == 0
    assert "slope=" in text
    csv1 = (out1 / "convergence.csv").read_bytes()
    json1 = (out1 / "convergence.json").read_bytes()
    payload = json.loads(json1)
    assert 0.9 <= payload["slope"] <= 1.1
    assert len(payload["rows"]) == 4
    out2 = tmp_path / "b"
    args[-1] = str(out2)
    assert run_cli(args) == 0
    capsys.readouterr()
    assert (out2 / "convergence.csv").read_bytes() == csv1
    assert (out2 / "convergence.json").read_bytes() == json1


def test_convergence_argument_errors(tmp_path, capsys):
    base = ["convergence", "--n", "1", "--out", str(tmp_path / "x")]
    assert run_cli(base + ["--h-list", "0.5"]) == 2
    assert run_cli(base + ["--h-list", "0.25,0.5"]) == 2
    assert run_cli(base + ["--h-list", "0.5,0.25", "--z-im", "0"]) == 2
    capsys.readouterr()
    with pytest.raises(SystemExit):
        run_cli(base + ["--h-list", "not,numbers"])


def test_spectrum_outputs(tmp_path, capsys):
    out = tmp_path / "s"
    rc = run_cli(
        ["spectrum", "--n", "1", "--h-list", "0.5", "--grid", "32", "--out", str(out), "--seed", "9"]
    )
    text = capsys.readouterr().out
    assert rc == 0
    lines = (out / "spectrum.csv").read_text().splitlines()
    assert lines[0].startswith("#")
    assert "seed=9" in lines[0]
    assert lines[1] == "xi_1,radius"
    assert len(lines) == 2 + 32
    best = max(float(row.split(",")[-1]) for row in lines[2:])
    assert f"{best:.6g}" in text or "max" in text
    top = np.sqrt(4.0) / 0.5
    assert best <= top + 1e-9
    assert best == pytest.approx(top, rel=1e-9)


def test_torus_subcommand(tmp_path, capsys):
    out = tmp_path / "t"
    rc = run_cli(["torus", "--n", "2", "--N", "4", "--out", str(out)])
    text = capsys.readouterr().out
    assert rc == 0
    for j in range(2):
        assert (out / f"torus_d{j}.txt").exists()
    assert "harmonic" in text
    assert "1, 2, 1" in text.replace("(", "").replace(")", "")


def test_torus_rejects_two_sites(capsys):
    rc = run_cli(["torus", "--n", "2", "--N", "2"])
    err = capsys.readouterr().err
    assert rc == 2
    assert "3" in err


def test_config_file_with_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"n": 1, "seed": 5}))
    rc = run_cli(["verify", "--config", str(cfg), "--n", "2"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "n=2" in out
    assert "seed=5" in out


def test_config_h_list_string_and_list(tmp_path):
    for payload in ("0.25,0.125", [0.25, 0.125]):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"n": 1, "z_im": 1.0, "grid": 32, "h_list": payload}))
        out = tmp_path / ("out_" + ("s" if isinstance(payload, str) else "l"))
        rc = run_cli(["convergence", "--config", str(cfg), "--out", str(out)])
        assert rc == 0
        assert (out / "convergence.csv").read_text().count("\n") == 3


def test_config_bad_h_list_is_clean_error(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"n": 1, "h_list": "0.25,oops"}))
    rc = run_cli(["convergence", "--config", str(cfg)])
    assert rc == 2
    assert "error:" in capsys.readouterr().err


def test_bogus_backend_env_is_clean_error(monkeypatch, capsys):
    monkeypatch.setenv("DEC_BACKEND", "bogus")
    rc = run_cli(["verify", "--n", "2", "--seed", "0"])
    err = capsys.readouterr().err
    assert rc == 2
    assert "DEC_BACKEND" in err


def test_unknown_subcommand():
    with pytest.raises(SystemExit):
        run_cli(["frobnicate"])


def test_selfcheck_flags_wrong_insertion_sign(monkeypatch):
    # sabotage the shared sign table; the wedge cross-check must notice
    monkeypatch.setattr(forms, "insertion_sign", lambda dims, axis: 1)
    try:
        symbols.clear_caches()
        buf = io.StringIO()
        rc = selfcheck.run(n=2, seed=0, fp=buf)
        report = buf.getvalue()
        assert rc != 0
        line = [ln for ln in report.splitlines() if "wedge-insertion-consistency" in ln]
        assert len(line) == 1 and line[0].startswith("[FAIL]")
    finally:
        monkeypatch.undo()
        symbols.clear_caches()
    clean = io.StringIO()
    assert selfcheck.run(n=2, seed=0, fp=clean) == 0
