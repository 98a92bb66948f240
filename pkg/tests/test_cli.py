import json
import subprocess
import sys

import pytest

from shiftlattice.cli import build_parser, main, resolve_config


def write_subspace(tmp_path, N, basis, name="s.json"):
    p = tmp_path / name
    p.write_text(json.dumps({"ambient_dim": N, "basis": basis}))
    return str(p)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_weights_alternating38(capsys):
    code, out, _ = run(["weights", "--family", "alternating38"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["delta_estimate"]["lower_bound"] <= 17.9375
    assert rep["delta_estimate"]["status"] == rep["delta_status"] == "bounded_evidence"
    assert not rep["condition_34"]["holds_on_prefix"] and rep["condition_34"]["witness"] == 1
    assert rep["examples"]["bound_17_15_16"]["holds"]


def test_weights_harmonic_and_constant(capsys):
    _, out, _ = run(["weights", "--family", "harmonic"], capsys)
    rep = json.loads(out)
    assert rep["condition_34"]["holds_on_prefix"]
    assert rep["delta_status"] == "certified_divergent"
    assert rep["delta_diagonal"]["lower_bound"] > 1e3
    _, out, _ = run(["weights", "--family", "constant:1"], capsys)
    assert json.loads(out)["delta_status"] == "certified_divergent"
    _, out, _ = run(["weights", "--family", "constant:1", "--cap", "100"], capsys)
    assert json.loads(out)["delta_estimate"]["status"] == "certified_divergent"


def test_classify_examples(tmp_path, capsys):
    s = write_subspace(tmp_path, 6, [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0]])
    code, out, _ = run(["classify", s, "--power", "2", "--family", "alternating38"], capsys)
    form = json.loads(out)["form"]
    assert code == 0 and form["tag"] == "T2NonCyclic" and form["params"] == {"n": 3, "p": 0}
    s = write_subspace(tmp_path, 5, [["1", "1", "0", "0", "0"]])
    _, out, _ = run(["classify", s, "--power", "2", "--power", "3"], capsys)
    assert json.loads(out)["form"] == {"tag": "Joint", "params": {"n": 1, "alpha": "1", "beta": "1"}, "generators": []}
    s = write_subspace(tmp_path, 5, [])
    _, out, _ = run(["classify", s], capsys)
    assert json.loads(out)["form"]["tag"] == "Zero"


def test_exit_codes(tmp_path, capsys):
    s = write_subspace(tmp_path, 5, [[0, 0, 0, 1, 0]])
    assert run(["classify", s, "--power", "2"], capsys)[0] == 3
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(["classify", str(bad)], capsys)[0] == 2
    assert run(["verify", "t2"], capsys)[0] == 2  # randomized suite without a seed
    assert run(["weights", "--family", "nope"], capsys)[0] == 2
    assert run(["weights", "--N", "0"], capsys)[0] == 2
    with pytest.raises(SystemExit):
        main(["verify", "nope"])


def test_verify_deterministic_bytes(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "t2", "--seed", "42", "--cases", "60", "--out", str(a)]) == 0
    assert main(["verify", "t2", "--seed", "42", "--cases", "60", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.with_suffix(".jsonl").read_bytes() == b.with_suffix(".jsonl").read_bytes()
    rep = json.loads(a.read_text())
    assert rep["passed"] == 60 and "unknown" not in rep["tags"] and "records" not in rep
    lines = a.with_suffix(".jsonl").read_text().splitlines()
    assert len(lines) == 60 and all(json.loads(line)["ok"] for line in lines)
    capsys.readouterr()


def test_verify_forward_orbits_writes_csv(tmp_path, capsys):
    out = tmp_path / "thm36.json"
    assert main(["verify", "thm36", "--family", "donoghue", "--seed", "1", "--cases", "3", "--out", str(out)]) == 0
    csv = out.with_suffix(".csv").read_text().splitlines()
    assert csv[0] == "n,residual,bound,C,w_n,pass" and len(csv) == 1 + 3 * 31
    assert "ok" in capsys.readouterr().out


def test_verify_analytic_functions(capsys):
    code, out, _ = run(["verify", "cor44", "--N", "16"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["failed"] == 0
    assert rep["expected_fail"] == ["z^2@N=4", "z^2@N=8", "z^2@N=16"]


def test_config_precedence(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"family": "harmonic", "K": 77, "M-max": 9, "power": 3}))
    args = build_parser().parse_args(["weights", "--config", str(cfg), "--K", "5"])
    c = resolve_config(args)
    assert (c.family, c.K, c.M_max, c.power, c.N) == ("harmonic", 5, 9, [3], 128)
    cfg.write_text(json.dumps({"colour": "blue"}))
    with pytest.raises(ValueError):
        resolve_config(build_parser().parse_args(["weights", "--config", str(cfg)]))


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "shiftlattice.cli", "--help"], capture_output=True, text=True)
    assert r.returncode == 0 and "weights" in r.stdout and "verify" in r.stdout
