import json
import subprocess
import sys

import pytest

from qaoachain.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_generate_is_deterministic(capsys):
    _, a, _ = run(["generate", "--n", "7", "--density", "0.5", "--seed", "4"], capsys)
    _, b, _ = run(["generate", "--n", "7", "--density", "0.5", "--seed", "4"], capsys)
    assert a == b and json.loads(a)["n"] == 7


def test_transpile_complete_graph(capsys):
    code, out, _ = run(["transpile", "--n", "20", "--no-sa"], capsys)
    m = json.loads(out)
    assert code == 0 and m["n_g"] == 399 and m["depth_2q"] == 76
    _, out, _ = run(["transpile", "--n", "20", "--encoder", "swap", "--no-sa"], capsys)
    assert json.loads(out)["n_g"] == 551


def test_simulate_targets_agree(capsys):
    vals = []
    for enc in ("fc", "ptc", "swap"):
        code, out, _ = run(["simulate", "--n", "5", "--density", "0.7", "--seed", "1", "--p", "3",
                            "--encoder", enc, "--max-iter", "100"], capsys)
        assert code == 0
        vals.append(json.loads(out)["p_gs"])
    assert max(vals) - min(vals) < 1e-10


def test_decode_round_trip(tmp_path, capsys):
    circ = tmp_path / "c.txt"
    run(["transpile", "--n", "4", "--no-sa", "--emit", str(circ), "--metrics", str(tmp_path / "m.json")], capsys)
    shots = tmp_path / "shots.txt"
    shots.write_text("0000\n1111\n")
    code, out, _ = run(["decode", "--circuit", str(circ), "--shots", str(shots)], capsys)
    assert code == 0 and out.split()[0] == "0000" and len(out.split()) == 2


def test_runtime_error_exit_code(capsys):
    code, _, err = run(["transpile", "--instance", "/nonexistent.json"], capsys)
    assert code == 1 and "error" in err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["transpile", "--encoder", "bogus"])
    assert exc.value.code == 2


def test_help_shows_defaults():
    out = subprocess.run([sys.executable, "-m", "qaoachain", "anneal", "--help"], capture_output=True, text=True)
    assert out.returncode == 0
    assert "default: 0.999" in out.stdout and "default: 50000" in out.stdout
