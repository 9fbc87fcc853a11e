import json
import subprocess
import sys

import pytest

from treesieve import generators as gen
from treesieve.cli import main
from treesieve.graphcore import format_graph


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, G in {
        "k33": gen.complete_bipartite(3, 3),
        "p4": gen.path(4),
        "c6": gen.cycle(6).with_bipartition({0, 2, 4}),
        "dp4": gen.directed_path(4),
        "p5": gen.path(5),
    }.items():
        path = tmp_path / f"{name}.txt"
        path.write_text(format_graph(G))
        out[name] = str(path)
    bad = tmp_path / "bad.txt"
    bad.write_text("3 2 U\n0 1\n")
    out["bad"] = str(bad)
    return out


def run(argv, capsys):
    code = main(argv)
    text = capsys.readouterr().out
    return code, text


def test_count_pm(files, capsys):
    code, text = run(["count-pm", "--graph", files["k33"]], capsys)
    assert code == 0 and text == '{"count":"6","seed":0}\n'


def test_count_ham(files, capsys):
    code, text = run(["count-ham", "--graph", files["p4"], "--source", "0", "--target", "3"], capsys)
    assert code == 0 and json.loads(text) == {"count": "1", "seed": 0}


def test_detect_absent(files, capsys):
    argv = ["detect-ham-bip", "--graph", files["c6"], "--source", "0", "--target", "3", "--trials", "20", "--seed", "7"]
    code, text = run(argv, capsys)
    assert code == 0 and json.loads(text) == {"detected": False, "trials": 20, "seed": 7}
    code, _ = run(argv + ["--fail-on-absent"], capsys)
    assert code == 1


def test_detect_present_and_indep(files, capsys):
    code, text = run(["detect-ham-bip", "--graph", files["c6"], "--source", "0", "--target", "1"], capsys)
    assert code == 0 and json.loads(text)["detected"] is True
    argv = ["detect-ham-indep", "--graph", files["p5"], "--indep", "1,3", "--source", "0", "--target", "4"]
    code, text = run(argv + ["--fail-on-absent"], capsys)
    assert code == 0 and json.loads(text)["detected"] is True


def test_other_counts(files, capsys):
    assert json.loads(run(["count-kmatch", "--graph", files["k33"], "--k", "2"], capsys)[1])["count"] == "18"
    assert json.loads(run(["count-maxmatch", "--graph", files["p5"]], capsys)[1])["count"] == "3"
    assert json.loads(run(["count-kstar", "--graph", files["k33"], "--k", "3"], capsys)[1])["count"] == "9"
    argv = ["count-ham", "--graph", files["dp4"], "--directed", "--source", "0", "--target", "3"]
    assert json.loads(run(argv, capsys)[1])["count"] == "1"


def test_oracle_matches(files, capsys):
    for cmd, extra in [
        ("count-pm", []),
        ("count-kmatch", ["--k", "2"]),
        ("count-kstar", ["--k", "3"]),
        ("count-maxmatch", []),
    ]:
        fast = json.loads(run([cmd, "--graph", files["k33"], *extra], capsys)[1])
        slow = json.loads(run(["oracle", cmd, "--graph", files["k33"], *extra], capsys)[1])
        assert fast == slow
    code, text = run(["oracle", "detect-ham-bip", "--graph", files["c6"], "--source", "0", "--target", "3"], capsys)
    assert json.loads(text)["detected"] is False


def test_deterministic_output(files, capsys):
    argv = ["detect-ham-bip", "--graph", files["k33"], "--source", "0", "--target", "4", "--seed", "3"]
    assert run(argv, capsys) == run(argv, capsys)


def test_timing_flag(files, capsys):
    out = json.loads(run(["count-pm", "--graph", files["k33"], "--timing"], capsys)[1])
    assert isinstance(out["elapsed_ms"], int)


@pytest.mark.parametrize(
    "argv",
    [
        ["count-pm", "--graph", "/nonexistent/file.txt"],
        ["count-ham", "--graph", "{p4}"],
        ["count-ham", "--graph", "{dp4}", "--source", "0", "--target", "3"],
        ["count-pm", "--graph", "{bad}"],
        ["count-pm", "--graph", "{p5}"],
        ["count-kstar", "--graph", "{p5}", "--k", "2"],
        ["detect-ham-indep", "--graph", "{p5}", "--indep", "1,x", "--source", "0", "--target", "4"],
        ["no-such-command"],
    ],
)
def test_errors_exit_2(files, capsys, argv):
    argv = [a.format(**files) for a in argv]
    code = main(argv)
    cap = capsys.readouterr()
    assert code == 2
    if cap.out:
        assert "error" in json.loads(cap.out)


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "treesieve", "count-pm", "--graph", files["k33"]],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout == '{"count":"6","seed":0}\n'
