import json
import subprocess
import sys

import pytest

from iocompat import fixtures
from iocompat.cli import main


@pytest.fixture(scope="module")
def fx(tmp_path_factory):
    out = tmp_path_factory.mktemp("fixtures")
    assert main(["fixtures", "export", str(out)]) == 0
    return lambda name: str(out / f"{name}.iots")


@pytest.mark.parametrize(
    "argv, code",
    [
        (["pipeline", "maker", "user", "--bound", "3"], 0),
        (["pipeline", "ma", "mb_prime", "--bound", "2"], 1),
        (["check", "wac", "ma", "mb_prime"], 1),
        (["check", "wac", "ma", "mb"], 0),
        (["check", "completeness", "fig7_a", "fig7_b", "--bound", "4"], 2),
        (["check", "sync-strong", "maker", "user"], 1),
        (["check", "sync-weak", "maker", "user"], 0),
        (["check", "half-duplex", "ma", "mb"], 1),
        (["check", "io-sep", "fig5_a"], 0),
        (["check", "obs-io-sep", "fig5_a"], 1),
        (["check", "async", "fig4_a", "fig4_b", "--bound", "1", "--mode", "strong"], 1),
        (["check", "async", "ma", "mb", "--bound", "1"], 2),
        (["check", "async", "fig10_a", "fig10_b", "--bound", "2"], 0),
        (["deadlock", "sync", "ma", "mb"], 1),
        (["deadlock", "sync", "maker", "user"], 0),
        (["deadlock", "async", "fig11_a", "fig11_b", "--bound", "1"], 1),
        (["deadlock", "async", "ex63_send_a", "ex63_send_b", "--bound", "2"], 2),
        (["deadlock", "async", "fig10_a", "fig10_b", "--bound", "2"], 0),
        (["deadlock", "autonomous", "ma", "mb", "--side", "right"], 0),
        (["deadlock", "autonomous", "ex63_recv_a", "ex63_recv_b"], 1),
    ],
)
def test_exit_codes(fx, argv, code, capsys):
    args = [fx(a) if a in fixtures.names() else a for a in argv]
    assert main(args) == code


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["check", "wac", "x"],
        ["check", "async", "A", "B"],
        ["pipeline", "a", "b"],
        ["pipeline", "a", "b", "--bound", "0"],
        ["pipeline", "a", "b", "--bound", "two"],
        ["check", "bogus", "a", "b"],
    ],
)
def test_usage_errors(fx, argv, capsys):
    args = [fx("maker") if a in ("a", "A", "x") else fx("user") if a in ("b", "B") else a for a in argv]
    assert main(args) == 3


def test_missing_file(tmp_path, capsys):
    assert main(["check", "io-sep", str(tmp_path / "nope.iots")]) == 3
    assert json.loads(capsys.readouterr().out)["error"] == "FileNotFoundError"


def test_not_composable_json_error(fx, capsys):
    assert main(["pipeline", fx("maker"), fx("maker"), "--bound", "1", "--json", "-"]) == 3
    doc = json.loads(capsys.readouterr().out)
    assert doc["error"] == "NotComposable"


def test_syntax_error_exit(tmp_path, capsys):
    bad = tmp_path / "bad.iots"
    bad.write_text("iots X\ninputs a\ninit 0\n0 a! 0\n")
    assert main(["check", "io-sep", str(bad)]) == 3
    assert json.loads(capsys.readouterr().out)["error"] == "KindMismatch"


def test_pipeline_json_and_dot(fx, tmp_path, capsys):
    report = tmp_path / "r.json"
    dots = tmp_path / "dot"
    assert main(["pipeline", fx("ma"), fx("mb"), "--bound", "2", "--json", str(report), "--dot", str(dots)]) == 0
    data = json.loads(report.read_text())
    assert data["conclusion"] == "WeakAsyncCompatible"
    assert sorted(p.name for p in dots.iterdir()) == ["left.dot", "right.dot", "sync.dot"]
    assert "compatibility: WeakAsyncCompatible" in capsys.readouterr().out


def test_pipeline_json_is_byte_identical(fx, tmp_path):
    paths = [tmp_path / "one.json", tmp_path / "two.json"]
    for p in paths:
        main(["pipeline", fx("fig5_a"), fx("fig5_b"), "--bound", "2", "--json", str(p)])
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_export_dot(fx, capsys):
    assert main(["export", "dot", fx("fig4_a"), fx("fig4_b"), "--product", "async", "--bound", "1"]) == 0
    assert '"((1,a),(1,b))"' in capsys.readouterr().out


def test_check_json(fx, capsys):
    assert main(["check", "sync-strong", fx("maker"), fx("user"), "--json"]) == 1
    data = json.loads(capsys.readouterr().out)
    assert data["status"] == "Fails" and data["witness"]["location"] == "(2,1)"


def test_state_cap_env(fx):
    cmd = [sys.executable, "-m", "iocompat.cli", "check", "async", fx("ma"), fx("mb"), "--bound", "3"]
    proc = subprocess.run(cmd, capture_output=True, text=True, env={"IOTS_COMPAT_MAX_STATES": "5", "PATH": ""})
    assert proc.returncode == 3
    assert json.loads(proc.stdout)["error"] == "StateLimitExceeded"


def test_fixtures_list(capsys):
    assert main(["fixtures", "list"]) == 0
    out = capsys.readouterr().out
    assert "maker" in out and "pair ma_mb_prime: ma mb_prime" in out
