"""Tests for the command-line interface: exit codes, report schema,
parameter-grid coverage, and byte determinism."""

import io
import json
from contextlib import redirect_stdout

import pytest

from sscx.cli import run

EXPECTED_KEYS = ["suite", "params", "expected", "computed", "status", "elapsed_ms"]


def invoke(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = run(argv)
    return code, buf.getvalue()


def test_fiber_suite_passes():
    code, out = invoke(
        ["verify-fiber", "--n", "3", "--t", "all",
         "--checks", "cohomology,bicomplex,snake,koszul,ces,d2zero"]
    )
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 6 * 5  # six checks over t = 0..4
    for line in lines:
        rep = json.loads(line)
        assert list(rep) == EXPECTED_KEYS
        assert rep["status"] == "pass"
        assert rep["elapsed_ms"] == 0


def test_weights_suite_passes():
    code, out = invoke(
        ["verify-weights", "--n", "4", "--k", "3",
         "--checks", "bbw,staircase,euler,phics,pieri,vanishing"]
    )
    assert code == 0
    suites = [json.loads(line)["suite"] for line in out.splitlines()]
    assert suites == sorted(suites)
    assert set(suites) == {"bbw", "staircase", "euler", "phics", "pieri", "vanishing"}


def test_t_all_coverage():
    code, out = invoke(["verify-fiber", "--n", "3", "--checks", "cohomology"])
    assert code == 0
    ts = [json.loads(line)["params"]["t"] for line in out.splitlines()]
    assert ts == [0, 1, 2, 3, 4]  # exactly 0..2n-2
    code, out = invoke(["verify-weights", "--n", "3", "--k", "3",
                        "--checks", "euler"])
    ts = [json.loads(line)["params"]["t"] for line in out.splitlines()]
    assert ts == [0, 1, 2, 3]  # exactly 0..2n-k


def test_out_of_band_t_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["verify-fiber", "--n", "3", "--t", "99"])
    assert exc.value.code == 2


def test_unknown_check_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        run(["verify-fiber", "--n", "3", "--checks", "nope"])
    assert exc.value.code == 2


def test_unknown_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        run(["frobnicate"])
    assert exc.value.code == 2


def test_k_band_validation():
    with pytest.raises(SystemExit) as exc:
        run(["verify-weights", "--n", "3", "--k", "7"])
    assert exc.value.code == 2


def test_single_t_selection():
    code, out = invoke(["verify-fiber", "--n", "3", "--t", "2",
                        "--checks", "cohomology,d2zero"])
    assert code == 0
    assert len(out.splitlines()) == 2


def test_integers_only_no_floats():
    _, out = invoke(["verify-fiber", "--n", "3", "--t", "all"])
    for line in out.splitlines():
        rep = json.loads(line)
        for section in ("params", "expected", "computed"):
            for v in rep[section].values():
                assert isinstance(v, int)


def test_determinism_bytes():
    _, out1 = invoke(["verify-fiber", "--n", "3", "--t", "all"])
    _, out2 = invoke(["verify-fiber", "--n", "3", "--t", "all"])
    assert out1 == out2


def test_jobs_does_not_change_bytes():
    _, serial = invoke(["verify-fiber", "--n", "3", "--t", "all"])
    _, parallel = invoke(["verify-fiber", "--n", "3", "--t", "all", "--jobs", "3"])
    assert serial == parallel


def test_out_file(tmp_path):
    path = tmp_path / "reports.ndjson"
    code, out = invoke(["verify-fiber", "--n", "3", "--t", "0", "--out", str(path)])
    assert code == 0
    assert out == ""
    lines = path.read_text().splitlines()
    assert len(lines) == 6
    for line in lines:
        json.loads(line)


def test_failing_check_exits_one(monkeypatch):
    import sscx.cli as cli
    from sscx.report import Report

    def broken(n, t):
        return Report.make("cohomology", {"n": n, "t": t}, {"h0": 1}, {"h0": 0})

    monkeypatch.setitem(cli._FIBER_DISPATCH, "cohomology", broken)
    code, out = invoke(["verify-fiber", "--n", "3", "--t", "0",
                        "--checks", "cohomology"])
    assert code == 1
    assert json.loads(out.splitlines()[0])["status"] == "fail"
