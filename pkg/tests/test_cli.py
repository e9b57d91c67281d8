import io
import json
import subprocess
import sys

import pytest

from conftest import DATA
from specjump.cli import RunConfiguration, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = run(list(argv), stdout=out, stderr=err)
    return status, out.getvalue(), err.getvalue()


def test_lct_of_node():
    assert call("lct", "--poly", "x*y") == (0, "1\n", "")


def test_spectrum_json_from_file():
    status, out, _ = call("spectrum", "--resdata", str(DATA / "cusp.json"), "--format", "json")
    assert status == 0
    assert out == '{"spectrum": [{"alpha": "5/6", "n": 1}]}\n'


def test_verify_cusp_table():
    status, out, _ = call("verify", "--poly", "x^2 + y^3")
    assert status == 0
    rows = {line.split()[0]: line.split()[1:] for line in out.splitlines() if line[:1].isdigit()}
    assert rows["5/6"] == ["1", "1", "1", "PASS"]
    assert rows["1"] == ["0", "0", "skipped", "PASS"]
    assert out.rstrip().endswith("result: PASS")


def test_verify_json():
    status, out, _ = call("verify", "--poly", "x^3 + y^3", "--format", "json")
    obj = json.loads(out)
    assert status == 0 and obj["pass"] and obj["oracle_used"]
    entries = {e["alpha"]: e for e in obj["entries"]}
    assert entries["2/3"]["oracle"] == 1
    assert entries["1"]["stratum"] == 2


def test_verify_no_oracle():
    _, out, _ = call("verify", "--poly", "x^2 + y^3", "--format", "json", "--no-oracle")
    obj = json.loads(out)
    assert not obj["oracle_used"]
    assert all(e["oracle"] == "skipped" for e in obj["entries"])


def test_verify_mismatch_exits_one(tmp_path):
    # k(E2) off by one: validation rejects it, and forced through, the formulas disagree
    obj = json.loads((DATA / "cusp.json").read_text())
    obj["components"][1]["k"] = 3
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(obj))
    assert call("verify", "--resdata", str(path))[0] == 2  # rejected by validation
    status, out, _ = call("verify", "--resdata", str(path), "--force", "--format", "json")
    assert status == 1
    assert json.loads(out)["pass"] is False


def test_jumps():
    status, out, _ = call("jumps", "--poly", "x^2 + y^3", "--format", "json")
    assert json.loads(out) == {"lct": "5/6", "candidates": [{"alpha": "5/6", "inner": 1}, {"alpha": "1", "inner": 0}]}
    _, table, _ = call("jumps", "--poly", "x^2 + y^3")
    assert table.splitlines() == ["alpha  inner", "5/6    1", "1      0"]


def test_spectrum_table_text():
    assert call("spectrum", "--poly", "x^3 + y^3")[1].splitlines() == ["alpha  n", "2/3    1", "1      2"]
    assert call("spectrum", "--poly", "y")[1] == "(empty spectrum on (0, 1])\n"


def test_resolve_json_round_trips_through_resdata(tmp_path):
    status, out, _ = call("resolve", "--poly", "(x^2 - y^3)*(x^3 - y^2)", "--format", "json")
    assert status == 0
    path = tmp_path / "r.json"
    path.write_text(out)
    for command in ("lct", "jumps", "spectrum"):
        for fmt in ("table", "json"):
            a = call(command, "--poly", "(x^2 - y^3)*(x^3 - y^2)", "--format", fmt)
            b = call(command, "--resdata", str(path), "--format", fmt)
            assert a == b
    # verify agrees on both formulas; the file has no charts so the oracle is skipped
    a = json.loads(call("verify", "--poly", "(x^2 - y^3)*(x^3 - y^2)", "--format", "json", "--no-oracle")[1])
    b = json.loads(call("verify", "--resdata", str(path), "--format", "json")[1])
    assert [(e["alpha"], e["inner"], e["stratum"]) for e in a["entries"]] == [
        (e["alpha"], e["inner"], e["stratum"]) for e in b["entries"]
    ]


def test_resolve_table():
    out = call("resolve", "--poly", "x*y")[1]
    assert out.splitlines()[0].split() == ["id", "kind", "m", "k", "self", "cluster"]
    assert "E1 . S1 = 1" in out


@pytest.mark.parametrize(
    "argv, code",
    [
        (["lct", "--poly", "x^2 +"], "syntax"),
        (["lct", "--poly", "1 + x"], "invalid_germ"),
        (["lct", "--poly", "x^2 + y^3", "--max-blowups", "2"], "blowup_limit_exceeded"),
        (["lct", "--poly", "x^3 + y^3", "--max-factor-degree", "2"], "factor_degree_exceeded"),
        (["lct", "--poly", "(y^2 - 2*x^2)^2 + x^5"], "non_rational_center"),
        (["lct", "--resdata", "/nonexistent/file.json"], "io"),
    ],
)
def test_errors_exit_two_with_json(argv, code):
    status, out, err = call(*argv, "--format", "json")
    assert status == 2
    obj = json.loads(out)
    assert obj["error"] == code
    assert err.startswith("specjump: error:")


def test_syntax_error_reports_position():
    obj = json.loads(call("lct", "--poly", "x + z", "--format", "json")[1])
    assert obj["position"] == 4


def test_bad_flags_exit_two():
    with pytest.raises(SystemExit) as info:
        call("lct", "--poly", "x", "--resdata", "f.json")
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        call("lct", "--poly", "x", "--max-blowups", "0")


def test_run_configuration_invariants():
    with pytest.raises(ValueError):
        RunConfiguration("lct", None, None, "table", 1, 1, 1, True)
    with pytest.raises(ValueError):
        RunConfiguration("lct", "x", None, "table", 0, 1, 1, True)


def test_deterministic_bytes():
    argv = ["verify", "--poly", "(x^2 - y^3)^2 + x^5", "--format", "json"]
    assert len({call(*argv)[1] for _ in range(3)}) == 1


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "specjump.cli", "lct", "--poly", "x^2 + y^3"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout == "5/6\n"
