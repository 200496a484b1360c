import json
import subprocess
import sys

import pytest

from unimodular_cycles import campaign, cli
from unimodular_cycles.higher_dim import simplex_sphere

TRIANGLE = {"vectors": [[1, 0], [0, 1], [-1, -1]]}
NEG_TRIANGLE = {"vectors": [[1, 0], [0, 1], [1, -1]]}
SQUARE = {"vectors": [[1, 0], [0, 1], [-1, 0], [0, -1]]}


@pytest.fixture
def run(tmp_path, capsys):
    def go(*argv, data=None):
        args = list(argv)
        if data is not None:
            path = tmp_path / "in.json"
            path.write_text(data if isinstance(data, str) else json.dumps(data))
            args += ["--input", str(path)]
        try:
            code = cli.main(args)
        except SystemExit as exc:
            code = exc.code
        out = capsys.readouterr()
        return code, out.out, out.err

    return go


def test_invariants_triangle(run):
    code, out, _ = run("invariants", data=TRIANGLE)
    assert code == 0
    assert "mu(L) = 3" in out and "nu(L) = 3" in out and "= 12/12 = 1" in out


def test_invariants_square_json(run):
    code, out, _ = run("invariants", "--json", data=SQUARE)
    obj = json.loads(out)
    assert code == 0
    assert (obj["mu"], obj["nu"], obj["rot"], obj["rot_twelfths"]) == (0, 4, 1, 12)
    assert obj["local_mu"] == [0, 0, 0, 0]


def test_invariants_rejects_bad_pair(run):
    code, _, err = run("invariants", data={"vectors": [[1, 0], [1, 2]]})
    assert code == 2
    assert "NotUnimodularAt" in err


@pytest.mark.parametrize("data", ["{not json", {"vectors": [[1, 0]]}, {"vectors": [[1.5, 0], [0, 1]]}, {}])
def test_malformed_input(run, data):
    assert run("rot", data=data)[0] == 2


def test_missing_file(run):
    assert run("rot", "--input", "/nonexistent/cycle.json")[0] == 2


@pytest.mark.parametrize("data, expected", [(TRIANGLE, 1), (NEG_TRIANGLE, 0), (SQUARE, 1)])
def test_rot_all(run, data, expected):
    code, out, _ = run("rot", "--json", data=data)
    obj = json.loads(out)
    assert code == 0 and obj["agree"]
    assert set(obj["values"].values()) == {expected}
    assert obj["angle_sum"] == pytest.approx(expected)


@pytest.mark.parametrize("method", ["formula", "reduce", "winding"])
def test_rot_single_method(run, method):
    code, out, _ = run("rot", "--method", method, data=TRIANGLE)
    assert code == 0
    assert out.strip() == f"{method}: 1 (12/12)"


def test_rot_on_generated_cycle(run):
    code, cycle, _ = run("generate", "--seed", "42", "--length", "50")
    assert code == 0 and len(json.loads(cycle)["vectors"]) == 50
    code, out, _ = run("rot", "--json", data=cycle)
    assert code == 0 and json.loads(out)["agree"]


def test_rot_disagreement_exits_3(run, monkeypatch):
    monkeypatch.setattr(cli, "rot_winding_exact", lambda cycle: 7)
    code, out, err = run("rot", "--json", data=TRIANGLE)
    assert code == 3
    assert json.loads(out)["input"] == TRIANGLE
    assert "disagreement" in err


def test_reduce_square(run):
    code, out, _ = run("reduce", data=SQUARE)
    obj = json.loads(out)
    assert code == 0
    assert [s["kind"] for s in obj["steps"]] == ["SplitQuad", "BasePair"]
    assert obj["total_twelfths"] == 12 and obj["rot"] == 1


def test_generate_is_deterministic(run):
    a = run("generate", "--seed", "3", "--length", "30")
    b = run("generate", "--seed", "3", "--length", "30")
    assert a == b and a[0] == 0


def test_generate_fan(run):
    code, out, _ = run("generate", "--fan", "--length", "12", "--seed", "1")
    assert code == 0
    code, inv, _ = run("invariants", "--json", data=out)
    obj = json.loads(inv)
    assert set(obj["local_nu"]) == {1} and obj["mu"] == 12 - 3 * 12 and obj["rot"] == 1


def test_generate_usage_errors(run):
    assert run("generate", "--length", "1")[0] == 64
    assert run("generate", "--fan", "--length", "2")[0] == 64


def test_reconstruct(run):
    code, out, _ = run("reconstruct", data={"u1": [1, 0], "u2": [0, 1], "nus": [1, 1], "mus": [1]})
    assert code == 0
    assert json.loads(out) == TRIANGLE
    code, _, err = run("reconstruct", data={"u1": [1, 0], "u2": [0, 1], "nus": [-1, 1], "mus": [1]})
    assert code == 2 and "BadFirstNu" in err


def test_degree(run):
    code, out, _ = run("degree", data=simplex_sphere().to_json_obj())
    assert code == 0 and json.loads(out) == {"degree": 1}
    flipped = simplex_sphere().reoriented().to_json_obj()
    assert json.loads(run("degree", data=flipped)[1]) == {"degree": -1}
    bad = simplex_sphere().to_json_obj()
    bad["vertices"][2]["image"] = [0, 0, 2]
    code, _, err = run("degree", data=bad)
    assert code == 2 and "FacetNotUnimodular" in err


def test_verify_small_campaign(run):
    code, out, _ = run("verify", "--seed", "7", "--trials", "200", "--max-length", "100")
    report = json.loads(out)
    assert code == 0
    assert report["trials"] == 200 and report["failures"] == 0 and report["failure_samples"] == []


def test_verify_is_deterministic_and_parallel_safe(run):
    a = json.loads(run("verify", "--seed", "5", "--trials", "50", "--max-length", "40")[1])
    b = json.loads(run("verify", "--seed", "5", "--trials", "50", "--max-length", "40", "--workers", "2")[1])
    a.pop("elapsed"), b.pop("elapsed")
    assert a == b


def test_verify_usage(run):
    assert run("verify", "--trials", "0")[0] == 64
    assert run("verify", "--max-length", "1")[0] == 64
    assert run("verify", "--trials", "many")[0] == 64
    assert run()[0] == 64
    assert run("bogus")[0] == 64


def test_verify_failure_exits_1(run, monkeypatch):
    def broken(cycle, verify_splits=True):
        return "injected"

    monkeypatch.setattr(campaign, "check_cycle", broken)
    code, out, _ = run("verify", "--trials", "3", "--max-length", "10")
    report = json.loads(out)
    assert code == 1
    assert report["failures"] == 3 and len(report["failure_samples"]) == 3


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "unimodular_cycles", "rot", "--method", "formula"],
        input=json.dumps(TRIANGLE),
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "formula: 1 (12/12)"
