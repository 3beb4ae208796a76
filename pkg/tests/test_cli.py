import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from flagradon.cli import main

SCHEMA = json.loads(resources.files("flagradon").joinpath("schema/report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json", "--no-timing")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc, out


def test_radon_vanishing_band(capsys):
    code, out, _ = run(capsys, "radon", "--type", "A", "--rank", "4", "--p", "3", "--q", "1", "--a", "2")
    assert code == 0
    assert "R = 0" in out


def test_radon_single_term_json(capsys):
    code, doc, _ = run_json(capsys, "radon", "--type", "A", "--rank", "4", "--p", "3", "--q", "1", "--a", "4")
    assert code == 0
    res = doc["result"]
    assert res["verdict"] == "single_term"
    assert res["single_term"]["weight"]["varpi"] == [-2, 0, 0, 0]
    assert res["single_term"]["shift"] == 0
    assert doc["input"]["lambda"] == [0, 0, -4, 0]


def test_radon_a2_two_terms(capsys):
    code, doc, _ = run_json(capsys, "radon", "--type", "A", "--rank", "2", "--I", "1", "--J", "2", "--lambda", "0,-3")
    assert code == 0
    euler = {tuple(t["weight"]["varpi"]): t["coeff"] for t in doc["result"]["euler"]}
    assert euler == {(-2, 1): 1, (-3, 0): -1}
    assert doc["result"]["verdict"] == "multiple_terms"
    assert [e["x"]["word"] for e in doc["result"]["entries"]] == [[], [1]]


def test_epsilon_coordinates_in_output(capsys):
    _, doc, _ = run_json(capsys, "radon", "--type", "B", "--rank", "3", "--p", "3", "--q", "1", "--a", "1")
    assert doc["input"]["type"] == "B"
    lam = doc["result"]["euler"][0]["weight"]
    assert len(lam["epsilon"]) == 3 and all(isinstance(c, str) for c in lam["epsilon"])


def test_generic_has_no_epsilon(capsys):
    code, doc, _ = run_json(capsys, "radon", "--type", "generic", "--cartan", "2,-1;-3,2", "--I", "1", "--J", "2",
                            "--lambda", "0,-2")
    assert code == 0
    assert all("epsilon" not in t["weight"] for t in doc["result"]["euler"])


def test_ag_convention(capsys):
    # O(r w_p) with r = -2 is O(2); same class as --a 2 without the flag
    code, out, _ = run(capsys, "radon", "--type", "A", "--rank", "4", "--p", "3", "--q", "1", "--a", "-4", "--ag-convention")
    assert code == 0
    assert "R = D O(2)" in out
    _, plain, _ = run_json(capsys, "radon", "--type", "A", "--rank", "4", "--p", "3", "--q", "1", "--a", "4")
    _, ag, _ = run_json(capsys, "radon", "--type", "A", "--rank", "4", "--p", "3", "--q", "1", "--a", "-4", "--ag-convention")
    assert plain == ag


def test_extremal_c3(capsys):
    code, doc, _ = run_json(capsys, "extremal", "--type", "C", "--rank", "3", "--p", "1", "--q", "2")
    assert code == 0
    r = doc["result"]
    assert (r["lambda"]["varpi"], r["mu"]["varpi"]) == ([-2, 0, 0], [0, -1, 0])
    assert (r["concentrated"], r["phi_epi"], r["phi_iso"]) == (True, True, False)
    assert r["witnesses"]["iso"]


def test_extremal_a2_iso(capsys):
    code, out, _ = run(capsys, "extremal", "--type", "A", "--rank", "2", "--p", "2", "--q", "1")
    assert code == 0
    assert "Phi isomorphism: True" in out


def test_extremal_free_directions(capsys):
    code, out, _ = run(capsys, "extremal", "--type", "A", "--rank", "3", "--I", "1", "--J", "3")
    assert code == 0
    assert "free directions" in out


def test_extremal_rejects_non_extremal_lambda(capsys):
    code, _, err = run(capsys, "extremal", "--type", "generic", "--cartan", "2,-1;-1,2", "--I", "1", "--J", "2",
                       "--lambda", "0,-3")
    assert code == 5
    assert "not extremal" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["sweep", "--family", "A", "--n-max", "5", "--a-max", "8"],
        ["sweep", "--family", "D", "--n-max", "6", "--a-max", "14"],
        ["sweep", "--family", "C", "--n-max", "4"],
    ],
)
def test_sweep_clean(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert "no discrepancies" in out


def test_sweep_b2_mismatch(capsys):
    # the single B2 point a table row gets wrong (B2 and C2 are isomorphic; the C table agrees with the engine)
    code, doc, _ = run_json(capsys, "sweep", "--family", "B", "--n-max", "2", "--a-max", "2")
    assert code == 1
    (d,) = doc["result"]["discrepancies"]
    assert (d["n"], d["p"], d["q"], d["a"]) == (2, 1, 2, 1)


@pytest.mark.parametrize(
    "argv,code",
    [
        (["radon", "--type", "A", "--rank", "3", "--I", "1,2", "--J", "2,3", "--lambda", "0,-1"], 2),
        (["radon", "--type", "A", "--rank", "3", "--I", "1,2", "--J", "2,3", "--lambda", "x,1,2"], 2),
        (["radon", "--type", "D", "--rank", "2", "--p", "1", "--q", "2", "--a", "1"], 2),
        (["radon", "--type", "generic", "--cartan", "2,-2;-2,2", "--I", "1", "--J", "2", "--lambda", "0,0"], 2),
        (["radon", "--type", "generic", "--I", "1", "--J", "2", "--lambda", "0,0"], 2),
        (["radon", "--type", "A", "--rank", "3", "--p", "1", "--q", "5", "--a", "1"], 2),
        (["radon", "--type", "A", "--rank", "3", "--p", "1", "--q", "2", "--a", "1", "--lambda", "0,0,0"], 2),
        (["radon", "--type", "A", "--rank", "2", "--I", "1", "--J", "2", "--lambda", "-1,0"], 3),
        (["radon", "--type", "B", "--rank", "5", "--I", "1,2,3,4,5", "--J", "", "--lambda", "0,0,0,0,0", "--budget", "50"], 4),
        (["extremal", "--type", "A", "--rank", "2", "--I", "1", "--J", "2", "--lambda", "1,0"], 5),
    ],
)
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert err.startswith("error:")


def test_argparse_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["radon", "--type", "Q"])
    assert e.value.code == 2


def test_json_round_trip_and_reproducible(capsys):
    argv = ["radon", "--type", "D", "--rank", "5", "--p", "4", "--q", "5", "--a", "3"]
    _, doc, text = run_json(capsys, *argv)
    _, _, again = run_json(capsys, *argv)
    assert text == again
    assert json.dumps(doc, sort_keys=True, ensure_ascii=False) == text.strip()
    assert doc["timing_ms"] == 0 and doc["schema_version"] == "1"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "flagradon", "radon", "--type", "A", "--rank", "4", "--p", "3", "--q", "1", "--a", "2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert "R = 0" in proc.stdout
