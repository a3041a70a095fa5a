import json
import subprocess
import sys

import pytest

from tnc_origami.builders import PARITY_RULE, build_stratum_origami
from tnc_origami.cli import builder_shape, main
from tnc_origami.origami import Origami


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def tnc_file(tmp_path, capsys):
    path = tmp_path / "o.json"
    assert run(capsys, "build", "--stratum", "1,1", "--l", "6", "--out", str(path))[0] == 0
    return path


def test_build_21_square_example(capsys):
    code, out, _ = run(capsys, "build", "--stratum", "2,4,1,3", "--l", "2", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["d"] == 21
    assert rep["stratum"] == [1, 2, 3, 4]
    assert rep["cylinders"]["horizontal"] == [21]
    assert rep["origami"]["sigma_b_cycles"] == "(1,2,3)(5,6,7)(8,9,10)(12,16,13,14,15)(17,18,19)"


def test_build_human_output(capsys):
    code, out, _ = run(capsys, "build", "--stratum", "2", "--l", "1")
    assert code == 0
    assert "d: 4" in out and "genus: 2" in out


def test_malformed_stratum_quotes_parity_rule(capsys):
    code, _, err = run(capsys, "build", "--stratum", "1,2", "--l", "1")
    assert code == 1
    assert PARITY_RULE in err
    code, _, err = run(capsys, "build", "--stratum", "x,2")
    assert code == 1


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["build"])
    assert exc.value.code == 1


def test_verify_tnc_pipeline(capsys, tnc_file):
    code, out, _ = run(capsys, "verify-tnc", "--in", str(tnc_file), "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["certificate"]["verdict"] == "valid"
    assert rep["witness_source"] == "standard(L=11, q=1)"
    assert all(rep["witness_membership"])
    assert set(rep["surjective_mod_n"]) == {str(n) for n in range(2, 14)}
    assert all(v is True for v in rep["surjective_mod_n"].values())


def test_verify_tnc_negative(capsys, tmp_path, tnc_file):
    wfile = tmp_path / "w.json"
    wfile.write_text(json.dumps({"witnesses": [
        {"A": [[1, 0], [0, 1]], "m": 2, "provenance": "user"},
        {"A": [[0, -1], [1, 0]], "m": 2, "provenance": "user"},
    ]}))
    code, out, _ = run(capsys, "verify-tnc", "--in", str(tnc_file), "--witnesses", str(wfile),
                       "--no-orbit", "--json")
    assert code == 2
    assert json.loads(out)["certificate"]["verdict"] == "invalid"


def test_verify_tnc_harvest_route(capsys, tmp_path):
    path = tmp_path / "cyl.json"
    # vertical cylinder of length 2 rules out the builder shape
    path.write_text(json.dumps(Origami.from_cycles("(1,2)", "(1,2)", 2).to_dict()))
    code, out, _ = run(capsys, "verify-tnc", "--in", str(path), "--json")
    rep = json.loads(out)
    assert rep["witness_source"] == "harvested(radius=2)"
    assert rep["veech"]["index"] == 3
    assert rep["surjective_mod_n"]["2"] is False
    assert code == 2


def test_search_q_zero(capsys):
    code, out, _ = run(capsys, "search-l", "--stratum", "2", "--max", "100")
    assert code == 2
    assert "q = 0" in out


def test_search_primes(capsys):
    code, out, _ = run(capsys, "search-l", "--stratum", "1,1", "--primes", "3", "--json")
    assert code == 0
    rep = json.loads(out)
    assert [r["L"] for r in rep["results"]] == [11, 41, 71]


def test_search_max(capsys):
    code, out, _ = run(capsys, "search-l", "--stratum", "1,1", "--max", "10")
    assert code == 0
    assert out.splitlines()[0] == "l=6 L=11 q=1"


def test_analyze_and_hash_round_trip(capsys, tmp_path, tnc_file):
    code, out, _ = run(capsys, "analyze", "--in", str(tnc_file), "--json", "--mod-max", "5")
    assert code == 0
    rep = json.loads(out)
    assert rep["congruence"]["level_verdict"] == "non_congruence"
    assert rep["congruence"]["certificate_verdict"] == "valid"
    assert rep["veech"]["index"] > 1
    # the embedded origami feeds straight back into verify-tnc
    again = tmp_path / "again.json"
    again.write_text(json.dumps(rep))
    code, out2, _ = run(capsys, "verify-tnc", "--in", str(again), "--json", "--no-orbit")
    assert json.loads(out2)["origami_hash"] == rep["origami_hash"]


def test_output_is_deterministic(capsys, tnc_file):
    outs = [run(capsys, "analyze", "--in", str(tnc_file), "--json", "--mod-max", "4")[1] for _ in range(2)]
    assert outs[0] == outs[1]
    assert "timings" not in json.loads(outs[0])


def test_orbit_dot(capsys, tmp_path, tnc_file):
    dot = tmp_path / "g.dot"
    code, out, _ = run(capsys, "orbit", "--in", str(tnc_file), "--dot", str(dot), "--json")
    assert code == 0
    rep = json.loads(out)
    text = dot.read_text()
    assert text.startswith("digraph")
    assert text.count('label="T"') == rep["veech"]["index"]


def test_orbit_cap_flag(capsys, tnc_file):
    code, _, err = run(capsys, "orbit", "--in", str(tnc_file), "--orbit-cap", "3")
    assert code == 1 and "cap" in err


def test_text_origami_input(capsys, tmp_path):
    path = tmp_path / "o.txt"
    path.write_text(build_stratum_origami((2,), 1).to_text() + "\n")
    code, out, _ = run(capsys, "orbit", "--in", str(path), "--json")
    assert code == 0 and json.loads(out)["veech"]["index"] == 9


def test_builder_shape():
    assert builder_shape(build_stratum_origami((1, 1), 6)) == (11, 1)
    assert builder_shape(build_stratum_origami((2, 4, 1, 3), 2)) == (21, 1)
    assert builder_shape(Origami.from_cycles("(1,2)", "(1,2)", 2)) is None


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "tnc_origami", "search-l", "--stratum", "1,1", "--max", "6"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert "L=11" in res.stdout
