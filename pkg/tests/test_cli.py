import json
import subprocess
import sys

import pytest

from pelljac.cli import main
from pelljac.pipeline import Certificate


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_sequences_text(capsys):
    code, out, _ = run(capsys, "sequences", "--kind", "jacobsthal", "--count", "10", "--format", "text")
    assert code == 0 and out.strip() == "0 1 1 3 5 11 21 43 85 171"


def test_sequences_json(capsys):
    code, out, _ = run(capsys, "sequences", "--kind", "pell-lucas", "--count", "3")
    assert json.loads(out) == {"kind": "pell-lucas", "terms": ["2", "2", "6"]}


@pytest.mark.parametrize("triple,code", [(("4", "5", "1"), 0), (("5", "5", "5"), 1)])
def test_verify(capsys, triple, code):
    k, n, m = triple
    got, out, _ = run(capsys, "verify", "--equation", "pell", "--k", k, "--n", n, "--m", m)
    assert got == code and json.loads(out)["holds"] is (code == 0)


def test_verify_missing_flags_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "--equation", "pell", "--k", "4"])
    assert info.value.code == 64


def test_unknown_equation_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["search", "--equation", "fibonacci"])
    assert info.value.code == 64


def test_reduce_first_prints_q65(capsys):
    code, out, _ = run(capsys, "reduce", "--equation", "pell", "--first")
    d = json.loads(out)
    assert code == 0
    assert d["q"] == "2427228558134035529638808203392547" and d["q_index"] == 65
    assert d["omega_bound"] == 118 and float(d["epsilon_lower"]) > 0.1


def test_reduce_earliest(capsys):
    code, out, _ = run(capsys, "reduce", "--equation", "pell", "--first", "--earliest", "--format", "text")
    assert code == 0 and out.startswith("q_58 = ")


def test_reduce_family_small(capsys):
    code, out, _ = run(capsys, "reduce", "--equation", "pell-lucas", "--family", "--max-omega", "3")
    d = json.loads(out)
    assert code == 0 and d["nonpositive"] == [1] and set(d["members"]) == {"0", "1", "2", "3"}


def test_reduce_bad_q_index(capsys):
    code, _, err = run(capsys, "reduce", "--equation", "pell", "--first", "--q-index", "10")
    assert code == 64 and "6M" in err


def test_search_small_box(capsys):
    code, out, _ = run(capsys, "search", "--equation", "pell", "--k-max", "10", "--n-max", "10", "--m-max", "10")
    assert code == 0 and [tuple(t) for t in json.loads(out)["solutions"]][1] == (1, 1, 0)


def test_bound(capsys):
    code, out, _ = run(capsys, "bound", "--equation", "pell")
    d = json.loads(out)
    assert code == 0 and int(d["absolute_bound_n"]) <= 2 * 10**29
    code, _, _ = run(capsys, "bound", "--equation", "pell-lucas")
    assert code == 1


@pytest.mark.parametrize("bits", ["16", "20000"])
def test_precision_validation(capsys, bits):
    code, _, err = run(capsys, "pipeline", "--equation", "pell", "--precision-bits", bits)
    assert code == 64 and "precision" in err


def test_precision_env(capsys, monkeypatch):
    monkeypatch.setenv("SOLVER_PRECISION_BITS", "8")
    code, _, _ = run(capsys, "sequences", "--kind", "pell", "--count", "2")
    assert code == 64
    monkeypatch.setenv("SOLVER_PRECISION_BITS", "256")
    code, out, _ = run(capsys, "bound", "--equation", "pell")
    assert code == 0 and json.loads(out)["matveev_first_coefficient"]["bits"] == 256


def test_unwritable_output(capsys, tmp_path):
    code, _, err = run(capsys, "verify", "--equation", "pell", "--k", "1", "--n", "1", "--m", "0",
                       "--output", str(tmp_path / "missing" / "out.json"))
    assert code == 64


def test_pipeline_writes_certificate(capsys, tmp_path):
    path = tmp_path / "pell.json"
    code, out, _ = run(capsys, "pipeline", "--equation", "pell", "--output", str(path))
    assert out == ""
    cert = Certificate.from_json(path.read_text())
    assert code == cert.exit_code == 1  # the published list omits three solutions
    assert len(cert.solutions) == 9
    code, _, _ = run(capsys, "pipeline", "--equation", "pell", "--no-expected", "--output", str(path))
    assert code == 0


def test_text_report_agrees_with_json(capsys):
    code_t, text, _ = run(capsys, "pipeline", "--equation", "pell-lucas", "--format", "text")
    code_j, raw, _ = run(capsys, "pipeline", "--equation", "pell-lucas")
    d = json.loads(raw)
    assert code_t == code_j == 1
    assert f"solutions       {len(d['solutions'])}" in text
    assert f"discrepancies   {len(d['discrepancies'])}" in text
    for s in d["solutions"]:
        assert str(tuple(s)) in text


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "pelljac", "verify", "--equation", "pell-lucas",
                        "--k", "3", "--n", "5", "--m", "3", "--format", "text"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "true"
