import json
import subprocess
import sys

import pytest

from cover_spectra.cli import EXIT_CAP, EXIT_EIGENVALUE, EXIT_FAILED, EXIT_INPUT, EXIT_NOT_EIGENVALUE, main
from cover_spectra.multigraph import bowtie_example, complete_graph, cycle_graph, path_graph


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, g in (("bowtie", bowtie_example()), ("k3", complete_graph(3)), ("c3", cycle_graph(3)), ("p3", path_graph(3))):
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(g.to_json()))
        out[name] = str(p)
    out["dir"] = tmp_path
    return out


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_decide_exit_codes(files, capsys):
    code, out = run(capsys, "decide", files["bowtie"], "--theta", "-1")
    assert code == EXIT_EIGENVALUE and json.loads(out)["kind"] == "refined-aomoto"
    code, out = run(capsys, "decide", files["k3"], "--theta", "0")
    assert code == EXIT_NOT_EIGENVALUE and json.loads(out)["kind"] == "disjoint-critical-cycles"
    code, _ = run(capsys, "decide", files["c3"], "--theta", "minpoly:-2,0,1:1,2")
    assert code == EXIT_NOT_EIGENVALUE


def test_input_errors(files, capsys):
    assert run(capsys, "decide", files["k3"], "--theta", "1/0")[0] == EXIT_INPUT
    assert run(capsys, "decide", str(files["dir"] / "missing.json"), "--theta", "0")[0] == EXIT_INPUT
    bad = files["dir"] / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "decide", str(bad), "--theta", "0")[0] == EXIT_INPUT
    assert run(capsys, "certify", files["k3"])[0] == EXIT_INPUT
    assert run(capsys, "cover", files["k3"])[0] == EXIT_INPUT


def test_caps_from_flags_and_environment(files, capsys, monkeypatch):
    assert run(capsys, "decide", files["bowtie"], "--theta", "-1", "--max-vertices", "3")[0] == EXIT_CAP
    monkeypatch.setenv("COVER_SPECTRA_MAX_VERTICES", "3")
    assert run(capsys, "decide", files["bowtie"], "--theta", "-1")[0] == EXIT_CAP


def test_certify_and_check(files, capsys):
    code, out = run(capsys, "certify", files["bowtie"], "--theta", "-1")
    obj = json.loads(out)
    assert code == EXIT_EIGENVALUE and obj["density_of_states"]["tau"] == "1/5"
    cert = files["dir"] / "cert.json"
    cert.write_text(out)
    code, out = run(capsys, "certify", files["bowtie"], "--check", str(cert))
    assert code == EXIT_EIGENVALUE and json.loads(out)["valid"]
    code, out = run(capsys, "certify", files["p3"], "--check", str(cert))
    assert code == EXIT_FAILED and not json.loads(out)["valid"]
    code, out = run(capsys, "certify", files["k3"], "--theta", "0")
    assert code == EXIT_NOT_EIGENVALUE and json.loads(out)["aomoto"] == "none"


def test_verify(files, capsys):
    code, out = run(capsys, "verify", files["bowtie"], "--theta", "-1", "--seed", "4")
    obj = json.loads(out)
    assert code == EXIT_EIGENVALUE and obj["consistent"] and obj["seed"] == 4
    code, _ = run(capsys, "verify", files["k3"], "--theta", "0", "--no-probe")
    assert code == EXIT_NOT_EIGENVALUE


def test_poly(files, capsys):
    code, out = run(capsys, "poly", "char", files["bowtie"])
    assert code == 0 and json.loads(out)["factored"] == "(x - 3)*(x - 1)*(x + 1)^3"
    code, out = run(capsys, "poly", "matching", files["p3"])
    assert json.loads(out)["coeffs"] == ["0", "-2", "0", "1"]
    code, out = run(capsys, "poly", "molecular", files["k3"])
    assert json.loads(out)["coeffs"] == ["-2", "-3", "0", "1"]
    code, out = run(capsys, "poly", "twisted", files["k3"], "--phases", '{"e1": "-1"}')
    assert json.loads(out)["coeffs"] == ["2", "-3", "0", "1"]
    code, out = run(capsys, "poly", "twisted", files["k3"], "--phases", '{"e1": [0.6, 0.8]}')
    assert json.loads(out)["exact"] is False


def test_decompose(files, capsys):
    code, out = run(capsys, "decompose", files["p3"], "--theta", "0")
    assert code == 0 and json.loads(out)


def test_cover_and_probe(files, capsys):
    code, out = run(capsys, "cover", files["c3"], "--quotient", "2")
    assert code == 0 and len(json.loads(out)["graph"]["vertices"]) == 6
    code, out = run(capsys, "cover", files["c3"], "--ball", "2", "--root", "1")
    assert code == 0
    code, out = run(capsys, "probe", files["bowtie"], "--theta", "-1", "--quotient", "2")
    assert code == 0 and json.loads(out)["min_distance"] < 1e-9


def test_gen_is_reproducible(capsys):
    a = run(capsys, "gen", "--model", "erdos-renyi", "--n", "8", "--seed", "7")[1]
    b = run(capsys, "gen", "--model", "erdos-renyi", "--n", "8", "--seed", "7")[1]
    assert a == b
    code, out = run(capsys, "gen", "--model", "theta-critical-glue", "--n", "7", "--seed", "3", "--with-spec")
    assert code == 0 and json.loads(out)["spec"]["model"] == "theta-critical-glue"


def test_corpus(files, capsys):
    summary = files["dir"] / "summary.json"
    code, out = run(capsys, "corpus", "--count", "5", "--max-n", "6", "--suites", "all", "--out", str(summary))
    assert code == 0 and json.loads(out)["ok"] and json.loads(summary.read_text())["instances"] == 9
    code, out = run(capsys, "corpus", "--count", "5", "--max-n", "6", "--suites", "oracles", "--mutation", "lambda-sign")
    assert code == EXIT_FAILED and not json.loads(out)["ok"]
    assert run(capsys, "corpus", "--suites", "nope")[0] == EXIT_INPUT


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "cover_spectra", "decide", files["k3"], "--theta", "0"], capture_output=True, text=True
    )
    assert proc.returncode == EXIT_NOT_EIGENVALUE and json.loads(proc.stdout)["kind"] == "disjoint-critical-cycles"
