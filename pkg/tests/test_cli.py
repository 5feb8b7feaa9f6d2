import json

from click.testing import CliRunner

from ideal_graphs import __version__, sweep
from ideal_graphs.cli import main
from ideal_graphs.families import validate
from ideal_graphs.report import load_certificate
from ideal_graphs.sweep import FAILED, Check

def _run(*args):
    return CliRunner().invoke(main, list(args))

def test_version():
    result = _run("--version")
    assert result.exit_code == 0
    assert __version__ in result.output

def test_analyze_to_file(tmp_path):
    out = tmp_path / "report.json"
    result = _run("analyze", "12", "--oracle", "--out", str(out))
    assert result.exit_code == 0, result.output
    document = json.loads(out.read_text(encoding="utf-8"))
    assert document["omega"] == document["chi"] == 3
    assert document["weakly_perfect"] is True
    assert document["oracle"]["agrees"] is True

def test_analyze_stdout():
    result = _run("analyze", "--signature", "1,1,1")
    assert result.exit_code == 0, result.output
    assert '"omega": 3' in result.output
    assert '"classification": "class1"' in result.output

def test_analyze_fields(tmp_path):
    out = tmp_path / "fields.json"
    result = _run("analyze", "--fields", "3", "--out", str(out))
    assert result.exit_code == 0, result.output
    document = json.loads(out.read_text(encoding="utf-8"))
    assert document["signature"] == [1, 1, 1]
    assert document["omega"] == 3
    assert any("3 fields" in note for note in document["notes"])

def test_analyze_usage_errors_exit_1():
    assert _run("analyze").exit_code == 1
    assert _run("analyze", "1").exit_code == 1
    assert _run("analyze", "--signature", "x,y").exit_code == 1
    assert _run("analyze", "12", "--fields", "2").exit_code == 1
    assert _run("analyze", "--budget-seconds", "0", "12").exit_code == 1
    assert _run("no-such-command").exit_code == 1

def test_analyze_domain_error_exit_1():
    result = _run("analyze", "12", "--signature", "1,1")
    assert result.exit_code == 1
    assert "signature" in result.output

def test_analyze_failure_exit_2(monkeypatch):
    monkeypatch.setattr("ideal_graphs.report.omega", lambda s: 99)
    assert _run("analyze", "12").exit_code == 2

def test_certify(tmp_path):
    out = tmp_path / "cert.json"
    result = _run("certify", "60", "--out", str(out))
    assert result.exit_code == 0, result.output
    graph, cert, edges = load_certificate(out)
    assert graph.order == 10
    assert cert.chi == 7
    assert validate(cert, graph)
    assert edges is not None

def test_certify_single_vertex():
    result = _run("certify", "4")
    assert result.exit_code == 0
    assert '"chi": 1' in result.output

def test_certify_complete_graph(tmp_path):
    out = tmp_path / "k4.json"
    assert _run("certify", "32", "--out", str(out)).exit_code == 0
    graph, cert, _ = load_certificate(out)
    assert graph.is_complete()
    assert cert.chi == 4

def test_export_dot():
    result = _run("export", "12", "--format", "dot")
    assert result.exit_code == 0
    assert result.output.count(" -- ") == 4

def test_export_signature_is_complete():
    result = _run("export", "--signature", "5")
    assert result.exit_code == 0
    assert result.output.count(" -- ") == 6
    assert '[label="[0,1]"]' not in result.output
    assert '[label="[1]"]' in result.output

def test_export_json(tmp_path):
    out = tmp_path / "g.json"
    assert _run("export", "6", "--format", "json", "--out", str(out)).exit_code == 0
    document = json.loads(out.read_text(encoding="utf-8"))
    assert document["vertex_count"] == 2
    assert document["adjacency"] == [[], []]

def test_sweep_ok():
    result = _run("sweep", "--max", "30", "--check", "weakly-perfect")
    assert result.exit_code == 0, result.output
    assert '"FAILED": 0' in result.output

def test_sweep_signatures():
    result = _run("sweep", "--signatures", "m<=2,exp<=3", "--check", "formulas")
    assert result.exit_code == 0, result.output

def test_sweep_usage_errors():
    assert _run("sweep", "--check", "formulas").exit_code == 1
    assert _run("sweep", "--max", "10", "--signatures", "m<=2,exp<=2", "--check", "formulas").exit_code == 1
    assert _run("sweep", "--signatures", "bogus", "--check", "formulas").exit_code == 1
    assert _run("sweep", "--max", "10", "--check", "everything").exit_code == 1

def test_sweep_failure_exit_2(monkeypatch):
    monkeypatch.setitem(sweep.CHECKS, Check.EDGE_CLASS, lambda s, budget: (FAILED, "forced"))
    result = _run("sweep", "--max", "10", "--check", "edge-class", "--no-show-failures")
    assert result.exit_code == 2

def test_log_file(tmp_path):
    log = tmp_path / "run.log"
    result = _run("--log", str(log), "analyze", "12")
    assert result.exit_code == 0
    assert "Starting ideal-graphs" in log.read_text(encoding="utf-8")
