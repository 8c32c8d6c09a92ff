import json
import subprocess
import sys

import pytest

from qmetrics.cli import main
from qmetrics.report import Options, aggregate, analyze_path, combine, expand_paths
from tests.paths import ROOT

GOLDEN = ROOT / "tests" / "golden"


@pytest.fixture(autouse=True)
def _in_repo(monkeypatch):
    monkeypatch.chdir(ROOT)


def run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_fig1_json(capsys):
    code, out, _ = run(capsys, "analyze", "corpus/qiskit/fig1.py", "--dialect", "qiskit", "--format", "json")
    assert code == 0
    assert '"phi1": 16' in out and '"cyclomatic": 3' in out
    rec = json.loads(out)["records"][0]
    assert rec["dialect"] == "qiskit_dialect"
    assert rec["loc"] == {"phi1": 16, "phi2": 6, "phi3": 1, "phi4": 7, "phi5": 2, "phi6": 3}
    assert rec["cfg"] == {"mode": "paper", "nodes": 16, "edges": 17, "cyclomatic": 3}
    assert rec["information_flow"][0]["if_value"] == 64


def test_fig1_matches_golden(capsys):
    # snapshot of a reviewed run; refresh deliberately when the schema changes
    _, out, _ = run(capsys, "analyze", "corpus/qiskit/fig1.py")
    assert out == (GOLDEN / "fig1.json").read_text(encoding="utf-8")


def test_classical_cfg_flag(capsys):
    code, out, _ = run(capsys, "analyze", "corpus/qiskit/fig1.py", "--classical-cfg")
    report = json.loads(out)
    assert code == 0
    assert report["config"]["cfg_mode"] == "classical"
    assert report["records"][0]["cfg"] == {"mode": "classical", "nodes": 16, "edges": 16, "cyclomatic": 2}


def test_empty_program(capsys):
    code, out, _ = run(capsys, "analyze", "corpus/qasm/empty.qasm")
    rec = json.loads(out)["records"][0]
    assert code == 0
    assert set(rec["loc"].values()) == {0}
    assert rec["halstead"]["volume_vq"] == 0.0
    assert rec["degenerate"] == {"halstead": True, "cyclomatic": True}
    assert rec["cfg"]["cyclomatic"] is None


def test_records_are_code_xor_design(capsys):
    _, out, _ = run(capsys, "analyze", "corpus", "--recursive")
    for rec in json.loads(out)["records"]:
        code_keys = {"loc", "halstead", "cfg", "information_flow"} & rec.keys()
        design_keys = {"gamma", "delta", "theta"} & rec.keys()
        assert bool(code_keys) != bool(design_keys)


def test_recursive_aggregate_is_fold(capsys):
    code, out, _ = run(capsys, "analyze", "corpus/", "--recursive", "--format", "json")
    report = json.loads(out)
    assert code == 0
    paths = [r["path"] for r in report["records"]]
    assert paths == sorted(paths) and len(paths) == 22

    opts = Options()
    records = [analyze_path(p, opts, shown) for p, shown in expand_paths(["corpus/"], True, opts)]
    acc = {}
    for record in records:
        acc = combine(acc, record)
    assert report["aggregate"] == json.loads(json.dumps(aggregate(records)))
    assert report["aggregate"]["sum"] == {k: v[0] for k, v in sorted(acc.items())}
    assert report["aggregate"]["sum"]["loc.phi1"] == sum(r.metrics["loc"]["phi1"] for r in records if "loc" in r.metrics)


def test_non_recursive_skips_subdirectories(capsys):
    _, out, _ = run(capsys, "analyze", "corpus")
    assert json.loads(out)["records"] == []


def test_parse_error_gives_partial_report(tmp_path, capsys):
    bad = tmp_path / "bad.qasm"
    bad.write_text("qreg q[1];\nh q[0]\n")
    code, out, _ = run(capsys, "analyze", str(bad), "corpus/qasm/bell.qasm")
    report = json.loads(out)
    assert code == 1
    by_path = {r["path"]: r for r in report["records"]}
    [err] = by_path[bad.as_posix()]["errors"]
    assert err.startswith(f"{bad.as_posix()}:2:") and "ParseError" in err
    assert by_path["corpus/qasm/bell.qasm"]["loc"]["phi1"] == 5
    assert report["aggregate"]["failed"] == 1 and report["aggregate"]["analyzed"] == 1


def test_schema_error_carries_location(tmp_path, capsys):
    doc = tmp_path / "x.arch.json"
    doc.write_text('{"components": [{"name": "Q", "kind": "quantum"}], "connectors": [{"from": "Q", "to": "Z"}]}')
    code, out, _ = run(capsys, "analyze", str(doc))
    assert code == 1
    [err] = json.loads(out)["records"][0]["errors"]
    assert "/connectors/0/to" in err and "UnknownComponent" in err


def test_missing_file_is_reported(capsys):
    code, out, _ = run(capsys, "analyze", "corpus/qasm/absent.qasm")
    assert code == 1
    assert "absent.qasm" in json.loads(out)["records"][0]["errors"][0]


def test_unrecognised_extension(tmp_path, capsys):
    f = tmp_path / "notes.txt"
    f.write_text("hello")
    code, out, _ = run(capsys, "analyze", str(f))
    assert code == 1
    assert "unrecognised" in json.loads(out)["records"][0]["errors"][0]


@pytest.mark.parametrize("argv", [
    [],
    ["analyze"],
    ["analyze", "x.qasm", "--format", "xml"],
    ["analyze", "x.qasm", "--dialect", "cirq"],
    ["analyze", "x.qasm", "--dialect", "qasm", "--design-format", "arch"],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2
    capsys.readouterr()


def test_dialect_override(tmp_path, capsys):
    f = tmp_path / "prog.txt"
    f.write_text("OPENQASM 2.0;\nqreg q[1];\nh q[0];\n")
    code, out, _ = run(capsys, "analyze", str(f), "--dialect", "qasm")
    assert code == 0 and json.loads(out)["records"][0]["loc"]["phi2"] == 1


def test_design_format_override(tmp_path, capsys):
    f = tmp_path / "doc.json"
    f.write_text('{"classes": [{"name": "A", "quantum": true}]}')
    code, out, _ = run(capsys, "analyze", str(f), "--design-format", "quml")
    assert code == 0 and json.loads(out)["records"][0]["theta"]["theta1"] == 1


def test_gate_set_file(tmp_path, capsys):
    gates = tmp_path / "gates.txt"
    gates.write_text("# only hadamards\nh\n")
    code, out, _ = run(capsys, "analyze", "corpus/qiskit/fig1.py", "--gate-set", str(gates))
    report = json.loads(out)
    assert code == 0
    assert report["config"]["gate_set"] == ["h"]
    loc = report["records"][0]["loc"]
    # lines 6, 7, 9 and 10 apply h
    assert loc["phi6"] == 1 and loc["phi2"] == 4


def test_missing_gate_set_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["analyze", "corpus/qasm/bell.qasm", "--gate-set", "nowhere.txt"])
    assert info.value.code == 2
    capsys.readouterr()


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "analyze", "corpus/qasm/bell.qasm", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["records"][0]["path"] == "corpus/qasm/bell.qasm"


def test_text_format_uses_symbols(capsys):
    code, out, _ = run(capsys, "analyze", "corpus/qiskit/fig1.py", "corpus/design", "--format", "text")
    assert code == 0
    for needle in ("φ1", "lines of code", "V_Q", "V(G_Q)", "IF", "γ6", "δ4", "θ1", "cfg mode: paper"):
        assert needle in out
    assert "files: 4  analyzed: 4  failed: 0" in out


def test_emit_cfg_dot(capsys):
    code, out, _ = run(capsys, "analyze", "corpus/qasm/mygate.qasm", "--emit-cfg", "dot")
    assert code == 0
    assert out.count("digraph") == 2
    assert '"corpus/qasm/mygate.qasm:mygate"' in out
    assert "records" not in out


def test_emit_cfg_reports_errors(tmp_path, capsys):
    bad = tmp_path / "bad.py"
    bad.write_text("while True:\n    pass\n")
    code, out, err = run(capsys, "analyze", str(bad), "--emit-cfg", "dot")
    assert code == 1 and out == ""
    assert "bad.py:1:" in err


def test_json_is_deterministic(capsys):
    _, first, _ = run(capsys, "analyze", "corpus", "--recursive")
    _, second, _ = run(capsys, "analyze", "corpus", "--recursive")
    assert first == second


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qmetrics.cli", "analyze", "corpus/qasm/bell.qasm"],
                          cwd=ROOT, capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["tool"] == "qmetrics"
