"""Run the metric engines over input files and assemble a report."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Iterable, Optional

from . import __version__
from .cfg import build_qcfg, cyclomatic, to_dot
from .code_metrics import compute_halstead, compute_information_flow, compute_loc_metrics
from .design import DesignFormat, compute_delta, compute_gamma, compute_theta, load_design_document
from .errors import QMetricsError
from .model import DEFAULT_GATE_SET, Dialect, QProgram
from .qasm import load_qasm
from .qiskit_dialect import parse_qiskit_dialect

SCHEMA_VERSION = 1

DESIGN_SUFFIXES = {
    ".arch.json": DesignFormat.ARCH,
    ".patterns.json": DesignFormat.PATTERNS,
    ".quml.json": DesignFormat.QUML,
}
DIALECT_NAMES = {"qasm": Dialect.OPENQASM2, "qiskit": Dialect.QISKIT}


@dataclass(frozen=True)
class Options:
    gate_set: frozenset[str] = DEFAULT_GATE_SET
    classical_cfg: bool = False
    dialect: Optional[Dialect] = None
    design_format: Optional[DesignFormat] = None

    @property
    def cfg_mode(self) -> str:
        return "classical" if self.classical_cfg else "paper"


@dataclass
class Record:
    path: str
    kind: str  # "code" or "design"
    source: str  # dialect or design format
    metrics: dict[str, Any] = field(default_factory=dict)
    errors: list[str] = field(default_factory=list)

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"path": self.path, "kind": self.kind, "errors": self.errors}
        out["dialect" if self.kind == "code" else "format"] = self.source
        out.update(self.metrics)
        return out


def detect(path: Path, opts: Options) -> tuple[str, Dialect | DesignFormat] | None:
    name = path.name.lower()
    if opts.design_format is not None:
        return "design", opts.design_format
    if opts.dialect is not None:
        return "code", opts.dialect
    for suffix, fmt in DESIGN_SUFFIXES.items():
        if name.endswith(suffix):
            return "design", fmt
    if name.endswith(".qasm"):
        return "code", Dialect.OPENQASM2
    if name.endswith(".py"):
        return "code", Dialect.QISKIT
    return None


def load_program(text: str, dialect: Dialect, gate_set: Iterable[str] = DEFAULT_GATE_SET) -> QProgram:
    if dialect is Dialect.OPENQASM2:
        return load_qasm(text, gate_set)
    return parse_qiskit_dialect(text, gate_set)


def code_metrics(program: QProgram, opts: Options) -> dict[str, Any]:
    halstead = asdict(compute_halstead(program))
    degenerate_h = halstead.pop("degenerate")
    graph = build_qcfg(program, classical=opts.classical_cfg)
    cfg: dict[str, Any] = {"mode": opts.cfg_mode, "nodes": graph.node_count, "edges": graph.edge_count}
    cfg["cyclomatic"] = cyclomatic(graph) if graph.node_count else None

    flows = []
    for flow in compute_information_flow(program).modules:
        entry = asdict(flow)
        module_graph = build_qcfg(program, flow.module, classical=opts.classical_cfg)
        entry["cyclomatic"] = cyclomatic(module_graph) if module_graph.node_count else None
        flows.append(entry)
    return {
        "loc": asdict(compute_loc_metrics(program)),
        "halstead": halstead,
        "cfg": cfg,
        "information_flow": flows,
        "degenerate": {"halstead": degenerate_h, "cyclomatic": cfg["cyclomatic"] is None},
    }


def design_metrics(text: str, fmt: DesignFormat, path: str) -> dict[str, Any]:
    model = load_design_document(text, fmt, path)
    if fmt is DesignFormat.ARCH:
        return {"gamma": asdict(compute_gamma(model))}  # type: ignore[arg-type]
    if fmt is DesignFormat.PATTERNS:
        return {"delta": asdict(compute_delta(model))}  # type: ignore[arg-type]
    return {"theta": asdict(compute_theta(model))}  # type: ignore[arg-type]


def _error_line(path: str, exc: Exception) -> str:
    where = exc.location() if isinstance(exc, QMetricsError) else "0"
    return f"{path}:{where}: {type(exc).__name__}: {exc}"


def analyze_path(path: Path, opts: Options, display: Optional[str] = None) -> Record:
    shown = display or path.as_posix()
    detected = detect(path, opts)
    if detected is None:
        return Record(shown, "code", "unknown", errors=[f"{shown}:0: unrecognised file type"])
    kind, source = detected
    record = Record(shown, kind, source.value)
    try:
        text = path.read_text(encoding="utf-8")
        if kind == "code":
            assert isinstance(source, Dialect)
            record.metrics = code_metrics(load_program(text, source, opts.gate_set), opts)
        else:
            assert isinstance(source, DesignFormat)
            record.metrics = design_metrics(text, source, shown)
    except (QMetricsError, OSError, UnicodeDecodeError) as exc:
        record.errors.append(_error_line(shown, exc))
    return record


def expand_paths(paths: Iterable[str], recursive: bool, opts: Options) -> list[tuple[Path, str]]:
    """Files to analyse, sorted by displayed path; directories keep only recognised files."""
    found: dict[str, Path] = {}
    for raw in paths:
        path = Path(raw)
        if path.is_dir():
            pattern = "**/*" if recursive else "*"
            for child in path.glob(pattern):
                if child.is_file() and detect(child, opts) is not None:
                    found[child.as_posix()] = child
        else:
            found[path.as_posix()] = path
    return [(found[key], key) for key in sorted(found)]


def _numeric_items(record: Record) -> Iterable[tuple[str, float]]:
    """Scalar metric values that take part in corpus aggregation."""
    m = record.metrics
    for group in ("loc", "halstead", "gamma", "theta"):
        for key, value in m.get(group, {}).items():
            yield f"{group}.{key}", value
    if "cfg" in m:
        for key in ("nodes", "edges", "cyclomatic"):
            if m["cfg"][key] is not None:
                yield f"cfg.{key}", m["cfg"][key]
    if "information_flow" in m:
        yield "information_flow.if_value", sum(f["if_value"] for f in m["information_flow"])
    if "delta" in m:
        yield "delta.delta1", m["delta"]["delta1"]
        yield "delta.delta3", m["delta"]["delta3"]


def combine(acc: dict[str, Any], record: Record) -> dict[str, Any]:
    """One step of the corpus fold; the accumulator maps key -> [sum, count]."""
    out = {k: list(v) for k, v in acc.items()}
    if record.errors:
        return out
    for key, value in _numeric_items(record):
        total = out.setdefault(key, [0, 0])
        total[0] += value
        total[1] += 1
    return out


def aggregate(records: list[Record]) -> dict[str, Any]:
    acc: dict[str, Any] = {}
    for record in records:
        acc = combine(acc, record)
    return {
        "files": len(records),
        "analyzed": sum(1 for r in records if not r.errors),
        "failed": sum(1 for r in records if r.errors),
        "sum": {k: v[0] for k, v in sorted(acc.items())},
        "mean": {k: v[0] / v[1] for k, v in sorted(acc.items())},
    }


def build_report(records: list[Record], opts: Options) -> dict[str, Any]:
    return {
        "tool": "qmetrics",
        "version": __version__,
        "schema_version": SCHEMA_VERSION,
        "config": {"gate_set": sorted(opts.gate_set), "cfg_mode": opts.cfg_mode},
        "records": [r.to_json() for r in records],
        "aggregate": aggregate(records),
    }


def render_json(report: dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


_LABELS = [
    ("loc", "phi1", "φ1", "lines of code"),
    ("loc", "phi2", "φ2", "gate-operation lines"),
    ("loc", "phi3", "φ3", "measurement lines"),
    ("loc", "phi4", "φ4", "quantum lines"),
    ("loc", "phi5", "φ5", "qubits"),
    ("loc", "phi6", "φ6", "unique gates"),
    ("halstead", "eta1", "η1", "unique operators"),
    ("halstead", "eta2", "η2", "unique operands"),
    ("halstead", "m1", "M1", "operator occurrences"),
    ("halstead", "m2", "M2", "operand occurrences"),
    ("halstead", "length_m", "M", "length"),
    ("halstead", "vocabulary_eta", "η", "vocabulary"),
    ("halstead", "estimated_length_me", "M_E", "estimated length"),
    ("halstead", "volume_vq", "V_Q", "volume"),
    ("halstead", "difficulty_dq", "D_Q", "difficulty"),
    ("halstead", "effort_eq", "E_Q", "effort"),
    ("cfg", "nodes", "N_Q", "QCFG nodes"),
    ("cfg", "edges", "E", "QCFG edges"),
    ("cfg", "cyclomatic", "V(G_Q)", "cyclomatic complexity"),
    ("gamma", "gamma1", "γ1", "architecture spec lines"),
    ("gamma", "gamma2", "γ2", "components and connectors"),
    ("gamma", "gamma3", "γ3", "quantum components"),
    ("gamma", "gamma4", "γ4", "quantum-quantum connectors"),
    ("gamma", "gamma5", "γ5", "quantum-classical connectors"),
    ("gamma", "gamma6", "γ6", "quantum architecture size"),
    ("delta", "delta1", "δ1", "unique design patterns"),
    ("delta", "delta2", "δ2", "realizations per pattern"),
    ("delta", "delta3", "δ3", "unique quantum patterns"),
    ("delta", "delta4", "δ4", "realizations per quantum pattern"),
    ("theta", "theta1", "θ1", "quantum classes"),
    ("theta", "theta2", "θ2", "quantum elements"),
    ("theta", "theta3", "θ3", "quantum interfaces"),
    ("theta", "theta4", "θ4", "quantum attributes"),
    ("theta", "theta5", "θ5", "quantum methods"),
]


def _fmt(value: Any) -> str:
    if value is None:
        return "undefined"
    if isinstance(value, float):
        return f"{value:.4f}" if math.isfinite(value) else str(value)
    if isinstance(value, dict):
        return ", ".join(f"{k}={v}" for k, v in sorted(value.items())) or "{}"
    return str(value)


def render_text(report: dict[str, Any]) -> str:
    out = [f"qmetrics {report['version']}  (cfg mode: {report['config']['cfg_mode']})"]
    for rec in report["records"]:
        source = rec.get("dialect") or rec.get("format")
        out.append("")
        out.append(f"{rec['path']}  [{source}]")
        for err in rec["errors"]:
            out.append(f"  error: {err}")
        for group, key, symbol, label in _LABELS:
            if group in rec:
                out.append(f"  {symbol:<7} {label:<34} {_fmt(rec[group][key])}")
        for flow in rec.get("information_flow", []):
            out.append(
                f"  IF      {'information flow (' + flow['module'] + ')':<34} {flow['if_value']}"
                f"  (length={flow['length']}, fan_in={flow['fan_in']}, fan_out={flow['fan_out']})"
            )
    agg = report["aggregate"]
    out.append("")
    out.append(f"files: {agg['files']}  analyzed: {agg['analyzed']}  failed: {agg['failed']}")
    return "\n".join(out) + "\n"


def render_dot(paths: list[tuple[Path, str]], opts: Options) -> tuple[str, list[str]]:
    chunks, errors = [], []
    for path, shown in paths:
        detected = detect(path, opts)
        if detected is None or detected[0] != "code":
            continue
        try:
            assert isinstance(detected[1], Dialect)
            program = load_program(path.read_text(encoding="utf-8"), detected[1], opts.gate_set)
        except (QMetricsError, OSError, UnicodeDecodeError) as exc:
            errors.append(_error_line(shown, exc))
            continue
        for mod in program.modules:
            graph = build_qcfg(program, mod, classical=opts.classical_cfg)
            chunks.append(to_dot(graph, program, f"{shown}:{mod.name}"))
    return "".join(chunks), errors
