"""Code-level size metrics: line counts, Halstead measures and information flow."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .model import QProgram, StatementKind, Token


@dataclass(frozen=True)
class LocMetrics:
    phi1: int = 0  # counted lines
    phi2: int = 0  # lines holding a gate application
    phi3: int = 0  # lines holding a measurement
    phi4: int = 0  # phi2 + phi3
    phi5: int = 0  # declared qubits
    phi6: int = 0  # distinct gate names


@dataclass(frozen=True)
class HalsteadMetrics:
    eta1: int = 0
    eta2: int = 0
    m1: int = 0
    m2: int = 0
    length_m: int = 0
    vocabulary_eta: int = 0
    estimated_length_me: float = 0.0
    volume_vq: float = 0.0
    difficulty_dq: float = 0.0
    effort_eq: float = 0.0
    degenerate: bool = False


@dataclass(frozen=True)
class ModuleFlow:
    module: str
    length: int
    fan_in: int
    fan_out: int
    if_value: int


@dataclass(frozen=True)
class InfoFlowMetrics:
    modules: tuple[ModuleFlow, ...]

    def __getitem__(self, name: str) -> ModuleFlow:
        for flow in self.modules:
            if flow.module == name:
                return flow
        raise KeyError(name)


def compute_loc_metrics(p: QProgram) -> LocMetrics:
    gate_lines = {s.line for s in p.statements if s.kind is StatementKind.GATE_APPLICATION}
    measure_lines = {s.line for s in p.statements if s.kind is StatementKind.MEASUREMENT}
    qubits = sum(r.width for r in p.registers if r.kind.value == "quantum")
    gates = {s.gate_name for s in p.statements if s.kind is StatementKind.GATE_APPLICATION}
    return LocMetrics(
        phi1=p.source_lines_total,
        phi2=len(gate_lines),
        phi3=len(measure_lines),
        phi4=len(gate_lines) + len(measure_lines),
        phi5=qubits,
        phi6=len(gates),
    )


OPERATOR_SYMBOLS = frozenset({"+", "-", "*", "/", "^", "**", "%", "//", "==", "!=", "<", ">", "<=", ">=", "=", "->"})
LITERAL_KEYWORDS = frozenset({"pi", "True", "False", "None"})


def classify_token(tok: Token) -> str | None:
    """Return ``"operator"``, ``"operand"`` or None for punctuation."""
    if tok.kind == "keyword":
        return "operand" if tok.text in LITERAL_KEYWORDS else "operator"
    if tok.kind == "identifier":
        return "operator" if tok.tag in ("gate", "call") else "operand"
    if tok.kind in ("integer", "real", "string"):
        return "operand"
    if tok.kind == "arrow" or tok.text in OPERATOR_SYMBOLS:
        return "operator"
    return None


def tokenize_halstead(p: QProgram) -> tuple[Counter[str], Counter[str]]:
    operators: Counter[str] = Counter()
    operands: Counter[str] = Counter()
    for tok in p.tokens:
        role = classify_token(tok)
        if role == "operator":
            operators[tok.text] += 1
        elif role == "operand":
            operands[tok.text] += 1
    return operators, operands


def _n_log2_n(n: int) -> float:
    return n * math.log2(n) if n > 0 else 0.0


def halstead_from_counts(eta1: int, eta2: int, m1: int, m2: int) -> HalsteadMetrics:
    length = m1 + m2
    vocabulary = eta1 + eta2
    volume = length * math.log2(vocabulary) if vocabulary > 0 else 0.0
    difficulty = (eta1 / 2) * (m2 / eta2) if eta2 > 0 else 0.0
    return HalsteadMetrics(
        eta1=eta1,
        eta2=eta2,
        m1=m1,
        m2=m2,
        length_m=length,
        vocabulary_eta=vocabulary,
        estimated_length_me=_n_log2_n(eta1) + _n_log2_n(eta2),
        volume_vq=volume,
        difficulty_dq=difficulty,
        effort_eq=difficulty * volume,
        degenerate=eta1 == 0 or eta2 == 0,
    )


def compute_halstead(p: QProgram) -> HalsteadMetrics:
    operators, operands = tokenize_halstead(p)
    return halstead_from_counts(len(operators), len(operands), sum(operators.values()), sum(operands.values()))


def compute_information_flow(p: QProgram) -> InfoFlowMetrics:
    owner = {}
    for mod in p.modules:
        for index in mod.body:
            owner[index] = mod.name

    calls_in: Counter[str] = Counter()
    calls_out: Counter[str] = Counter()
    for index, stmt in enumerate(p.statements):
        if stmt.callee and stmt.callee != owner[index]:
            calls_in[stmt.callee] += 1
            calls_out[owner[index]] += 1

    flows = []
    for mod in p.modules:
        reads = set().union(*(p.statements[i].registers_read for i in mod.body))
        writes = set().union(*(p.statements[i].registers_written for i in mod.body))
        fan_in = calls_in[mod.name] + len(reads)
        fan_out = calls_out[mod.name] + len(writes)
        flows.append(ModuleFlow(
            module=mod.name,
            length=mod.length_loc,
            fan_in=fan_in,
            fan_out=fan_out,
            if_value=mod.length_loc * (fan_in * fan_out) ** 2,
        ))
    return InfoFlowMetrics(tuple(flows))


__all__ = [
    "HalsteadMetrics",
    "InfoFlowMetrics",
    "LocMetrics",
    "ModuleFlow",
    "classify_token",
    "compute_halstead",
    "compute_information_flow",
    "compute_loc_metrics",
    "halstead_from_counts",
    "tokenize_halstead",
]
