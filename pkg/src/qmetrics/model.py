"""Dialect-independent program model shared by both frontends and all metric engines."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional


class Dialect(str, enum.Enum):
    OPENQASM2 = "openqasm2"
    QISKIT = "qiskit_dialect"


class StatementKind(str, enum.Enum):
    CLASSICAL = "classical"
    GATE_APPLICATION = "gate_application"
    MEASUREMENT = "measurement"
    LOOP_HEADER = "loop_header"
    BRANCH_HEADER = "branch_header"


class RegisterKind(str, enum.Enum):
    QUANTUM = "quantum"
    CLASSICAL = "classical"


DEFAULT_GATE_SET: frozenset[str] = frozenset(
    "x y z h s t sdg tdg rx ry rz p u u1 u2 u3 "
    "cx cy cz cp crx cry crz ch ccx swap cswap".split()
)

MEASURE_NAMES = frozenset({"measure", "measure_all"})

# number of leading qubit arguments that act as controls
CONTROLLED_GATES: dict[str, int] = {
    "cx": 1, "cy": 1, "cz": 1, "cp": 1, "crx": 1, "cry": 1, "crz": 1, "ch": 1,
    "cu": 1, "cu1": 1, "cu3": 1, "csx": 1, "cswap": 1, "ccx": 2,
}


@dataclass(frozen=True)
class Token:
    """A lexical token kept on the program for Halstead counting.

    ``kind`` is one of keyword, identifier, integer, real, string, symbol, arrow.
    ``tag`` is set by the frontend on identifiers: ``"gate"`` at a gate
    application site, ``"call"`` at a function or method call site, otherwise None.
    """

    kind: str
    text: str
    line: int
    column: int
    tag: Optional[str] = None


@dataclass(frozen=True)
class RegisterDecl:
    name: str
    kind: RegisterKind
    width: int

    def __post_init__(self) -> None:
        if self.width < 1:
            raise ValueError(f"register {self.name!r} must have width >= 1")


@dataclass(frozen=True)
class StatementSyntax:
    """What a frontend knows about one statement before classification.

    ``form`` is one of: declaration, gate, measure, method_call, call, loop,
    branch, other.  ``args`` holds the register references of the statement's
    qubit/bit arguments in argument order; ``condition_registers`` those read by
    a branch condition.
    """

    line: int
    column: int
    form: str
    name: Optional[str] = None
    receiver_is_circuit: bool = False
    args: tuple[str, ...] = ()
    condition_registers: tuple[str, ...] = ()
    callee: Optional[str] = None
    written: tuple[str, ...] = ()


@dataclass(frozen=True)
class QStatement:
    line: int
    column: int
    kind: StatementKind
    gate_name: Optional[str] = None
    registers_read: frozenset[str] = frozenset()
    registers_written: frozenset[str] = frozenset()
    callee: Optional[str] = None
    # index of the loop/branch header whose body holds this statement
    parent: Optional[int] = None

    @property
    def span(self) -> tuple[int, int]:
        return (self.line, self.column)

    @property
    def is_header(self) -> bool:
        return self.kind in (StatementKind.LOOP_HEADER, StatementKind.BRANCH_HEADER)


@dataclass(frozen=True)
class QModule:
    name: str
    body: tuple[int, ...]
    length_loc: int


@dataclass(frozen=True)
class QProgram:
    statements: tuple[QStatement, ...]
    registers: tuple[RegisterDecl, ...]
    modules: tuple[QModule, ...]
    source_dialect: Dialect
    source_lines_total: int
    tokens: tuple[Token, ...] = ()
    counted_lines: frozenset[int] = field(default=frozenset())

    def module(self, name: str) -> QModule:
        for mod in self.modules:
            if mod.name == name:
                return mod
        raise KeyError(name)

    @property
    def main(self) -> QModule:
        return self.module("main")

    def module_of(self, index: int) -> QModule:
        for mod in self.modules:
            if index in mod.body:
                return mod
        raise KeyError(index)


def classify_statement(
    syntax: StatementSyntax,
    dialect: Dialect,
    gate_set: Iterable[str] = DEFAULT_GATE_SET,
    parent: Optional[int] = None,
) -> QStatement:
    """Assign a statement kind and register read/write sets.

    Classification is total: anything not recognised as a gate application,
    measurement or block header is classical.
    """
    gates = gate_set if isinstance(gate_set, frozenset) else frozenset(gate_set)
    name = syntax.name.lower() if syntax.name else None
    base = dict(line=syntax.line, column=syntax.column, callee=syntax.callee, parent=parent)

    if syntax.form == "loop":
        return QStatement(kind=StatementKind.LOOP_HEADER, **base)
    if syntax.form == "branch":
        return QStatement(
            kind=StatementKind.BRANCH_HEADER,
            registers_read=frozenset(syntax.condition_registers),
            **base,
        )

    if dialect is Dialect.OPENQASM2:
        is_gate = syntax.form == "gate"
        is_measure = syntax.form == "measure"
    else:
        on_circuit = syntax.form == "method_call" and syntax.receiver_is_circuit
        is_measure = on_circuit and name in MEASURE_NAMES
        is_gate = on_circuit and not is_measure and name in gates

    if is_measure:
        # last argument is the classical destination, the rest are measured qubits
        return QStatement(
            kind=StatementKind.MEASUREMENT,
            registers_read=frozenset(syntax.args[:-1]),
            registers_written=frozenset(syntax.args[-1:]),
            **base,
        )
    if is_gate:
        assert name, "gate application without a name"
        controls = syntax.args[: CONTROLLED_GATES.get(name, 0)]
        return QStatement(
            kind=StatementKind.GATE_APPLICATION,
            gate_name=name,
            registers_read=frozenset(controls),
            registers_written=frozenset(syntax.args),
            **base,
        )
    return QStatement(
        kind=StatementKind.CLASSICAL,
        registers_written=frozenset(syntax.written),
        **base,
    )


def counted_line_numbers(source: str, comment: str) -> frozenset[int]:
    """1-based numbers of non-blank lines that do not start with a comment."""
    lines = set()
    for lineno, text in enumerate(source.splitlines(), start=1):
        stripped = text.strip()
        if stripped and not stripped.startswith(comment):
            lines.add(lineno)
    return frozenset(lines)


def build_modules(
    statements: list[QStatement], user_modules: list[tuple[str, list[int]]]
) -> tuple[QModule, ...]:
    """Synthesise ``main`` from every statement not owned by a user module."""
    owned = {i for _, body in user_modules for i in body}
    main_body = [i for i in range(len(statements)) if i not in owned]

    def make(name: str, body: list[int]) -> QModule:
        lines = {statements[i].line for i in body}
        return QModule(name=name, body=tuple(body), length_loc=len(lines))

    return (make("main", main_body),) + tuple(make(n, b) for n, b in user_modules)
