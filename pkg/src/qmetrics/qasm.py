"""OpenQASM 2.0 lexer and recursive-descent parser producing a :class:`QProgram`.

The grammar accepted here is written out in ``docs/grammar.md``.
"""

from __future__ import annotations

import re
from dataclasses import replace
from typing import Iterable, Optional

from .errors import DuplicateRegister, LexError, ParseError, UnknownGate
from .model import (
    DEFAULT_GATE_SET,
    Dialect,
    QProgram,
    QStatement,
    RegisterDecl,
    RegisterKind,
    StatementSyntax,
    Token,
    build_modules,
    classify_statement,
    counted_line_numbers,
)

KEYWORDS = frozenset(
    {"OPENQASM", "include", "qreg", "creg", "gate", "opaque", "measure",
     "reset", "barrier", "if", "pi", "U", "CX"}
)

# qelib1.inc; always preloaded so that analysis never touches the filesystem
QELIB_GATES = frozenset(
    "u3 u2 u1 cx id u0 u p x y z h s sdg t tdg rx ry rz sx sxdg cz cy swap ch "
    "ccx cswap crx cry crz cu1 cp cu3 csx cu rxx rzz rccx rc3x c3x c3sqrtx c4x".split()
)

UNARY_FUNCTIONS = frozenset({"sin", "cos", "tan", "exp", "ln", "sqrt"})

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<newline>\n)
  | (?P<comment>//[^\n]*)
  | (?P<real>(?:[0-9]+\.[0-9]*|\.[0-9]+)(?:[eE][-+]?[0-9]+)?|[0-9]+[eE][-+]?[0-9]+)
  | (?P<integer>[0-9]+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"[^"\n]*")
  | (?P<arrow>->)
  | (?P<symbol>==|[\[\](){};,+\-*/^])
    """,
    re.VERBOSE,
)


def lex_qasm(source: str) -> list[Token]:
    tokens: list[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise LexError(line, pos - line_start, source[pos])
        kind, text = m.lastgroup, m.group()
        if kind == "newline":
            line += 1
            line_start = m.end()
        elif kind == "name":
            tokens.append(Token("keyword" if text in KEYWORDS else "identifier", text, line, pos - line_start))
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, text, line, pos - line_start))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token], gate_set: frozenset[str]) -> None:
        self.tokens = list(tokens)
        self.pos = 0
        self.gate_set = gate_set
        self.statements: list[QStatement] = []
        self.registers: dict[str, RegisterDecl] = {}
        self.known_gates: set[str] = set(QELIB_GATES) | {"U", "CX"}
        self.user_gates: set[str] = set()
        self.modules: list[tuple[str, list[int]]] = []

    # -- token helpers -------------------------------------------------

    def peek(self, offset: int = 0) -> Optional[Token]:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.text == text and tok.kind != "string"

    def fail(self, expected: str) -> ParseError:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else None
            line = last.line if last else 1
            col = last.column + len(last.text) if last else 0
            return ParseError(line, col, expected, "end of input")
        return ParseError(tok.line, tok.column, expected, tok.text)

    def advance(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise self.fail("a token")
        self.pos += 1
        return tok

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.fail(repr(text))
        return self.advance()

    def expect_kind(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok is None or tok.kind != kind:
            raise self.fail(what)
        return self.advance()

    def tag(self, tag: str) -> None:
        """Tag the identifier just consumed."""
        i = self.pos - 1
        self.tokens[i] = replace(self.tokens[i], tag=tag)

    # -- grammar -------------------------------------------------------

    def program(self) -> None:
        if self.at("OPENQASM"):
            self.advance()
            tok = self.peek()
            if tok is None or tok.kind not in ("real", "integer"):
                raise self.fail("version number")
            self.advance()
            self.expect(";")
        while self.peek() is not None:
            self.statement()

    def statement(self) -> None:
        tok = self.peek()
        assert tok is not None
        text = tok.text
        if text == "include" and tok.kind == "keyword":
            self.advance()
            self.expect_kind("string", "file name string")
            self.expect(";")
        elif text in ("qreg", "creg") and tok.kind == "keyword":
            self.register_decl()
        elif text == "gate" and tok.kind == "keyword":
            self.gate_decl()
        elif text == "opaque" and tok.kind == "keyword":
            self.opaque_decl()
        elif text == "if" and tok.kind == "keyword":
            self.if_statement()
        else:
            self.quantum_op(parent=None, formals=None)

    def register_decl(self) -> None:
        kw = self.advance()
        name = self.expect_kind("identifier", "register name")
        self.expect("[")
        width = int(self.expect_kind("integer", "register width").text)
        self.expect("]")
        self.expect(";")
        if name.text in self.registers:
            raise DuplicateRegister(name.text, name.line)
        if width < 1:
            raise ParseError(name.line, name.column, "register width >= 1", str(width))
        kind = RegisterKind.QUANTUM if kw.text == "qreg" else RegisterKind.CLASSICAL
        self.registers[name.text] = RegisterDecl(name.text, kind, width)
        self.emit(StatementSyntax(kw.line, kw.column, "declaration", name=kw.text))

    def id_list(self) -> list[str]:
        names = [self.expect_kind("identifier", "identifier").text]
        while self.at(","):
            self.advance()
            names.append(self.expect_kind("identifier", "identifier").text)
        return names

    def gate_signature(self) -> tuple[str, list[str], list[str]]:
        self.advance()  # gate / opaque
        name = self.expect_kind("identifier", "gate name").text
        params: list[str] = []
        if self.at("("):
            self.advance()
            if not self.at(")"):
                params = self.id_list()
            self.expect(")")
        qargs = self.id_list()
        return name, params, qargs

    def gate_decl(self) -> None:
        name, params, qargs = self.gate_signature()
        self.expect("{")
        # gates may recurse into previously declared gates only
        body_start = len(self.statements)
        formals = set(params) | set(qargs)
        while not self.at("}"):
            if self.peek() is None:
                raise self.fail("'}'")
            if self.at("barrier"):
                self.barrier(parent=None, formals=formals)
            else:
                self.gate_application(parent=None, formals=formals)
        self.expect("}")
        self.known_gates.add(name)
        self.user_gates.add(name)
        self.modules.append((name, list(range(body_start, len(self.statements)))))

    def opaque_decl(self) -> None:
        name, _, _ = self.gate_signature()
        self.expect(";")
        self.known_gates.add(name)

    def if_statement(self) -> None:
        kw = self.advance()
        self.expect("(")
        creg = self.expect_kind("identifier", "classical register")
        self.expect("==")
        self.expect_kind("integer", "integer")
        self.expect(")")
        header = self.emit(
            StatementSyntax(kw.line, kw.column, "branch", name="if", condition_registers=(creg.text,))
        )
        self.quantum_op(parent=header, formals=None)

    def quantum_op(self, parent: Optional[int], formals: Optional[set[str]]) -> None:
        tok = self.peek()
        assert tok is not None
        if tok.kind == "keyword" and tok.text == "measure":
            self.advance()
            src = self.argument(formals)
            self.expect_kind("arrow", "'->'")
            dst = self.argument(formals)
            self.expect(";")
            self.emit(StatementSyntax(tok.line, tok.column, "measure", name="measure", args=(src, dst)), parent)
        elif tok.kind == "keyword" and tok.text == "reset":
            self.advance()
            arg = self.argument(formals)
            self.expect(";")
            self.emit(StatementSyntax(tok.line, tok.column, "other", name="reset", written=(arg,)), parent)
        elif tok.kind == "keyword" and tok.text == "barrier":
            self.barrier(parent, formals)
        else:
            self.gate_application(parent, formals)

    def barrier(self, parent: Optional[int], formals: Optional[set[str]]) -> None:
        tok = self.advance()
        self.arg_list(formals)
        self.expect(";")
        self.emit(StatementSyntax(tok.line, tok.column, "other", name="barrier"), parent)

    def gate_application(self, parent: Optional[int], formals: Optional[set[str]]) -> None:
        tok = self.peek()
        if tok is None or not (tok.kind == "identifier" or tok.text in ("U", "CX")):
            raise self.fail("statement")
        self.advance()
        if tok.kind == "identifier":
            self.tag("gate")
        name = tok.text
        if name not in self.known_gates:
            raise UnknownGate(name, tok.line)
        if self.at("("):
            self.advance()
            if not self.at(")"):
                self.expression_list()
            self.expect(")")
        args = self.arg_list(formals)
        self.expect(";")
        callee = name if name in self.user_gates else None
        self.emit(StatementSyntax(tok.line, tok.column, "gate", name=name, args=tuple(args), callee=callee), parent)

    def arg_list(self, formals: Optional[set[str]]) -> list[str]:
        args = [self.argument(formals)]
        while self.at(","):
            self.advance()
            args.append(self.argument(formals))
        return args

    def argument(self, formals: Optional[set[str]]) -> str:
        name = self.expect_kind("identifier", "register or qubit")
        if formals is not None:
            # gate bodies address formal qubits only, never register elements
            if name.text not in formals:
                raise ParseError(name.line, name.column, "formal qubit argument", name.text)
            return name.text
        if name.text not in self.registers:
            raise ParseError(name.line, name.column, "declared register", name.text)
        if self.at("["):
            self.advance()
            self.expect_kind("integer", "index")
            self.expect("]")
        return name.text

    def expression_list(self) -> None:
        self.expression()
        while self.at(","):
            self.advance()
            self.expression()

    # exp := term (('+'|'-') term)* ; term := factor (('*'|'/') factor)* ;
    # factor := unary ('^' factor)? ; unary := '-' unary | atom
    def expression(self) -> None:
        self.term()
        while self.at("+") or self.at("-"):
            self.advance()
            self.term()

    def term(self) -> None:
        self.factor()
        while self.at("*") or self.at("/"):
            self.advance()
            self.factor()

    def factor(self) -> None:
        self.unary()
        if self.at("^"):
            self.advance()
            self.factor()

    def unary(self) -> None:
        if self.at("-"):
            self.advance()
            self.unary()
        else:
            self.atom()

    def atom(self) -> None:
        tok = self.peek()
        if tok is None:
            raise self.fail("expression")
        if tok.kind in ("real", "integer") or tok.text == "pi":
            self.advance()
        elif tok.kind == "identifier":
            self.advance()
            if tok.text in UNARY_FUNCTIONS and self.at("("):
                self.tag("call")
                self.advance()
                self.expression()
                self.expect(")")
        elif tok.text == "(":
            self.advance()
            self.expression()
            self.expect(")")
        else:
            raise self.fail("expression")

    def emit(self, syntax: StatementSyntax, parent: Optional[int] = None) -> int:
        self.statements.append(classify_statement(syntax, Dialect.OPENQASM2, self.gate_set, parent))
        return len(self.statements) - 1


def parse_qasm(
    tokens: list[Token],
    *,
    source: Optional[str] = None,
    gate_set: Iterable[str] = DEFAULT_GATE_SET,
) -> QProgram:
    """Parse a token stream from :func:`lex_qasm`.

    ``source`` is only used to count physical lines; without it the count is
    taken from the lines that carry tokens.
    """
    parser = _Parser(tokens, frozenset(gate_set))
    parser.program()
    if source is not None:
        counted = counted_line_numbers(source, "//")
    else:
        counted = frozenset(tok.line for tok in tokens)
    return QProgram(
        statements=tuple(parser.statements),
        registers=tuple(parser.registers.values()),
        modules=build_modules(parser.statements, parser.modules),
        source_dialect=Dialect.OPENQASM2,
        source_lines_total=len(counted),
        tokens=tuple(parser.tokens),
        counted_lines=counted,
    )


def load_qasm(source: str, gate_set: Iterable[str] = DEFAULT_GATE_SET) -> QProgram:
    return parse_qasm(lex_qasm(source), source=source, gate_set=gate_set)
