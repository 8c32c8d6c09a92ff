"""Frontend for a restricted Qiskit-Python dialect.

Only straight-line Python is accepted: assignments to a single name,
expression statements, ``for name in range(...)``, ``if expr:`` without
``else``, top-level ``def`` and ``print(...)``.  Anything else raises
:class:`UnsupportedSyntax`.  The source is never executed.
"""

from __future__ import annotations

import ast
import enum
import io
import keyword
import tokenize
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import DialectIndentationError, DuplicateRegister, ParseError, UnsupportedSyntax
from .model import (
    DEFAULT_GATE_SET,
    MEASURE_NAMES,
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


class StmtForm(str, enum.Enum):
    ASSIGNMENT = "assignment"
    EXPRESSION_CALL = "expression_call"
    FOR_RANGE = "for_range"
    IF_BLOCK = "if_block"
    FUNCDEF = "funcdef"
    PRINT = "print"


@dataclass(frozen=True)
class PyDialectStmt:
    form: StmtForm
    indent: int
    node: ast.stmt = field(compare=False, repr=False)
    line: int = 0


_CONSTRUCT_NAMES = {
    "While": "while loop", "ClassDef": "class definition", "Try": "try statement",
    "With": "with statement", "Import": "import", "ImportFrom": "import",
    "Return": "return statement", "AugAssign": "augmented assignment",
    "AnnAssign": "annotated assignment", "Delete": "del statement", "Raise": "raise statement",
    "Global": "global statement", "Nonlocal": "nonlocal statement", "Assert": "assert statement",
    "Pass": "pass statement", "Break": "break statement", "Continue": "continue statement",
    "AsyncFunctionDef": "async function", "AsyncFor": "async for", "AsyncWith": "async with",
    "ListComp": "comprehension", "SetComp": "comprehension", "DictComp": "comprehension",
    "GeneratorExp": "comprehension", "Lambda": "lambda", "IfExp": "conditional expression",
    "JoinedStr": "f-string", "Starred": "starred expression", "Dict": "dict display",
    "Set": "set display", "Await": "await", "Yield": "yield", "YieldFrom": "yield",
    "NamedExpr": "assignment expression", "Slice": "slice",
}

_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div)
_UNARY = (ast.USub, ast.UAdd, ast.Not)
_COMPARE = (ast.Eq, ast.NotEq, ast.Lt, ast.LtE, ast.Gt, ast.GtE)


def _unsupported(node: ast.AST, what: Optional[str] = None) -> UnsupportedSyntax:
    construct = what or _CONSTRUCT_NAMES.get(type(node).__name__, type(node).__name__)
    return UnsupportedSyntax(getattr(node, "lineno", 0), construct)


def _check_expr(node: ast.expr) -> None:
    if isinstance(node, ast.Name):
        return
    if isinstance(node, ast.Constant):
        if isinstance(node.value, (bytes, complex)) or node.value is Ellipsis:
            raise _unsupported(node, f"{type(node.value).__name__} literal")
        return
    if isinstance(node, ast.Call):
        if not isinstance(node.func, (ast.Name, ast.Attribute)):
            raise _unsupported(node, "call of a computed callee")
        _check_expr(node.func)
        for arg in node.args:
            _check_expr(arg)
        for kw in node.keywords:
            if kw.arg is None:
                raise _unsupported(node, "keyword unpacking")
            _check_expr(kw.value)
        return
    if isinstance(node, ast.Attribute):
        _check_expr(node.value)
        return
    if isinstance(node, ast.Subscript):
        _check_expr(node.value)
        _check_expr(node.slice)
        return
    if isinstance(node, ast.BinOp):
        if not isinstance(node.op, _BINOPS):
            raise _unsupported(node, f"operator {type(node.op).__name__}")
        _check_expr(node.left)
        _check_expr(node.right)
        return
    if isinstance(node, ast.UnaryOp):
        if not isinstance(node.op, _UNARY):
            raise _unsupported(node, f"operator {type(node.op).__name__}")
        _check_expr(node.operand)
        return
    if isinstance(node, ast.Compare):
        if not all(isinstance(op, _COMPARE) for op in node.ops):
            raise _unsupported(node, "membership or identity comparison")
        _check_expr(node.left)
        for comp in node.comparators:
            _check_expr(comp)
        return
    if isinstance(node, ast.BoolOp):
        for value in node.values:
            _check_expr(value)
        return
    if isinstance(node, (ast.List, ast.Tuple)):
        for elt in node.elts:
            _check_expr(elt)
        return
    raise _unsupported(node)


def _call_name(node: ast.expr) -> Optional[str]:
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
        return node.func.id
    return None


def _int_literal(node: ast.expr) -> Optional[int]:
    if isinstance(node, ast.Constant) and type(node.value) is int:
        return node.value
    return None


def _form_of(stmt: ast.stmt, nested: bool) -> StmtForm:
    if isinstance(stmt, ast.Assign):
        if len(stmt.targets) != 1 or not isinstance(stmt.targets[0], ast.Name):
            raise _unsupported(stmt, "assignment to anything but a single name")
        _check_expr(stmt.value)
        return StmtForm.ASSIGNMENT
    if isinstance(stmt, ast.Expr):
        _check_expr(stmt.value)
        if _call_name(stmt.value) == "print":
            return StmtForm.PRINT
        if not isinstance(stmt.value, ast.Call):
            raise _unsupported(stmt, "expression statement that is not a call")
        return StmtForm.EXPRESSION_CALL
    if isinstance(stmt, ast.For):
        if not isinstance(stmt.target, ast.Name):
            raise _unsupported(stmt, "for loop with a non-name target")
        if _call_name(stmt.iter) != "range" or stmt.iter.keywords or not 1 <= len(stmt.iter.args) <= 3:
            raise _unsupported(stmt, "for loop over anything but range(...)")
        if stmt.orelse:
            raise _unsupported(stmt, "for-else")
        _check_expr(stmt.iter)
        return StmtForm.FOR_RANGE
    if isinstance(stmt, ast.If):
        if stmt.orelse:
            raise _unsupported(stmt.orelse[0] if isinstance(stmt.orelse[0], ast.If) else stmt, "else/elif branch")
        _check_expr(stmt.test)
        return StmtForm.IF_BLOCK
    if isinstance(stmt, ast.FunctionDef):
        if nested:
            raise _unsupported(stmt, "function definition inside a block")
        args = stmt.args
        if (stmt.decorator_list or stmt.returns or args.vararg or args.kwarg or args.kwonlyargs
                or args.posonlyargs or args.defaults or any(a.annotation for a in args.args)):
            raise _unsupported(stmt, "function signature beyond plain positional parameters")
        return StmtForm.FUNCDEF
    raise _unsupported(stmt)


def _check_indentation(source: str, tree: ast.Module) -> None:
    """Statement indents must be multiples of the first indent seen (continuation lines are free)."""
    starts = {n.lineno for n in ast.walk(tree) if isinstance(n, ast.stmt)}
    unit = 0
    for lineno, text in enumerate(source.splitlines(), start=1):
        if lineno not in starts:
            continue
        stripped = text.lstrip(" \t")
        lead = text[: len(text) - len(stripped)]
        if "\t" in lead:
            raise DialectIndentationError(lineno, "tab in indentation")
        width = len(lead)
        if width and not unit:
            unit = width
        if unit and width % unit:
            raise DialectIndentationError(lineno, f"indent of {width} is not a multiple of {unit}")


class _Builder:
    def __init__(self, tree: ast.Module, gate_set: frozenset[str]) -> None:
        self.gate_set = gate_set
        self.statements: list[QStatement] = []
        self.registers: dict[str, RegisterDecl] = {}
        self.modules: list[tuple[str, list[int]]] = []
        self.params = {s.name: [a.arg for a in s.args.args] for s in tree.body if isinstance(s, ast.FunctionDef)}
        self.functions = set(self.params)
        # circuit name -> (quantum register, classical register) synthesised from integer sizes
        self.circuit_regs: dict[str, tuple[Optional[str], Optional[str]]] = {}
        self.circuits = self._circuit_names(tree)
        self.register_refs = self._register_refs(tree)

    def _circuit_names(self, tree: ast.Module) -> set[str]:
        assigns = [n for n in ast.walk(tree) if isinstance(n, ast.Assign)
                   and len(n.targets) == 1 and isinstance(n.targets[0], ast.Name)]
        circuits = {a.targets[0].id for a in assigns if _call_name(a.value) == "QuantumCircuit"}
        # aliasing: `a = b`, plus binding a circuit argument to a def parameter
        aliases = [(a.targets[0].id, a.value.id) for a in assigns if isinstance(a.value, ast.Name)]
        for node in ast.walk(tree):
            name = _call_name(node) if isinstance(node, ast.expr) else None
            if name in self.params:
                assert isinstance(node, ast.Call)
                for param, arg in zip(self.params[name], node.args):
                    if isinstance(arg, ast.Name):
                        aliases.append((param, arg.id))
        changed = True
        while changed:
            changed = False
            for target, source in aliases:
                if source in circuits and target not in circuits:
                    circuits.add(target)
                    changed = True
        return circuits

    def _register_refs(self, tree: ast.Module) -> set[str]:
        """Names that denote registers.

        Declared registers, subscripted qubit/bit arguments of circuit methods,
        bare-name arguments of ``measure``, and def parameters bound to any of these.
        """
        refs = set()
        for node in ast.walk(tree):
            if isinstance(node, ast.Assign) and _call_name(node.value) in ("QuantumRegister", "ClassicalRegister"):
                refs.add(node.targets[0].id)
            if (isinstance(node, ast.Call) and isinstance(node.func, ast.Attribute)
                    and isinstance(node.func.value, ast.Name) and node.func.value.id in self.circuits):
                is_measure = node.func.attr.lower() == "measure"
                for arg in node.args:
                    if isinstance(arg, ast.Subscript) and isinstance(arg.value, ast.Name):
                        refs.add(arg.value.id)
                    elif is_measure and isinstance(arg, ast.Name):
                        refs.add(arg.id)
        bindings = []
        for node in ast.walk(tree):
            name = _call_name(node) if isinstance(node, ast.expr) else None
            if name in self.params:
                assert isinstance(node, ast.Call)
                bindings += [(p, a.id) for p, a in zip(self.params[name], node.args) if isinstance(a, ast.Name)]
        changed = True
        while changed:
            changed = False
            for param, arg in bindings:
                if arg in refs and param not in refs:
                    refs.add(param)
                    changed = True
        return refs

    def _synth(self, base: str, kind: RegisterKind, width: int, line: int) -> str:
        name, n = base, 1
        while name in self.registers:
            n += 1
            name = f"{base}{n}"
        self.registers[name] = RegisterDecl(name, kind, width)
        return name

    def declare(self, target: str, value: ast.expr, line: int) -> None:
        func = _call_name(value)
        if func in ("QuantumRegister", "ClassicalRegister"):
            assert isinstance(value, ast.Call)
            width = _int_literal(value.args[0]) if value.args else None
            if width is None or width < 1:
                raise _unsupported(value, f"{func} without a positive integer size")
            if target in self.registers:
                raise DuplicateRegister(target, line)
            kind = RegisterKind.QUANTUM if func == "QuantumRegister" else RegisterKind.CLASSICAL
            self.registers[target] = RegisterDecl(target, kind, width)
        elif func == "QuantumCircuit":
            assert isinstance(value, ast.Call)
            sizes = [_int_literal(a) for a in value.args]
            qname = cname = None
            if sizes and all(s is not None for s in sizes):
                if sizes[0]:
                    qname = self._synth("_q", RegisterKind.QUANTUM, sizes[0], line)
                if len(sizes) > 1 and sizes[1]:
                    cname = self._synth("_c", RegisterKind.CLASSICAL, sizes[1], line)
            else:
                # integer qubit indices address the first register of each kind
                named = [self.registers[a.id] for a in value.args
                         if isinstance(a, ast.Name) and a.id in self.registers]
                qname = next((r.name for r in named if r.kind is RegisterKind.QUANTUM), None)
                cname = next((r.name for r in named if r.kind is RegisterKind.CLASSICAL), None)
            self.circuit_regs[target] = (qname, cname)
        elif isinstance(value, ast.Name) and value.id in self.circuit_regs:
            self.circuit_regs[target] = self.circuit_regs[value.id]

    def refs(self, arg: ast.expr, receiver: str, classical: bool) -> list[str]:
        """Register names addressed by one qubit/bit argument."""
        if isinstance(arg, ast.Subscript) and isinstance(arg.value, ast.Name):
            return [arg.value.id]
        if isinstance(arg, ast.Name) and arg.id in self.register_refs:
            return [arg.id]
        if _int_literal(arg) is not None or (
            isinstance(arg, (ast.List, ast.Tuple)) and arg.elts
            and all(_int_literal(e) is not None for e in arg.elts)
        ):
            synthesised = self.circuit_regs.get(receiver, (None, None))[1 if classical else 0]
            return [synthesised] if synthesised else []
        if isinstance(arg, (ast.List, ast.Tuple)):
            return [r for e in arg.elts for r in self.refs(e, receiver, classical)]
        return []

    def call_syntax(self, call: ast.Call, line: int, col: int) -> StatementSyntax:
        func = call.func
        if isinstance(func, ast.Attribute) and isinstance(func.value, ast.Name):
            receiver, method = func.value.id, func.attr
            is_circuit = receiver in self.circuits
            args: list[str] = []
            if is_circuit and method.lower() in MEASURE_NAMES:
                if method.lower() == "measure_all":
                    quantum = [r.name for r in self.registers.values() if r.kind is RegisterKind.QUANTUM]
                    args = sorted(quantum) + ["meas"]
                elif len(call.args) != 2:
                    raise UnsupportedSyntax(line, "measure without exactly two arguments")
                else:
                    dest = self.refs(call.args[1], receiver, True)
                    if not dest:
                        raise UnsupportedSyntax(line, "measurement destination that names no classical register")
                    args = self.refs(call.args[0], receiver, False) + dest
            elif is_circuit:
                for arg in call.args:
                    args.extend(self.refs(arg, receiver, False))
            return StatementSyntax(line, col, "method_call", name=method,
                                   receiver_is_circuit=is_circuit, args=tuple(args))
        name = func.id if isinstance(func, ast.Name) else None
        callee = name if name in self.functions else None
        return StatementSyntax(line, col, "call", name=name, callee=callee)

    def names_in(self, expr: ast.expr) -> tuple[str, ...]:
        found = {n.id for n in ast.walk(expr) if isinstance(n, ast.Name) and n.id in self.register_refs}
        return tuple(sorted(found))

    def emit(self, syntax: StatementSyntax, parent: Optional[int]) -> int:
        self.statements.append(classify_statement(syntax, Dialect.QISKIT, self.gate_set, parent))
        return len(self.statements) - 1

    def block(self, body: list[ast.stmt], parent: Optional[int], nested: bool) -> None:
        for stmt in body:
            self.statement(stmt, parent, nested)

    def statement(self, stmt: ast.stmt, parent: Optional[int], nested: bool) -> None:
        form = _form_of(stmt, nested)
        line, col = stmt.lineno, stmt.col_offset
        if form is StmtForm.ASSIGNMENT:
            assert isinstance(stmt, ast.Assign)
            target = stmt.targets[0]
            assert isinstance(target, ast.Name)
            self.declare(target.id, stmt.value, line)
            if isinstance(stmt.value, ast.Call):
                inner = self.call_syntax(stmt.value, line, col)
                # an assignment is classical even when its right side is a circuit method
                syntax = StatementSyntax(line, col, "declaration", name=inner.name, callee=inner.callee)
            else:
                syntax = StatementSyntax(line, col, "declaration")
            self.emit(syntax, parent)
        elif form in (StmtForm.EXPRESSION_CALL, StmtForm.PRINT):
            assert isinstance(stmt, ast.Expr) and isinstance(stmt.value, ast.Call)
            self.emit(self.call_syntax(stmt.value, line, col), parent)
        elif form is StmtForm.FOR_RANGE:
            assert isinstance(stmt, ast.For)
            header = self.emit(StatementSyntax(line, col, "loop", name="for"), parent)
            self.block(stmt.body, header, nested=True)
        elif form is StmtForm.IF_BLOCK:
            assert isinstance(stmt, ast.If)
            header = self.emit(
                StatementSyntax(line, col, "branch", name="if", condition_registers=self.names_in(stmt.test)),
                parent,
            )
            self.block(stmt.body, header, nested=True)
        else:
            assert isinstance(stmt, ast.FunctionDef)
            # the def line binds the name in the enclosing module; its body is a module of its own
            self.emit(StatementSyntax(line, col, "declaration", name="def"), parent)
            start = len(self.statements)
            self.block(stmt.body, None, nested=True)
            self.modules.append((stmt.name, list(range(start, len(self.statements)))))


def _call_positions(tree: ast.Module, source_lines: list[str]) -> set[tuple[int, int]]:
    """(line, character column) of every identifier that names a callee."""

    def char_col(line: int, byte_col: int) -> int:
        return len(source_lines[line - 1].encode("utf-8")[:byte_col].decode("utf-8"))

    positions = set()
    for node in ast.walk(tree):
        if not isinstance(node, ast.Call):
            continue
        func = node.func
        if isinstance(func, ast.Name):
            positions.add((func.lineno, char_col(func.lineno, func.col_offset)))
        elif isinstance(func, ast.Attribute):
            assert func.end_lineno is not None and func.end_col_offset is not None
            end = char_col(func.end_lineno, func.end_col_offset)
            positions.add((func.end_lineno, end - len(func.attr)))
    return positions


def _lex(source: str, calls: set[tuple[int, int]]) -> list[Token]:
    tokens = []
    skip = {tokenize.COMMENT, tokenize.NL, tokenize.NEWLINE, tokenize.INDENT,
            tokenize.DEDENT, tokenize.ENDMARKER, tokenize.ENCODING}
    for tok in tokenize.generate_tokens(io.StringIO(source).readline):
        if tok.type in skip:
            continue
        line, col = tok.start
        if tok.type == tokenize.NAME:
            if keyword.iskeyword(tok.string):
                tokens.append(Token("keyword", tok.string, line, col))
            else:
                tag = "call" if (line, col) in calls else None
                tokens.append(Token("identifier", tok.string, line, col, tag))
        elif tok.type == tokenize.NUMBER:
            is_int = tok.string.isdigit() or tok.string.lower().startswith(("0x", "0o", "0b"))
            tokens.append(Token("integer" if is_int else "real", tok.string, line, col))
        elif tok.type == tokenize.STRING:
            tokens.append(Token("string", tok.string, line, col))
        else:
            tokens.append(Token("symbol", tok.string, line, col))
    return tokens


def parse_qiskit_dialect(source: str, gate_set: Iterable[str] = DEFAULT_GATE_SET) -> QProgram:
    try:
        tree = ast.parse(source)
    except IndentationError as exc:
        raise DialectIndentationError(exc.lineno or 0, exc.msg) from None
    except SyntaxError as exc:
        raise ParseError(exc.lineno or 0, max((exc.offset or 1) - 1, 0), "dialect statement", exc.msg) from None
    _check_indentation(source, tree)
    lines = source.splitlines()
    _reject_shared_lines(tree)

    builder = _Builder(tree, frozenset(gate_set))
    builder.block(tree.body, None, nested=False)
    counted = counted_line_numbers(source, "#")
    return QProgram(
        statements=tuple(builder.statements),
        registers=tuple(builder.registers.values()),
        modules=build_modules(builder.statements, builder.modules),
        source_dialect=Dialect.QISKIT,
        source_lines_total=len(counted),
        tokens=tuple(_lex(source, _call_positions(tree, lines))),
        counted_lines=counted,
    )


def _reject_shared_lines(tree: ast.Module) -> None:
    """One statement per physical line: rejects ``a = 1; b = 2`` and one-line block bodies."""
    seen: dict[int, ast.stmt] = {}
    for node in ast.walk(tree):
        if isinstance(node, ast.stmt):
            if node.lineno in seen:
                raise UnsupportedSyntax(node.lineno, "several statements on one line")
            seen[node.lineno] = node


def dialect_statements(source: str) -> list[PyDialectStmt]:
    """Flat list of the dialect statements in ``source`` with their indentation."""
    tree = ast.parse(source)
    out: list[PyDialectStmt] = []

    def walk(body: list[ast.stmt], nested: bool) -> None:
        for stmt in body:
            out.append(PyDialectStmt(_form_of(stmt, nested), stmt.col_offset, stmt, stmt.lineno))
            if isinstance(stmt, (ast.For, ast.If, ast.FunctionDef)):
                walk(stmt.body, True)

    walk(tree.body, False)
    return out
