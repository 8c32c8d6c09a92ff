"""Exceptions raised by the frontends, graph builder and document parsers."""

from __future__ import annotations


class QMetricsError(Exception):
    """Base class; ``line`` is 0 when no source position applies."""

    line: int = 0

    def location(self) -> str:
        return str(self.line)


class LexError(QMetricsError):
    def __init__(self, line: int, column: int, char: str) -> None:
        self.line, self.column, self.char = line, column, char
        super().__init__(f"line {line}, column {column}: unexpected character {char!r}")


class ParseError(QMetricsError):
    def __init__(self, line: int, column: int, expected: str, found: str) -> None:
        self.line, self.column = line, column
        self.expected, self.found = expected, found
        super().__init__(f"line {line}, column {column}: expected {expected}, found {found!r}")


class DuplicateRegister(QMetricsError):
    def __init__(self, name: str, line: int = 0) -> None:
        self.name, self.line = name, line
        super().__init__(f"line {line}: register {name!r} declared twice")


class UnknownGate(QMetricsError):
    def __init__(self, name: str, line: int = 0) -> None:
        self.name, self.line = name, line
        super().__init__(f"line {line}: gate {name!r} applied before declaration")


class UnsupportedSyntax(QMetricsError):
    def __init__(self, line: int, construct: str) -> None:
        self.line, self.construct = line, construct
        super().__init__(f"line {line}: {construct} is outside the supported dialect")


class DialectIndentationError(QMetricsError):
    def __init__(self, line: int, message: str = "inconsistent indentation") -> None:
        self.line = line
        super().__init__(f"line {line}: {message}")


class EmptyBody(QMetricsError):
    def __init__(self, line: int) -> None:
        self.line = line
        super().__init__(f"line {line}: block header has no body statement")


class EmptyGraph(QMetricsError):
    def __init__(self) -> None:
        super().__init__("cyclomatic complexity is undefined for a graph without nodes")


class SchemaError(QMetricsError):
    def __init__(self, path: str, location: str, message: str) -> None:
        self.path, self.where = path, location
        super().__init__(f"{path}: {location}: {message}")

    def location(self) -> str:
        return self.where


class UnknownComponent(SchemaError):
    def __init__(self, path: str, location: str, name: str) -> None:
        self.name = name
        super().__init__(path, location, f"connector endpoint {name!r} is not a declared component")
