"""Static size and structure metrics for quantum programs and designs."""

__version__ = "0.1.0"

from .cfg import Qcfg, build_qcfg, cyclomatic  # noqa: E402
from .code_metrics import (  # noqa: E402
    compute_halstead,
    compute_information_flow,
    compute_loc_metrics,
    tokenize_halstead,
)
from .design import compute_delta, compute_gamma, compute_theta, parse_design_document  # noqa: E402
from .model import Dialect, QModule, QProgram, QStatement, RegisterDecl, StatementKind, classify_statement  # noqa: E402
from .qasm import lex_qasm, load_qasm, parse_qasm  # noqa: E402
from .qiskit_dialect import parse_qiskit_dialect  # noqa: E402

__all__ = [
    "Dialect", "QModule", "QProgram", "QStatement", "Qcfg", "RegisterDecl", "StatementKind",
    "build_qcfg", "classify_statement", "compute_delta", "compute_gamma", "compute_halstead",
    "compute_information_flow", "compute_loc_metrics", "compute_theta", "cyclomatic",
    "lex_qasm", "load_qasm", "parse_design_document", "parse_qasm", "parse_qiskit_dialect",
    "tokenize_halstead",
]
