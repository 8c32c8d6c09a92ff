import math
from collections import Counter

import pytest

from qmetrics.code_metrics import (
    HalsteadMetrics,
    LocMetrics,
    classify_token,
    compute_halstead,
    compute_information_flow,
    compute_loc_metrics,
    halstead_from_counts,
    tokenize_halstead,
)
from qmetrics.qasm import lex_qasm, load_qasm
from qmetrics.qiskit_dialect import parse_qiskit_dialect
from tests.oracles import halstead_oracle
from tests.paths import CORPUS, corpus_programs


def test_fig1_loc(fig1_source):
    assert compute_loc_metrics(parse_qiskit_dialect(fig1_source)) == LocMetrics(16, 6, 1, 7, 2, 3)


def test_empty_loc():
    assert compute_loc_metrics(load_qasm("")) == LocMetrics(0, 0, 0, 0, 0, 0)


def test_bell_loc(bell_source):
    assert compute_loc_metrics(load_qasm(bell_source)) == LocMetrics(5, 2, 1, 3, 2, 2)


def test_loc_counts_lines_not_statements():
    prog = load_qasm("qreg q[2];\nh q[0]; h q[1];\nx q[0];\n")
    loc = compute_loc_metrics(prog)
    assert (loc.phi1, loc.phi2, loc.phi6) == (3, 2, 2)


def test_loop_body_measure_counted_once(fig1_source):
    # the measurement inside range(2) is one line
    assert compute_loc_metrics(parse_qiskit_dialect(fig1_source)).phi3 == 1


def test_tokenize_gate_line():
    ops, opnds = tokenize_halstead(load_qasm("qreg q[1];\nh q[0];"))
    line_ops = Counter(t.text for t in load_qasm("qreg q[1];\nh q[0];").tokens
                       if t.line == 2 and classify_token(t) == "operator")
    assert line_ops == Counter({"h": 1})
    assert ops == Counter({"qreg": 1, "h": 1})
    assert opnds == Counter({"q": 2, "1": 1, "0": 1})


def test_tokenize_measure_line():
    tokens = lex_qasm("measure q[0] -> c[0];")
    roles = [(t.text, classify_token(t)) for t in tokens]
    assert [t for t, r in roles if r == "operator"] == ["measure", "->"]
    assert [t for t, r in roles if r == "operand"] == ["q", "0", "c", "0"]


def test_tokenize_empty():
    assert tokenize_halstead(load_qasm("")) == (Counter(), Counter())


def test_qasm_declaration_names_are_operands():
    prog = load_qasm("gate rot(theta) a { U(theta, 0, -theta/2) a; }")
    ops, opnds = tokenize_halstead(prog)
    assert set(ops) == {"gate", "U", "-", "/"}
    assert opnds["rot"] == 1 and opnds["theta"] == 3 and opnds["a"] == 2


def test_qiskit_keywords_and_literals():
    prog = parse_qiskit_dialect("flag = True\nif flag == False:\n    print(None)\n")
    ops, opnds = tokenize_halstead(prog)
    assert ops == Counter({"=": 1, "if": 1, "==": 1, "print": 1})
    assert opnds == Counter({"flag": 2, "True": 1, "False": 1, "None": 1})


def test_single_gate_halstead():
    # the lone statement is `h q[0];`; its declaration is evaluated separately
    h = halstead_from_counts(eta1=1, eta2=2, m1=1, m2=2)
    assert (h.length_m, h.vocabulary_eta) == (3, 3)
    assert h.volume_vq == pytest.approx(4.754887502163468, rel=1e-12)
    # D_Q = (1/2) * (2/2) by hand
    assert h.difficulty_dq == 0.5
    assert h.effort_eq == pytest.approx(0.5 * 3 * math.log2(3), rel=1e-12)
    assert h.estimated_length_me == 2.0


def test_empty_halstead():
    h = compute_halstead(load_qasm(""))
    assert h == HalsteadMetrics(degenerate=True)


def test_gate_only_difficulty_is_zero():
    h = halstead_from_counts(eta1=3, eta2=0, m1=5, m2=0)
    assert h.difficulty_dq == 0.0 and h.effort_eq == 0.0 and h.degenerate


def test_bell_halstead(bell_source):
    # counts from tests/oracles/halstead_oracle.py on corpus/qasm/bell.qasm
    h = compute_halstead(load_qasm(bell_source))
    assert (h.eta1, h.eta2, h.m1, h.m2) == (6, 5, 6, 12)
    assert h.length_m == 18 and h.vocabulary_eta == 11
    assert h.volume_vq == pytest.approx(18 * math.log2(11), rel=1e-12)
    assert h.difficulty_dq == pytest.approx(7.2, rel=1e-12)
    assert h.estimated_length_me == pytest.approx(6 * math.log2(6) + 5 * math.log2(5), rel=1e-12)
    assert h.effort_eq == h.difficulty_dq * h.volume_vq


def test_fig1_halstead(fig1_source):
    # counts from tests/oracles/halstead_oracle.py on corpus/qiskit/fig1.py
    h = compute_halstead(parse_qiskit_dialect(fig1_source))
    assert (h.eta1, h.eta2, h.m1, h.m2) == (17, 15, 26, 47)
    assert h.volume_vq == pytest.approx(365.0, rel=1e-12)


def test_fig1_information_flow(fig1_source):
    flow = compute_information_flow(parse_qiskit_dialect(fig1_source))
    assert [f.module for f in flow.modules] == ["main"]
    main = flow["main"]
    assert (main.length, main.fan_in, main.fan_out, main.if_value) == (16, 1, 2, 64)


def test_module_without_registers_or_calls():
    flow = compute_information_flow(parse_qiskit_dialect("x = 1\nprint(x)\n"))
    assert flow["main"].if_value == 0


def test_user_gate_information_flow():
    prog = load_qasm((CORPUS / "qasm" / "mygate.qasm").read_text())
    flow = compute_information_flow(prog)
    g = flow["mygate"]
    # 2 call sites + {a} read by the cx control; writes {a, b}
    assert (g.length, g.fan_in, g.fan_out, g.if_value) == (1, 3, 2, 36)
    main = flow["main"]
    # reads {q} via measure; 2 outgoing calls + writes {q, c}
    assert (main.length, main.fan_in, main.fan_out, main.if_value) == (5, 1, 4, 80)


def test_recursive_call_not_counted():
    src = "def f(c):\n    f(c)\n    print(1)\nf(1)\n"
    flow = compute_information_flow(parse_qiskit_dialect(src))
    assert flow["f"].fan_in == 1 and flow["f"].fan_out == 0


def test_unknown_module_lookup():
    with pytest.raises(KeyError):
        compute_information_flow(load_qasm(""))["nope"]


@pytest.mark.parametrize("path", corpus_programs(), ids=lambda p: p.name)
def test_halstead_matches_oracle(path):
    source = path.read_text()
    dialect = "qasm" if path.suffix == ".qasm" else "qiskit"
    program = load_qasm(source) if dialect == "qasm" else parse_qiskit_dialect(source)
    h = compute_halstead(program)
    assert (h.eta1, h.eta2, h.m1, h.m2) == halstead_oracle.counts(source, dialect)
