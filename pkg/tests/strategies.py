"""Hypothesis generators for dialect programs and design documents.

Generated Qiskit-dialect programs are kept as a list of items so tests can
insert blocks and know the expected counts without parsing.
"""

from dataclasses import dataclass, field

from hypothesis import strategies as st

ONE_QUBIT = ["x", "y", "z", "h", "s", "t", "sdg", "tdg"]
TWO_QUBIT = ["cx", "cz", "swap", "ch"]
PRELUDE = ["q = QuantumRegister(3)", "c = ClassicalRegister(3)", "qc = QuantumCircuit(q, c)"]


@dataclass
class Simple:
    text: str
    kind: str  # gate, measure, classical
    gate: str | None = None


@dataclass
class Block:
    header: str
    kind: str  # loop or branch
    body: list = field(default_factory=list)


def one_qubit_gate():
    return st.builds(
        lambda g, i: Simple(f"qc.{g}(q[{i}])", "gate", g), st.sampled_from(ONE_QUBIT), st.integers(0, 2)
    )


def two_qubit_gate():
    return st.builds(
        lambda g, a: Simple(f"qc.{g}(q[{a}], q[{(a + 1) % 3}])", "gate", g),
        st.sampled_from(TWO_QUBIT), st.integers(0, 2),
    )


def measurement():
    return st.builds(lambda i: Simple(f"qc.measure(q[{i}], c[{i}])", "measure"), st.integers(0, 2))


def classical():
    return st.sampled_from([
        Simple("x = 1", "classical"),
        Simple("y = x * 2 + 1", "classical"),
        Simple("print(x)", "classical"),
        Simple("qc.barrier()", "classical"),
        Simple("job = execute(qc, backend)", "classical"),
    ])


def simple_items():
    return st.one_of(one_qubit_gate(), two_qubit_gate(), measurement(), classical())


def loop(body=None):
    body = body if body is not None else st.lists(simple_items(), min_size=1, max_size=3)
    return st.builds(lambda n, b: Block(f"for i in range({n}):", "loop", b), st.integers(1, 4), body)


def branch(body=None):
    body = body if body is not None else st.lists(simple_items(), min_size=1, max_size=3)
    return st.builds(lambda b: Block("if x > 0:", "branch", b), body)


def items(max_size=12):
    nested = st.lists(st.one_of(simple_items(), loop(), branch()), min_size=1, max_size=3)
    return st.lists(
        st.one_of(simple_items(), simple_items(), loop(), branch(), loop(nested), branch(nested)),
        max_size=max_size,
    )


def render(program_items, prelude=True):
    lines = list(PRELUDE) if prelude else []

    def emit(item, depth):
        pad = "    " * depth
        if isinstance(item, Simple):
            lines.append(pad + item.text)
        else:
            lines.append(pad + item.header)
            for child in item.body:
                emit(child, depth + 1)

    for item in program_items:
        emit(item, 0)
    return "\n".join(lines) + "\n"


def flatten(program_items):
    out = []
    for item in program_items:
        out.append(item)
        if isinstance(item, Block):
            out.extend(flatten(item.body))
    return out


def statement_count(program_items, prelude=True):
    return len(flatten(program_items)) + (len(PRELUDE) if prelude else 0)


@st.composite
def qiskit_programs(draw, max_statements=40):
    prog = draw(items())
    while statement_count(prog) > max_statements:
        prog = prog[:-1]
    return prog


@st.composite
def straight_line(draw):
    return draw(st.lists(simple_items(), max_size=30))


QASM_REGS = "qreg q[3];\ncreg c[3];\n"


def qasm_statements():
    one = st.builds(lambda g, i: (f"{g} q[{i}];", "gate", g), st.sampled_from(ONE_QUBIT), st.integers(0, 2))
    two = st.builds(lambda g, a: (f"{g} q[{a}],q[{(a + 1) % 3}];", "gate", g),
                    st.sampled_from(TWO_QUBIT), st.integers(0, 2))
    rot = st.builds(lambda g, i, k: (f"{g}(pi/{k}) q[{i}];", "gate", g),
                    st.sampled_from(["rx", "ry", "rz"]), st.integers(0, 2), st.integers(1, 8))
    meas = st.builds(lambda i: (f"measure q[{i}] -> c[{i}];", "measure", None), st.integers(0, 2))
    other = st.sampled_from([("barrier q;", "classical", None), ("reset q[0];", "classical", None)])
    cond = st.builds(lambda v, i: (f"if(c=={v}) x q[{i}];", "gate", "x"), st.integers(0, 7), st.integers(0, 2))
    return st.lists(st.one_of(one, two, rot, meas, other, cond), max_size=38)


# -- design documents ------------------------------------------------------

_names = st.text(alphabet="ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789", min_size=1, max_size=6)


@st.composite
def arch_documents(draw):
    names = draw(st.lists(_names, unique=True, max_size=8))
    components = [{"name": n, "kind": draw(st.sampled_from(["quantum", "classical"]))} for n in names]
    connectors = []
    if names:
        pairs = st.tuples(st.sampled_from(names), st.sampled_from(names))
        connectors = [{"from": a, "to": b} for a, b in draw(st.lists(pairs, max_size=10))]
    return {"components": components, "connectors": connectors}


@st.composite
def pattern_documents(draw):
    types = draw(st.lists(_names, unique=True, max_size=6))
    return {"patterns": [
        {"type": t, "quantum": draw(st.booleans()),
         "instances": draw(st.lists(_names, min_size=1, max_size=4))}
        for t in types
    ]}


_flagged = st.builds(lambda n, q: {"name": n, "quantum": q}, _names, st.booleans())
_element = st.builds(lambda n, k, q: {"name": n, "kind": k, "quantum": q},
                     _names, st.sampled_from(["variable", "operation"]), st.booleans())


@st.composite
def quml_documents(draw):
    names = draw(st.lists(_names, unique=True, max_size=5))
    return {"classes": [
        {"name": n, "quantum": draw(st.booleans()),
         "attributes": draw(st.lists(_flagged, max_size=4)),
         "methods": draw(st.lists(_flagged, max_size=4)),
         "interfaces": draw(st.lists(_flagged, max_size=3)),
         "elements": draw(st.lists(_element, max_size=4))}
        for n in names
    ]}
