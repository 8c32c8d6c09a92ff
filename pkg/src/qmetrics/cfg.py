"""Statement-level quantum control-flow graphs and cyclomatic complexity."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import EmptyBody, EmptyGraph
from .model import QModule, QProgram, StatementKind


@dataclass(frozen=True)
class Qcfg:
    """Nodes are statement indices of the analysed program, edges are ordered pairs."""

    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    classical: bool = False

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def build_qcfg(
    program: QProgram,
    module: Optional[QModule | str] = None,
    *,
    classical: bool = False,
) -> Qcfg:
    """Build the graph of one module (``main`` by default).

    Consecutive statements of a block are chained.  A loop header links to the
    first body statement, the body's terminals link back to the header and the
    header links to its successor.  Unless ``classical`` is set, the body's
    terminals also link to the loop's successor (the final-iteration
    fallthrough).  A branch header links to the first body statement and to
    its successor, and the body's terminals link to the successor.  Edges that
    would leave the scope are dropped.
    """
    if module is None:
        module = program.main
    elif isinstance(module, str):
        module = program.module(module)
    scope = module.body
    in_scope = set(scope)
    stmts = program.statements

    children: dict[Optional[int], list[int]] = {}
    for index in scope:
        parent = stmts[index].parent
        children.setdefault(parent if parent in in_scope else None, []).append(index)

    edges: dict[tuple[int, int], None] = {}

    def link(sources: Sequence[int], target: int) -> None:
        for src in sources:
            if src != target:
                edges[(src, target)] = None

    def walk(block: list[int]) -> tuple[Optional[int], list[int]]:
        """Wire one block; returns its entry node and the nodes control leaves it from."""
        entry: Optional[int] = None
        pending: list[int] = []
        for index in block:
            if entry is None:
                entry = index
            link(pending, index)
            stmt = stmts[index]
            if not stmt.is_header:
                pending = [index]
                continue
            body = children.get(index, [])
            if not body:
                raise EmptyBody(stmt.line)
            body_entry, body_exits = walk(body)
            assert body_entry is not None
            link([index], body_entry)
            if stmt.kind is StatementKind.LOOP_HEADER:
                link(body_exits, index)
                pending = [index] + ([] if classical else body_exits)
            else:
                pending = [index] + body_exits
        return entry, pending

    walk(children.get(None, []))
    return Qcfg(nodes=tuple(scope), edges=tuple(edges), classical=classical)


def cyclomatic(graph: Qcfg) -> int:
    if graph.node_count == 0:
        raise EmptyGraph()
    return graph.edge_count - graph.node_count + 2


def to_dot(graph: Qcfg, program: QProgram, name: str = "qcfg") -> str:
    lines = [f'digraph "{name}" {{', "  node [shape=box];"]
    for node in graph.nodes:
        stmt = program.statements[node]
        lines.append(f'  n{node} [label="{stmt.line}: {stmt.kind.value}"];')
    for src, dst in graph.edges:
        lines.append(f"  n{src} -> n{dst};")
    lines.append("}")
    return "\n".join(lines) + "\n"
