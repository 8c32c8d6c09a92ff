"""Design-level size metrics over declared architecture, pattern and Q-UML documents.

The three document schemas are JSON; see ``docs/formats.md``.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Union

import jsonschema

from .errors import SchemaError, UnknownComponent


class DesignFormat(str, enum.Enum):
    ARCH = "arch"
    PATTERNS = "patterns"
    QUML = "quml"


_KIND = {"enum": ["classical", "quantum"]}
_NAME = {"type": "string", "minLength": 1}

ARCH_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["components"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "components": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "kind"],
                "additionalProperties": False,
                "properties": {"name": _NAME, "kind": _KIND, "description": {"type": "string"}},
            },
        },
        "connectors": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["from", "to"],
                "additionalProperties": False,
                "properties": {"from": _NAME, "to": _NAME, "label": {"type": "string"}},
            },
        },
    },
}

PATTERNS_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["patterns"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "patterns": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["type", "quantum", "instances"],
                "additionalProperties": False,
                "properties": {
                    "type": _NAME,
                    "quantum": {"type": "boolean"},
                    "instances": {"type": "array", "minItems": 1, "items": _NAME},
                },
            },
        },
    },
}

_FLAGGED = {
    "type": "object",
    "required": ["name", "quantum"],
    "additionalProperties": False,
    "properties": {"name": _NAME, "quantum": {"type": "boolean"}},
}

QUML_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["classes"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "classes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "quantum"],
                "additionalProperties": False,
                "properties": {
                    "name": _NAME,
                    "quantum": {"type": "boolean"},
                    "attributes": {"type": "array", "items": _FLAGGED},
                    "methods": {"type": "array", "items": _FLAGGED},
                    "interfaces": {"type": "array", "items": _FLAGGED},
                    "elements": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["name", "kind", "quantum"],
                            "additionalProperties": False,
                            "properties": {
                                "name": _NAME,
                                "kind": {"enum": ["variable", "operation"]},
                                "quantum": {"type": "boolean"},
                            },
                        },
                    },
                },
            },
        },
    },
}

SCHEMAS = {DesignFormat.ARCH: ARCH_SCHEMA, DesignFormat.PATTERNS: PATTERNS_SCHEMA, DesignFormat.QUML: QUML_SCHEMA}


@dataclass(frozen=True)
class Component:
    name: str
    quantum: bool


@dataclass(frozen=True)
class Connector:
    source: str
    target: str


@dataclass(frozen=True)
class ArchitectureSpec:
    source_lines: int
    components: tuple[Component, ...]
    connectors: tuple[Connector, ...]


@dataclass(frozen=True)
class Pattern:
    type_name: str
    quantum: bool
    instances: tuple[str, ...]


@dataclass(frozen=True)
class PatternRecord:
    patterns: tuple[Pattern, ...] = ()


@dataclass(frozen=True)
class Flagged:
    name: str
    quantum: bool


@dataclass(frozen=True)
class Element:
    name: str
    kind: str
    quantum: bool


@dataclass(frozen=True)
class QumlClass:
    name: str
    quantum: bool
    attributes: tuple[Flagged, ...] = ()
    methods: tuple[Flagged, ...] = ()
    interfaces: tuple[Flagged, ...] = ()
    elements: tuple[Element, ...] = ()


@dataclass(frozen=True)
class QumlModel:
    classes: tuple[QumlClass, ...] = ()


DesignModel = Union[ArchitectureSpec, PatternRecord, QumlModel]


@dataclass(frozen=True)
class GammaMetrics:
    gamma1: int
    gamma2: int
    gamma3: int
    gamma4: int
    gamma5: int
    gamma6: int


@dataclass(frozen=True)
class DeltaMetrics:
    delta1: int
    delta2: dict[str, int] = field(default_factory=dict)
    delta3: int = 0
    delta4: dict[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class ThetaMetrics:
    theta1: int
    theta2: int
    theta3: int
    theta4: int
    theta5: int


def _location(error: jsonschema.ValidationError) -> str:
    return "/" + "/".join(str(p) for p in error.absolute_path)


def _count_lines(text: str) -> int:
    return sum(1 for line in text.splitlines() if line.strip() and not line.strip().startswith("//"))


def _duplicate(names: list[str]) -> str | None:
    seen: set[str] = set()
    for name in names:
        if name in seen:
            return name
        seen.add(name)
    return None


def load_design_document(text: str, fmt: DesignFormat | str, path: str = "<string>") -> DesignModel:
    fmt = DesignFormat(fmt)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(path, f"line {exc.lineno}", exc.msg) from None
    errors = sorted(jsonschema.Draft202012Validator(SCHEMAS[fmt]).iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        raise SchemaError(path, _location(errors[0]), errors[0].message)

    if fmt is DesignFormat.ARCH:
        components = tuple(Component(c["name"], c["kind"] == "quantum") for c in doc["components"])
        dup = _duplicate([c.name for c in components])
        if dup is not None:
            raise SchemaError(path, "/components", f"component {dup!r} declared twice")
        names = {c.name for c in components}
        connectors = []
        for i, conn in enumerate(doc.get("connectors", [])):
            for end in ("from", "to"):
                if conn[end] not in names:
                    raise UnknownComponent(path, f"/connectors/{i}/{end}", conn[end])
            connectors.append(Connector(conn["from"], conn["to"]))
        return ArchitectureSpec(_count_lines(text), components, tuple(connectors))

    if fmt is DesignFormat.PATTERNS:
        patterns = tuple(Pattern(p["type"], p["quantum"], tuple(p["instances"])) for p in doc["patterns"])
        dup = _duplicate([p.type_name for p in patterns])
        if dup is not None:
            raise SchemaError(path, "/patterns", f"pattern type {dup!r} listed twice")
        return PatternRecord(patterns)

    classes = []
    for c in doc["classes"]:
        classes.append(QumlClass(
            name=c["name"],
            quantum=c["quantum"],
            attributes=tuple(Flagged(a["name"], a["quantum"]) for a in c.get("attributes", [])),
            methods=tuple(Flagged(m["name"], m["quantum"]) for m in c.get("methods", [])),
            interfaces=tuple(Flagged(i["name"], i["quantum"]) for i in c.get("interfaces", [])),
            elements=tuple(Element(e["name"], e["kind"], e["quantum"]) for e in c.get("elements", [])),
        ))
    dup = _duplicate([c.name for c in classes])
    if dup is not None:
        raise SchemaError(path, "/classes", f"class {dup!r} declared twice")
    return QumlModel(tuple(classes))


def parse_design_document(path: str | Path, fmt: DesignFormat | str) -> DesignModel:
    path = Path(path)
    return load_design_document(path.read_text(encoding="utf-8"), fmt, str(path))


def compute_gamma(s: ArchitectureSpec) -> GammaMetrics:
    quantum = {c.name for c in s.components if c.quantum}
    both = sum(1 for c in s.connectors if c.source in quantum and c.target in quantum)
    mixed = sum(1 for c in s.connectors if (c.source in quantum) != (c.target in quantum))
    return GammaMetrics(
        gamma1=s.source_lines,
        gamma2=len(s.components) + len(s.connectors),
        gamma3=len(quantum),
        gamma4=both,
        gamma5=mixed,
        gamma6=len(quantum) + both + mixed,
    )


def compute_delta(d: PatternRecord) -> DeltaMetrics:
    realizations = {p.type_name: len(p.instances) for p in d.patterns}
    quantum = {p.type_name: len(p.instances) for p in d.patterns if p.quantum}
    return DeltaMetrics(delta1=len(realizations), delta2=realizations, delta3=len(quantum), delta4=quantum)


def compute_theta(m: QumlModel) -> ThetaMetrics:
    def quantum(items) -> int:
        return sum(1 for item in items if item.quantum)

    return ThetaMetrics(
        theta1=quantum(m.classes),
        theta2=sum(quantum(c.elements) for c in m.classes),
        theta3=sum(quantum(c.interfaces) for c in m.classes),
        theta4=sum(quantum(c.attributes) for c in m.classes),
        theta5=sum(quantum(c.methods) for c in m.classes),
    )
