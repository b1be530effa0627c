"""JSON files for diagrams, Cartan matrices and one-parameter families.

Scalars are strings in the expression grammar (plain JSON integers are
accepted too). ``dump_*`` followed by ``parse_*`` reproduces an equal object.

Cartan matrix::

    {"kind": "cartan", "name": "...", "field": {"radicands": [5, 6]},
     "entries": [["2", "-1", ...], ...], "diagram": {...}}

Family::

    {"kind": "family", "field": {...}, "parameter": "t",
     "definitions": [["mu", "4*t/((t-1)*(t-1))"], ...],
     "domain": {"min": "1", "max": "+inf", "min_open": true, "max_open": true},
     "sample": "2", "entries": [["2", "-t", ...], ...], "diagram": {...}}
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from coxlib.cartan import CartanMatrix, CoxeterDiagram
from coxlib.enumerate import ParameterDomain, ParametricMatrix
from coxlib.expressions import (
    PARAMETER,
    Value,
    as_ratfunc,
    format_number,
    format_ratfunc,
    parse_expression,
    parse_number,
)
from coxlib.numfield import FieldSpec

KIND_DIAGRAM = "diagram"
KIND_CARTAN = "cartan"
KIND_FAMILY = "family"

_INFINITIES = {"-inf", "+inf", "inf", None}
_PARAMETER_TOKEN = re.compile(rf"\b{PARAMETER}\b")


@dataclass(frozen=True)
class Source:
    """A parsed file: its kind, the main payload and an optional diagram."""

    kind: str
    payload: CoxeterDiagram | CartanMatrix | ParametricMatrix
    diagram: CoxeterDiagram | None = None


# ── Fields ───────────────────────────────────────────────────────


def parse_field(data: Any) -> FieldSpec:
    """``{"radicands": [a, b]}``, a bare list, or ``"a,b"``; missing means Q."""
    if data is None:
        return FieldSpec()
    if isinstance(data, dict):
        data = data.get("radicands", [])
    if isinstance(data, str):
        data = [part for part in data.replace(" ", "").split(",") if part]
    try:
        radicands = tuple(int(d) for d in data)
    except (TypeError, ValueError):
        raise ValueError(f"invalid field radicands: {data!r}") from None
    return FieldSpec(radicands)


def dump_field(spec: FieldSpec) -> dict:
    return {"radicands": list(spec.radicands)}


# ── Diagrams ─────────────────────────────────────────────────────


def parse_diagram(data: dict) -> CoxeterDiagram:
    try:
        faces = [str(f) for f in data["faces"]]
        edges: dict[tuple[object, object], int] = {}
        for edge in data.get("edges", []):
            s, t = edge["faces"]
            edges[(s, t)] = int(edge["order"])
        return CoxeterDiagram.from_labels(
            str(data.get("name", "")),
            int(data["dimension"]),
            faces,
            edges,
            nonadjacent=[tuple(pair) for pair in data.get("nonadjacent", [])],
            vertices=data.get("vertices", []),
            default_order=data.get("default_order"),
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"invalid diagram: missing or malformed {exc}") from None


def dump_diagram(diagram: CoxeterDiagram) -> dict:
    return {"kind": KIND_DIAGRAM, **diagram.to_dict()}


# ── Cartan matrices ──────────────────────────────────────────────


def _rows(data: dict) -> list[list[Any]]:
    rows = data.get("entries")
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ValueError("'entries' must be a list of rows")
    return rows


def parse_cartan(data: dict, spec: FieldSpec | None = None) -> CartanMatrix:
    spec = spec or parse_field(data.get("field"))
    entries = tuple(tuple(parse_number(x, spec) for x in row) for row in _rows(data))
    return CartanMatrix(spec, entries, str(data.get("name", "")))


def dump_cartan(c: CartanMatrix, diagram: CoxeterDiagram | None = None) -> dict:
    out: dict[str, Any] = {
        "kind": KIND_CARTAN,
        "name": c.name,
        "field": dump_field(c.spec),
        "entries": c.rows_as_text(),
    }
    if diagram is not None:
        out["diagram"] = diagram.to_dict()
    return out


# ── Families ─────────────────────────────────────────────────────


def _bound(text: Any, spec: FieldSpec):
    if text in _INFINITIES:
        return None
    return parse_number(text, spec)


def parse_domain(data: dict | None, spec: FieldSpec) -> ParameterDomain:
    if not data:
        return ParameterDomain()
    return ParameterDomain(
        lower=_bound(data.get("min"), spec),
        upper=_bound(data.get("max"), spec),
        lower_open=bool(data.get("min_open", True)),
        upper_open=bool(data.get("max_open", True)),
    )


def dump_domain(domain: ParameterDomain) -> dict:
    return {
        "min": "-inf" if domain.lower is None else format_number(domain.lower),
        "max": "+inf" if domain.upper is None else format_number(domain.upper),
        "min_open": domain.lower_open,
        "max_open": domain.upper_open,
    }


def parse_family(data: dict, spec: FieldSpec | None = None) -> ParametricMatrix:
    spec = spec or parse_field(data.get("field"))
    parameter = data.get("parameter", PARAMETER)
    if parameter != PARAMETER:
        raise ValueError(f"family parameter must be {PARAMETER!r}, got {parameter!r}")
    definitions: list[tuple[str, str]] = []
    values: dict[str, Value] = {}
    for item in data.get("definitions", []):
        name, text = item
        values[str(name)] = parse_expression(str(text), spec, allow_parameter=True, definitions=values)
        definitions.append((str(name), str(text)))
    entries = tuple(
        tuple(
            as_ratfunc(parse_expression(str(x), spec, allow_parameter=True, definitions=values))
            for x in row
        )
        for row in _rows(data)
    )
    sample = data.get("sample")
    return ParametricMatrix(
        spec,
        entries,
        parse_domain(data.get("domain"), spec),
        str(data.get("name", "")),
        tuple(definitions),
        None if sample is None else parse_number(sample, spec),
    )


def dump_family(p: ParametricMatrix, diagram: CoxeterDiagram | None = None) -> dict:
    out: dict[str, Any] = {
        "kind": KIND_FAMILY,
        "name": p.name,
        "field": dump_field(p.spec),
        "parameter": PARAMETER,
        "definitions": [list(d) for d in p.definitions],
        "domain": dump_domain(p.domain),
        "entries": [[format_ratfunc(x) for x in row] for row in p.entries],
    }
    if p.sample is not None:
        out["sample"] = format_number(p.sample)
    if diagram is not None:
        out["diagram"] = diagram.to_dict()
    return out


# ── Dispatch ─────────────────────────────────────────────────────


def _kind(data: dict) -> str:
    kind = data.get("kind")
    if kind in (KIND_DIAGRAM, KIND_CARTAN, KIND_FAMILY):
        return kind
    if kind is not None:
        raise ValueError(f"unknown file kind {kind!r}")
    if "entries" in data:
        rows = _rows(data)
        if "parameter" in data or "domain" in data:
            return KIND_FAMILY
        if any(_PARAMETER_TOKEN.search(str(x)) for row in rows for x in row):
            return KIND_FAMILY
        return KIND_CARTAN
    if "faces" in data:
        return KIND_DIAGRAM
    raise ValueError("cannot tell diagram, Cartan matrix or family apart (no 'kind')")


def parse_source(data: dict, spec: FieldSpec | None = None) -> Source:
    """``spec`` (from ``--field``) overrides the file's own field."""
    if not isinstance(data, dict):
        raise ValueError("top-level JSON value must be an object")
    kind = _kind(data)
    if kind == KIND_DIAGRAM:
        return Source(kind, parse_diagram(data))
    diagram = parse_diagram(data["diagram"]) if data.get("diagram") else None
    if kind == KIND_CARTAN:
        return Source(kind, parse_cartan(data, spec), diagram)
    return Source(kind, parse_family(data, spec), diagram)


def dump_source(source: Source) -> dict:
    if isinstance(source.payload, CoxeterDiagram):
        return dump_diagram(source.payload)
    if isinstance(source.payload, CartanMatrix):
        return dump_cartan(source.payload, source.diagram)
    return dump_family(source.payload, source.diagram)


def load_source(path: str | Path, spec: FieldSpec | None = None) -> Source:
    p = Path(path)
    try:
        data = json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValueError(f"{p}: invalid JSON ({exc.msg}, line {exc.lineno})") from None
    return parse_source(data, spec)


def save_source(source: Source, path: str | Path) -> None:
    Path(path).write_text(json.dumps(dump_source(source), indent=2) + "\n", encoding="utf-8")
