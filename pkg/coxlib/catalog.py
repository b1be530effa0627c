"""Embedded catalog of diagrams, families and explicit Cartan matrices.

Keys are stable strings (``triangle(3,3,4)``, ``cu21-family``, ...). Any
``triangle(p,q,r)`` with orders in 2..6 resolves on demand; the rows of the
hyperbolic triangle table are listed with their published class counts.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cache

from coxlib import fileio
from coxlib.cartan import (
    CartanMatrix,
    CoxeterDiagram,
    simplex_diagram,
    triangle_diagram,
)
from coxlib.enumerate import ParametricMatrix
from coxlib.numfield import SUPPORTED_ORDERS, AlgNumber, FieldSpec

CU21_FIELD = FieldSpec.of(5, 6)

# (p, q, r) -> printed number of Z-definable classes
TRIANGLE_TABLE: dict[tuple[int, int, int], int] = {
    (2, 4, 6): 1,
    (3, 3, 4): 2,
    (3, 3, 6): 2,
    (2, 6, 6): 1,
    (3, 4, 4): 3,
    (3, 4, 6): 4,
    (4, 4, 4): 4,
    (3, 6, 6): 3,
    (4, 4, 6): 6,
    (4, 6, 6): 5,
    (6, 6, 6): 4,
}

_TRIANGLE_KEY = re.compile(r"^triangle\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)$")


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    payload: CoxeterDiagram | ParametricMatrix | CartanMatrix
    provenance: str
    diagram: CoxeterDiagram | None = None
    expected_count: int | None = None

    @property
    def kind(self) -> str:
        if isinstance(self.payload, CoxeterDiagram):
            return fileio.KIND_DIAGRAM
        if isinstance(self.payload, CartanMatrix):
            return fileio.KIND_CARTAN
        return fileio.KIND_FAMILY

    @property
    def sample(self) -> AlgNumber | None:
        if isinstance(self.payload, ParametricMatrix):
            return self.payload.sample
        return None

    def to_source(self) -> fileio.Source:
        diagram = None if isinstance(self.payload, CoxeterDiagram) else self.diagram
        return fileio.Source(self.kind, self.payload, diagram)


# ── Diagrams ─────────────────────────────────────────────────────


def tetrahedron_diagram(d: int) -> CoxeterDiagram:
    """Pairs (1,2)=4, (1,3)=3, (2,4)=3, (3,4)=d; (1,4) and (2,3) orthogonal."""
    if d not in (3, 4):
        raise ValueError(f"tetrahedron needs d in (3, 4), got {d}")
    return simplex_diagram(
        f"tetrahedron(d={d})", 3, {(1, 2): 4, (1, 3): 3, (2, 4): 3, (3, 4): d}
    )


def simplex4_diagram() -> CoxeterDiagram:
    """Pentagon 1-2-3-4-5-1 with the order-4 edge between faces 3 and 4."""
    return simplex_diagram(
        "simplex4", 4, {(1, 2): 3, (2, 3): 3, (3, 4): 4, (4, 5): 3, (1, 5): 3}
    )


def cu21_diagram() -> CoxeterDiagram:
    """Cube with opposite faces {1,6}, {2,4}, {3,5}."""
    return CoxeterDiagram.from_labels(
        "cu21",
        3,
        ["F1", "F2", "F3", "F4", "F5", "F6"],
        {("F1", "F4"): 3, ("F1", "F5"): 3, ("F2", "F3"): 3, ("F4", "F6"): 3, ("F5", "F6"): 3},
        nonadjacent=[("F1", "F6"), ("F2", "F4"), ("F3", "F5")],
        vertices=[
            (a, b, c) for a in ("F1", "F6") for b in ("F2", "F4") for c in ("F3", "F5")
        ],
        default_order=2,
    )


def prism_diagram(d: int) -> CoxeterDiagram:
    """Triangular prism: side faces 1-3 meet at π/3, end faces 4 and 5; (3,4) = d."""
    if d not in (3, 4):
        raise ValueError(f"prism needs d in (3, 4), got {d}")
    sides = ("F1", "F2", "F3")
    pairs = [(sides[i], sides[j]) for i in range(3) for j in range(i + 1, 3)]
    return CoxeterDiagram.from_labels(
        f"benoist-prism({d})",
        3,
        [*sides, "F4", "F5"],
        {**{p: 3 for p in pairs}, ("F3", "F4"): d},
        nonadjacent=[("F4", "F5")],
        vertices=[(a, b, end) for a, b in pairs for end in ("F4", "F5")],
        default_order=2,
    )


# ── Families and matrices ────────────────────────────────────────


_CU21_ENTRIES = [
    ["2", "0", "0", "-2/(2 + sqrt(5)*t)", "-2/(2 + sqrt(5)*t)", "-3 + sqrt(5)*t/(2 + 2*sqrt(5)*t)"],
    ["0", "2", "-1", "-sqrt(6)", "0", "0"],
    ["0", "-1", "2", "0", "-sqrt(6)", "0"],
    ["-1 - sqrt(5)*t/2", "-sqrt(6)", "0", "2", "0", "-(2 + sqrt(5)*t)/(2 + 2*sqrt(5)*t)"],
    ["-1 - sqrt(5)*t/2", "0", "-sqrt(6)", "0", "2", "-(2 + sqrt(5)*t)/(2 + 2*sqrt(5)*t)"],
    [
        "-3 - sqrt(5)*t/2",
        "0",
        "0",
        "-2*(1 + sqrt(5)*t)/(2 + sqrt(5)*t)",
        "-2*(1 + sqrt(5)*t)/(2 + sqrt(5)*t)",
        "2",
    ],
]

# integral matrices equivalent to the cu21 family at t = 0, −4/(5√5), 4/√5
_CU21_INTEGRAL = {
    1: [
        [2, 0, 0, -1, -1, -3],
        [0, 2, -1, -2, 0, 0],
        [0, -1, 2, 0, -2, 0],
        [-1, -3, 0, 2, 0, -1],
        [-1, 0, -3, 0, 2, -1],
        [-3, 0, 0, -1, -1, 2],
    ],
    2: [
        [2, 0, 0, -1, -1, -1],
        [0, 2, -1, -2, 0, 0],
        [0, -1, 2, 0, -2, 0],
        [-1, -3, 0, 2, 0, -1],
        [-1, 0, -3, 0, 2, -1],
        [-13, 0, 0, -1, -1, 2],
    ],
    3: [
        [2, 0, 0, -1, -1, -13],
        [0, 2, -1, -2, 0, 0],
        [0, -1, 2, 0, -2, 0],
        [-1, -3, 0, 2, 0, -1],
        [-1, 0, -3, 0, 2, -1],
        [-1, 0, 0, -1, -1, 2],
    ],
}

CU21_INTEGRAL_PARAMETERS = {1: "0", 2: "-4*sqrt(5)/25", 3: "4*sqrt(5)/5"}

_TRIANGLE334_MATRICES = {
    1: [[2, -1, -1], [-1, 2, -1], [-1, -2, 2]],
    2: [[2, -1, -1], [-1, 2, -2], [-1, -1, 2]],
}


def cu21_family() -> ParametricMatrix:
    return fileio.parse_family(
        {
            "name": "cu21-family",
            "field": {"radicands": list(CU21_FIELD.radicands)},
            "domain": {"min": "-sqrt(5)/5", "max": "+inf", "min_open": True},
            "sample": "0",
            "entries": _CU21_ENTRIES,
        }
    )


def prism_family(d: int) -> ParametricMatrix:
    """Cartan matrices of the prism for t > 1 with named parameters mu, nu."""
    cos2 = {3: "1", 4: "2"}[d]
    return fileio.parse_family(
        {
            "name": f"benoist-prism({d})",
            "definitions": [
                ["mu", f"{cos2}*t/((t - 1)*(t - 1))"],
                ["nu", "2 + 3*mu"],
            ],
            "domain": {"min": "1", "max": "+inf", "min_open": True},
            "sample": "2",
            "entries": [
                ["2", "-1", "-1", "0", "0"],
                ["-1", "2", "-t", "0", "0"],
                ["-1", "-1/t", "2", "mu*(1 - t)/t", "0"],
                ["0", "0", "1 - t", "2", "-2"],
                ["0", "0", "0", "-nu", "2"],
            ],
        }
    )


def triangle346_family() -> ParametricMatrix:
    return fileio.parse_family(
        {
            "name": "triangle346-family",
            "domain": {"min": "0", "max": "+inf", "min_open": True},
            "sample": "1",
            "entries": [
                ["2", "-3/2", "-1"],
                ["-2", "2", "-2*t"],
                ["-2", "-1/(2*t)", "2"],
            ],
        }
    )


# ── Registry ─────────────────────────────────────────────────────


def _triangle_entry(p: int, q: int, r: int) -> CatalogEntry:
    diagram = triangle_diagram(p, q, r)
    expected = TRIANGLE_TABLE.get((p, q, r))
    provenance = (
        f"triangle table row ({p},{q},{r}), printed N = {expected}"
        if expected is not None
        else f"triangle ({p},{q},{r}) built on demand"
    )
    return CatalogEntry(diagram.name, diagram, provenance, diagram, expected)


@cache
def _entries() -> dict[str, CatalogEntry]:
    out: dict[str, CatalogEntry] = {}

    def add(entry: CatalogEntry) -> None:
        if entry.key in out:
            raise ValueError(f"duplicate catalog key {entry.key!r}")
        out[entry.key] = entry

    for p, q, r in TRIANGLE_TABLE:
        add(_triangle_entry(p, q, r))
    for d, n in ((3, 2), (4, 3)):
        diagram = tetrahedron_diagram(d)
        add(CatalogEntry(diagram.name, diagram, f"compact tetrahedron, d = {d}", diagram, n))
    simplex4 = simplex4_diagram()
    add(CatalogEntry("simplex4", simplex4, "compact 4-simplex with a pentagonal graph", simplex4, 2))

    cu21 = cu21_diagram()
    add(CatalogEntry("cu21", cu21, "cubical orbifold cu21", cu21))
    add(
        CatalogEntry(
            "cu21-family",
            cu21_family(),
            "one-parameter deformation of cu21 (restricted deformation space of dimension 1)",
            cu21,
        )
    )
    for k, rows in _CU21_INTEGRAL.items():
        add(
            CatalogEntry(
                f"cu21-integral({k})",
                CartanMatrix.from_rows(rows, CU21_FIELD, f"cu21-integral({k})"),
                f"integral cu21 matrix, family parameter t = {CU21_INTEGRAL_PARAMETERS[k]}",
                cu21,
            )
        )
    for d in (3, 4):
        add(
            CatalogEntry(
                f"benoist-prism({d})",
                prism_family(d),
                f"Benoist prism, d = {d}; mu = 4t·cos²(π/{d})/(t−1)², nu = 2 + 3mu",
                prism_diagram(d),
                0,
            )
        )
    add(
        CatalogEntry(
            "triangle346-family",
            triangle346_family(),
            "one-parameter family for the (3,4,6) triangle, t > 0",
            triangle_diagram(6, 4, 3),
            4,
        )
    )
    t334 = triangle_diagram(3, 3, 4)
    for k, rows in _TRIANGLE334_MATRICES.items():
        add(
            CatalogEntry(
                f"triangle334-matrix({k})",
                CartanMatrix.from_rows(rows, name=f"triangle334-matrix({k})"),
                f"displayed (3,3,4) matrix {k}",
                t334,
            )
        )
    return out


def catalog_keys() -> list[str]:
    return list(_entries())


def list_entries() -> list[CatalogEntry]:
    return list(_entries().values())


def get_entry(key: str) -> CatalogEntry:
    """Listed entry or an on-demand ``triangle(p,q,r)``; ``KeyError`` otherwise."""
    entries = _entries()
    normalized = key.replace(" ", "")
    if normalized in entries:
        return entries[normalized]
    match = _TRIANGLE_KEY.match(normalized)
    if match:
        p, q, r = (int(g) for g in match.groups())
        bad = [m for m in (p, q, r) if m not in SUPPORTED_ORDERS]
        if bad:
            raise KeyError(f"triangle orders {bad} not in {SUPPORTED_ORDERS}")
        return _triangle_entry(p, q, r)
    raise KeyError(f"unknown catalog key {key!r}")
