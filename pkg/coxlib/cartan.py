"""Cartan matrices of projective reflection groups and their invariants.

A Cartan matrix ``C`` with ``c_ij = α_i(v_j)`` is attached to reflections
``σ_i = I − v_i α_i``. Everything that survives the rescaling
``v_i → λ_i v_i, α_i → λ_i⁻¹ α_i`` (conjugation by a positive diagonal matrix)
is a function of the simple cyclic products, collected here in a
:class:`CyclicSignature`.

Indices are 0-based throughout; face labels of a :class:`CoxeterDiagram` are
only used for display.
"""

from __future__ import annotations

import enum
import itertools
import logging
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from coxlib import linalg
from coxlib.linalg import Matrix
from coxlib.numfield import (
    AlgNumber,
    FieldMismatchError,
    FieldSpec,
    QuadraticRing,
    cos2_value,
    is_algebraic_integer,
    is_integer,
    join_specs,
    sign,
)

_log = logging.getLogger("coxlib.cartan")

Cycle = tuple[int, ...]
Pair = tuple[int, int]

_NONADJACENT = 0  # edge attribute used for automorphism matching


# ── Coxeter diagrams ─────────────────────────────────────────────


@dataclass(frozen=True)
class CoxeterDiagram:
    """Faces of a Coxeter polytope with dihedral orders and vertex data.

    ``edges`` holds ``(i, j, m)`` with ``i < j`` for adjacent faces meeting at
    angle π/m; ``nonadjacent`` the remaining pairs. ``vertices`` lists, per
    polytope vertex, the indices of the faces containing it.
    """

    name: str
    dimension: int
    faces: tuple[str, ...]
    edges: tuple[tuple[int, int, int], ...]
    nonadjacent: tuple[Pair, ...] = ()
    vertices: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self) -> None:
        n = len(self.faces)
        if len(set(self.faces)) != n:
            raise ValueError(f"{self.name}: duplicate face labels {self.faces}")
        if self.dimension < 1:
            raise ValueError(f"{self.name}: dimension must be positive")
        edges = tuple(sorted((min(i, j), max(i, j), int(m)) for i, j, m in self.edges))
        nonadj = tuple(sorted((min(i, j), max(i, j)) for i, j in self.nonadjacent))
        seen: set[Pair] = set()
        for i, j, m in edges:
            if m < 2:
                raise ValueError(f"{self.name}: order {m} < 2 at faces {self.faces[i]},{self.faces[j]}")
            if (i, j) in seen:
                raise ValueError(f"{self.name}: pair {self.faces[i]},{self.faces[j]} given twice")
            seen.add((i, j))
        for pair in nonadj:
            if pair in seen:
                raise ValueError(
                    f"{self.name}: pair {self.faces[pair[0]]},{self.faces[pair[1]]} "
                    "is both adjacent and nonadjacent"
                )
            seen.add(pair)
        for i, j in seen:
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise ValueError(f"{self.name}: invalid face pair ({i}, {j})")
        missing = [(i, j) for i, j in itertools.combinations(range(n), 2) if (i, j) not in seen]
        if missing:
            labels = ", ".join(f"{self.faces[i]}-{self.faces[j]}" for i, j in missing)
            raise ValueError(f"{self.name}: no order or nonadjacency given for {labels}")
        verts = tuple(tuple(sorted(v)) for v in self.vertices)
        for vertex in verts:
            for idx in vertex:
                if not 0 <= idx < n:
                    raise ValueError(f"{self.name}: vertex references unknown face {idx}")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "nonadjacent", nonadj)
        object.__setattr__(self, "vertices", verts)

    @classmethod
    def from_labels(
        cls,
        name: str,
        dimension: int,
        faces: Sequence[object],
        edges: Mapping[tuple[object, object], int],
        nonadjacent: Iterable[tuple[object, object]] = (),
        vertices: Iterable[Iterable[object]] = (),
        default_order: int | None = None,
    ) -> CoxeterDiagram:
        """Build from face labels; unspecified pairs get ``default_order`` if given."""
        labels = tuple(str(f) for f in faces)
        index = {label: i for i, label in enumerate(labels)}

        def _idx(label: object) -> int:
            try:
                return index[str(label)]
            except KeyError:
                raise ValueError(f"{name}: unknown face {label!r}") from None

        edge_list = [(_idx(s), _idx(t), m) for (s, t), m in edges.items()]
        nonadj = [(_idx(s), _idx(t)) for s, t in nonadjacent]
        if default_order is not None:
            given = {frozenset((i, j)) for i, j, _ in edge_list} | {frozenset(p) for p in nonadj}
            for i, j in itertools.combinations(range(len(labels)), 2):
                if frozenset((i, j)) not in given:
                    edge_list.append((i, j, default_order))
        verts = [tuple(_idx(f) for f in v) for v in vertices]
        return cls(name, dimension, labels, tuple(edge_list), tuple(nonadj), tuple(verts))

    @property
    def size(self) -> int:
        return len(self.faces)

    def order(self, i: int, j: int) -> int | None:
        """Edge order of an adjacent pair, ``None`` for a nonadjacent pair."""
        a, b = min(i, j), max(i, j)
        for s, t, m in self.edges:
            if (s, t) == (a, b):
                return m
        return None

    def is_adjacent(self, i: int, j: int) -> bool:
        return self.order(i, j) is not None

    @property
    def is_simplex(self) -> bool:
        return not self.nonadjacent

    def label(self, i: int) -> str:
        return self.faces[i]

    def coxeter_graph(self) -> nx.Graph:
        """Nodes = faces; edges = adjacent pairs of order ≥ 3 (order-2 pairs commute)."""
        g = nx.Graph()
        g.add_nodes_from(range(self.size))
        g.add_edges_from((i, j, {"order": m}) for i, j, m in self.edges if m >= 3)
        return g

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "dimension": self.dimension,
            "faces": list(self.faces),
            "edges": [
                {"faces": [self.faces[i], self.faces[j]], "order": m} for i, j, m in self.edges
            ],
            "nonadjacent": [[self.faces[i], self.faces[j]] for i, j in self.nonadjacent],
            "vertices": [[self.faces[i] for i in v] for v in self.vertices],
        }


def triangle_diagram(p: int, q: int, r: int) -> CoxeterDiagram:
    """Triangle with orders (1,2)=p, (1,3)=q, (2,3)=r."""
    return simplex_diagram(
        f"triangle({p},{q},{r})", 2, {(1, 2): p, (1, 3): q, (2, 3): r}
    )


def simplex_diagram(
    name: str, dimension: int, orders: Mapping[tuple[int, int], int], default_order: int = 2
) -> CoxeterDiagram:
    """Simplex on faces 1..n+1; every n-subset of faces is a vertex."""
    faces = list(range(1, dimension + 2))
    vertices = [c for c in itertools.combinations(faces, dimension)]
    return CoxeterDiagram.from_labels(
        name, dimension, faces, orders, vertices=vertices, default_order=default_order
    )


def triangle_is_hyperbolic(p: int, q: int, r: int) -> bool:
    """1/p + 1/q + 1/r < 1."""
    return Fraction(1, p) + Fraction(1, q) + Fraction(1, r) < 1


def diagram_automorphisms(diagram: CoxeterDiagram) -> list[tuple[int, ...]]:
    """Face permutations preserving every order and every nonadjacency.

    Returned as tuples ``perm`` with face ``i`` sent to ``perm[i]``; identity
    first, then lexicographic. Vertex data is not consulted.
    """
    g = nx.Graph()
    g.add_nodes_from(range(diagram.size))
    for i, j, m in diagram.edges:
        g.add_edge(i, j, order=m)
    for i, j in diagram.nonadjacent:
        g.add_edge(i, j, order=_NONADJACENT)
    matcher = GraphMatcher(g, g, edge_match=lambda a, b: a["order"] == b["order"])
    perms = sorted(tuple(m[i] for i in range(diagram.size)) for m in matcher.isomorphisms_iter())
    return perms


# ── Cartan matrices ──────────────────────────────────────────────


@dataclass(frozen=True)
class CartanMatrix:
    """Square matrix over ``spec`` with diagonal 2."""

    spec: FieldSpec
    entries: Matrix
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        rows = tuple(
            tuple(x if isinstance(x, AlgNumber) else self.spec.rational(x) for x in row)
            for row in self.entries
        )
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError(f"Cartan matrix must be square, row {i + 1} has {len(row)} entries")
            for x in row:
                if x.spec != self.spec:
                    raise FieldMismatchError(f"entry {x} lies in {x.spec}, expected {self.spec}")
            if row[i] != 2:
                raise ValueError(f"diagonal entry ({i + 1},{i + 1}) is {row[i]}, expected 2")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[int | Fraction | AlgNumber]], spec: FieldSpec | None = None, name: str = ""
    ) -> CartanMatrix:
        """Coerce rows of ints/Fractions/AlgNumbers; the field defaults to the join of the entries."""
        if spec is None:
            spec = join_specs(*(x.spec for row in rows for x in row if isinstance(x, AlgNumber)))
        return cls(
            spec,
            tuple(
                tuple(x.lift(spec) if isinstance(x, AlgNumber) else spec.rational(x) for x in row)
                for row in rows
            ),
            name,
        )

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: Pair) -> AlgNumber:
        i, j = index
        return self.entries[i][j]

    def lift(self, spec: FieldSpec) -> CartanMatrix:
        if spec == self.spec:
            return self
        return CartanMatrix(
            spec, tuple(tuple(x.lift(spec) for x in row) for row in self.entries), self.name
        )

    def permuted(self, perm: Sequence[int]) -> CartanMatrix:
        """Relabel faces: the new entry (i, j) is the old entry (perm[i], perm[j])."""
        return CartanMatrix(
            self.spec,
            tuple(tuple(self.entries[perm[i]][perm[j]] for j in range(self.size)) for i in range(self.size)),
            self.name,
        )

    def conjugate(self, d: Sequence[AlgNumber | int | Fraction]) -> CartanMatrix:
        """``D·C·D⁻¹`` for ``D = diag(d)``."""
        diag = [x.lift(self.spec) if isinstance(x, AlgNumber) else self.spec.rational(x) for x in d]
        return CartanMatrix(self.spec, linalg.conjugate_by_diagonal(self.entries, diag), self.name)

    def pattern(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(
            tuple(i != j and not x.is_zero for j, x in enumerate(row))
            for i, row in enumerate(self.entries)
        )

    def pair_product(self, i: int, j: int) -> AlgNumber:
        return self.entries[i][j] * self.entries[j][i]

    def rows_as_text(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.entries]


def _common(a: CartanMatrix, b: CartanMatrix) -> tuple[CartanMatrix, CartanMatrix]:
    if a.size != b.size:
        raise ValueError(f"size mismatch: {a.size} vs {b.size}")
    spec = join_specs(a.spec, b.spec)
    return a.lift(spec), b.lift(spec)


# ── Vinberg conditions ───────────────────────────────────────────


@dataclass(frozen=True)
class Violation:
    condition: str  # "L1", "L2(i)", "L2(ii)"
    i: int
    j: int
    detail: str

    def describe(self, diagram: CoxeterDiagram | None = None) -> str:
        if diagram is not None:
            s, t = diagram.label(self.i), diagram.label(self.j)
        else:
            s, t = str(self.i + 1), str(self.j + 1)
        return f"({self.condition}) at ({s},{t}): {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def conditions(self) -> set[str]:
        return {v.condition for v in self.violations}


def validate_vinberg(c: CartanMatrix, diagram: CoxeterDiagram) -> ValidationReport:
    """Check (L1) and (L2) of Vinberg's theorem against the diagram's orders."""
    if c.size != diagram.size:
        raise ValueError(f"matrix has size {c.size}, diagram {diagram.name} has {diagram.size} faces")
    violations: list[Violation] = []
    for i in range(c.size):
        for j in range(c.size):
            if i != j and sign(c[i, j]) > 0:
                violations.append(Violation("L1", i, j, f"c = {c[i, j]} > 0"))
    for i, j in itertools.combinations(range(c.size), 2):
        product = c.pair_product(i, j)
        m = diagram.order(i, j)
        if m is None:
            if product < 4:
                violations.append(Violation("L2(i)", i, j, f"nonadjacent product {product} < 4"))
            continue
        zero_ij, zero_ji = c[i, j].is_zero, c[j, i].is_zero
        if m == 2:
            if not (zero_ij and zero_ji):
                violations.append(
                    Violation("L2(ii)", i, j, f"order 2 needs c_ij = c_ji = 0, got {c[i, j]}, {c[j, i]}")
                )
            continue
        try:
            expected = cos2_value(m, c.spec)
        except FieldMismatchError:
            violations.append(
                Violation("L2(ii)", i, j, f"4cos²(π/{m}) does not lie in {c.spec}")
            )
            continue
        if zero_ij or zero_ji or product != expected:
            violations.append(
                Violation("L2(ii)", i, j, f"product {product} != 4cos²(π/{m}) = {expected}")
            )
    return ValidationReport(tuple(violations))


# ── Cycles and signatures ────────────────────────────────────────


def canonical_cycle(cycle: Sequence[int]) -> Cycle:
    """Rotation starting at the smallest index (orientation kept)."""
    k = cycle.index(min(cycle))
    return tuple(cycle[k:]) + tuple(cycle[:k])


def pattern_cycles(pattern: Sequence[Sequence[bool]]) -> list[Cycle]:
    """Simple directed cycles (length ≥ 2) of an off-diagonal nonzero pattern."""
    g = nx.DiGraph()
    g.add_nodes_from(range(len(pattern)))
    g.add_edges_from(
        (i, j) for i, row in enumerate(pattern) for j, nz in enumerate(row) if nz and i != j
    )
    cycles = {canonical_cycle(c) for c in nx.simple_cycles(g) if len(c) >= 2}
    return sorted(cycles, key=lambda c: (len(c), c))


def simple_cycles(c: CartanMatrix) -> list[Cycle]:
    """Canonical simple cycles of the nonzero pattern, by length then lexicographically."""
    return pattern_cycles(c.pattern())


def cycle_product(c: CartanMatrix, cycle: Cycle) -> AlgNumber:
    value = c.spec.one()
    for a, b in zip(cycle, cycle[1:] + cycle[:1], strict=True):
        value = value * c[a, b]
    return value


@dataclass(frozen=True)
class CyclicSignature:
    """Canonical cycle → simple cyclic product, in :func:`simple_cycles` order."""

    entries: tuple[tuple[Cycle, AlgNumber], ...] = ()

    @classmethod
    def from_mapping(cls, values: Mapping[Cycle, AlgNumber]) -> CyclicSignature:
        return cls(tuple(sorted(values.items(), key=lambda kv: (len(kv[0]), kv[0]))))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Cycle]:
        return (cycle for cycle, _ in self.entries)

    def __getitem__(self, cycle: Cycle) -> AlgNumber:
        for key, value in self.entries:
            if key == tuple(cycle):
                return value
        raise KeyError(cycle)

    def __contains__(self, cycle: object) -> bool:
        return any(key == cycle for key, _ in self.entries)

    def items(self) -> tuple[tuple[Cycle, AlgNumber], ...]:
        return self.entries

    def cycles(self) -> list[Cycle]:
        return [key for key, _ in self.entries]

    def values(self) -> list[AlgNumber]:
        return [value for _, value in self.entries]

    def of_length(self, k: int) -> list[AlgNumber]:
        return [value for key, value in self.entries if len(key) == k]

    def lift(self, spec: FieldSpec) -> CyclicSignature:
        return CyclicSignature(tuple((key, value.lift(spec)) for key, value in self.entries))

    def sign_rule_holds(self) -> bool:
        """Every length-k value has sign (−1)^k."""
        return all(sign(value) == (-1) ** len(key) for key, value in self.entries)

    def to_dict(self, labels: Sequence[str] | None = None) -> dict[str, str]:
        def _name(cycle: Cycle) -> str:
            return "-".join(labels[i] if labels else str(i + 1) for i in cycle)

        return {_name(key): str(value) for key, value in self.entries}


def cyclic_signature(c: CartanMatrix) -> CyclicSignature:
    """Exact product c_{i1 i2}···c_{ik i1} for every canonical simple cycle."""
    return CyclicSignature(tuple((cycle, cycle_product(c, cycle)) for cycle in simple_cycles(c)))


def polygon_identity_holds(c: CartanMatrix) -> bool:
    """For a single-cycle pattern: product of pair products = product of both long cycle values."""
    sig = cyclic_signature(c)
    longest = max((len(k) for k in sig), default=0)
    if longest < 3:
        raise ValueError("pattern graph has no cycle of length >= 3")
    long_values = sig.of_length(longest)
    if len(long_values) != 2 or any(len(k) not in (2, longest) for k in sig):
        raise ValueError("pattern graph is not a single polygon")
    lhs = c.spec.one()
    for value in sig.of_length(2):
        lhs = lhs * value
    return lhs == long_values[0] * long_values[1]


# ── Linear algebra invariants ────────────────────────────────────


def is_indecomposable(c: CartanMatrix) -> bool:
    """True iff the symmetric nonzero pattern graph is connected."""
    g = nx.Graph()
    g.add_nodes_from(range(c.size))
    g.add_edges_from(
        (i, j)
        for i, j in itertools.combinations(range(c.size), 2)
        if not c[i, j].is_zero or not c[j, i].is_zero
    )
    return c.size > 0 and nx.is_connected(g)


def components(c: CartanMatrix) -> list[list[int]]:
    g = nx.Graph()
    g.add_nodes_from(range(c.size))
    g.add_edges_from(
        (i, j)
        for i, j in itertools.combinations(range(c.size), 2)
        if not c[i, j].is_zero or not c[j, i].is_zero
    )
    return sorted(sorted(comp) for comp in nx.connected_components(g))


def determinant(c: CartanMatrix) -> AlgNumber:
    """Exact determinant by fraction-free elimination."""
    return linalg.determinant(c.entries, c.spec)


def triangle_determinant(c: CartanMatrix) -> AlgNumber:
    """8 − 2·(sum of pair products) + (sum of both triple products), for 3×3 matrices."""
    if c.size != 3:
        raise ValueError("triangle_determinant expects a 3x3 matrix")
    pairs = c.pair_product(0, 1) + c.pair_product(0, 2) + c.pair_product(1, 2)
    triples = cycle_product(c, (0, 1, 2)) + cycle_product(c, (0, 2, 1))
    return 8 - 2 * pairs + triples


class PerronType(str, enum.Enum):
    POSITIVE = "positive"
    ZERO = "zero"
    NEGATIVE = "negative"


def perron_type(c: CartanMatrix) -> PerronType:
    """M-matrix trichotomy by leading principal minors.

    Requires an indecomposable matrix with nonpositive off-diagonal entries.
    """
    if not is_indecomposable(c):
        raise ValueError("perron_type needs an indecomposable matrix")
    for i in range(c.size):
        for j in range(c.size):
            if i != j and sign(c[i, j]) > 0:
                raise ValueError(f"perron_type needs c_ij <= 0, entry ({i + 1},{j + 1}) is {c[i, j]}")
    n = c.size
    for k in range(1, n):
        minor = linalg.determinant(linalg.principal_submatrix(c.entries, range(k)), c.spec)
        if sign(minor) <= 0:
            return PerronType.NEGATIVE
    det = determinant(c)
    s = sign(det)
    if s > 0:
        return PerronType.POSITIVE
    if s == 0:
        return PerronType.ZERO
    return PerronType.NEGATIVE


def submatrix(c: CartanMatrix, indices: Sequence[int]) -> CartanMatrix:
    return CartanMatrix(c.spec, linalg.principal_submatrix(c.entries, indices))


def vertex_groups_finite(c: CartanMatrix, diagram: CoxeterDiagram) -> bool:
    """Every vertex stabilizer is finite: each indecomposable block of C[S] is of positive type."""
    if c.size != diagram.size:
        raise ValueError(f"matrix has size {c.size}, diagram {diagram.name} has {diagram.size} faces")
    for vertex in diagram.vertices:
        if any(not 0 <= idx < c.size for idx in vertex):
            raise ValueError(f"vertex {vertex} references an unknown face")
        sub = submatrix(c, vertex)
        for comp in components(sub):
            if perron_type(submatrix(sub, comp)) is not PerronType.POSITIVE:
                _log.debug(
                    "vertex %s of %s: block %s not of positive type",
                    [diagram.label(i) for i in vertex],
                    diagram.name,
                    [diagram.label(vertex[i]) for i in comp],
                )
                return False
    return True


# ── Equivalence ──────────────────────────────────────────────────


def equivalent(
    a: CartanMatrix,
    b: CartanMatrix,
    automorphisms: Iterable[Sequence[int]] | None = None,
) -> bool:
    """Positive diagonal equivalence: identical cyclic signatures.

    With ``automorphisms`` (see :func:`diagram_automorphisms`) the test also
    accepts any relabeling of ``b`` by one of them.
    """
    a, b = _common(a, b)
    sig_a = cyclic_signature(a)
    if cyclic_signature(b) == sig_a:
        return True
    for perm in automorphisms or ():
        if cyclic_signature(b.permuted(perm)) == sig_a:
            return True
    return False


def diagonal_witness(a: CartanMatrix, b: CartanMatrix) -> tuple[AlgNumber, ...] | None:
    """Positive diagonal ``d`` with ``A = diag(d)·B·diag(d)⁻¹``, or ``None``.

    The root of every component of the pattern graph gets 1; along a spanning
    tree ``d_j = d_i·B_ij/A_ij``. The result is verified entrywise.

    Direction: ``d`` conjugates ``b`` onto ``a`` (``A_ij = d_i·B_ij/d_j``), so
    ``b.conjugate(d) == a``. Swapping the arguments inverts every ``d_i``.
    """
    a, b = _common(a, b)
    spec = a.spec
    if a.pattern() != b.pattern():
        return None
    g = nx.Graph()
    g.add_nodes_from(range(a.size))
    g.add_edges_from(
        (i, j)
        for i, j in itertools.combinations(range(a.size), 2)
        if not a[i, j].is_zero or not a[j, i].is_zero
    )
    d: list[AlgNumber | None] = [None] * a.size
    for comp in sorted(nx.connected_components(g), key=min):
        root = min(comp)
        d[root] = spec.one()
        for i, j in nx.bfs_edges(g, root):
            di = d[i]
            assert di is not None
            if not a[i, j].is_zero:
                d[j] = di * b[i, j] / a[i, j]
            else:
                d[j] = di * a[j, i] / b[j, i]
    diag = tuple(x for x in d if x is not None)
    if any(sign(x) <= 0 for x in diag):
        return None
    if linalg.conjugate_by_diagonal(b.entries, diag) != a.entries:
        return None
    return diag


# ── Definability ─────────────────────────────────────────────────


@dataclass(frozen=True)
class DefinabilityReport:
    values: tuple[AlgNumber, ...]
    over_z: bool
    over_ok: Mapping[int, bool] = field(default_factory=dict)

    @property
    def generators(self) -> frozenset[AlgNumber]:
        return frozenset(self.values)


def _in_ring(x: AlgNumber, ring: QuadraticRing) -> bool:
    try:
        return is_algebraic_integer(x, ring)
    except ValueError:
        return False


def definability_generators(
    c: CartanMatrix, rings: Iterable[QuadraticRing] = ()
) -> DefinabilityReport:
    """Nonzero simple cyclic products (generators of the trace ring) and integrality flags."""
    values = tuple(v for v in cyclic_signature(c).values() if not v.is_zero)
    over_ok = {ring.d: all(_in_ring(v, ring) for v in values) for ring in rings}
    return DefinabilityReport(values, all(is_integer(v) for v in values), over_ok)
