"""Explicit reflection representations of a Cartan matrix.

``C = A·V`` is factored exactly; row ``i`` of ``A`` is the covector α_i,
column ``j`` of ``V`` the vector v_j, so that ``c_ij = α_i(v_j)``. The
reflections ``σ_i = I − v_i α_i`` act on the r-dimensional space, r = rank C.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass, field

from coxlib import config, linalg
from coxlib.cartan import CartanMatrix, CoxeterDiagram, definability_generators
from coxlib.linalg import Matrix
from coxlib.numfield import AlgNumber, FieldSpec, sign

_log = logging.getLogger("coxlib.realize")


@dataclass(frozen=True)
class Realization:
    cartan: CartanMatrix
    rank: int
    covectors: Matrix  # m × r, rows α_i
    vectors: Matrix  # r × m, columns v_j
    reflections: tuple[Matrix, ...]

    @property
    def spec(self) -> FieldSpec:
        return self.cartan.spec

    @property
    def size(self) -> int:
        return self.cartan.size


@dataclass(frozen=True)
class GroupElement:
    matrix: Matrix
    word: tuple[int, ...] = ()

    @property
    def length(self) -> int:
        return len(self.word)


def rank_factorize(c: CartanMatrix) -> tuple[Matrix, Matrix, int]:
    """``(A, V, r)`` with ``C = A·V``; full rank uses ``A = I``, ``V = C``."""
    spec = c.spec
    reduced, pivots = linalg.row_echelon(c.entries, spec)
    r = len(pivots)
    if r == c.size:
        return linalg.identity(r, spec), c.entries, r
    a = tuple(tuple(row[p] for p in pivots) for row in c.entries)
    v = reduced[:r]
    return a, v, r


def build_reflections(covectors: Matrix, vectors: Matrix, spec: FieldSpec) -> tuple[Matrix, ...]:
    """σ_i = I − v_i α_i; every α_i(v_i) must equal 2."""
    m = len(covectors)
    r = len(vectors)
    out = []
    for i in range(m):
        alpha = covectors[i]
        v = [vectors[k][i] for k in range(r)]
        pairing = spec.zero()
        for x, y in zip(alpha, v, strict=True):
            pairing = pairing + x * y
        if pairing != 2:
            raise ValueError(f"alpha_{i + 1}(v_{i + 1}) = {pairing}, expected 2")
        out.append(
            tuple(
                tuple(
                    (spec.one() if k == col else spec.zero()) - v[k] * alpha[col]
                    for col in range(r)
                )
                for k in range(r)
            )
        )
    return tuple(out)


def realize(c: CartanMatrix) -> Realization:
    a, v, r = rank_factorize(c)
    reflections = build_reflections(a, v, c.spec)
    return Realization(c, r, a, v, reflections)


def reconstructed_cartan(real: Realization) -> Matrix:
    """α_i(v_j) recomputed from the factors."""
    return linalg.mat_mul(real.covectors, real.vectors, real.spec)


# ── Relations ────────────────────────────────────────────────────


@dataclass(frozen=True)
class RelationCheck:
    i: int
    j: int
    kind: str  # "order", "commute", "infinite"
    order: int | None
    holds: bool
    detail: str = ""


@dataclass
class RelationReport:
    checks: list[RelationCheck] = field(default_factory=list)

    @property
    def failures(self) -> list[RelationCheck]:
        return [c for c in self.checks if not c.holds]

    @property
    def ok(self) -> bool:
        return not self.failures


def pair_product(real: Realization, i: int, j: int) -> Matrix:
    return linalg.mat_mul(real.reflections[i], real.reflections[j], real.spec)


def pair_trace(real: Realization, i: int, j: int) -> AlgNumber:
    """tr(σ_iσ_j); equals r − 4 + c_ij c_ji."""
    return linalg.trace(pair_product(real, i, j), real.spec)


def pair_traces_match(real: Realization) -> bool:
    """tr(σ_iσ_j) = r − 4 + c_ij c_ji for every pair i ≠ j."""
    c = real.cartan
    return all(
        pair_trace(real, i, j) == real.rank - 4 + c.pair_product(i, j)
        for i in range(real.size)
        for j in range(real.size)
        if i != j
    )


def trace_ring_generators(c: CartanMatrix) -> tuple[AlgNumber, ...]:
    """Nonzero simple cyclic products; they generate the ring Z[tr Γ]."""
    return definability_generators(c).values


def check_relations(
    real: Realization, diagram: CoxeterDiagram, max_power: int | None = None
) -> RelationReport:
    """Verify (σ_sσ_t)^m = I for adjacent pairs, and no power ≤ k is I for nonadjacent ones."""
    if diagram.size != real.size:
        raise ValueError(f"diagram {diagram.name} has {diagram.size} faces, realization {real.size}")
    spec = real.spec
    ident = linalg.identity(real.rank, spec)
    bound = max_power or config.get_max_power()
    report = RelationReport()
    for i in range(real.size):
        for j in range(i + 1, real.size):
            g = pair_product(real, i, j)
            m = diagram.order(i, j)
            if m is not None:
                kind = "commute" if m == 2 else "order"
                holds = linalg.mat_pow(g, m, spec) == ident
                report.checks.append(RelationCheck(i, j, kind, m, holds))
                continue
            power = g
            first_identity = None
            for k in range(1, bound + 1):
                if power == ident:
                    first_identity = k
                    break
                power = linalg.mat_mul(power, g, spec)
            tr = linalg.trace(g, spec)
            detail = f"tr = {tr}, r = {real.rank}"
            holds = first_identity is None
            if holds and sign(tr - real.rank) <= 0:
                detail += " (trace does not exceed r)"
            report.checks.append(RelationCheck(i, j, "infinite", None, holds, detail))
    for check in report.failures:
        _log.info(
            "relation failed at (%s,%s) kind=%s order=%s",
            diagram.label(check.i),
            diagram.label(check.j),
            check.kind,
            check.order,
        )
    return report


# ── Word balls ───────────────────────────────────────────────────


def word_ball(real: Realization, depth: int) -> list[GroupElement]:
    """Distinct elements of word length ≤ depth, breadth-first.

    The element for word (i1, ..., ik) is σ_i1···σ_ik; each matrix is kept
    once with the first (shortest, lexicographically least) word reaching it.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    spec = real.spec
    start = GroupElement(linalg.identity(real.rank, spec), ())
    seen: dict[Matrix, GroupElement] = {start.matrix: start}
    frontier = deque([start])
    for _ in range(depth):
        next_frontier: deque[GroupElement] = deque()
        for element in frontier:
            for i, sigma in enumerate(real.reflections):
                matrix = linalg.mat_mul(element.matrix, sigma, spec)
                if matrix in seen:
                    continue
                child = GroupElement(matrix, element.word + (i,))
                seen[matrix] = child
                next_frontier.append(child)
        frontier = next_frontier
        if not frontier:
            break
    return list(seen.values())


def element_from_word(real: Realization, word: Sequence[int]) -> GroupElement:
    matrix = linalg.identity(real.rank, real.spec)
    for i in word:
        matrix = linalg.mat_mul(matrix, real.reflections[i], real.spec)
    return GroupElement(matrix, tuple(word))


# ── Traces ───────────────────────────────────────────────────────


def adjoint_trace(g: GroupElement | Matrix, spec: FieldSpec | None = None) -> AlgNumber:
    """tr(g)·tr(g⁻¹) − 1, the trace of g acting on sl(n+1)."""
    matrix = g.matrix if isinstance(g, GroupElement) else g
    spec = spec or matrix[0][0].spec
    det = linalg.determinant(matrix, spec)
    if det.is_zero:
        raise ValueError("adjoint_trace needs an invertible matrix")
    if det != 1 and det != -1:
        raise ValueError(f"adjoint_trace needs det = ±1, got {det}")
    inv = linalg.inverse(matrix, spec)
    return linalg.trace(matrix, spec) * linalg.trace(inv, spec) - 1


def rotation_block(b: int, k: int, spec: FieldSpec | None = None) -> Matrix:
    """A_θ ⊕ I_k with θ = 2π/b, b ∈ {1, 2, 3, 4, 6}.

    b = 3 and b = 6 need √3 in ``spec``.
    """
    if b not in (1, 2, 3, 4, 6):
        raise ValueError(f"rotation order {b} not in (1, 2, 3, 4, 6)")
    spec = spec or (FieldSpec.of(3) if b in (3, 6) else FieldSpec())
    half = spec.rational(1) / 2
    if b == 1:
        c, s = spec.one(), spec.zero()
    elif b == 2:
        c, s = -spec.one(), spec.zero()
    elif b == 4:
        c, s = spec.zero(), spec.one()
    else:
        c = -half if b == 3 else half
        s = spec.sqrt(3) / 2
    n = 2 + k
    rows = [list(row) for row in linalg.identity(n, spec)]
    rows[0][0], rows[0][1] = c, -s
    rows[1][0], rows[1][1] = s, c
    return linalg.as_matrix(rows)
