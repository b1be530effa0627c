"""Classification of Z-definable Cartan matrices and one-parameter families.

Three entry points:

- :func:`classify_integer_classes` enumerates integer Cartan matrices for a
  simplex diagram edge by edge (every factorisation of 4cos²(π/m) into two
  positive integers), keeps the realizable ones and deduplicates by cyclic
  signature.
- :class:`ParametricMatrix` with :func:`parametric_signature`,
  :func:`solve_integrality` and :func:`verify_at` handle families whose
  entries are rational functions of one parameter ``t``.
- :func:`units_family` builds infinitely many inequivalent O_k-definable
  matrices on a polygon diagram from powers of a fundamental unit.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cmp_to_key

from sympy import divisors

from coxlib import config
from coxlib.cartan import (
    CartanMatrix,
    CoxeterDiagram,
    Cycle,
    CyclicSignature,
    PerronType,
    cyclic_signature,
    determinant,
    equivalent,
    is_indecomposable,
    pattern_cycles,
    perron_type,
    vertex_groups_finite,
)
from coxlib.numfield import (
    INTEGRAL_ORDERS,
    RATIONALS,
    AlgNumber,
    FieldSpec,
    QuadraticRing,
    cos2_value,
    is_algebraic_integer,
    is_integer,
    is_unit,
    sign,
)
from coxlib.ratfunc import PoleError, RationalFunction

_log = logging.getLogger("coxlib.enumerate")

REJECT_DECOMPOSABLE = "decomposable"
REJECT_NOT_NEGATIVE = "non-negative-type"
REJECT_VERTEX_INFINITE = "vertex-infinite"


# ── Integer classification ───────────────────────────────────────


@dataclass
class ClassificationResult:
    diagram: CoxeterDiagram
    representatives: list[CartanMatrix] = field(default_factory=list)
    signatures: list[CyclicSignature] = field(default_factory=list)
    rejected: dict[str, int] = field(default_factory=dict)
    tried: int = 0

    @property
    def count(self) -> int:
        return len(self.representatives)

    @property
    def name(self) -> str:
        return self.diagram.name


def edge_factorizations(value: int) -> list[tuple[int, int]]:
    """Ordered pairs (a, b) of positive integers with a·b = value."""
    return [(a, value // a) for a in divisors(value)]


def _edge_choices(diagram: CoxeterDiagram) -> list[tuple[int, int, list[tuple[int, int]]]]:
    choices = []
    for i, j, m in diagram.edges:
        if m not in INTEGRAL_ORDERS:
            raise ValueError(
                f"{diagram.name}: order {m} at faces {diagram.label(i)},{diagram.label(j)} "
                f"admits no integral Cartan matrix (supported: {INTEGRAL_ORDERS})"
            )
        if m == 2:
            choices.append((i, j, [(0, 0)]))
        else:
            choices.append((i, j, edge_factorizations(int(cos2_value(m).to_fraction()))))
    return choices


def _assemble(size: int, choices, picks: Sequence[tuple[int, int]]) -> CartanMatrix:
    rows = [[0] * size for _ in range(size)]
    for k in range(size):
        rows[k][k] = 2
    for (i, j, _), (a, b) in zip(choices, picks, strict=True):
        rows[i][j] = -a
        rows[j][i] = -b
    return CartanMatrix.from_rows(rows, RATIONALS)


def realizability_failure(c: CartanMatrix, diagram: CoxeterDiagram) -> str | None:
    """First failed filter (decomposable / non-negative type / vertex-infinite) or ``None``."""
    if not is_indecomposable(c):
        return REJECT_DECOMPOSABLE
    if perron_type(c) is not PerronType.NEGATIVE:
        return REJECT_NOT_NEGATIVE
    if not vertex_groups_finite(c, diagram):
        return REJECT_VERTEX_INFINITE
    return None


def _run_branch(diagram: CoxeterDiagram, choices, head: tuple[int, int]):
    """All matrices whose first edge uses ``head``; results in enumeration order."""
    accepted: list[tuple[CartanMatrix, CyclicSignature]] = []
    rejected: dict[str, int] = {}
    tried = 0
    for rest in itertools.product(*(opts for _, _, opts in choices[1:])):
        c = _assemble(diagram.size, choices, (head, *rest))
        tried += 1
        reason = realizability_failure(c, diagram)
        if reason is not None:
            rejected[reason] = rejected.get(reason, 0) + 1
            continue
        accepted.append((c, cyclic_signature(c)))
    _log.debug("%s branch %s: %d tried, %d kept", diagram.name, head, tried, len(accepted))
    return accepted, rejected, tried


def classify_integer_classes(
    diagram: CoxeterDiagram, workers: int | None = None
) -> ClassificationResult:
    """Conjugacy classes of integer Cartan matrices realizing a simplex diagram.

    Branches (one per factorisation of the first edge) run on ``workers``
    threads (default ``COXLIB_WORKERS``); the merge keeps the first matrix per
    signature in lexicographic enumeration order.
    """
    if not diagram.is_simplex:
        raise ValueError(
            f"{diagram.name} is not a simplex (nonadjacent faces); "
            "use the parametric mode (family-solve / family-verify) instead"
        )
    choices = _edge_choices(diagram)
    result = ClassificationResult(diagram)
    if not choices:
        raise ValueError(f"{diagram.name}: diagram has no face pairs")
    heads = choices[0][2]
    workers = workers or config.get_workers()
    if workers > 1 and len(heads) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            branches = list(pool.map(lambda h: _run_branch(diagram, choices, h), heads))
    else:
        branches = [_run_branch(diagram, choices, h) for h in heads]
    seen: set[CyclicSignature] = set()
    for accepted, rejected, tried in branches:
        result.tried += tried
        for reason, count in rejected.items():
            result.rejected[reason] = result.rejected.get(reason, 0) + count
        for c, sig in accepted:
            if sig in seen:
                continue
            seen.add(sig)
            result.representatives.append(
                CartanMatrix(c.spec, c.entries, f"{diagram.name}#{len(result.representatives) + 1}")
            )
            result.signatures.append(sig)
    _log.info(
        "classified %s: %d matrices tried, %d classes, rejected %s",
        diagram.name,
        result.tried,
        result.count,
        result.rejected or "none",
    )
    return result


def _permutation_cycles(c: CartanMatrix) -> dict[Cycle, AlgNumber]:
    """Simple cyclic products by exhaustive index sequences (no graph library)."""
    values: dict[Cycle, AlgNumber] = {}
    n = c.size
    for k in range(2, n + 1):
        for combo in itertools.combinations(range(n), k):
            first, rest = combo[0], combo[1:]
            for perm in itertools.permutations(rest):
                cycle = (first, *perm)
                value = c.spec.one()
                for a, b in zip(cycle, cycle[1:] + cycle[:1], strict=True):
                    value = value * c[a, b]
                if not value.is_zero:
                    values[cycle] = value
    return values


def brute_force_class_count(diagram: CoxeterDiagram) -> int:
    """Class count from all bounded integer entry pairs with the forced products.

    Independent of :func:`classify_integer_classes`: entries range over
    ``1..P`` on each edge with product ``P``; cyclic products come from
    exhaustive index permutations.
    """
    edges = []
    for i, j, m in diagram.edges:
        if m not in INTEGRAL_ORDERS:
            raise ValueError(f"order {m} admits no integral Cartan matrix")
        target = int(cos2_value(m).to_fraction())
        if target == 0:
            edges.append((i, j, [(0, 0)]))
        else:
            edges.append(
                (
                    i,
                    j,
                    [
                        (a, b)
                        for a in range(1, target + 1)
                        for b in range(1, target + 1)
                        if a * b == target
                    ],
                )
            )
    classes: set[tuple[tuple[Cycle, AlgNumber], ...]] = set()
    for picks in itertools.product(*(opts for _, _, opts in edges)):
        rows = [[2 if r == s else 0 for s in range(diagram.size)] for r in range(diagram.size)]
        for (i, j, _), (a, b) in zip(edges, picks, strict=True):
            rows[i][j], rows[j][i] = -a, -b
        c = CartanMatrix.from_rows(rows, RATIONALS)
        if realizability_failure(c, diagram) is None:
            classes.add(tuple(sorted(_permutation_cycles(c).items())))
    return len(classes)


# ── One-parameter families ───────────────────────────────────────


@dataclass(frozen=True)
class ParameterDomain:
    """Interval of admissible t; ``None`` bounds are infinite."""

    lower: AlgNumber | None = None
    upper: AlgNumber | None = None
    lower_open: bool = True
    upper_open: bool = True

    def contains(self, t0: AlgNumber) -> bool:
        if self.lower is not None:
            s = sign(t0 - self.lower.lift(t0.spec))
            if s < 0 or (s == 0 and self.lower_open):
                return False
        if self.upper is not None:
            s = sign(self.upper.lift(t0.spec) - t0)
            if s < 0 or (s == 0 and self.upper_open):
                return False
        return True

    def __str__(self) -> str:
        lo = "-inf" if self.lower is None else str(self.lower)
        hi = "+inf" if self.upper is None else str(self.upper)
        left = "(" if self.lower is None or self.lower_open else "["
        right = ")" if self.upper is None or self.upper_open else "]"
        return f"{left}{lo}, {hi}{right}"


@dataclass(frozen=True)
class ParametricMatrix:
    """Cartan matrix whose entries are rational functions of ``t``.

    ``definitions`` keeps named subexpressions (source text) for round trips;
    ``sample`` is an in-domain parameter value used for spot checks.
    """

    spec: FieldSpec
    entries: tuple[tuple[RationalFunction, ...], ...]
    domain: ParameterDomain = field(default_factory=ParameterDomain)
    name: str = ""
    definitions: tuple[tuple[str, str], ...] = ()
    sample: AlgNumber | None = None

    def __post_init__(self) -> None:
        n = len(self.entries)
        two = RationalFunction.constant(2, self.spec)
        rows = []
        for i, row in enumerate(self.entries):
            if len(row) != n:
                raise ValueError(f"family matrix must be square, row {i + 1} has {len(row)} entries")
            row = tuple(
                x if isinstance(x, RationalFunction) else RationalFunction.constant(x, self.spec)
                for x in row
            )
            if row[i] != two:
                raise ValueError(f"diagonal entry ({i + 1},{i + 1}) is not identically 2")
            rows.append(row)
        object.__setattr__(self, "entries", tuple(rows))

    @property
    def size(self) -> int:
        return len(self.entries)

    def pattern(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(
            tuple(i != j and not x.is_zero for j, x in enumerate(row))
            for i, row in enumerate(self.entries)
        )

    def at(self, t0: AlgNumber | int) -> CartanMatrix:
        """Exact evaluation; :class:`PoleError` at a pole of an entry."""
        t = t0 if isinstance(t0, AlgNumber) else self.spec.rational(t0)
        t = t.lift(self.spec)
        return CartanMatrix(
            self.spec,
            tuple(tuple(x.evaluate(t) for x in row) for row in self.entries),
            f"{self.name}(t={t})",
        )


def parametric_signature(p: ParametricMatrix) -> dict[Cycle, RationalFunction]:
    """Reduced rational-function cyclic products of the family."""
    out: dict[Cycle, RationalFunction] = {}
    for cycle in pattern_cycles(p.pattern()):
        value = RationalFunction.constant(1, p.spec)
        for a, b in zip(cycle, cycle[1:] + cycle[:1], strict=True):
            value = value * p.entries[a][b]
        out[cycle] = value
    return out


@dataclass(frozen=True)
class FamilyPoint:
    """A parameter value (``None`` = the whole domain) with its signature."""

    t: AlgNumber | None
    signature: CyclicSignature
    over_z: bool = True
    matrix: CartanMatrix | None = None


def _signature_integral(sig: CyclicSignature) -> bool:
    return all(is_integer(v) for v in sig.values()) and sig.sign_rule_holds()


def verify_at(p: ParametricMatrix, t0: AlgNumber | int) -> FamilyPoint:
    """Evaluate every entry and simple cyclic product exactly at ``t0``."""
    t = t0 if isinstance(t0, AlgNumber) else p.spec.rational(t0)
    t = t.lift(p.spec)
    if not p.domain.contains(t):
        raise ValueError(f"t = {t} lies outside the domain {p.domain}")
    matrix = p.at(t)
    sig = cyclic_signature(matrix)
    over_z = all(is_integer(v) for v in sig.values())
    return FamilyPoint(t, sig, over_z, matrix)


def _monomial_pair(functions: Mapping[Cycle, RationalFunction]):
    monomials = {}
    for cycle, f in functions.items():
        mono = f.as_monomial()
        if mono is not None and mono[1] in (1, -1):
            monomials[cycle] = mono
    for (cf, (af, kf)), (cg, (ag, kg)) in itertools.combinations(monomials.items(), 2):
        if kf == 1 and kg == -1:
            return (cf, af), (cg, ag)
        if kf == -1 and kg == 1:
            return (cg, ag), (cf, af)
    return None


def solve_integrality(p: ParametricMatrix) -> list[FamilyPoint]:
    """All t in the domain making every simple cyclic product a correctly signed integer.

    Needs two products of the form ``f = α·t`` and ``g = β/t``; since ``f·g``
    is constant, integral values of f are divisors of ``αβ``. Every candidate
    is checked against all products, so further nonconstant products are
    allowed. A family with only constant products is either integral on the
    whole domain (one point with ``t = None``) or nowhere.
    """
    psig = parametric_signature(p)
    constants = {c: f for c, f in psig.items() if f.is_constant}
    for cycle, f in constants.items():
        value = f.constant_value()
        if not is_integer(value) or sign(value) != (-1) ** len(cycle):
            _log.info("%s: constant product %s = %s rules out integrality", p.name, cycle, value)
            return []
    if len(constants) == len(psig):
        sig = CyclicSignature.from_mapping({c: f.constant_value() for c, f in psig.items()})
        return [FamilyPoint(None, sig, True)]
    pair = _monomial_pair({c: f for c, f in psig.items() if not f.is_constant})
    if pair is None:
        raise ValueError(
            f"{p.name or 'family'}: cyclic products are not of the form α·t, β/t; "
            "use verify_at for individual parameter values"
        )
    (_, alpha), (_, beta) = pair
    product = alpha * beta
    if not is_integer(product) or product.is_zero:
        return []
    bound = abs(product.to_fraction().numerator)
    candidates: list[AlgNumber] = []
    for n in divisors(bound):
        for value in (n, -n):
            t = p.spec.rational(value) / alpha
            if t not in candidates:
                candidates.append(t)
    solutions: list[FamilyPoint] = []
    for t in candidates:
        if not p.domain.contains(t):
            continue
        try:
            point = verify_at(p, t)
        except PoleError:
            continue
        if _signature_integral(point.signature):
            solutions.append(point)
    solutions.sort(key=cmp_to_key(lambda x, y: sign(x.t - y.t)))
    _log.info(
        "%s: %d integral parameter values %s",
        p.name or "family",
        len(solutions),
        [str(pt.t) for pt in solutions],
    )
    return solutions


# ── Unit families over O_k ───────────────────────────────────────


@dataclass(frozen=True)
class UnitFamilySpec:
    diagram: CoxeterDiagram
    ring: QuadraticRing
    unit: AlgNumber
    count: int

    def __post_init__(self) -> None:
        if self.count < 1:
            raise ValueError("count must be at least 1")
        if not is_unit(self.unit, self.ring):
            raise ValueError(f"{self.unit} is not a unit of {self.ring}")
        if not self.unit > 1:
            raise ValueError(f"unit {self.unit} must be > 1")


@dataclass
class UnitFamilyResult:
    matrices: list[CartanMatrix] = field(default_factory=list)
    exponents: list[int] = field(default_factory=list)
    skipped: list[int] = field(default_factory=list)


def polygon_order(diagram: CoxeterDiagram) -> list[int]:
    """Faces in cycle order when the Coxeter graph is a single polygon."""
    g = diagram.coxeter_graph()
    if diagram.size < 3 or any(deg != 2 for _, deg in g.degree()):
        raise ValueError(f"{diagram.name}: Coxeter graph is not a polygon")
    order = [0]
    prev, current = None, 0
    while True:
        nxt = min(n for n in g.neighbors(current) if n != prev)
        if nxt == 0:
            break
        order.append(nxt)
        prev, current = current, nxt
        if len(order) > diagram.size:
            raise ValueError(f"{diagram.name}: Coxeter graph is not a polygon")
    if len(order) != diagram.size:
        raise ValueError(f"{diagram.name}: Coxeter graph is not connected")
    return order


def polygon_cartan_matrix(diagram: CoxeterDiagram, u: AlgNumber) -> CartanMatrix:
    """Cartan matrix with (−u, −cos2/u) on the first cycle edge and (−1, −cos2) elsewhere.

    Non-cycle pairs of order 2 get zeros.
    """
    spec = u.spec
    cycle = polygon_order(diagram)
    rows = [[spec.zero() for _ in range(diagram.size)] for _ in range(diagram.size)]
    for k in range(diagram.size):
        rows[k][k] = spec.rational(2)
    for pos, a in enumerate(cycle):
        b = cycle[(pos + 1) % len(cycle)]
        m = diagram.order(a, b)
        assert m is not None
        value = cos2_value(m, spec)
        if pos == 0:
            rows[a][b], rows[b][a] = -u, -value / u
        elif pos == len(cycle) - 1:
            # closing edge (i_{n+1}, i_1): −1 above the diagonal of the cycle order
            rows[b][a], rows[a][b] = -spec.one(), -value
        else:
            rows[a][b], rows[b][a] = -spec.one(), -value
    for i, j, m in diagram.edges:
        if m == 2 and not (rows[i][j].is_zero and rows[j][i].is_zero):
            raise ValueError(f"{diagram.name}: order-2 pair on the polygon")
    return CartanMatrix.from_rows(rows, spec, f"{diagram.name}(u={u})")


def units_family(family: UnitFamilySpec) -> UnitFamilyResult:
    """Matrices for u = ε¹..ε^N; zero-determinant values of u are skipped and reported."""
    result = UnitFamilyResult()
    u = family.unit
    power = family.unit.spec.one()
    for k in range(1, family.count + 1):
        power = power * u
        c = polygon_cartan_matrix(family.diagram, power)
        values = cyclic_signature(c).values()
        if not all(is_algebraic_integer(v, family.ring) for v in values):
            raise ValueError(f"cyclic products at u = ε^{k} are not integral in {family.ring}")
        if determinant(c).is_zero:
            _log.warning("%s: determinant vanishes at u = ε^%d, skipped", family.diagram.name, k)
            result.skipped.append(k)
            continue
        if any(equivalent(c, other) for other in result.matrices):
            raise ValueError(f"u = ε^{k} repeats an earlier class")
        result.matrices.append(c)
        result.exponents.append(k)
    _log.info(
        "%s over %s: %d matrices, %d skipped",
        family.diagram.name,
        family.ring,
        len(result.matrices),
        len(result.skipped),
    )
    return result
