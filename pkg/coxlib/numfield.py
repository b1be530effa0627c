"""Exact arithmetic over Q and real biquadratic fields Q(√a, √b).

Every scalar in coxlib is an :class:`AlgNumber`: four rational coordinates with
respect to the basis ``{1, √a, √b, √(ab)}`` of a fixed :class:`FieldSpec`.
Fewer radicands simply leave the trailing coordinates at zero. The real
embedding is fixed once and for all (√a, √b are the positive roots), so
:func:`sign` is exact: zero is decided symbolically, everything else by
rational interval refinement of the radicals.

Conventions:

- Rationals are :class:`fractions.Fraction` (arbitrary precision, reduced,
  positive denominator).
- Arithmetic between numbers of different :class:`FieldSpec` raises
  :class:`FieldMismatchError`; plain ``int``/``Fraction`` operands are embedded
  into the other operand's field.
- Values are immutable and hashable.
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from sympy import factorint

Scalar = Union[int, Fraction, "AlgNumber"]

#: Orders m with a closed form for 4cos²(π/m) in a biquadratic field.
SUPPORTED_ORDERS = (2, 3, 4, 5, 6)

#: Orders whose 4cos²(π/m) is a rational integer.
INTEGRAL_ORDERS = (2, 3, 4, 6)

_INITIAL_BITS = 16


class FieldMismatchError(ValueError):
    """Operands live in different fields (or a radical is not in the field)."""


def is_squarefree(n: int) -> bool:
    """True for integers > 1 without a repeated prime factor."""
    return n > 1 and all(exp == 1 for exp in factorint(n).values())


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Write ``n > 0`` as ``k² · d`` with squarefree ``d`` (``d = 1`` for squares)."""
    k, d = 1, 1
    for prime, exp in factorint(n).items():
        k *= prime ** (exp // 2)
        if exp % 2:
            d *= prime
    return k, d


# ── Field specification ──────────────────────────────────────────


@dataclass(frozen=True)
class FieldSpec:
    """The ambient field Q, Q(√a) or Q(√a, √b); radicands are stored sorted."""

    radicands: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        rads = tuple(sorted(int(r) for r in self.radicands))
        if len(rads) > 2:
            raise ValueError(f"at most two radicands supported, got {rads}")
        for r in rads:
            if not is_squarefree(r):
                raise ValueError(f"radicand {r} is not a squarefree integer > 1")
        if len(set(rads)) != len(rads):
            raise ValueError(f"radicands must be distinct, got {rads}")
        object.__setattr__(self, "radicands", rads)

    @classmethod
    def of(cls, *radicands: int) -> FieldSpec:
        return cls(tuple(radicands))

    @property
    def degree(self) -> int:
        return 2 ** len(self.radicands)

    @property
    def a(self) -> int:
        return self.radicands[0] if self.radicands else 0

    @property
    def b(self) -> int:
        return self.radicands[1] if len(self.radicands) > 1 else 0

    def basis_radicands(self) -> tuple[int, ...]:
        """Values n such that the basis element at that index is √n (1 for the unit)."""
        if not self.radicands:
            return (1,)
        if len(self.radicands) == 1:
            return (1, self.a)
        return (1, self.a, self.b, self.a * self.b)

    def contains(self, other: FieldSpec) -> bool:
        """True if ``other`` embeds coordinate-wise into this field."""
        return set(other.radicands) <= set(self.radicands)

    def zero(self) -> AlgNumber:
        return AlgNumber(self)

    def one(self) -> AlgNumber:
        return AlgNumber(self, (Fraction(1),))

    def rational(self, value: int | Fraction) -> AlgNumber:
        return AlgNumber(self, (Fraction(value),))

    def sqrt(self, d: int) -> AlgNumber:
        """Exact √d as an element of this field.

        ``d`` may be a square times 1, a radicand, or the product of both
        radicands; anything else is not in the field.
        """
        if d < 0:
            raise FieldMismatchError(f"sqrt({d}) is not real")
        if d == 0:
            return self.zero()
        k, core = squarefree_decomposition(d)
        if core == 1:
            return self.rational(k)
        bases = self.basis_radicands()
        for idx, n in enumerate(bases[1:], start=1):
            m, n_core = squarefree_decomposition(n)
            if n_core == core:
                # √d = k·√core = (k/m)·√n
                coords = [Fraction(0)] * 4
                coords[idx] = Fraction(k, m)
                return AlgNumber(self, tuple(coords))
        raise FieldMismatchError(f"sqrt({d}) does not lie in {self}")

    def __str__(self) -> str:
        if not self.radicands:
            return "Q"
        return "Q(" + ",".join(f"sqrt({r})" for r in self.radicands) + ")"


RATIONALS = FieldSpec()


# ── Field elements ───────────────────────────────────────────────


def _pad(coords: Iterable[int | Fraction]) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    values = [Fraction(c) for c in coords]
    if len(values) > 4:
        raise ValueError("an AlgNumber has at most four coordinates")
    values += [Fraction(0)] * (4 - len(values))
    return values[0], values[1], values[2], values[3]


@dataclass(frozen=True, eq=False)
class AlgNumber:
    """Element ``p + q√a + r√b + s√(ab)`` of ``spec``."""

    spec: FieldSpec
    coords: tuple[Fraction, Fraction, Fraction, Fraction] = (
        Fraction(0),
        Fraction(0),
        Fraction(0),
        Fraction(0),
    )

    def __post_init__(self) -> None:
        coords = _pad(self.coords)
        degree = self.spec.degree
        if any(c != 0 for c in coords[degree:]):
            raise ValueError(f"coordinates {coords} exceed the basis of {self.spec}")
        object.__setattr__(self, "coords", coords)

    # -- construction / coercion --

    @classmethod
    def rational(cls, value: int | Fraction, spec: FieldSpec = RATIONALS) -> AlgNumber:
        return cls(spec, (Fraction(value),))

    def _coerce(self, other: Scalar) -> AlgNumber:
        if isinstance(other, AlgNumber):
            if other.spec != self.spec:
                raise FieldMismatchError(f"cannot combine {self.spec} with {other.spec}")
            return other
        if isinstance(other, (int, Fraction)):
            return AlgNumber(self.spec, (Fraction(other),))
        return NotImplemented  # type: ignore[return-value]

    def lift(self, spec: FieldSpec) -> AlgNumber:
        """Embed into a field containing this one (re-indexing the basis)."""
        if spec == self.spec:
            return self
        if not spec.contains(self.spec):
            raise FieldMismatchError(f"{self.spec} does not embed into {spec}")
        result = spec.rational(self.coords[0])
        for coeff, n in zip(self.coords[1:], self.spec.basis_radicands()[1:], strict=False):
            if coeff:
                result = result + spec.sqrt(n) * coeff
        return result

    # -- predicates --

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    # -- arithmetic --

    def __neg__(self) -> AlgNumber:
        return AlgNumber(self.spec, tuple(-c for c in self.coords))

    def __pos__(self) -> AlgNumber:
        return self

    def __add__(self, other: Scalar) -> AlgNumber:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return AlgNumber(self.spec, tuple(x + y for x, y in zip(self.coords, o.coords, strict=True)))

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> AlgNumber:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return AlgNumber(self.spec, tuple(x - y for x, y in zip(self.coords, o.coords, strict=True)))

    def __rsub__(self, other: Scalar) -> AlgNumber:
        return -self + other

    def __mul__(self, other: Scalar) -> AlgNumber:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return multiply(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> AlgNumber:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return multiply(self, invert(o))

    def __rtruediv__(self, other: Scalar) -> AlgNumber:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return multiply(o, invert(self))

    def __pow__(self, exponent: int) -> AlgNumber:
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else invert(self)
        result = self.spec.one()
        for _ in range(abs(exponent)):
            result = multiply(result, base)
        return result

    # -- comparison --

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.coords[0] == other
        if not isinstance(other, AlgNumber):
            return NotImplemented
        if self.spec != other.spec:
            return self.is_rational and other.is_rational and self.coords[0] == other.coords[0]
        return self.coords == other.coords

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(self.coords[0])
        return hash((self.spec, self.coords))

    def __lt__(self, other: Scalar) -> bool:
        return sign(self - other) < 0

    def __le__(self, other: Scalar) -> bool:
        return sign(self - other) <= 0

    def __gt__(self, other: Scalar) -> bool:
        return sign(self - other) > 0

    def __ge__(self, other: Scalar) -> bool:
        return sign(self - other) >= 0

    def __abs__(self) -> AlgNumber:
        return -self if sign(self) < 0 else self

    def __bool__(self) -> bool:
        return not self.is_zero

    # -- conversion --

    def __float__(self) -> float:
        # nur für die Darstellung (render); nie für Entscheidungen
        total = 0.0
        for coeff, n in zip(self.coords, self.spec.basis_radicands(), strict=False):
            if coeff:
                total += float(coeff) * math.sqrt(n)
        return total

    def conjugates(self) -> list[AlgNumber]:
        """All Galois conjugates (sign flips of √a and √b), self first."""
        p, q, r, s = self.coords
        if len(self.spec.radicands) == 0:
            return [self]
        if len(self.spec.radicands) == 1:
            return [self, AlgNumber(self.spec, (p, -q))]
        return [
            self,
            AlgNumber(self.spec, (p, -q, r, -s)),
            AlgNumber(self.spec, (p, q, -r, -s)),
            AlgNumber(self.spec, (p, -q, -r, s)),
        ]

    def norm(self) -> Fraction:
        """Absolute field norm to Q."""
        product = self.spec.one()
        for c in self.conjugates():
            product = multiply(product, c)
        return product.to_fraction()

    def __str__(self) -> str:
        terms: list[tuple[Fraction, int]] = [
            (c, n) for c, n in zip(self.coords, self.spec.basis_radicands(), strict=False) if c
        ]
        if not terms:
            return "0"
        out = ""
        for idx, (coeff, n) in enumerate(terms):
            negative = coeff < 0
            mag = -coeff if negative else coeff
            if n == 1:
                body = str(mag)
            elif mag == 1:
                body = f"sqrt({n})"
            elif mag.denominator == 1:
                body = f"{mag.numerator}*sqrt({n})"
            elif mag.numerator == 1:
                body = f"sqrt({n})/{mag.denominator}"
            else:
                body = f"{mag.numerator}*sqrt({n})/{mag.denominator}"
            if idx == 0:
                out = f"-{body}" if negative else body
            else:
                out += f" - {body}" if negative else f" + {body}"
        return out

    def __repr__(self) -> str:
        return f"AlgNumber({self}, {self.spec})"


# ── Operations ───────────────────────────────────────────────────


def multiply(x: AlgNumber, y: AlgNumber) -> AlgNumber:
    """Exact product; both factors must share one FieldSpec."""
    if x.spec != y.spec:
        raise FieldMismatchError(f"cannot multiply {x.spec} by {y.spec}")
    spec = x.spec
    p1, q1, r1, s1 = x.coords
    p2, q2, r2, s2 = y.coords
    nrad = len(spec.radicands)
    if nrad == 0:
        return AlgNumber(spec, (p1 * p2,))
    a = spec.a
    if nrad == 1:
        return AlgNumber(spec, (p1 * p2 + a * q1 * q2, p1 * q2 + q1 * p2))
    b = spec.b
    return AlgNumber(
        spec,
        (
            p1 * p2 + a * q1 * q2 + b * r1 * r2 + a * b * s1 * s2,
            p1 * q2 + q1 * p2 + b * (r1 * s2 + s1 * r2),
            p1 * r2 + r1 * p2 + a * (q1 * s2 + s1 * q2),
            p1 * s2 + s1 * p2 + q1 * r2 + r1 * q2,
        ),
    )


def invert(x: AlgNumber) -> AlgNumber:
    """Multiplicative inverse via conjugates; ``ZeroDivisionError`` for zero."""
    if x.is_zero:
        raise ZeroDivisionError(f"cannot invert zero in {x.spec}")
    spec = x.spec
    p, q, r, s = x.coords
    nrad = len(spec.radicands)
    if nrad == 0:
        return AlgNumber(spec, (1 / p,))
    # Zuerst √b eliminieren, dann √a.
    numerator = spec.one()
    y = x
    if nrad == 2:
        conj_b = AlgNumber(spec, (p, q, -r, -s))
        numerator = conj_b
        y = multiply(x, conj_b)
    yp, yq = y.coords[0], y.coords[1]
    conj_a = AlgNumber(spec, (yp, -yq))
    numerator = multiply(numerator, conj_a)
    n = multiply(y, conj_a).coords[0]
    return AlgNumber(spec, tuple(c / n for c in numerator.coords))


def _sqrt_bounds(n: int, bits: int) -> tuple[Fraction, Fraction]:
    """Rational enclosure ``lo <= √n <= hi`` of width ``2**-bits``."""
    scale = 1 << bits
    root = math.isqrt(n * scale * scale)
    return Fraction(root, scale), Fraction(root + 1, scale)


def _enclosure(x: AlgNumber, bits: int) -> tuple[Fraction, Fraction]:
    lo = hi = x.coords[0]
    for coeff, n in zip(x.coords[1:], x.spec.basis_radicands()[1:], strict=False):
        if not coeff:
            continue
        r_lo, r_hi = _sqrt_bounds(n, bits)
        if coeff > 0:
            lo += coeff * r_lo
            hi += coeff * r_hi
        else:
            lo += coeff * r_hi
            hi += coeff * r_lo
    return lo, hi


def sign(x: AlgNumber) -> int:
    """Exact sign (-1, 0, 1) in the fixed real embedding.

    Zero is decided on the coordinates (the basis is linearly independent over
    Q); a nonzero value is separated from 0 by doubling the precision of the
    radical enclosures until the interval excludes 0.
    """
    if x.is_zero:
        return 0
    if x.is_rational:
        return 1 if x.coords[0] > 0 else -1
    bits = _INITIAL_BITS
    while True:
        lo, hi = _enclosure(x, bits)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits *= 2


def cos2_value(m: int, spec: FieldSpec = RATIONALS) -> AlgNumber:
    """Exact 4cos²(π/m) for the supported edge orders."""
    if m == 2:
        return spec.zero()
    if m == 3:
        return spec.rational(1)
    if m == 4:
        return spec.rational(2)
    if m == 6:
        return spec.rational(3)
    if m == 5:
        # 4cos²(π/5) = (3 + √5)/2, root of v² − 3v + 1
        return (spec.sqrt(5) + 3) / 2
    raise ValueError(f"unsupported edge order {m}; supported orders are {SUPPORTED_ORDERS}")


def is_integer(x: AlgNumber) -> bool:
    """True iff ``x`` is a rational integer."""
    return x.is_rational and x.coords[0].denominator == 1


# ── Quadratic rings of integers ──────────────────────────────────


@dataclass(frozen=True)
class QuadraticRing:
    """The ring of integers O_k of k = Q(√d)."""

    d: int

    def __post_init__(self) -> None:
        if not is_squarefree(self.d):
            raise ValueError(f"d = {self.d} is not a squarefree integer > 1")

    def __str__(self) -> str:
        return f"O(Q(sqrt({self.d})))"


def quadratic_coordinates(x: AlgNumber, ring: QuadraticRing) -> tuple[Fraction, Fraction]:
    """Return ``(p, q)`` with ``x = p + q√d``; error if x is not in Q(√d)."""
    p = x.coords[0]
    q = Fraction(0)
    for coeff, n in zip(x.coords[1:], x.spec.basis_radicands()[1:], strict=False):
        if not coeff:
            continue
        k, core = squarefree_decomposition(n)
        if core != ring.d:
            raise ValueError(f"{x} does not lie in Q(sqrt({ring.d}))")
        q += coeff * k
    return p, q


def is_algebraic_integer(x: AlgNumber, ring: QuadraticRing) -> bool:
    """O_k membership: trace 2p and norm p² − dq² both integral."""
    p, q = quadratic_coordinates(x, ring)
    trace = 2 * p
    norm = p * p - ring.d * q * q
    return trace.denominator == 1 and norm.denominator == 1


def is_unit(x: AlgNumber, ring: QuadraticRing) -> bool:
    """Algebraic integer of norm ±1."""
    if not is_algebraic_integer(x, ring):
        return False
    p, q = quadratic_coordinates(x, ring)
    return abs(p * p - ring.d * q * q) == 1


def fundamental_unit(ring: QuadraticRing, spec: FieldSpec | None = None, limit: int = 10**6) -> AlgNumber:
    """Smallest unit ε > 1 of O_k, found by searching y in x² − d·y² = ±1 (±4 for d ≡ 1 mod 4)."""
    spec = spec or FieldSpec.of(ring.d)
    root = spec.sqrt(ring.d)
    targets = (-4, 4) if ring.d % 4 == 1 else (-1, 1)
    for y in range(1, limit):
        for target in targets:
            x2 = ring.d * y * y + target
            if x2 <= 0:
                continue
            x = math.isqrt(x2)
            if x * x == x2:
                if abs(target) == 4:
                    return (root * y + x) / 2
                return root * y + x
    raise ValueError(f"no unit found for d = {ring.d} below y = {limit}")


def join_specs(*specs: FieldSpec) -> FieldSpec:
    """Smallest supported field containing all ``specs``."""
    radicands = sorted({r for spec in specs for r in spec.radicands})
    if len(radicands) > 2:
        raise FieldMismatchError(
            "fields " + ", ".join(str(s) for s in specs) + " need more than two radicands"
        )
    return FieldSpec(tuple(radicands))
