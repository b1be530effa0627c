"""Univariate polynomials and rational functions in ``t`` over AlgNumber.

Entries of a one-parameter family of Cartan matrices are rational functions
with coefficients in the family's :class:`~coxlib.numfield.FieldSpec`. Every
:class:`RationalFunction` is kept reduced (numerator and denominator coprime,
denominator monic), so structural equality is value equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from coxlib.numfield import AlgNumber, FieldMismatchError, FieldSpec, invert

Coefficient = int | Fraction | AlgNumber


class PoleError(ZeroDivisionError):
    """A rational function was evaluated at a zero of its denominator."""


def _as_alg(value: Coefficient, spec: FieldSpec) -> AlgNumber:
    if isinstance(value, AlgNumber):
        if value.spec != spec:
            raise FieldMismatchError(f"coefficient in {value.spec}, expected {spec}")
        return value
    return spec.rational(value)


# ── Polynomials ──────────────────────────────────────────────────


@dataclass(frozen=True)
class Polynomial:
    """Coefficients from the constant term upwards; no trailing zeros."""

    spec: FieldSpec
    coeffs: tuple[AlgNumber, ...] = ()

    def __post_init__(self) -> None:
        coeffs = [_as_alg(c, self.spec) for c in self.coeffs]
        while coeffs and coeffs[-1].is_zero:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def constant(cls, value: Coefficient, spec: FieldSpec) -> Polynomial:
        return cls(spec, (_as_alg(value, spec),))

    @classmethod
    def monomial(cls, coeff: Coefficient, power: int, spec: FieldSpec) -> Polynomial:
        return cls(spec, (spec.zero(),) * power + (_as_alg(coeff, spec),))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> AlgNumber:
        return self.coeffs[-1] if self.coeffs else self.spec.zero()

    def _check(self, other: Polynomial) -> None:
        if other.spec != self.spec:
            raise FieldMismatchError(f"cannot combine {self.spec} with {other.spec}")

    def __add__(self, other: Polynomial) -> Polynomial:
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        zero = self.spec.zero()
        return Polynomial(
            self.spec,
            tuple(
                (self.coeffs[i] if i < len(self.coeffs) else zero)
                + (other.coeffs[i] if i < len(other.coeffs) else zero)
                for i in range(n)
            ),
        )

    def __neg__(self) -> Polynomial:
        return Polynomial(self.spec, tuple(-c for c in self.coeffs))

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other: Polynomial) -> Polynomial:
        self._check(other)
        if self.is_zero or other.is_zero:
            return Polynomial(self.spec)
        out = [self.spec.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(self.spec, tuple(out))

    def scale(self, factor: AlgNumber) -> Polynomial:
        return Polynomial(self.spec, tuple(c * factor for c in self.coeffs))

    def divmod(self, divisor: Polynomial) -> tuple[Polynomial, Polynomial]:
        """Euclidean division over the coefficient field."""
        self._check(divisor)
        if divisor.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        lead_inv = invert(divisor.leading)
        quotient = [self.spec.zero()] * max(0, self.degree - divisor.degree + 1)
        remainder = list(self.coeffs)
        while len(remainder) - 1 >= divisor.degree and remainder:
            shift = len(remainder) - 1 - divisor.degree
            factor = remainder[-1] * lead_inv
            quotient[shift] = factor
            for i, c in enumerate(divisor.coeffs):
                remainder[shift + i] = remainder[shift + i] - factor * c
            remainder.pop()
            while remainder and remainder[-1].is_zero:
                remainder.pop()
        return Polynomial(self.spec, tuple(quotient)), Polynomial(self.spec, tuple(remainder))

    def monic(self) -> Polynomial:
        if self.is_zero:
            return self
        return self.scale(invert(self.leading))

    def evaluate(self, t0: Coefficient) -> AlgNumber:
        """Horner evaluation."""
        x = _as_alg(t0, self.spec)
        acc = self.spec.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor (Euclid)."""
    while not b.is_zero:
        _, r = a.divmod(b)
        a, b = b, r
    return a.monic()


# ── Rational functions ───────────────────────────────────────────


@dataclass(frozen=True)
class RationalFunction:
    """Reduced quotient ``numerator / denominator`` with monic denominator."""

    numerator: Polynomial
    denominator: Polynomial

    def __post_init__(self) -> None:
        num, den = self.numerator, self.denominator
        if num.spec != den.spec:
            raise FieldMismatchError(f"cannot combine {num.spec} with {den.spec}")
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            den = Polynomial.constant(1, num.spec)
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, _ = num.divmod(g)
                den, _ = den.divmod(g)
            lead_inv = invert(den.leading)
            num, den = num.scale(lead_inv), den.scale(lead_inv)
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    @property
    def spec(self) -> FieldSpec:
        return self.numerator.spec

    @classmethod
    def constant(cls, value: Coefficient, spec: FieldSpec) -> RationalFunction:
        return cls(Polynomial.constant(value, spec), Polynomial.constant(1, spec))

    @classmethod
    def parameter(cls, spec: FieldSpec) -> RationalFunction:
        """The identity function ``t``."""
        return cls(Polynomial.monomial(1, 1, spec), Polynomial.constant(1, spec))

    def _lift(self, other: RationalFunction | Coefficient) -> RationalFunction:
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction, AlgNumber)):
            return RationalFunction.constant(other, self.spec)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: RationalFunction | Coefficient) -> RationalFunction:
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return RationalFunction(
            self.numerator * o.denominator + o.numerator * self.denominator,
            self.denominator * o.denominator,
        )

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other: RationalFunction | Coefficient) -> RationalFunction:
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Coefficient) -> RationalFunction:
        return -self + other

    def __mul__(self, other: RationalFunction | Coefficient) -> RationalFunction:
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return RationalFunction(
            self.numerator * o.numerator, self.denominator * o.denominator
        )

    __rmul__ = __mul__

    def __truediv__(self, other: RationalFunction | Coefficient) -> RationalFunction:
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if o.numerator.is_zero:
            raise ZeroDivisionError("division by the zero function")
        return RationalFunction(
            self.numerator * o.denominator, self.denominator * o.numerator
        )

    def __rtruediv__(self, other: Coefficient) -> RationalFunction:
        return RationalFunction.constant(other, self.spec) / self

    def __pow__(self, exponent: int) -> RationalFunction:
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else RationalFunction.constant(1, self.spec) / self
        result = RationalFunction.constant(1, self.spec)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    @property
    def is_constant(self) -> bool:
        return self.numerator.degree <= 0 and self.denominator.degree == 0

    @property
    def is_zero(self) -> bool:
        return self.numerator.is_zero

    def constant_value(self) -> AlgNumber:
        if not self.is_constant:
            raise ValueError("rational function is not constant")
        return self.numerator.evaluate(0)

    def as_monomial(self) -> tuple[AlgNumber, int] | None:
        """``(α, k)`` when the function equals ``α·t^k`` (k may be negative)."""
        num, den = self.numerator, self.denominator
        if num.is_zero:
            return None
        num_terms = [i for i, c in enumerate(num.coeffs) if not c.is_zero]
        den_terms = [i for i, c in enumerate(den.coeffs) if not c.is_zero]
        if len(num_terms) != 1 or len(den_terms) != 1:
            return None
        j, ell = num_terms[0], den_terms[0]
        return num.coeffs[j] / den.coeffs[ell], j - ell

    def evaluate(self, t0: Coefficient) -> AlgNumber:
        """Exact value at ``t0``; :class:`PoleError` at a zero of the denominator."""
        den = self.denominator.evaluate(t0)
        if den.is_zero:
            raise PoleError(f"pole at t = {t0}")
        return self.numerator.evaluate(t0) / den

    def __str__(self) -> str:
        from coxlib.expressions import format_ratfunc

        return format_ratfunc(self)
