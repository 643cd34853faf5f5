"""Polynomials in the five fiber coordinates (a, b, c, d, e) of the bundle.

Coefficients may live in any commutative ring that supports ``+``, ``-``,
``*`` with ints and with each other: Fractions, formal PhiPolys, Taylor
series, symbolic RationalJetExprs.  Zero detection goes through
:func:`coeff_is_zero`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Iterable, Mapping, Optional, Sequence, Tuple

FIBER_VARS = ("a", "b", "c", "d", "e")
FiberMonomial = Tuple[int, int, int, int, int]
ONE: FiberMonomial = (0, 0, 0, 0, 0)


def coeff_is_zero(value) -> bool:
    if isinstance(value, (int, Fraction)):
        return value == 0
    return value.is_zero()


class FiberPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[FiberMonomial, object]] = None):
        self.terms: Dict[FiberMonomial, object] = {
            tuple(m): c for m, c in (terms or {}).items() if not coeff_is_zero(c)
        }

    @classmethod
    def var(cls, name: str) -> "FiberPoly":
        mono = [0] * 5
        mono[FIBER_VARS.index(name)] = 1
        return cls({tuple(mono): 1})

    @classmethod
    def const(cls, value) -> "FiberPoly":
        return cls({ONE: value})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def __repr__(self) -> str:
        return f"FiberPoly({len(self.terms)} monomials, degree {self.degree()})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=lambda m: (-sum(m), tuple(-k for k in m))):
            names = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(FIBER_VARS, mono) if k
            )
            parts.append(f"({self.terms[mono]})" + (f"*{names}" if names else ""))
        return " + ".join(parts)

    def coefficient(self, mono: Sequence[int], default=0):
        return self.terms.get(tuple(mono), default)

    def __add__(self, other) -> "FiberPoly":
        other = _as_fiber(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return FiberPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "FiberPoly":
        return FiberPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "FiberPoly":
        return self + (-_as_fiber(other))

    def __rsub__(self, other) -> "FiberPoly":
        return _as_fiber(other) - self

    def __mul__(self, other) -> "FiberPoly":
        if not isinstance(other, FiberPoly):
            return FiberPoly({m: c * other for m, c in self.terms.items()})
        out: Dict[FiberMonomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                key = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3], m1[4] + m2[4])
                value = c1 * c2
                out[key] = out[key] + value if key in out else value
        return FiberPoly(out)

    def __rmul__(self, other) -> "FiberPoly":
        return FiberPoly({m: other * c for m, c in self.terms.items()})

    def __pow__(self, exponent: int) -> "FiberPoly":
        result = FiberPoly.const(1)
        for _ in range(exponent):
            result = result * self
        return result

    def map_coefficients(self, func: Callable) -> "FiberPoly":
        return FiberPoly({m: func(c) for m, c in self.terms.items()})

    def partial(self, name: str) -> "FiberPoly":
        axis = FIBER_VARS.index(name)
        out = {}
        for mono, coeff in self.terms.items():
            k = mono[axis]
            if k:
                lowered = list(mono)
                lowered[axis] -= 1
                out[tuple(lowered)] = coeff * k
        return FiberPoly(out)

    def evaluate(self, point: Sequence, zero=0):
        """Substitute numbers (or ring elements) for (a, b, c, d, e)."""
        total = zero
        for mono, coeff in self.terms.items():
            factor = 1
            for value, k in zip(point, mono):
                if k:
                    factor = factor * value ** k
            total = total + coeff * factor
        return total

    def equals(self, other: "FiberPoly") -> bool:
        return (self - other).is_zero()


def _as_fiber(value) -> FiberPoly:
    if isinstance(value, FiberPoly):
        return value
    return FiberPoly.const(value)


def fiber_variables() -> Tuple[FiberPoly, ...]:
    return tuple(FiberPoly.var(v) for v in FIBER_VARS)


# -- the five left-invariant vertical fields ----------------------------------

VERTICAL_NAMES = ("d", "r", "i1", "i2", "j")

# Each field as {fiber variable: linear coefficient polynomial}, written as a
# sparse map from the variable being differentiated to (coefficient, monomial).
_VERTICAL_TABLE: Dict[str, Tuple[Tuple[str, Fraction, FiberMonomial], ...]] = {
    # D = -a d_a - b d_b - c d_c - d d_d - 2 e d_e
    "d": (
        ("a", Fraction(-1), (1, 0, 0, 0, 0)),
        ("b", Fraction(-1), (0, 1, 0, 0, 0)),
        ("c", Fraction(-1), (0, 0, 1, 0, 0)),
        ("d", Fraction(-1), (0, 0, 0, 1, 0)),
        ("e", Fraction(-2), (0, 0, 0, 0, 1)),
    ),
    # R = -b d_a + a d_b + d d_c - c d_d
    "r": (
        ("a", Fraction(-1), (0, 1, 0, 0, 0)),
        ("b", Fraction(1), (1, 0, 0, 0, 0)),
        ("c", Fraction(1), (0, 0, 0, 1, 0)),
        ("d", Fraction(-1), (0, 0, 1, 0, 0)),
    ),
    # I1 = d_a - b d_e
    "i1": (
        ("a", Fraction(1), ONE),
        ("e", Fraction(-1), (0, 1, 0, 0, 0)),
    ),
    # I2 = d_b + a d_e
    "i2": (
        ("b", Fraction(1), ONE),
        ("e", Fraction(1), (1, 0, 0, 0, 0)),
    ),
    # J = 1/2 d_e
    "j": (("e", Fraction(1, 2), ONE),),
}


def vertical_apply(name: str, f: FiberPoly) -> FiberPoly:
    """Apply one of the vertical fields D, R, I1, I2, J to a fiber polynomial."""
    out = FiberPoly()
    for var, coeff, mono in _VERTICAL_TABLE[name]:
        derivative = f.partial(var)
        if derivative.is_zero():
            continue
        out = out + derivative * FiberPoly({mono: coeff})
    return out


def vertical_field_coefficients(name: str) -> Dict[str, FiberPoly]:
    """The field as a map variable -> coefficient polynomial."""
    out: Dict[str, FiberPoly] = {}
    for var, coeff, mono in _VERTICAL_TABLE[name]:
        out[var] = out.get(var, FiberPoly()) + FiberPoly({mono: coeff})
    return out


def vector_field_bracket(x: Mapping[str, FiberPoly], y: Mapping[str, FiberPoly]) -> Dict[str, FiberPoly]:
    """[X, Y] for fields on (a, ..., e) given as variable -> coefficient maps."""
    out: Dict[str, FiberPoly] = {}
    for var in FIBER_VARS:
        total = FiberPoly()
        for other in FIBER_VARS:
            if other in x and var in y:
                total = total + x[other] * y[var].partial(other)
            if other in y and var in x:
                total = total - y[other] * x[var].partial(other)
        if not total.is_zero():
            out[var] = total
    return out


class FiberRational:
    """A fiber polynomial divided by (c^2 + d^2)^power."""

    __slots__ = ("num", "power")

    def __init__(self, num: FiberPoly, power: int = 0):
        self.num = num
        self.power = power

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __repr__(self) -> str:
        return f"FiberRational({self.num!r} / s^{self.power})"

    def _lift(self, power: int) -> FiberPoly:
        if power == self.power:
            return self.num
        return self.num * (circle_norm() ** (power - self.power))

    def __add__(self, other) -> "FiberRational":
        other = _as_fiber_rational(other)
        power = max(self.power, other.power)
        return FiberRational(self._lift(power) + other._lift(power), power)

    __radd__ = __add__

    def __neg__(self) -> "FiberRational":
        return FiberRational(-self.num, self.power)

    def __sub__(self, other) -> "FiberRational":
        return self + (-_as_fiber_rational(other))

    def __rsub__(self, other) -> "FiberRational":
        return _as_fiber_rational(other) - self

    def __mul__(self, other) -> "FiberRational":
        if isinstance(other, FiberRational):
            return FiberRational(self.num * other.num, self.power + other.power)
        if isinstance(other, FiberPoly):
            return FiberRational(self.num * other, self.power)
        return FiberRational(self.num * other, self.power)

    __rmul__ = __mul__

    def reduce(self) -> "FiberRational":
        """Cancel factors of c^2 + d^2 when they divide the numerator exactly."""
        num, power = self.num, self.power
        while power > 0:
            quotient = divide_by_circle_norm(num)
            if quotient is None:
                break
            num, power = quotient, power - 1
        return FiberRational(num, power)

    def as_poly(self) -> Optional[FiberPoly]:
        reduced = self.reduce()
        return reduced.num if reduced.power == 0 else None

    def equals(self, other) -> bool:
        return (self - _as_fiber_rational(other)).is_zero()

    def evaluate(self, point: Sequence, zero=0):
        s = point[2] ** 2 + point[3] ** 2
        return self.num.evaluate(point, zero) * (Fraction(1) / s ** self.power)


def _as_fiber_rational(value) -> FiberRational:
    if isinstance(value, FiberRational):
        return value
    return FiberRational(_as_fiber(value), 0)


def circle_norm() -> FiberPoly:
    c, d = FiberPoly.var("c"), FiberPoly.var("d")
    return c * c + d * d


def divide_by_circle_norm(num: FiberPoly) -> Optional[FiberPoly]:
    """Exact quotient by c^2 + d^2, or None.

    Division by c^2 with remainder in d: repeatedly move the c^2 part of the
    leading c-power to the quotient, subtracting d^2 times it.
    """
    remaining = dict(num.terms)
    quotient: Dict[FiberMonomial, object] = {}
    while True:
        candidates = [m for m, v in remaining.items() if m[2] >= 2 and not coeff_is_zero(v)]
        if not candidates:
            break
        mono = max(candidates, key=lambda m: m[2])
        coeff = remaining.pop(mono)
        q_mono = (mono[0], mono[1], mono[2] - 2, mono[3], mono[4])
        quotient[q_mono] = quotient[q_mono] + coeff if q_mono in quotient else coeff
        shifted = (mono[0], mono[1], mono[2] - 2, mono[3] + 2, mono[4])
        remaining[shifted] = remaining[shifted] - coeff if shifted in remaining else -coeff
    if any(not coeff_is_zero(v) for v in remaining.values()):
        return None
    return FiberPoly(quotient)
