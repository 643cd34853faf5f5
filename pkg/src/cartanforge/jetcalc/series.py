"""Truncated Taylor series in (X, Y, U) and the frame operators acting on them.

A :class:`JetPoint` fixes all jets of phi at one point.  Placing that point at
the origin, phi agrees with the polynomial sum jet/(a! b! c!) X^a Y^b U^c up to
the highest jet order supplied, so every differential polynomial evaluated at
the jet point equals the constant term of the corresponding series.  This
gives a second, independent way to evaluate the iterated H-derivatives of
Phi_i: differentiate series numerically instead of expanding numerators.

Each series carries ``prec``: its coefficients are correct through total
degree ``prec`` and unknown beyond.  Differentiation lowers ``prec`` by one and
products keep the smaller precision.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .diffpoly import MultiIndex, Rational

Exponent = Tuple[int, int, int]


@lru_cache(maxsize=None)
def _monomials(max_degree: int) -> Tuple[Exponent, ...]:
    out = []
    for deg in range(max_degree + 1):
        for a in range(deg, -1, -1):
            for b in range(deg - a, -1, -1):
                out.append((a, b, deg - a - b))
    return tuple(out)


@lru_cache(maxsize=None)
def _count_upto(degree: int) -> int:
    # number of monomials of total degree <= degree in three variables
    if degree < 0:
        return 0
    return (degree + 1) * (degree + 2) * (degree + 3) // 6


class _Tables:
    """Index arithmetic for monomials of degree <= max_degree."""

    def __init__(self, max_degree: int):
        self.max_degree = max_degree
        self.monos = _monomials(max_degree)
        self.index = {m: k for k, m in enumerate(self.monos)}
        self.degree = [sum(m) for m in self.monos]
        n = len(self.monos)
        self.product: List[List[int]] = []
        for i in range(n):
            row = []
            mi = self.monos[i]
            room = _count_upto(max_degree - self.degree[i])
            for j in range(room):
                mj = self.monos[j]
                row.append(self.index[(mi[0] + mj[0], mi[1] + mj[1], mi[2] + mj[2])])
            self.product.append(row)
        # derivative along each axis: list of (source index, target index, factor)
        self.derivative = []
        for axis in range(3):
            entries = []
            for src, m in enumerate(self.monos):
                if m[axis]:
                    target = list(m)
                    target[axis] -= 1
                    entries.append((src, self.index[tuple(target)], m[axis]))
            self.derivative.append(entries)


MAX_SERIES_DEGREE = 9
_TABLES = _Tables(MAX_SERIES_DEGREE)


class JetSeries:
    """Series sum c_m X^a Y^b U^c known through total degree ``prec``."""

    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs: Sequence[Rational], prec: int):
        if prec < 0:
            raise ValueError("series precision exhausted; supply higher-order jets")
        if prec > MAX_SERIES_DEGREE:
            raise ValueError(f"series precision is capped at {MAX_SERIES_DEGREE}")
        n = _count_upto(prec)
        coeffs = list(coeffs[:n])
        if len(coeffs) < n:
            coeffs.extend([0] * (n - len(coeffs)))
        self.coeffs = coeffs
        self.prec = prec

    @classmethod
    def const(cls, value: Rational, prec: int) -> "JetSeries":
        return cls([value], prec)

    @classmethod
    def from_dict(cls, terms: Mapping[Exponent, Rational], prec: int) -> "JetSeries":
        coeffs: List[Rational] = [0] * _count_upto(prec)
        for mono, value in terms.items():
            if sum(mono) <= prec:
                coeffs[_TABLES.index[tuple(mono)]] += value
        return cls(coeffs, prec)

    def constant(self) -> Rational:
        return self.coeffs[0]

    def coefficient(self, mono: Exponent) -> Rational:
        idx = _TABLES.index[tuple(mono)]
        if sum(mono) > self.prec:
            raise ValueError("coefficient beyond the known precision")
        return self.coeffs[idx]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self) -> str:
        return f"JetSeries(prec={self.prec}, const={self.coeffs[0]})"

    def truncate(self, prec: int) -> "JetSeries":
        return JetSeries(self.coeffs, min(prec, self.prec))

    def __add__(self, other) -> "JetSeries":
        if isinstance(other, (int, Fraction)):
            coeffs = list(self.coeffs)
            coeffs[0] += other
            return JetSeries(coeffs, self.prec)
        prec = min(self.prec, other.prec)
        n = _count_upto(prec)
        return JetSeries([a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])], prec)

    __radd__ = __add__

    def __neg__(self) -> "JetSeries":
        return JetSeries([-a for a in self.coeffs], self.prec)

    def __sub__(self, other) -> "JetSeries":
        return self + (-other)

    def __rsub__(self, other) -> "JetSeries":
        return (-self) + other

    def __mul__(self, other) -> "JetSeries":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return JetSeries([0], self.prec)
            return JetSeries([a * other for a in self.coeffs], self.prec)
        if not isinstance(other, JetSeries):
            return NotImplemented
        prec = min(self.prec, other.prec)
        n = _count_upto(prec)
        out: List[Rational] = [0] * n
        a_coeffs, b_coeffs = self.coeffs, other.coeffs
        degree = _TABLES.degree
        product = _TABLES.product
        b_nonzero = [(j, b) for j, b in enumerate(b_coeffs[:n]) if b]
        for i in range(n):
            a = a_coeffs[i]
            if not a:
                continue
            room = _count_upto(prec - degree[i])
            row = product[i]
            for j, b in b_nonzero:
                if j >= room:
                    break
                out[row[j]] += a * b
        return JetSeries(out, prec)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "JetSeries":
        result = JetSeries.const(1, self.prec)
        for _ in range(exponent):
            result = result * self
        return result

    def inverse(self) -> "JetSeries":
        head = self.coeffs[0]
        if head == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv_head = Fraction(1) / head
        tail = self * (-inv_head) + 1  # 1 - f/f0, no constant term
        total = JetSeries.const(1, self.prec)
        power = JetSeries.const(1, self.prec)
        for _ in range(self.prec):
            power = power * tail
            total = total + power
        return total * inv_head

    def __truediv__(self, other) -> "JetSeries":
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        return self * other.inverse()

    def __rtruediv__(self, other) -> "JetSeries":
        return self.inverse() * other

    def derivative(self, axis: Union[int, str]) -> "JetSeries":
        if isinstance(axis, str):
            axis = "xyu".index(axis)
        prec = self.prec - 1
        n = _count_upto(prec)
        out: List[Rational] = [0] * n
        coeffs = self.coeffs
        for src, target, factor in _TABLES.derivative[axis]:
            if target >= n:
                break
            value = coeffs[src]
            if value:
                out[target] += factor * value
        return JetSeries(out, prec)


def series_of_jets(point: Mapping[MultiIndex, Rational], prec: Optional[int] = None) -> JetSeries:
    """The Taylor series of phi at the jet point (phi itself set to 0)."""
    if prec is None:
        prec = max((sum(mi) for mi, v in point.items()), default=1)
    terms = {}
    for mi, value in point.items():
        if value and 1 <= sum(mi) <= prec:
            terms[tuple(mi)] = Fraction(value) / (factorial(mi[0]) * factorial(mi[1]) * factorial(mi[2]))
    return JetSeries.from_dict(terms, prec)


class SeriesFrame:
    """Frame operators H_1, H_2, T realised on Taylor series of one graphing function.

    ``Phi_i`` is obtained from the commutator [H_i, T] = Phi_i T applied to the
    coordinate function u, which avoids the closed-form numerator entirely.
    """

    def __init__(self, phi: JetSeries):
        self.phi = phi
        self.prec = phi.prec
        p_x, p_y, p_u = phi.derivative(0), phi.derivative(1), phi.derivative(2)
        self.delta = p_u * p_u + 1
        self.lam = {1: p_y - p_x * p_u, 2: -p_x - p_y * p_u}
        p_xx, p_yy = p_x.derivative(0), p_y.derivative(1)
        p_uu, p_xu, p_yu = p_u.derivative(2), p_x.derivative(2), p_y.derivative(2)
        self.upsilon = (
            -p_xx
            - p_yy
            - 2 * p_y * p_xu
            - p_x * p_x * p_uu
            + 2 * p_x * p_yu
            - p_y * p_y * p_uu
            + 2 * p_y * p_u * p_yu
            + 2 * p_x * p_u * p_xu
            - p_u * p_u * p_xx
            - p_u * p_u * p_yy
        )
        if self.delta.constant() == 0 or self.upsilon.constant() == 0:
            from .rational import DegeneratePoint

            raise DegeneratePoint("Delta or Upsilon vanishes at this jet point")
        inv_delta = self.delta.inverse()
        self.slope = {k: self.lam[k] * inv_delta for k in (1, 2)}  # H_k = D_k + slope_k D_u
        self.tau = self.upsilon * inv_delta * inv_delta * Fraction(1, 4)  # T = tau D_u
        self._phi_cache: Dict[Tuple[Tuple[int, ...], int], JetSeries] = {}

    @classmethod
    def from_jets(cls, point: Mapping[MultiIndex, Rational], prec: Optional[int] = None) -> "SeriesFrame":
        return cls(series_of_jets(point, prec))

    def H(self, k: int, f: JetSeries) -> JetSeries:
        return f.derivative(k - 1) + self.slope[k] * f.derivative(2)

    def T(self, f: JetSeries) -> JetSeries:
        return self.tau * f.derivative(2)

    def phi_invariant(self, word: Sequence[int], i: int) -> JetSeries:
        """H_{k_m}(... H_{k_1}(Phi_i)) as a series."""
        key = (tuple(word), i)
        cached = self._phi_cache.get(key)
        if cached is not None:
            return cached
        if not word:
            value = (self.H(i, self.tau) - self.T(self.slope[i])) / self.tau
        else:
            value = self.H(word[-1], self.phi_invariant(word[:-1], i))
        self._phi_cache[key] = value
        return value

    def value(self, word: Sequence[int], i: int) -> Rational:
        return self.phi_invariant(word, i).constant()


class Polynomial3:
    """Exact polynomial in x, y, u with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Exponent, Rational]] = None):
        clean: Dict[Exponent, Rational] = {}
        for mono, coeff in (terms or {}).items():
            if coeff:
                clean[tuple(mono)] = clean.get(tuple(mono), 0) + coeff
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def const(cls, value: Rational) -> "Polynomial3":
        return cls({(0, 0, 0): value})

    @classmethod
    def var(cls, name: str) -> "Polynomial3":
        axis = "xyu".index(name)
        mono = [0, 0, 0]
        mono[axis] = 1
        return cls({tuple(mono): 1})

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial3.const(other)
        return isinstance(other, Polynomial3) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"Polynomial3({self.terms})"

    def __add__(self, other) -> "Polynomial3":
        other = _poly3(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial3(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial3":
        return Polynomial3({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial3":
        return self + (-_poly3(other))

    def __rsub__(self, other) -> "Polynomial3":
        return _poly3(other) - self

    def __mul__(self, other) -> "Polynomial3":
        other = _poly3(other)
        out: Dict[Exponent, Rational] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                key = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                out[key] = out.get(key, 0) + c1 * c2
        return Polynomial3(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial3":
        if exponent < 0:
            raise ValueError("negative exponent")
        result = Polynomial3.const(1)
        for _ in range(exponent):
            result = result * self
        return result

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def derivative(self, multi_index: Iterable[int]) -> "Polynomial3":
        mi = tuple(multi_index)
        out = {}
        for mono, coeff in self.terms.items():
            if all(mono[k] >= mi[k] for k in range(3)):
                factor = coeff
                for k in range(3):
                    for j in range(mi[k]):
                        factor *= mono[k] - j
                out[tuple(mono[k] - mi[k] for k in range(3))] = factor
        return Polynomial3(out)

    def evaluate(self, point: Sequence[Rational]) -> Fraction:
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            total += coeff * Fraction(point[0]) ** mono[0] * Fraction(point[1]) ** mono[1] * Fraction(point[2]) ** mono[2]
        return total


def _poly3(value) -> Polynomial3:
    if isinstance(value, Polynomial3):
        return value
    if isinstance(value, (int, Fraction)):
        return Polynomial3.const(value)
    raise TypeError(f"cannot use {type(value).__name__} as a polynomial")


def jets_of_polynomial(phi: Polynomial3, point: Sequence[Rational], max_order: int = 6) -> Dict[MultiIndex, Fraction]:
    """All partial derivatives of orders 1..max_order of phi at ``point``."""
    out: Dict[MultiIndex, Fraction] = {}
    for order in range(1, max_order + 1):
        for a in range(order, -1, -1):
            for b in range(order - a, -1, -1):
                mi = (a, b, order - a - b)
                out[mi] = phi.derivative(mi).evaluate(point)
    return out

