"""Sparse polynomials in the jet variables of a graphing function phi(x, y, u).

A jet variable ``phi_(a,b,c)`` stands for the partial derivative
d^(a+b+c) phi / dx^a dy^b du^c, treated as an independent indeterminate.
Every jet variable gets a small integer id; a monomial is the sorted tuple
of the ids of its factors (with repetition), so multiplying monomials is a
tuple merge and the canonical form is automatic.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

MAX_ORDER = 6

Rational = Union[int, Fraction]
Monomial = Tuple[int, ...]
MultiIndex = Tuple[int, int, int]

DIRECTIONS = {"x": 0, "y": 1, "u": 2}


class JetOrderOverflow(ValueError):
    """Raised when a computation would create a jet of order above the cap."""


def _all_multi_indices(max_order: int) -> list[MultiIndex]:
    out = []
    for order in range(1, max_order + 1):
        for a in range(order, -1, -1):
            for b in range(order - a, -1, -1):
                out.append((a, b, order - a - b))
    return out


# Graded order on jet variables: by total order first, then x-heavy first.
JET_INDICES: list[MultiIndex] = _all_multi_indices(MAX_ORDER)
JET_ID: Dict[MultiIndex, int] = {mi: k for k, mi in enumerate(JET_INDICES)}


def _shift_table() -> list[list[Optional[int]]]:
    table = []
    for mi in JET_INDICES:
        row = []
        for axis in range(3):
            nxt = list(mi)
            nxt[axis] += 1
            row.append(JET_ID.get(tuple(nxt)))
        table.append(row)
    return table


_SHIFT = _shift_table()

_LETTERS = "xyu"


def jet_name(mi: MultiIndex) -> str:
    return "phi_" + "".join(_LETTERS[k] * mi[k] for k in range(3))


def parse_jet_name(name: str) -> MultiIndex:
    """Inverse of :func:`jet_name`; accepts ``phi_xxu`` or bare ``xxu``."""
    body = name[4:] if name.startswith("phi_") else name
    if not body or any(ch not in _LETTERS for ch in body):
        raise ValueError(f"not a jet variable name: {name!r}")
    mi = (body.count("x"), body.count("y"), body.count("u"))
    if sum(mi) > MAX_ORDER:
        raise JetOrderOverflow(f"{name} has order {sum(mi)} > {MAX_ORDER}")
    return mi


def _mono_key(m: Monomial) -> tuple:
    # graded lexicographic: total degree, then the sorted jet ids
    return (len(m), m)


class DiffPoly:
    """Immutable polynomial with rational coefficients in jet variables."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Rational]] = None, *, _trusted: bool = False):
        if terms is None:
            self.terms: Dict[Monomial, Rational] = {}
        elif _trusted:
            self.terms = dict(terms) if not isinstance(terms, dict) else terms
        else:
            clean: Dict[Monomial, Rational] = {}
            for mono, coeff in terms.items():
                if coeff:
                    key = tuple(sorted(mono))
                    clean[key] = clean.get(key, 0) + _norm(coeff)
            self.terms = {k: v for k, v in clean.items() if v}
        self._hash: Optional[int] = None

    # construction helpers -------------------------------------------------
    @classmethod
    def const(cls, value: Rational) -> "DiffPoly":
        value = _norm(value)
        return cls({(): value} if value else {}, _trusted=True)

    @classmethod
    def jet(cls, mi: Iterable[int]) -> "DiffPoly":
        mi = tuple(mi)
        if sum(mi) < 1:
            raise ValueError("phi itself is never a jet variable")
        if sum(mi) > MAX_ORDER:
            raise JetOrderOverflow(f"jet {mi} exceeds order {MAX_ORDER}")
        return cls({(JET_ID[mi],): 1}, _trusted=True)

    @classmethod
    def var(cls, name: str) -> "DiffPoly":
        return cls.jet(parse_jet_name(name))

    # basic protocol -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = DiffPoly.const(other)
        if not isinstance(other, DiffPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self) -> str:
        if len(self.terms) > 12:
            return f"DiffPoly(<{len(self.terms)} terms, degree {self.degree()}>)"
        return f"DiffPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=_mono_key):
            coeff = self.terms[mono]
            factors = _mono_str(mono)
            if not factors:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(factors)
            elif coeff == -1:
                parts.append("-" + factors)
            else:
                parts.append(f"{coeff}*{factors}")
        return " + ".join(parts).replace("+ -", "- ")

    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=-1)

    def max_jet_order(self) -> int:
        return max((sum(JET_INDICES[v]) for m in self.terms for v in m), default=0)

    def variables(self) -> set[MultiIndex]:
        return {JET_INDICES[v] for m in self.terms for v in m}

    def sorted_terms(self) -> list[tuple[Monomial, Rational]]:
        return sorted(self.terms.items(), key=lambda kv: _mono_key(kv[0]))

    # ring operations ------------------------------------------------------
    def __add__(self, other) -> "DiffPoly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for mono, coeff in small.items():
            value = out.get(mono, 0) + coeff
            if value:
                out[mono] = value
            else:
                out.pop(mono, None)
        return DiffPoly(out, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "DiffPoly":
        return DiffPoly({m: -c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other) -> "DiffPoly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "DiffPoly":
        return (-self) + other

    def __mul__(self, other) -> "DiffPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, DiffPoly):
            return NotImplemented
        if len(self.terms) < len(other.terms):
            left, right = other.terms, self.terms
        else:
            left, right = self.terms, other.terms
        out: Dict[Monomial, Rational] = {}
        get = out.get
        for m2, c2 in right.items():
            if not m2:
                for m1, c1 in left.items():
                    out[m1] = get(m1, 0) + c1 * c2
                continue
            for m1, c1 in left.items():
                key = tuple(sorted(m1 + m2))
                out[key] = get(key, 0) + c1 * c2
        return DiffPoly({m: _norm(c) for m, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def scale(self, factor: Rational) -> "DiffPoly":
        factor = _norm(factor)
        if not factor:
            return DiffPoly()
        if factor == 1:
            return self
        return DiffPoly({m: _norm(c * factor) for m, c in self.terms.items()}, _trusted=True)

    def __pow__(self, exponent: int) -> "DiffPoly":
        if exponent < 0:
            raise ValueError("negative exponent")
        result = DiffPoly.const(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    # calculus -------------------------------------------------------------
    def total_derivative(self, direction: Union[str, int]) -> "DiffPoly":
        """Total derivative along x, y or u: phi_(a,b,c) -> phi_(a,b,c)+e_dir."""
        axis = DIRECTIONS[direction] if isinstance(direction, str) else direction
        out: Dict[Monomial, Rational] = {}
        get = out.get
        for mono, coeff in self.terms.items():
            prev = -1
            for pos, v in enumerate(mono):
                if v == prev:
                    continue
                prev = v
                mult = 1
                while pos + mult < len(mono) and mono[pos + mult] == v:
                    mult += 1
                shifted = _SHIFT[v][axis]
                if shifted is None:
                    raise JetOrderOverflow(
                        f"derivative of {jet_name(JET_INDICES[v])} along {_LETTERS[axis]} exceeds order {MAX_ORDER}"
                    )
                key = tuple(sorted(mono[:pos] + mono[pos + 1:] + (shifted,)))
                out[key] = get(key, 0) + coeff * mult
        return DiffPoly({m: c for m, c in out.items() if c}, _trusted=True)

    def partial(self, mi: MultiIndex) -> "DiffPoly":
        """Plain partial derivative with respect to the jet variable ``mi``."""
        target = JET_ID[tuple(mi)]
        out: Dict[Monomial, Rational] = {}
        for mono, coeff in self.terms.items():
            mult = mono.count(target)
            if mult:
                pos = mono.index(target)
                key = mono[:pos] + mono[pos + 1:]
                out[key] = out.get(key, 0) + coeff * mult
        return DiffPoly({m: c for m, c in out.items() if c}, _trusted=True)

    # evaluation -----------------------------------------------------------
    def evaluate(self, point: Mapping[MultiIndex, Rational]) -> Fraction:
        values = _point_vector(point)
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            term = coeff
            for v in mono:
                term = term * values[v]
                if not term:
                    break
            total += term
        return total

    def substitute(self, point: Mapping[MultiIndex, Rational]) -> "DiffPoly":
        """Partial substitution: replace the given jets by rationals."""
        fixed = {JET_ID[tuple(k)]: _norm(v) for k, v in point.items()}
        out: Dict[Monomial, Rational] = {}
        for mono, coeff in self.terms.items():
            rest = []
            for v in mono:
                if v in fixed:
                    coeff = coeff * fixed[v]
                else:
                    rest.append(v)
            if coeff:
                key = tuple(rest)
                out[key] = out.get(key, 0) + coeff
        return DiffPoly({m: _norm(c) for m, c in out.items() if c}, _trusted=True)

    # exact division -------------------------------------------------------
    def divide_exact(self, divisor: "DiffPoly") -> Optional["DiffPoly"]:
        """Quotient if ``divisor`` divides ``self`` exactly, else ``None``.

        Plain multivariate division with respect to the graded-lex order; for a
        single divisor the remainder vanishes exactly when it divides.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return DiffPoly()
        lead = max(divisor.terms, key=_mono_key)
        lead_coeff = divisor.terms[lead]
        lead_counts = _counts(lead)
        rest = [(m, c) for m, c in divisor.terms.items() if m != lead]
        remaining: Dict[Monomial, Rational] = dict(self.terms)
        heap = [(-len(m), _neg_tuple(m), m) for m in remaining]
        heapq.heapify(heap)
        quotient: Dict[Monomial, Rational] = {}
        while heap:
            _, _, mono = heapq.heappop(heap)
            coeff = remaining.pop(mono, 0)
            if not coeff:
                continue
            factor = _divide_monomial(mono, lead_counts)
            if factor is None:
                return None
            q = _norm(Fraction(coeff) / lead_coeff)
            quotient[factor] = quotient.get(factor, 0) + q
            for m, c in rest:
                key = tuple(sorted(factor + m))
                value = remaining.get(key, 0) - q * c
                if key not in remaining:
                    heapq.heappush(heap, (-len(key), _neg_tuple(key), key))
                if value:
                    remaining[key] = value
                else:
                    remaining.pop(key, None)
        return DiffPoly({m: c for m, c in quotient.items() if c}, _trusted=True)


def _neg_tuple(m: Monomial) -> tuple:
    # heapq is a min-heap; negate the lexicographic part so larger keys pop first
    return tuple(-v for v in m) + (1,)


def _counts(m: Monomial) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for v in m:
        out[v] = out.get(v, 0) + 1
    return out


def _divide_monomial(m: Monomial, lead_counts: Dict[int, int]) -> Optional[Monomial]:
    counts = _counts(m)
    for v, k in lead_counts.items():
        if counts.get(v, 0) < k:
            return None
        counts[v] -= k
    return tuple(sorted(v for v, k in counts.items() for _ in range(k)))


def _norm(value: Rational) -> Rational:
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def _coerce(other) -> Optional[DiffPoly]:
    if isinstance(other, DiffPoly):
        return other
    if isinstance(other, (int, Fraction)):
        return DiffPoly.const(other)
    return None


def _mono_str(mono: Monomial) -> str:
    parts = []
    for v in sorted(set(mono)):
        k = mono.count(v)
        name = jet_name(JET_INDICES[v])
        parts.append(name if k == 1 else f"{name}^{k}")
    return "*".join(parts)


def _point_vector(point: Mapping[MultiIndex, Rational]) -> list[Rational]:
    values: list[Rational] = [0] * len(JET_INDICES)
    for mi, value in point.items():
        key = JET_ID.get(tuple(mi))
        if key is not None:
            values[key] = value
    return values


def monomials_of_degree(degree: int, max_order: int = 2) -> Iterator[Monomial]:
    """All monomials of a given degree in the jets of order <= ``max_order``."""
    ids = [JET_ID[mi] for mi in JET_INDICES if sum(mi) <= max_order]
    return combinations_with_replacement(ids, degree)
