"""Holomorphic infinitesimal automorphisms of the Heisenberg sphere w - conj(w) = 2i z conj(z).

Fields X = Z(z, w) d/dz + W(z, w) d/dw have polynomial coefficients over Q[i].
The tangency check substitutes w = wb + 2i z zb into
    W(z, w) - 2i zb Z(z, w) - conj(W)(zb, wb) - 2i z conj(Z)(zb, wb)
and asks for the zero polynomial in (z, zb, wb).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

from . import linalg
from .liealg import HEISENBERG_NAMES, LieAlgebra


class NotInSpan(ValueError):
    pass


@dataclass(frozen=True)
class GaussRational:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def of(value) -> "GaussRational":
        if isinstance(value, GaussRational):
            return value
        if isinstance(value, complex):
            raise TypeError("use exact GaussRational(re, im) instead of a float complex")
        return GaussRational(Fraction(value), Fraction(0))

    def __add__(self, other):
        other = GaussRational.of(other)
        return GaussRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussRational.of(other))

    def __rsub__(self, other):
        return GaussRational.of(other) - self

    def __mul__(self, other):
        other = GaussRational.of(other)
        return GaussRational(self.re * other.re - self.im * other.im, self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussRational.of(other)
        norm = other.re ** 2 + other.im ** 2
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q[i]")
        return self * GaussRational(other.re / norm, -other.im / norm)

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = GaussRational.of(other)
        return isinstance(other, GaussRational) and self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


I = GaussRational(0, 1)
ONE = GaussRational(1, 0)

Poly = Dict[Tuple[int, ...], GaussRational]


def _clean(p: Mapping[Tuple[int, ...], GaussRational]) -> Poly:
    return {m: c for m, c in p.items() if c}


def poly_add(a: Poly, b: Poly, factor=ONE) -> Poly:
    out = dict(a)
    for m, c in b.items():
        out[m] = out.get(m, GaussRational()) + factor * c
    return _clean(out)


def poly_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = out.get(m, GaussRational()) + ca * cb
    return _clean(out)


def poly_pow(a: Poly, n: int, nvars: int) -> Poly:
    out: Poly = {(0,) * nvars: ONE}
    for _ in range(n):
        out = poly_mul(out, a)
    return out


def poly_derivative(p: Poly, var: int) -> Poly:
    out: Poly = {}
    for m, c in p.items():
        if m[var]:
            lowered = m[:var] + (m[var] - 1,) + m[var + 1:]
            out[lowered] = out.get(lowered, GaussRational()) + c * m[var]
    return _clean(out)


def poly_str(p: Poly, names: Sequence[str]) -> str:
    if not p:
        return "0"
    terms = []
    for m, c in sorted(p.items(), reverse=True):
        mono = "*".join(f"{n}^{e}" if e > 1 else n for n, e in zip(names, m) if e)
        terms.append(f"{c}*{mono}" if mono else str(c))
    return " + ".join(terms)


@dataclass(frozen=True)
class HoloField:
    """Z(z, w) d/dz + W(z, w) d/dw with monomials keyed by exponents (i, j) of z^i w^j."""

    Z: Tuple[Tuple[Tuple[int, int], GaussRational], ...]
    W: Tuple[Tuple[Tuple[int, int], GaussRational], ...]
    name: str = ""

    @classmethod
    def from_polys(cls, Z: Mapping, W: Mapping, name: str = "") -> "HoloField":
        def freeze(p):
            return tuple(sorted((tuple(m), GaussRational.of(c)) for m, c in p.items() if GaussRational.of(c)))

        return cls(freeze(Z), freeze(W), name)

    @property
    def z_coeff(self) -> Poly:
        return dict(self.Z)

    @property
    def w_coeff(self) -> Poly:
        return dict(self.W)

    def apply(self, f: Poly) -> Poly:
        """X(f) = Z df/dz + W df/dw."""
        return poly_add(poly_mul(self.z_coeff, poly_derivative(f, 0)), poly_mul(self.w_coeff, poly_derivative(f, 1)))

    def bracket(self, other: "HoloField") -> "HoloField":
        Z = poly_add(self.apply(other.z_coeff), other.apply(self.z_coeff), -ONE)
        W = poly_add(self.apply(other.w_coeff), other.apply(self.w_coeff), -ONE)
        return HoloField.from_polys(Z, W)

    def combination_vector(self) -> Dict[Tuple[str, Tuple[int, int]], GaussRational]:
        out = {("Z", m): c for m, c in self.Z}
        out.update({("W", m): c for m, c in self.W})
        return out

    def homogeneity(self) -> set:
        """Weights with z of weight 1, w of weight 2, d/dz of weight -1, d/dw of weight -2."""
        weights = {i + 2 * j - 1 for (i, j), _ in self.Z}
        weights |= {i + 2 * j - 2 for (i, j), _ in self.W}
        return weights

    def __str__(self) -> str:
        return f"({poly_str(self.z_coeff, 'zw')}) d/dz + ({poly_str(self.w_coeff, 'zw')}) d/dw"


def hol_basis() -> List[HoloField]:
    """T, H1, H2, D, R, I1, I2, J in this order."""
    f = HoloField.from_polys
    return [
        f({}, {(0, 0): 1}, "T"),
        f({(0, 0): 1}, {(1, 0): 2 * I}, "H1"),
        f({(0, 0): I}, {(1, 0): 2}, "H2"),
        f({(1, 0): 1}, {(0, 1): 2}, "D"),
        f({(1, 0): I}, {}, "R"),
        f({(0, 1): 1, (2, 0): 2 * I}, {(1, 1): 2 * I}, "I1"),
        f({(0, 1): I, (2, 0): 2}, {(1, 1): 2}, "I2"),
        f({(1, 1): 1}, {(0, 2): 1}, "J"),
    ]


# variables of the tangency polynomials
TANGENCY_VARIABLES = ("z", "w", "zb", "wb")


def _embed(p: Mapping[Tuple[int, int], GaussRational], barred: bool) -> Poly:
    """z^i w^j as a polynomial in (z, w, zb, wb), conjugating coefficients for the barred copy."""
    if barred:
        return {(0, 0, i, j): c.conjugate() for (i, j), c in p.items()}
    return {(i, j, 0, 0): c for (i, j), c in p.items()}


def tangency_expression(field: HoloField) -> Poly:
    """W(z,w) - 2i zb Z(z,w) - conj(W)(zb,wb) - 2i z conj(Z)(zb,wb), before restricting to the sphere."""
    zb = {(0, 0, 1, 0): ONE}
    z = {(1, 0, 0, 0): ONE}
    out = _embed(field.w_coeff, False)
    out = poly_add(out, poly_mul(zb, _embed(field.z_coeff, False)), -2 * I)
    out = poly_add(out, _embed(field.w_coeff, True), -ONE)
    out = poly_add(out, poly_mul(z, _embed(field.z_coeff, True)), -2 * I)
    return out


def substitute_sphere(p: Poly) -> Poly:
    """Replace w by wb + 2i z zb; the result has no w."""
    w_value = {(0, 0, 0, 1): ONE, (1, 0, 1, 0): 2 * I}
    out: Poly = {}
    for (a, b, c, d), coeff in p.items():
        term = poly_mul({(a, 0, c, d): coeff}, poly_pow(w_value, b, 4))
        out = poly_add(out, term)
    return out


def tangency_defect(field: HoloField) -> Dict[Tuple[int, int, int], GaussRational]:
    """The tangency expression on the sphere, as a polynomial in (z, zb, wb); zero iff X is an automorphism."""
    restricted = substitute_sphere(tangency_expression(field))
    return {(a, c, d): coeff for (a, b, c, d), coeff in restricted.items()}


def sphere_equation() -> Poly:
    """w - wb - 2i z zb."""
    return {(0, 1, 0, 0): ONE, (0, 0, 0, 1): -ONE, (1, 0, 1, 0): -2 * I}


def decompose(field: HoloField, basis: Sequence[HoloField]) -> List[Fraction]:
    """Real coefficients c with field = sum c_k basis_k, or NotInSpan."""
    keys = sorted({k for b in list(basis) + [field] for k in b.combination_vector()})
    rows, rhs = [], []
    target = field.combination_vector()
    vectors = [b.combination_vector() for b in basis]
    for key in keys:
        for part in ("re", "im"):
            rows.append([getattr(v.get(key, GaussRational()), part) for v in vectors])
            rhs.append(getattr(target.get(key, GaussRational()), part))
    solution = linalg.solve(rows, rhs)
    if solution is None:
        raise NotInSpan(f"{field} is not a real combination of the basis")
    return solution


def commutator_table(fields: Sequence[HoloField]) -> Dict[Tuple[int, int], Dict[int, Fraction]]:
    """Structure constants {(a, b): {s: c}} for a < b with nonzero brackets."""
    table = {}
    for a, b in itertools.combinations(range(len(fields)), 2):
        coeffs = decompose(fields[a].bracket(fields[b]), fields)
        image = {s: c for s, c in enumerate(coeffs) if c}
        if image:
            table[(a, b)] = image
    return table


def hol_algebra() -> LieAlgebra:
    """The bracket algebra of hol_basis(), with basis names t, h1, h2, d, r, i1, i2, j."""
    return LieAlgebra(HEISENBERG_NAMES, commutator_table(hol_basis()))


def dilation_from_solution_list() -> HoloField:
    """The dilation as it appears in the raw solution list: (1/2) z d/dz + w d/dw."""
    return HoloField.from_polys({(1, 0): Fraction(1, 2)}, {(0, 1): 1}, "D/2")
