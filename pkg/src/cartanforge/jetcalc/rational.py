"""Quotients N / (Delta^p Upsilon^q) of jet polynomials and the frame operators.

The frame of a Levi nondegenerate hypersurface v = phi(x, y, u) is built from
three fixed polynomials:

    Delta    = 1 + phi_u^2
    Lambda_1 = phi_y - phi_x phi_u
    Lambda_2 = -phi_x - phi_y phi_u

and the Levi-form numerator Upsilon (ten monomials, see :func:`build_basics`).
The horizontal fields are H_k = D_{x_k} + (Lambda_k / Delta) D_u and the
transversal one is T = Upsilon / (4 Delta^2) D_u.  Every quantity in the
construction is a jet polynomial divided by powers of Delta and Upsilon, so
the only denominators we ever track are the exponent pair (p, q).
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence, Tuple, Union

from .diffpoly import JET_ID, DiffPoly, MultiIndex, Rational

PHI_U: MultiIndex = (0, 0, 1)
PHI_XX: MultiIndex = (2, 0, 0)


class DegeneratePoint(ValueError):
    """Delta or Upsilon vanishes at the requested jet point."""


def _v(name: str) -> DiffPoly:
    return DiffPoly.var(name)


@lru_cache(maxsize=None)
def build_basics() -> Tuple[DiffPoly, DiffPoly, DiffPoly, DiffPoly]:
    """Return (Delta, Lambda_1, Lambda_2, Upsilon) as jet polynomials."""
    px, py, pu = _v("x"), _v("y"), _v("u")
    pxx, pyy, puu = _v("xx"), _v("yy"), _v("uu")
    pxu, pyu = _v("xu"), _v("yu")
    delta = 1 + pu * pu
    lam1 = py - px * pu
    lam2 = -px - py * pu
    upsilon = (
        -pxx
        - pyy
        - 2 * py * pxu
        - px * px * puu
        + 2 * px * pyu
        - py * py * puu
        + 2 * py * pu * pyu
        + 2 * px * pu * pxu
        - pu * pu * pxx
        - pu * pu * pyy
    )
    return delta, lam1, lam2, upsilon


def lambda_k(k: int) -> DiffPoly:
    _, lam1, lam2, _ = build_basics()
    return lam1 if k == 1 else lam2


def _dir(k: int) -> str:
    return "x" if k == 1 else "y"


@lru_cache(maxsize=None)
def _basic_derivatives():
    delta, lam1, lam2, ups = build_basics()
    out = {}
    for name, poly in (("delta", delta), ("upsilon", ups)):
        for axis in "xyu":
            out[name, axis] = poly.total_derivative(axis)
    for k, lam in ((1, lam1), (2, lam2)):
        out["lambda", k, "u"] = lam.total_derivative("u")
    return out


@lru_cache(maxsize=None)
def _horizontal_of_basic(k: int, name: str) -> DiffPoly:
    """Delta * H_k(basic) as a polynomial: Delta D_k(f) + Lambda_k D_u(f)."""
    delta = build_basics()[0]
    der = _basic_derivatives()
    return delta * der[name, _dir(k)] + lambda_k(k) * der[name, "u"]


# -- exact divisibility tests -------------------------------------------------

def _reduce_mod_delta(num: DiffPoly) -> bool:
    """True when num vanishes after phi_u^2 -> -1 (i.e. Delta divides num)."""
    pu = JET_ID[PHI_U]
    real: dict = {}
    imag: dict = {}
    for mono, coeff in num.terms.items():
        power = mono.count(pu)
        rest = tuple(v for v in mono if v != pu)
        sign = -1 if power % 4 in (2, 3) else 1
        bucket = imag if power % 2 else real
        bucket[rest] = bucket.get(rest, 0) + sign * coeff
    return not any(real.values()) and not any(imag.values())


_PROBE_RNG = random.Random(20240611)


def _maybe_divisible_by_upsilon(num: DiffPoly) -> bool:
    """Necessary condition: num vanishes at a random point of {Upsilon = 0}.

    Upsilon = -Delta * phi_xx + rest, with rest free of phi_xx, so choosing
    phi_xx = rest / Delta puts a random point on the hypersurface.
    """
    delta, _, _, ups = build_basics()
    point = {}
    for mi in num.variables() | ups.variables():
        point[mi] = Fraction(_PROBE_RNG.randint(-97, 97), _PROBE_RNG.randint(1, 29))
    point[PHI_XX] = Fraction(0)
    rest = ups.evaluate(point)
    point[PHI_XX] = rest / delta.evaluate(point)
    return num.evaluate(point) == 0


def _strip_factors(num: DiffPoly, p: int, q: int) -> Tuple[DiffPoly, int, int]:
    delta, _, _, ups = build_basics()
    if num.is_zero():
        return num, 0, 0
    while p > 0 and _reduce_mod_delta(num):
        quotient = num.divide_exact(delta)
        if quotient is None:
            break
        num, p = quotient, p - 1
    while q > 0 and _maybe_divisible_by_upsilon(num):
        quotient = num.divide_exact(ups)
        if quotient is None:
            break
        num, q = quotient, q - 1
    return num, p, q


# -- the quotient type --------------------------------------------------------

class RationalJetExpr:
    """The value num / (Delta^p * Upsilon^q)."""

    __slots__ = ("num", "p", "q")

    def __init__(self, num: Union[DiffPoly, Rational], p: int = 0, q: int = 0, *, normalize: bool = False):
        if not isinstance(num, DiffPoly):
            num = DiffPoly.const(num)
        if p < 0 or q < 0:
            raise ValueError("denominator exponents must be non-negative")
        if num.is_zero():
            p = q = 0
        if normalize:
            num, p, q = _strip_factors(num, p, q)
        self.num, self.p, self.q = num, p, q

    @classmethod
    def const(cls, value: Rational) -> "RationalJetExpr":
        return cls(DiffPoly.const(value))

    def normalized(self) -> "RationalJetExpr":
        return RationalJetExpr(self.num, self.p, self.q, normalize=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __repr__(self) -> str:
        return f"RationalJetExpr(<{len(self.num)} terms>, p={self.p}, q={self.q})"

    # arithmetic: numerators over a common denominator
    def _lift(self, p: int, q: int) -> DiffPoly:
        delta, _, _, ups = build_basics()
        out = self.num
        if p > self.p:
            out = out * delta ** (p - self.p)
        if q > self.q:
            out = out * ups ** (q - self.q)
        return out

    def __add__(self, other) -> "RationalJetExpr":
        other = _coerce(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        p, q = max(self.p, other.p), max(self.q, other.q)
        return RationalJetExpr(self._lift(p, q) + other._lift(p, q), p, q)

    __radd__ = __add__

    def __neg__(self) -> "RationalJetExpr":
        return RationalJetExpr(-self.num, self.p, self.q)

    def __sub__(self, other) -> "RationalJetExpr":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "RationalJetExpr":
        return _coerce(other) - self

    def __mul__(self, other) -> "RationalJetExpr":
        if isinstance(other, (int, Fraction)):
            return RationalJetExpr(self.num.scale(other), self.p, self.q)
        other = _coerce(other)
        return RationalJetExpr(self.num * other.num, self.p + other.p, self.q + other.q)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, DiffPoly)):
            other = _coerce(other)
        if not isinstance(other, RationalJetExpr):
            return NotImplemented
        p, q = max(self.p, other.p), max(self.q, other.q)
        return self._lift(p, q) == other._lift(p, q)

    __hash__ = None  # equality is up to cross-multiplication

    def evaluate(self, point: Mapping[MultiIndex, Rational]) -> Fraction:
        delta, _, _, ups = build_basics()
        den = Fraction(1)
        if self.p:
            value = delta.evaluate(point)
            if value == 0:
                raise DegeneratePoint("Delta vanishes at this jet point")
            den *= value ** self.p
        if self.q:
            value = ups.evaluate(point)
            if value == 0:
                raise DegeneratePoint("Upsilon vanishes at this jet point")
            den *= value ** self.q
        return self.num.evaluate(point) / den


def _coerce(value) -> RationalJetExpr:
    if isinstance(value, RationalJetExpr):
        return value
    if isinstance(value, (int, Fraction, DiffPoly)):
        return RationalJetExpr(value)
    raise TypeError(f"cannot use {type(value).__name__} as a jet expression")


# -- frame operators ----------------------------------------------------------

def horizontal_numerator(k: int, num: DiffPoly, p: int, q: int) -> DiffPoly:
    """Numerator of H_k(num / (Delta^p Upsilon^q)) over Delta^(p+2) Upsilon^(q+1).

    Quotient rule with H_k = (Delta D_k + Lambda_k D_u) / Delta:
        Upsilon Delta (Delta D_k N + Lambda_k D_u N)
        - p N Upsilon (Delta H_k Delta)
        - q N Delta (Delta H_k Upsilon)
    """
    delta, _, _, ups = build_basics()
    lam = lambda_k(k)
    d_num = delta * num.total_derivative(_dir(k)) + lam * num.total_derivative("u")
    out = ups * delta * d_num
    if p:
        out = out - (ups * _horizontal_of_basic(k, "delta") * num).scale(p)
    if q:
        out = out - (delta * _horizontal_of_basic(k, "upsilon") * num).scale(q)
    return out


def apply_H(k: int, f: Union[RationalJetExpr, DiffPoly, Rational], *, normalize: bool = False) -> RationalJetExpr:
    """Apply the horizontal field H_k (k = 1 or 2)."""
    if k not in (1, 2):
        raise ValueError("k must be 1 or 2")
    f = _coerce(f)
    if f.num.is_zero():
        return RationalJetExpr(0)
    num = horizontal_numerator(k, f.num, f.p, f.q)
    return RationalJetExpr(num, f.p + 2, f.q + 1, normalize=normalize)


def apply_T(f: Union[RationalJetExpr, DiffPoly, Rational], *, normalize: bool = False) -> RationalJetExpr:
    """Apply T = Upsilon / (4 Delta^2) D_u.

    T(N / (Delta^p Upsilon^q)) =
        (Delta Upsilon D_u N - p Upsilon N D_u Delta - q Delta N D_u Upsilon)
        / (4 Delta^(p+3) Upsilon^q)
    """
    f = _coerce(f)
    if f.num.is_zero():
        return RationalJetExpr(0)
    delta, _, _, ups = build_basics()
    der = _basic_derivatives()
    num = delta * ups * f.num.total_derivative("u")
    if f.p:
        num = num - (ups * der["delta", "u"] * f.num).scale(f.p)
    if f.q:
        num = num - (delta * der["upsilon", "u"] * f.num).scale(f.q)
    return RationalJetExpr(num.scale(Fraction(1, 4)), f.p + 3, f.q, normalize=normalize)


@lru_cache(maxsize=None)
def build_A(word: Tuple[int, ...]) -> DiffPoly:
    """Numerator A_{i,k1,...,km} of the m-fold H-derivative of Phi_i.

    ``word = (i, k1, ..., km)``; the denominator is Delta^(2m+2) Upsilon^(m+1).
    """
    word = tuple(word)
    if not 1 <= len(word) <= 4 or any(k not in (1, 2) for k in word):
        raise ValueError("word must be 1..4 letters from {1, 2}")
    if len(word) == 1:
        i = word[0]
        delta, _, _, ups = build_basics()
        der = _basic_derivatives()
        lam = lambda_k(i)
        axis = _dir(i)
        return (
            delta * delta * der["upsilon", axis]
            + delta * (
                -2 * der["delta", axis] * ups
                + lam * der["upsilon", "u"]
                - ups * der["lambda", i, "u"]
            )
            - lam * ups * der["delta", "u"]
        )
    m = len(word) - 2
    return horizontal_numerator(word[-1], build_A(word[:-1]), 2 * m + 2, m + 1)


def build_phi(word: Sequence[int], i: int) -> RationalJetExpr:
    """H_{k_m}( ... H_{k_1}(Phi_i)) for ``word = (k_1, ..., k_m)``."""
    word = tuple(word)
    if len(word) > 3:
        raise ValueError("words of length at most 3 stay within jets of order 6")
    m = len(word)
    return RationalJetExpr(build_A((i,) + word), 2 * m + 2, m + 1)
