"""Coefficient rings for the horizontal (jet) part of fiber polynomials.

The connection coefficients are polynomials in (a, ..., e) whose coefficients
are functions of (x, y, u) built from Phi_1, Phi_2 and their H-derivatives.
A jet ring says how to realise those functions and how H_1, H_2, T act on
them.  Two realisations are provided:

* :class:`SeriesJetRing` - truncated Taylor series at one jet point (fast,
  exact at that point, any derivative depth the supplied jets allow);
* :class:`SymbolicJetRing` - exact RationalJetExpr (only practical for
  expressions using at most two H-derivatives of Phi_i).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Optional

from ..jetcalc.diffpoly import MultiIndex, Rational
from ..jetcalc.rational import RationalJetExpr, apply_H, apply_T, build_phi
from ..jetcalc.series import JetSeries, SeriesFrame
from ..jetcalc.words import PhiPoly


class SeriesJetRing:
    def __init__(self, frame: SeriesFrame):
        self.frame = frame

    @classmethod
    def from_jets(cls, point: Mapping[MultiIndex, Rational], order: Optional[int] = None) -> "SeriesJetRing":
        return cls(SeriesFrame.from_jets(point, order))

    def one(self) -> JetSeries:
        return JetSeries.const(1, self.frame.prec)

    def phi(self, i: int) -> JetSeries:
        return self.frame.phi_invariant((), i)

    def lift(self, poly: PhiPoly):
        if isinstance(poly, (int, Fraction)):
            return Fraction(poly)
        return poly.evaluate(lambda atom: self.frame.phi_invariant(*atom), one=self.one())

    def H(self, k: int, value):
        if isinstance(value, (int, Fraction)):
            return 0
        return self.frame.H(k, value)

    def T(self, value):
        if isinstance(value, (int, Fraction)):
            return 0
        return self.frame.T(value)

    @staticmethod
    def value(coeff) -> Fraction:
        """The value at the jet point (the constant term)."""
        if isinstance(coeff, (int, Fraction)):
            return Fraction(coeff)
        return Fraction(coeff.constant())


class SymbolicJetRing:
    def one(self) -> RationalJetExpr:
        return RationalJetExpr.const(1)

    def phi(self, i: int) -> RationalJetExpr:
        return build_phi((), i)

    def lift(self, poly: PhiPoly):
        if isinstance(poly, (int, Fraction)):
            return Fraction(poly)
        return poly.evaluate(lambda atom: build_phi(*atom), one=self.one())

    def H(self, k: int, value):
        if isinstance(value, (int, Fraction)):
            return 0
        return apply_H(k, value)

    def T(self, value):
        if isinstance(value, (int, Fraction)):
            return 0
        return apply_T(value)
