"""Exact identity testing on jets: random rational jet points and reports.

An identity in the jet variables is checked either by expanding its
numerator completely or by evaluating it exactly at random rational jet
points (Schwartz-Zippel).  Expressions in the Phi-words are evaluated through
the series frame, which handles any derivative depth the sampled jets allow.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Union

from .diffpoly import DiffPoly, MultiIndex
from .rational import DegeneratePoint, RationalJetExpr, build_basics
from .series import SeriesFrame
from .words import PhiPoly

COORDINATE_BOUND = 10 ** 4


@dataclass(frozen=True)
class JetPoint:
    """Values of the partial derivatives of phi (orders 1..order) at one point."""

    values: Mapping[MultiIndex, Fraction]

    @property
    def order(self) -> int:
        return max((sum(mi) for mi in self.values), default=0)

    def __getitem__(self, mi: MultiIndex) -> Fraction:
        return self.values.get(tuple(mi), Fraction(0))

    def basics(self) -> Dict[str, Fraction]:
        delta, lam1, lam2, upsilon = build_basics()
        return {
            "Delta": delta.evaluate(self.values),
            "Lambda1": lam1.evaluate(self.values),
            "Lambda2": lam2.evaluate(self.values),
            "Upsilon": upsilon.evaluate(self.values),
        }

    def is_degenerate(self) -> bool:
        basics = self.basics()
        return basics["Delta"] == 0 or basics["Upsilon"] == 0

    def frame(self) -> SeriesFrame:
        return SeriesFrame.from_jets(self.values, self.order)

    def to_json_dict(self) -> Dict[str, str]:
        from .diffpoly import jet_name

        return {jet_name(mi): str(v) for mi, v in sorted(self.values.items()) if v}


def multi_indices(max_order: int):
    for order in range(1, max_order + 1):
        for a in range(order, -1, -1):
            for b in range(order - a, -1, -1):
                yield (a, b, order - a - b)


def random_rational(rng: random.Random, bound: int) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_jet_point(rng: random.Random, order: int = 6, bound: int = COORDINATE_BOUND) -> JetPoint:
    """A jet point with Delta and Upsilon both nonzero (resampled otherwise)."""
    while True:
        point = JetPoint({mi: random_rational(rng, bound) for mi in multi_indices(order)})
        if not point.is_degenerate():
            return point


@dataclass
class VerificationReport:
    mode: str
    zero: bool
    points_tested: int = 0
    points_skipped: int = 0
    witness: Optional[JetPoint] = None
    witness_value: Optional[Fraction] = None
    values: List[Fraction] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        out = {
            "mode": self.mode,
            "status": "zero" if self.zero else "nonzero",
            "points_tested": self.points_tested,
            "points_skipped": self.points_skipped,
        }
        if self.witness is not None:
            out["witness_point"] = self.witness.to_json_dict()
            out["witness_value"] = str(self.witness_value)
        return out


Expression = Union[RationalJetExpr, DiffPoly, PhiPoly]


def evaluate_at(expr: Expression, point: JetPoint) -> Fraction:
    """Exact value at a jet point; raises DegeneratePoint if Delta or Upsilon vanishes there."""
    if isinstance(expr, PhiPoly):
        frame = point.frame()
        value = expr.evaluate(lambda atom: frame.phi_invariant(*atom), one=1)
        return Fraction(value if isinstance(value, (int, Fraction)) else value.constant())
    if isinstance(expr, DiffPoly):
        return expr.evaluate(point.values)
    return expr.evaluate(point.values)


def required_order(expr: Expression) -> int:
    if isinstance(expr, PhiPoly):
        return 3 + expr.max_word_length()
    if isinstance(expr, DiffPoly):
        return max(expr.max_jet_order(), 1)
    return max(expr.num.max_jet_order(), 2)


def verify_identity(
    expr: Expression,
    mode: str = "schwartz_zippel",
    n_points: int = 20,
    seed: int = 0,
    bound: int = COORDINATE_BOUND,
) -> VerificationReport:
    """Is ``expr`` identically zero?

    ``full_expansion`` inspects the expanded numerator (for a PhiPoly: the
    formal expression modulo H_1 Phi_2 = H_2 Phi_1).  ``schwartz_zippel``
    evaluates exactly at ``n_points`` random jet points, skipping points where
    Delta or Upsilon vanishes; the first nonzero value is kept as a witness.
    """
    if mode == "full_expansion":
        if isinstance(expr, PhiPoly):
            zero = expr.reduce_symmetric().is_zero()
        elif isinstance(expr, DiffPoly):
            zero = expr.is_zero()
        else:
            zero = expr.num.is_zero()
        return VerificationReport(mode=mode, zero=zero)
    if mode != "schwartz_zippel":
        raise ValueError(f"unknown verification mode {mode!r}")
    rng = random.Random(seed)
    order = required_order(expr)
    report = VerificationReport(mode=mode, zero=True)
    while report.points_tested < n_points:
        point = JetPoint({mi: random_rational(rng, bound) for mi in multi_indices(order)})
        try:
            value = evaluate_at(expr, point)
        except DegeneratePoint:
            report.points_skipped += 1
            continue
        report.points_tested += 1
        report.values.append(value)
        if value != 0 and report.zero:
            report.zero = False
            report.witness = point
            report.witness_value = value
    return report
