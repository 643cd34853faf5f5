"""The explicit Cartan connection on M^3 x H and its curvature.

Frame of the total space: the horizontal fields T, H1, H2 (acting on jet
functions) and the five vertical fields D, R, I1, I2, J (acting on the fiber
coordinates a, b, c, d, e).  The lifted fields are

    T^  = sum_W alpha_{t,W} W,   H1^ = sum_W alpha_{h1,W} W,   H2^ likewise,

with alpha_{h1,t} = alpha_{h2,t} = 0, while the vertical lifts are the
vertical fields themselves.  Curvature coefficients come from decomposing
[X^, Y^] back on the lifted frame.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..jetcalc.words import PhiPoly, connection_delta, parse_phipoly
from ..liealg import heisenberg_prolonged
from .fiber import (
    FiberPoly,
    FiberRational,
    circle_norm,
    coeff_is_zero,
    fiber_variables,
    vertical_apply,
)

FRAME = ("t", "h1", "h2", "d", "r", "i1", "i2", "j")
HORIZONTAL = ("t", "h1", "h2")
VERTICAL = ("d", "r", "i1", "i2", "j")
DEGREE = dict(zip(FRAME, (-2, -1, -1, 0, 0, 1, 1, 2)))

Field = Dict[str, FiberPoly]


class SingularFrame(ValueError):
    pass


# -- the fiber-type template with free coefficient functions -------------------

def alpha_template(delta: Mapping[int, object]) -> Dict[Tuple[str, str], FiberPoly]:
    """The 22 connection coefficients as polynomials in (a, ..., e).

    ``delta[k]`` (k = 1..22) are the coefficient functions; they may be any
    ring elements (formal PhiPolys, series, numbers).
    """
    a, b, c, d, e = fiber_variables()
    q = Fraction
    D = {k: FiberPoly.const(delta[k]) for k in range(1, 23)}
    s = c * c + d * d
    al: Dict[Tuple[str, str], FiberPoly] = {}
    al["t", "t"] = s * D[22]
    al["t", "h1"] = -(a * d + b * c) * D[13] + (a * c - b * d) * D[14] + s * D[21]
    al["t", "h2"] = -(a * d + b * c) * D[11] + (a * c - b * d) * D[12] + s * D[20]
    al["t", "d"] = (
        -q(1, 4) * (b * c + a * d) * D[1] + q(1, 4) * (a * c - b * d) * D[2] + q(1, 4) * s * D[15] - 2 * e
    )
    al["t", "r"] = (
        q(1, 4) * s * D[4]
        + q(1, 2) * (a * c - b * d) * D[7]
        + q(1, 2) * s * D[9]
        - q(1, 2) * (a * d + b * c) * D[10]
        + q(1, 2) * s * D[19]
        + 3 * a * a
        + 3 * b * b
    )
    al["t", "i1"] = (
        -q(1, 4) * (a * a * d + a * b * c) * D[1]
        + q(1, 4) * (a * a * c - a * b * d) * D[2]
        + q(1, 24) * (d ** 3 + c * c * d) * D[3]
        + q(1, 8) * b * s * D[4]
        + q(1, 8) * (c ** 3 + c * d * d) * D[5]
        + q(1, 8) * a * s * D[6]
        + q(1, 2) * (a * b * c - b * b * d) * D[7]
        - q(1, 4) * (b * c * d + a * d * d) * D[8]
        + (q(1, 4) * b * c * c + q(1, 2) * b * d * d - q(1, 4) * a * c * d) * D[9]
        - q(1, 2) * (a * b * d + b * b * c) * D[10]
        + q(1, 4) * a * s * D[15]
        + q(1, 4) * (c ** 3 + c * d * d) * D[16]
        + q(1, 4) * (c * c * d + d ** 3) * D[17]
        + q(1, 2) * b * s * D[19]
        + 2 * a * a * b
        + 2 * b ** 3
    )
    al["t", "i2"] = (
        -q(1, 4) * (a * b * d + b * b * c) * D[1]
        + q(1, 4) * (a * b * c - b * b * d) * D[2]
        + q(1, 24) * (c ** 3 + c * d * d) * D[3]
        - q(1, 8) * a * s * D[4]
        - q(1, 8) * (c * c * d + d ** 3) * D[5]
        + q(1, 8) * b * s * D[6]
        + q(1, 2) * (a * b * d - a * a * c) * D[7]
        - q(1, 4) * (a * c * d + b * c * c) * D[8]
        + (-q(1, 2) * a * c * c + q(1, 4) * b * c * d - q(1, 4) * a * d * d) * D[9]
        + q(1, 2) * (a * a * d + a * b * c) * D[10]
        + q(1, 4) * b * s * D[15]
        - q(1, 4) * (c * c * d + d ** 3) * D[16]
        + q(1, 4) * (c ** 3 + c * d * d) * D[17]
        - q(1, 2) * a * s * D[19]
        - 2 * a ** 3
        - 2 * a * b * b
    )
    al["t", "j"] = (
        -(b * c * e + a * d * e) * D[1]
        + (a * c * e - b * d * e) * D[2]
        + (a * b * b * c + a ** 3 * c - b ** 3 * d - a * a * b * d) * D[7]
        + (a * b * c * c - a * b * d * d - b * b * c * d + a * a * c * d) * D[8]
        + (a * a * c * c + b * b * d * d - 2 * a * b * c * d) * D[9]
        - (a ** 3 * d + a * b * b * d + b ** 3 * c + a * a * b * c) * D[10]
        + e * s * D[15]
        + (a * d ** 3 + b * c ** 3 + a * c * c * d + b * c * d * d) * D[16]
        + (b * d ** 3 + b * c * c * d - a * c * d * d - a * c ** 3) * D[17]
        + s * s * D[18]
        + (a * a + b * b) * s * D[19]
        + 6 * a * a * b * b
        - 4 * e * e
        + 3 * a ** 4
        + 3 * b ** 4
    )
    al["h1", "h1"] = d * D[13] - c * D[14]
    al["h1", "h2"] = d * D[11] - c * D[12]
    al["h1", "d"] = q(1, 4) * d * D[1] - q(1, 4) * c * D[2] - 2 * b
    al["h1", "r"] = -q(1, 2) * c * D[7] + q(1, 2) * d * D[10] - 6 * a
    al["h1", "i1"] = (
        q(1, 4) * a * d * D[1]
        - q(1, 4) * a * c * D[2]
        - q(1, 8) * s * D[6]
        - q(1, 2) * b * c * D[7]
        + q(1, 4) * d * d * D[8]
        + q(1, 4) * c * d * D[9]
        + q(1, 2) * b * d * D[10]
        - 4 * a * b
        - 2 * e
    )
    al["h1", "i2"] = (
        q(1, 4) * b * d * D[1]
        - q(1, 4) * b * c * D[2]
        - q(1, 8) * s * D[4]
        + q(1, 2) * a * c * D[7]
        + q(1, 4) * c * d * D[8]
        - q(1, 4) * d * d * D[9]
        - q(1, 2) * a * d * D[10]
        + 3 * a * a
        - b * b
    )
    al["h1", "j"] = (
        d * e * D[1]
        - c * e * D[2]
        - q(1, 6) * (c ** 3 + c * d * d) * D[3]
        + q(1, 2) * a * s * D[4]
        + q(1, 2) * (d ** 3 + c * c * d) * D[5]
        - q(1, 2) * b * s * D[6]
        - (a * a * c + b * b * c) * D[7]
        + (b * d * d - a * c * d) * D[8]
        + (b * c * d + a * d * d) * D[9]
        + (a * a * d + b * b * d) * D[10]
        - 8 * b * e
        - 4 * a ** 3
        - 4 * a * b * b
    )
    al["h2", "h1"] = c * D[13] + d * D[14]
    al["h2", "h2"] = c * D[11] + d * D[12]
    al["h2", "d"] = q(1, 4) * c * D[1] + q(1, 4) * d * D[2] + 2 * a
    al["h2", "r"] = q(1, 2) * d * D[7] + q(1, 2) * c * D[10] - 6 * b
    al["h2", "i1"] = (
        q(1, 4) * a * c * D[1]
        + q(1, 4) * a * d * D[2]
        + q(1, 8) * s * D[4]
        + q(1, 2) * b * d * D[7]
        + q(1, 4) * c * d * D[8]
        + q(1, 4) * c * c * D[9]
        + q(1, 2) * b * c * D[10]
        - 3 * b * b
        + a * a
    )
    al["h2", "i2"] = (
        q(1, 4) * b * c * D[1]
        + q(1, 4) * b * d * D[2]
        - q(1, 8) * s * D[6]
        - q(1, 2) * a * d * D[7]
        + q(1, 4) * c * c * D[8]
        - q(1, 4) * c * d * D[9]
        - q(1, 2) * a * c * D[10]
        + 4 * a * b
        - 2 * e
    )
    al["h2", "j"] = (
        c * e * D[1]
        + d * e * D[2]
        + q(1, 6) * (d ** 3 + c * c * d) * D[3]
        + q(1, 2) * b * s * D[4]
        + q(1, 2) * (c ** 3 + c * d * d) * D[5]
        + q(1, 2) * a * s * D[6]
        + (a * a * d + b * b * d) * D[7]
        + (b * c * d - a * c * c) * D[8]
        + (b * c * c + a * c * d) * D[9]
        + (a * a * c + b * b * c) * D[10]
        - 4 * a * a * b
        + 8 * a * e
        - 4 * b ** 3
    )
    return al


@lru_cache(maxsize=None)
def alpha_formal() -> Dict[Tuple[str, str], FiberPoly]:
    """The connection coefficients with the determined delta's (PhiPoly coefficients)."""
    return alpha_template({k: connection_delta(k) for k in range(1, 23)})


# -- the alpha_tj closed form as displayed with Phi's substituted -------------

def _bracket(text: str) -> PhiPoly:
    return parse_phipoly(text)


ALPHA_TJ_DISPLAY_D4 = (
    "-11/1536 H2Phi2*H1Phi1 - 1/192 H1H1Phi1*Phi1 - 11/3072*2*Phi2*H2Phi2 + 1/384 Phi2^2*H2Phi2"
    " - 11/3072*2*Phi1*H1Phi1 + 1/384 Phi1^2*H1Phi1 + 1/48 H1H2H1Phi2 + 1/384 H2H2H2Phi2"
    " + 1/384 H1H1H1Phi1 + 1/384 Phi2^2*H1Phi1 - 1/192 H2H2Phi2*Phi2 + 1/48 H2H1H1Phi2"
    " + 1/64 H2H1Phi1*Phi2 - 1/48 Phi1*H2H1Phi2 + 1/384 Phi1^2*H2Phi2 - 7/384 H2H2H1Phi1"
    " + 1/64 H1H2Phi2*Phi1 - 7/384 H1H1H2Phi2 - 1/48 Phi2*H1H1Phi2"
)
ALPHA_TJ_DISPLAY_C2D2 = (
    "-11/768 H2Phi2*H1Phi1 - 7/192 H2H2H1Phi1 + 1/192 H2H2H2Phi2 + 1/192 H1H1H1Phi1"
    " + 1/24 H1H2H1Phi2 - 1/96 H2H2Phi2*Phi2 + 1/32 H1H2Phi2*Phi1 + 1/192 Phi2^2*H1Phi1"
    " - 7/192 H1H1H2Phi2 + 1/192 Phi2^2*H2Phi2 - 11/1536*2*Phi1*H1Phi1 - 1/24 Phi2*H1H1Phi2"
    " - 11/1536*2*Phi2*H2Phi2 + 1/32 H2H1Phi1*Phi2 - 1/96 H1H1Phi1*Phi1"
    " + 1/192 Phi1^2*H2Phi2 + 1/192 Phi1^2*H1Phi1 - 1/24 Phi1*H2H1Phi2 + 1/24 H2H1H1Phi2"
)
_GROUP_A = "-1/32 H1H1Phi1 + 1/32 H2Phi2*Phi1 - 1/32 H1H2Phi2 + 1/32 H1Phi1*Phi1"
_GROUP_B = "1/32 H2H1Phi1 + 1/32 H2H2Phi2 - 1/32 H2Phi2*Phi2 - 1/32 H1Phi1*Phi2"
_GROUP_C = "1/32 H2Phi2*Phi2 - 1/32 H2H1Phi1 - 1/32 H2H2Phi2 + 1/32 H1Phi1*Phi2"
_THREE_SIXTEENTHS = "3/16 H1Phi1 + 3/16 H2Phi2"

# (exponents of a, b, c, d, e) -> coefficient text, transcribed term by term
ALPHA_TJ_DISPLAY = {
    (4, 0, 0, 0, 0): "3",
    (0, 4, 0, 0, 0): "3",
    (0, 0, 0, 0, 2): "-4",
    (2, 2, 0, 0, 0): "6",
    (2, 1, 1, 0, 0): "-Phi1",
    (1, 2, 1, 0, 0): "Phi2",
    (1, 2, 0, 1, 0): "-Phi1",
    (2, 1, 0, 1, 0): "-Phi2",
    (0, 1, 1, 0, 1): "-2 Phi2",
    (1, 0, 1, 0, 1): "-2 Phi1",
    (1, 0, 0, 1, 1): "-2 Phi2",
    (0, 1, 0, 1, 1): "2 Phi1",
    (3, 0, 0, 1, 0): "-Phi1",
    (3, 0, 1, 0, 0): "Phi2",
    (0, 3, 1, 0, 0): "-Phi1",
    (0, 3, 0, 1, 0): "-Phi2",
    (0, 2, 0, 2, 0): _THREE_SIXTEENTHS,
    (0, 0, 0, 4, 0): ALPHA_TJ_DISPLAY_D4,
    (0, 0, 2, 2, 0): ALPHA_TJ_DISPLAY_C2D2,
    (0, 1, 1, 2, 0): _GROUP_A,
    (1, 0, 1, 2, 0): _GROUP_B,
    (1, 0, 0, 3, 0): _GROUP_A,
    (1, 0, 3, 0, 0): _GROUP_B,
    (2, 0, 0, 2, 0): _THREE_SIXTEENTHS,
    (0, 1, 0, 3, 0): _GROUP_C,
    (0, 1, 3, 0, 0): _GROUP_A,
    (2, 0, 2, 0, 0): _THREE_SIXTEENTHS,
    (0, 2, 2, 0, 0): _THREE_SIXTEENTHS,
    (0, 1, 2, 1, 0): _GROUP_C,
    (1, 0, 2, 1, 0): _GROUP_A,
    (0, 0, 4, 0, 0): ALPHA_TJ_DISPLAY_D4,
}


def alpha_tj_display() -> FiberPoly:
    return FiberPoly({mono: _bracket(text) for mono, text in ALPHA_TJ_DISPLAY.items()})


def diff_alpha_tj_display() -> Dict[Tuple[int, ...], PhiPoly]:
    """Monomials where the displayed alpha_tj and the template with the
    determined delta's disagree (modulo H_1 Phi_2 = H_2 Phi_1)."""
    template = alpha_formal()["t", "j"]
    display = alpha_tj_display()
    out = {}
    for mono in set(template.terms) | set(display.terms):
        diff = (template.coefficient(mono, PhiPoly()) - display.coefficient(mono, PhiPoly())).reduce_symmetric()
        if not diff.is_zero():
            out[mono] = diff
    return out


# -- realised connection --------------------------------------------------------

@dataclass
class ConnectionCoefficients:
    """The 22 alpha's realised over a jet ring, plus the frame operators."""

    ring: object
    alpha: Dict[Tuple[str, str], FiberPoly]
    algebra: object = field(default_factory=heisenberg_prolonged)

    @classmethod
    def build(cls, ring) -> "ConnectionCoefficients":
        alpha = {key: poly.map_coefficients(ring.lift) for key, poly in alpha_formal().items()}
        return cls(ring=ring, alpha=alpha)

    # fields -------------------------------------------------------------
    def lifted(self, name: str) -> Field:
        if name in VERTICAL:
            return {name: FiberPoly.const(1)}
        return {w: self.alpha[name, w] for w in FRAME if (name, w) in self.alpha and not self.alpha[name, w].is_zero()}

    def frame_apply(self, w: str, f: FiberPoly) -> FiberPoly:
        """Apply one frame field to a fiber polynomial with jet coefficients."""
        ring = self.ring
        if w == "t":
            return f.map_coefficients(ring.T)
        if w == "h1":
            return f.map_coefficients(lambda c: ring.H(1, c))
        if w == "h2":
            return f.map_coefficients(lambda c: ring.H(2, c))
        return vertical_apply(w, f)

    def field_apply(self, fld: Field, f: FiberPoly) -> FiberPoly:
        out = FiberPoly()
        for w, coeff in fld.items():
            term = self.frame_apply(w, f)
            if not term.is_zero():
                out = out + coeff * term
        return out

    def field_apply_rational(self, fld: Field, f: FiberRational) -> FiberRational:
        """Apply a field to num / s^k, s = c^2 + d^2 (s is a function of the fiber only)."""
        applied = self.field_apply(fld, f.num)
        if f.power == 0:
            return FiberRational(applied, 0)
        s = circle_norm()
        ds = self.field_apply(fld, s)
        return FiberRational(applied * s - f.num * ds * f.power, f.power + 1)

    def frame_bracket(self, v: str, w: str) -> Dict[str, object]:
        """Structure functions of the frame: [V, W] = sum_U coeff U."""
        if v in VERTICAL and w in VERTICAL:
            return {u: val for u, val in self.algebra.bracket_names(v, w).items()}
        if v in VERTICAL or w in VERTICAL:
            return {}
        if v == w:
            return {}
        if (v, w) == ("h1", "h2"):
            return {"t": 4}
        if (v, w) == ("h2", "h1"):
            return {"t": -4}
        if v == "t":
            return {"t": -self.ring.phi(int(w[1]))}
        return {"t": self.ring.phi(int(v[1]))}

    def bracket(self, x: Field, y: Field) -> Field:
        """Lie bracket of two fields written in the frame."""
        out: Dict[str, FiberPoly] = {}
        for w in FRAME:
            total = FiberPoly()
            if w in y:
                total = total + self.field_apply(x, y[w])
            if w in x:
                total = total - self.field_apply(y, x[w])
            out[w] = total
        for v, fv in x.items():
            for w, gw in y.items():
                structure = self.frame_bracket(v, w)
                if not structure:
                    continue
                product = fv * gw
                for u, coeff in structure.items():
                    out[u] = out[u] + product * coeff
        return {w: f for w, f in out.items() if not f.is_zero()}

    def lifted_bracket(self, x: str, y: str) -> Field:
        return self.bracket(self.lifted(x), self.lifted(y))

    # decomposition on the lifted frame -----------------------------------------
    def decompose(self, v: Field) -> Dict[str, FiberRational]:
        """Coefficients kappa_Z with v = sum_Z kappa_Z Z^, by triangular elimination."""
        s = circle_norm()
        al = self.alpha
        zero = FiberPoly()
        if not (al["t", "t"] - s).is_zero():
            raise SingularFrame("alpha_tt is expected to equal c^2 + d^2")
        c, d = FiberPoly.var("c"), FiberPoly.var("d")
        expected = {("h1", "h1"): c, ("h1", "h2"): d, ("h2", "h1"): -d, ("h2", "h2"): c}
        for key, value in expected.items():
            if not (al[key] - value).is_zero():
                raise SingularFrame("horizontal block is expected to be [[c, d], [-d, c]]")
        vt, v1, v2 = v.get("t", zero), v.get("h1", zero), v.get("h2", zero)
        kt = FiberRational(vt, 1)
        r1 = FiberRational(v1 * s - vt * al["t", "h1"], 1)
        r2 = FiberRational(v2 * s - vt * al["t", "h2"], 1)
        k1 = (r1 * c + r2 * d) * FiberRational(FiberPoly.const(1), 1)
        k2 = (r2 * c - r1 * d) * FiberRational(FiberPoly.const(1), 1)
        out = {"t": kt, "h1": k1, "h2": k2}
        for w in VERTICAL:
            total = FiberRational(v.get(w, zero), 0)
            for z, kz in (("t", kt), ("h1", k1), ("h2", k2)):
                total = total - kz * al[z, w]
            out[w] = total
        return {z: val.reduce() for z, val in out.items()}

    def decompose_by_dual(self, v: Field) -> Dict[str, FiberRational]:
        """Same decomposition through the closed-form dual coefficients beta."""
        beta = build_beta(self.alpha)
        zero = FiberPoly()
        out = {}
        for z in FRAME:
            total = FiberRational(v.get(z, zero), 0) if z in VERTICAL else FiberRational(zero, 0)
            for w in HORIZONTAL:
                if (z, w) in beta:
                    total = total + beta[z, w] * v.get(w, zero)
            out[z] = total.reduce()
        return out

    # curvature ------------------------------------------------------------------
    def curvature(self, pair: Tuple[str, str], route: str = "triangular") -> Dict[str, FiberRational]:
        """All eight curvature coefficients of a pair of frame directions.

        kappa^{xy}_z is the z-coefficient of [X^, Y^] on the lifted frame minus
        the structure constant c^z_{xy} of the model algebra.  With this sign
        the homogeneity-4 coefficients take the closed forms in Delta_1, Delta_4
        (see :func:`essential_forms`).
        """
        x, y = pair
        v = self.lifted_bracket(x, y)
        parts = self.decompose(v) if route == "triangular" else self.decompose_by_dual(v)
        structure = self.algebra.bracket_names(x, y)
        out = {}
        for z in FRAME:
            const = FiberRational(FiberPoly.const(structure.get(z, 0)), 0)
            out[z] = (parts[z] - const).reduce()
        return out

    def horizontal_apply(self, w: str, f: FiberPoly) -> FiberPoly:
        if w not in HORIZONTAL:
            raise ValueError(f"{w!r} is not a horizontal direction")
        return self.frame_apply(w, f)


def build_beta(alpha: Mapping[Tuple[str, str], FiberPoly]) -> Dict[Tuple[str, str], FiberRational]:
    """Dual coefficients beta_{Z,W} (W in t, h1, h2) of the lifted coframe.

    With A = alpha_tt and det = alpha_h1h1 alpha_h2h2 - alpha_h1h2 alpha_h2h1,
    all denominators are A * det, which must be a power of c^2 + d^2 times a
    constant for the result to be expressed as a FiberRational.
    """
    al = alpha
    s = circle_norm()
    det2 = al["h1", "h1"] * al["h2", "h2"] - al["h1", "h2"] * al["h2", "h1"]
    denominator = al["t", "t"] * det2
    if not (denominator - s * s).is_zero():
        raise SingularFrame("alpha_tt * det is expected to equal (c^2 + d^2)^2")

    def over(num: FiberPoly) -> FiberRational:
        return FiberRational(num, 2)

    beta: Dict[Tuple[str, str], FiberRational] = {}
    A = al["t", "t"]
    beta["t", "t"] = over(det2)  # 1/alpha_tt = det2 / (alpha_tt det2)
    beta["h1", "t"] = over(-al["t", "h1"] * al["h2", "h2"] + al["t", "h2"] * al["h2", "h1"])
    beta["h1", "h1"] = over(al["h2", "h2"] * A)
    beta["h1", "h2"] = over(-al["h2", "h1"] * A)
    beta["h2", "t"] = over(al["t", "h1"] * al["h1", "h2"] - al["t", "h2"] * al["h1", "h1"])
    beta["h2", "h1"] = over(-al["h1", "h2"] * A)
    beta["h2", "h2"] = over(al["h1", "h1"] * A)
    for v in VERTICAL:
        beta[v, "t"] = over(
            -al["t", "h1"] * al["h1", "h2"] * al["h2", v]
            + al["t", "h1"] * al["h1", v] * al["h2", "h2"]
            + al["t", "h2"] * al["h2", v] * al["h1", "h1"]
            - al["t", "h2"] * al["h2", "h1"] * al["h1", v]
            - al["t", v] * al["h1", "h1"] * al["h2", "h2"]
            + al["t", v] * al["h1", "h2"] * al["h2", "h1"]
        )
        beta[v, "h1"] = over(al["h1", "h2"] * al["h2", v] * A - al["h1", v] * al["h2", "h2"] * A)
        beta[v, "h2"] = over(-al["h2", v] * al["h1", "h1"] * A + al["h2", "h1"] * al["h1", v] * A)
    return {k: val.reduce() for k, val in beta.items()}


# -- the shorter closed forms as typeset, for comparison with the template -------

def _phi(text: str) -> FiberPoly:
    return FiberPoly.const(parse_phipoly(text))


def alpha_closed_forms() -> Dict[Tuple[str, str], FiberPoly]:
    """Closed forms of the low-homogeneity coefficients, transcribed term by term.

    Two of them carry visible typesetting slips that are transcribed as they
    read: a doubled Phi_2 in alpha_td and a product H_1(Phi_1) H_2(Phi_2) in
    the c^2 coefficient of alpha_tr.  :func:`diff_closed_forms` reports them.
    """
    a, b, c, d, e = fiber_variables()
    half = Fraction(1, 2)
    p1, p2 = _phi("Phi1"), _phi("Phi2")
    trace = _phi("H1Phi1 + H2Phi2")
    forms = {
        ("t", "t"): c * c + d * d,
        ("t", "h1"): b * d - a * c,
        ("t", "h2"): -a * d - b * c,
        ("h1", "h1"): c,
        ("h1", "h2"): d,
        ("h2", "h1"): -d,
        ("h2", "h2"): c,
        ("h1", "d"): -2 * b + half * p1 * c + half * p2 * d,
        ("h2", "d"): 2 * a + half * p2 * c - half * p1 * d,
        ("h1", "r"): -6 * a - half * p2 * c + half * p1 * d,
        ("h2", "r"): -6 * b + half * p1 * c + half * p2 * d,
        ("t", "d"): half * (b * d - a * c) * p1 - half * p2 * (b * c + a * d) * p2 - 2 * e,
        ("t", "r"): Fraction(1, 32) * _phi("H1Phi1*H2Phi2") * c * c
        + Fraction(1, 32) * trace * d * d
        - half * (a * d + b * c) * p1
        + half * (a * c - b * d) * p2
        + 3 * a * a
        + 3 * b * b,
        ("h1", "i1"): half * (b * d + a * c) * p1 - half * (b * c - a * d) * p2 - 4 * a * b - 2 * e,
        ("h1", "i2"): Fraction(1, 32) * trace * (c * c + d * d)
        + half * (b * c - a * d) * p1
        + half * (a * c + b * d) * p2
        + 3 * a * a
        - b * b,
        ("h2", "i1"): -Fraction(1, 32) * trace * (c * c + d * d)
        + half * (b * c - a * d) * p1
        + half * (a * c + b * d) * p2
        + a * a
        - 3 * b * b,
        ("h2", "i2"): -half * (a * c + b * d) * p1 - half * (a * d - b * c) * p2 + 4 * a * b - 2 * e,
        ("t", "j"): alpha_tj_display(),
    }
    return forms


def _fiber_diff(left: FiberPoly, right: FiberPoly) -> Dict[Tuple[int, ...], PhiPoly]:
    out = {}
    for mono in set(left.terms) | set(right.terms):
        lhs = left.coefficient(mono, PhiPoly())
        rhs = right.coefficient(mono, PhiPoly())
        diff = (PhiPoly() + lhs - rhs).reduce_symmetric()
        if not diff.is_zero():
            out[mono] = diff
    return out


def diff_closed_forms() -> Dict[Tuple[str, str], Dict[Tuple[int, ...], PhiPoly]]:
    """Entries where the typeset closed forms differ from the template with the determined delta's.

    Each value maps a fiber monomial (exponents of a..e) to template minus typeset,
    compared modulo H_1(Phi_2) = H_2(Phi_1).
    """
    template = alpha_formal()
    out = {}
    for key, typeset in alpha_closed_forms().items():
        diff = _fiber_diff(template[key], typeset)
        if diff:
            out[key] = diff
    return out


# -- equivariance system ----------------------------------------------------------

def _alpha_entry(alpha: Mapping[Tuple[str, str], FiberPoly], row: str, col: str) -> FiberPoly:
    if row in VERTICAL:
        return FiberPoly.const(1) if row == col else FiberPoly()
    return alpha.get((row, col), FiberPoly())


@dataclass
class EquationStatus:
    index: int
    vertical: str
    row: str
    slot: str
    zero: bool


@dataclass
class C1Report:
    equations: List[EquationStatus]
    trivial: int
    routes_agree: bool

    @property
    def ok(self) -> bool:
        return self.routes_agree and all(eq.zero for eq in self.equations)

    @property
    def failures(self) -> List[EquationStatus]:
        return [eq for eq in self.equations if not eq.zero]


def c1_equation(alpha, vertical: str, row: str, slot: str, algebra=None) -> FiberPoly:
    """V(alpha_{row,slot}) + sum alpha_{row,W'} c^{slot}_{V,W'} - sum_z c^z_{V,row} alpha_{z,slot}.

    This is the slot component of [V^, Row^] - ([v, row])^, which vanishes for
    a connection equivariant under the structure group.
    """
    algebra = algebra or heisenberg_prolonged()
    total = vertical_apply(vertical, _alpha_entry(alpha, row, slot))
    for w in VERTICAL:
        coeff = algebra.bracket_names(vertical, w).get(slot, 0)
        if coeff:
            total = total + _alpha_entry(alpha, row, w) * coeff
    for z, coeff in algebra.bracket_names(vertical, row).items():
        total = total - _alpha_entry(alpha, z, slot) * coeff
    return total


def check_c1_system(alpha: Optional[Mapping[Tuple[str, str], FiberPoly]] = None,
                    connection: Optional[ConnectionCoefficients] = None) -> C1Report:
    """Evaluate the 110 nontrivial equivariance equations.

    With the default arguments the equations are checked as exact identities
    over the formal Phi-ring (they involve no horizontal derivatives).  When a
    realised ``connection`` is given, the same components are recomputed from
    the general bracket routine and compared.
    """
    algebra = heisenberg_prolonged()
    alpha = alpha if alpha is not None else alpha_formal()
    equations: List[EquationStatus] = []
    trivial = 0
    index = 0
    for v in VERTICAL:
        for row in HORIZONTAL:
            for slot in FRAME:
                if row != "t" and slot == "t":
                    trivial += 1
                    continue
                index += 1
                value = c1_equation(alpha, v, row, slot, algebra)
                equations.append(EquationStatus(index, v, row, slot, value.is_zero()))
    routes_agree = True
    if connection is not None:
        eq_by_key = {(eq.vertical, eq.row, eq.slot): eq for eq in equations}
        for v in VERTICAL:
            for row in HORIZONTAL:
                bracket = connection.lifted_bracket(v, row)
                image: Dict[str, FiberPoly] = {}
                for z, coeff in algebra.bracket_names(v, row).items():
                    for slot, f in connection.lifted(z).items():
                        image[slot] = image.get(slot, FiberPoly()) + f * coeff
                for slot in FRAME:
                    residual = bracket.get(slot, FiberPoly()) - image.get(slot, FiberPoly())
                    key = (v, row, slot)
                    expected_zero = eq_by_key[key].zero if key in eq_by_key else True
                    if residual.is_zero() != expected_zero:
                        routes_agree = False
    return C1Report(equations=equations, trivial=trivial, routes_agree=routes_agree)


# -- determinant of the lifted frame ------------------------------------------------

def fiber_determinant(matrix: Sequence[Sequence[FiberPoly]]) -> FiberPoly:
    """Laplace expansion along the first column, skipping zero entries."""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    total = FiberPoly()
    for row in range(n):
        entry = matrix[row][0]
        if entry.is_zero():
            continue
        minor = [r[1:] for k, r in enumerate(matrix) if k != row]
        term = entry * fiber_determinant(minor)
        total = total + term if row % 2 == 0 else total - term
    return total


def frame_matrix(alpha: Optional[Mapping[Tuple[str, str], FiberPoly]] = None) -> List[List[FiberPoly]]:
    """Rows: the eight lifted fields; columns: their components on (T, H1, H2, D, R, I1, I2, J)."""
    alpha = alpha if alpha is not None else alpha_formal()
    return [[_alpha_entry(alpha, row, col) for col in FRAME] for row in FRAME]


def connection_matrix_det(alpha: Optional[Mapping[Tuple[str, str], FiberPoly]] = None) -> FiberPoly:
    return fiber_determinant(frame_matrix(alpha))


# -- curvature bookkeeping -----------------------------------------------------------

CURVATURE_PAIRS = (("h1", "h2"), ("h1", "t"), ("h2", "t"))


def homogeneity(pair: Tuple[str, str], target: str) -> int:
    return DEGREE[target] - DEGREE[pair[0]] - DEGREE[pair[1]]


def coefficients_by_homogeneity() -> Dict[int, List[Tuple[Tuple[str, str], str]]]:
    out: Dict[int, List[Tuple[Tuple[str, str], str]]] = {}
    for pair in CURVATURE_PAIRS:
        for target in FRAME:
            out.setdefault(homogeneity(pair, target), []).append((pair, target))
    return out


def coefficient_name(pair: Tuple[str, str], target: str) -> str:
    return f"kappa^{pair[0]}{pair[1]}_{target}"


def curvature_coefficient(connection: ConnectionCoefficients, pair: Tuple[str, str], target: str):
    """(coefficient, homogeneity) for one curvature component."""
    return connection.curvature(pair)[target], homogeneity(pair, target)


def essential_forms(delta1, delta4) -> Dict[Tuple[Tuple[str, str], str], FiberPoly]:
    """The four homogeneity-4 coefficients of a normal connection written through Delta_1 and Delta_4."""
    c, d = FiberPoly.var("c"), FiberPoly.var("d")
    k11 = -(c ** 4) * delta1 - 2 * (c ** 3 * d) * delta4 - 2 * (c * d ** 3) * delta4 + (d ** 4) * delta1
    k12 = -(c ** 4) * delta4 + 2 * (c ** 3 * d) * delta1 + 2 * (c * d ** 3) * delta1 + (d ** 4) * delta4
    return {
        (("h1", "t"), "i1"): k11,
        (("h1", "t"), "i2"): k12,
        (("h2", "t"), "i1"): k12,
        (("h2", "t"), "i2"): -k11,
    }


def raw_forms(delta1, delta2, delta3, delta4) -> Dict[Tuple[Tuple[str, str], str], FiberPoly]:
    """kappa^{h1 t}_{i1}, kappa^{h1 t}_{i2} through the four auxiliary functions, before Delta_2 = 0."""
    c, d = FiberPoly.var("c"), FiberPoly.var("d")
    mixed = c ** 3 * d + c * d ** 3
    k11 = d ** 4 * delta1 + c ** 4 * (delta2 - delta1) + (c * c * d * d) * delta2 + mixed * delta3
    k12 = d ** 4 * delta4 + c ** 4 * (delta3 + delta4) + (c * c * d * d) * (delta3 + 2 * delta4) + mixed * (
        2 * delta1 - delta2
    )
    return {(("h1", "t"), "i1"): k11, (("h1", "t"), "i2"): k12}


def essential_curvatures() -> Tuple[PhiPoly, PhiPoly]:
    """Delta_1 and Delta_4 as polynomials in the Phi-words."""
    from ..jetcalc.words import essential_symmetric

    return essential_symmetric("Delta1"), essential_symmetric("Delta4")


def auxiliary_curvatures() -> Dict[str, PhiPoly]:
    """Delta_1 ... Delta_4 in their unsymmetrised form."""
    from ..jetcalc.words import curvature_raw

    return {name: curvature_raw(name) for name in ("Delta1", "Delta2", "Delta3", "Delta4")}


def curvature_h5(connection: ConnectionCoefficients) -> Dict[str, Dict[str, FiberRational]]:
    """The two homogeneity-5 coefficients by two routes.

    ``direct``: decomposition of [H_i^, T^]; ``derived``: the lifted fields
    applied to the homogeneity-4 coefficients,
        kappa^{h1 t}_j = H1^(kappa^{h2 t}_{i2}) - H2^(kappa^{h1 t}_{i2}),
        kappa^{h2 t}_j = -H1^(kappa^{h2 t}_{i1}) + H2^(kappa^{h1 t}_{i1}).
    """
    k1 = connection.curvature(("h1", "t"))
    k2 = connection.curvature(("h2", "t"))
    h1, h2 = connection.lifted("h1"), connection.lifted("h2")
    apply = connection.field_apply_rational
    derived_1 = (apply(h1, k2["i2"]) - apply(h2, k1["i2"])).reduce()
    derived_2 = (apply(h2, k1["i1"]) - apply(h1, k2["i1"])).reduce()
    return {
        "direct": {"h1t": k1["j"], "h2t": k2["j"]},
        "derived": {"h1t": derived_1, "h2t": derived_2},
    }


def normality_violations(curvatures: Mapping[Tuple[str, str], Mapping[str, FiberRational]]) -> List[str]:
    """Names of t-, h-, d- or r-components that fail to vanish."""
    bad = []
    for pair, components in curvatures.items():
        for target in ("t", "h1", "h2", "d", "r"):
            if not components[target].is_zero():
                bad.append(coefficient_name(pair, target))
    return bad
