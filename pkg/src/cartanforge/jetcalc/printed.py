"""A literal transcription of the fully expanded numerator A_1, kept as a regression reference.

The normative A_1 is the induction formula (``build_A((1,))``).  The printed
expansion contains a few slips; :func:`diff_printed_A1` reports exactly which
monomials disagree instead of silently repairing the transcription.

Each group lists the coefficient of phi_u^k.  Terms are separated by ``;``,
factors by spaces, a factor is a jet name (``x`` for phi_x, ``xyu`` for
phi_xyu) with an optional ``^power``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Tuple

from .diffpoly import JET_INDICES, DiffPoly, jet_name
from .rational import build_A

PRINTED_A1_GROUPS = {
    0: """-1 xxx; -1 xyy; 2 x xyu; -3 y xxu; -1 y yyu; -3 y^2 xuu;
          2 x y yuu; -1 x^2 xuu; -1 x^2 y uuu; -1 y^3 uuu; -2 x y xu uu;
          -3 x xx uu; 1 y^2 uu yu; -2 y uu xy; 3 x^2 yu uu;
          -1 x yy uu; -1 x y^2 uu^2; 4 y xu yu; -1 x^3 uu^2; 1 yu yy;
          3 xx yu; -2 xu xy; 2 x xu^2; -2 x yu^2""",
    1: """3 x xxu; 2 y xyu; 1 x yyu; 4 x y xuu; 2 y^2 yuu;
          -2 x^2 yuu; 1 x y^2 uuu; 1 x^2 uuu; 2 x^2 uu^2 y; 5 uu xu x^2;
          -8 x xu yu; 7 y^2 xu uu; 1 yy xu; 2 y^3 uu^2; 3 xx xu;
          8 y xu^2; 2 xy yu; -2 x y yu uu""",
    2: """-3 xxx; -3 xyy; -6 y xxu; -2 y yyu; 4 x xyu; -4 y^2 xuu;
          -4 x^2 xuu; -1 y^3 uuu; -1 y x^2 uuu; -2 x uu yy; 7 x^2 yu uu;
          -6 x uu xx; -4 y uu xy; -3 y^2 uu^2 x; -3 y^2 uu yu; -4 xu xy;
          -3 x^3 uu^2; 6 xx yu; -4 x yu^2; -4 x xu^2; 2 yu yy; -10 x y xu uu""",
    3: """6 x xxu; 4 y xyu; 2 x yyu; 4 x y xuu; -2 x^2 yuu; 2 y^2 yuu;
          1 x^3 uuu; 1 x y^2 uuu; 3 y^2 xu uu; -8 xu yu x; 9 uu xu x^2;
          4 xy yu; 8 y xy^2; 2 yy xu; 6 xx xu; 6 x y yu uu""",
    4: """-3 xxx; -3 xyy; 2 x xyu; -1 y yyu; -3 y xxu; -3 x^2 xuuu;
          -2 x y yuu; -1 y^2 xuu; -3 x uu xx; -1 x uu yy; -6 x xu^2;
          -2 x yu^2; -2 y uu xy; -4 y xu yu; -2 xu xy; 3 xx yu; 1 yu yy""",
    5: """1 x yyu; 2 y xyu; 3 x xxu; 1 yy xu; 3 xx xu; 2 xy yu""",
    6: """-1 xxx; -1 xyy""",
}


def _factor(token: str) -> DiffPoly:
    name, _, power = token.partition("^")
    return DiffPoly.var(name) ** (int(power) if power else 1)


def parse_printed_group(text: str) -> DiffPoly:
    total = DiffPoly()
    for term in text.split(";"):
        tokens = term.split()
        if not tokens:
            continue
        value = DiffPoly.const(Fraction(tokens[0]))
        for token in tokens[1:]:
            value = value * _factor(token)
        total = total + value
    return total


def printed_A1() -> DiffPoly:
    phi_u = DiffPoly.var("u")
    total = DiffPoly()
    for k, text in PRINTED_A1_GROUPS.items():
        total = total + parse_printed_group(text) * phi_u ** k
    return total


def _monomial_text(mono) -> str:
    return "*".join(jet_name(JET_INDICES[v]) for v in mono)


def diff_printed_A1() -> Dict[str, Tuple[Fraction, Fraction]]:
    """Monomials where the induction formula and the printed expansion disagree.

    Values are (coefficient from the induction formula, printed coefficient).
    """
    exact = build_A((1,))
    printed = printed_A1()
    out = {}
    for mono in set(exact.terms) | set(printed.terms):
        a = Fraction(exact.terms.get(mono, 0))
        b = Fraction(printed.terms.get(mono, 0))
        if a != b:
            out[_monomial_text(mono)] = (a, b)
    return dict(sorted(out.items()))
