"""Formal polynomials in the iterated H-derivatives of Phi_1 and Phi_2.

An *atom* is a pair ``(word, i)`` standing for H_{k_m}(...H_{k_1}(Phi_i)) with
``word = (k_1, ..., k_m)``.  In the text notation the operators are written
outermost first, exactly as one reads them aloud: ``H2H1Phi1`` means
H_2(H_1(Phi_1)), i.e. the atom ``((1, 2), 1)``.

A :class:`PhiPoly` is a polynomial with rational coefficients in such atoms.
It can be evaluated through any valuation ``atom -> value`` (numbers, Taylor
series, symbolic RationalJetExpr), which is how the same identity gets checked
by several independent routes.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Dict, Iterable, Mapping, Tuple

Atom = Tuple[Tuple[int, ...], int]
AtomMonomial = Tuple[Atom, ...]


def atom_name(atom: Atom) -> str:
    word, i = atom
    return "".join(f"H{k}" for k in reversed(word)) + f"Phi{i}"


class PhiPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[AtomMonomial, Fraction] | None = None):
        clean: Dict[AtomMonomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            key = tuple(sorted(mono))
            clean[key] = clean.get(key, Fraction(0)) + Fraction(coeff)
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def atom(cls, word: Iterable[int], i: int) -> "PhiPoly":
        return cls({(((tuple(word)), i),): Fraction(1)})

    @classmethod
    def const(cls, value) -> "PhiPoly":
        return cls({(): Fraction(value)})

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = PhiPoly.const(other)
        return isinstance(other, PhiPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other) -> "PhiPoly":
        other = _phipoly(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return PhiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "PhiPoly":
        return PhiPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "PhiPoly":
        return self + (-_phipoly(other))

    def __rsub__(self, other) -> "PhiPoly":
        return _phipoly(other) - self

    def __mul__(self, other) -> "PhiPoly":
        other = _phipoly(other)
        out: Dict[AtomMonomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                key = tuple(sorted(m1 + m2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return PhiPoly(out)

    __rmul__ = __mul__

    def atoms(self) -> set:
        return {a for m in self.terms for a in m}

    def max_word_length(self) -> int:
        return max((len(a[0]) for a in self.atoms()), default=0)

    def evaluate(self, valuation: Callable[[Atom], object], one=1):
        """Sum of coeff * prod(valuation(atom)) in whatever ring the valuation returns."""
        cache: Dict[Atom, object] = {}
        total = None
        for mono, coeff in self.terms.items():
            term = None
            for atom in mono:
                if atom not in cache:
                    cache[atom] = valuation(atom)
                term = cache[atom] if term is None else term * cache[atom]
            if term is None:
                term = one
            term = term * coeff
            total = term if total is None else total + term
        return total if total is not None else one * 0

    def reduce_symmetric(self) -> "PhiPoly":
        """Rewrite every atom ``H_{...}H_1(Phi_2)`` as ``H_{...}H_2(Phi_1)``.

        This uses the identity H_1(Phi_2) = H_2(Phi_1); it is a formal
        normalisation only and is used to compare expressions modulo it.
        """
        out: Dict[AtomMonomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            key = tuple(sorted(_canonical_atom(a) for a in mono))
            out[key] = out.get(key, Fraction(0)) + coeff
        return PhiPoly(out)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
            names = "*".join(atom_name(a) for a in mono)
            if not names:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(names)
            elif coeff == -1:
                parts.append("-" + names)
            else:
                parts.append(f"{coeff}*{names}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"PhiPoly({self})"


def _canonical_atom(atom: Atom) -> Atom:
    word, i = atom
    if i == 2 and word and word[0] == 1:
        return ((2,) + word[1:], 1)
    return atom


def _phipoly(value) -> PhiPoly:
    if isinstance(value, PhiPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return PhiPoly.const(value)
    raise TypeError(f"cannot use {type(value).__name__} as a PhiPoly")


# -- text notation ------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<atom>(?:H[12])*Phi[12])|(?P<op>[-+*^()]))")


def parse_phipoly(text: str) -> PhiPoly:
    """Parse e.g. ``"-H1H2H1Phi2 + 2*H2H1H1Phi2 - 3/16*Phi1*H1Phi1^2"``."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match or match.end() == pos:
            raise ValueError(f"unexpected input at {pos}: {text[pos:pos + 12]!r}")
        pos = match.end()
        kind = match.lastgroup
        tokens.append((kind, match.group(kind)))
    tokens.append(("end", ""))
    index = 0

    def peek():
        return tokens[index]

    def take():
        nonlocal index
        index += 1
        return tokens[index - 1]

    def factor() -> PhiPoly:
        kind, value = take()
        if kind == "num":
            base = PhiPoly.const(Fraction(value))
        elif kind == "atom":
            letters = re.findall(r"H([12])", value)
            word = tuple(int(k) for k in reversed(letters))
            base = PhiPoly.atom(word, int(value[-1]))
        elif value == "(":
            base = expression()
            if take()[1] != ")":
                raise ValueError("missing closing parenthesis")
        else:
            raise ValueError(f"unexpected token {value!r}")
        if peek()[1] == "^":
            take()
            kind, exponent = take()
            if kind != "num" or "/" in exponent:
                raise ValueError("exponent must be a non-negative integer")
            result = PhiPoly.const(1)
            for _ in range(int(exponent)):
                result = result * base
            base = result
        return base

    def term() -> PhiPoly:
        result = factor()
        while True:
            kind, value = peek()
            if value == "*":
                take()
                result = result * factor()
            elif kind in ("num", "atom") or value == "(":
                result = result * factor()
            else:
                return result

    def expression() -> PhiPoly:
        sign = 1
        if peek()[1] in "+-" and peek()[0] == "op":
            sign = -1 if take()[1] == "-" else 1
        result = term() * sign
        while peek()[0] == "op" and peek()[1] in "+-":
            sign = -1 if take()[1] == "-" else 1
            result = result + term() * sign
        return result

    out = expression()
    if peek()[0] != "end":
        raise ValueError(f"trailing input near token {peek()[1]!r}")
    return out


# -- the named jet identities and curvature building blocks -------------------

RELATIONS_TEXT = {
    "I": "-H1H2H1Phi2 + 2 H2H1H1Phi2 - H2H2H1Phi1 - Phi2*H1H2Phi1 + Phi2*H2H1Phi1",
    "II": "-H2H1H1Phi2 + 2 H1H2H1Phi2 - H1H1H2Phi2 - Phi1*H2H1Phi2 + Phi1*H1H2Phi2",
    "III": "-H1H1H1Phi2 + 2 H1H2H1Phi1 - H2H1H1Phi1 + Phi1*H1H1Phi2 - Phi1*H2H1Phi1",
    "IV": "H2H2H1Phi2 - 2 H2H1H2Phi2 + H1H2H2Phi2 - Phi2*H2H1Phi2 + Phi2*H1H2Phi2",
    "V": (
        "H1H1H2Phi2 - 3 H1H2H1Phi2 + 3 H2H1H1Phi2 - H2H2H1Phi1 - Phi2*H1H2Phi1"
        " + Phi2*H2H1Phi1 - Phi1*H1H2Phi2 + Phi1*H2H1Phi2"
    ),
}

IDENTITIES_TEXT = {
    "a": (
        "-H2H2H1Phi1 + H2H1H1Phi2 + H1H2H1Phi2 - H1H1H2Phi2 + Phi1*H1H2Phi2"
        " - Phi1*H2H1Phi2 - Phi2*H1H1Phi2 + Phi2*H2H1Phi1"
    ),
    "b": (
        "H1H2H2Phi2 - 2 H2H1H2Phi2 + H2H2H1Phi2 - H2H1H1Phi1 + 2 H1H2H1Phi1"
        " - H1H1H1Phi2 + Phi1*H1H1Phi2 + Phi2*H1H2Phi2 - Phi2*H2H1Phi2 - Phi1*H2H1Phi1"
    ),
}

# Curvature combinations as they arise before symmetrisation (each times 1/384).
CURVATURE_RAW_TEXT = {
    "Delta1": (
        "-20 Phi2*H1H1Phi2 - H1Phi1^2 - 2 Phi2^2*H1Phi1 + 8 H1H2H1Phi2 + 2 Phi1^2*H1Phi1"
        " - 7 H1H1H2Phi2 - 4 Phi1*H2H1Phi2 + H1H1H1Phi1 + Phi1*H1H2Phi2"
        " + 23 Phi2*H2H1Phi1 + H2Phi2^2 - 3 Phi1*H1H1Phi1 + 3 Phi2*H2H2Phi2 - 2 Phi2^2*H2Phi2"
        " - 17 H2H2H1Phi1 + 2 Phi1^2*H2Phi2 + 16 H2H1H1Phi2 - H2H2H2Phi2"
    ),
    "Delta2": (
        "24 H1H2H1Phi2 - 24 Phi1*H2H1Phi2 + 24 Phi1*H1H2Phi2 + 24 H2H1H1Phi2"
        " - 24 H1H1H2Phi2 - 24 Phi2*H1H1Phi2 + 24 Phi2*H2H1Phi1 - 24 H2H2H1Phi1"
    ),
    "Delta3": (
        "-2 H2H1H1Phi1 + 8 H1H1H1Phi2 - 8 Phi1*Phi2*H1Phi1 - 8 Phi1*Phi2*H2Phi2"
        " - 2 H1H2H2Phi2 - 10 H2H1H2Phi2 - 16 Phi1*H1H1Phi2 + 4 H1Phi2*H2Phi2"
        " + 6 Phi1*H2H2Phi2 + 8 H2H2H1Phi2 + 22 Phi2*H1H2Phi2 - 16 Phi2*H2H1Phi2"
        " + 22 Phi1*H2H1Phi1 - 10 H1H2H1Phi1 + 4 H1Phi1*H1Phi2 + 6 Phi2*H1H1Phi1"
    ),
    "Delta4": (
        "4 Phi1*H1H1Phi2 - 2 H1Phi2*H2Phi2 - 2 H1Phi1*H1Phi2 + 13 H2H1H2Phi2"
        " - 3 H1H2H2Phi2 - 3 Phi2*H1H1Phi1 - 15 Phi2*H1H2Phi2 + 4 Phi1*Phi2*H1Phi1"
        " - 8 H2H2H1Phi2 - 3 H1H2H1Phi1 + 12 Phi2*H2H1Phi2 - 3 Phi1*H2H2Phi2"
        " - 7 Phi1*H2H1Phi1 + 4 Phi1*Phi2*H2Phi2 + 5 H2H1H1Phi1"
    ),
}

# Symmetric forms of the two essential curvatures (each times 1/384).
ESSENTIAL_SYMMETRIC_TEXT = {
    "Delta1": (
        "H1H1H1Phi1 - H2H2H2Phi2 + 11 H1H2H1Phi2 - 11 H2H1H2Phi1"
        " + 6 Phi2*H2H1Phi1 - 6 Phi1*H1H2Phi2 - 3 Phi2*H1H1Phi2 + 3 Phi1*H2H2Phi1"
        " - 3 Phi1*H1H1Phi1 + 3 Phi2*H2H2Phi2 - H1Phi1^2 + H2Phi2^2"
        " - 2 Phi2^2*H1Phi1 + 2 Phi1^2*H2Phi2 - 2 Phi2^2*H2Phi2 + 2 Phi1^2*H1Phi1"
    ),
    "Delta4": (
        "-3 H2H1H2Phi2 - 3 H1H2H1Phi1 + 5 H1H2H2Phi2 + 5 H2H1H1Phi1"
        " + 4 Phi1*H1H1Phi2 + 4 Phi2*H2H1Phi2 - 3 Phi2*H1H1Phi1 - 3 Phi1*H2H2Phi2"
        " - 7 Phi2*H1H2Phi2 - 7 Phi1*H2H1Phi1 - 2 H1Phi1*H1Phi2 - 2 H2Phi2*H2Phi1"
        " + 4 Phi1*Phi2*H1Phi1 + 4 Phi1*Phi2*H2Phi2"
    ),
}

# Literal transcriptions kept for comparison.  The symmetric Delta1 and
# delta_18 as typeset contain products Phi_i H_i(Phi_i) of weight 3 inside
# weight-4 expressions; the normative tables above use (H_i Phi_i)^2 instead.
# The typeset Delta3 has two coefficients (on Phi1 Phi2 H1Phi1 and on
# H1Phi2 H2Phi2) that disagree with the directly computed curvature.
LITERAL_ESSENTIAL1_TEXT = ESSENTIAL_SYMMETRIC_TEXT["Delta1"].replace(
    " - H1Phi1^2 + H2Phi2^2", " - 2 Phi1*H1Phi1 + 2 Phi2*H2Phi2"
)
LITERAL_CURVATURE3_TEXT = CURVATURE_RAW_TEXT["Delta3"].replace(
    "- 8 Phi1*Phi2*H1Phi1", "- 2 Phi1*Phi2*H1Phi1"
).replace("+ 4 H1Phi2*H2Phi2", "+ 8 H1Phi2*H2Phi2")

# Coefficient functions of the connection that are not plain multiples of Phi_i.
CONNECTION_DELTA_TEXT = {
    3: "1/2 H1H1Phi2 - 1/16 Phi2*H2Phi2 - 7/16 H2H1Phi1 + 1/16 H2H2Phi2 - 1/16 Phi2*H1Phi1",
    4: "-1/4 H1Phi1 - 1/4 H2Phi2",
    5: "-1/48 Phi1*H2Phi2 - 7/48 H1H2Phi2 + 1/48 H1H1Phi1 - 1/48 Phi1*H1Phi1 + 1/6 H2H1Phi2",
    16: "1/32 Phi1*H1Phi1 - 1/32 H1H1Phi1 + 1/32 Phi1*H2Phi2 - 1/32 H1H2Phi2",
    17: "1/32 Phi2*H1Phi1 - 1/32 H2H2Phi2 + 1/32 Phi2*H2Phi2 - 1/32 H2H1Phi1",
    18: (
        "1/64 Phi2*H2H1Phi1 - 11/1536 H2Phi2*H1Phi1 - 1/192 Phi1*H1H1Phi1"
        " - 11/3072 H1Phi1^2 + 1/48 H1H2H1Phi2 - 7/384 H1H1H2Phi2"
        " + 1/384 Phi2^2*H2Phi2 - 1/48 Phi2*H1H1Phi2 - 1/192 Phi2*H2H2Phi2"
        " + 1/64 Phi1*H1H2Phi2 + 1/384 Phi1^2*H1Phi1 - 11/3072 H2Phi2^2"
        " + 1/384 Phi2^2*H1Phi1 - 1/48 Phi1*H2H1Phi2 + 1/48 H2H1H1Phi2"
        " + 1/384 Phi1^2*H2Phi2 + 1/384 H2H2H2Phi2 + 1/384 H1H1H1Phi1"
        " - 7/384 H2H2H1Phi1"
    ),
    19: "3/16 H1Phi1 + 3/16 H2Phi2",
}

LITERAL_DELTA18_TEXT = CONNECTION_DELTA_TEXT[18].replace(
    "- 11/3072 H1Phi1^2", "- 11/1536 Phi1*H1Phi1"
).replace("- 11/3072 H2Phi2^2", "- 11/1536 Phi2*H2Phi2")

PREFACTOR = Fraction(1, 384)


def relation(name: str) -> PhiPoly:
    return parse_phipoly(RELATIONS_TEXT[name])


def identity(name: str) -> PhiPoly:
    return parse_phipoly(IDENTITIES_TEXT[name])


def curvature_raw(name: str) -> PhiPoly:
    return parse_phipoly(CURVATURE_RAW_TEXT[name]) * PREFACTOR


def essential_symmetric(name: str) -> PhiPoly:
    return parse_phipoly(ESSENTIAL_SYMMETRIC_TEXT[name]) * PREFACTOR


def connection_delta(index: int) -> PhiPoly:
    """The determined coefficient functions delta_k as PhiPolys."""
    simple = {
        1: "2 Phi2", 2: "-2 Phi1", 7: "Phi2", 10: "Phi1",
        11: "1", 22: "1", 14: "-1",
    }
    if index in simple:
        return parse_phipoly(simple[index])
    if index in CONNECTION_DELTA_TEXT:
        return parse_phipoly(CONNECTION_DELTA_TEXT[index])
    if 1 <= index <= 22:
        return PhiPoly()
    raise ValueError(f"no coefficient delta_{index}")


def literal_form(name: str) -> PhiPoly:
    """The typeset reading of an expression whose normative table entry was corrected.

    ``name`` is one of ``"essential1"``, ``"curvature3"``, ``"delta18"``.
    """
    if name == "essential1":
        return parse_phipoly(LITERAL_ESSENTIAL1_TEXT) * PREFACTOR
    if name == "curvature3":
        return parse_phipoly(LITERAL_CURVATURE3_TEXT) * PREFACTOR
    if name == "delta18":
        return parse_phipoly(LITERAL_DELTA18_TEXT)
    raise KeyError(name)


def weights(poly: PhiPoly) -> set:
    """The set of weights of the monomials (Phi_i weighs 1, each H adds 1)."""
    return {sum(len(word) + 1 for word, _ in mono) for mono in poly.terms}
