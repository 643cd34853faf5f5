"""The free Lie algebra on two generators h1, h2, certified inside the tensor algebra.

Bracket words are expanded with [u, v] -> uv - vu into non-commutative
polynomials; since this embedding is injective on the free Lie algebra,
linear relations between bracket words are decided by exact linear algebra.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import linalg

Monomial = Tuple[int, ...]
TensorElement = Dict[Monomial, Fraction]


class ParseError(ValueError):
    pass


@dataclass(frozen=True, repr=False)
class BracketWord:
    """Either a generator (``leaf`` = 1 or 2) or a bracket [left, right]."""

    leaf: Optional[int] = None
    left: Optional["BracketWord"] = None
    right: Optional["BracketWord"] = None

    def __post_init__(self):
        if (self.leaf is None) == (self.left is None or self.right is None):
            raise ValueError("a bracket word is a generator or a pair of words")
        if self.leaf is not None and self.leaf not in (1, 2):
            raise ValueError("generators are h1 and h2")

    @property
    def length(self) -> int:
        if self.leaf is not None:
            return 1
        return self.left.length + self.right.length

    def __str__(self) -> str:
        if self.leaf is not None:
            return f"h{self.leaf}"
        return f"[{self.left},{self.right}]"

    def __repr__(self) -> str:
        return f"BracketWord({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "BracketWord":
        parser = _WordParser(text.replace(" ", ""))
        word = parser.word()
        if parser.pos != len(parser.text):
            raise ParseError(f"unexpected trailing input at {parser.pos}: {text!r}")
        return word


def gen(i: int) -> BracketWord:
    return BracketWord(leaf=i)


def br(u: BracketWord, v: BracketWord) -> BracketWord:
    return BracketWord(left=u, right=v)


class _WordParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def word(self) -> BracketWord:
        if self.text.startswith("[", self.pos):
            self.pos += 1
            left = self.word()
            self.expect(",")
            right = self.word()
            self.expect("]")
            return br(left, right)
        for name, i in (("h1", 1), ("h2", 2)):
            if self.text.startswith(name, self.pos):
                self.pos += 2
                return gen(i)
        raise ParseError(f"expected h1, h2 or '[' at position {self.pos} in {self.text!r}")

    def expect(self, char: str) -> None:
        if not self.text.startswith(char, self.pos):
            raise ParseError(f"expected {char!r} at position {self.pos} in {self.text!r}")
        self.pos += 1


def as_word(w: Union[str, BracketWord]) -> BracketWord:
    return BracketWord.parse(w) if isinstance(w, str) else w


# -- dimensions --------------------------------------------------------------------

def mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def graded_dimension(length: int, generators: int = 2) -> int:
    """Dimension of the length-``length`` part of the free Lie algebra (Witt's formula)."""
    if length < 1:
        raise ValueError("length must be at least 1")
    total = sum(mobius(d) * generators ** (length // d) for d in range(1, length + 1) if length % d == 0)
    return total // length


# -- expansion into the tensor algebra -------------------------------------------------

def _multiply(a: TensorElement, b: TensorElement) -> TensorElement:
    out: TensorElement = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = ma + mb
            out[m] = out.get(m, Fraction(0)) + ca * cb
    return {m: c for m, c in out.items() if c}


def expand_word(word: Union[str, BracketWord]) -> TensorElement:
    word = as_word(word)
    if word.leaf is not None:
        return {(word.leaf,): Fraction(1)}
    u, v = expand_word(word.left), expand_word(word.right)
    out = _multiply(u, v)
    for m, c in _multiply(v, u).items():
        out[m] = out.get(m, Fraction(0)) - c
    return {m: c for m, c in out.items() if c}


def expand_combination(terms: Sequence[Tuple[object, Union[str, BracketWord]]]) -> TensorElement:
    out: TensorElement = {}
    for coeff, word in terms:
        for m, c in expand_word(word).items():
            out[m] = out.get(m, Fraction(0)) + Fraction(coeff) * c
    return {m: c for m, c in out.items() if c}


def relation_rank(words: Sequence[Union[str, BracketWord]]) -> Tuple[int, List[List[Fraction]]]:
    """Rank of the expanded words and a reduced-echelon basis of their linear relations."""
    expansions = [expand_word(w) for w in words]
    monomials = sorted({m for e in expansions for m in e})
    rows = [[e.get(m, Fraction(0)) for e in expansions] for m in monomials]
    n = len(words)
    if not rows:
        kernel = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        return 0, kernel
    kernel = linalg.nullspace(rows, n)
    if kernel:
        kernel, _ = linalg.rref(kernel, n)
    return n - len(kernel), kernel


def is_relation(terms: Sequence[Tuple[object, Union[str, BracketWord]]]) -> bool:
    return not expand_combination(terms)


# -- bases and families of words ---------------------------------------------------------

def lyndon_words(length: int, alphabet: int = 2) -> List[Tuple[int, ...]]:
    """Lyndon words over {1..alphabet} of the given length, in lexicographic order (Duval)."""
    out = []
    w = [0]
    while w:
        if len(w) == length:
            out.append(tuple(c + 1 for c in w))
        m = len(w)
        while len(w) < length:
            w.append(w[len(w) - m])
        while w and w[-1] == alphabet - 1:
            w.pop()
        if w:
            w[-1] += 1
    return out


def _is_lyndon(w: Tuple[int, ...]) -> bool:
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


def standard_bracketing(w: Tuple[int, ...]) -> BracketWord:
    """Bracket a Lyndon word by its standard factorisation w = uv, v the longest proper Lyndon suffix."""
    if len(w) == 1:
        return gen(w[0])
    for i in range(1, len(w)):
        if _is_lyndon(w[i:]):
            return br(standard_bracketing(w[:i]), standard_bracketing(w[i:]))
    raise AssertionError("a Lyndon word always has a Lyndon proper suffix")


def lyndon_basis(length: int) -> List[BracketWord]:
    return [standard_bracketing(w) for w in lyndon_words(length)]


def right_normed(indices: Sequence[int]) -> BracketWord:
    """[h_i1, [h_i2, [..., [h_i(l-1), h_il]]]]."""
    word = gen(indices[-1])
    for i in reversed(indices[:-1]):
        word = br(gen(i), word)
    return word


def all_simple_words(length: int) -> List[BracketWord]:
    """Every right-normed word of the given length (2^length of them)."""
    return [right_normed(ix) for ix in itertools.product((1, 2), repeat=length)]


def simple_word_family(length: int) -> List[BracketWord]:
    """Simple words built by left multiplication from a chosen basis one length lower.

    Lengths 1-3 give every simple word up to antisymmetry of the core [h1, h2];
    length 4 keeps [h1,[h1,[h1,h2]]], [h1,[h2,[h1,h2]]], [h2,[h2,[h1,h2]]];
    from then on [h1, .] and then [h2, .] are applied to the previous family.
    This yields 6 words of length 5 and 12 of length 6.
    """
    core = br(gen(1), gen(2))
    if length == 1:
        return [gen(1), gen(2)]
    if length == 2:
        return [core]
    if length == 3:
        return [br(gen(1), core), br(gen(2), core)]
    if length == 4:
        return [right_normed((1, 1, 1, 2)), right_normed((1, 2, 1, 2)), right_normed((2, 2, 1, 2))]
    previous = simple_word_family(length - 1)
    return [br(gen(i), w) for i in (1, 2) for w in previous]


# -- the relations of lengths 4 to 6 --------------------------------------------------------

RELATION_LENGTH4 = [(1, "[h2,[h1,[h1,h2]]]"), (-1, "[h1,[h2,[h1,h2]]]")]

RELATIONS_LENGTH5 = [
    [(1, "[[h1,h2],[h1,[h1,h2]]]"), (1, "[h2,[h1,[h1,[h1,h2]]]]"), (-1, "[h1,[h1,[h2,[h1,h2]]]]")],
    [(1, "[[h1,h2],[h2,[h1,h2]]]"), (1, "[h2,[h1,[h2,[h1,h2]]]]"), (-1, "[h1,[h2,[h2,[h1,h2]]]]")],
]

RELATIONS_LENGTH6 = {
    9: [(1, "[h1,[h1,[h1,[h2,[h1,h2]]]]]"), (-2, "[h1,[h2,[h1,[h1,[h1,h2]]]]]"), (1, "[h2,[h1,[h1,[h1,[h1,h2]]]]]")],
    10: [(1, "[h2,[h2,[h1,[h2,[h1,h2]]]]]"), (-2, "[h2,[h1,[h2,[h2,[h1,h2]]]]]"), (1, "[h1,[h2,[h2,[h2,[h1,h2]]]]]")],
    11: [(1, "[h1,[h1,[h2,[h2,[h1,h2]]]]]"), (-3, "[h1,[h2,[h1,[h2,[h1,h2]]]]]"),
         (3, "[h2,[h1,[h1,[h2,[h1,h2]]]]]"), (-1, "[h2,[h2,[h1,[h1,[h1,h2]]]]]")],
}


def relation_vector(relation, words: Sequence[BracketWord]) -> List[Fraction]:
    """Coefficients of a relation on a list of words (each term must be one of the words)."""
    position = {str(w): i for i, w in enumerate(words)}
    vec = [Fraction(0)] * len(words)
    for coeff, text in relation:
        key = str(as_word(text))
        if key not in position:
            raise KeyError(f"{key} is not among the given words")
        vec[position[key]] += Fraction(coeff)
    return vec
