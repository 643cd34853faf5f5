"""Finite-dimensional Lie algebras over Q given by structure constants.

Structure constants are stored sparsely for index pairs k1 < k2 only; the
antisymmetric completion is implicit.  An optional integer grading turns a
:class:`LieAlgebra` into a :class:`GradedLieAlgebra`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from . import linalg

Vector = List[Fraction]
BracketTable = Dict[Tuple[int, int], Dict[int, Fraction]]


class DimensionMismatch(ValueError):
    pass


class SingularKillingForm(ValueError):
    pass


class InvalidComplexStructure(ValueError):
    pass


@dataclass(frozen=True)
class ComplexStructure:
    """A matrix J on the degree -1 component with J^2 = -Id.

    ``indices`` lists the basis vectors of that component; ``matrix[r][c]`` is
    the coefficient of basis vector ``indices[r]`` in J(``indices[c]``).
    """

    indices: Tuple[int, ...]
    matrix: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.indices)
        rows = tuple(tuple(Fraction(v) for v in row) for row in self.matrix)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise InvalidComplexStructure("J must be square on the degree -1 component")
        square = linalg.matmul([list(r) for r in rows], [list(r) for r in rows])
        if any(square[i][j] != (-1 if i == j else 0) for i in range(n) for j in range(n)):
            raise InvalidComplexStructure("J^2 is not -Id")
        object.__setattr__(self, "indices", tuple(self.indices))
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def from_images(cls, algebra: "LieAlgebra", images: Mapping[str, Mapping[str, object]]) -> "ComplexStructure":
        """Build J from {"h1": {"h2": 1}, "h2": {"h1": -1}}-style images."""
        indices = tuple(algebra.index(name) for name in images)
        pos = {k: r for r, k in enumerate(indices)}
        matrix = [[Fraction(0)] * len(indices) for _ in indices]
        for c, (name, image) in enumerate(images.items()):
            for target, value in image.items():
                matrix[pos[algebra.index(target)]][c] = Fraction(value)
        return cls(indices, tuple(tuple(r) for r in matrix))

    def apply(self, coords: Sequence) -> List[Fraction]:
        """J applied to coordinates with respect to ``indices``."""
        return [sum((self.matrix[r][c] * Fraction(coords[c]) for c in range(len(coords))), Fraction(0))
                for r in range(len(self.indices))]

    def to_json(self) -> dict:
        return {"indices": list(self.indices), "matrix": [[str(v) for v in row] for row in self.matrix]}


@dataclass
class ValidationReport:
    antisymmetry_violations: List[Tuple[int, int, int]] = field(default_factory=list)
    jacobi_violations: List[Tuple[int, int, int, int]] = field(default_factory=list)
    grading_violations: List[Tuple[int, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.antisymmetry_violations or self.jacobi_violations or self.grading_violations)


class LieAlgebra:
    """Structure constants c^s_{k1,k2}: [x_k1, x_k2] = sum_s c^s_{k1,k2} x_s."""

    def __init__(self, names: Sequence[str], brackets: Mapping[Tuple[int, int], Mapping[int, object]]):
        self.names = list(names)
        self.dim = len(self.names)
        self._table: BracketTable = {}
        for (k1, k2), image in brackets.items():
            if not (0 <= k1 < self.dim and 0 <= k2 < self.dim):
                raise DimensionMismatch(f"bracket index ({k1}, {k2}) out of range")
            clean = {s: Fraction(v) for s, v in image.items() if Fraction(v) != 0}
            if not clean:
                continue
            if k1 == k2:
                raise ValueError(f"[{self.names[k1]}, {self.names[k1]}] must vanish")
            if k1 > k2:
                k1, k2 = k2, k1
                clean = {s: -v for s, v in clean.items()}
            if (k1, k2) in self._table:
                raise ValueError(f"bracket ({k1}, {k2}) given twice")
            self._table[(k1, k2)] = clean

    # basic access ---------------------------------------------------------
    def index(self, name: str) -> int:
        return self.names.index(name)

    def basis_vector(self, k) -> Vector:
        if isinstance(k, str):
            k = self.index(k)
        vec = [Fraction(0)] * self.dim
        vec[k] = Fraction(1)
        return vec

    def structure_constant(self, s: int, k1: int, k2: int) -> Fraction:
        if k1 == k2:
            return Fraction(0)
        if k1 < k2:
            return self._table.get((k1, k2), {}).get(s, Fraction(0))
        return -self._table.get((k2, k1), {}).get(s, Fraction(0))

    def bracket_basis(self, k1: int, k2: int) -> Dict[int, Fraction]:
        if k1 == k2:
            return {}
        if k1 < k2:
            return dict(self._table.get((k1, k2), {}))
        return {s: -v for s, v in self._table.get((k2, k1), {}).items()}

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch(f"expected vectors of length {self.dim}")
        out = [Fraction(0)] * self.dim
        for (k1, k2), image in self._table.items():
            coeff = Fraction(x[k1]) * Fraction(y[k2]) - Fraction(x[k2]) * Fraction(y[k1])
            if coeff:
                for s, v in image.items():
                    out[s] += coeff * v
        return out

    def bracket_names(self, a: str, b: str) -> Dict[str, Fraction]:
        return {self.names[s]: v for s, v in self.bracket_basis(self.index(a), self.index(b)).items()}

    def table(self) -> BracketTable:
        return {k: dict(v) for k, v in self._table.items()}

    def ad(self, x: Sequence) -> List[Vector]:
        """Matrix of ad(x) acting on column vectors: column k is [x, e_k]."""
        columns = [self.bracket(x, self.basis_vector(k)) for k in range(self.dim)]
        return [[columns[k][s] for k in range(self.dim)] for s in range(self.dim)]

    def derived_dimension(self) -> int:
        images = [self.bracket(self.basis_vector(a), self.basis_vector(b)) for a in range(self.dim) for b in range(a + 1, self.dim)]
        return linalg.rank(images) if images else 0

    # serialisation --------------------------------------------------------
    def to_json_dict(self) -> dict:
        out = {"dim": self.dim, "names": self.names}
        out["brackets"] = [
            [k1, k2, [[s, str(v)] for s, v in sorted(image.items())]]
            for (k1, k2), image in sorted(self._table.items())
        ]
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, LieAlgebra) and self.names == other.names and self._table == other._table


class GradedLieAlgebra(LieAlgebra):
    def __init__(self, names, brackets, grading: Sequence[int]):
        super().__init__(names, brackets)
        if len(grading) != self.dim:
            raise DimensionMismatch("grading must list one degree per basis vector")
        self.grading = [int(g) for g in grading]

    def degrees(self) -> List[int]:
        return sorted(set(self.grading))

    def component(self, degree: int) -> List[int]:
        return [k for k, g in enumerate(self.grading) if g == degree]

    def dims(self) -> Dict[int, int]:
        return {g: len(self.component(g)) for g in range(min(self.grading), max(self.grading) + 1)}

    def negative_part(self) -> List[int]:
        return [k for k, g in enumerate(self.grading) if g < 0]

    def depth(self) -> int:
        """The integer a with g_{-a} the lowest nonzero component."""
        return -min(self.grading)

    def height(self) -> int:
        return max(self.grading)

    def to_json_dict(self) -> dict:
        out = super().to_json_dict()
        out["grading"] = self.grading
        return out


# -- checks -------------------------------------------------------------------

def validate(algebra: LieAlgebra) -> ValidationReport:
    report = ValidationReport()
    n = algebra.dim
    c = algebra.structure_constant
    for k1, k2, s in product(range(n), repeat=3):
        if c(s, k1, k2) != -c(s, k2, k1):
            report.antisymmetry_violations.append((k1, k2, s))
    nonzero_pairs = {}
    for k1 in range(n):
        for k2 in range(n):
            image = algebra.bracket_basis(k1, k2)
            if image:
                nonzero_pairs[(k1, k2)] = image
    for k1, k2, k3 in product(range(n), repeat=3):
        total = [Fraction(0)] * n
        for a, b, z in ((k1, k2, k3), (k3, k1, k2), (k2, k3, k1)):
            for s, v in nonzero_pairs.get((a, b), {}).items():
                for l, w in nonzero_pairs.get((s, z), {}).items():
                    total[l] += v * w
        for l in range(n):
            if total[l]:
                report.jacobi_violations.append((k1, k2, k3, l))
    if isinstance(algebra, GradedLieAlgebra):
        g = algebra.grading
        for (k1, k2), image in algebra.table().items():
            for s in image:
                if g[s] != g[k1] + g[k2]:
                    report.grading_violations.append((k1, k2, s))
    return report


def killing_form(algebra: LieAlgebra) -> List[Vector]:
    ads = [algebra.ad(algebra.basis_vector(k)) for k in range(algebra.dim)]
    n = algebra.dim
    form = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            # trace(ad_i ad_j)
            value = sum(
                (ads[i][r][s] * ads[j][s][r] for r in range(n) for s in range(n) if ads[i][r][s] and ads[j][s][r]),
                Fraction(0),
            )
            form[i][j] = form[j][i] = value
    return form


def is_nondegenerate(form: Sequence[Sequence]) -> bool:
    return linalg.rank(form) == len(form)


def killing_dual_basis(algebra: LieAlgebra, indices: Sequence[int]) -> List[Vector]:
    """Vectors v*_i with B(v*_i, x_{indices[j]}) = delta_ij and B-orthogonal to the rest.

    The dual is taken with respect to the whole basis: v*_i is the B-dual of
    basis vector ``indices[i]`` inside the full algebra.
    """
    form = killing_form(algebra)
    if not is_nondegenerate(form):
        raise SingularKillingForm("the Killing form is degenerate")
    inv = linalg.inverse(form)
    # B(v, x_j) = sum_k v_k B_kj ; want v such that B v = e_i (B symmetric)
    return [[inv[k][i] for k in range(algebra.dim)] for i in indices]


def killing_pairing(algebra: LieAlgebra, x: Sequence, y: Sequence) -> Fraction:
    form = killing_form(algebra)
    return sum((Fraction(x[i]) * form[i][j] * Fraction(y[j]) for i in range(algebra.dim) for j in range(algebra.dim)), Fraction(0))


# -- JSON -----------------------------------------------------------------------

def algebra_from_json_dict(data: Mapping) -> LieAlgebra:
    names = data.get("names") or [f"x{k + 1}" for k in range(data["dim"])]
    if len(names) != data["dim"]:
        raise DimensionMismatch("names and dim disagree")
    brackets: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for k1, k2, image in data.get("brackets", []):
        entry: Dict[int, Fraction] = {}
        for s, value in image:
            entry[int(s)] = entry.get(int(s), Fraction(0)) + Fraction(value)
        brackets[(int(k1), int(k2))] = entry
    if data.get("grading") is not None:
        return GradedLieAlgebra(names, brackets, data["grading"])
    return LieAlgebra(names, brackets)


def load_algebra(path) -> LieAlgebra:
    with open(path) as fh:
        return algebra_from_json_dict(json.load(fh))


def dump_algebra(algebra: LieAlgebra, path) -> None:
    with open(path, "w") as fh:
        json.dump(algebra.to_json_dict(), fh, indent=1)


def bundled_algebra(name: str) -> LieAlgebra:
    """Load one of the algebras shipped in ``cartanforge/data``."""
    text = resources.files("cartanforge").joinpath("data", f"{name}.json").read_text()
    return algebra_from_json_dict(json.loads(text))


def bundled_algebra_names() -> List[str]:
    folder = resources.files("cartanforge").joinpath("data")
    return sorted(p.name[:-5] for p in folder.iterdir() if p.name.endswith(".json"))


# -- the CR symmetry algebra of the Heisenberg sphere ---------------------------

HEISENBERG_NAMES = ("t", "h1", "h2", "d", "r", "i1", "i2", "j")
HEISENBERG_GRADING = (-2, -1, -1, 0, 0, 1, 1, 2)
HEISENBERG_TABLE = {
    ("t", "d"): {"t": 2},
    ("t", "i1"): {"h1": 1},
    ("t", "i2"): {"h2": 1},
    ("t", "j"): {"d": 1},
    ("h1", "h2"): {"t": 4},
    ("h1", "d"): {"h1": 1},
    ("h1", "r"): {"h2": 1},
    ("h1", "i1"): {"r": 6},
    ("h1", "i2"): {"d": 2},
    ("h1", "j"): {"i1": 1},
    ("h2", "d"): {"h2": 1},
    ("h2", "r"): {"h1": -1},
    ("h2", "i1"): {"d": -2},
    ("h2", "i2"): {"r": 6},
    ("h2", "j"): {"i2": 1},
    ("d", "i1"): {"i1": 1},
    ("d", "i2"): {"i2": 1},
    ("d", "j"): {"j": 2},
    ("r", "i1"): {"i2": -1},
    ("r", "i2"): {"i1": 1},
    ("i1", "i2"): {"j": 4},
}


def algebra_from_named_table(names: Sequence[str], table: Mapping[Tuple[str, str], Mapping[str, object]],
                             grading: Optional[Sequence[int]] = None) -> LieAlgebra:
    idx = {n: k for k, n in enumerate(names)}
    brackets = {(idx[a], idx[b]): {idx[s]: Fraction(v) for s, v in image.items()} for (a, b), image in table.items()}
    if grading is None:
        return LieAlgebra(names, brackets)
    return GradedLieAlgebra(names, brackets, grading)


def heisenberg_prolonged() -> GradedLieAlgebra:
    """The graded 1+2+2+2+1 algebra with basis (t, h1, h2, d, r, i1, i2, j)."""
    return algebra_from_named_table(HEISENBERG_NAMES, HEISENBERG_TABLE, HEISENBERG_GRADING)


def heisenberg_negative() -> GradedLieAlgebra:
    """The 3-dimensional Heisenberg algebra (t, h1, h2) with [h1, h2] = 4t, degrees (-2, -1, -1)."""
    return algebra_from_named_table(("t", "h1", "h2"), {("h1", "h2"): {"t": 4}}, (-2, -1, -1))


def heisenberg_complex_structure(algebra: Optional[LieAlgebra] = None) -> ComplexStructure:
    """J(h1) = h2, J(h2) = -h1."""
    algebra = algebra or heisenberg_negative()
    return ComplexStructure.from_images(algebra, {"h1": {"h2": 1}, "h2": {"h1": -1}})


def abelian(dim: int, grading: Optional[Sequence[int]] = None) -> LieAlgebra:
    names = [f"x{k + 1}" for k in range(dim)]
    if grading is None:
        return LieAlgebra(names, {})
    return GradedLieAlgebra(names, {}, grading)
