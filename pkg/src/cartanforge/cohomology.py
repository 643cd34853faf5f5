"""Chevalley-Eilenberg cochains of the negative part of a graded Lie algebra.

An l-cochain is an alternating l-linear map on g_- with values in g, stored
as a sparse map ((i_1 < ... < i_l), k) -> coefficient, where the i's index
basis vectors of g_- and k indexes a basis vector of g (both as indices into
the full algebra basis).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .liealg import GradedLieAlgebra, SingularKillingForm, killing_dual_basis
from .linalg import nullspace, rank, rref

Key = Tuple[Tuple[int, ...], int]


@dataclass
class Cochain:
    level: int
    coefficients: Dict[Key, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (indices, k), value in self.coefficients.items():
            if len(indices) != self.level:
                raise ValueError(f"cochain of level {self.level} given indices {indices}")
            if list(indices) != sorted(set(indices)):
                raise ValueError(f"indices must be strictly increasing, got {indices}")
            if value:
                clean[(tuple(indices), k)] = Fraction(value)
        self.coefficients = clean

    def is_zero(self) -> bool:
        return not self.coefficients

    def __add__(self, other: "Cochain") -> "Cochain":
        out = dict(self.coefficients)
        for key, value in other.coefficients.items():
            out[key] = out.get(key, Fraction(0)) + value
        return Cochain(self.level, out)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + other.scale(-1)

    def scale(self, factor) -> "Cochain":
        return Cochain(self.level, {key: value * factor for key, value in self.coefficients.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, Cochain) and self.level == other.level and self.coefficients == other.coefficients

    def value(self, args: Sequence[int], dim: int) -> List[Fraction]:
        """Phi(z_1, ..., z_l) for basis indices, as a coordinate vector in g."""
        out = [Fraction(0)] * dim
        if len(set(args)) < len(args):
            return out
        order = sorted(range(len(args)), key=lambda m: args[m])
        sign = _permutation_sign(order)
        key_indices = tuple(args[m] for m in order)
        for (indices, k), coeff in self.coefficients.items():
            if indices == key_indices:
                out[k] += sign * coeff
        return out

    def to_json(self, algebra=None) -> List[list]:
        def name(k):
            return algebra.names[k] if algebra is not None else k

        return [
            [[name(i) for i in indices], name(k), str(value)]
            for (indices, k), value in sorted(self.coefficients.items())
        ]


def _permutation_sign(order: Sequence[int]) -> int:
    sign = 1
    seen = list(order)
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] > seen[j]:
                sign = -sign
    return sign


# -- basic data --------------------------------------------------------------------

def negative_indices(algebra: GradedLieAlgebra) -> List[int]:
    return algebra.negative_part()


def homogeneity_of(algebra: GradedLieAlgebra, indices: Sequence[int], k: int) -> int:
    return algebra.grading[k] - sum(algebra.grading[i] for i in indices)


def cochain_basis(algebra: GradedLieAlgebra, level: int, h: Optional[int] = None) -> List[Key]:
    """Basis keys of C^level, optionally restricted to homogeneity h, in a fixed order."""
    keys = []
    for indices in itertools.combinations(negative_indices(algebra), level):
        for k in range(algebra.dim):
            if h is None or homogeneity_of(algebra, indices, k) == h:
                keys.append((indices, k))
    return keys


def homogeneity_range(algebra: GradedLieAlgebra, level: int) -> Tuple[int, int]:
    """Smallest and largest homogeneity that can occur for level 1 or 2 (depth a, height b)."""
    a, b = algebra.depth(), algebra.height()
    if level == 1:
        return (-a + 1, a + b)
    if level == 2:
        return (-a + 2, 2 * a + b)
    keys = cochain_basis(algebra, level)
    values = [homogeneity_of(algebra, i, k) for i, k in keys]
    return (min(values, default=0), max(values, default=0))


def homogeneous_component(algebra: GradedLieAlgebra, cochain: Cochain, h: int) -> Cochain:
    return Cochain(
        cochain.level,
        {key: v for key, v in cochain.coefficients.items() if homogeneity_of(algebra, key[0], key[1]) == h},
    )


def _bracket_vec(algebra, x: Sequence[Fraction], y: Sequence[Fraction]) -> List[Fraction]:
    return algebra.bracket(x, y)


# -- the differential by the defining alternating sum --------------------------------

def differential(algebra: GradedLieAlgebra, cochain: Cochain) -> Cochain:
    """The (l+1)-cochain given by the alternating-sum definition, evaluated on basis tuples."""
    n = algebra.dim
    level = cochain.level
    out: Dict[Key, Fraction] = {}
    for args in itertools.combinations(negative_indices(algebra), level + 1):
        total = [Fraction(0)] * n
        for i in range(level + 1):
            rest = args[:i] + args[i + 1:]
            value = cochain.value(rest, n)
            if any(value):
                bracket = algebra.bracket(algebra.basis_vector(args[i]), value)
                sign = -1 if i % 2 else 1
                total = [t + sign * b for t, b in zip(total, bracket)]
        for i in range(level + 1):
            for j in range(i + 1, level + 1):
                zij = algebra.bracket_basis(args[i], args[j])
                if not zij:
                    continue
                rest = args[:i] + args[i + 1:j] + args[j + 1:]
                sign = -1 if (i + j) % 2 else 1
                for s, coeff in zij.items():
                    value = cochain.value((s,) + rest, n)
                    total = [t + sign * coeff * v for t, v in zip(total, value)]
        for k, value in enumerate(total):
            if value:
                out[(args, k)] = value
    return Cochain(level + 1, out)


def differential_matrix(algebra: GradedLieAlgebra, level: int, h: Optional[int] = None) -> Tuple[List[List[Fraction]], List[Key], List[Key]]:
    """Matrix of the differential C^level_[h] -> C^{level+1}_[h] (columns: sources)."""
    sources = cochain_basis(algebra, level, h)
    targets = cochain_basis(algebra, level + 1, h)
    row_of = {key: r for r, key in enumerate(targets)}
    matrix = [[Fraction(0)] * len(sources) for _ in targets]
    for col, key in enumerate(sources):
        image = differential(algebra, Cochain(level, {key: 1}))
        for tkey, value in image.coefficients.items():
            matrix[row_of[tkey]][col] = value
    return matrix, sources, targets


def cocycle_system_level2(algebra: GradedLieAlgebra) -> Tuple[List[List[Fraction]], List[Key], List[Key]]:
    """The cocycle conditions on a general 2-cochain, written from structure constants.

    Row (i1<i2<i3, l) is the coefficient of x_l in (d Phi)(x_i1, x_i2, x_i3):
        sum_k ( c^l_{i1 k} phi^k_{i2 i3} - c^l_{i2 k} phi^k_{i1 i3} + c^l_{i3 k} phi^k_{i1 i2} )
      - sum_s ( c^s_{i1 i2} phi^l_{s i3} - c^s_{i1 i3} phi^l_{s i2} + c^s_{i2 i3} phi^l_{s i1} ).
    This is an independent route to the matrix of the level-2 differential.
    """
    neg = negative_indices(algebra)
    sources = cochain_basis(algebra, 2)
    col_of = {key: c for c, key in enumerate(sources)}
    c = algebra.structure_constant
    n = algebra.dim

    def phi_index(a: int, b: int, k: int):
        if a == b:
            return None, 0
        if a < b:
            return col_of[((a, b), k)], 1
        return col_of[((b, a), k)], -1

    rows, targets = [], []
    for i1, i2, i3 in itertools.combinations(neg, 3):
        for l in range(n):
            row = [Fraction(0)] * len(sources)
            for k in range(n):
                for coeff, (a, b) in ((c(l, i1, k), (i2, i3)), (-c(l, i2, k), (i1, i3)), (c(l, i3, k), (i1, i2))):
                    if coeff:
                        col, sign = phi_index(a, b, k)
                        row[col] += sign * coeff
            for s in neg:
                for coeff, other in ((c(s, i1, i2), i3), (-c(s, i1, i3), i2), (c(s, i2, i3), i1)):
                    if coeff:
                        col, sign = phi_index(s, other, l)
                        if col is not None:
                            row[col] -= sign * coeff
            rows.append(row)
            targets.append(((i1, i2, i3), l))
    return rows, sources, targets


# -- codifferential -------------------------------------------------------------------

def codifferential(algebra: GradedLieAlgebra, cochain: Cochain, half: Fraction = Fraction(1, 2)) -> Cochain:
    """The degree-lowering operator built from the Killing-dual basis.

        (d* Psi)(z_1..z_k) = sum_i [v*_i, Psi(v_i, z_1..z_k)]
                           + half * sum_i sum_j (-1)^(j+1) Psi(proj_-[v*_i, z_j], v_i, z_1..^z_j..z_k)

    with v_i running over the basis of g_- and proj_- the g_- component.
    ``half`` exposes the normalisation of the second sum.
    """
    if cochain.level == 0:
        raise ValueError("the codifferential lowers the level; level 0 has no image")
    n = algebra.dim
    neg = negative_indices(algebra)
    try:
        duals = killing_dual_basis(algebra, neg)
    except SingularKillingForm:
        raise
    neg_set = set(neg)
    k = cochain.level - 1
    out: Dict[Key, Fraction] = {}
    for args in itertools.combinations(neg, k):
        total = [Fraction(0)] * n
        for v, dual in zip(neg, duals):
            value = cochain.value((v,) + args, n)
            if any(value):
                bracket = algebra.bracket(dual, value)
                total = [t + b for t, b in zip(total, bracket)]
            for j, z in enumerate(args, start=1):
                bracket = algebra.bracket(dual, algebra.basis_vector(z))
                rest = args[: j - 1] + args[j:]
                sign = 1 if (j + 1) % 2 == 0 else -1
                for s, coeff in enumerate(bracket):
                    if coeff and s in neg_set:
                        value = cochain.value((s, v) + rest, n)
                        total = [t + half * sign * coeff * w for t, w in zip(total, value)]
        for idx, value in enumerate(total):
            if value:
                out[(args, idx)] = value
    return Cochain(k, out)


def codifferential_matrix(algebra: GradedLieAlgebra, level: int, h: Optional[int] = None,
                          half: Fraction = Fraction(1, 2)) -> Tuple[List[List[Fraction]], List[Key], List[Key]]:
    """Matrix of the codifferential C^level_[h] -> C^{level-1}_[h]."""
    sources = cochain_basis(algebra, level, h)
    targets = cochain_basis(algebra, level - 1, h)
    row_of = {key: r for r, key in enumerate(targets)}
    matrix = [[Fraction(0)] * len(sources) for _ in targets]
    for col, key in enumerate(sources):
        image = codifferential(algebra, Cochain(level, {key: 1}), half)
        for tkey, value in image.coefficients.items():
            if tkey not in row_of:
                raise ValueError("codifferential does not preserve homogeneity")
            matrix[row_of[tkey]][col] = value
    return matrix, sources, targets


# -- dimensions and representatives -------------------------------------------------------

@dataclass
class SpaceDims:
    level: int
    homogeneity: int
    cochains: int
    cocycles: int
    coboundaries: int

    @property
    def cohomology(self) -> int:
        return self.cocycles - self.coboundaries

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.cochains, self.cocycles, self.coboundaries, self.cohomology)


def _matrix_rank(matrix: List[List[Fraction]], ncols: int) -> int:
    if not matrix or ncols == 0:
        return 0
    return len(rref(matrix, ncols)[1])


def space_dims(algebra: GradedLieAlgebra, level: int, h: int) -> SpaceDims:
    d_out, sources, _ = differential_matrix(algebra, level, h)
    cochains = len(sources)
    cocycles = cochains - _matrix_rank(d_out, cochains)
    if level == 0:
        coboundaries = 0
    else:
        d_in, lower, _ = differential_matrix(algebra, level - 1, h)
        coboundaries = _matrix_rank(d_in, len(lower))
    return SpaceDims(level, h, cochains, cocycles, coboundaries)


def cohomology_table(algebra: GradedLieAlgebra, level: int = 2) -> List[SpaceDims]:
    low, high = homogeneity_range(algebra, level)
    return [space_dims(algebra, level, h) for h in range(low, high + 1)]


def _transpose(matrix: List[List[Fraction]], ncols: int) -> List[List[Fraction]]:
    return [[row[c] for row in matrix] for c in range(ncols)]


def coboundary_basis(algebra: GradedLieAlgebra, level: int, h: int) -> Tuple[List[List[Fraction]], List[Key]]:
    d_in, lower, targets = differential_matrix(algebra, level - 1, h)
    columns = _transpose(d_in, len(lower)) if targets else []
    rows, _ = rref(columns, len(targets)) if columns else ([], [])
    return rows, targets


def cocycle_basis(algebra: GradedLieAlgebra, level: int, h: int) -> Tuple[List[List[Fraction]], List[Key]]:
    d_out, sources, _ = differential_matrix(algebra, level, h)
    if not d_out:
        basis = [[Fraction(int(i == j)) for j in range(len(sources))] for i in range(len(sources))]
    else:
        basis = nullspace(d_out, len(sources))
    return basis, sources


def h2_basis(algebra: GradedLieAlgebra, h: int, level: int = 2) -> List[Cochain]:
    """Cocycle representatives of H^level_[h], independent modulo coboundaries.

    Cocycles are reduced against the reduced echelon form of the coboundaries
    and the remainders are put in reduced echelon form themselves, so the
    representatives are deterministic.
    """
    cocycles, keys = cocycle_basis(algebra, level, h)
    boundaries, _ = coboundary_basis(algebra, level, h)
    ncols = len(keys)
    pivots = []
    for row in boundaries:
        pivots.append(next(c for c, v in enumerate(row) if v))
    remainders = []
    for z in cocycles:
        z = list(z)
        for row, p in zip(boundaries, pivots):
            if z[p]:
                factor = z[p]
                z = [a - factor * b for a, b in zip(z, row)]
        if any(z):
            remainders.append(z)
    reps, _ = rref(remainders, ncols) if remainders else ([], [])
    return [Cochain(level, {keys[c]: v for c, v in enumerate(row) if v}) for row in reps]


def same_class_span(algebra: GradedLieAlgebra, h: int, first: Sequence[Cochain], second: Sequence[Cochain],
                    level: int = 2) -> bool:
    """Do the two families span the same subspace modulo coboundaries?"""
    keys = cochain_basis(algebra, level, h)
    index = {k: i for i, k in enumerate(keys)}
    boundaries, _ = coboundary_basis(algebra, level, h)

    def vec(c: Cochain):
        row = [Fraction(0)] * len(keys)
        for key, value in c.coefficients.items():
            row[index[key]] = value
        return row

    base = rank(boundaries) if boundaries else 0
    r1 = rank(boundaries + [vec(c) for c in first]) if first or boundaries else 0
    r2 = rank(boundaries + [vec(c) for c in second]) if second or boundaries else 0
    both = rank(boundaries + [vec(c) for c in first] + [vec(c) for c in second]) if (first or second) else base
    return r1 == r2 == both


def kernel_codifferential_dim(algebra: GradedLieAlgebra, level: int, h: int, half: Fraction = Fraction(1, 2)) -> int:
    matrix, sources, targets = codifferential_matrix(algebra, level, h, half)
    if not targets:
        return len(sources)
    return len(sources) - _matrix_rank(matrix, len(sources))


def splitting_holds(algebra: GradedLieAlgebra, h: int, half: Fraction = Fraction(1, 2)) -> bool:
    """dim C^2_[h] = dim B^2_[h] + dim ker d*_[h]."""
    dims = space_dims(algebra, 2, h)
    return dims.cochains == dims.coboundaries + kernel_codifferential_dim(algebra, 2, h, half)


# -- named cochains -----------------------------------------------------------------------

def cochain_from_names(algebra: GradedLieAlgebra, terms: Iterable[Tuple[Sequence[str], str, object]]) -> Cochain:
    """Build a cochain from (argument names, value name, coefficient) triples, antisymmetrising."""
    out: Dict[Key, Fraction] = {}
    level = None
    for args, value, coeff in terms:
        indices = [algebra.index(a) for a in args]
        level = len(indices) if level is None else level
        order = sorted(range(len(indices)), key=lambda m: indices[m])
        sign = _permutation_sign(order)
        key = (tuple(indices[m] for m in order), algebra.index(value))
        out[key] = out.get(key, Fraction(0)) + sign * Fraction(coeff)
    return Cochain(level or 0, out)


def random_cochain(algebra: GradedLieAlgebra, level: int, rng: random.Random, bound: int = 9, density: float = 0.5) -> Cochain:
    coeffs = {}
    for key in cochain_basis(algebra, level):
        if rng.random() < density:
            coeffs[key] = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
    return Cochain(level, coeffs)


def coefficient_label(algebra: GradedLieAlgebra, key: Key) -> str:
    indices, k = key
    return "phi^" + "".join(algebra.names[i] for i in indices) + "_" + algebra.names[k]


def cocycle_equations(algebra: GradedLieAlgebra) -> List[Dict[str, Fraction]]:
    """Nonzero rows of the level-2 cocycle system as {coefficient label: factor}."""
    rows, sources, _ = cocycle_system_level2(algebra)
    out = []
    for row in rows:
        eq = {coefficient_label(algebra, sources[c]): v for c, v in enumerate(row) if v}
        if eq:
            out.append(eq)
    return out
