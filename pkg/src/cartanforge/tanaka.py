"""Tanaka prolongation of a negatively graded Lie algebra, solved level by level.

Level l of the prolongation consists of the linear maps d on g_- that send
g_k into the already built component g_{k+l} and satisfy the derivation rule
d([y, z]) = [d(y), z] + [y, d(z)].  At level 0 a complex structure J on g_{-1}
may additionally be imposed (d J = J d).  Brackets between non-negative
elements are defined by [d, e](x) = [[d, x], e] + [d, [e, x]].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .liealg import ComplexStructure, GradedLieAlgebra, LieAlgebra, validate

Sparse = Dict[int, Fraction]


class InvalidInput(ValueError):
    pass


@dataclass
class ProlongationLevel:
    level: int
    indices: List[int]
    # images[n][x] is d_n(x) for the n-th basis map, as a sparse vector
    images: List[Dict[int, Sparse]]

    @property
    def dim(self) -> int:
        return len(self.indices)


@dataclass
class Prolongation:
    algebra: GradedLieAlgebra
    levels: List[ProlongationLevel]
    truncated: bool = False

    def dims(self) -> Tuple[int, ...]:
        d = self.algebra.dims()
        return tuple(d[k] for k in sorted(d))


def _add(target: Sparse, vec: Sparse, factor: Fraction = Fraction(1)) -> None:
    for k, v in vec.items():
        value = target.get(k, Fraction(0)) + factor * v
        if value:
            target[k] = value
        else:
            target.pop(k, None)


class _Builder:
    def __init__(self, m: GradedLieAlgebra):
        if not isinstance(m, GradedLieAlgebra) or any(g >= 0 for g in m.grading) or m.dim == 0:
            raise InvalidInput("prolongation needs a graded algebra with all degrees negative")
        report = validate(m)
        if not report.ok:
            raise InvalidInput("input algebra fails antisymmetry, Jacobi or grading checks")
        self.m = m
        self.neg = list(range(m.dim))
        self.names = list(m.names)
        self.degree = list(m.grading)
        self.images: Dict[int, Dict[int, Sparse]] = {}
        self.levels: List[ProlongationLevel] = []
        self._cache: Dict[Tuple[int, int], Sparse] = {}

    def of_degree(self, k: int) -> List[int]:
        return [e for e, g in enumerate(self.degree) if g == k]

    def act(self, e: int, x: int) -> Sparse:
        """[e, x] for a basis element e and x in g_-."""
        if self.degree[e] < 0:
            return dict(self.m.bracket_basis(e, x))
        return dict(self.images[e].get(x, {}))

    def bracket(self, a: int, b: int) -> Sparse:
        if a == b:
            return {}
        key = (a, b)
        if key not in self._cache:
            self._cache[key] = self._bracket(a, b)
        return dict(self._cache[key])

    def bracket_with(self, a: int, vec: Sparse) -> Sparse:
        out: Sparse = {}
        for k, v in vec.items():
            _add(out, self.bracket(a, k), v)
        return out

    def _bracket(self, a: int, b: int) -> Sparse:
        da, db = self.degree[a], self.degree[b]
        if da < 0 and db < 0:
            return dict(self.m.bracket_basis(a, b))
        if db < 0:
            return self.act(a, b)
        if da < 0:
            return {k: -v for k, v in self.act(b, a).items()}
        # both non-negative: the map x -> [a, [b, x]] - [b, [a, x]]
        image: Dict[int, Sparse] = {}
        for x in self.neg:
            value = self.bracket_with(a, self.act(b, x))
            _add(value, self.bracket_with(b, self.act(a, x)), Fraction(-1))
            if value:
                image[x] = value
        return self.identify(da + db, image)

    def identify(self, level: int, image: Dict[int, Sparse]) -> Sparse:
        """Express a map g_- -> g as a combination of the level-``level`` basis maps."""
        if not image:
            return {}
        if level >= len(self.levels):
            raise _BeyondTruncation(level)
        basis = self.levels[level]
        coords = sorted({(x, k) for x, vec in image.items() for k in vec}
                        | {(x, k) for imgs in basis.images for x, vec in imgs.items() for k in vec})
        rows = [[imgs.get(x, {}).get(k, Fraction(0)) for imgs in basis.images] for x, k in coords]
        rhs = [image.get(x, {}).get(k, Fraction(0)) for x, k in coords]
        solution = linalg.solve(rows, rhs) if basis.images else None
        if solution is None or linalg.matmul(rows, [[v] for v in solution]) != [[v] for v in rhs]:
            raise ArithmeticError(f"bracket does not land in level {level} of the prolongation")
        return {e: v for e, v in zip(basis.indices, solution) if v}

    def build_level(self, level: int, J: Optional[ComplexStructure]) -> ProlongationLevel:
        variables: List[Tuple[int, int]] = []
        for x in self.neg:
            for t in self.of_degree(self.degree[x] + level):
                variables.append((x, t))
        var_index = {v: n for n, v in enumerate(variables)}
        equations: List[Dict[int, Fraction]] = []

        def d_of(vec: Sparse) -> Dict[int, Dict[int, Fraction]]:
            # component -> {variable: coefficient} for d applied to a vector of g_-
            out: Dict[int, Dict[int, Fraction]] = {}
            for x, c in vec.items():
                for t in self.of_degree(self.degree[x] + level):
                    row = out.setdefault(t, {})
                    row[var_index[(x, t)]] = row.get(var_index[(x, t)], Fraction(0)) + c
            return out

        for y, z in itertools.combinations(self.neg, 2):
            rows: Dict[int, Dict[int, Fraction]] = d_of(dict(self.m.bracket_basis(y, z)))
            for t in self.of_degree(self.degree[y] + level):
                for comp, c in self.bracket(t, z).items():
                    row = rows.setdefault(comp, {})
                    row[var_index[(y, t)]] = row.get(var_index[(y, t)], Fraction(0)) - c
            for t in self.of_degree(self.degree[z] + level):
                for comp, c in self.bracket(y, t).items():
                    row = rows.setdefault(comp, {})
                    row[var_index[(z, t)]] = row.get(var_index[(z, t)], Fraction(0)) - c
            equations.extend(rows.values())

        if level == 0 and J is not None:
            for c, x in enumerate(J.indices):
                jx = {J.indices[r]: J.matrix[r][c] for r in range(len(J.indices)) if J.matrix[r][c]}
                rows = d_of(jx)
                for t in self.of_degree(-1):
                    if t not in J.indices:
                        continue
                    jt_col = J.indices.index(t)
                    for r, target in enumerate(J.indices):
                        coeff = J.matrix[r][jt_col]
                        if coeff:
                            row = rows.setdefault(target, {})
                            row[var_index[(x, t)]] = row.get(var_index[(x, t)], Fraction(0)) - coeff
                equations.extend(rows.values())

        n = len(variables)
        dense = [[eq.get(v, Fraction(0)) for v in range(n)] for eq in equations if any(eq.values())]
        if n == 0:
            solutions = []
        elif dense:
            solutions = linalg.nullspace(dense, n)
        else:
            solutions = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        indices, images = [], []
        for number, sol in enumerate(solutions, start=1):
            image: Dict[int, Sparse] = {}
            for (x, t), value in zip(variables, sol):
                if value:
                    image.setdefault(x, {})[t] = value
            e = len(self.names)
            self.names.append(f"g{level}_{number}")
            self.degree.append(level)
            self.images[e] = image
            indices.append(e)
            images.append(image)
        result = ProlongationLevel(level, indices, images)
        self.levels.append(result)
        return result


class _BeyondTruncation(Exception):
    def __init__(self, level):
        super().__init__(level)
        self.level = level


def _check_complex_structure(m: GradedLieAlgebra, J: ComplexStructure) -> None:
    if sorted(J.indices) != m.component(-1):
        raise InvalidInput("J must act on the whole degree -1 component")


def prolongation(m: GradedLieAlgebra, J: Optional[ComplexStructure] = None, max_level: int = 10) -> Prolongation:
    """All levels of the prolongation up to the first vanishing one (or ``max_level``).

    When ``max_level`` is reached with a nonzero level the result is flagged
    ``truncated`` and brackets landing beyond the last level are dropped.
    """
    builder = _Builder(m)
    if J is not None:
        _check_complex_structure(m, J)
    truncated = False
    for level in range(max_level + 1):
        if builder.build_level(level, J).dim == 0:
            break
    else:
        truncated = True
    brackets: Dict[Tuple[int, int], Sparse] = {}
    total = len(builder.names)
    for a, b in itertools.combinations(range(total), 2):
        try:
            image = builder.bracket(a, b)
        except _BeyondTruncation:
            continue
        if image:
            brackets[(a, b)] = image
    algebra = GradedLieAlgebra(builder.names, brackets, builder.degree)
    return Prolongation(algebra, builder.levels, truncated)


def prolong(m: GradedLieAlgebra, J: Optional[ComplexStructure] = None, max_level: int = 10) -> GradedLieAlgebra:
    return prolongation(m, J, max_level).algebra


def is_derivation_level(result: Prolongation, level: int) -> bool:
    """Recheck the derivation rule for every basis map of one level, on all basis pairs of g_-."""
    alg = result.algebra
    neg = alg.negative_part()
    for e in result.levels[level].indices:
        for y, z in itertools.combinations(neg, 2):
            yz = alg.bracket_basis(y, z)
            lhs = [Fraction(0)] * alg.dim
            for s, c in yz.items():
                for k, v in alg.bracket_basis(e, s).items():
                    lhs[k] += c * v
            ey = alg.bracket(alg.basis_vector(e), alg.basis_vector(y))
            ez = alg.bracket(alg.basis_vector(e), alg.basis_vector(z))
            rhs = [a + b for a, b in zip(alg.bracket(ey, alg.basis_vector(z)), alg.bracket(alg.basis_vector(y), ez))]
            if lhs != rhs:
                return False
    return True


# -- isomorphism search -------------------------------------------------------------

SCALE_CANDIDATES = tuple(Fraction(s) * Fraction(1, d) for d in (1, 2, 3, 4, 6) for s in (1, -1, 2, -2, 3, -3, 4, -4, 6, -6)
                         if Fraction(s, d) != 0)


@dataclass
class IsomorphismResult:
    found: bool
    reason: str = ""
    permutation: List[int] = field(default_factory=list)
    scales: List[Fraction] = field(default_factory=list)

    def matrix(self) -> List[List[Fraction]]:
        """Columns are the images of A's basis vectors in B's coordinates."""
        n = len(self.permutation)
        out = [[Fraction(0)] * n for _ in range(n)]
        for i, (p, lam) in enumerate(zip(self.permutation, self.scales)):
            out[p][i] = lam
        return out

    def describe(self, a: LieAlgebra, b: LieAlgebra) -> Dict[str, str]:
        return {a.names[i]: f"{lam} {b.names[p]}" for i, (p, lam) in enumerate(zip(self.permutation, self.scales))}

    def to_json(self, a: LieAlgebra, b: LieAlgebra) -> dict:
        out = {"found": self.found, "reason": self.reason}
        if self.found:
            out["map"] = self.describe(a, b)
        return out


def _degrees(alg: LieAlgebra) -> List[int]:
    return list(alg.grading) if isinstance(alg, GradedLieAlgebra) else [0] * alg.dim


def _graded_permutations(da: Sequence[int], db: Sequence[int]):
    groups = sorted(set(da))
    blocks = [([i for i, g in enumerate(da) if g == k], [i for i, g in enumerate(db) if g == k]) for k in groups]
    for choice in itertools.product(*(itertools.permutations(tb) for _, tb in blocks)):
        perm = [0] * len(da)
        for (sources, _), targets in zip(blocks, choice):
            for s, t in zip(sources, targets):
                perm[s] = t
        yield perm


def _solve_scales(a: LieAlgebra, b: LieAlgebra, perm: List[int]) -> Optional[List[Fraction]]:
    n = a.dim
    equations = []
    for i, j in itertools.combinations(range(n), 2):
        image_a = a.bracket_basis(i, j)
        image_b = b.bracket_basis(perm[i], perm[j])
        for s in range(n):
            ca = image_a.get(s, Fraction(0))
            cb = image_b.get(perm[s], Fraction(0))
            if (ca == 0) != (cb == 0):
                return None
            if ca:
                equations.append((i, j, s, ca, cb))
    # lambda_i lambda_j cb = lambda_s ca

    def propagate(scales):
        changed = True
        while changed:
            changed = False
            for i, j, s, ca, cb in equations:
                li, lj, ls = scales[i], scales[j], scales[s]
                known = sum(v is not None for v in (li, lj, ls))
                if known == 3:
                    if li * lj * cb != ls * ca:
                        return False
                elif known == 2:
                    if ls is None:
                        scales[s] = li * lj * cb / ca
                    elif li is None:
                        scales[i] = ls * ca / (lj * cb)
                    else:
                        scales[j] = ls * ca / (li * cb)
                    changed = True
        return True

    def search(scales):
        scales = list(scales)
        if not propagate(scales):
            return None
        if all(v is not None for v in scales):
            return scales
        free = scales.index(None)
        for candidate in SCALE_CANDIDATES:
            trial = list(scales)
            trial[free] = candidate
            found = search(trial)
            if found is not None:
                return found
        return None

    return search([None] * n)


def _is_homomorphism(a: LieAlgebra, b: LieAlgebra, perm: List[int], scales: List[Fraction]) -> bool:
    for i, j in itertools.combinations(range(a.dim), 2):
        lhs = {perm[s]: v * scales[s] for s, v in a.bracket_basis(i, j).items()}
        rhs = {s: v * scales[i] * scales[j] for s, v in b.bracket_basis(perm[i], perm[j]).items()}
        if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
            return False
    return True


def check_isomorphic_to(a: LieAlgebra, b: LieAlgebra) -> IsomorphismResult:
    """Search for a graded isomorphism A -> B of the form x_i -> lambda_i y_perm(i).

    Only signed permutations with scaling are tried; a failure therefore means
    no such diagonal identification exists (a general basis change is not searched).
    """
    if a.dim != b.dim:
        return IsomorphismResult(False, "dimensions differ")
    da, db = _degrees(a), _degrees(b)
    if sorted(da) != sorted(db):
        return IsomorphismResult(False, "graded dimensions differ")
    if a.derived_dimension() != b.derived_dimension():
        return IsomorphismResult(False, "derived algebras have different dimensions")
    for perm in _graded_permutations(da, db):
        scales = _solve_scales(a, b, perm)
        if scales is not None and _is_homomorphism(a, b, perm, scales):
            return IsomorphismResult(True, "signed permutation with scaling", perm, scales)
    return IsomorphismResult(False, "no graded signed-permutation isomorphism with scaling")
