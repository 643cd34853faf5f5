from fractions import Fraction

import pytest

from cartanforge import linalg, tanaka
from cartanforge.liealg import (
    ComplexStructure,
    abelian,
    heisenberg_complex_structure,
    heisenberg_negative,
    heisenberg_prolonged,
    validate,
)


def _matrix_is_homomorphism(a, b, matrix) -> bool:
    """M[x, y] = [Mx, My] on every pair of basis vectors, computed directly."""
    columns = [[row[i] for row in matrix] for i in range(a.dim)]
    for x in range(a.dim):
        for y in range(a.dim):
            left = [sum((matrix[r][k] * v for k, v in enumerate(a.bracket(a.basis_vector(x), a.basis_vector(y)))), Fraction(0))
                    for r in range(b.dim)]
            if left != b.bracket(columns[x], columns[y]):
                return False
    return True


@pytest.fixture(scope="module")
def heisenberg_result():
    m = heisenberg_negative()
    return tanaka.prolongation(m, heisenberg_complex_structure(m))


def test_heisenberg_with_J_gives_dims_12221(heisenberg_result):
    assert heisenberg_result.dims() == (1, 2, 2, 2, 1)
    assert not heisenberg_result.truncated
    assert heisenberg_result.levels[-1].dim == 0
    assert validate(heisenberg_result.algebra).ok


def test_every_level_consists_of_derivations(heisenberg_result):
    for level in range(len(heisenberg_result.levels)):
        assert tanaka.is_derivation_level(heisenberg_result, level)


def test_isomorphic_to_the_bundled_algebra(heisenberg_result):
    target = heisenberg_prolonged()
    iso = tanaka.check_isomorphic_to(heisenberg_result.algebra, target)
    assert iso.found
    matrix = iso.matrix()
    assert linalg.determinant(matrix) != 0
    assert _matrix_is_homomorphism(heisenberg_result.algebra, target, matrix)


def test_without_J_the_prolongation_keeps_growing():
    result = tanaka.prolongation(heisenberg_negative(), max_level=2)
    assert result.truncated
    assert result.dims() == (1, 2, 4, 6, 9)


def test_abelian_line_is_truncated():
    result = tanaka.prolongation(abelian(1, grading=[-1]), max_level=3)
    assert result.truncated
    assert result.dims() == (1, 1, 1, 1, 1)


def test_non_isomorphic_algebras_are_rejected(heisenberg_result):
    other = tanaka.prolongation(heisenberg_negative(), max_level=0).algebra
    assert not tanaka.check_isomorphic_to(other, heisenberg_prolonged()).found


def test_J_must_cover_degree_minus_one():
    m = heisenberg_negative()
    with pytest.raises(tanaka.InvalidInput):
        tanaka.prolongation(m, ComplexStructure((0, 1), ((Fraction(0), Fraction(-1)), (Fraction(1), Fraction(0)))))
