from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cartanforge import crmodel
from cartanforge.crmodel import GaussRational, HoloField, I
from cartanforge.liealg import heisenberg_prolonged

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=20)
gauss = st.builds(GaussRational, rationals, rationals)


def test_all_basis_fields_are_tangent():
    for field in crmodel.hol_basis():
        assert crmodel.tangency_defect(field) == {}, field.name


def test_non_tangent_field_has_defect():
    # d/dz alone is not tangent: the defect is -2i zb - 2i z
    field = HoloField.from_polys({(0, 0): 1}, {}, "dz")
    assert crmodel.tangency_defect(field) == {(0, 1, 0): -2 * I, (1, 0, 0): -2 * I}


def test_commutator_table_equals_bundled_algebra():
    assert crmodel.hol_algebra().table() == heisenberg_prolonged().table()


def test_homogeneities():
    weights = [crmodel.hol_basis()[k].homogeneity() for k in range(8)]
    assert weights == [{-2}, {-1}, {-1}, {0}, {0}, {1}, {1}, {2}]


def test_half_dilation_is_tangent_but_not_D():
    half = crmodel.dilation_from_solution_list()
    assert crmodel.tangency_defect(half) == {}
    assert crmodel.decompose(half, crmodel.hol_basis())[3] == Fraction(1, 2)


def test_decompose_rejects_fields_outside_the_span():
    with pytest.raises(crmodel.NotInSpan):
        crmodel.decompose(HoloField.from_polys({(3, 0): 1}, {}), crmodel.hol_basis())


@given(gauss, gauss, gauss)
def test_gauss_field_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    if b:
        assert (a / b) * b == a


@given(st.lists(rationals, min_size=8, max_size=8))
def test_real_combinations_of_basis_stay_tangent(coeffs):
    total = HoloField.from_polys({}, {})
    for c, f in zip(coeffs, crmodel.hol_basis()):
        total = HoloField.from_polys(
            crmodel.poly_add(total.z_coeff, f.z_coeff, GaussRational(c)),
            crmodel.poly_add(total.w_coeff, f.w_coeff, GaussRational(c)),
        )
    assert crmodel.tangency_defect(total) == {}
    assert crmodel.decompose(total, crmodel.hol_basis()) == coeffs
