import json
from fractions import Fraction

import pytest

from cartanforge.liealg import (
    ComplexStructure,
    DimensionMismatch,
    InvalidComplexStructure,
    LieAlgebra,
    abelian,
    algebra_from_json_dict,
    bundled_algebra,
    bundled_algebra_names,
    dump_algebra,
    heisenberg_complex_structure,
    heisenberg_negative,
    heisenberg_prolonged,
    killing_form,
    load_algebra,
    validate,
)


def test_heisenberg_prolonged_is_graded_and_valid():
    g = heisenberg_prolonged()
    assert validate(g).ok
    assert g.dims() == {-2: 1, -1: 2, 0: 2, 1: 2, 2: 1}
    assert g.bracket_names("h1", "h2") == {"t": 4}
    assert g.bracket_names("i1", "i2") == {"j": 4}


def test_broken_jacobi_is_reported():
    # [x1, x2] = x3, [x1, x3] = x1 but [x2, x3] = 0 breaks Jacobi
    bad = LieAlgebra(["x1", "x2", "x3"], {(0, 1): {2: Fraction(1)}, (0, 2): {0: Fraction(1)}})
    assert not validate(bad).ok


def test_sl2_killing_form_is_nondegenerate():
    sl2 = LieAlgebra(["h", "e", "f"], {(0, 1): {1: Fraction(2)}, (0, 2): {2: Fraction(-2)}, (1, 2): {0: Fraction(1)}})
    form = killing_form(sl2)
    assert form[0][0] == 8 and form[1][2] == 4


def test_every_bundled_algebra_validates():
    names = bundled_algebra_names()
    assert {"heisenberg", "heisenberg_prolonged", "abelian3"} <= set(names)
    for name in names:
        assert validate(bundled_algebra(name)).ok, name
    assert bundled_algebra("heisenberg_prolonged") == heisenberg_prolonged()


def test_json_round_trip(tmp_path):
    path = tmp_path / "g.json"
    dump_algebra(heisenberg_prolonged(), path)
    assert load_algebra(path) == heisenberg_prolonged()


def test_names_and_dim_must_agree():
    with pytest.raises(DimensionMismatch):
        algebra_from_json_dict({"dim": 2, "names": ["a"], "brackets": []})


def test_complex_structure_must_square_to_minus_one():
    J = heisenberg_complex_structure(heisenberg_negative())
    assert J.apply([1, 0]) == [0, 1]
    with pytest.raises(InvalidComplexStructure):
        ComplexStructure((1, 2), ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))))


def test_abelian_has_no_brackets():
    a = abelian(3)
    assert a.derived_dimension() == 0
