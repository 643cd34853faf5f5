import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cartanforge.jetcalc.diffpoly import DiffPoly
from cartanforge.jetcalc.printed import diff_printed_A1
from cartanforge.jetcalc.rational import DegeneratePoint, build_basics, build_phi
from cartanforge.jetcalc.series import Polynomial3, jets_of_polynomial
from cartanforge.jetcalc.verify import JetPoint, evaluate_at, random_jet_point, verify_identity
from cartanforge.jetcalc.words import (
    curvature_raw,
    essential_symmetric,
    identity,
    literal_form,
    parse_phipoly,
    relation,
    weights,
)

seeds = st.integers(min_value=0, max_value=2 ** 32)
x, y, u = (Polynomial3.var(n) for n in "xyu")


def sphere_point(at=(0, 0, 0), order=6):
    return JetPoint(jets_of_polynomial(x * x + y * y, at, max_order=order))


def test_sphere_basics():
    basics = sphere_point().basics()
    assert basics == {"Delta": 1, "Lambda1": 0, "Lambda2": 0, "Upsilon": -4}


@pytest.mark.parametrize("at", [(0, 0, 0), (1, -2, 3), (Fraction(1, 3), 5, -1)])
def test_sphere_invariants_vanish(at):
    frame = sphere_point(at).frame()
    assert frame.value((), 1) == frame.value((), 2) == 0
    assert frame.value((1, 2), 1) == 0


@settings(max_examples=8, deadline=None)
@given(seeds)
def test_symbolic_and_series_routes_agree(seed):
    point = random_jet_point(random.Random(seed), order=4, bound=50)
    frame = point.frame()
    for word in ((), (1,), (2,)):
        for i in (1, 2):
            assert build_phi(word, i).evaluate(point.values) == frame.value(word, i)


def test_commuting_invariants_are_formally_equal():
    assert verify_identity(build_phi((2,), 1) - build_phi((1,), 2), mode="full_expansion").zero


@pytest.mark.parametrize("name", ["I", "II", "III", "IV", "V"])
def test_relations_vanish(name):
    assert verify_identity(relation(name), n_points=5, seed=11).zero


@pytest.mark.parametrize("name", ["a", "b"])
def test_identities_vanish(name):
    assert verify_identity(identity(name), n_points=5, seed=12).zero


def test_relation_five_follows_from_one_and_two():
    combo = relation("V") - (relation("I") - relation("II"))
    assert verify_identity(combo, mode="full_expansion").zero


def test_curvature_combinations_vanish():
    assert verify_identity(curvature_raw("Delta2"), n_points=5, seed=3).zero
    assert verify_identity(curvature_raw("Delta3") + 2 * curvature_raw("Delta4"), n_points=5, seed=4).zero


def test_symmetric_forms_match_raw_forms():
    for name in ("Delta1", "Delta4"):
        difference = essential_symmetric(name) - curvature_raw(name)
        assert verify_identity(difference, n_points=4, seed=5).zero, name


def test_typeset_readings_differ_from_the_corrected_ones():
    report = verify_identity(literal_form("essential1") - essential_symmetric("Delta1"), n_points=2, seed=6)
    assert not report.zero and report.witness_value != 0
    report = verify_identity(literal_form("curvature3") - curvature_raw("Delta3"), n_points=2, seed=7)
    assert not report.zero


def test_essential_curvatures_are_homogeneous_of_weight_four():
    assert weights(essential_symmetric("Delta1")) == {4}
    assert weights(essential_symmetric("Delta4")) == {4}


def test_printed_expansion_has_three_slips():
    diff = diff_printed_A1()
    assert len(diff) == 6
    # each slip shows up as one monomial missing and one spurious monomial
    assert diff["phi_x*phi_x*phi_u*phi_u*phi_u*phi_u*phi_xuu"] == (-3, 0)
    assert diff["phi_x*phi_x*phi_u*phi_u*phi_u*phi_u*phi_xuuu"] == (0, -3)
    assert diff["phi_x*phi_x*phi_x*phi_u*phi_uuu"] == (1, 0)
    assert diff["phi_x*phi_x*phi_u*phi_uuu"] == (0, 1)
    assert diff["phi_y*phi_u*phi_u*phi_u*phi_xu*phi_xu"] == (8, 0)
    assert diff["phi_y*phi_u*phi_u*phi_u*phi_xy*phi_xy"] == (0, 8)


def test_degenerate_point_is_rejected():
    # x^2 - y^2 has an indefinite Levi form: Upsilon vanishes
    flat = JetPoint(jets_of_polynomial(x * x - y * y, (0, 0, 0), max_order=6))
    assert flat.is_degenerate()
    with pytest.raises(DegeneratePoint):
        evaluate_at(essential_symmetric("Delta1"), flat)


def test_phipoly_parser_round_trip():
    p = parse_phipoly("2 Phi1*H1H2Phi2 - 1/3 H1Phi1^2")
    assert parse_phipoly(str(p)) == p


jets = st.dictionaries(
    st.sampled_from([(1, 0, 0), (0, 1, 0), (0, 0, 1), (2, 0, 0), (1, 0, 1), (0, 1, 1)]),
    st.integers(-3, 3),
    max_size=4,
)


@settings(deadline=None)
@given(jets, jets)
def test_total_derivatives_commute(a, b):
    p = sum((DiffPoly.jet(k) * v for k, v in a.items()), DiffPoly())
    q = sum((DiffPoly.jet(k) * v for k, v in b.items()), DiffPoly())
    f = p * q + p
    assert f.total_derivative("x").total_derivative("u") == f.total_derivative("u").total_derivative("x")
    assert (p * q).total_derivative("y") == p.total_derivative("y") * q + p * q.total_derivative("y")


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_basics_agree_with_series_frame(seed):
    point = random_jet_point(random.Random(seed), order=3, bound=20)
    delta, _, _, upsilon = build_basics()
    frame = point.frame()
    assert frame.delta.constant() == delta.evaluate(point.values)
    assert frame.upsilon.constant() == upsilon.evaluate(point.values)
