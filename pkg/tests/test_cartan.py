import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cartanforge import cohomology, linalg
from cartanforge.cartan.connection import (
    CURVATURE_PAIRS,
    FRAME,
    VERTICAL,
    ConnectionCoefficients,
    alpha_formal,
    build_beta,
    check_c1_system,
    coefficients_by_homogeneity,
    connection_matrix_det,
    curvature_h5,
    diff_closed_forms,
    essential_forms,
    normality_violations,
)
from cartanforge.cartan.fiber import FiberPoly, FiberRational, vector_field_bracket, vertical_apply, vertical_field_coefficients
from cartanforge.cartan.jetring import SeriesJetRing
from cartanforge.jetcalc.series import Polynomial3, jets_of_polynomial
from cartanforge.jetcalc.verify import random_jet_point
from cartanforge.liealg import heisenberg_prolonged

a, b, c, d, e = (FiberPoly.var(n) for n in "abcde")
BASE = (0, 0, 1, 1, 0)
G = heisenberg_prolonged()


def on_sphere(poly: FiberPoly) -> FiberPoly:
    """Substitute the model: every Phi-word vanishes."""
    def value(coeff):
        if isinstance(coeff, (int, Fraction)):
            return Fraction(coeff)
        return Fraction(coeff.evaluate(lambda atom: 0, one=1))

    return poly.map_coefficients(value)


def sphere_ring():
    x, y = Polynomial3.var("x"), Polynomial3.var("y")
    return SeriesJetRing.from_jets(jets_of_polynomial(x * x + y * y, (0, 0, 0), max_order=6))


@pytest.fixture(scope="module")
def alpha():
    return alpha_formal()


def test_graded_normalisation(alpha):
    expected = {
        ("t", "t"): c * c + d * d,
        ("t", "h1"): b * d - a * c,
        ("t", "h2"): -a * d - b * c,
        ("h1", "h1"): c,
        ("h2", "h2"): c,
        ("h1", "h2"): d,
        ("h2", "h1"): -d,
    }
    for key, value in expected.items():
        assert alpha[key].equals(value), key


def test_spot_values(alpha):
    assert on_sphere(alpha["h1", "r"]).evaluate((1, 0, 0, 0, 0)) == -6
    assert on_sphere(alpha["t", "r"]).equals(3 * a * a + 3 * b * b)


def test_fiber_degree_at_most_four(alpha):
    assert max(poly.degree() for poly in alpha.values()) <= 4


def test_vertical_spot_equations(alpha):
    s = c * c + d * d
    assert (vertical_apply("d", s) + 2 * s).is_zero()
    assert vertical_apply("r", s).is_zero()
    assert (on_sphere(vertical_apply("j", alpha["h1", "i1"])) + 1).is_zero()
    assert (on_sphere(vertical_apply("i1", alpha["h1", "r"])) + 6).is_zero()
    assert vertical_apply("i2", FiberPoly.const(7)).is_zero()


def test_vertical_fields_close_on_the_isotropy_algebra():
    for k, v in enumerate(VERTICAL):
        for w in VERTICAL[k + 1:]:
            bracket = vector_field_bracket(vertical_field_coefficients(v), vertical_field_coefficients(w))
            expected = {}
            for target, coeff in G.bracket_names(v, w).items():
                for var, poly in vertical_field_coefficients(target).items():
                    expected[var] = expected.get(var, FiberPoly()) + poly * coeff
            keys = set(bracket) | set(expected)
            assert all((bracket.get(k2, FiberPoly()) - expected.get(k2, FiberPoly())).is_zero() for k2 in keys), (v, w)


def test_beta_is_dual_to_alpha_on_the_sphere(alpha):
    beta = build_beta(alpha)
    assert (beta["t", "t"] * alpha["t", "t"] - FiberRational(FiberPoly.const(1))).reduce().is_zero()
    model = {key: on_sphere(poly) for key, poly in alpha.items()}
    beta = build_beta(model)
    omega_inverse = [[Fraction(model.get((row, col), FiberPoly()).evaluate(BASE)) if row in ("t", "h1", "h2")
                      else Fraction(int(row == col)) for col in FRAME] for row in FRAME]
    # column Z holds the dual covector of X^_Z: beta on horizontal slots, Z itself on vertical ones
    dual = [[Fraction(beta[z, w].evaluate(BASE)) if (z, w) in beta else Fraction(0) for z in FRAME] for w in ("t", "h1", "h2")]
    dual += [[Fraction(int(z == v)) for z in FRAME] for v in VERTICAL]
    assert linalg.matmul(omega_inverse, dual) == [[Fraction(int(i == j)) for j in range(8)] for i in range(8)]
    assert build_beta(model)["h1", "h1"].evaluate((0, 0, 1, 0, 0)) == 1


def test_determinant(alpha):
    s = c * c + d * d
    det = connection_matrix_det(alpha)
    assert (det - s * s).is_zero()
    assert on_sphere(det).evaluate((0, 0, 1, 1, 0)) == 4


def test_closed_forms_differ_only_in_the_known_slips():
    assert set(diff_closed_forms()) == {("t", "d"), ("t", "r"), ("t", "j")}


def test_formal_equivariance_system(alpha):
    report = check_c1_system(alpha)
    assert report.ok
    assert len(report.equations) == 110 and report.trivial == 10


def test_perturbed_alpha_breaks_equivariance(alpha):
    broken = dict(alpha)
    broken["h1", "r"] = alpha["h1", "r"] + a
    report = check_c1_system(broken)
    assert not report.ok and report.failures


@pytest.mark.parametrize("seed", [0, 1])
def test_bracket_route_agrees_at_random_points(seed):
    point = random_jet_point(random.Random(seed), order=6, bound=50)
    connection = ConnectionCoefficients.build(SeriesJetRing.from_jets(point.values))
    report = check_c1_system(connection=connection)
    assert report.ok and report.routes_agree


def test_lifted_bracket_on_the_sphere():
    connection = ConnectionCoefficients.build(sphere_ring())
    bracket = connection.lifted_bracket("h1", "h2")
    value = bracket["t"].map_coefficients(SeriesJetRing.value).evaluate(BASE)
    assert value == 8
    vertical = connection.lifted_bracket("d", "j")
    assert vertical["j"].equals(FiberPoly.const(2))
    assert all(v.is_zero() for k, v in vertical.items() if k != "j")


def test_sphere_curvature_vanishes():
    connection = ConnectionCoefficients.build(sphere_ring())
    curvatures = {pair: connection.curvature(pair) for pair in CURVATURE_PAIRS}
    assert normality_violations(curvatures) == []
    for components in curvatures.values():
        assert all(v.is_zero() for v in components.values())


def test_curvature_labels_by_homogeneity():
    by = coefficients_by_homogeneity()
    assert sum(len(by[h]) for h in range(4)) == 17
    assert sorted(by[4]) == sorted([(("h1", "h2"), "j"), (("h1", "t"), "i1"), (("h1", "t"), "i2"),
                                    (("h2", "t"), "i1"), (("h2", "t"), "i2")])


def test_essential_forms_at_c1_d0():
    forms = essential_forms(Fraction(3), Fraction(5))
    assert forms[("h1", "t"), "i1"].evaluate((0, 0, 1, 0, 0)) == -3
    assert forms[("h2", "t"), "i2"].equals(-forms[("h1", "t"), "i1"])
    assert forms[("h2", "t"), "i1"].equals(forms[("h1", "t"), "i2"])


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=9)


@given(rationals, rationals)
def test_bianchi_route_for_homogeneity_five(k1, k2):
    # a homogeneity-5 2-cochain: (h1, t) -> k1 j, (h2, t) -> k2 j
    kappa = cohomology.cochain_from_names(G, [(("h1", "t"), "j", k1), (("h2", "t"), "j", k2)])
    image = cohomology.differential(G, kappa)
    value = image.value([G.index("h1"), G.index("h2"), G.index("t")], G.dim)
    expected = [Fraction(0)] * G.dim
    expected[G.index("i1")] = k2
    expected[G.index("i2")] = -k1
    assert value == expected


def test_homogeneity_five_routes_agree_on_the_sphere():
    connection = ConnectionCoefficients.build(sphere_ring())
    routes = curvature_h5(connection)
    for key in ("h1t", "h2t"):
        assert routes["direct"][key].is_zero() and routes["derived"][key].is_zero()


@pytest.fixture(scope="module")
def numeric_alphas():
    out = []
    for seed in (3, 4):
        ring = SeriesJetRing.from_jets(random_jet_point(random.Random(seed), order=6, bound=30).values)
        out.append({key: poly.map_coefficients(ring.lift).map_coefficients(SeriesJetRing.value)
                    for key, poly in alpha_formal().items()})
    return out


@settings(max_examples=10, deadline=None)
@given(st.tuples(*[rationals] * 5))
def test_beta_is_dual_to_alpha_at_random_points(numeric_alphas, fiber):
    if fiber[2] == 0 and fiber[3] == 0:
        return
    for numeric in numeric_alphas:
        beta = build_beta(numeric)
        for z in FRAME:
            for y in ("t", "h1", "h2"):
                # <X^*_z, X^_y> with X^_y = sum_w alpha_{y,w} w
                total = sum((Fraction(beta[z, w].evaluate(fiber)) * Fraction(numeric[y, w].evaluate(fiber))
                             for w in ("t", "h1", "h2") if (z, w) in beta and (y, w) in numeric), Fraction(0))
                if z in VERTICAL and (y, z) in numeric:
                    total += Fraction(numeric[y, z].evaluate(fiber))
                assert total == int(z == y), (z, y)


def test_homogeneity_five_routes_agree_at_a_random_point():
    point = random_jet_point(random.Random(21), order=8, bound=9)
    ring = SeriesJetRing.from_jets(point.values)
    routes = curvature_h5(ConnectionCoefficients.build(ring))
    for key in ("h1t", "h2t"):
        direct, derived = routes["direct"][key], routes["derived"][key]
        difference = FiberRational((direct - derived).num.map_coefficients(ring.value), (direct - derived).power)
        assert difference.reduce().is_zero()
