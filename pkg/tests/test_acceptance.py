"""The nine acceptance criteria, each printed as one PASS/FAIL line in the terminal summary."""

import io
import json
import random
from fractions import Fraction
from pathlib import Path

import pytest

from cartanforge import cli, cohomology, crmodel, freelie, linalg, tanaka
from cartanforge.cartan.connection import (
    CURVATURE_PAIRS,
    ConnectionCoefficients,
    check_c1_system,
    coefficients_by_homogeneity,
    connection_matrix_det,
    essential_curvatures,
    essential_forms,
)
from cartanforge.cartan.fiber import FiberPoly, FiberRational
from cartanforge.cartan.jetring import SeriesJetRing
from cartanforge.cohomology import cochain_from_names
from cartanforge.jetcalc.rational import build_phi
from cartanforge.jetcalc.series import Polynomial3, jets_of_polynomial
from cartanforge.jetcalc.verify import JetPoint, evaluate_at, random_jet_point, verify_identity
from cartanforge.jetcalc.words import curvature_raw, identity, relation
from cartanforge.liealg import (
    bundled_algebra,
    bundled_algebra_names,
    heisenberg_complex_structure,
    heisenberg_negative,
    heisenberg_prolonged,
    validate,
)

G = heisenberg_prolonged()
FIXTURES = Path(__file__).parent / "fixtures"

# The two homogeneity-4 generators exactly as printed, and with the relative sign
# that makes them cocycles (see the decisions ledger).
PRINTED_H4 = [
    [(("t", "h2"), "i2", 1), (("h1", "h2"), "j", -2)],
    [(("t", "h2"), "i1", 1), (("t", "h1"), "i2", -1)],
]
SIGN_CORRECTED_H4 = [
    [(("t", "h2"), "i2", 1), (("h1", "h2"), "j", 2)],
    [(("t", "h2"), "i1", 1), (("t", "h1"), "i2", 1)],
]


def run_cli(*argv):
    out = io.StringIO()
    status, payload = cli.run(list(argv), out=out)
    return status, payload


# -- 1 ------------------------------------------------------------------------------

def test_ac1_cohomology_table(criterion):
    with criterion("AC1", "table of C, Z, B, H over homogeneities 0-5", budget=1.0):
        rows = [cohomology.space_dims(G, 2, h) for h in range(6)]
        assert [r.cochains for r in rows] == [1, 4, 6, 6, 5, 2]
        assert [r.cocycles for r in rows] == [1, 4, 5, 4, 3, 0]
        assert [r.coboundaries for r in rows] == [1, 4, 5, 4, 1, 0]
        assert [r.cohomology for r in rows] == [0, 0, 0, 0, 2, 0]
        status, payload = run_cli("cohomology")
        assert status == 0
        assert [row["H"] for row in payload["table"][:6]] == [0, 0, 0, 0, 2, 0]


def test_ac1_sign_corrected_generators(criterion):
    with criterion("AC1", "h=4 basis spans the sign-corrected generators modulo B^2", budget=1.0):
        corrected = [cochain_from_names(G, terms) for terms in SIGN_CORRECTED_H4]
        assert all(cohomology.differential(G, c).is_zero() for c in corrected)
        assert cohomology.same_class_span(G, 4, cohomology.h2_basis(G, 4), corrected)


@pytest.mark.xfail(strict=True, reason="the printed generators are not cocycles; analysis in the decisions ledger")
def test_ac1_printed_generators(criterion):
    with criterion("AC1", "h=4 basis spans the generators as printed modulo B^2", budget=1.0):
        printed = [cochain_from_names(G, terms) for terms in PRINTED_H4]
        assert cohomology.same_class_span(G, 4, cohomology.h2_basis(G, 4), printed)


# -- 2 ------------------------------------------------------------------------------

def test_ac2_free_lie(criterion):
    with criterion("AC2", "graded dims by Moebius and by expansion rank; length-6 kernel", budget=5.0):
        expected = [1, 2, 3, 6, 9]
        assert [freelie.graded_dimension(n) for n in range(2, 7)] == expected
        assert [freelie.relation_rank(freelie.all_simple_words(n))[0] for n in range(2, 7)] == expected
        family = freelie.simple_word_family(6)
        _, kernel = freelie.relation_rank(family)
        assert len(kernel) == 3
        for rel in freelie.RELATIONS_LENGTH6.values():
            vec = freelie.relation_vector(rel, family)
            assert any(linalg.rank([vec, k]) == 1 for k in kernel), rel


# -- 3 ------------------------------------------------------------------------------

def test_ac3_tanaka(criterion):
    with criterion("AC3", "prolongation of (Heisenberg, J) is isomorphic to the bundled algebra", budget=1.0):
        m = heisenberg_negative()
        result = tanaka.prolongation(m, heisenberg_complex_structure(m))
        assert result.dims() == (1, 2, 2, 2, 1)
        assert not result.truncated and result.levels[3].dim == 0
        iso = tanaka.check_isomorphic_to(result.algebra, G)
        assert iso.found
        matrix = iso.matrix()
        # recheck the map against every bracket of the bundled table
        for x in range(G.dim):
            for y in range(G.dim):
                image = [sum((matrix[r][k] * v for k, v in enumerate(result.algebra.bracket(
                    result.algebra.basis_vector(x), result.algebra.basis_vector(y)))), Fraction(0)) for r in range(G.dim)]
                cx = [row[x] for row in matrix]
                cy = [row[y] for row in matrix]
                assert image == G.bracket(cx, cy)


# -- 4 ------------------------------------------------------------------------------

def test_ac4_holomorphic_fields(criterion):
    with criterion("AC4", "eight tangent fields with the bundled commutator table", budget=1.0):
        basis = crmodel.hol_basis()
        assert len(basis) == 8
        assert all(crmodel.tangency_defect(f) == {} for f in basis)
        assert crmodel.commutator_table(basis) == G.table()


# -- 5 ------------------------------------------------------------------------------

def test_ac5_jet_identities(criterion):
    with criterion("AC5", "H2(Phi1) = H1(Phi2); relations I-V, identities a, b, Delta2, Delta3 + 2 Delta4", budget=60.0):
        assert verify_identity(build_phi((2,), 1) - build_phi((1,), 2), mode="full_expansion").zero
        suite = [relation(n) for n in ("I", "II", "III", "IV", "V")] + [identity("a"), identity("b")]
        suite += [curvature_raw("Delta2"), curvature_raw("Delta3") + 2 * curvature_raw("Delta4")]
        for seed, expr in enumerate(suite):
            report = verify_identity(expr, n_points=20, seed=100 + seed)
            assert report.zero and report.points_tested == 20


# -- 6 ------------------------------------------------------------------------------

def test_ac6_sphere(criterion):
    with criterion("AC6", "x^2 + y^2 is spherical", budget=5.0):
        x, y = Polynomial3.var("x"), Polynomial3.var("y")
        delta1, delta4 = essential_curvatures()
        for at in [(0, 0, 0), (1, 2, 3), (Fraction(-1, 2), Fraction(3, 7), 5)]:
            point = JetPoint(jets_of_polynomial(x * x + y * y, at, max_order=6))
            frame = point.frame()
            # the whole truncated Taylor series of Phi_i vanishes, not only its value
            assert frame.phi_invariant((), 1).is_zero() and frame.phi_invariant((), 2).is_zero()
            assert point.basics()["Upsilon"] == -4
            assert evaluate_at(delta1, point) == 0 and evaluate_at(delta4, point) == 0
        status, payload = run_cli("curvature", "--phi", "x^2+y^2")
        assert status == 0 and payload["verdict"] == "spherical at point"


# -- 7 ------------------------------------------------------------------------------

def _numeric(value: FiberRational, ring) -> FiberRational:
    return FiberRational(value.num.map_coefficients(ring.value), value.power).reduce()


def test_ac7_equivariance_and_determinant(criterion):
    with criterion("AC7", "110 equations at 10 seeded points; determinant (c^2+d^2)^2", budget=120.0):
        formal = check_c1_system()
        assert formal.ok and len(formal.equations) == 110
        rng = random.Random(7)
        for _ in range(10):
            point = random_jet_point(rng, order=6, bound=99)
            connection = ConnectionCoefficients.build(SeriesJetRing.from_jets(point.values))
            report = check_c1_system(connection=connection)
            assert report.ok and report.routes_agree
        c, d = FiberPoly.var("c"), FiberPoly.var("d")
        assert (connection_matrix_det() - (c * c + d * d) ** 2).is_zero()


def test_ac7_curvature_by_homogeneity(criterion):
    with criterion("AC7", "homogeneity 0-3 and kappa^{h1h2}_j vanish; homogeneity 4 closed forms at 20 points",
                   budget=480.0):
        by_h = coefficients_by_homogeneity()
        vanishing = [key for h in range(4) for key in by_h[h]] + [(("h1", "h2"), "j")]
        assert len(vanishing) == 18
        delta1, delta4 = essential_curvatures()
        rng = random.Random(2024)
        for _ in range(20):
            point = random_jet_point(rng, order=7, bound=99)
            ring = SeriesJetRing.from_jets(point.values)
            connection = ConnectionCoefficients.build(ring)
            kappa = {pair: connection.curvature(pair) for pair in CURVATURE_PAIRS}
            for pair, target in vanishing:
                assert _numeric(kappa[pair][target], ring).is_zero(), (pair, target)
            four = {(pair, t): _numeric(kappa[pair][t], ring).as_poly() for pair in (("h1", "t"), ("h2", "t"))
                    for t in ("i1", "i2")}
            assert all(v is not None for v in four.values())
            assert four[("h2", "t"), "i1"].equals(four[("h1", "t"), "i2"])
            assert four[("h2", "t"), "i2"].equals(-four[("h1", "t"), "i1"])
            forms = essential_forms(evaluate_at(delta1, point), evaluate_at(delta4, point))
            for key, value in four.items():
                assert value.equals(forms[key]), key


# -- 8 ------------------------------------------------------------------------------

def test_ac8_nonspherical_witness(criterion):
    with criterion("AC8", "a perturbation of x^2 + y^2 has nonzero Delta_1 or Delta_4", budget=60.0):
        fixture = json.loads((FIXTURES / "nonspherical_witness.json").read_text())
        delta1, delta4 = essential_curvatures()
        nonzero = False
        for witness in fixture["witnesses"]:
            poly = cli.to_polynomial(cli.parse_phi(witness["phi"]))
            at = [Fraction(v) for v in witness["at"]]
            point = JetPoint(jets_of_polynomial(poly, at, max_order=6))
            values = (evaluate_at(delta1, point), evaluate_at(delta4, point))
            assert values == (Fraction(witness["Delta1"]), Fraction(witness["Delta4"]))
            nonzero |= any(values)
        assert nonzero
        # independent route: curvature of the connection itself at the first witness
        first = fixture["witnesses"][0]
        status, payload = run_cli("curvature", "--phi", first["phi"], "--at", ",".join(first["at"]), "--direct")
        assert status == 0 and payload["verdict"] == "not spherical at point"


# -- 9 ------------------------------------------------------------------------------

def test_ac9_structure(criterion):
    with criterion("AC9", "d o d = 0, d* o d* = 0 on 100 cochains; splitting; Jacobi for bundled algebras",
                   budget=10.0):
        rng = random.Random(9)
        for k in range(100):
            c = cohomology.random_cochain(G, k % 2, rng)
            assert cohomology.differential(G, cohomology.differential(G, c)).is_zero()
            c = cohomology.random_cochain(G, 2 + k % 2, rng)
            assert cohomology.codifferential(G, cohomology.codifferential(G, c)).is_zero()
        low, high = cohomology.homogeneity_range(G, 2)
        assert all(cohomology.splitting_holds(G, h) for h in range(low, high + 1))
        for name in bundled_algebra_names():
            assert validate(bundled_algebra(name)).ok, name
