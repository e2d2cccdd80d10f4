# tests/test_divisors.py
import random
from fractions import Fraction as F

import pytest

from divisors.balancing import validate_balancing
from divisors.corner_locus import (
    TropicalPolynomial,
    divisor_from_polynomial,
    divisor_from_section,
    is_on_corner_locus,
)
from divisors.intersection import (
    PERTURBATION_SLOPES,
    self_intersection_formula,
    stable_intersection_2d,
    stable_self_intersection,
)
from divisors.models import Cell, IntersectionPoint, IntersectionReport, WeightedComplex
from divisors.vandermonde import cofactor_row, vandermonde_interpolate, vandermonde_matrix
from tests.bundles import (
    circle_bundle,
    hexagonal_bundle,
    integral_definite_bundle,
    random_definite_bundle,
    standard_bundle,
)
from theta.generators import GeneratorBasis
from theta.sections import ThetaSection, pi_map
from tropical.matrix import trop_det
from tropical.scalar import TropicalScalar
from utils.errors import AmbientMismatch, DegenerateBasis, InvalidSpec, NotPureCurve

F1 = TropicalPolynomial((((1, 0), 0), ((0, 1), 0), ((0, 0), 0)))
F2 = TropicalPolynomial((((2, 0), 0), ((0, 1), 1), ((1, 1), -1), ((0, 0), 0)))
F3 = TropicalPolynomial((((0, 0), 0), ((1, 0), 3), ((3, 0), 0), ((2, 1), 3), ((0, 3), -3)))


def weights(complex_):
    return sorted(cell.weight for cell in complex_.cells)


def grid_divisor():
    basis = GeneratorBasis(standard_bundle([[1, 0], [0, 1]]))
    return divisor_from_section(ThetaSection.generator(basis, 0))


def test_polynomial_fixture_weights():
    first = divisor_from_polynomial(F1)
    assert weights(first) == [1, 1, 1]
    assert {(cell.vertices, tuple(int(a) for a in cell.rays[0])) for cell in first.cells} == {
        (((F(0), F(0)),), (1, 1)),
        (((F(0), F(0)),), (0, -1)),
        (((F(0), F(0)),), (-1, 0)),
    }
    assert weights(divisor_from_polynomial(F2)) == [1, 1, 1, 1, 2]
    assert weights(divisor_from_polynomial(F3)) == [1, 1, 1, 1, 2, 2, 3]


def test_polynomial_evaluation_and_json():
    assert F2.evaluate((F(3), F(5))) == 7
    assert F3.dim == 2
    assert TropicalPolynomial.from_json(F2.to_json()) == F2
    with pytest.raises(InvalidSpec):
        TropicalPolynomial(())
    with pytest.raises(InvalidSpec):
        TropicalPolynomial((((1, 0), 0), ((1,), 0)))


def test_one_dimensional_polynomial():
    divisor = divisor_from_polynomial(TropicalPolynomial((((0,), 0), ((2,), -1), ((5,), -9))))
    assert sorted((cell.vertices[0][0], cell.weight) for cell in divisor.cells) == [(F(1, 2), 2), (F(8, 3), 3)]


def test_balancing_detects_broken_weight():
    divisor = divisor_from_polynomial(F1)
    assert validate_balancing(divisor).balanced
    cells = list(divisor.cells)
    cells[0] = Cell(cells[0].polyhedron, 2, cells[0].normal)
    report = validate_balancing(WeightedComplex(2, tuple(cells)))
    assert not report.balanced
    assert report.face == (F(0), F(0))
    assert report.residual != (0, 0)
    assert report.to_json()["balanced"] is False


def test_grid_divisor_on_standard_torus():
    divisor = grid_divisor()
    assert divisor.is_torus
    assert weights(divisor) == [1, 1]
    assert divisor.contains_point((F(1, 2), F(3, 10)))
    assert divisor.contains_point((F(-1, 2), F(3, 10)))
    assert divisor.contains_point((F(7, 3), F(5, 2)))
    assert not divisor.contains_point((F(1, 10), F(1, 5)))
    assert validate_balancing(divisor).balanced


def test_circle_divisors():
    basis = GeneratorBasis(circle_bundle(3))
    generator = divisor_from_section(ThetaSection.generator(basis, 0))
    assert [(cell.weight, abs(cell.vertices[0][0])) for cell in generator.cells] == [(3, F(1, 2))]

    xi = divisor_from_section(ThetaSection.xi(basis))
    assert weights(xi) == [1, 1, 1]
    assert sorted(xi.coset_key(cell.vertices[0]) for cell in xi.cells) == [(F(1, 6),), (F(1, 2),), (F(5, 6),)]


def test_section_divisors_are_balanced():
    rng = random.Random(41)
    for _ in range(5):
        basis = GeneratorBasis(random_definite_bundle(rng, max_det=4, dim=2))
        for _ in range(2):
            coeffs = tuple(TropicalScalar(F(rng.randint(-3, 3), rng.randint(1, 3))) for _ in range(basis.size))
            divisor = divisor_from_section(pi_map(basis, coeffs))
            assert validate_balancing(divisor).balanced
            assert sum(abs(c.weight) for c in divisor.cells) > 0


def test_hexagonal_divisor():
    basis = GeneratorBasis(hexagonal_bundle())
    divisor = divisor_from_section(ThetaSection.xi(basis))
    assert validate_balancing(divisor).balanced
    assert all(cell.weight > 0 for cell in divisor.cells)
    assert divisor.negated().cells[0].weight == -divisor.cells[0].weight


def test_self_intersection_formula_examples():
    assert self_intersection_formula(standard_bundle([[1, 0], [0, 1]])) == 2
    assert self_intersection_formula(hexagonal_bundle()) == 8
    assert self_intersection_formula(standard_bundle([[1, 0], [0, -1]])) == -2
    assert self_intersection_formula(circle_bundle(3)) == 3


def test_grid_self_intersection():
    divisor = grid_divisor()
    report = stable_intersection_2d(divisor, divisor)
    assert report.total == 2
    assert [point.multiplicity for point in report.points] == [2]
    assert report.points[0].location == (F(-1, 2), F(-1, 2))
    for choice in range(len(PERTURBATION_SLOPES)):
        assert stable_intersection_2d(divisor, divisor, perturbation=choice).total == 2


def test_intersection_is_translation_invariant():
    divisor = grid_divisor()
    for shift in ((F(1, 5), F(2, 7)), (F(-3, 4), F(0)), (F(1, 2), F(1, 2))):
        assert stable_intersection_2d(divisor, divisor.translated(shift)).total == 2
    hexagon = divisor_from_section(ThetaSection.xi(GeneratorBasis(hexagonal_bundle())))
    assert stable_intersection_2d(hexagon, hexagon.translated((F(1, 3), F(-1, 7)))).total == 8


def test_hexagonal_self_intersection_matches_formula():
    spec = hexagonal_bundle()
    assert stable_self_intersection(spec).total == self_intersection_formula(spec) == 8


def test_random_self_intersections_match_formula():
    rng = random.Random(43)
    for _ in range(10):
        spec, size = integral_definite_bundle(rng)
        expected = self_intersection_formula(spec)
        assert expected == 2 * size
        assert stable_self_intersection(spec).total == expected


def test_plane_intersections_follow_mixed_volumes():
    first, second, third = (divisor_from_polynomial(p) for p in (F1, F2, F3))
    assert stable_intersection_2d(first, first).total == 1
    assert stable_intersection_2d(first, second).total == 2
    assert stable_intersection_2d(first, third).total == 3
    assert stable_intersection_2d(second, second).total == 3
    for choice in range(len(PERTURBATION_SLOPES)):
        assert stable_intersection_2d(second, third, perturbation=choice).total == \
            stable_intersection_2d(second, third).total


def test_intersection_is_additive():
    first, second = divisor_from_polynomial(F1), divisor_from_polynomial(F2)
    union = first.union(first.translated((F(5), F(7))))
    assert stable_intersection_2d(union, second).total == 4
    assert stable_intersection_2d(first.negated(), second).total == -2


def test_intersection_rejects_bad_inputs():
    line = divisor_from_polynomial(TropicalPolynomial((((0,), 0), ((1,), 0))))
    with pytest.raises(NotPureCurve):
        stable_intersection_2d(line, line)
    with pytest.raises(AmbientMismatch):
        stable_intersection_2d(grid_divisor(), divisor_from_polynomial(F1))


def test_intersection_report_totals():
    report = IntersectionReport.from_points([IntersectionPoint((F(0), F(0)), 2), IntersectionPoint((F(1), F(0)), 1)])
    assert report.total == 3
    with pytest.raises(InvalidSpec):
        IntersectionReport((IntersectionPoint((F(0), F(0)), 2),), 5)


def test_vandermonde_on_circle():
    spec = circle_bundle(3)
    basis = GeneratorBasis(spec)
    points = [(F(0),), (F(1, 2),)]
    section = vandermonde_interpolate(spec, points, basis=basis)
    divisor = divisor_from_section(section)
    for point in points:
        assert divisor.contains_point(point)

    matrix = vandermonde_matrix(basis, points)
    assert section.coeffs == cofactor_row(matrix)
    assert section.coeffs[0] == trop_det(matrix.minor(0, 0))


def test_vandermonde_random_pairs():
    rng = random.Random(47)
    spec = circle_bundle(3)
    basis = GeneratorBasis(spec)
    for _ in range(20):
        points = [(F(rng.randint(-20, 20), rng.randint(1, 7)),) for _ in range(2)]
        section = vandermonde_interpolate(spec, points, basis=basis)
        divisor = divisor_from_section(section)
        assert all(divisor.contains_point(p) for p in points)
        assert all(is_on_corner_locus(section, p) for p in points)


def test_vandermonde_two_generators():
    spec = circle_bundle(2, "1/3")
    basis = GeneratorBasis(spec)
    q = (F(1, 5),)
    section = vandermonde_interpolate(spec, [q], basis=basis)
    assert section.coeffs == (
        TropicalScalar(basis.evaluate(basis.reps[1], q)),
        TropicalScalar(basis.evaluate(basis.reps[0], q)),
    )
    assert is_on_corner_locus(section, q)


def test_vandermonde_rejects_degenerate_inputs():
    with pytest.raises(DegenerateBasis):
        vandermonde_interpolate(circle_bundle(1), [])
    with pytest.raises(InvalidSpec):
        vandermonde_interpolate(circle_bundle(3), [(F(0),)])


def test_complex_json():
    payload = grid_divisor().to_json()
    assert payload["ambient_dim"] == 2
    assert payload["torus"] == [["1", "0"], ["0", "1"]]
    assert len(payload["cells"]) == 2
