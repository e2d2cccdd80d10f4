# tests/test_polyhedra.py
import random
from fractions import Fraction as F

from polyhedra.lp import LpStatus, is_feasible, maximize, minimize
from polyhedra.models import Inequality, RationalPolyhedron
from polyhedra.operations import (
    contains,
    dimension,
    fix_coordinate,
    implicit_equalities,
    remove_redundancy,
    same_set,
    with_vertices,
)
from polyhedra.representations import from_generators, project_out, vertex_enumeration


def interval(low, high):
    return RationalPolyhedron.from_constraints(1, [((1,), F(high)), ((-1,), -F(low))])


def triangle_slice():
    return RationalPolyhedron.from_constraints(2, [
        ((-2, 1), F(1, 3)),
        ((1, -2), F(1, 3)),
        ((1, 1), F(1, 3)),
    ])


def test_maximize_bounded():
    rows = [((1, 0), F(2)), ((0, 1), F(3)), ((1, 1), F(4)), ((-1, 0), F(0)), ((0, -1), F(0))]
    result = maximize(rows, (1, 1), 2)
    assert result.status == LpStatus.OPTIMAL
    assert result.value == 4
    assert minimize(rows, (1, 2), 2).value == 0


def test_maximize_unbounded_and_infeasible():
    assert maximize([((-1,), F(0))], (1,), 1).status == LpStatus.UNBOUNDED
    assert maximize([((1,), F(0)), ((-1,), F(-1))], (1,), 1).status == LpStatus.INFEASIBLE
    assert not is_feasible([((1,), F(0)), ((-1,), F(-1))], 1)
    assert is_feasible([((1,), F(0))], 1)


def test_project_unit_square():
    square = RationalPolyhedron.box((0, 0), (1, 1))
    shadow = project_out(square, [1])
    assert shadow.ambient_dim == 1
    assert same_set(shadow, interval(0, 1))


def test_project_triangle_shadow():
    wedge = RationalPolyhedron.from_constraints(2, [((1, -1), F(0)), ((-1, -1), F(0)), ((0, 1), F(1))])
    shadow = project_out(wedge, [1])
    assert same_set(shadow, interval(-1, 1))
    assert len(shadow.inequalities) == 2


def test_project_empty():
    empty = RationalPolyhedron.from_constraints(2, [((1, 0), F(0)), ((-1, 0), F(-1))])
    assert dimension(project_out(empty, [0])) == -1


def test_project_uses_equalities():
    plane = RationalPolyhedron.from_constraints(
        3, [((-1, 0, 0), F(0)), ((1, 0, 0), F(2))], [((1, 1, 1), F(1))]
    )
    shadow = project_out(plane, [0])
    expected = RationalPolyhedron.from_constraints(2, [((1, 1), F(1)), ((-1, -1), F(1))])
    assert same_set(shadow, expected)


def test_vertices_of_slice_triangle():
    vrep = vertex_enumeration(triangle_slice())
    assert set(vrep.vertices) == {(F(-1, 3), F(-1, 3)), (F(0), F(1, 3)), (F(1, 3), F(0))}
    assert vrep.is_bounded


def test_vertices_of_half_line():
    vrep = vertex_enumeration(RationalPolyhedron.from_constraints(1, [((-1,), F(0))]))
    assert vrep.vertices == ((F(0),),)
    assert vrep.rays == ((F(1),),)


def test_vertices_of_cube():
    cube = RationalPolyhedron.box((0, 0, 0), (1, 1, 1))
    vrep = vertex_enumeration(cube)
    assert len(vrep.vertices) == 8
    assert with_vertices(cube).vrep == vrep


def test_vertices_with_lineality():
    strip = RationalPolyhedron.from_constraints(2, [((1, 0), F(1)), ((-1, 0), F(1))])
    vrep = vertex_enumeration(strip)
    assert {v[0] for v in vrep.vertices} == {F(-1), F(1)}
    assert vrep.lines == ((F(0), F(1)),)
    assert with_vertices(strip).vrep == vrep


def test_dimension():
    point = RationalPolyhedron.from_constraints(2, [], [((1, 0), F(1)), ((0, 1), F(2))])
    assert dimension(point) == 0
    assert dimension(RationalPolyhedron.from_constraints(1, [((1,), F(0)), ((-1,), F(-1))])) == -1
    segment = RationalPolyhedron.from_constraints(2, [((0, 1), F(0)), ((0, -1), F(0)), ((1, 0), F(1)), ((-1, 0), F(0))])
    assert dimension(segment) == 1
    assert dimension(triangle_slice()) == 2
    assert dimension(RationalPolyhedron(0)) == 0


def test_remove_redundancy_parallel_rows():
    reduced = remove_redundancy(RationalPolyhedron.from_constraints(1, [((1,), F(1)), ((1,), F(2))]))
    assert reduced.inequalities == (Inequality((F(1),), F(1)),)


def test_remove_redundancy_detects_equality():
    reduced = remove_redundancy(RationalPolyhedron.from_constraints(1, [((1,), F(1)), ((-1,), F(-1))]))
    assert reduced.inequalities == ()
    assert len(reduced.equalities) == 1
    assert reduced.contains_point((F(1),))


def test_remove_redundancy_empty():
    reduced = remove_redundancy(RationalPolyhedron.from_constraints(1, [((1,), F(0)), ((-1,), F(-1))]))
    assert reduced == RationalPolyhedron.empty(1)


def test_remove_redundancy_random_systems_keep_facets():
    rng = random.Random(7)
    for _ in range(10):
        rows = [((1, 0), F(3)), ((-1, 0), F(3)), ((0, 1), F(3)), ((0, -1), F(3))]
        for _ in range(6):
            a = (rng.randint(-3, 3), rng.randint(-3, 3))
            rows.append((a, F(rng.randint(1, 9), rng.randint(1, 3))))
        original = RationalPolyhedron.from_constraints(2, rows)
        reduced = remove_redundancy(original)
        assert same_set(original, reduced)
        for row in reduced.inequalities:
            facet = RationalPolyhedron(2, reduced.inequalities, (row,))
            assert dimension(facet) == 1


def test_round_trip_h_to_v_to_h():
    rng = random.Random(11)
    for _ in range(5):
        points = [tuple(F(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(3)) for _ in range(7)]
        hull = from_generators(3, points)
        vrep = vertex_enumeration(hull)
        assert set(vrep.vertices) <= set(points)
        assert same_set(hull, from_generators(3, vrep.vertices))
        assert all(hull.contains_point(p) for p in points)


def test_from_generators_with_rays_and_lines():
    cone = from_generators(2, [(0, 0)], rays=[(1, 0), (0, 1)])
    assert same_set(cone, RationalPolyhedron.from_constraints(2, [((-1, 0), F(0)), ((0, -1), F(0))]))
    line = from_generators(2, [(1, 1)], lines=[(1, -1)])
    assert same_set(line, RationalPolyhedron.from_constraints(2, [], [((1, 1), F(2))]))
    assert dimension(from_generators(2, [])) == -1


def test_projection_commutes_with_vertices():
    rng = random.Random(3)
    for _ in range(4):
        points = [tuple(F(rng.randint(-5, 5)) for _ in range(4)) for _ in range(6)]
        hull = from_generators(4, points)
        shadow = project_out(hull, [1, 3])
        projected_points = [(p[0], p[2]) for p in points]
        assert same_set(shadow, from_generators(2, projected_points))


def test_fix_coordinate_and_contains():
    square = RationalPolyhedron.box((0, 0), (2, 2))
    section = fix_coordinate(square, 0, F(1))
    assert same_set(section, interval(0, 2))
    assert contains(square, RationalPolyhedron.box((0, 0), (1, 1)))
    assert not contains(RationalPolyhedron.box((0, 0), (1, 1)), square)


def test_json_round_trip_of_rows():
    poly = triangle_slice()
    assert RationalPolyhedron.from_json(poly.to_json()) == poly


def test_implicit_equalities_of_segment():
    segment = RationalPolyhedron.from_constraints(2, [((0, 1), F(0)), ((0, -1), F(0)), ((1, 0), F(1)), ((-1, 0), F(0))])
    assert {row.a for row in implicit_equalities(segment)} == {(F(0), F(1)), (F(0), F(-1))}
    assert implicit_equalities(triangle_slice()) == []
