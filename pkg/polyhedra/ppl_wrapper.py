# polyhedra/ppl_wrapper.py
from fractions import Fraction
from typing import List, Sequence, Tuple

import ppl

from lattice.linalg import Vector, common_denominator
from polyhedra.models import Inequality, RationalPolyhedron, VRepresentation, canonical_row

# C_Polyhedron хранит только целые коэффициенты: строки и образующие
# масштабируются на общий знаменатель.


def integer_vector(values: Sequence[Fraction]) -> Tuple[List[int], int]:
    """Целые числители и общий знаменатель"""
    scale = common_denominator(values)
    return [int(Fraction(v) * scale) for v in values], scale


def linear_expression(coeffs: Sequence[int], inhomogeneous: int = 0) -> ppl.Linear_Expression:
    return ppl.Linear_Expression(list(coeffs), inhomogeneous)


def _padded(coeffs, dim: int) -> List[int]:
    values = [int(v) for v in coeffs]
    return values + [0] * (dim - len(values))


def inequality_constraint(a: Sequence[Fraction], c: Fraction) -> ppl.Constraint:
    """a·x ≤ c в виде c − a·x ≥ 0"""
    ints, _ = integer_vector(list(a) + [c])
    return linear_expression([-v for v in ints[:-1]], ints[-1]) >= 0


def equality_constraint(a: Sequence[Fraction], c: Fraction) -> ppl.Constraint:
    ints, _ = integer_vector(list(a) + [c])
    return linear_expression(ints[:-1], -ints[-1]) == 0


def rows_to_ppl(rows: Sequence[Tuple[Sequence[Fraction], Fraction]], dim: int) -> ppl.C_Polyhedron:
    """Замкнутый полиэдр {x : a_i·x ≤ c_i}"""
    polyhedron = ppl.C_Polyhedron(dim, "universe")
    for a, c in rows:
        polyhedron.add_constraint(inequality_constraint(a, c))
    return polyhedron


def to_ppl(polyhedron: RationalPolyhedron) -> ppl.C_Polyhedron:
    result = ppl.C_Polyhedron(polyhedron.ambient_dim, "universe")
    for row in polyhedron.inequalities:
        result.add_constraint(inequality_constraint(row.a, row.c))
    for row in polyhedron.equalities:
        result.add_constraint(equality_constraint(row.a, row.c))
    return result


def generators_to_ppl(dim: int, vertices: Sequence[Sequence[Fraction]], rays: Sequence[Sequence[Fraction]] = (),
                      lines: Sequence[Sequence[Fraction]] = ()) -> ppl.C_Polyhedron:
    """
    conv(vertices) + cone(rays) + span(lines)

    Точки добавляются первыми: лучи и прямые требуют непустого полиэдра.
    """
    result = ppl.C_Polyhedron(dim, "empty")
    for vertex in vertices:
        ints, divisor = integer_vector(vertex)
        result.add_generator(ppl.point(linear_expression(ints), divisor))
    if not vertices:
        return result
    for direction in rays:
        ints, _ = integer_vector(direction)
        if any(ints):
            result.add_generator(ppl.ray(linear_expression(ints)))
    for direction in lines:
        ints, _ = integer_vector(direction)
        if any(ints):
            result.add_generator(ppl.line(linear_expression(ints)))
    return result


def from_ppl(polyhedron: ppl.C_Polyhedron, dim: int) -> RationalPolyhedron:
    """
    Минимальная система ограничений в каноническом виде

    Нормали приводятся к примитивным целым векторам; пустой полиэдр
    возвращается как 0 ≤ −1.
    """
    if polyhedron.is_empty():
        return RationalPolyhedron.empty(dim)

    inequalities = set()
    equalities = set()
    for constraint in polyhedron.minimized_constraints():
        coeffs = _padded(constraint.coefficients(), dim)
        b = int(constraint.inhomogeneous_term())
        if constraint.is_equality():
            row = canonical_row(coeffs, Fraction(-b))
            if row is not None:
                equalities.add(row)
        else:
            row = canonical_row([-v for v in coeffs], Fraction(b))
            if row is not None:
                inequalities.add(row)
    return RationalPolyhedron(
        dim,
        tuple(Inequality(a, c) for a, c in sorted(inequalities)),
        tuple(Inequality(a, c) for a, c in sorted(equalities)),
    )


def _oriented(direction: List[int]) -> Vector:
    """Прямая с первой ненулевой координатой > 0"""
    pivot = next(v for v in direction if v != 0)
    sign = 1 if pivot > 0 else -1
    return tuple(Fraction(sign * v) for v in direction)


def vrep_from_ppl(polyhedron: ppl.C_Polyhedron, dim: int) -> VRepresentation:
    """Минимальная система образующих, отсортированная"""
    if polyhedron.is_empty():
        return VRepresentation()

    vertices, rays, lines = [], [], []
    for generator in polyhedron.minimized_generators():
        coeffs = _padded(generator.coefficients(), dim)
        if generator.is_point():
            divisor = int(generator.divisor())
            vertices.append(tuple(Fraction(v, divisor) for v in coeffs))
        elif generator.is_ray():
            rays.append(tuple(Fraction(v) for v in coeffs))
        elif generator.is_line():
            lines.append(_oriented(coeffs))
    return VRepresentation(tuple(sorted(vertices)), tuple(sorted(rays)), tuple(sorted(lines)))
