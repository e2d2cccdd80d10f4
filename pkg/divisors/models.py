# divisors/models.py
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import ceil, floor
from typing import Any, Dict, List, Optional, Sequence, Tuple

from lattice.linalg import Vector, as_vector, inverse, mat_vec, primitive_integer_vector, vec_add, vec_sub
from lattice.models import IntVector, TorusSpec, vector_to_json
from polyhedra.models import RationalPolyhedron, VRepresentation
from polyhedra.operations import translate
from utils.errors import AmbientMismatch, InvalidSpec

CosetKey = Tuple[Fraction, ...]


def bounding_box(points: Sequence[Sequence[Fraction]]) -> Tuple[Vector, Vector]:
    dim = len(points[0])
    return (
        tuple(min(p[i] for p in points) for i in range(dim)),
        tuple(max(p[i] for p in points) for i in range(dim)),
    )


def lattice_points_in_box(torus: TorusSpec, lower: Sequence[Fraction], upper: Sequence[Fraction]) -> List[Vector]:
    """
    Все λ ∈ Λ в ящике lower ≤ λ ≤ upper

    Границы на координаты λ в базисе решетки берутся по вершинам ящика.
    """
    solver = inverse(torus.lattice_basis)
    corners = [as_vector(c) for c in product(*zip(lower, upper))]
    ranges = []
    for i in range(torus.dim):
        values = [mat_vec(solver, corner)[i] for corner in corners]
        ranges.append(range(ceil(min(values)), floor(max(values)) + 1))

    found = []
    for k in product(*ranges):
        lam = mat_vec(torus.lattice_basis, k)
        if all(lo <= c <= hi for lo, c, hi in zip(lower, lam, upper)):
            found.append(lam)
    return found


@dataclass(frozen=True)
class Cell:
    """
    Клетка коразмерности 1 с целым весом

    polyhedron хранит H- и V-представление; normal это примитивная разность
    наклонов двух аффинных кусков, совпадающих на клетке.
    """

    polyhedron: RationalPolyhedron
    weight: int
    normal: IntVector

    def __post_init__(self):
        if self.polyhedron.vrep is None:
            raise InvalidSpec("Клетка дивизора должна содержать V-представление")

    @property
    def vertices(self) -> Tuple[Vector, ...]:
        return self.polyhedron.vrep.vertices

    @property
    def rays(self) -> Tuple[Vector, ...]:
        return self.polyhedron.vrep.rays

    @property
    def lines(self) -> Tuple[Vector, ...]:
        return self.polyhedron.vrep.lines

    @property
    def is_bounded(self) -> bool:
        return not self.rays and not self.lines

    @property
    def direction(self) -> IntVector:
        """Примитивное направление клетки на плоскости"""
        return (-self.normal[1], self.normal[0])

    def endpoints(self) -> List[Tuple[Vector, IntVector]]:
        """
        Концы клетки-кривой с примитивными векторами, направленными внутрь клетки

        Прямые концов не имеют; для точечных клеток (n = 1) список пуст.
        """
        if self.polyhedron.ambient_dim != 2 or self.lines:
            return []
        if self.rays:
            return [(self.vertices[0], primitive_integer_vector(self.rays[0]))]
        start, end = self.vertices
        u = primitive_integer_vector(vec_sub(end, start))
        return [(start, u), (end, tuple(-a for a in u))]

    def parametrization(self) -> Tuple[Vector, Vector, Optional[Fraction], Optional[Fraction]]:
        """
        (p, d, s_min, s_max): клетка есть {p + s·d}, границы None для бесконечности
        """
        if self.lines:
            return self.vertices[0], as_vector(self.lines[0]), None, None
        if self.rays:
            return self.vertices[0], as_vector(self.rays[0]), Fraction(0), None
        start, end = self.vertices
        return start, vec_sub(end, start), Fraction(0), Fraction(1)

    def contains_point(self, x: Sequence[Fraction]) -> bool:
        return self.polyhedron.contains_point(as_vector(x))

    def translated(self, shift: Sequence[Fraction]) -> "Cell":
        shift = as_vector(shift)
        vrep = self.polyhedron.vrep
        moved = VRepresentation(
            vertices=tuple(vec_add(v, shift) for v in vrep.vertices),
            rays=vrep.rays,
            lines=vrep.lines,
        )
        return Cell(translate(self.polyhedron, shift).with_vrep(moved), self.weight, self.normal)

    def negated(self) -> "Cell":
        return Cell(self.polyhedron, -self.weight, self.normal)

    def to_json(self) -> Dict[str, Any]:
        return {
            "vertices": [vector_to_json(v) for v in self.vertices],
            "rays": [vector_to_json(r) for r in self.rays],
            "lines": [vector_to_json(line) for line in self.lines],
            "weight": self.weight,
        }


@dataclass(frozen=True)
class WeightedComplex:
    """
    Взвешенный полиэдральный комплекс чистой коразмерности 1

    Если torus задан, клетки лежат в замкнутой фундаментальной области и
    склеиваются по решетке; иначе комплекс живет в R^n.
    """

    ambient_dim: int
    cells: Tuple[Cell, ...]
    torus: Optional[TorusSpec] = None

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))
        if self.torus is not None and self.torus.dim != self.ambient_dim:
            raise AmbientMismatch(f"Тор размерности {self.torus.dim} для комплекса в R^{self.ambient_dim}")
        for cell in self.cells:
            if cell.polyhedron.ambient_dim != self.ambient_dim:
                raise AmbientMismatch("Клетка комплекса лежит в пространстве другой размерности")

    @property
    def is_torus(self) -> bool:
        return self.torus is not None

    @property
    def is_pure_curve(self) -> bool:
        return self.ambient_dim == 2 and all(len(c.vertices) + len(c.rays) + len(c.lines) >= 2 for c in self.cells)

    def coset_key(self, point: Sequence[Fraction]) -> CosetKey:
        """Каноническая метка класса точки по модулю Λ (сама точка для R^n)"""
        point = as_vector(point)
        if self.torus is None:
            return point
        coords = mat_vec(inverse(self.torus.lattice_basis), point)
        return tuple(c - floor(c) for c in coords)

    def same_ambient(self, other: "WeightedComplex") -> bool:
        return self.ambient_dim == other.ambient_dim and self.torus == other.torus

    def representatives(self, point: Sequence[Fraction]) -> List[Vector]:
        """
        Все сдвиги point + λ, попадающие в объемлющий ящик клеток

        Для комплекса в R^n возвращается сама точка.
        """
        point = as_vector(point)
        if self.torus is None:
            return [point]
        corners = [v for cell in self.cells for v in cell.vertices]
        if not corners:
            return []
        lower, upper = bounding_box(corners)
        shifts = lattice_points_in_box(self.torus, vec_sub(lower, point), vec_sub(upper, point))
        return [vec_add(point, lam) for lam in shifts]

    def contains_point(self, point: Sequence[Fraction]) -> bool:
        return any(cell.contains_point(p) for p in self.representatives(point) for cell in self.cells)

    def translated(self, shift: Sequence[Fraction]) -> "WeightedComplex":
        return WeightedComplex(self.ambient_dim, tuple(c.translated(shift) for c in self.cells), self.torus)

    def negated(self) -> "WeightedComplex":
        """−D: те же клетки с противоположными весами"""
        return WeightedComplex(self.ambient_dim, tuple(c.negated() for c in self.cells), self.torus)

    def union(self, other: "WeightedComplex") -> "WeightedComplex":
        """Формальная сумма клеток двух комплексов"""
        if not self.same_ambient(other):
            raise AmbientMismatch("Объединение комплексов на разных пространствах")
        return WeightedComplex(self.ambient_dim, self.cells + other.cells, self.torus)

    def to_json(self) -> Dict[str, Any]:
        return {
            "ambient_dim": self.ambient_dim,
            "torus": self.torus.to_json() if self.torus is not None else None,
            "cells": [cell.to_json() for cell in self.cells],
        }


@dataclass(frozen=True)
class IntersectionPoint:
    location: Vector
    multiplicity: int

    def to_json(self) -> Dict[str, Any]:
        return {"location": vector_to_json(self.location), "multiplicity": self.multiplicity}


@dataclass(frozen=True)
class IntersectionReport:
    """Точки устойчивого пересечения с кратностями и их сумма"""

    points: Tuple[IntersectionPoint, ...]
    total: int

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if self.total != sum(p.multiplicity for p in self.points):
            raise InvalidSpec("Сумма кратностей не совпадает с total")

    @classmethod
    def from_points(cls, points: Sequence[IntersectionPoint]) -> "IntersectionReport":
        return cls(tuple(points), sum(p.multiplicity for p in points))

    def to_json(self) -> Dict[str, Any]:
        return {"points": [p.to_json() for p in self.points], "total": self.total}
