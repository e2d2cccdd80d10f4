# polyhedra/models.py
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Any, Dict, List, Optional, Sequence, Tuple

from lattice.linalg import Vector, as_vector, common_denominator, dot, rank
from tropical.scalar import format_rational, parse_rational
from utils.errors import InvalidPolyhedron, InvalidSpec


@dataclass(frozen=True)
class Inequality:
    """Полупространство a·x ≤ c (или гиперплоскость a·x = c в списке равенств)"""

    a: Vector
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", as_vector(self.a))
        object.__setattr__(self, "c", Fraction(self.c))

    def value(self, x: Sequence[Fraction]) -> Fraction:
        return dot(self.a, x)

    def slack(self, x: Sequence[Fraction]) -> Fraction:
        return self.c - dot(self.a, x)

    @property
    def is_trivial(self) -> bool:
        return all(v == 0 for v in self.a)

    def normalized(self) -> "Inequality":
        """Положительное масштабирование к целым взаимно простым коэффициентам"""
        values = list(self.a) + [self.c]
        scale = common_denominator(values)
        ints = [int(v * scale) for v in values]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g == 0:
            return self
        return Inequality(tuple(Fraction(v, g) for v in ints[:-1]), Fraction(ints[-1], g))

    def direction_key(self) -> Tuple[Fraction, ...]:
        """Ключ направления нормали (с точностью до положительного множителя)"""
        scale = common_denominator(self.a)
        ints = [int(v * scale) for v in self.a]
        g = 0
        for v in ints:
            g = gcd(g, v)
        return tuple(Fraction(v, g) for v in ints) if g else tuple(ints)

    def to_json(self) -> Dict[str, Any]:
        return {"a": [format_rational(v) for v in self.a], "c": format_rational(self.c)}

    @classmethod
    def from_json(cls, raw: Dict[str, Any]) -> "Inequality":
        return cls(tuple(parse_rational(v) for v in raw["a"]), parse_rational(raw["c"]))


@dataclass(frozen=True)
class VRepresentation:
    """conv(vertices) + cone(rays) + span(lines)"""

    vertices: Tuple[Vector, ...] = ()
    rays: Tuple[Vector, ...] = ()
    lines: Tuple[Vector, ...] = ()

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def is_bounded(self) -> bool:
        return not self.rays and not self.lines

    def to_json(self) -> Dict[str, Any]:
        return {
            "vertices": [[format_rational(v) for v in p] for p in self.vertices],
            "rays": [[format_rational(v) for v in r] for r in self.rays],
            "lines": [[format_rational(v) for v in l] for l in self.lines],
        }


@dataclass(frozen=True)
class RationalPolyhedron:
    """
    Рациональный полиэдр {x : a_i·x ≤ c_i, e_j·x = d_j}

    Пустое множество представлено системой с 0 ≤ −1.
    """

    ambient_dim: int
    inequalities: Tuple[Inequality, ...] = ()
    equalities: Tuple[Inequality, ...] = ()
    vrep: Optional[VRepresentation] = field(default=None, compare=False)

    def __post_init__(self):
        if self.ambient_dim < 0:
            raise InvalidSpec("Размерность объемлющего пространства отрицательна")
        object.__setattr__(self, "inequalities", tuple(self.inequalities))
        object.__setattr__(self, "equalities", tuple(self.equalities))
        for row in self.inequalities + self.equalities:
            if len(row.a) != self.ambient_dim:
                raise InvalidSpec(
                    f"Длина нормали {len(row.a)} не совпадает с размерностью {self.ambient_dim}"
                )
        if self.vrep is not None:
            self._validate_vrep(self.vrep)

    @classmethod
    def from_constraints(cls, ambient_dim: int, rows: Sequence[Tuple[Sequence, Fraction]],
                         eqs: Sequence[Tuple[Sequence, Fraction]] = ()) -> "RationalPolyhedron":
        return cls(
            ambient_dim,
            tuple(Inequality(as_vector(a), Fraction(c)) for a, c in rows),
            tuple(Inequality(as_vector(a), Fraction(c)) for a, c in eqs),
        )

    @classmethod
    def empty(cls, ambient_dim: int) -> "RationalPolyhedron":
        return cls(ambient_dim, (Inequality(tuple(Fraction(0) for _ in range(ambient_dim)), Fraction(-1)),))

    @classmethod
    def box(cls, lower: Sequence[Fraction], upper: Sequence[Fraction]) -> "RationalPolyhedron":
        n = len(lower)
        rows = []
        for i in range(n):
            unit = [Fraction(int(i == j)) for j in range(n)]
            rows.append((unit, Fraction(upper[i])))
            rows.append(([-v for v in unit], -Fraction(lower[i])))
        return cls.from_constraints(n, rows)

    @property
    def all_rows(self) -> List[Tuple[Vector, Fraction]]:
        """Все ограничения в виде a·x ≤ c (равенства дают две строки)"""
        rows = [(row.a, row.c) for row in self.inequalities]
        for row in self.equalities:
            rows.append((row.a, row.c))
            rows.append((tuple(-v for v in row.a), -row.c))
        return rows

    def contains_point(self, x: Sequence[Fraction]) -> bool:
        return (all(row.value(x) <= row.c for row in self.inequalities)
                and all(row.value(x) == row.c for row in self.equalities))

    def with_vrep(self, vrep: VRepresentation) -> "RationalPolyhedron":
        return RationalPolyhedron(self.ambient_dim, self.inequalities, self.equalities, vrep)

    def _validate_vrep(self, vrep: VRepresentation) -> None:
        for vertex in vrep.vertices:
            if not self.contains_point(vertex):
                raise InvalidPolyhedron(f"Вершина {vertex} нарушает H-представление")
            tight = [row.a for row in self.inequalities if row.value(vertex) == row.c]
            tight += [row.a for row in self.equalities]
            if rank(tuple(tight)) < self.ambient_dim - len(vrep.lines):
                raise InvalidPolyhedron(f"Точка {vertex} не является вершиной")
        for direction in vrep.rays:
            if any(row.value(direction) > 0 for row in self.inequalities) or \
                    any(row.value(direction) != 0 for row in self.equalities):
                raise InvalidPolyhedron(f"Луч {direction} выходит из полиэдра")

    def to_json(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "ambient_dim": self.ambient_dim,
            "ineqs": [row.to_json() for row in self.inequalities],
            "eqs": [row.to_json() for row in self.equalities],
        }
        if self.vrep is not None:
            payload["vrep"] = self.vrep.to_json()
        return payload

    @classmethod
    def from_json(cls, raw: Dict[str, Any]) -> "RationalPolyhedron":
        return cls(
            int(raw["ambient_dim"]),
            tuple(Inequality.from_json(row) for row in raw.get("ineqs", [])),
            tuple(Inequality.from_json(row) for row in raw.get("eqs", [])),
        )


def canonical_row(a: Sequence[Fraction], c: Fraction) -> Optional[Tuple[Vector, Fraction]]:
    """
    Масштабирует a·x ≤ c к примитивной целой нормали

    Returns:
        (нормаль, правая часть) или None для тривиальной строки 0 ≤ c
    """
    row = Inequality(as_vector(a), c)
    if row.is_trivial:
        return None
    key = row.direction_key()
    pivot = next(i for i, v in enumerate(key) if v != 0)
    factor = row.a[pivot] / key[pivot]
    return key, row.c / factor
