# theta/voronoi.py
from fractions import Fraction
from itertools import product
from typing import List, Sequence, Tuple

from lattice.ellipsoid import LatticeEnumerator
from lattice.linalg import Vector, bilinear, mat_vec, quadratic
from lattice.models import IntVector
from polyhedra.models import RationalPolyhedron, VRepresentation, canonical_row
from polyhedra.operations import remove_redundancy, translate
from polyhedra.representations import vertex_enumeration
from utils.logger import get_logger

RelevantVector = Tuple[IntVector, Vector]


class VoronoiCell:
    """
    Ячейка Вороного решетки Λ в норме Q с центром в нуле

    {v : Q(λ, v) ≤ ½Q(λ, λ) для всех λ ∈ Λ}. Сначала берутся кандидаты
    с координатами из {−1, 0, 1}, по вершинам полученного многогранника
    оценивается радиус покрытия, затем перебираются все λ с Q(λ) ≤ 4ρ² и
    избыточные неравенства удаляются.
    """

    def __init__(self, enumerator: LatticeEnumerator):
        self.logger = get_logger(__name__)
        self.enumerator = enumerator
        self.form = enumerator.form
        self.dim = enumerator.dim

        rough = self._cell([k for k in product((-1, 0, 1), repeat=self.dim) if any(k)])
        bound = max(quadratic(self.form, v) for v in vertex_enumeration(rough).vertices)

        origin = tuple(Fraction(0) for _ in range(self.dim))
        candidates = [k for k, _ in enumerator.within(origin, 4 * bound) if any(k)]
        polyhedron = remove_redundancy(self._cell(candidates))
        self.vrep = vertex_enumeration(polyhedron)
        self.polyhedron = polyhedron.with_vrep(self.vrep)

        facets = {canonical_row(row.a, row.c) for row in polyhedron.inequalities}
        self.relevant: List[RelevantVector] = []
        for k in candidates:
            lam = enumerator.point(k)
            if canonical_row(mat_vec(self.form, lam), quadratic(self.form, lam) / 2) in facets:
                self.relevant.append((k, lam))
        self.covering_radius_sq = max(quadratic(self.form, v) for v in self.vrep.vertices)

        self.logger.debug(
            f"Ячейка Вороного: {len(self.relevant)} граней, "
            f"{len(self.vrep.vertices)} вершин, ρ² = {self.covering_radius_sq}"
        )

    def _cell(self, coords: Sequence[IntVector]) -> RationalPolyhedron:
        rows = []
        for k in coords:
            lam = self.enumerator.point(k)
            rows.append((mat_vec(self.form, lam), quadratic(self.form, lam) / 2))
        return RationalPolyhedron.from_constraints(self.dim, rows)

    def contains(self, v: Sequence[Fraction]) -> bool:
        return self.polyhedron.contains_point(v)

    def in_double_cell(self, u: Sequence[Fraction]) -> bool:
        """u ∈ 2·Vor, то есть сдвиг u + Vor пересекает Vor"""
        return all(bilinear(self.form, lam, u) <= quadratic(self.form, lam) for _, lam in self.relevant)

    def centered_at(self, center: Sequence[Fraction]) -> RationalPolyhedron:
        """center + Vor вместе с вершинами"""
        vertices = tuple(tuple(a + c for a, c in zip(v, center)) for v in self.vrep.vertices)
        return translate(self.polyhedron, center).with_vrep(VRepresentation(vertices=vertices))
