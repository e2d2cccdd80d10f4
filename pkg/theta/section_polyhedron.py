# theta/section_polyhedron.py
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from lattice.cokernel import cokernel_summary
from lattice.models import IntVector, vector_to_json
from polyhedra.lp import maximize
from polyhedra.models import RationalPolyhedron
from polyhedra.operations import dimension, fix_coordinate, intersect, remove_redundancy, with_vertices
from polyhedra.representations import project_out
from theta.bundle import BundleCase, BundleSpec, classify_bundle
from theta.config import ThetaConfig
from theta.generators import GeneratorBasis
from theta.sections import ThetaSection, lifted_rows
from utils.errors import InternalConsistencyError, InvalidSpec
from utils.logger import get_logger


@dataclass(frozen=True)
class SectionPolyhedron:
    """
    Образ φ: Γ(X, L) → T^B и его сечение t_{slice_index} = 0

    polyhedron живет в R^B (координаты в порядке B), slice в R^{|B|−1}.
    """

    reps: Tuple[IntVector, ...]
    polyhedron: RationalPolyhedron
    slice_index: int
    slice: RationalPolyhedron
    epsilon: Fraction

    @property
    def dimension(self) -> int:
        return dimension(self.polyhedron)

    def witness_points(self) -> List[Tuple[Fraction, ...]]:
        """Точки 0 и ε·e_b, лежащие в Im φ"""
        size = len(self.reps)
        points = [tuple(Fraction(0) for _ in range(size))]
        for b in range(size):
            points.append(tuple(self.epsilon if i == b else Fraction(0) for i in range(size)))
        return points

    def to_json(self) -> Dict[str, Any]:
        return {
            "B": [list(b) for b in self.reps],
            "polyhedron": self.polyhedron.to_json(),
            "slice_coordinate": self.slice_index,
            "slice": self.slice.to_json(),
            "epsilon": vector_to_json([self.epsilon])[0],
        }


class SectionPolyhedronBuilder:
    """
    Построение Im φ как пересечения надграфиков t_b ≥ g_b(t_{−b})

    Для каждого b строится полиэдр по (t, x) с x ∈ D_0^b и
    (σ − b)·x + t_{b'} − t_b ≤ −c − r(b) для каждого куска σ·x + c
    функции Θ_{b'}, b' ≠ b; затем x исключается.
    """

    def __init__(self, basis: GeneratorBasis):
        self.logger = get_logger(__name__)
        self.basis = basis
        self.size = basis.size
        self.xi = ThetaSection.xi(basis)

    def epigraph(self, index: int) -> RationalPolyhedron:
        basis = self.basis
        m, k = self.size, basis.dim
        b = basis.reps[index]
        zeros_t = [Fraction(0)] * m

        rows = []
        for row in basis.fundamental_cell(index).inequalities:
            rows.append((tuple(zeros_t) + tuple(row.a), row.c))
        for source in range(m):
            if source == index:
                continue
            for piece in basis.pieces_on_cell(index, source):
                t_part = list(zeros_t)
                t_part[source] += 1
                t_part[index] -= 1
                x_part = tuple(s - c for s, c in zip(piece.slope, b))
                rows.append((tuple(t_part) + x_part, -piece.constant - basis.r_of_b[index]))

        lifted = RationalPolyhedron.from_constraints(m + k, rows)
        projected = project_out(lifted, range(m, m + k))
        self.logger.debug(f"Надграфик g_{b}: {len(projected.inequalities)} неравенств")
        return projected

    def g_at_zero(self, index: int) -> Fraction:
        """g_b(0) = min_{x ∈ D_0^b} {max_{b'≠b} Θ_{b'}(x) − b·x + r(b)}"""
        basis = self.basis
        objective = tuple(Fraction(v) for v in basis.reps[index]) + (Fraction(-1),)
        result = maximize(lifted_rows(self.xi, index, exclude=index), objective, basis.dim + 1)
        if not result.is_optimal:
            raise InternalConsistencyError(f"LP для g_{basis.reps[index]}(0) завершилась статусом {result.status.value}")
        return basis.r_of_b[index] - result.value

    def build(self, slice_index: int = 0) -> SectionPolyhedron:
        if not 0 <= slice_index < self.size:
            raise InvalidSpec(f"Координата сечения {slice_index} вне диапазона 0..{self.size - 1}")

        if self.size == 1:
            image = RationalPolyhedron(1)
            epsilon = Fraction(-1)
        else:
            image = remove_redundancy(intersect(*(self.epigraph(i) for i in range(self.size))))
            epsilon = max(self.g_at_zero(i) for i in range(self.size))

        section = with_vertices(remove_redundancy(fix_coordinate(image, slice_index, Fraction(0))))
        self.logger.info(
            f"Многогранник сечений: {len(image.inequalities)} граней, "
            f"сечение с {len(section.vrep.vertices)} вершинами, ε = {epsilon}"
        )
        return SectionPolyhedron(
            reps=tuple(self.basis.lifted_reps),
            polyhedron=image,
            slice_index=slice_index,
            slice=section,
            epsilon=epsilon,
        )


def section_polyhedron(spec: BundleSpec, config: Optional[ThetaConfig] = None, slice_index: int = 0,
                       basis: Optional[GeneratorBasis] = None) -> SectionPolyhedron:
    """
    Многогранник Im φ ⊂ T^B пространства сечений и его проективное сечение

    Args:
        spec: Расслоение (положительно определенное или полуопределенное с сечениями)
        config: Конфигурация
        slice_index: Номер координаты b₁, фиксируемой в нуле
        basis: Готовый базис образующих (иначе строится заново)

    Returns:
        SectionPolyhedron

    Raises:
        NoSections: Если у расслоения нет сечений
    """
    basis = basis or GeneratorBasis(spec, config)
    return SectionPolyhedronBuilder(basis).build(slice_index)


@dataclass(frozen=True)
class H0Report:
    """h⁰ вместе с обоими способами его вычисления"""

    case: BundleCase
    value: int
    by_cokernel: int
    by_polyhedron: Optional[int]

    def to_json(self) -> Dict[str, Any]:
        return {
            "case": self.case.value,
            "h0": self.value,
            "by_cokernel": self.by_cokernel,
            "by_polyhedron": self.by_polyhedron,
        }


def h0_report(spec: BundleSpec, config: Optional[ThetaConfig] = None) -> H0Report:
    """
    h⁰(X, L): порядок кручения Cok(q) для расслоений с сечениями, иначе 0

    При |B| ≤ h0_polyhedron_cap дополнительно считается размерность
    многогранника сечений; расхождение является внутренней ошибкой.

    Raises:
        InternalConsistencyError: Если два способа дали разные ответы
    """
    config = config or ThetaConfig()
    case = classify_bundle(spec)
    if not case.is_sectionful:
        return H0Report(case=case, value=0, by_cokernel=0, by_polyhedron=None)

    basis = GeneratorBasis(spec, config)
    torsion = cokernel_summary(spec.torus, spec.form).torsion_order
    if torsion != basis.size:
        raise InternalConsistencyError(f"|B| = {basis.size}, а порядок кручения Cok(q) равен {torsion}")

    by_polyhedron = None
    if basis.size <= config.h0_polyhedron_cap:
        by_polyhedron = section_polyhedron(spec, config, basis=basis).dimension
        if by_polyhedron != torsion:
            raise InternalConsistencyError(
                f"h⁰ по коядру {torsion} не совпадает с размерностью многогранника {by_polyhedron}"
            )
    return H0Report(case=case, value=torsion, by_cokernel=torsion, by_polyhedron=by_polyhedron)


def h0(spec: BundleSpec, config: Optional[ThetaConfig] = None) -> int:
    return h0_report(spec, config).value
