# theta/generators.py
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from lattice.cokernel import coker_torsion_representatives
from lattice.ellipsoid import LatticeEnumerator
from lattice.linalg import (
    Vector,
    as_vector,
    bilinear,
    dot,
    inverse,
    mat_vec,
    quadratic,
    vec_add,
    vec_sub,
)
from lattice.models import IntVector
from lattice.normal_forms import hermite_column_basis, reduce_in_box
from polyhedra.models import RationalPolyhedron, VRepresentation
from theta.bundle import BundleCase, BundleSpec, ReducedBundle, classify_bundle, reduce_semidefinite
from theta.config import ThetaConfig
from theta.voronoi import VoronoiCell
from utils.errors import InvalidSpec, NoSections
from utils.logger import get_logger


@dataclass(frozen=True)
class AffinePiece:
    """Аффинный кусок slope·x + constant тэта-функции Θ_{b'}, отвечающий λ = L·coords"""

    slope: Vector
    constant: Fraction
    source: int
    coords: IntVector

    def value(self, x: Sequence[Fraction]) -> Fraction:
        return dot(self.slope, x) + self.constant

    def shifted(self, amount: Fraction) -> "AffinePiece":
        return AffinePiece(self.slope, self.constant + amount, self.source, self.coords)


class GeneratorBasis:
    """
    Образующие Θ_b пространства сечений L(Q, α)

    Θ_b(x) = max_λ {(b + q(λ))·x − ½Q(λ + δ_b)}, δ_b = q_R^{-1}(b) − r,
    что равно ½Q(x) + Q(r, x) − ½·min_λ Q(x − δ_b − λ). Максимум ищется
    точно перебором ближайших векторов решетки.

    Полуопределенное расслоение сначала редуцируется; все вычисления идут
    в координатах редуцированного тора, γ из α вынесен отдельно.
    """

    def __init__(self, spec: BundleSpec, config: Optional[ThetaConfig] = None):
        self.logger = get_logger(__name__)
        self.config = config or ThetaConfig()
        self.spec = spec
        self.case = classify_bundle(spec)

        if self.case == BundleCase.POSITIVE_DEFINITE:
            self.reduction: Optional[ReducedBundle] = None
            core = spec
        elif self.case == BundleCase.SEMIDEFINITE_SECTIONFUL:
            self.reduction = reduce_semidefinite(spec)
            core = self.reduction.bundle
        else:
            raise NoSections(f"У расслоения типа {self.case.value} нет тэта-функций")

        self.core = core
        self.dim = core.dim
        self.form = core.form.matrix
        self.reps: List[IntVector] = coker_torsion_representatives(core.torus, core.form)
        self._pieces: Dict[Tuple[int, int], List[AffinePiece]] = {}

        if self.dim:
            self.form_inverse = inverse(self.form)
            self.r = mat_vec(self.form_inverse, core.alpha)
            integral = core.form.integral_matrix(core.torus)
            self.hermite = hermite_column_basis(tuple(tuple(int(a) for a in row) for row in integral))
            self.enumerator: Optional[LatticeEnumerator] = LatticeEnumerator(
                core.torus.lattice_basis, self.form, self.config.max_box
            )
            self.voronoi: Optional[VoronoiCell] = VoronoiCell(self.enumerator)
        else:
            self.form_inverse = ()
            self.r = ()
            self.hermite = ()
            self.enumerator = None
            self.voronoi = None

        self.deltas: List[Vector] = [self.delta(b) for b in self.reps]
        self.r_of_b: List[Fraction] = [self.r_value(b) for b in self.reps]
        self.logger.info(f"Базис тэта-функций: |B| = {len(self.reps)}, B = {self.reps}")

    @property
    def size(self) -> int:
        return len(self.reps)

    @property
    def gamma(self) -> IntVector:
        if self.reduction is not None:
            return self.reduction.gamma
        return tuple(0 for _ in range(self.spec.dim))

    @property
    def lifted_reps(self) -> List[IntVector]:
        """Представители B как ковекторы на исходном R^n"""
        if self.reduction is None:
            return list(self.reps)
        return [self.reduction.lift_covector(b) for b in self.reps]

    def to_core(self, x: Sequence[Fraction]) -> Vector:
        if len(x) != self.spec.dim:
            raise InvalidSpec(f"Точка {tuple(x)} не лежит в R^{self.spec.dim}")
        if self.reduction is not None:
            return self.reduction.project(as_vector(x))
        return as_vector(x)

    def core_covector(self, a: Sequence[int]) -> IntVector:
        if self.reduction is not None:
            return self.reduction.restrict_covector(a)
        return tuple(int(v) for v in a)

    def delta(self, b: Sequence[int]) -> Vector:
        if not self.dim:
            return ()
        return vec_sub(mat_vec(self.form_inverse, b), self.r)

    def r_value(self, b: Sequence[int]) -> Fraction:
        """r(b) = ½Q(δ_b, δ_b)"""
        return quadratic(self.form, self.delta(b)) / 2 if self.dim else Fraction(0)

    def point(self, coords: Sequence[int]) -> Vector:
        return self.enumerator.point(coords) if self.dim else ()

    def reduce(self, b: Sequence[int]) -> Tuple[int, Vector]:
        """
        Разложение b = b_i + q(μ) с b_i ∈ B и μ ∈ Λ

        Returns:
            (номер представителя i, μ)
        """
        if not self.dim:
            return 0, ()
        rep, _ = reduce_in_box(tuple(int(v) for v in b), self.hermite)
        mu = mat_vec(self.form_inverse, [Fraction(v) - c for v, c in zip(b, rep)])
        return self.reps.index(rep), mu

    def evaluate(self, b: Sequence[int], x: Sequence[Fraction]) -> Fraction:
        """Θ_b(x) в координатах редуцированного тора"""
        if not self.dim:
            return Fraction(0)
        x = as_vector(x)
        distance, _ = self.enumerator.closest(vec_sub(x, self.delta(b)))
        return quadratic(self.form, x) / 2 + bilinear(self.form, self.r, x) - distance / 2

    def maximizers(self, b: Sequence[int], x: Sequence[Fraction]) -> List[IntVector]:
        """Координаты всех λ, на которых достигается максимум в Θ_b(x)"""
        if not self.dim:
            return [()]
        _, hits = self.enumerator.closest(vec_sub(as_vector(x), self.delta(b)))
        return hits

    def piece(self, index: int, coords: Sequence[int]) -> AffinePiece:
        """Кусок Θ_{b_index}, отвечающий λ = L·coords"""
        b = self.reps[index]
        lam = self.point(coords)
        slope = vec_add(as_vector(b), mat_vec(self.form, lam)) if self.dim else ()
        constant = -quadratic(self.form, vec_add(lam, self.deltas[index])) / 2 if self.dim else Fraction(0)
        return AffinePiece(slope, constant, index, tuple(coords))

    def fundamental_cell(self, index: int) -> RationalPolyhedron:
        """D_0^b = δ_b + Vor: область, где Θ_b аффинна с наклоном b"""
        if not self.dim:
            return RationalPolyhedron(0).with_vrep(VRepresentation(vertices=((),)))
        return self.voronoi.centered_at(self.deltas[index])

    def pieces_on_cell(self, cell: int, source: int) -> List[AffinePiece]:
        """
        Все куски Θ_{b_source}, области которых пересекают D_0^{b_cell}

        Область куска λ равна δ_{b'} + λ + Vor, поэтому нужны λ с
        δ_{b'} + λ − δ_b ∈ 2·Vor; кандидаты берутся из эллипсоида Q ≤ 4ρ².
        """
        key = (cell, source)
        if key not in self._pieces:
            self._pieces[key] = self.pieces_around(source, self.deltas[cell])
            self.logger.debug(f"Куски Θ_{self.reps[source]} на D_0^{self.reps[cell]}: {len(self._pieces[key])}")
        return self._pieces[key]

    def pieces_around(self, source: int, center: Sequence[Fraction]) -> List[AffinePiece]:
        """Куски Θ_{b_source}, области которых пересекают center + Vor"""
        if not self.dim:
            return [self.piece(source, ())]
        offset = vec_sub(as_vector(center), self.deltas[source])
        radius = 4 * self.voronoi.covering_radius_sq
        pieces = []
        for coords, _ in self.enumerator.within(offset, radius):
            if self.voronoi.in_double_cell(vec_sub(self.point(coords), offset)):
                pieces.append(self.piece(source, coords))
        return pieces

    def pieces_in_ball(self, source: int, center: Sequence[Fraction], radius_sq: Fraction) -> List[AffinePiece]:
        """
        Куски Θ_{b_source}, области которых могут пересечь шар Q(x − center) ≤ radius_sq

        Точка области куска λ отстоит от δ_{b'} + λ не более чем на ρ, поэтому
        достаточно Q(δ_{b'} + λ − center) ≤ (√radius_sq + ρ)², оцененное сверху
        через 2·radius_sq + 2ρ².
        """
        if not self.dim:
            return [self.piece(source, ())]
        bound = 2 * Fraction(radius_sq) + 2 * self.voronoi.covering_radius_sq
        target = vec_sub(as_vector(center), self.deltas[source])
        return [self.piece(source, coords) for coords, _ in self.enumerator.within(target, bound)]


def theta_generator_eval(basis: GeneratorBasis, b: Sequence[int], x: Sequence[Fraction]) -> Fraction:
    """
    Значение образующей Θ_b в точке x

    Args:
        basis: Базис образующих
        b: Целый ковектор (в координатах редуцированного тора)
        x: Рациональная точка того же пространства

    Returns:
        Точное значение максимума

    Raises:
        TruncationNotCertified: Если перебор решетки выходит за max_box
    """
    if len(b) != basis.dim or len(x) != basis.dim:
        raise InvalidSpec("Размерности ковектора, точки и тора не согласованы")
    return basis.evaluate(b, x)


def fundamental_cell(basis: GeneratorBasis, b: Sequence[int]) -> RationalPolyhedron:
    """D_0^b для произвольного целого ковектора b"""
    if not basis.dim:
        return basis.fundamental_cell(0)
    return basis.voronoi.centered_at(basis.delta(b))
