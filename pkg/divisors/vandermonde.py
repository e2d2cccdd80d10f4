# divisors/vandermonde.py
from fractions import Fraction
from typing import List, Optional, Sequence

from divisors.corner_locus import is_on_corner_locus
from lattice.linalg import Vector, as_vector
from theta.bundle import BundleSpec
from theta.config import ThetaConfig
from theta.generators import GeneratorBasis
from theta.sections import ThetaSection
from tropical.matrix import TropicalMatrix, TropicalVector, trop_det
from tropical.scalar import ZERO, TropicalScalar
from utils.errors import DegenerateBasis, InternalConsistencyError, InvalidSpec
from utils.logger import get_logger

logger = get_logger(__name__)


def vandermonde_matrix(basis: GeneratorBasis, points: Sequence[Vector]) -> TropicalMatrix:
    """
    Матрица (Θ_{b_j}(q_i)) с нулевой первой строкой под переменную x

    Args:
        basis: Базис образующих
        points: Точки q_1..q_{l−1} в координатах редуцированного тора

    Returns:
        l×l тропическая матрица
    """
    rows: List[List[TropicalScalar]] = [[ZERO] * basis.size]
    for y in points:
        rows.append([TropicalScalar(basis.evaluate(b, y)) for b in basis.reps])
    return TropicalMatrix.from_rows(rows)


def cofactor_row(matrix: TropicalMatrix) -> TropicalVector:
    """Тропические миноры первой строки: коэффициенты при Θ_{b_j}(x)"""
    return tuple(trop_det(matrix.minor(0, j)) for j in range(matrix.cols))


def vandermonde_interpolate(spec: BundleSpec, points: Sequence[Sequence[Fraction]],
                            config: Optional[ThetaConfig] = None,
                            basis: Optional[GeneratorBasis] = None) -> ThetaSection:
    """
    Тэта-функция, дивизор которой проходит через l − 1 заданных точек

    V(x) = max_σ {Θ_{b_σ(1)}(x) + Σ_{i≥2} Θ_{b_σ(i)}(q_{i−1})}, то есть
    тропический определитель матрицы Вандермонда, разложенный по первой строке.

    Args:
        spec: Расслоение с сечениями
        points: l − 1 точек исходного R^n
        config: Конфигурация
        basis: Готовый базис образующих

    Returns:
        ThetaSection с коэффициентами из строки кофакторов

    Raises:
        DegenerateBasis: Если |B| < 2
        InvalidSpec: Если число точек не равно |B| − 1
        InternalConsistencyError: Если дивизор не прошел через точку
    """
    basis = basis or GeneratorBasis(spec, config)
    size = basis.size
    if size < 2:
        raise DegenerateBasis(f"Для интерполяции нужно |B| ≥ 2, получено {size}")
    if len(points) != size - 1:
        raise InvalidSpec(f"Ожидалось {size - 1} точек, получено {len(points)}")

    originals = [as_vector(p) for p in points]
    matrix = vandermonde_matrix(basis, [basis.to_core(p) for p in originals])
    section = ThetaSection(basis, cofactor_row(matrix))

    for point in originals:
        if not is_on_corner_locus(section, point):
            raise InternalConsistencyError(f"Дивизор интерполяции не проходит через {point}")
    logger.info(f"Интерполяция через {len(points)} точек: коэффициенты {[c.to_json() for c in section.coeffs]}")
    return section
