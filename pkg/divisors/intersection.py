# divisors/intersection.py
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from divisors.corner_locus import divisor_from_section
from divisors.models import (
    Cell,
    CosetKey,
    IntersectionPoint,
    IntersectionReport,
    WeightedComplex,
    bounding_box,
    lattice_points_in_box,
)
from lattice.cokernel import find_polarization, oriented_integral_determinant
from lattice.linalg import Vector, vec_add, vec_sub
from theta.bundle import BundleSpec
from theta.config import ThetaConfig
from theta.generators import GeneratorBasis
from theta.sections import ThetaSection
from utils.errors import AmbientMismatch, InternalConsistencyError, NotPureCurve
from utils.logger import get_logger

logger = get_logger(__name__)

# Наклоны направлений сдвига (1, ρ); берется первый, не параллельный ни одной клетке
PERTURBATION_SLOPES = (
    Fraction(1, 97), Fraction(3, 89), Fraction(-5, 83), Fraction(7, 79),
    Fraction(-11, 73), Fraction(13, 71), Fraction(-17, 67), Fraction(19, 61),
)

Lex = Tuple[Fraction, Fraction]


def cross(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return Fraction(u[0]) * v[1] - Fraction(u[1]) * v[0]


def perturbation_direction(first: WeightedComplex, second: WeightedComplex, choice: int = 0) -> Vector:
    """
    Направление v = (1, ρ) бесконечно малого сдвига второй кривой

    Args:
        first: Первая кривая
        second: Вторая кривая
        choice: Номер предпочтительного наклона из PERTURBATION_SLOPES

    Returns:
        Вектор, не параллельный ни одной клетке обеих кривых
    """
    directions = {cell.direction for c in (first, second) for cell in c.cells}
    for offset in range(len(PERTURBATION_SLOPES)):
        slope = PERTURBATION_SLOPES[(choice + offset) % len(PERTURBATION_SLOPES)]
        v = (Fraction(1), slope)
        if all(cross(v, d) != 0 for d in directions):
            if offset:
                logger.debug(f"Наклон №{choice} вырожден, использован {slope}")
            return v
    raise InternalConsistencyError("Все заготовленные направления сдвига параллельны клеткам")


def _inside(value: Lex, lower: Optional[Fraction], upper: Optional[Fraction]) -> bool:
    """Строгая принадлежность s0 + ε·s1 интервалу (lower, upper) при ε → +0"""
    if lower is not None and value <= (lower, Fraction(0)):
        return False
    if upper is not None and value >= (upper, Fraction(0)):
        return False
    return True


def _crossing(first: Cell, second: Cell, shift: Vector, v: Vector) -> Optional[Tuple[Vector, int]]:
    """
    Трансверсальное пересечение first с second + shift + ε·v

    Returns:
        (предельная точка пересечения, кратность) или None
    """
    p, d1, s_lo, s_hi = first.parametrization()
    q, d2, t_lo, t_hi = second.parametrization()
    det = cross(d1, d2)
    if det == 0:
        return None

    w = vec_sub(vec_add(q, shift), p)
    s: Lex = (cross(w, d2) / det, cross(v, d2) / det)
    t: Lex = (cross(d1, w) / -det, cross(d1, v) / -det)
    if not _inside(s, s_lo, s_hi) or not _inside(t, t_lo, t_hi):
        return None

    point = tuple(a + s[0] * b for a, b in zip(p, d1))
    multiplicity = first.weight * second.weight * abs(cross(first.direction, second.direction))
    return point, int(multiplicity)


def _check_curves(first: WeightedComplex, second: WeightedComplex) -> None:
    for complex_ in (first, second):
        if not complex_.is_pure_curve:
            raise NotPureCurve(f"Ожидалась кривая на плоскости или 2-торе, получен комплекс в R^{complex_.ambient_dim}")
    if not first.same_ambient(second):
        raise AmbientMismatch("Кривые заданы на разных пространствах")


def _translates(first: Cell, second: Cell, complex_: WeightedComplex) -> List[Vector]:
    """Сдвиги λ ∈ Λ, при которых second + λ может задеть first"""
    if complex_.torus is None:
        return [tuple(Fraction(0) for _ in range(complex_.ambient_dim))]
    lo1, hi1 = bounding_box(first.vertices)
    lo2, hi2 = bounding_box(second.vertices)
    return lattice_points_in_box(complex_.torus, vec_sub(lo1, hi2), vec_sub(hi1, lo2))


def stable_intersection_2d(first: WeightedComplex, second: WeightedComplex,
                           perturbation: int = 0) -> IntersectionReport:
    """
    Устойчивое пересечение двух кривых на плоскости или 2-торе

    Вторая кривая сдвигается на ε·v с бесконечно малым ε; параметры точек
    пересечения сравниваются лексикографически, поэтому концы клеток не
    попадают в пересечение. Кратность точки равна w₁·w₂·|det(u₁, u₂)|.

    Args:
        first: Первая кривая
        second: Вторая кривая
        perturbation: Номер направления сдвига

    Returns:
        IntersectionReport; на торе точки сгруппированы по классам mod Λ

    Raises:
        NotPureCurve: Если один из комплексов не кривая
        AmbientMismatch: Если кривые на разных пространствах
    """
    _check_curves(first, second)
    v = perturbation_direction(first, second, perturbation)

    totals: Dict[CosetKey, int] = {}
    locations: Dict[CosetKey, Vector] = {}
    for cell_1 in first.cells:
        for cell_2 in second.cells:
            for shift in _translates(cell_1, cell_2, first):
                hit = _crossing(cell_1, cell_2, shift, v)
                if hit is None:
                    continue
                point, multiplicity = hit
                key = first.coset_key(point)
                totals[key] = totals.get(key, 0) + multiplicity
                locations.setdefault(key, point)

    points = [
        IntersectionPoint(location=locations[key], multiplicity=totals[key])
        for key in sorted(totals) if totals[key]
    ]
    report = IntersectionReport.from_points(points)
    logger.info(f"Устойчивое пересечение: {len(points)} точек, сумма {report.total}")
    return report


def self_intersection_formula(spec: BundleSpec) -> Fraction:
    """
    D^n = n!·det q в согласованно ориентированных базисах Λ и (Z^n)*

    Тор проверяется на наличие поляризации.
    """
    find_polarization(spec.torus)
    return factorial(spec.dim) * oriented_integral_determinant(spec.torus, spec.form)


def stable_self_intersection(spec: BundleSpec, config: Optional[ThetaConfig] = None) -> IntersectionReport:
    """D·D для положительно определенного расслоения на 2-торе через дивизор Θ_0"""
    basis = GeneratorBasis(spec, config)
    divisor = divisor_from_section(ThetaSection.generator(basis, 0))
    return stable_intersection_2d(divisor, divisor)
