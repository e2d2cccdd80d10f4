# divisors/balancing.py
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

from divisors.models import CosetKey, WeightedComplex
from lattice.linalg import Vector
from lattice.models import IntVector, vector_to_json
from utils.errors import UnsupportedDimension
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class BalancingReport:
    balanced: bool
    face: Optional[Vector] = None
    residual: Optional[IntVector] = None

    def to_json(self) -> Dict[str, Any]:
        return {
            "balanced": self.balanced,
            "face": vector_to_json(self.face) if self.face is not None else None,
            "residual": list(self.residual) if self.residual is not None else None,
        }


def validate_balancing(complex_: WeightedComplex) -> BalancingReport:
    """
    Проверка условия баланса Σ w(F)·u_F = 0 в каждой грани коразмерности 2

    Для кривых на плоскости грани коразмерности 2 это концы клеток; на торе
    концы группируются по классам по модулю Λ. Для n = 1 таких граней нет.

    Args:
        complex_: Взвешенный комплекс

    Returns:
        BalancingReport с первой несбалансированной гранью

    Raises:
        UnsupportedDimension: Для n > 2
    """
    if complex_.ambient_dim < 2:
        return BalancingReport(balanced=True)
    if complex_.ambient_dim > 2:
        raise UnsupportedDimension(f"Проверка баланса реализована для n ≤ 2, получено {complex_.ambient_dim}")

    sums: Dict[CosetKey, List[int]] = {}
    points: Dict[CosetKey, Vector] = {}
    for cell in complex_.cells:
        for point, u in cell.endpoints():
            key = complex_.coset_key(point)
            total = sums.setdefault(key, [0, 0])
            total[0] += cell.weight * u[0]
            total[1] += cell.weight * u[1]
            points.setdefault(key, point)

    for key in sorted(sums):
        if any(sums[key]):
            logger.warning(f"Нарушен баланс в точке {points[key]}: сумма {tuple(sums[key])}")
            return BalancingReport(balanced=False, face=points[key], residual=tuple(sums[key]))
    return BalancingReport(balanced=True)
