# polyhedra/lp.py
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from polyhedra.ppl_wrapper import integer_vector, linear_expression, rows_to_ppl

Row = Tuple[Sequence[Fraction], Fraction]


class LpStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpResult:
    status: LpStatus
    value: Optional[Fraction] = None

    @property
    def is_optimal(self) -> bool:
        return self.status == LpStatus.OPTIMAL


def is_feasible(rows: Sequence[Row], dim: int) -> bool:
    """Непустота {x : a_i·x ≤ c_i}"""
    return not rows_to_ppl(rows, dim).is_empty()


def maximize(rows: Sequence[Row], objective: Sequence[Fraction], dim: int) -> LpResult:
    """
    max objective·x при a_i·x ≤ c_i, x свободны

    Точный супремум PPL (sup_n / sup_d) делится обратно на масштаб
    целевого ковектора.

    Args:
        rows: Ограничения (a_i, c_i)
        objective: Целевой ковектор
        dim: Размерность x

    Returns:
        LpResult: OPTIMAL со значением, INFEASIBLE или UNBOUNDED
    """
    polyhedron = rows_to_ppl(rows, dim)
    if polyhedron.is_empty():
        return LpResult(LpStatus.INFEASIBLE)

    ints, scale = integer_vector(objective)
    result = polyhedron.maximize(linear_expression(ints))
    if not result["bounded"]:
        return LpResult(LpStatus.UNBOUNDED)
    return LpResult(LpStatus.OPTIMAL, Fraction(int(result["sup_n"]), int(result["sup_d"])) / scale)


def minimize(rows: Sequence[Row], objective: Sequence[Fraction], dim: int) -> LpResult:
    result = maximize(rows, [-Fraction(v) for v in objective], dim)
    if result.is_optimal:
        return LpResult(LpStatus.OPTIMAL, -result.value)
    return result
