# polyhedra/operations.py
from fractions import Fraction
from typing import List, Sequence

import ppl

from lattice.linalg import dot
from polyhedra.lp import LpResult, maximize
from polyhedra.models import Inequality, RationalPolyhedron
from polyhedra.ppl_wrapper import equality_constraint, from_ppl, to_ppl
from polyhedra.representations import vertex_enumeration
from utils.errors import AmbientMismatch
from utils.logger import get_logger

logger = get_logger(__name__)


def maximize_over(polyhedron: RationalPolyhedron, objective: Sequence[Fraction]) -> LpResult:
    return maximize(polyhedron.all_rows, objective, polyhedron.ambient_dim)


def is_empty(polyhedron: RationalPolyhedron) -> bool:
    return to_ppl(polyhedron).is_empty()


def implicit_equalities(polyhedron: RationalPolyhedron) -> List[Inequality]:
    """
    Неравенства, обращающиеся в равенство на всем (непустом) полиэдре

    Строка a·x ≤ c неявно равенство, если гиперплоскость a·x = c содержит полиэдр.
    """
    body = to_ppl(polyhedron)
    found = []
    for row in polyhedron.inequalities:
        hyperplane = ppl.C_Polyhedron(polyhedron.ambient_dim, "universe")
        hyperplane.add_constraint(equality_constraint(row.a, row.c))
        if hyperplane.contains(body):
            found.append(row)
    return found


def dimension(polyhedron: RationalPolyhedron) -> int:
    """
    Аффинная размерность полиэдра

    Returns:
        −1 для пустого множества
    """
    body = to_ppl(polyhedron)
    if body.is_empty():
        return -1
    return int(body.affine_dimension())


def remove_redundancy(polyhedron: RationalPolyhedron) -> RationalPolyhedron:
    """
    Минимальное H-представление того же множества

    Неявные равенства попадают в список равенств, оставшиеся неравенства
    задают фасеты. Пустой полиэдр приводится к каноническому 0 ≤ −1.

    Args:
        polyhedron: Исходная система

    Returns:
        RationalPolyhedron с неприводимой системой
    """
    reduced = from_ppl(to_ppl(polyhedron), polyhedron.ambient_dim)
    logger.debug(
        f"Удаление избыточности: {len(polyhedron.inequalities)} -> {len(reduced.inequalities)} неравенств, "
        f"{len(reduced.equalities)} равенств"
    )
    return reduced


def with_vertices(polyhedron: RationalPolyhedron) -> RationalPolyhedron:
    """Прикрепляет V-представление, проверенное против H-представления"""
    return polyhedron.with_vrep(vertex_enumeration(polyhedron))


def contains(outer: RationalPolyhedron, inner: RationalPolyhedron) -> bool:
    """
    Включение inner ⊆ outer

    Raises:
        AmbientMismatch: Если размерности пространств различаются
    """
    if outer.ambient_dim != inner.ambient_dim:
        raise AmbientMismatch(f"Размерности {outer.ambient_dim} и {inner.ambient_dim} различаются")
    return to_ppl(outer).contains(to_ppl(inner))


def same_set(first: RationalPolyhedron, second: RationalPolyhedron) -> bool:
    return contains(first, second) and contains(second, first)


def intersect(*polyhedra: RationalPolyhedron) -> RationalPolyhedron:
    dims = {p.ambient_dim for p in polyhedra}
    if len(dims) != 1:
        raise AmbientMismatch(f"Пересечение полиэдров разных размерностей {sorted(dims)}")
    return RationalPolyhedron(
        dims.pop(),
        tuple(row for p in polyhedra for row in p.inequalities),
        tuple(row for p in polyhedra for row in p.equalities),
    )


def translate(polyhedron: RationalPolyhedron, shift: Sequence[Fraction]) -> RationalPolyhedron:
    """Сдвиг P + shift"""
    return RationalPolyhedron(
        polyhedron.ambient_dim,
        tuple(Inequality(row.a, row.c + dot(row.a, shift)) for row in polyhedron.inequalities),
        tuple(Inequality(row.a, row.c + dot(row.a, shift)) for row in polyhedron.equalities),
    )


def fix_coordinate(polyhedron: RationalPolyhedron, index: int, value: Fraction) -> RationalPolyhedron:
    """
    Сечение x_index = value, записанное в оставшихся координатах

    Args:
        polyhedron: Полиэдр в R^n
        index: Фиксируемая координата
        value: Ее значение

    Returns:
        Полиэдр в R^{n−1}
    """
    value = Fraction(value)

    def restrict(row: Inequality) -> Inequality:
        rest = tuple(v for i, v in enumerate(row.a) if i != index)
        return Inequality(rest, row.c - row.a[index] * value)

    return RationalPolyhedron(
        polyhedron.ambient_dim - 1,
        tuple(restrict(row) for row in polyhedron.inequalities),
        tuple(restrict(row) for row in polyhedron.equalities),
    )
