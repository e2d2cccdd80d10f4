# polyhedra/representations.py
from fractions import Fraction
from typing import Iterable, Sequence

from polyhedra.models import RationalPolyhedron, VRepresentation
from polyhedra.ppl_wrapper import from_ppl, generators_to_ppl, to_ppl, vrep_from_ppl
from utils.errors import InvalidSpec
from utils.logger import get_logger

logger = get_logger(__name__)


def vertex_enumeration(polyhedron: RationalPolyhedron) -> VRepresentation:
    """
    V-представление полиэдра

    Args:
        polyhedron: H-представление

    Returns:
        VRepresentation (пустой список вершин для пустого полиэдра)
    """
    vrep = vrep_from_ppl(to_ppl(polyhedron), polyhedron.ambient_dim)
    logger.debug(f"Образующие: {len(vrep.vertices)} вершин, {len(vrep.rays)} лучей, {len(vrep.lines)} прямых")
    return vrep


def from_generators(dim: int, vertices: Sequence[Sequence[Fraction]], rays: Sequence[Sequence[Fraction]] = (),
                    lines: Sequence[Sequence[Fraction]] = ()) -> RationalPolyhedron:
    """
    H-представление conv(vertices) + cone(rays) + span(lines)

    Returns:
        RationalPolyhedron с неприводимой системой (пустой при vertices = [])
    """
    return from_ppl(generators_to_ppl(dim, vertices, rays, lines), dim)


def project_out(polyhedron: RationalPolyhedron, coords: Iterable[int]) -> RationalPolyhedron:
    """
    Проекция полиэдра вдоль координат coords

    Проекция conv(V) + cone(R) + span(L) порождена проекциями образующих,
    поэтому исключение идет через V-представление.

    Args:
        polyhedron: Полиэдр в R^n
        coords: Номера исключаемых координат (с нуля)

    Returns:
        Неприводимое H-представление проекции в оставшихся координатах

    Raises:
        InvalidSpec: Если номер координаты вне диапазона
    """
    targets = frozenset(coords)
    if any(j < 0 or j >= polyhedron.ambient_dim for j in targets):
        raise InvalidSpec(f"Координаты {sorted(targets)} вне диапазона 0..{polyhedron.ambient_dim - 1}")

    keep = [i for i in range(polyhedron.ambient_dim) if i not in targets]
    vrep = vertex_enumeration(polyhedron)
    if vrep.is_empty:
        return RationalPolyhedron.empty(len(keep))

    def drop(v):
        return tuple(v[i] for i in keep)

    projected = from_generators(
        len(keep),
        [drop(v) for v in vrep.vertices],
        [drop(r) for r in vrep.rays],
        [drop(l) for l in vrep.lines],
    )
    logger.debug(f"Проекция: исключено {len(targets)} координат, {len(projected.inequalities)} неравенств")
    return projected
