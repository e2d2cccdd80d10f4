# divisors/corner_locus.py
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from divisors.balancing import validate_balancing
from divisors.models import Cell, WeightedComplex
from lattice.linalg import Vector, as_vector, dot, lattice_length, primitive_integer_vector, vec_sub
from lattice.models import IntVector, TorusSpec, vector_to_json
from polyhedra.lp import maximize
from polyhedra.models import RationalPolyhedron, canonical_row
from polyhedra.operations import is_empty, remove_redundancy, with_vertices
from theta.generators import AffinePiece
from theta.sections import ThetaSection
from tropical.scalar import parse_rational
from utils.errors import InternalConsistencyError, InvalidSpec, NoSections, UnsupportedDimension
from utils.logger import get_logger

logger = get_logger(__name__)

Row = Tuple[Vector, Fraction]


@dataclass(frozen=True)
class TropicalPolynomial:
    """Тропический многочлен Лорана max_j {c_j + e_j·x} на R^n"""

    terms: Tuple[Tuple[IntVector, Fraction], ...]

    def __post_init__(self):
        terms = tuple((tuple(int(e) for e in exponent), Fraction(c)) for exponent, c in self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise InvalidSpec("Тропический многочлен должен содержать хотя бы один моном")
        if len({len(exponent) for exponent, _ in terms}) != 1:
            raise InvalidSpec("Показатели мономов имеют разную длину")

    @classmethod
    def from_json(cls, raw: Dict[str, Any]) -> "TropicalPolynomial":
        """
        Разбор {"terms": [{"exponent": [...], "coefficient": "p/q"}, ...]}

        Raises:
            InvalidSpec: Если формат нарушен
        """
        try:
            terms = [(tuple(t["exponent"]), parse_rational(t.get("coefficient", "0"))) for t in raw["terms"]]
        except (KeyError, TypeError) as e:
            raise InvalidSpec(f"Некорректное описание многочлена: {e}")
        return cls(tuple(terms))

    @property
    def dim(self) -> int:
        return len(self.terms[0][0])

    def evaluate(self, x: Sequence[Fraction]) -> Fraction:
        return max(c + dot(exponent, x) for exponent, c in self.terms)

    def pieces(self) -> List[AffinePiece]:
        return [
            AffinePiece(as_vector(exponent), c, index, exponent)
            for index, (exponent, c) in enumerate(self.terms)
        ]

    def to_json(self) -> Dict[str, Any]:
        return {
            "terms": [
                {"exponent": list(exponent), "coefficient": vector_to_json([c])[0]}
                for exponent, c in self.terms
            ]
        }


def _strongest(pieces: Sequence[AffinePiece]) -> List[AffinePiece]:
    """Из кусков с одинаковым наклоном оставляет кусок с наибольшей константой"""
    best: Dict[Vector, AffinePiece] = {}
    for piece in pieces:
        current = best.get(piece.slope)
        if current is None or piece.constant > current.constant:
            best[piece.slope] = piece
    return [best[slope] for slope in sorted(best)]


def _tie_row(winner: AffinePiece, other: AffinePiece) -> Row:
    """other·x ≤ winner·x в виде a·x ≤ c"""
    return vec_sub(other.slope, winner.slope), winner.constant - other.constant


def _is_active(rows: Sequence[Row], dim: int) -> bool:
    """Область куска имеет внутренность: max t при a·x + t ≤ c положителен"""
    if not rows:
        return True
    lifted = [(tuple(a) + (Fraction(1),), c) for a, c in rows]
    lifted.append((tuple([Fraction(0)] * dim) + (Fraction(1),), Fraction(1)))
    result = maximize(lifted, tuple([Fraction(0)] * dim) + (Fraction(1),), dim + 1)
    return result.is_optimal and result.value > 0


def corner_locus(pieces: Sequence[AffinePiece], dim: int,
                 region: Optional[RationalPolyhedron] = None) -> List[Cell]:
    """
    Угловое множество выпуклой кусочно-аффинной функции max {σ·x + c}

    Для каждого куска j с непустой внутренностью области R_j берутся его
    грани, на которых он совпадает с соседом k; грань пересекается с region
    и остается, если имеет размерность n − 1. Вес равен решеточной длине
    σ_j − σ_k.

    Args:
        pieces: Аффинные куски (на region их максимум должен совпадать с функцией)
        dim: Размерность пространства
        region: Область, на которой строится множество (None для всего R^n)

    Returns:
        Список клеток с V-представлением
    """
    strongest = _strongest(pieces)
    areas: Dict[int, RationalPolyhedron] = {}
    for j, piece in enumerate(strongest):
        rows = [_tie_row(piece, other) for k, other in enumerate(strongest) if k != j]
        if _is_active(rows, dim):
            areas[j] = remove_redundancy(RationalPolyhedron.from_constraints(dim, rows))
    logger.debug(f"Угловое множество: {len(strongest)} кусков, {len(areas)} активных")

    extra = region.all_rows if region is not None else []
    cells: List[Cell] = []
    for j, area in areas.items():
        neighbours = {}
        for k in areas:
            if k > j:
                neighbours[canonical_row(*_tie_row(strongest[j], strongest[k]))] = k

        for facet in area.inequalities:
            k = neighbours.get(canonical_row(facet.a, facet.c))
            if k is None:
                continue
            others = [(row.a, row.c) for row in area.inequalities if row is not facet]
            candidate = RationalPolyhedron.from_constraints(dim, others + extra, [(facet.a, facet.c)])
            if is_empty(candidate):
                continue
            reduced = remove_redundancy(candidate)
            if dim - len(reduced.equalities) != dim - 1:
                continue
            difference = vec_sub(strongest[j].slope, strongest[k].slope)
            cells.append(Cell(
                polyhedron=with_vertices(reduced),
                weight=lattice_length([int(a) for a in difference]),
                normal=primitive_integer_vector(difference),
            ))
    return cells


def _cell_key(complex_: WeightedComplex, cell: Cell) -> Tuple:
    if len(cell.vertices) == 1:
        return (complex_.coset_key(cell.vertices[0]),)
    start, end = cell.vertices
    return min(
        (complex_.coset_key(start), vec_sub(end, start)),
        (complex_.coset_key(end), vec_sub(start, end)),
    )


def glue_cells(cells: Sequence[Cell], torus: TorusSpec) -> WeightedComplex:
    """
    Склейка клеток замкнутой фундаментальной области по решетке

    Клетки на границе области встречаются дважды (сдвинутыми на λ);
    остается по одной клетке на класс.
    """
    draft = WeightedComplex(torus.dim, tuple(cells), torus)
    seen = set()
    kept = []
    for cell in cells:
        key = _cell_key(draft, cell)
        if key in seen:
            continue
        seen.add(key)
        kept.append(cell)
    return WeightedComplex(torus.dim, tuple(kept), torus)


def _ensure_balanced(complex_: WeightedComplex) -> WeightedComplex:
    report = validate_balancing(complex_)
    if not report.balanced:
        raise InternalConsistencyError(
            f"Угловое множество не сбалансировано в {report.face}: сумма {report.residual}"
        )
    return complex_


def divisor_from_section(section: ThetaSection) -> WeightedComplex:
    """
    Дивизор тэта-функции на торе (в координатах редуцированного тора)

    Угловое множество строится на ячейке Вороного с центром в нуле, которая
    является замкнутой фундаментальной областью Λ, и склеивается по решетке.

    Args:
        section: Ненулевое сечение

    Returns:
        Сбалансированный WeightedComplex с заданным torus

    Raises:
        NoSections: Для нулевого сечения
        UnsupportedDimension: Если размерность тора больше 2
    """
    if section.is_zero_section:
        raise NoSections("У нулевого сечения нет дивизора")
    basis = section.basis
    torus = basis.core.torus
    if basis.dim == 0:
        return WeightedComplex(0, (), torus)
    if basis.dim > 2:
        raise UnsupportedDimension(f"Дивизоры строятся только для n ≤ 2, получено {basis.dim}")

    origin = tuple(Fraction(0) for _ in range(basis.dim))
    pieces = []
    for source in section.support:
        shift = section.coeffs[source].fraction
        pieces.extend(p.shifted(shift) for p in basis.pieces_around(source, origin))

    cells = corner_locus(pieces, basis.dim, basis.voronoi.polyhedron)
    complex_ = glue_cells(cells, torus)
    logger.info(f"Дивизор сечения: {len(complex_.cells)} клеток")
    return _ensure_balanced(complex_)


def divisor_from_polynomial(polynomial: TropicalPolynomial) -> WeightedComplex:
    """
    Дивизор тропического многочлена на R^n, n ≤ 2

    Raises:
        UnsupportedDimension: Если n не равно 1 или 2
    """
    if polynomial.dim not in (1, 2):
        raise UnsupportedDimension(f"Дивизоры многочленов строятся для n = 1, 2, получено {polynomial.dim}")
    cells = corner_locus(polynomial.pieces(), polynomial.dim)
    return _ensure_balanced(WeightedComplex(polynomial.dim, tuple(cells)))


def is_on_corner_locus(section: ThetaSection, x: Sequence[Fraction]) -> bool:
    """
    Лежит ли точка x исходного R^n на дивизоре сечения

    Точка лежит на угловом множестве, если максимум достигается кусками
    хотя бы двух разных наклонов.
    """
    if section.is_zero_section:
        raise NoSections("У нулевого сечения нет дивизора")
    basis = section.basis
    y = basis.to_core(x)
    if not basis.dim:
        return False
    value = section.evaluate_core(y).fraction
    slopes = set()
    for source in section.support:
        shift = section.coeffs[source].fraction
        for piece in basis.pieces_in_ball(source, y, Fraction(0)):
            if piece.value(y) + shift == value:
                slopes.add(piece.slope)
    return len(slopes) >= 2
