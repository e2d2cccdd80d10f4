# theta/sections.py
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from lattice.linalg import Vector, as_vector, bilinear, dot, quadratic, vec_add
from polyhedra.lp import maximize
from polyhedra.models import RationalPolyhedron
from polyhedra.representations import vertex_enumeration
from theta.generators import AffinePiece, GeneratorBasis
from tropical.matrix import TropicalVector
from tropical.scalar import NEG_INF, ZERO, TropicalScalar, trop_sum
from utils.errors import InternalConsistencyError, InvalidSpec, NoSections
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class ThetaSection:
    """Тэта-функция max_b {Θ_b + s_b}, заданная коэффициентами (s_b) ∈ T^B"""

    basis: GeneratorBasis
    coeffs: TropicalVector

    def __post_init__(self):
        coeffs = tuple(c if isinstance(c, TropicalScalar) else TropicalScalar.from_json(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) != self.basis.size:
            raise InvalidSpec(f"Ожидалось {self.basis.size} коэффициентов, получено {len(coeffs)}")

    @classmethod
    def generator(cls, basis: GeneratorBasis, index: int, shift: Fraction = Fraction(0)) -> "ThetaSection":
        coeffs = tuple(TropicalScalar(Fraction(shift)) if i == index else NEG_INF for i in range(basis.size))
        return cls(basis, coeffs)

    @classmethod
    def xi(cls, basis: GeneratorBasis) -> "ThetaSection":
        """Ξ = max_b Θ_b"""
        return cls(basis, tuple(ZERO for _ in range(basis.size)))

    @property
    def is_zero_section(self) -> bool:
        return all(c.is_neg_inf for c in self.coeffs)

    @property
    def support(self) -> List[int]:
        return [i for i, c in enumerate(self.coeffs) if not c.is_neg_inf]

    def evaluate_core(self, y: Sequence[Fraction]) -> TropicalScalar:
        return trop_sum(
            TropicalScalar(self.basis.evaluate(self.basis.reps[i], y) + self.coeffs[i].fraction)
            for i in self.support
        )

    def evaluate(self, x: Sequence[Fraction]) -> TropicalScalar:
        """Значение в точке исходного R^n (для расслоения с вынесенным γ)"""
        return self.evaluate_core(self.basis.to_core(x))

    def evaluate_original(self, x: Sequence[Fraction]) -> TropicalScalar:
        """Значение как сечения исходного L(Q, α): добавляется γ·x"""
        value = self.evaluate(x)
        if value.is_neg_inf:
            return value
        return TropicalScalar(value.fraction + dot(self.basis.gamma, x))

    def quasi_periodicity_defect(self, x: Sequence[Fraction], eta: Sequence[Fraction]) -> Fraction:
        """
        Θ(x + η) − Θ(x) − Q(η, x) − ½Q(η, η) − α(η) для исходного расслоения

        Равно нулю для η ∈ Λ; для Ξ также для η ∈ q_R^{-1}((Z^n)*).
        """
        if self.is_zero_section:
            raise NoSections("Квазипериодичность не определена для нулевого сечения")
        spec = self.basis.spec
        x = as_vector(x)
        eta = as_vector(eta)
        shifted = self.evaluate_original(vec_add(x, eta)).fraction
        base = self.evaluate_original(x).fraction
        return shifted - base - bilinear(spec.form.matrix, eta, x) - quadratic(spec.form.matrix, eta) / 2 \
            - dot(spec.alpha, eta)

    def pieces_on_cell(self, cell: int) -> List[AffinePiece]:
        """Куски всех Θ_{b'} + s_{b'} с конечным s, действующие на D_0^{b_cell}"""
        pieces = []
        for source in self.support:
            shift = self.coeffs[source].fraction
            pieces.extend(p.shifted(shift) for p in self.basis.pieces_on_cell(cell, source))
        return pieces

    def normalize(self) -> "ThetaSection":
        """Каноническая форма φ(π(s)): все коэффициенты осмысленны"""
        return ThetaSection(self.basis, phi_embed(self))

    def to_json(self) -> Dict[str, Any]:
        return {
            "B": [list(b) for b in self.basis.lifted_reps],
            "coefficients": [c.to_json() for c in self.coeffs],
        }


def pi_map(basis: GeneratorBasis, coeffs: Sequence) -> ThetaSection:
    """π: T^B → Γ(X, L), (s_b) ↦ max_b {Θ_b + s_b}"""
    return ThetaSection(basis, tuple(coeffs))


def lifted_rows(section: ThetaSection, cell: int,
                exclude: Optional[int] = None) -> List[Tuple[Vector, Fraction]]:
    """
    Ограничения на (x, u): x ∈ D_0^{b_cell}, u ≥ кусков сечения

    Args:
        section: Сечение
        cell: Номер ячейки
        exclude: Номер образующей, куски которой не учитываются

    Returns:
        Строки a·(x, u) ≤ c
    """
    rows: List[Tuple[Vector, Fraction]] = []
    for row in section.basis.fundamental_cell(cell).inequalities:
        rows.append((tuple(row.a) + (Fraction(0),), row.c))
    for piece in section.pieces_on_cell(cell):
        if piece.source == exclude:
            continue
        rows.append((tuple(piece.slope) + (Fraction(-1),), -piece.constant))
    return rows


def legendre_at_representative(section: ThetaSection, index: int) -> Fraction:
    """
    Θ̂(b) = max_x {b·x − Θ(x)} для b ∈ B

    Максимум достигается на D_0^b, где задача сводится к LP по (x, u).

    Raises:
        NoSections: Для нулевого сечения
    """
    if section.is_zero_section:
        raise NoSections("Преобразование Лежандра нулевого сечения равно +∞")
    basis = section.basis
    objective = tuple(Fraction(v) for v in basis.reps[index]) + (Fraction(-1),)
    result = maximize(lifted_rows(section, index), objective, basis.dim + 1)
    if not result.is_optimal:
        raise InternalConsistencyError(f"LP для Θ̂({basis.reps[index]}) завершилась статусом {result.status.value}")
    return result.value


def legendre_transform(section: ThetaSection, a: Sequence[int]) -> Fraction:
    """
    Преобразование Лежандра Θ̂(a) в целом ковекторе a

    a = b + q(μ) сводится к представителю b по квазипериодичности
    Θ̂(b + q(μ)) = Θ̂(b) + b·μ + ½Q(μ, μ) − Q(r, μ).

    Args:
        section: Сечение
        a: Целый ковектор исходного R^n

    Returns:
        Точное значение

    Raises:
        NotApplicable: Если a не обращается в ноль на ядре полуопределенной формы
    """
    basis = section.basis
    core = basis.core_covector(a)
    index, mu = basis.reduce(core)
    value = legendre_at_representative(section, index)
    if not basis.dim:
        return value
    b = basis.reps[index]
    return value + dot(b, mu) + quadratic(basis.form, mu) / 2 - bilinear(basis.form, basis.r, mu)


def phi_embed(section: ThetaSection) -> TropicalVector:
    """
    Координаты φ^b(Θ) = r(b) − Θ̂(b)

    Returns:
        Вектор из T^B (все −∞ для нулевого сечения)
    """
    basis = section.basis
    if section.is_zero_section:
        return tuple(NEG_INF for _ in range(basis.size))
    return tuple(
        TropicalScalar(basis.r_of_b[i] - legendre_at_representative(section, i))
        for i in range(basis.size)
    )


def phi_by_vertices(section: ThetaSection) -> TropicalVector:
    """
    φ^b как минимум Θ − (b·x − r(b)) по D_0^b прямым перебором (оракул)

    Минимум достигается в вершине надграфика над D_0^b; вершины
    находятся методом двойного описания.
    """
    basis = section.basis
    if section.is_zero_section:
        return tuple(NEG_INF for _ in range(basis.size))
    result = []
    for i in range(basis.size):
        lifted = RationalPolyhedron.from_constraints(basis.dim + 1, lifted_rows(section, i))
        vertices = vertex_enumeration(lifted).vertices
        b = basis.reps[i]
        best = min(v[-1] - dot(b, v[:-1]) + basis.r_of_b[i] for v in vertices)
        result.append(TropicalScalar(best))
    logger.debug(f"φ перебором вершин: {[c.to_json() for c in result]}")
    return tuple(result)
