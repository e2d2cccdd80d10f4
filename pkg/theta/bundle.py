# theta/bundle.py
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Sequence, Tuple

from lattice.cokernel import alpha_membership, kernel_saturation
from lattice.linalg import (
    Matrix,
    Vector,
    as_vector,
    inverse,
    mat_mul,
    mat_vec,
    symmetric_inertia,
    transpose,
    vec_add,
    vec_sub,
)
from lattice.models import IntVector, KernelSaturation, PolarizationForm, TorusSpec, vector_to_json
from utils.errors import AmbientMismatch, InvalidSpec, NotApplicable
from utils.logger import get_logger

logger = get_logger(__name__)


class BundleCase(str, Enum):
    """Классификация L(Q, α) по знаку формы и положению α"""

    POSITIVE_DEFINITE = "positive_definite"
    SEMIDEFINITE_SECTIONFUL = "semidefinite_sectionful"
    SEMIDEFINITE_SECTIONLESS = "semidefinite_sectionless"
    NEGATIVE_DEFINITE = "negative_definite"
    NEGATIVE_SEMIDEFINITE = "negative_semidefinite"
    INDEFINITE = "indefinite"

    @property
    def is_sectionful(self) -> bool:
        return self in (BundleCase.POSITIVE_DEFINITE, BundleCase.SEMIDEFINITE_SECTIONFUL)


@dataclass(frozen=True)
class BundleSpec:
    """Линейное расслоение L(Q, α) на торе R^n/Λ"""

    torus: TorusSpec
    form: PolarizationForm
    alpha: Vector

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_vector(self.alpha))
        if len(self.alpha) != self.torus.dim:
            raise InvalidSpec(f"Длина α ({len(self.alpha)}) не совпадает с размерностью тора ({self.torus.dim})")
        self.form.check_integrality(self.torus)

    @property
    def dim(self) -> int:
        return self.torus.dim

    def beta(self, lam: Sequence[Fraction]) -> Fraction:
        """β(λ) = α(λ) + ½Q(λ, λ)"""
        q_lam = mat_vec(self.form.matrix, lam)
        return sum((a * b for a, b in zip(self.alpha, lam)), Fraction(0)) + \
            sum((a * b for a, b in zip(q_lam, lam)), Fraction(0)) / 2

    def to_json(self) -> Dict[str, Any]:
        return {
            "lattice": self.torus.to_json(),
            "Q": self.form.to_json(),
            "alpha": vector_to_json(self.alpha),
        }


def classify_bundle(spec: BundleSpec) -> BundleCase:
    """
    Классификация расслоения по точной сигнатуре Q

    Args:
        spec: Расслоение

    Returns:
        BundleCase; для полуопределенной формы решает принадлежность
        α ∈ Im(q_R) + (Z^n)*
    """
    positive, negative, zero = symmetric_inertia(spec.form.matrix) if spec.dim else (0, 0, 0)

    if negative == 0 and zero == 0:
        return BundleCase.POSITIVE_DEFINITE
    if positive == 0 and zero == 0:
        return BundleCase.NEGATIVE_DEFINITE
    if negative == 0:
        membership = alpha_membership(spec.alpha, spec.form, spec.torus)
        if membership.member:
            return BundleCase.SEMIDEFINITE_SECTIONFUL
        return BundleCase.SEMIDEFINITE_SECTIONLESS
    if positive == 0:
        return BundleCase.NEGATIVE_SEMIDEFINITE
    return BundleCase.INDEFINITE


def translate_bundle(spec: BundleSpec, r: Sequence[Fraction]) -> BundleSpec:
    """Обратный образ при сдвиге на r: L(Q, α + Q_R(·, r))"""
    if len(r) != spec.dim:
        raise InvalidSpec("Размерность вектора сдвига не совпадает с размерностью тора")
    return BundleSpec(spec.torus, spec.form, vec_add(spec.alpha, mat_vec(spec.form.matrix, r)))


def negate_bundle(spec: BundleSpec) -> BundleSpec:
    """L(−Q, −α), расслоение дивизора −D"""
    return BundleSpec(spec.torus, spec.form.negated(), tuple(-a for a in spec.alpha))


def tensor_bundles(first: BundleSpec, second: BundleSpec) -> BundleSpec:
    """
    Тензорное произведение L(Q1 + Q2, α1 + α2)

    Raises:
        AmbientMismatch: Если расслоения заданы на разных торах
    """
    if first.torus != second.torus:
        raise AmbientMismatch("Тензорное произведение требует общего тора")
    matrix = tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(first.form.matrix, second.form.matrix))
    return BundleSpec(first.torus, PolarizationForm(matrix), vec_add(first.alpha, second.alpha))


def normalize_gamma(spec: BundleSpec) -> Tuple[BundleSpec, IntVector]:
    """
    Перенос целой части α: L(Q, α) ≅ L(Q, α − γ) с α − γ ∈ Im(q_R)

    Raises:
        NotApplicable: Если α ∉ Im(q_R) + (Z^n)*
    """
    membership = alpha_membership(spec.alpha, spec.form, spec.torus)
    if not membership.member:
        raise NotApplicable(f"α не лежит в Im(q_R) + (Z^n)*, свидетель {membership.witness}")
    return BundleSpec(spec.torus, spec.form, vec_sub(spec.alpha, membership.gamma)), membership.gamma


@dataclass(frozen=True)
class ReducedBundle:
    """
    Спуск полуопределенного расслоения на R^n/Ker(q_R)

    Координаты: y = W^{-1} x, редуцированная точка состоит из первых k
    координат y. Функция на исходном торе равна f(P W^{-1} x) + γ·x.
    """

    original: BundleSpec
    bundle: BundleSpec
    saturation: KernelSaturation
    gamma: IntVector

    @property
    def rank(self) -> int:
        return self.saturation.rank

    @property
    def splitting(self) -> Matrix:
        return self.saturation.splitting

    def project(self, x: Sequence[Fraction]) -> Vector:
        return mat_vec(inverse(self.splitting), x)[:self.rank]

    def lift_covector(self, b: Sequence[int]) -> IntVector:
        """Ковектор на R^k как ковектор на R^n, зануленный на ядре"""
        padded = as_vector(list(b) + [0] * (self.original.dim - self.rank))
        return tuple(int(a) for a in mat_vec(transpose(inverse(self.splitting)), padded))

    def restrict_covector(self, a: Sequence[int]) -> IntVector:
        """
        Ограничение целого ковектора на R^k

        Raises:
            NotApplicable: Если ковектор не обращается в ноль на ядре
        """
        shifted = mat_vec(transpose(self.splitting), as_vector(a))
        if any(v != 0 for v in shifted[self.rank:]):
            raise NotApplicable(f"Ковектор {tuple(a)} не обращается в ноль на Ker(q_R)")
        return tuple(int(v) for v in shifted[:self.rank])

    def to_json(self) -> Dict[str, Any]:
        return {
            "reduced": self.bundle.to_json(),
            "gamma": list(self.gamma),
            "kernel": self.saturation.to_json(),
        }


def reduce_semidefinite(spec: BundleSpec) -> ReducedBundle:
    """
    Редукция полуопределенного расслоения с сечениями к положительно определенному

    Args:
        spec: Расслоение с Q ≥ 0, Ker(q_R) ≠ 0 и α ∈ Im(q_R) + (Z^n)*

    Returns:
        ReducedBundle: тор Λ̄ = образ Λ в R^k, форма Q̄ = (W^T Q W)_{k×k}, ᾱ = (W^T (α − γ))_k

    Raises:
        NotApplicable: Для определенной формы или расслоения без сечений
    """
    case = classify_bundle(spec)
    if case != BundleCase.SEMIDEFINITE_SECTIONFUL:
        raise NotApplicable(f"Редукция применима только к полуопределенным расслоениям с сечениями, получено {case.value}")

    normalized, gamma = normalize_gamma(spec)
    saturation = kernel_saturation(spec.form, spec.torus)
    k = saturation.rank
    w = saturation.splitting

    full_form = mat_mul(mat_mul(transpose(w), spec.form.matrix), w)
    reduced_form = PolarizationForm(tuple(tuple(row[:k]) for row in full_form[:k]))
    reduced_alpha = mat_vec(transpose(w), normalized.alpha)[:k]
    reduced_torus = TorusSpec(k, saturation.reduced_lattice)

    logger.info(f"Редукция полуопределенного расслоения: n={spec.dim} -> k={k}, γ={gamma}")
    return ReducedBundle(
        original=spec,
        bundle=BundleSpec(reduced_torus, reduced_form, reduced_alpha),
        saturation=saturation,
        gamma=gamma,
    )
