# cli/rr_check.py
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Optional

from divisors.intersection import self_intersection_formula
from lattice.cokernel import cokernel_summary, oriented_integral_determinant
from lattice.linalg import determinant
from lattice.models import vector_to_json
from theta.bundle import BundleCase, BundleSpec, classify_bundle, negate_bundle
from theta.config import ThetaConfig
from theta.section_polyhedron import h0
from utils.errors import InternalConsistencyError, UnsupportedDimension
from utils.logger import get_logger

logger = get_logger(__name__)


class RRCase(str, Enum):
    """Случаи неравенства Римана-Роха на абелевой поверхности"""

    DEFINITE = "case_1_definite"
    SEMIDEFINITE = "case_2_semidefinite"
    ZERO_FORM = "case_2_zero_form"
    SECTIONLESS = "case_2_sectionless"
    INDEFINITE = "case_3_indefinite"


@dataclass(frozen=True)
class RRReport:
    """
    h⁰(X, D) + h⁰(X, −D) ≥ ½D² вместе с классификацией случая

    det_integral это определитель q: Λ → (Z^2)* в согласованно ориентированных
    целых базисах (равен ½D²), det_standard это det Q_R в стандартных координатах.
    """

    case: RRCase
    h0_D: int
    h0_negD: int
    half_D2: Fraction
    inequality_holds: bool
    strict: bool
    det_integral: Fraction
    det_standard: Fraction

    def __post_init__(self):
        total = self.h0_D + self.h0_negD
        if self.inequality_holds != (total >= self.half_D2) or self.strict != (total > self.half_D2):
            raise InternalConsistencyError("Флаги RRReport не согласованы с числами")

    @classmethod
    def from_values(cls, case: RRCase, h0_d: int, h0_neg: int, half_d2: Fraction,
                    det_integral: Fraction, det_standard: Fraction) -> "RRReport":
        total = h0_d + h0_neg
        return cls(
            case=case,
            h0_D=h0_d,
            h0_negD=h0_neg,
            half_D2=half_d2,
            inequality_holds=total >= half_d2,
            strict=total > half_d2,
            det_integral=det_integral,
            det_standard=det_standard,
        )

    def to_json(self) -> Dict[str, Any]:
        return {
            "case": self.case.value,
            "h0_D": self.h0_D,
            "h0_negD": self.h0_negD,
            "half_D2": vector_to_json([self.half_D2])[0],
            "inequality_holds": self.inequality_holds,
            "strict": self.strict,
            "det_q_integral_bases": vector_to_json([self.det_integral])[0],
            "det_Q_standard_basis": vector_to_json([self.det_standard])[0],
        }


def rr_case(spec: BundleSpec) -> RRCase:
    """Номер случая по сигнатуре Q и положению α"""
    case = classify_bundle(spec)
    if case in (BundleCase.POSITIVE_DEFINITE, BundleCase.NEGATIVE_DEFINITE):
        return RRCase.DEFINITE
    if case == BundleCase.INDEFINITE:
        return RRCase.INDEFINITE
    positive = spec if case != BundleCase.NEGATIVE_SEMIDEFINITE else negate_bundle(spec)
    if classify_bundle(positive) == BundleCase.SEMIDEFINITE_SECTIONLESS:
        return RRCase.SECTIONLESS
    if spec.form.is_zero:
        return RRCase.ZERO_FORM
    return RRCase.SEMIDEFINITE


def check_case_table(report: RRReport, torsion_order: int) -> None:
    """
    Сверка с таблицей случаев: равенство, 2 > 0, 0 = 0, 0 > det

    Для полуопределенной Q с сечениями сумма h⁰ равна порядку кручения Cok q.

    Raises:
        InternalConsistencyError: Если отчет противоречит своему случаю
    """
    total = report.h0_D + report.h0_negD
    expected = {
        RRCase.DEFINITE: total == report.half_D2 == abs(report.det_integral),
        RRCase.SEMIDEFINITE: report.strict and report.half_D2 == 0 and min(report.h0_D, report.h0_negD) == 0
                              and total == torsion_order,
        RRCase.ZERO_FORM: total == 2 and report.half_D2 == 0,
        RRCase.SECTIONLESS: total == 0 and report.half_D2 == 0,
        RRCase.INDEFINITE: total == 0 and report.half_D2 == report.det_integral < 0,
    }[report.case]
    if not expected:
        raise InternalConsistencyError(
            f"Случай {report.case.value}: h⁰(D) + h⁰(−D) = {total}, ½D² = {report.half_D2}"
        )


def rr_check(spec: BundleSpec, config: Optional[ThetaConfig] = None) -> RRReport:
    """
    Проверка неравенства Римана-Роха для расслоения на 2-торе

    Обе стороны считаются независимо: h⁰ через коядро q, ½D² через n!·det q.

    Args:
        spec: Расслоение на R^2/Λ
        config: Конфигурация

    Returns:
        RRReport

    Raises:
        UnsupportedDimension: Если n ≠ 2
        InternalConsistencyError: Если результат не совпал с таблицей случаев
    """
    if spec.dim != 2:
        raise UnsupportedDimension(f"Проверка Римана-Роха реализована для n = 2, получено {spec.dim}")

    case = rr_case(spec)
    h0_d = h0(spec, config)
    h0_neg = h0(negate_bundle(spec), config)
    half_d2 = self_intersection_formula(spec) / 2

    report = RRReport.from_values(
        case, h0_d, h0_neg, half_d2,
        det_integral=oriented_integral_determinant(spec.torus, spec.form),
        det_standard=determinant(spec.form.matrix),
    )
    check_case_table(report, cokernel_summary(spec.torus, spec.form).torsion_order)
    logger.info(
        f"Риман-Рох ({case.value}): {h0_d} + {h0_neg} "
        f"{'>' if report.strict else '='} ½D² = {half_d2}"
    )
    return report
