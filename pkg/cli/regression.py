# cli/regression.py
import asyncio
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, TypeVar

from cli.rr_check import RRCase, RRReport, rr_check
from lattice.models import PolarizationForm, TorusSpec
from theta.bundle import BundleSpec, negate_bundle
from theta.config import ThetaConfig
from utils.errors import InternalConsistencyError
from utils.logger import get_logger

logger = get_logger(__name__)

T = TypeVar("T")


@dataclass(frozen=True)
class RegressionCase:
    name: str
    spec: BundleSpec
    expected: RRCase


def _bundle(lattice, form, alpha) -> BundleSpec:
    return BundleSpec(TorusSpec.from_rows(lattice), PolarizationForm.from_rows(form), tuple(Fraction(a) for a in alpha))


def regression_matrix() -> List[RegressionCase]:
    """Таблица случаев неравенства Римана-Роха на 2-торе"""
    standard = [[1, 0], [0, 1]]
    hexagonal = _bundle([["4/3", "-2/3"], ["-2/3", "4/3"]], [[2, 1], [1, 2]], (0, 0))
    return [
        RegressionCase("definite_hexagonal", hexagonal, RRCase.DEFINITE),
        RegressionCase("negative_definite_hexagonal", negate_bundle(hexagonal), RRCase.DEFINITE),
        RegressionCase("semidefinite_rank_one", _bundle(standard, [[2, 0], [0, 0]], (0, 0)), RRCase.SEMIDEFINITE),
        RegressionCase("semidefinite_fractional_kernel_alpha", _bundle(standard, [[2, 0], [0, 0]], (0, "1/2")),
                       RRCase.SECTIONLESS),
        RegressionCase("zero_form_integral_alpha", _bundle(standard, [[0, 0], [0, 0]], (0, 0)), RRCase.ZERO_FORM),
        RegressionCase("zero_form_fractional_alpha", _bundle(standard, [[0, 0], [0, 0]], ("1/2", 0)),
                       RRCase.SECTIONLESS),
        RegressionCase("indefinite", _bundle(standard, [[1, 0], [0, -1]], (0, 0)), RRCase.INDEFINITE),
    ]


async def run_concurrently(jobs: Sequence[Callable[[], T]], workers: int) -> List[T]:
    """
    Выполнение независимых задач в потоках, не более workers одновременно

    Args:
        jobs: Функции без аргументов
        workers: Предел параллельности

    Returns:
        Результаты в порядке jobs
    """
    semaphore = asyncio.Semaphore(workers)

    async def worker(job: Callable[[], T]) -> T:
        async with semaphore:
            return await asyncio.to_thread(job)

    return list(await asyncio.gather(*(worker(job) for job in jobs)))


def _checked(case: RegressionCase, config: ThetaConfig) -> RRReport:
    report = rr_check(case.spec, config)
    if report.case != case.expected:
        raise InternalConsistencyError(
            f"{case.name}: ожидался случай {case.expected.value}, получен {report.case.value}"
        )
    return report


async def run_regression(config: Optional[ThetaConfig] = None) -> List[Dict[str, Any]]:
    """
    Параллельный прогон таблицы случаев Римана-Роха

    Raises:
        InternalConsistencyError: Если случай или числа не совпали с таблицей
    """
    config = config or ThetaConfig()
    cases = regression_matrix()
    logger.info(f"Прогон таблицы Римана-Роха: {len(cases)} расслоений, {config.parallel_workers} потоков")
    reports = await run_concurrently([lambda c=case: _checked(c, config) for case in cases], config.parallel_workers)
    return [{"name": case.name, **report.to_json()} for case, report in zip(cases, reports)]
