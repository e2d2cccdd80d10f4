# cli/commands.py
import argparse
from dataclasses import replace
from pathlib import Path
from typing import Any, Dict, Optional

from cli.config import LOG_LEVELS, CliConfig
from cli.figures import emit_figures
from cli.models import SpecDocument
from cli.oracle import OracleRunner
from cli.regression import run_concurrently, run_regression
from cli.rr_check import rr_check
from cli.serializers import sections_payload
from cli.spec_parser import SpecParser
from divisors.balancing import validate_balancing
from divisors.corner_locus import divisor_from_polynomial, divisor_from_section
from divisors.intersection import self_intersection_formula, stable_intersection_2d, stable_self_intersection
from divisors.vandermonde import vandermonde_interpolate
from lattice.models import vector_to_json
from theta.config import ThetaConfig
from theta.generators import GeneratorBasis
from theta.section_polyhedron import h0_report, section_polyhedron
from theta.sections import ThetaSection
from utils.logger import get_logger

SPEC_COMMANDS = {
    "sections": "Базис образующих Θ_b и строение Cok(q)",
    "h0": "Размерность h⁰(X, L) двумя способами",
    "polyhedron": "Многогранник сечений Im φ и его сечение",
    "divisor": "Дивизор сечения на торе",
    "intersect": "Устойчивое пересечение двух кривых",
    "self-intersect": "D² по формуле и через устойчивое пересечение",
    "interpolate": "Сечение, дивизор которого проходит через |B| − 1 точек",
    "figures": "SVG-рисунки дивизора, сечения многогранника и самопересечения",
}


def build_parser() -> argparse.ArgumentParser:
    """Парсер аргументов: подкоманда, входные файлы и общие флаги"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--slice-coordinate", type=int, default=None, help="Номер b, фиксируемого в сечении")
    common.add_argument("--oracle", action="store_true", default=None, help="Медленные перекрестные проверки")
    common.add_argument("--svg-out", default=None, help="Каталог для SVG")
    common.add_argument("--max-box", type=int, default=None, help="Предел перебора решетки")
    common.add_argument("--log-level", choices=LOG_LEVELS, default=None, help="Уровень логирования")

    parser = argparse.ArgumentParser(prog="tropical-theta", description="Тропические тэта-функции на торах")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, help_text in SPEC_COMMANDS.items():
        sub = subparsers.add_parser(name, parents=[common], help=help_text)
        sub.add_argument("spec", help="JSON-файл с расслоением")
    rr = subparsers.add_parser("rr-check", parents=[common], help="Неравенство Римана-Роха на 2-торе")
    rr.add_argument("spec", nargs="+", help="JSON-файлы с расслоениями")
    subparsers.add_parser("rr-matrix", parents=[common], help="Таблица случаев Римана-Роха")
    return parser


def cli_config_from_args(args: argparse.Namespace, base: Optional[CliConfig] = None) -> CliConfig:
    """Флаги командной строки поверх значений окружения"""
    config = base or CliConfig.from_env()
    overrides = {
        "slice_coordinate": args.slice_coordinate,
        "oracle": args.oracle,
        "svg_out": args.svg_out,
        "log_level": args.log_level,
    }
    return replace(config, **{k: v for k, v in overrides.items() if v is not None})


class CommandRunner:
    """Исполнение подкоманд; каждый обработчик возвращает JSON-совместимый объект"""

    def __init__(self, cli_config: CliConfig, theta_config: ThetaConfig,
                 max_box: Optional[int] = None, slice_flag: Optional[int] = None):
        self.logger = get_logger(__name__)
        self.cli_config = cli_config
        self.theta_config = theta_config
        self.max_box = max_box
        self.slice_flag = slice_flag

    def _theta_config(self, document: SpecDocument) -> ThetaConfig:
        max_box = self.max_box if self.max_box is not None else document.options.max_box
        if max_box is None:
            return self.theta_config
        return replace(self.theta_config, max_box=max_box)

    def _slice_index(self, document: SpecDocument) -> int:
        """Флаг, затем options.slice_coordinate, затем окружение"""
        for value in (self.slice_flag, document.options.slice_coordinate):
            if value is not None:
                return value
        return self.cli_config.slice_coordinate

    def _with_oracle(self, payload: Dict[str, Any], basis: GeneratorBasis, section: ThetaSection) -> Dict[str, Any]:
        if self.cli_config.oracle:
            payload["oracle"] = OracleRunner(basis).run(section).to_json()
        return payload

    async def run(self, args: argparse.Namespace) -> Any:
        self.logger.info(f"Подкоманда {args.command}")
        if args.command == "rr-matrix":
            return await run_regression(self.theta_config)
        if args.command == "rr-check":
            return await self.rr_check(args.spec)

        document = SpecParser.parse_file(args.spec)
        handler = {
            "sections": self.sections,
            "h0": self.h0,
            "polyhedron": self.polyhedron,
            "divisor": self.divisor,
            "intersect": self.intersect,
            "self-intersect": self.self_intersect,
            "interpolate": self.interpolate,
            "figures": self.figures,
        }[args.command]
        return handler(document)

    def sections(self, document: SpecDocument) -> Dict[str, Any]:
        basis = GeneratorBasis(document.bundle, self._theta_config(document))
        return self._with_oracle(sections_payload(basis), basis, ThetaSection.xi(basis))

    def h0(self, document: SpecDocument) -> Dict[str, Any]:
        return h0_report(document.bundle, self._theta_config(document)).to_json()

    def polyhedron(self, document: SpecDocument) -> Dict[str, Any]:
        config = self._theta_config(document)
        basis = GeneratorBasis(document.bundle, config)
        result = section_polyhedron(document.bundle, config, self._slice_index(document), basis=basis)
        payload = result.to_json()
        payload["dimension"] = result.dimension
        payload["witness_points"] = [vector_to_json(p) for p in result.witness_points()]
        return self._with_oracle(payload, basis, ThetaSection.xi(basis))

    def divisor(self, document: SpecDocument) -> Dict[str, Any]:
        basis = GeneratorBasis(document.bundle, self._theta_config(document))
        section = SpecParser.section(basis, document.options.section)
        divisor = divisor_from_section(section)
        payload = {
            "section": section.to_json(),
            "divisor": divisor.to_json(),
            "balancing": validate_balancing(divisor).to_json(),
        }
        return self._with_oracle(payload, basis, section)

    def intersect(self, document: SpecDocument) -> Dict[str, Any]:
        options = document.options
        if options.polynomials:
            first_poly, second_poly = SpecParser.polynomial_pair(options.polynomials)
            first, second = divisor_from_polynomial(first_poly), divisor_from_polynomial(second_poly)
        else:
            basis = GeneratorBasis(document.bundle, self._theta_config(document))
            first = divisor_from_section(SpecParser.section(basis, options.section))
            second_raw = options.second_section if options.second_section is not None else options.section
            second = divisor_from_section(SpecParser.section(basis, second_raw))
        if options.shift is not None:
            second = second.translated(options.shift)
        return stable_intersection_2d(first, second, options.perturbation).to_json()

    def self_intersect(self, document: SpecDocument) -> Dict[str, Any]:
        spec = document.bundle
        payload: Dict[str, Any] = {"formula": vector_to_json([self_intersection_formula(spec)])[0], "stable": None}
        if spec.dim == 2:
            payload["stable"] = stable_self_intersection(spec, self._theta_config(document)).to_json()
        return payload

    def interpolate(self, document: SpecDocument) -> Dict[str, Any]:
        config = self._theta_config(document)
        basis = GeneratorBasis(document.bundle, config)
        section = vandermonde_interpolate(document.bundle, document.options.points, config, basis)
        payload: Dict[str, Any] = {
            "points": [vector_to_json(p) for p in document.options.points],
            "section": section.to_json(),
        }
        if basis.dim <= 2:
            payload["divisor"] = divisor_from_section(section).to_json()
        return payload

    def figures(self, document: SpecDocument) -> Dict[str, Any]:
        return emit_figures(
            document.bundle,
            document.options.figures,
            self.cli_config.svg_out,
            self._theta_config(document),
            self._slice_index(document),
            name=Path(document.source).stem,
        )

    async def rr_check(self, paths) -> Any:
        documents = [SpecParser.parse_file(path) for path in paths]
        jobs = [lambda d=d: rr_check(d.bundle, self._theta_config(d)).to_json() for d in documents]
        reports = await run_concurrently(jobs, self.theta_config.parallel_workers)
        if len(reports) == 1:
            return reports[0]
        return [{"spec": d.source, **report} for d, report in zip(documents, reports)]
