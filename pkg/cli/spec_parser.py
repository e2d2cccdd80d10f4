# cli/spec_parser.py
import json
from pathlib import Path
from typing import Any, Dict, Sequence, Tuple

from cli.models import FIGURE_KINDS, SpecDocument, SpecOptions
from cli.spec_validator import SpecValidator
from divisors.corner_locus import TropicalPolynomial
from lattice.linalg import Vector, as_matrix
from lattice.models import PolarizationForm, TorusSpec
from theta.bundle import BundleSpec
from theta.generators import GeneratorBasis
from theta.sections import ThetaSection, pi_map
from tropical.scalar import parse_rational
from utils.errors import InvalidSpec
from utils.logger import get_logger

logger = get_logger(__name__)


class SpecParser:
    """Парсер входных JSON-документов"""

    @staticmethod
    def parse(text: str, source: str = "<stdin>") -> SpecDocument:
        """
        Разбор документа {"lattice", "Q", "alpha", "options"}

        Args:
            text: Содержимое файла
            source: Имя источника для сообщений

        Returns:
            SpecDocument

        Raises:
            InvalidSpec: Если JSON некорректен или не проходит проверку
        """
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as e:
            raise InvalidSpec(f"{source}: некорректный JSON ({e.msg}, строка {e.lineno})")

        SpecValidator.validate(raw)

        lattice = as_matrix([[parse_rational(a) for a in row] for row in raw["lattice"]])
        torus = TorusSpec(len(lattice), lattice)
        form = PolarizationForm.from_rows([[parse_rational(a) for a in row] for row in raw["Q"]])
        alpha = tuple(parse_rational(a) for a in raw["alpha"])
        bundle = BundleSpec(torus, form, alpha)

        options = SpecParser._parse_options(raw.get("options", {}), torus.dim)
        document = SpecDocument(bundle=bundle, options=options, source=source)
        logger.info(f"Разобран документ {document}")
        return document

    @staticmethod
    def parse_file(path: str) -> SpecDocument:
        """
        Чтение и разбор файла

        Raises:
            InvalidSpec: Если файл не читается
        """
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise InvalidSpec(f"Не удалось прочитать {path}: {e.strerror}")
        return SpecParser.parse(text, source=path)

    @staticmethod
    def _parse_options(raw: Dict[str, Any], dim: int) -> SpecOptions:
        polynomials = tuple(TropicalPolynomial.from_json(p) for p in raw.get("polynomials", []))
        points = tuple(SpecParser._parse_point(p, dim) for p in raw.get("points", []))
        shift = SpecParser._parse_point(raw["shift"], dim) if "shift" in raw else None

        return SpecOptions(
            section=raw.get("section", "xi"),
            second_section=raw.get("second_section"),
            polynomials=polynomials,
            points=points,
            shift=shift,
            perturbation=raw.get("perturbation", 0),
            slice_coordinate=raw.get("slice_coordinate"),
            max_box=raw.get("max_box"),
            figures=tuple(raw.get("figures", FIGURE_KINDS)),
        )

    @staticmethod
    def _parse_point(raw: Any, dim: int) -> Vector:
        if not isinstance(raw, list) or len(raw) != dim:
            raise InvalidSpec(f"Точка {raw!r} должна быть списком из {dim} чисел")
        return tuple(parse_rational(a) for a in raw)

    @staticmethod
    def section(basis: GeneratorBasis, raw: Any) -> ThetaSection:
        """
        Сечение из описания опции section

        Поддерживаются "xi", {"generator": i, "shift": "p/q"} и
        {"coefficients": ["p/q" | "-inf", ...]} в порядке B.

        Raises:
            InvalidSpec: Если описание не распознано
        """
        if raw is None or raw == "xi":
            return ThetaSection.xi(basis)
        if isinstance(raw, dict) and "generator" in raw:
            index = raw["generator"]
            if isinstance(index, bool) or not isinstance(index, int) or not 0 <= index < basis.size:
                raise InvalidSpec(f"Номер образующей должен быть в диапазоне 0..{basis.size - 1}")
            return ThetaSection.generator(basis, index, parse_rational(raw.get("shift", "0")))
        if isinstance(raw, dict) and isinstance(raw.get("coefficients"), list):
            return pi_map(basis, raw["coefficients"])
        raise InvalidSpec(f"Нераспознанное описание сечения: {raw!r}")

    @staticmethod
    def polynomial_pair(polynomials: Sequence[TropicalPolynomial]) -> Tuple[TropicalPolynomial, TropicalPolynomial]:
        if len(polynomials) != 2:
            raise InvalidSpec(f"Для пересечения нужны два многочлена, получено {len(polynomials)}")
        return polynomials[0], polynomials[1]

