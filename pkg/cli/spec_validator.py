# cli/spec_validator.py
from typing import Any, Dict

from cli.models import FIGURE_KINDS
from utils.errors import InvalidSpec, NonSquare


class SpecValidator:
    """Проверка структуры входного JSON до разбора чисел"""

    REQUIRED_KEYS = [
        "lattice",
        "Q",
        "alpha"
    ]

    ALLOWED_OPTIONS = {
        "section",
        "second_section",
        "polynomials",
        "points",
        "shift",
        "perturbation",
        "slice_coordinate",
        "max_box",
        "figures",
    }

    @staticmethod
    def validate(raw: Any) -> None:
        """
        Проверка документа {"lattice", "Q", "alpha", "options"}

        Args:
            raw: Результат json.loads

        Raises:
            InvalidSpec: Если нет обязательных ключей или форма данных неверна
            NonSquare: Если lattice или Q не квадратные
        """
        if not isinstance(raw, dict):
            raise InvalidSpec("Входной документ должен быть JSON-объектом")

        for key in SpecValidator.REQUIRED_KEYS:
            if key not in raw:
                raise InvalidSpec(f"Отсутствует обязательный ключ '{key}'")

        unknown = set(raw) - set(SpecValidator.REQUIRED_KEYS) - {"options"}
        if unknown:
            raise InvalidSpec(f"Неизвестные ключи: {sorted(unknown)}")

        n = SpecValidator._square_size(raw["lattice"], "lattice")
        if SpecValidator._square_size(raw["Q"], "Q") != n:
            raise InvalidSpec(f"Размер Q не совпадает с размером lattice ({n})")

        alpha = raw["alpha"]
        if not isinstance(alpha, list) or len(alpha) != n:
            raise InvalidSpec(f"alpha должен быть списком из {n} чисел")

        SpecValidator._validate_options(raw.get("options", {}))

    @staticmethod
    def _square_size(matrix: Any, name: str) -> int:
        """Размер квадратной матрицы, заданной списком строк"""
        if not isinstance(matrix, list) or not all(isinstance(row, list) for row in matrix):
            raise InvalidSpec(f"{name} должен быть списком строк")
        if any(len(row) != len(matrix) for row in matrix):
            raise NonSquare(f"{name} должна быть квадратной матрицей")
        return len(matrix)

    @staticmethod
    def _validate_options(options: Dict[str, Any]) -> None:
        if not isinstance(options, dict):
            raise InvalidSpec("options должен быть JSON-объектом")

        unknown = set(options) - SpecValidator.ALLOWED_OPTIONS
        if unknown:
            raise InvalidSpec(f"Неизвестные опции: {sorted(unknown)}")

        for key in ("perturbation", "slice_coordinate", "max_box"):
            value = options.get(key)
            if value is not None and (isinstance(value, bool) or not isinstance(value, int) or value < 0):
                raise InvalidSpec(f"Опция {key} должна быть неотрицательным целым числом")

        for key in ("polynomials", "points"):
            if key in options and not isinstance(options[key], list):
                raise InvalidSpec(f"Опция {key} должна быть списком")

        figures = options.get("figures", list(FIGURE_KINDS))
        if not isinstance(figures, list) or any(kind not in FIGURE_KINDS for kind in figures):
            raise InvalidSpec(f"figures должен быть списком из {', '.join(FIGURE_KINDS)}")
