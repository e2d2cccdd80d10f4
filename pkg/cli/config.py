# cli/config.py
import logging
import os
from dataclasses import dataclass
from dotenv import load_dotenv

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass
class CliConfig:
    """Конфигурация командной строки"""

    svg_out: str = "figures"
    slice_coordinate: int = 0
    oracle: bool = False
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls) -> "CliConfig":
        """
        Загрузка конфигурации из .env файла

        Флаги командной строки применяются поверх через dataclasses.replace.

        Returns:
            CliConfig экземпляр

        Raises:
            ValueError: Если параметры некорректны
        """
        load_dotenv()

        svg_out = os.getenv('TROPICAL_SVG_OUT', 'figures')
        slice_str = os.getenv('TROPICAL_SLICE_COORDINATE', '0')
        oracle_str = os.getenv('TROPICAL_ORACLE', 'false')
        log_level = os.getenv('TROPICAL_LOG_LEVEL', 'WARNING').upper()

        if not svg_out:
            raise ValueError("TROPICAL_SVG_OUT не может быть пустым")

        try:
            slice_coordinate = int(slice_str)
        except ValueError:
            raise ValueError("TROPICAL_SLICE_COORDINATE должен быть целым числом")

        if slice_coordinate < 0:
            raise ValueError("TROPICAL_SLICE_COORDINATE не может быть отрицательным")

        if oracle_str.lower() not in ("true", "false", "1", "0"):
            raise ValueError("TROPICAL_ORACLE должен быть true или false")

        if log_level not in LOG_LEVELS:
            raise ValueError(f"TROPICAL_LOG_LEVEL должен быть одним из {', '.join(LOG_LEVELS)}")

        return cls(
            svg_out=svg_out,
            slice_coordinate=slice_coordinate,
            oracle=oracle_str.lower() in ("true", "1"),
            log_level=log_level
        )

    @property
    def logging_level(self) -> int:
        return getattr(logging, self.log_level)
