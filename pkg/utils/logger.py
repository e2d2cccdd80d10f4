# utils/logger.py
import logging
import sys
from datetime import datetime
from pathlib import Path

LOGGER_PREFIXES = ("tropical", "lattice", "polyhedra", "theta", "divisors", "cli", "main", "__main__")


class MillisecondFormatter(logging.Formatter):
    """Форматтер с миллисекундами (3 цифры)"""

    def formatTime(self, record, datefmt=None):
        moment = datetime.fromtimestamp(record.created)
        s = moment.strftime(datefmt) if datefmt else moment.strftime("%Y-%m-%d %H:%M:%S")
        return f"{s}.{int(record.msecs):03d}"


def get_logger(name: str, level: int = logging.WARNING) -> logging.Logger:
    """
    Создает логгер с выводом в stderr и в файл

    Stdout занят JSON-отчетами CLI, поэтому консольный вывод идет в stderr.

    Args:
        name: Имя логгера
        level: Уровень логирования

    Returns:
        Настроенный логгер
    """
    logger = logging.getLogger(name)

    if logger.handlers:
        return logger

    logger.setLevel(level)

    formatter = MillisecondFormatter(
        fmt='%(asctime)s | %(levelname)-8s | %(name)-32s | %(message)s',
        datefmt='%d-%m-%y %H:%M:%S'
    )

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)

    project_root = Path(__file__).resolve().parent.parent
    logs_dir = project_root / "logs"
    logs_dir.mkdir(exist_ok=True)

    file_handler = logging.FileHandler(logs_dir / "logs.txt", mode='a', encoding='utf-8', delay=True)
    file_handler.setLevel(level)
    file_handler.setFormatter(formatter)

    logger.addHandler(console_handler)
    logger.addHandler(file_handler)
    logger.propagate = False

    return logger


def set_log_level(level: int) -> None:
    """
    Устанавливает уровень логирования для всех логгеров проекта

    Args:
        level: Уровень логирования
    """
    for name, logger in logging.Logger.manager.loggerDict.items():
        if not isinstance(logger, logging.Logger) or not name.startswith(LOGGER_PREFIXES):
            continue
        logger.setLevel(level)
        for handler in logger.handlers:
            handler.setLevel(level)
