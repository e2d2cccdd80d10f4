# theta/config.py
import os
from dataclasses import dataclass
from dotenv import load_dotenv


@dataclass
class ThetaConfig:
    """Конфигурация вычислений с тэта-функциями"""

    max_box: int = 64
    h0_polyhedron_cap: int = 4
    parallel_workers: int = 4

    @classmethod
    def from_env(cls) -> "ThetaConfig":
        """
        Загрузка конфигурации из .env файла

        Все параметры необязательны; отсутствующие берутся по умолчанию.

        Returns:
            ThetaConfig экземпляр

        Raises:
            ValueError: Если параметры некорректны
        """
        load_dotenv()

        max_box_str = os.getenv('TROPICAL_MAX_BOX', '64')
        cap_str = os.getenv('TROPICAL_H0_POLYHEDRON_CAP', '4')
        workers_str = os.getenv('TROPICAL_WORKERS', '4')

        try:
            max_box = int(max_box_str)
        except ValueError:
            raise ValueError("TROPICAL_MAX_BOX должен быть целым числом")

        try:
            cap = int(cap_str)
        except ValueError:
            raise ValueError("TROPICAL_H0_POLYHEDRON_CAP должен быть целым числом")

        try:
            workers = int(workers_str)
        except ValueError:
            raise ValueError("TROPICAL_WORKERS должен быть целым числом")

        if max_box <= 0:
            raise ValueError("TROPICAL_MAX_BOX должен быть положительным числом")
        if cap < 0:
            raise ValueError("TROPICAL_H0_POLYHEDRON_CAP не может быть отрицательным")
        if workers <= 0:
            raise ValueError("TROPICAL_WORKERS должен быть положительным числом")

        return cls(
            max_box=max_box,
            h0_polyhedron_cap=cap,
            parallel_workers=workers
        )
