# main.py
import asyncio
import sys
from typing import List, Optional

from cli.commands import CommandRunner, build_parser, cli_config_from_args
from cli.serializers import dump_json, error_json
from theta.config import ThetaConfig
from utils.errors import InvalidSpec, TropicalError
from utils.logger import get_logger, set_log_level


class TropicalApplication:
    """Главное приложение командной строки"""

    def __init__(self):
        self.logger = get_logger(__name__)
        self.parser = build_parser()

    async def run(self, argv: Optional[List[str]] = None) -> int:
        """
        Запуск подкоманды

        JSON-результат пишется в stdout, ошибка в виде JSON в stderr.

        Returns:
            Код выхода: 0 успех, 2 ошибка входных данных, 3 неподдерживаемый случай, 1 внутренняя ошибка
        """
        args = self.parser.parse_args(argv)

        try:
            try:
                cli_config = cli_config_from_args(args)
                theta_config = ThetaConfig.from_env()
            except ValueError as e:
                raise InvalidSpec(f"Некорректная конфигурация: {e}")
            if args.max_box is not None and args.max_box <= 0:
                raise InvalidSpec("--max-box должен быть положительным числом")

            set_log_level(cli_config.logging_level)
            runner = CommandRunner(cli_config, theta_config, max_box=args.max_box, slice_flag=args.slice_coordinate)
            result = await runner.run(args)
            print(dump_json(result))
            return 0

        except TropicalError as e:
            self.logger.warning(f"{type(e).__name__}: {e}")
            print(error_json(e), file=sys.stderr)
            return e.exit_code
        except Exception as e:
            self.logger.error(f"Критическая ошибка: {e}", exc_info=True)
            print(error_json(e), file=sys.stderr)
            return 1


async def main(argv: Optional[List[str]] = None) -> int:
    """Точка входа"""
    app = TropicalApplication()
    return await app.run(argv)


if __name__ == "__main__":
    try:
        sys.exit(asyncio.run(main()))
    except KeyboardInterrupt:
        sys.exit(130)
