# utils/errors.py
from typing import Any, Dict


class TropicalError(Exception):
    """Базовая ошибка проекта"""

    exit_code = 1

    def to_dict(self) -> Dict[str, Any]:
        """Машиночитаемое описание ошибки для stderr"""
        return {"error": type(self).__name__, "message": str(self)}


class ValidationError(TropicalError, ValueError):
    """Некорректные входные данные (код выхода 2)"""

    exit_code = 2


class UnsupportedCaseError(TropicalError):
    """Корректный, но неподдерживаемый случай (код выхода 3)"""

    exit_code = 3


class InternalConsistencyError(TropicalError, RuntimeError):
    """Быстрый путь и оракул разошлись"""

    exit_code = 1


class InvalidSpec(ValidationError):
    pass


class NonSquare(ValidationError):
    pass


class IntegralityViolation(ValidationError):
    pass


class NotSemidefinite(ValidationError):
    pass


class DegenerateBasis(ValidationError):
    pass


class NotPureCurve(ValidationError):
    pass


class AmbientMismatch(ValidationError):
    pass


class InvalidPolyhedron(ValidationError):
    pass


class TruncationNotCertified(UnsupportedCaseError):
    pass


class NoSections(UnsupportedCaseError):
    pass


class NotApplicable(UnsupportedCaseError):
    pass


class UnsupportedDimension(UnsupportedCaseError):
    pass


class TooHighDimensional(UnsupportedCaseError):
    pass
