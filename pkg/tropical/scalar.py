# tropical/scalar.py
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Optional, Union

from utils.errors import InvalidSpec

NEG_INF_TOKEN = "-inf"

RationalLike = Union[int, Fraction, str]


def parse_rational(value: RationalLike) -> Fraction:
    """
    Разбор рационального числа из строки "p/q", "p" или целого

    Args:
        value: Исходное значение

    Returns:
        Точное рациональное число

    Raises:
        InvalidSpec: Если значение не является рациональным числом
    """
    if isinstance(value, bool):
        raise InvalidSpec(f"Ожидалось рациональное число, получено {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise InvalidSpec(f"Некорректная рациональная строка: {value!r}")
    raise InvalidSpec(f"Ожидалось рациональное число, получено {type(value).__name__}")


def format_rational(value: Fraction) -> str:
    """Каноническая запись "p/q" в несократимом виде, q > 0"""
    return str(Fraction(value))


@total_ordering
@dataclass(frozen=True)
class TropicalScalar:
    """Элемент T = R ∪ {−∞}; value=None означает −∞"""

    value: Optional[Fraction]

    def __post_init__(self):
        if self.value is not None and not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))

    @classmethod
    def of(cls, value: RationalLike) -> "TropicalScalar":
        return cls(parse_rational(value))

    @property
    def is_neg_inf(self) -> bool:
        return self.value is None

    @property
    def fraction(self) -> Fraction:
        if self.value is None:
            raise ValueError("У −∞ нет конечного значения")
        return self.value

    def __lt__(self, other: "TropicalScalar") -> bool:
        if not isinstance(other, TropicalScalar):
            return NotImplemented
        if other.value is None:
            return False
        if self.value is None:
            return True
        return self.value < other.value

    def to_json(self) -> str:
        return NEG_INF_TOKEN if self.value is None else format_rational(self.value)

    @classmethod
    def from_json(cls, raw: RationalLike) -> "TropicalScalar":
        if isinstance(raw, str) and raw.strip() == NEG_INF_TOKEN:
            return NEG_INF
        return cls.of(raw)

    def __str__(self) -> str:
        return self.to_json()


NEG_INF = TropicalScalar(None)
ZERO = TropicalScalar(Fraction(0))


def trop_add(x: TropicalScalar, y: TropicalScalar) -> TropicalScalar:
    """Тропическая сумма: max(x, y), −∞ нейтрален"""
    return x if x >= y else y


def trop_mul(x: TropicalScalar, y: TropicalScalar) -> TropicalScalar:
    """Тропическое произведение: x + y, −∞ поглощает"""
    if x.value is None or y.value is None:
        return NEG_INF
    return TropicalScalar(x.value + y.value)


def trop_sum(values) -> TropicalScalar:
    """Тропическая сумма конечного набора (пустой набор дает −∞)"""
    result = NEG_INF
    for value in values:
        result = trop_add(result, value)
    return result
