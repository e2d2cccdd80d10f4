# tropical/matrix.py
from dataclasses import dataclass
from itertools import permutations
from typing import List, Sequence, Tuple

from tropical.scalar import NEG_INF, ZERO, TropicalScalar, trop_add, trop_mul
from utils.errors import InvalidSpec, NonSquare

TropicalVector = Tuple[TropicalScalar, ...]


@dataclass(frozen=True)
class TropicalMatrix:
    """Матрица над T, элементы хранятся построчно"""

    rows: int
    cols: int
    entries: Tuple[TropicalScalar, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise InvalidSpec("Размеры тропической матрицы должны быть положительными")
        if len(self.entries) != self.rows * self.cols:
            raise InvalidSpec(
                f"Ожидалось {self.rows * self.cols} элементов, получено {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "TropicalMatrix":
        """
        Построение матрицы из списка строк

        Args:
            rows: Строки из TropicalScalar или рациональных значений ("-inf" для −∞)

        Returns:
            TropicalMatrix
        """
        if not rows:
            raise InvalidSpec("Пустая тропическая матрица")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise InvalidSpec("Строки тропической матрицы имеют разную длину")
        entries = tuple(
            item if isinstance(item, TropicalScalar) else TropicalScalar.from_json(item)
            for row in rows for item in row
        )
        return cls(len(rows), width, entries)

    def entry(self, i: int, j: int) -> TropicalScalar:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> TropicalVector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def transpose(self) -> "TropicalMatrix":
        entries = tuple(self.entry(i, j) for j in range(self.cols) for i in range(self.rows))
        return TropicalMatrix(self.cols, self.rows, entries)

    def minor(self, skip_row: int, skip_col: int) -> "TropicalMatrix":
        entries = tuple(
            self.entry(i, j)
            for i in range(self.rows) if i != skip_row
            for j in range(self.cols) if j != skip_col
        )
        return TropicalMatrix(self.rows - 1, self.cols - 1, entries)

    def to_json(self) -> List[List[str]]:
        return [[item.to_json() for item in self.row(i)] for i in range(self.rows)]


def trop_det(m: TropicalMatrix) -> TropicalScalar:
    """
    Тропический определитель max_σ Σ_i m[σ(i), i]

    Вместо перебора n! перестановок используется динамика по подмножествам
    использованных строк, O(2^n·n): столбцы обрабатываются по порядку,
    состояние хранит множество уже занятых строк. Перебор перестановок
    остается в trop_det_permutations для перекрестной проверки.

    Args:
        m: Квадратная тропическая матрица

    Returns:
        Значение определителя (−∞, если каждая перестановка задевает −∞)

    Raises:
        NonSquare: Если матрица не квадратная
    """
    if m.rows != m.cols:
        raise NonSquare(f"Тропический определитель требует квадратную матрицу, получено {m.rows}x{m.cols}")

    size = m.rows
    best = {0: ZERO}
    for col in range(size):
        layer = {}
        for used, value in best.items():
            for row in range(size):
                if used & (1 << row):
                    continue
                candidate = trop_mul(value, m.entry(row, col))
                key = used | (1 << row)
                layer[key] = trop_add(layer.get(key, NEG_INF), candidate)
        best = layer
    return best.get((1 << size) - 1, NEG_INF)


def trop_det_permutations(m: TropicalMatrix) -> TropicalScalar:
    """Тропический определитель полным перебором l! перестановок (оракул)"""
    if m.rows != m.cols:
        raise NonSquare(f"Тропический определитель требует квадратную матрицу, получено {m.rows}x{m.cols}")

    result = NEG_INF
    for sigma in permutations(range(m.rows)):
        term = ZERO
        for col, row in enumerate(sigma):
            term = trop_mul(term, m.entry(row, col))
        result = trop_add(result, term)
    return result


def trop_vector_add(u: TropicalVector, v: TropicalVector) -> TropicalVector:
    if len(u) != len(v):
        raise InvalidSpec("Тропические векторы разной длины")
    return tuple(trop_add(a, b) for a, b in zip(u, v))


def trop_scale(a: TropicalScalar, v: TropicalVector) -> TropicalVector:
    return tuple(trop_mul(a, item) for item in v)


def trop_linear_combination(coeffs: Sequence[TropicalScalar], vectors: Sequence[TropicalVector]) -> TropicalVector:
    """
    Тропическая линейная комбинация "a_1 v_1 + ... + a_k v_k"

    Args:
        coeffs: Коэффициенты a_i
        vectors: Векторы v_i одинаковой длины

    Returns:
        Покоординатный максимум a_i + v_i
    """
    if len(coeffs) != len(vectors) or not vectors:
        raise InvalidSpec("Число коэффициентов должно совпадать с числом векторов")
    result = tuple(NEG_INF for _ in vectors[0])
    for a, v in zip(coeffs, vectors):
        result = trop_vector_add(result, trop_scale(a, v))
    return result


def projective_normalize(v: TropicalVector) -> TropicalVector:
    """
    Представитель класса v в P(T^n): сдвиг, делающий максимум равным 0

    Raises:
        InvalidSpec: Для вектора из одних −∞
    """
    top = max(v)
    if top.is_neg_inf:
        raise InvalidSpec("Вектор (−∞, ..., −∞) не задает точку проективизации")
    shift = TropicalScalar(-top.fraction)
    return trop_scale(shift, v)
