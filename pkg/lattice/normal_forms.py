# lattice/normal_forms.py
from typing import Sequence, Tuple

from sympy.polys.matrices.normalforms import hermite_normal_form, smith_normal_decomp

from lattice.linalg import as_matrix, from_domain, is_integral_matrix, mat_mul, shape, to_zz
from lattice.models import IntMatrix, IntVector, SnfResult
from utils.errors import InternalConsistencyError, InvalidSpec
from utils.logger import get_logger

logger = get_logger(__name__)


def _to_int_matrix(m) -> IntMatrix:
    return tuple(tuple(int(a) for a in row) for row in m)


def smith_normal_form(a: Sequence[Sequence[int]]) -> SnfResult:
    """
    Нормальная форма Смита целочисленной матрицы

    Args:
        a: Целочисленная матрица (список строк)

    Returns:
        SnfResult с U·A·V = D, d_1 | d_2 | ...

    Raises:
        InvalidSpec: Если матрица не целочисленная
    """
    matrix = as_matrix(a)
    if not is_integral_matrix(matrix):
        raise InvalidSpec("Нормальная форма Смита определена только для целочисленных матриц")

    rows, cols = shape(matrix)
    if rows == 0 or cols == 0:
        return SnfResult(U=_identity(rows), D=_to_int_matrix(matrix), V=_identity(cols))

    d, u, v = smith_normal_decomp(to_zz(matrix))
    result = SnfResult(
        U=_to_int_matrix(from_domain(u)),
        D=_to_int_matrix(from_domain(d)),
        V=_to_int_matrix(from_domain(v)),
    )

    if mat_mul(mat_mul(as_matrix(result.U), matrix), as_matrix(result.V)) != as_matrix(result.D):
        raise InternalConsistencyError("Проверка U·A·V = D не прошла")

    logger.debug(f"SNF {rows}x{cols}: диагональ {result.diagonal}")
    return result


def hermite_column_basis(a: Sequence[Sequence[int]]) -> IntMatrix:
    """
    Эрмитов базис решетки, порожденной столбцами a

    Args:
        a: Целочисленная матрица k×m ранга k

    Returns:
        Верхнетреугольная k×k матрица H с положительной диагональю,
        столбцы которой порождают ту же решетку
    """
    matrix = as_matrix(a)
    rows, _ = shape(matrix)
    basis = _to_int_matrix(from_domain(hermite_normal_form(to_zz(matrix))))
    if len(basis) != rows or any(len(row) != rows for row in basis):
        raise InvalidSpec("Столбцы не порождают решетку полного ранга")
    for i in range(rows):
        if basis[i][i] <= 0 or any(basis[i][j] != 0 for j in range(i)):
            raise InternalConsistencyError("Эрмитова форма не верхнетреугольная")
    return basis


def reduce_in_box(y: Sequence[int], hermite: IntMatrix) -> Tuple[IntVector, IntVector]:
    """
    Приведение целого вектора к представителю 0 ≤ y_i < H_ii по модулю решетки H·Z^k

    Args:
        y: Целый вектор
        hermite: Верхнетреугольный базис решетки

    Returns:
        (представитель, коэффициенты c с y = представитель + H c)
    """
    size = len(hermite)
    current = [int(a) for a in y]
    coeffs = [0] * size
    for i in range(size - 1, -1, -1):
        q = current[i] // hermite[i][i]
        if q:
            coeffs[i] = q
            for row in range(i + 1):
                current[row] -= q * hermite[row][i]
    return tuple(current), tuple(coeffs)


def _identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
