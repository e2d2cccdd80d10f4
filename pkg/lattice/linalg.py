# lattice/linalg.py
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, List, Sequence, Tuple

from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from utils.errors import InvalidSpec, NonSquare

Vector = Tuple[Fraction, ...]
Matrix = Tuple[Vector, ...]


def as_vector(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    return tuple(as_vector(row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def zeros(rows: int, cols: int) -> Matrix:
    return tuple(tuple(Fraction(0) for _ in range(cols)) for _ in range(rows))


def shape(m: Matrix) -> Tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def require_square(m: Matrix, what: str = "матрица") -> int:
    rows, cols = shape(m)
    if any(len(row) != cols for row in m):
        raise InvalidSpec(f"{what}: строки разной длины")
    if rows != cols:
        raise NonSquare(f"{what} должна быть квадратной, получено {rows}x{cols}")
    return rows


def transpose(m: Matrix) -> Matrix:
    rows, cols = shape(m)
    return tuple(tuple(m[i][j] for i in range(rows)) for j in range(cols))


def column(m: Matrix, j: int) -> Vector:
    return tuple(row[j] for row in m)


def columns(m: Matrix) -> List[Vector]:
    return [column(m, j) for j in range(shape(m)[1])]


def from_columns(cols: Sequence[Sequence], height: int) -> Matrix:
    return tuple(tuple(Fraction(col[i]) for col in cols) for i in range(height))


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


def mat_vec(m: Matrix, v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in m)


def vec_mat(v: Sequence, m: Matrix) -> Vector:
    """Строка v, умноженная на матрицу m (v^T m)"""
    return tuple(dot(v, column(m, j)) for j in range(shape(m)[1]))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols_b = columns(b)
    return tuple(tuple(dot(row, col) for col in cols_b) for row in a)


def vec_add(u: Sequence, v: Sequence) -> Vector:
    return tuple(Fraction(a) + b for a, b in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(Fraction(a) - b for a, b in zip(u, v))


def vec_scale(c, v: Sequence) -> Vector:
    return tuple(Fraction(c) * a for a in v)


def bilinear(q: Matrix, u: Sequence, v: Sequence) -> Fraction:
    """Значение Q(u, v) = u^T Q v"""
    return dot(u, mat_vec(q, v))


def quadratic(q: Matrix, u: Sequence) -> Fraction:
    return bilinear(q, u, u)


def is_integral(values: Iterable[Fraction]) -> bool:
    return all(Fraction(v).denominator == 1 for v in values)


def is_integral_matrix(m: Matrix) -> bool:
    return all(is_integral(row) for row in m)


def common_denominator(values: Iterable[Fraction]) -> int:
    result = 1
    for v in values:
        result = lcm(result, Fraction(v).denominator)
    return result


def primitive_integer_vector(v: Sequence) -> Tuple[int, ...]:
    """Примитивный целый вектор того же направления (нулевой вектор остается нулевым)"""
    scale = common_denominator(v)
    ints = [int(Fraction(a) * scale) for a in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g == 0:
        return tuple(ints)
    return tuple(a // g for a in ints)


def lattice_length(v: Sequence[int]) -> int:
    """Решеточная длина целого вектора: НОД его координат"""
    g = 0
    for a in v:
        g = gcd(g, int(a))
    return g


def to_qq(m: Matrix) -> DomainMatrix:
    rows, cols = shape(m)
    return DomainMatrix(
        [[QQ(Fraction(a).numerator, Fraction(a).denominator) for a in row] for row in m],
        (rows, cols),
        QQ,
    )


def to_zz(m: Matrix) -> DomainMatrix:
    if not is_integral_matrix(m):
        raise InvalidSpec("Ожидалась целочисленная матрица")
    rows, cols = shape(m)
    return DomainMatrix([[ZZ(int(a)) for a in row] for row in m], (rows, cols), ZZ)


def _element_to_fraction(element) -> Fraction:
    if hasattr(element, "denominator"):
        return Fraction(int(element.numerator), int(element.denominator))
    return Fraction(int(element))


def from_domain(dm: DomainMatrix) -> Matrix:
    return tuple(tuple(_element_to_fraction(a) for a in row) for row in dm.to_list())


def inverse(m: Matrix) -> Matrix:
    require_square(m)
    return from_domain(to_qq(m).inv())


def determinant(m: Matrix) -> Fraction:
    if not m:
        return Fraction(1)
    require_square(m)
    return _element_to_fraction(to_qq(m).det())


def rank(m: Matrix) -> int:
    if not m or not m[0]:
        return 0
    return to_qq(m).rank()


def nullspace(m: Matrix) -> List[Vector]:
    """Базис рационального ядра {v : m v = 0}"""
    rows, cols = shape(m)
    if rows == 0:
        return [tuple(Fraction(int(i == j)) for j in range(cols)) for i in range(cols)]
    basis = to_qq(m).nullspace()
    return [tuple(row) for row in from_domain(basis)] if basis.shape[0] else []


def solve(m: Matrix, v: Sequence) -> Vector:
    return mat_vec(inverse(m), v)


def symmetric_inertia(q: Matrix) -> Tuple[int, int, int]:
    """
    Точная сигнатура симметричной матрицы (n_+, n_−, n_0)

    Симметричное исключение Гаусса: при нулевой диагонали делается
    конгруэнтное преобразование строки/столбца i += j.

    Args:
        q: Симметричная рациональная матрица

    Returns:
        Числа положительных, отрицательных и нулевых квадратов
    """
    size = require_square(q, "Форма Q")
    work = [list(row) for row in q]
    positive = negative = 0
    active = list(range(size))

    while active:
        pivot = next((i for i in active if work[i][i] != 0), None)
        if pivot is None:
            pair = next(((i, j) for i in active for j in active if i != j and work[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            for k in range(size):
                work[i][k] += work[j][k]
            for k in range(size):
                work[k][i] += work[k][j]
            pivot = i

        d = work[pivot][pivot]
        if d > 0:
            positive += 1
        else:
            negative += 1
        active.remove(pivot)
        for i in active:
            factor = work[i][pivot] / d
            if factor == 0:
                continue
            for k in active:
                work[i][k] -= factor * work[pivot][k]

    return positive, negative, size - positive - negative


def gram_factorization(gram: Matrix) -> Tuple[Matrix, Vector]:
    """
    Разложение G = R^T diag(d) R с единичной верхнетреугольной R

    Args:
        gram: Положительно определенная матрица Грама

    Returns:
        (R, d), где d_i > 0

    Raises:
        InvalidSpec: Если матрица не положительно определена
    """
    n = require_square(gram, "Матрица Грама")
    r = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    d = [Fraction(0)] * n
    for i in range(n):
        d[i] = gram[i][i] - sum((d[k] * r[k][i] * r[k][i] for k in range(i)), Fraction(0))
        if d[i] <= 0:
            raise InvalidSpec("Матрица Грама не положительно определена")
        for j in range(i + 1, n):
            r[i][j] = (gram[i][j] - sum((d[k] * r[k][i] * r[k][j] for k in range(i)), Fraction(0))) / d[i]
    return as_matrix(r), tuple(d)
