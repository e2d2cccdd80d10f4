# lattice/cokernel.py
from fractions import Fraction
from itertools import product
from typing import List, Sequence, Tuple

from lattice.linalg import (
    Matrix,
    as_vector,
    column,
    common_denominator,
    determinant,
    from_columns,
    identity,
    inverse,
    is_integral,
    mat_mul,
    mat_vec,
    rank,
    symmetric_inertia,
    transpose,
)
from lattice.models import (
    AlphaMembership,
    CokernelSummary,
    IntVector,
    KernelSaturation,
    PolarizationForm,
    TorusSpec,
)
from lattice.normal_forms import hermite_column_basis, reduce_in_box, smith_normal_form
from utils.errors import InvalidSpec, NotSemidefinite
from utils.logger import get_logger

logger = get_logger(__name__)


def _scaled_integer(m: Matrix) -> Tuple[Tuple[int, ...], ...]:
    scale = common_denominator(a for row in m for a in row)
    return tuple(tuple(int(a * scale) for a in row) for row in m)


def _sign_normalized(v: Sequence[int]) -> IntVector:
    lead = next((a for a in v if a != 0), 0)
    return tuple(-a for a in v) if lead < 0 else tuple(v)


def _integer_kernel(m: Matrix) -> List[IntVector]:
    """Базис насыщенной решетки Ker(m) ∩ Z^n через SNF"""
    snf = smith_normal_form(_scaled_integer(m))
    cols = len(snf.V)
    return [_sign_normalized(tuple(snf.V[i][j] for i in range(cols))) for j in range(snf.rank, cols)]


def splitting_matrix(form: PolarizationForm) -> Tuple[int, Matrix]:
    """
    Унимодулярная W с Q_R W = [A | 0]

    Последние n−k столбцов W образуют базис Ker(q_R) ∩ Z^n. Для
    невырожденной и нулевой формы берется W = E.

    Args:
        form: Симметричная форма Q_R

    Returns:
        (k = rank Q_R, W)
    """
    n = form.dim
    k = rank(form.matrix)
    if k in (0, n):
        return k, identity(n)

    snf = smith_normal_form(_scaled_integer(form.matrix))
    cols = [[Fraction(snf.V[i][j]) for i in range(n)] for j in range(n)]
    for j in range(k, n):
        cols[j] = list(_sign_normalized([int(a) for a in cols[j]]))
    return k, from_columns(cols, n)


def kernel_saturation(form: PolarizationForm, torus: TorusSpec) -> KernelSaturation:
    """
    Насыщенные ядра Ker(q_R) ∩ Z^n и Ker(q) ∩ Λ с расщеплением

    Args:
        form: Положительно полуопределенная форма
        torus: Тор

    Returns:
        KernelSaturation

    Raises:
        NotSemidefinite: Если у формы есть отрицательное собственное значение
    """
    _, negative, _ = symmetric_inertia(form.matrix)
    if negative:
        raise NotSemidefinite("Форма Q имеет отрицательное собственное значение")

    k, w = splitting_matrix(form)
    n = form.dim
    kernel_integral = tuple(
        tuple(int(a) for a in column(w, j)) for j in range(k, n)
    )

    coefficient_kernel = _integer_kernel(form.integral_matrix(torus))
    kernel_lattice = tuple(mat_vec(torus.lattice_basis, m) for m in coefficient_kernel)

    reduced = reduced_lattice_basis(w, k, torus)
    logger.debug(f"Ранг формы {k}, ядро в Z^n: {kernel_integral}")
    return KernelSaturation(
        rank=k,
        kernel_integral=kernel_integral,
        kernel_lattice=kernel_lattice,
        splitting=w,
        reduced_lattice=reduced,
    )


def reduced_lattice_basis(w: Matrix, k: int, torus: TorusSpec) -> Matrix:
    """
    Базис образа Λ в R^k при проекции y = W^{-1} x на первые k координат

    Args:
        w: Расщепляющая матрица
        k: Ранг формы
        torus: Тор

    Returns:
        k×k базис (эрмитова форма после масштабирования)
    """
    if k == 0:
        return ()
    projected = mat_mul(inverse(w), torus.lattice_basis)[:k]
    scale = common_denominator(a for row in projected for a in row)
    basis = hermite_column_basis(tuple(tuple(int(a * scale) for a in row) for row in projected))
    return tuple(tuple(Fraction(a, scale) for a in row) for row in basis)


def coker_torsion_representatives(torus: TorusSpec, form: PolarizationForm) -> List[IntVector]:
    """
    Канонические представители кручения (Z^n)*/q(Λ)

    В координатах расщепления образ q лежит в Z^k × 0; его эрмитов базис H
    задает коробку 0 ≤ y_i < H_ii, представители b = W^{-T}(y, 0). Это
    представители из эрмитовой коробки, а не лексикографические минимумы
    смежных классов в коробке Смита.

    Порядок: сначала нулевой ковектор, затем остальные по возрастанию в
    лексикографическом порядке целых координат b. От этого порядка
    зависит нумерация образующих Θ_b и координат T^B.

    Args:
        torus: Тор
        form: Форма Q, целочисленная на Λ

    Returns:
        Список целых ковекторов B

    Raises:
        IntegralityViolation: Если Q не целочисленна на Λ
    """
    form.check_integrality(torus)
    n = torus.dim
    k, w = splitting_matrix(form)
    if k == 0:
        return [tuple(0 for _ in range(n))]

    image = mat_mul(transpose(w), form.integral_matrix(torus))[:k]
    hermite = hermite_column_basis(image)
    inverse_transpose = transpose(inverse(w))

    reps = []
    for y in product(*(range(hermite[i][i]) for i in range(k))):
        full = as_vector(list(y) + [0] * (n - k))
        reps.append(tuple(int(a) for a in mat_vec(inverse_transpose, full)))

    reps.sort(key=lambda b: (any(b), b))
    logger.debug(f"Представители кручения Cok(q): {reps}")
    return reps


def coset_coordinates(b: Sequence[int], torus: TorusSpec, form: PolarizationForm) -> Tuple[IntVector, IntVector]:
    """
    Разложение b = rep + q(L c) для невырожденной формы

    Args:
        b: Целый ковектор
        torus: Тор
        form: Невырожденная форма, целочисленная на Λ

    Returns:
        (представитель из канонического набора, целые координаты c сдвига в Λ)
    """
    reps = coker_torsion_representatives(torus, form)
    solver = inverse(form.integral_matrix(torus))
    for rep in reps:
        coeffs = mat_vec(solver, [Fraction(a) - c for a, c in zip(b, rep)])
        if is_integral(coeffs):
            return rep, tuple(int(a) for a in coeffs)
    raise InvalidSpec(f"Ковектор {tuple(b)} не приводится к представителям кручения")


def coset_representatives_bruteforce(torus: TorusSpec, form: PolarizationForm) -> List[IntVector]:
    """
    Перебор классов (Z^n)*/q(Λ) в коробке [0, |det|)^n (оракул, только для невырожденной формы)

    Returns:
        Лексикографически первые элементы каждого класса
    """
    integral = form.integral_matrix(torus)
    size = int(abs(determinant(integral)))
    if size == 0:
        raise InvalidSpec("Перебор классов требует невырожденной формы")
    solver = inverse(integral)
    found: List[IntVector] = []
    for b in product(range(size), repeat=torus.dim):
        if not any(is_integral(mat_vec(solver, [a - c for a, c in zip(b, rep)])) for rep in found):
            found.append(tuple(b))
    return found


def alpha_membership(alpha: Sequence[Fraction], form: PolarizationForm, torus: TorusSpec) -> AlphaMembership:
    """
    Проверка α ∈ Im(q_R) + (Z^n)*

    В координатах расщепления α' = W^T α; α лежит в сумме тогда и только
    тогда, когда последние n−k координат α' целые.

    Args:
        alpha: Рациональный ковектор
        form: Форма Q_R
        torus: Тор (используется только для согласования размерности)

    Returns:
        AlphaMembership с (r, γ) либо со свидетелем w ∈ Ker(q_R) ∩ Z^n, α·w ∉ Z
    """
    n = form.dim
    if len(alpha) != n or torus.dim != n:
        raise InvalidSpec("Размерности α, Q и тора не согласованы")

    k, w = splitting_matrix(form)
    shifted = mat_vec(transpose(w), alpha)

    for j in range(k, n):
        if shifted[j].denominator != 1:
            witness = tuple(int(a) for a in column(w, j))
            return AlphaMembership(member=False, witness=witness)

    gamma_shifted = as_vector([0] * k + list(shifted[k:]))
    gamma = tuple(int(a) for a in mat_vec(transpose(inverse(w)), gamma_shifted))

    if k == 0:
        return AlphaMembership(member=True, r=as_vector([0] * n), gamma=gamma)

    reduced_form = mat_mul(mat_mul(transpose(w), form.matrix), w)
    block = tuple(row[:k] for row in reduced_form[:k])
    r_reduced = mat_vec(inverse(block), shifted[:k])
    r = mat_vec(w, list(r_reduced) + [0] * (n - k))
    return AlphaMembership(member=True, r=r, gamma=gamma)


def cokernel_summary(torus: TorusSpec, form: PolarizationForm) -> CokernelSummary:
    """Порядок кручения и ранг свободной части Cok(q) по SNF"""
    form.check_integrality(torus)
    snf = smith_normal_form(form.integral_matrix(torus))
    nonzero = tuple(abs(d) for d in snf.diagonal if d != 0)
    order = 1
    for d in nonzero:
        order *= d
    return CokernelSummary(
        torsion_order=order,
        free_rank=torus.dim - len(nonzero),
        invariant_factors=tuple(d for d in nonzero if d != 1),
    )


def oriented_integral_determinant(torus: TorusSpec, form: PolarizationForm) -> Fraction:
    """
    det матрицы q: Λ → (Z^n)* в согласованно ориентированных базисах

    Базис Λ приводится к положительной ориентации, поэтому значение
    равно det(Q_R)·|det L|.
    """
    return determinant(form.matrix) * torus.covolume


def find_polarization(torus: TorusSpec) -> PolarizationForm:
    """
    Поляризация рационального тора: Q_R = m (L L^T)^{-1}

    Q_R L = m L^{-T}, поэтому m берется равным общему знаменателю L^{-1}.

    Args:
        torus: Тор с рациональным базисом

    Returns:
        Положительно определенная форма, целочисленная на Λ
    """
    inv = inverse(torus.lattice_basis)
    scale = common_denominator(a for row in inv for a in row)
    gram_inverse = inverse(mat_mul(torus.lattice_basis, transpose(torus.lattice_basis)))
    form = PolarizationForm(tuple(tuple(scale * a for a in row) for row in gram_inverse))
    form.check_integrality(torus)
    logger.debug(f"Найдена поляризация с множителем {scale}")
    return form
