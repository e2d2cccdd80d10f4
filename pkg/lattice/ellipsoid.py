# lattice/ellipsoid.py
from fractions import Fraction
from math import ceil, floor, isqrt
from typing import List, Sequence, Tuple

from lattice.linalg import Matrix, Vector, gram_factorization, inverse, mat_mul, mat_vec, transpose
from lattice.models import IntVector
from utils.errors import TruncationNotCertified
from utils.logger import get_logger

LatticeHit = Tuple[IntVector, Fraction]


class LatticeEnumerator:
    """
    Перечисление точек решетки Λ = L·Z^n в эллипсоидах Q(x − c) ≤ R

    Перебор Финке–Поста по разложению Грама G = L^T Q L = R^T diag(d) R:
    координаты фиксируются с последней, границы каждой координаты
    берутся с целочисленным запасом и затем точно фильтруются.
    """

    def __init__(self, basis: Matrix, form: Matrix, max_box: int = 64):
        self.logger = get_logger(__name__)
        self.basis = basis
        self.form = form
        self.dim = len(basis)
        self.max_box = max_box
        self.gram = mat_mul(mat_mul(transpose(basis), form), basis)
        self.upper, self.diag = gram_factorization(self.gram)
        self.basis_inverse = inverse(basis)

    def coordinates(self, x: Sequence[Fraction]) -> Vector:
        """Координаты точки в базисе решетки"""
        return mat_vec(self.basis_inverse, x)

    def point(self, k: Sequence[int]) -> Vector:
        return mat_vec(self.basis, k)

    def within(self, center: Sequence[Fraction], radius_sq: Fraction) -> List[LatticeHit]:
        """
        Все λ = L k с Q(λ − center) ≤ radius_sq

        Args:
            center: Центр эллипсоида в стандартных координатах
            radius_sq: Квадрат радиуса в норме Q

        Returns:
            Список (k, Q(λ − center)), отсортированный по значению и k

        Raises:
            TruncationNotCertified: Если диапазон перебора по координате превышает max_box
        """
        radius_sq = Fraction(radius_sq)
        if radius_sq < 0:
            return []
        c = self.coordinates(center)
        hits: List[LatticeHit] = []
        self._search(self.dim - 1, c, [0] * self.dim, radius_sq, Fraction(0), hits)
        hits.sort(key=lambda hit: (hit[1], hit[0]))
        return hits

    def closest(self, target: Sequence[Fraction]) -> Tuple[Fraction, List[IntVector]]:
        """
        Точное решение задачи ближайшего вектора в норме Q

        Граница поиска берется из значения в округленных координатах.

        Args:
            target: Точка в стандартных координатах

        Returns:
            (min_λ Q(target − λ), все минимизирующие k)
        """
        c = self.coordinates(target)
        rounded = tuple(floor(a + Fraction(1, 2)) for a in c)
        offset = tuple(Fraction(a) - b for a, b in zip(rounded, c))
        bound = self._gram_value(offset)
        hits = self.within(target, bound)
        best = hits[0][1]
        return best, [k for k, value in hits if value == best]

    def _gram_value(self, u: Sequence[Fraction]) -> Fraction:
        return sum((u[i] * self.gram[i][j] * u[j] for i in range(self.dim) for j in range(self.dim)), Fraction(0))

    def _search(self, i: int, c: Vector, k: List[int], radius_sq: Fraction,
                partial: Fraction, hits: List[LatticeHit]) -> None:
        if i < 0:
            hits.append((tuple(k), partial))
            return

        center = c[i] - sum((self.upper[i][j] * (k[j] - c[j]) for j in range(i + 1, self.dim)), Fraction(0))
        remaining = radius_sq - partial
        span = isqrt(ceil(remaining / self.diag[i])) + 1
        if span > self.max_box:
            raise TruncationNotCertified(
                f"Диапазон перебора {span} по координате {i} превышает max_box={self.max_box}"
            )

        for value in range(floor(center) - span, ceil(center) + span + 1):
            term = self.diag[i] * (value - center) ** 2
            if term <= remaining:
                k[i] = value
                self._search(i - 1, c, k, radius_sq, partial + term, hits)
        k[i] = 0
