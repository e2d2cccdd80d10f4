# lattice/models.py
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from lattice.linalg import (
    Matrix,
    Vector,
    as_matrix,
    columns,
    determinant,
    is_integral,
    mat_mul,
    require_square,
)
from tropical.scalar import format_rational
from utils.errors import IntegralityViolation, InvalidSpec

IntVector = Tuple[int, ...]
IntMatrix = Tuple[IntVector, ...]


def matrix_to_json(m: Matrix) -> List[List[str]]:
    return [[format_rational(a) for a in row] for row in m]


def vector_to_json(v) -> List[str]:
    return [format_rational(Fraction(a)) for a in v]


@dataclass(frozen=True)
class TorusSpec:
    """Тропический тор R^n/Λ; столбцы lattice_basis порождают Λ"""

    dim: int
    lattice_basis: Matrix

    def __post_init__(self):
        if self.dim < 0:
            raise InvalidSpec("Размерность тора не может быть отрицательной")
        if self.dim == 0:
            return
        size = require_square(self.lattice_basis, "Базис решетки")
        if size != self.dim:
            raise InvalidSpec(f"Базис решетки должен быть {self.dim}x{self.dim}")
        if determinant(self.lattice_basis) == 0:
            raise InvalidSpec("Базис решетки вырожден")

    @classmethod
    def from_rows(cls, rows) -> "TorusSpec":
        basis = as_matrix(rows)
        return cls(len(basis), basis)

    @classmethod
    def standard(cls, n: int) -> "TorusSpec":
        return cls(n, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @property
    def generators(self) -> List[Vector]:
        return columns(self.lattice_basis)

    @property
    def covolume(self) -> Fraction:
        return abs(determinant(self.lattice_basis))

    def to_json(self) -> List[List[str]]:
        return matrix_to_json(self.lattice_basis)


@dataclass(frozen=True)
class PolarizationForm:
    """Симметричная форма Q_R в стандартных координатах"""

    matrix: Matrix

    def __post_init__(self):
        size = require_square(self.matrix, "Форма Q") if self.matrix else 0
        for i in range(size):
            for j in range(i + 1, size):
                if self.matrix[i][j] != self.matrix[j][i]:
                    raise InvalidSpec("Форма Q должна быть симметричной")

    @classmethod
    def from_rows(cls, rows) -> "PolarizationForm":
        return cls(as_matrix(rows))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @property
    def is_zero(self) -> bool:
        return all(a == 0 for row in self.matrix for a in row)

    def integral_matrix(self, torus: TorusSpec) -> Matrix:
        """Матрица q: Λ → (Z^n)*; столбец j равен Q_R λ_j"""
        return mat_mul(self.matrix, torus.lattice_basis)

    def check_integrality(self, torus: TorusSpec) -> None:
        """
        Проверка Q ∈ Λ* ⊗ (Z^n)*

        Raises:
            IntegralityViolation: Если Q_R λ_j не целый для некоторого j
        """
        if self.dim != torus.dim:
            raise InvalidSpec(f"Размер Q ({self.dim}) не совпадает с размерностью тора ({torus.dim})")
        for j, col in enumerate(columns(self.integral_matrix(torus))):
            if not is_integral(col):
                raise IntegralityViolation(
                    f"Q_R λ_{j} = {[format_rational(a) for a in col]} не является целым ковектором"
                )

    def negated(self) -> "PolarizationForm":
        return PolarizationForm(tuple(tuple(-a for a in row) for row in self.matrix))

    def to_json(self) -> List[List[str]]:
        return matrix_to_json(self.matrix)


@dataclass(frozen=True)
class SnfResult:
    """Нормальная форма Смита: U·A·V = D"""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def torsion_factors(self) -> Tuple[int, ...]:
        return tuple(d for d in self.diagonal if d not in (0, 1))


@dataclass(frozen=True)
class CokernelSummary:
    """Строение Cok(q): порядок кручения и ранг свободной части"""

    torsion_order: int
    free_rank: int
    invariant_factors: Tuple[int, ...]

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def to_json(self) -> Dict[str, Any]:
        return {
            "torsion_order": self.torsion_order,
            "free_part": "infinite" if self.free_rank else "trivial",
            "free_rank": self.free_rank,
            "invariant_factors": list(self.invariant_factors),
        }


@dataclass(frozen=True)
class KernelSaturation:
    """
    Ядро q_R и расщепление, реализующее факторы по нему

    kernel_integral: базис Ker(q_R) ∩ Z^n
    kernel_lattice: базис Ker(q) ∩ Λ (в стандартных координатах)
    splitting: унимодулярная W; последние n−k столбцов равны kernel_integral
    reduced_lattice: базис образа Λ в R^k = R^n/Ker (координаты y = W^{-1}x, первые k)
    """

    rank: int
    kernel_integral: Tuple[IntVector, ...]
    kernel_lattice: Tuple[Vector, ...]
    splitting: Matrix
    reduced_lattice: Matrix = field(default=())

    def to_json(self) -> Dict[str, Any]:
        return {
            "rank": self.rank,
            "kernel_integral": [list(v) for v in self.kernel_integral],
            "kernel_lattice": [vector_to_json(v) for v in self.kernel_lattice],
            "splitting": matrix_to_json(self.splitting),
            "reduced_lattice": matrix_to_json(self.reduced_lattice),
        }


@dataclass(frozen=True)
class AlphaMembership:
    """Ответ на вопрос α ∈ Im(q_R) + (Z^n)* со свидетелем"""

    member: bool
    r: Optional[Vector] = None
    gamma: Optional[IntVector] = None
    witness: Optional[IntVector] = None

    def to_json(self) -> Dict[str, Any]:
        if self.member:
            return {"member": True, "r": vector_to_json(self.r), "gamma": list(self.gamma)}
        return {"member": False, "witness": list(self.witness)}
