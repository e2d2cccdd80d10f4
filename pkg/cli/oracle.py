# cli/oracle.py
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List

from lattice.cokernel import coker_torsion_representatives, coset_representatives_bruteforce
from lattice.linalg import Vector, determinant, inverse, is_integral, mat_vec
from theta.generators import GeneratorBasis
from theta.sections import ThetaSection, phi_by_vertices, phi_embed
from tropical.matrix import TropicalMatrix, trop_det, trop_det_permutations
from tropical.scalar import TropicalScalar
from utils.errors import InternalConsistencyError
from utils.logger import get_logger

MAX_PERMUTATION_SIZE = 6
MAX_BRUTEFORCE_INDEX = 8

OK = "ok"
SKIPPED = "skipped"


@dataclass
class OracleReport:
    checks: Dict[str, str] = field(default_factory=dict)

    def to_json(self) -> Dict[str, Any]:
        return dict(self.checks)


class OracleRunner:
    """
    Медленные перекрестные проверки быстрых алгоритмов (флаг --oracle)

    Любое расхождение поднимает InternalConsistencyError.
    """

    def __init__(self, basis: GeneratorBasis):
        self.logger = get_logger(__name__)
        self.basis = basis
        self.report = OracleReport()

    def sample_points(self) -> List[Vector]:
        """l точек на диагонали фундаментального параллелепипеда"""
        core = self.basis.core.torus
        diagonal = [sum((g[i] for g in core.generators), Fraction(0)) for i in range(self.basis.dim)]
        size = self.basis.size
        return [tuple(Fraction(k + 1, size + 2) * a for a in diagonal) for k in range(size)]

    def check_determinant(self) -> None:
        """Динамика по подмножествам против перебора перестановок на (Θ_{b_j}(q_i))"""
        basis = self.basis
        if basis.size > MAX_PERMUTATION_SIZE:
            self.report.checks["trop_det"] = SKIPPED
            return
        rows = [[TropicalScalar(basis.evaluate(b, q)) for b in basis.reps] for q in self.sample_points()]
        matrix = TropicalMatrix.from_rows(rows)
        fast, slow = trop_det(matrix), trop_det_permutations(matrix)
        if fast != slow:
            raise InternalConsistencyError(f"trop_det = {fast.to_json()}, перебор дал {slow.to_json()}")
        self.report.checks["trop_det"] = OK

    def check_cosets(self) -> None:
        """Канонические представители Cok(q) против перебора в коробке"""
        core = self.basis.core
        if not core.dim:
            self.report.checks["cosets"] = SKIPPED
            return
        integral = core.form.integral_matrix(core.torus)
        index = abs(determinant(integral))
        if index > MAX_BRUTEFORCE_INDEX:
            self.report.checks["cosets"] = SKIPPED
            return

        reps = coker_torsion_representatives(core.torus, core.form)
        brute = coset_representatives_bruteforce(core.torus, core.form)
        solver = inverse(integral)
        if len(reps) != len(brute):
            raise InternalConsistencyError(f"|B| = {len(reps)}, перебор нашел {len(brute)} классов")
        for b in brute:
            matches = [r for r in reps if is_integral(mat_vec(solver, [x - y for x, y in zip(b, r)]))]
            if len(matches) != 1:
                raise InternalConsistencyError(f"Класс {b} представлен {len(matches)} раз")
        self.report.checks["cosets"] = OK

    def check_phi(self, section: ThetaSection) -> None:
        """φ через преобразование Лежандра против минимума по вершинам D_0^b"""
        if not self.basis.dim:
            self.report.checks["phi"] = SKIPPED
            return
        fast, slow = phi_embed(section), phi_by_vertices(section)
        if fast != slow:
            raise InternalConsistencyError(
                f"φ = {[c.to_json() for c in fast]}, перебор вершин дал {[c.to_json() for c in slow]}"
            )
        self.report.checks["phi"] = OK

    def run(self, section: ThetaSection) -> OracleReport:
        self.check_determinant()
        self.check_cosets()
        self.check_phi(section)
        self.logger.info(f"Оракулы: {self.report.checks}")
        return self.report
