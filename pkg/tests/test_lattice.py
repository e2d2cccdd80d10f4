# tests/test_lattice.py
import random
from fractions import Fraction as F

import pytest

from lattice.cokernel import (
    alpha_membership,
    coker_torsion_representatives,
    cokernel_summary,
    coset_coordinates,
    coset_representatives_bruteforce,
    find_polarization,
    kernel_saturation,
    oriented_integral_determinant,
    splitting_matrix,
)
from lattice.ellipsoid import LatticeEnumerator
from lattice.linalg import (
    as_matrix,
    determinant,
    gram_factorization,
    inverse,
    is_integral,
    mat_mul,
    mat_vec,
    symmetric_inertia,
    transpose,
)
from lattice.models import PolarizationForm, TorusSpec
from lattice.normal_forms import hermite_column_basis, reduce_in_box, smith_normal_form
from utils.errors import IntegralityViolation, InvalidSpec, NotSemidefinite, TruncationNotCertified

EXAMPLE_FORM = PolarizationForm.from_rows([[2, 1], [1, 2]])
EXAMPLE_TORUS = TorusSpec.from_rows([["4/3", "-2/3"], ["-2/3", "4/3"]])


def test_smith_examples():
    assert smith_normal_form([[1, 0], [0, 1]]).diagonal == (1, 1)
    assert smith_normal_form([[2, 0], [0, 2]]).diagonal == (2, 2)
    assert smith_normal_form([[2, 1], [1, 2]]).diagonal == (1, 3)


def test_smith_random_matrices():
    rng = random.Random(5)
    for _ in range(25):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        a = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        snf = smith_normal_form(a)
        assert mat_mul(mat_mul(as_matrix(snf.U), as_matrix(a)), as_matrix(snf.V)) == as_matrix(snf.D)
        assert abs(determinant(as_matrix(snf.U))) == 1
        assert abs(determinant(as_matrix(snf.V))) == 1
        nonzero = [d for d in snf.diagonal if d != 0]
        assert all(d > 0 for d in nonzero)
        for first, second in zip(nonzero, nonzero[1:]):
            assert second % first == 0
        for i, row in enumerate(snf.D):
            assert all(value == 0 for j, value in enumerate(row) if j != i)


def test_hermite_and_box_reduction():
    basis = hermite_column_basis([[2, 1], [0, 3]])
    assert basis[1][0] == 0 and basis[0][0] > 0 and basis[1][1] > 0
    rep, coeffs = reduce_in_box((7, -4), basis)
    assert all(0 <= rep[i] < basis[i][i] for i in range(2))
    restored = tuple(rep[i] + sum(basis[i][j] * coeffs[j] for j in range(2)) for i in range(2))
    assert restored == (7, -4)


def test_coker_representatives_examples():
    assert coker_torsion_representatives(TorusSpec.standard(1), PolarizationForm.from_rows([[3]])) == [(0,), (1,), (2,)]
    assert coker_torsion_representatives(EXAMPLE_TORUS, EXAMPLE_FORM) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    unimodular = PolarizationForm.from_rows([[2, 1], [1, 1]])
    assert coker_torsion_representatives(TorusSpec.standard(2), unimodular) == [(0, 0)]


def test_coker_requires_integrality():
    with pytest.raises(IntegralityViolation):
        coker_torsion_representatives(TorusSpec.standard(1), PolarizationForm.from_rows([["1/2"]]))


def test_coker_matches_bruteforce():
    rng = random.Random(8)
    checked = 0
    while checked < 12:
        k = [[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)]
        size = abs(determinant(as_matrix(k)))
        if size == 0 or size > 8:
            continue
        form = PolarizationForm.from_rows([[2, 1], [1, 2]])
        torus = TorusSpec(2, mat_mul(inverse(form.matrix), as_matrix(k)))
        reps = coker_torsion_representatives(torus, form)
        assert reps[0] == (0, 0) and reps[1:] == sorted(reps[1:])
        brute = coset_representatives_bruteforce(torus, form)
        assert len(reps) == len(brute) == size
        solver = inverse(form.integral_matrix(torus))
        for b in brute:
            matches = [r for r in reps if is_integral(mat_vec(solver, [x - y for x, y in zip(b, r)]))]
            assert len(matches) == 1
        checked += 1


def test_coset_coordinates():
    rep, coeffs = coset_coordinates((5, -3), EXAMPLE_TORUS, EXAMPLE_FORM)
    assert rep in coker_torsion_representatives(EXAMPLE_TORUS, EXAMPLE_FORM)
    image = mat_vec(EXAMPLE_FORM.integral_matrix(EXAMPLE_TORUS), coeffs)
    assert tuple(a + b for a, b in zip(rep, image)) == (5, -3)


def test_kernel_saturation_examples():
    definite = kernel_saturation(EXAMPLE_FORM, EXAMPLE_TORUS)
    assert definite.rank == 2 and definite.kernel_integral == () and definite.kernel_lattice == ()

    coordinate = kernel_saturation(PolarizationForm.from_rows([[1, 0], [0, 0]]), TorusSpec.standard(2))
    assert coordinate.kernel_integral == ((0, 1),)
    assert coordinate.kernel_lattice == ((F(0), F(1)),)

    diagonal = kernel_saturation(PolarizationForm.from_rows([[1, 1], [1, 1]]), TorusSpec.standard(2))
    assert diagonal.kernel_integral == ((1, -1),)
    assert abs(determinant(diagonal.splitting)) == 1


def test_kernel_saturation_rejects_negative_forms():
    with pytest.raises(NotSemidefinite):
        kernel_saturation(PolarizationForm.from_rows([[1, 0], [0, -1]]), TorusSpec.standard(2))


def test_splitting_kills_kernel_block():
    form = PolarizationForm.from_rows([[2, 4], [4, 8]])
    k, w = splitting_matrix(form)
    assert k == 1
    image = mat_mul(form.matrix, w)
    assert all(row[1] == 0 for row in image)
    assert abs(determinant(w)) == 1


def test_alpha_membership_examples():
    yes = alpha_membership((F(1), F(2)), EXAMPLE_FORM, EXAMPLE_TORUS)
    assert yes.member and yes.gamma == (0, 0)
    assert mat_vec(EXAMPLE_FORM.matrix, yes.r) == (F(1), F(2))

    zero = PolarizationForm.from_rows([[0, 0], [0, 0]])
    integral = alpha_membership((F(1), F(0)), zero, TorusSpec.standard(2))
    assert integral.member and integral.r == (F(0), F(0)) and integral.gamma == (1, 0)

    no = alpha_membership((F(1, 2), F(0)), zero, TorusSpec.standard(2))
    assert not no.member
    assert no.witness == (1, 0)


def test_alpha_membership_semidefinite_identity():
    rng = random.Random(4)
    form = PolarizationForm.from_rows([[1, 1], [1, 1]])
    for _ in range(20):
        alpha = (F(rng.randint(-9, 9), rng.randint(1, 4)), F(rng.randint(-9, 9), rng.randint(1, 4)))
        result = alpha_membership(alpha, form, TorusSpec.standard(2))
        if result.member:
            total = tuple(a + g for a, g in zip(mat_vec(form.matrix, result.r), result.gamma))
            assert total == alpha
        else:
            assert not is_integral([sum(a * w for a, w in zip(alpha, result.witness))])


def test_cokernel_summary_and_determinant():
    summary = cokernel_summary(EXAMPLE_TORUS, EXAMPLE_FORM)
    assert summary.torsion_order == 4 and summary.is_finite
    assert oriented_integral_determinant(EXAMPLE_TORUS, EXAMPLE_FORM) == 4

    degenerate = cokernel_summary(TorusSpec.standard(2), PolarizationForm.from_rows([[2, 0], [0, 0]]))
    assert degenerate.torsion_order == 2 and degenerate.free_rank == 1
    assert degenerate.to_json()["free_part"] == "infinite"


def test_find_polarization_on_random_tori():
    rng = random.Random(9)
    for _ in range(10):
        basis = [[F(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(2)] for _ in range(2)]
        if determinant(as_matrix(basis)) == 0:
            continue
        torus = TorusSpec(2, as_matrix(basis))
        form = find_polarization(torus)
        assert symmetric_inertia(form.matrix) == (2, 0, 0)
        form.check_integrality(torus)


def test_inertia_and_gram_factorization():
    assert symmetric_inertia(as_matrix([[0, 1], [1, 0]])) == (1, 1, 0)
    assert symmetric_inertia(as_matrix([[1, 1], [1, 1]])) == (1, 0, 1)
    gram = as_matrix([[4, 2], [2, 3]])
    upper, diag = gram_factorization(gram)
    rebuilt = mat_mul(mat_mul(transpose(upper), as_matrix([[diag[0], 0], [0, diag[1]]])), upper)
    assert rebuilt == gram
    with pytest.raises(InvalidSpec):
        gram_factorization(as_matrix([[1, 2], [2, 1]]))


def test_enumerator_closest_and_within():
    enumerator = LatticeEnumerator(as_matrix([[1]]), as_matrix([[3]]))
    value, minimizers = enumerator.closest((F(1, 3),))
    assert value == F(1, 3) and minimizers == [(0,)]
    value, minimizers = enumerator.closest((F(1, 2),))
    assert value == F(3, 4) and sorted(minimizers) == [(0,), (1,)]
    hits = enumerator.within((F(0),), F(3))
    assert [k for k, _ in hits] == [(0,), (-1,), (1,)]


def test_enumerator_respects_max_box():
    enumerator = LatticeEnumerator(as_matrix([[1]]), as_matrix([[1]]), max_box=3)
    with pytest.raises(TruncationNotCertified):
        enumerator.within((F(0),), F(100))
