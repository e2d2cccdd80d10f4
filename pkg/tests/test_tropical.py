# tests/test_tropical.py
import random
from fractions import Fraction as F

import pytest

from tropical.matrix import (
    TropicalMatrix,
    projective_normalize,
    trop_det,
    trop_det_permutations,
    trop_linear_combination,
)
from tropical.scalar import NEG_INF, ZERO, TropicalScalar, format_rational, parse_rational, trop_add, trop_mul
from utils.errors import InvalidSpec, NonSquare


def t(value):
    return TropicalScalar.from_json(value)


def random_scalar(rng):
    if rng.random() < 0.15:
        return NEG_INF
    return TropicalScalar(F(rng.randint(-20, 20), rng.randint(1, 6)))


def random_matrix(rng, size):
    return TropicalMatrix(size, size, tuple(random_scalar(rng) for _ in range(size * size)))


def test_trop_add_examples():
    assert trop_add(t(3), t(5)) == t(5)
    assert trop_add(NEG_INF, t("7/2")) == t("7/2")
    assert trop_add(t(2), t(2)) == t(2)


def test_trop_mul_examples():
    assert trop_mul(t(3), t(5)) == t(8)
    assert trop_mul(NEG_INF, t(5)) == NEG_INF
    assert trop_mul(ZERO, t("-4/3")) == t("-4/3")


def test_semifield_axioms_on_random_triples():
    rng = random.Random(1)
    for _ in range(300):
        x, y, z = (random_scalar(rng) for _ in range(3))
        assert trop_add(x, NEG_INF) == x
        assert trop_mul(x, NEG_INF) == NEG_INF
        assert trop_add(x, x) == x
        assert trop_mul(x, trop_add(y, z)) == trop_add(trop_mul(x, y), trop_mul(x, z))
        assert trop_mul(trop_add(x, y), z) == trop_add(trop_mul(x, z), trop_mul(y, z))
        assert trop_mul(trop_mul(x, y), z) == trop_mul(x, trop_mul(y, z))
        assert trop_add(trop_add(x, y), z) == trop_add(x, trop_add(y, z))
        assert trop_mul(ZERO, x) == x
        if trop_mul(x, z) == trop_mul(y, z) and not z.is_neg_inf:
            assert x == y


def test_serialization():
    assert NEG_INF.to_json() == "-inf"
    assert t("6/4").to_json() == "3/2"
    assert format_rational(F(-2, 4)) == "-1/2"
    assert parse_rational("5") == 5
    with pytest.raises(InvalidSpec):
        parse_rational("abc")
    with pytest.raises(InvalidSpec):
        parse_rational(True)


def test_trop_det_examples():
    assert trop_det(TropicalMatrix.from_rows([[0]])) == ZERO
    assert trop_det(TropicalMatrix.from_rows([[1, "-inf"], ["-inf", 2]])) == t(3)
    assert trop_det(TropicalMatrix.from_rows([[0, 1], [2, 3]])) == t(3)


def test_trop_det_requires_square():
    with pytest.raises(NonSquare):
        trop_det(TropicalMatrix.from_rows([[0, 1, 2], [3, 4, 5]]))


def test_trop_det_row_of_neg_inf():
    m = TropicalMatrix.from_rows([[1, 2, 3], ["-inf", "-inf", "-inf"], [4, 5, 6]])
    assert trop_det(m) == NEG_INF


def test_trop_det_transpose_invariance():
    rng = random.Random(2)
    for _ in range(30):
        m = random_matrix(rng, 4)
        assert trop_det(m) == trop_det(m.transpose())


def test_trop_det_matches_permutation_oracle():
    rng = random.Random(3)
    for size in range(1, 7):
        for _ in range(5):
            m = random_matrix(rng, size)
            assert trop_det(m) == trop_det_permutations(m)


def test_generator_module_combination():
    n = 4
    generators = [tuple(NEG_INF if i == j else ZERO for i in range(n)) for j in range(n)]
    coeffs = [t(5), t(2), t(1), t(-3)]
    combination = trop_linear_combination(coeffs, generators)
    assert combination == (t(2), t(5), t(5), t(5))


def test_generator_module_projective_vertices():
    n = 3
    generators = [tuple(NEG_INF if i == j else ZERO for i in range(n)) for j in range(n)]
    centre = projective_normalize(trop_linear_combination([t(4)] * n, generators))
    vertices = {centre} | {projective_normalize(g) for g in generators}
    assert centre == (ZERO,) * n
    assert len(vertices) == n + 1
    with pytest.raises(InvalidSpec):
        projective_normalize((NEG_INF, NEG_INF))
