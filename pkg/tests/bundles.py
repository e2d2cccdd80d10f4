# tests/bundles.py
import random
from math import gcd
from fractions import Fraction as F
from typing import Optional, Tuple

from lattice.linalg import as_matrix, determinant, inverse, mat_mul
from lattice.models import PolarizationForm, TorusSpec
from theta.bundle import BundleSpec


def circle_bundle(q: int = 3, alpha=0) -> BundleSpec:
    """L(q, α) на R/Z"""
    return BundleSpec(TorusSpec.standard(1), PolarizationForm.from_rows([[q]]), (F(alpha),))


def hexagonal_bundle(alpha=(0, 0)) -> BundleSpec:
    """q_R = [[2, 1], [1, 2]] на Λ = q_R^{-1}(2(Z^2)*)"""
    return BundleSpec(
        TorusSpec.from_rows([["4/3", "-2/3"], ["-2/3", "4/3"]]),
        PolarizationForm.from_rows([[2, 1], [1, 2]]),
        tuple(F(a) for a in alpha),
    )


def standard_bundle(rows, alpha=(0, 0)) -> BundleSpec:
    return BundleSpec(TorusSpec.standard(len(rows)), PolarizationForm.from_rows(rows), tuple(F(a) for a in alpha))


def random_definite_bundle(rng: random.Random, max_det: int = 4, dim: Optional[int] = None) -> BundleSpec:
    """
    Случайное положительно определенное расслоение с |B| = |det K| ≤ max_det

    Q рациональная положительно определенная, Λ = Q^{-1} K для целой K.
    """
    dim = dim or rng.choice((1, 2))
    if dim == 1:
        q = F(rng.randint(1, 5), rng.randint(1, 3))
        k = rng.randint(1, max_det)
        form = PolarizationForm.from_rows([[q]])
        torus = TorusSpec.from_rows([[F(k) / q]])
        return BundleSpec(torus, form, (F(rng.randint(-6, 6), rng.randint(1, 4)),))

    while True:
        a, d = rng.randint(1, 4), rng.randint(1, 4)
        b = rng.randint(-2, 2)
        if a * d - b * b <= 0:
            continue
        denominator = rng.randint(1, 2)
        form_rows = [[F(a, denominator), F(b, denominator)], [F(b, denominator), F(d, denominator)]]
        k = as_matrix([[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)])
        size = abs(determinant(k))
        if size == 0 or size > max_det:
            continue
        form = PolarizationForm.from_rows(form_rows)
        torus = TorusSpec(2, mat_mul(inverse(form.matrix), k))
        alpha = tuple(F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(2))
        return BundleSpec(torus, form, alpha)


def random_semidefinite_bundle(rng: random.Random, max_scale: int = 3) -> BundleSpec:
    """Q = c·v v^T на Z^2 с α ∈ Im(q_R) + (Z^2)*, |B| = c"""
    while True:
        v = (rng.randint(-2, 2), rng.randint(-2, 2))
        if gcd(abs(v[0]), abs(v[1])) != 1:
            continue
        c = rng.randint(1, max_scale)
        rows = [[c * v[0] * v[0], c * v[0] * v[1]], [c * v[0] * v[1], c * v[1] * v[1]]]
        t = F(rng.randint(-5, 5), rng.randint(1, 4))
        gamma = (rng.randint(-2, 2), rng.randint(-2, 2))
        alpha = tuple(t * c * vi + g for vi, g in zip(v, gamma))
        return standard_bundle(rows, alpha)


def integral_definite_bundle(rng: random.Random, max_det: int = 3) -> Tuple[BundleSpec, int]:
    """Целая положительно определенная Q на Λ = Q^{-1}K; возвращает (расслоение, |det K|)"""
    while True:
        a, d, b = rng.randint(1, 3), rng.randint(1, 3), rng.randint(-1, 1)
        if a * d - b * b <= 0:
            continue
        k = as_matrix([[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)])
        size = abs(determinant(k))
        if not 0 < size <= max_det:
            continue
        form = PolarizationForm.from_rows([[a, b], [b, d]])
        torus = TorusSpec(2, mat_mul(inverse(form.matrix), k))
        return BundleSpec(torus, form, (F(0), F(0))), int(size)
