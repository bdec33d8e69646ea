"""Seeded random generators for lattices, scalars and vectors.

The lattice generator builds bases as (random unimodular integral
matrix) x (diagonal powers of the uniformizer), which guarantees
independent columns and gives a controllable spread of successive
maxima.  Everything takes an explicit random.Random so suites are
reproducible.
"""

from __future__ import annotations

import random

from .lattices import Lattice
from .linalg import Matrix, Vector, det, gram
from .scalars import FieldConfig, GFPoly, Scalar


def random_integral_scalar(rng: random.Random, cfg: FieldConfig, max_deg: int = 2) -> Scalar:
    if cfg.is_qp:
        return cfg.from_int(rng.randrange(-3, 4))
    coeffs = [rng.randrange(cfg.p) for _ in range(rng.randrange(1, max_deg + 2))]
    return Scalar(cfg, GFPoly(cfg.p, coeffs), GFPoly.const(cfg.p, 1))


def random_scalar(rng: random.Random, cfg: FieldConfig, expo_range=(-3, 3), zero_ok=True) -> Scalar:
    x = random_integral_scalar(rng, cfg)
    if x.is_zero():
        if not zero_ok:
            x = cfg.one()
        else:
            return x
    return x * cfg.pi_pow(rng.randint(*expo_range))


def random_vector(rng: random.Random, cfg: FieldConfig, m: int, expo_range=(-3, 3)) -> Vector:
    return Vector(cfg, [random_scalar(rng, cfg, expo_range) for _ in range(m)])


def random_unimodular(rng: random.Random, cfg: FieldConfig, size: int) -> Matrix:
    """Random element of GL_size(O_k) built from shears and swaps."""
    rows = [[cfg.one() if i == j else cfg.zero() for j in range(size)] for i in range(size)]
    for _ in range(2 * size + 2):
        i, j = rng.randrange(size), rng.randrange(size)
        if i == j:
            continue
        c = random_integral_scalar(rng, cfg)
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    rng.shuffle(rows)
    return Matrix(cfg, rows)


def random_lattice(
    rng: random.Random,
    cfg: FieldConfig,
    m: int,
    n: int,
    expo_range=(-3, 3),
) -> Lattice:
    """Rank-n lattice in k^m with uniformizer-power diagonal scaling.

    Bases whose span carries a degenerate dot pairing (singular BᵗB) are
    rejected: such lattices have no dual, so none of the dual-based
    machinery applies to them.
    """
    while True:
        u = random_unimodular(rng, cfg, m)
        cols = []
        for j in range(n):
            scale = cfg.pi_pow(rng.randint(*expo_range))
            cols.append([scale * u.rows[i][j] for i in range(m)])
        basis = Matrix.from_cols(cfg, cols)
        if n == m or not det(gram(basis)).is_zero():
            return Lattice(basis)
