"""Acceptance suite: one test per criterion, one printed line each.

Run with `pytest -s tests/test_acceptance.py` to see the PASS lines.
All comparisons are exact NormValue arithmetic; tolerances are zero.
Stated runtime budgets are asserted with wall-clock measurements.
"""

import itertools
import random
import time
from fractions import Fraction
from functools import lru_cache

import pytest

from padiclat.lattices import Lattice, dual_basis
from padiclat.linalg import Matrix, Vector
from padiclat.minkowski import (
    corollary_products,
    equiv_constants,
    minkowski_first,
    minkowski_second,
    transference_first,
    transference_maxima,
)
from padiclat.norms import ExtensionNorm, SupNorm, WeightedSupNorm
from padiclat.ortho import orthogonalize, successive_maxima
from padiclat.sampling import random_lattice, random_unimodular
from padiclat.scalars import FieldConfig, NormValue, Scalar
from padiclat.solver import cvp, cvp_bruteforce, depth_sufficient, maxima_bruteforce

Q2 = FieldConfig("Qp", 2)
B_ZETA = Matrix.from_int_rows(Q2, [[1, 0, 0], [0, 2, 0], [0, 0, 16], [0, 0, 16]])
ZETA_NORM = ExtensionNorm(Q2, [Q2.one()] * 5)

SUITE_FIELDS = [FieldConfig("Qp", p) for p in (2, 3, 5)] + [
    FieldConfig("FpT", p) for p in (2, 3)
]


def _report(number, description, body):
    t0 = time.perf_counter()
    try:
        result = body()
    except BaseException:
        print(f"ACCEPTANCE {number} FAIL — {description}")
        raise
    print(f"ACCEPTANCE {number} PASS — {description} ({time.perf_counter() - t0:.2f}s)")
    return result


@pytest.fixture(scope="module")
def suite_lattices():
    rng = random.Random(20240)
    out = []
    for i in range(200):
        cfg = SUITE_FIELDS[i % len(SUITE_FIELDS)]
        m = rng.randrange(1, 6)
        n = rng.randrange(1, m + 1)
        out.append(random_lattice(rng, cfg, m, n))
    return out


@lru_cache(maxsize=None)
def certified_extension(cfg, m):
    for tail in itertools.product(range(cfg.p), repeat=m):
        norm = ExtensionNorm(cfg, [cfg.from_int(c) for c in tail] + [cfg.one()])
        if norm.certified_unramified:
            return norm
    raise AssertionError(f"no certified degree-{m} polynomial over p={cfg.p}")


def weighted_norm(cfg, m):
    weights = [NormValue.one(cfg.p) if i % 2 == 0 else NormValue(cfg.p, -1) for i in range(m)]
    return WeightedSupNorm(cfg, weights)


def test_criterion_1_dual_basis_exact():
    def body():
        t0 = time.perf_counter()
        d = dual_basis(B_ZETA)
        elapsed = time.perf_counter() - t0
        expected = Matrix(
            Q2,
            [
                [Q2.one(), Q2.zero(), Q2.zero()],
                [Q2.zero(), Scalar(Q2, 1, 2), Q2.zero()],
                [Q2.zero(), Q2.zero(), Scalar(Q2, 1, 32)],
                [Q2.zero(), Q2.zero(), Scalar(Q2, 1, 32)],
            ],
        )
        assert d == expected
        assert elapsed < 0.1

    _report(1, "worked-example dual basis is exactly (1, 1/2, 1/32)", body)


def test_criterion_2_worked_example_maxima():
    def body():
        t0 = time.perf_counter()
        lat = Lattice(B_ZETA)
        assert successive_maxima(lat, ZETA_NORM) == (
            NormValue.one(2),
            NormValue(2, -1),
            NormValue(2, -4),
        )
        assert successive_maxima(lat.dual(), ZETA_NORM) == (
            NormValue(2, 5),
            NormValue(2, 1),
            NormValue.one(2),
        )
        assert time.perf_counter() - t0 < 1.0

    _report(2, "worked-example maxima (1,1/2,1/16) and dual (32,2,1)", body)


def test_criterion_3_transference_products():
    def body():
        lat = Lattice(B_ZETA)
        maxima = successive_maxima(lat, ZETA_NORM)
        dual_maxima = successive_maxima(lat.dual(), ZETA_NORM)
        assert maxima[0] * dual_maxima[2] == NormValue.one(2)
        assert dual_maxima[0] * maxima[2] == NormValue(2, 1)

    _report(3, "transference products equal 1 and 2 exactly", body)


def test_criterion_4_det_reciprocity(suite_lattices):
    def body():
        t0 = time.perf_counter()
        for lat in suite_lattices:
            one = NormValue.one(lat.cfg.p)
            assert lat.determinant() * lat.dual().determinant() == one
        assert time.perf_counter() - t0 < 10.0

    _report(4, "det reciprocity on 200 random lattices", body)


def test_criterion_5_double_dual(suite_lattices):
    def body():
        for lat in suite_lattices:
            assert lat.dual().dual().same_lattice(lat)

    _report(5, "double dual returns the same lattice on the 200", body)


def test_criterion_6_inequality_suite(suite_lattices):
    def body():
        consts_cache = {}
        checks = (
            minkowski_first,
            transference_first,
            transference_maxima,
            minkowski_second,
            corollary_products,
        )
        for lat in suite_lattices:
            cfg, m = lat.cfg, lat.dim
            norms = [SupNorm(cfg), weighted_norm(cfg, m), certified_extension(cfg, m)]
            for norm in norms:
                key = (norm, m)
                if key not in consts_cache:
                    consts_cache[key] = equiv_constants(norm, m)
                consts = consts_cache[key]
                for check in checks:
                    for rec in check(lat, norm, consts):
                        assert rec.passed, (cfg, m, norm.variant, rec.name)

    _report(6, "all five inequalities under M and each norm family on the 200", body)


def test_criterion_7_constants():
    def body():
        t0 = time.perf_counter()
        c_sup = equiv_constants(SupNorm(Q2), 3)
        assert (c_sup.c1, c_sup.c2) == (NormValue.one(2), NormValue.one(2))
        assert time.perf_counter() - t0 < 5.0

        t0 = time.perf_counter()
        c_weighted = equiv_constants(
            WeightedSupNorm(Q2, [NormValue.one(2), NormValue(2, -1)]), 2
        )
        assert (c_weighted.c1, c_weighted.c2) == (NormValue.one(2), NormValue(2, 1))
        assert len(c_weighted.per_basis_distances) == 2
        assert time.perf_counter() - t0 < 5.0

        t0 = time.perf_counter()
        c_ext = equiv_constants(ZETA_NORM, 4)
        assert (c_ext.c1, c_ext.c2) == (NormValue.one(2), NormValue.one(2))
        assert len(c_ext.per_basis_distances) == 4
        assert time.perf_counter() - t0 < 5.0

    _report(7, "constants (1,1) sup, (1,2) weighted, (1,1) extension via CVP", body)


def test_criterion_8_orthogonalizer_vs_oracle():
    def body():
        t0 = time.perf_counter()
        rng = random.Random(88)
        kinds = [FieldConfig("Qp", 2), FieldConfig("Qp", 3), FieldConfig("FpT", 2), FieldConfig("FpT", 3)]
        for i in range(100):
            cfg = kinds[i % 4]
            n = rng.randrange(1, 4)
            m = rng.randrange(n, 5)
            lat = random_lattice(rng, cfg, m, n, expo_range=(-1, 1))
            pick = i % 3
            if pick == 0:
                norm = SupNorm(cfg)
            elif pick == 1:
                norm = weighted_norm(cfg, m)
            else:
                norm = certified_extension(cfg, m)
            maxima = successive_maxima(lat, norm)
            oracle, certified = maxima_bruteforce(lat, norm, depth=4)
            if not certified:
                oracle, certified = maxima_bruteforce(lat, norm, depth=6)
            assert certified, (cfg, n, m, norm.variant)
            assert tuple(oracle) == tuple(maxima), (cfg, n, m, norm.variant)
            c = random_unimodular(rng, cfg, n)
            rebased = Lattice(lat.basis @ c)
            assert successive_maxima(rebased, norm) == maxima
        assert time.perf_counter() - t0 < 60.0

    _report(8, "orthogonalizer matches the counting oracle on 100 lattices", body)


def test_criterion_9_cvp_oracle_agreement():
    def body():
        rng = random.Random(909)
        kinds = [FieldConfig("Qp", 2), FieldConfig("Qp", 3), FieldConfig("FpT", 2), FieldConfig("FpT", 3)]
        for i in range(100):
            cfg = kinds[i % 4]
            p = cfg.p
            n = rng.randrange(1, 4)
            m = rng.randrange(n, 5)
            lat = random_lattice(rng, cfg, m, n, expo_range=(-1, 1))
            norm = SupNorm(cfg) if i % 2 == 0 else weighted_norm(cfg, m)
            hard = p == 3 and n == 3
            off_span = (not hard) and n < m and i % 3 == 0
            if off_span:
                target = Vector(
                    cfg,
                    [
                        cfg.from_int(rng.randrange(-4, 5)) * cfg.pi_pow(rng.randrange(-2, 2))
                        for _ in range(m)
                    ],
                )
            else:
                # in-span with a forced principal part: the depth-4
                # sufficiency condition then holds by the spread bound
                target = Vector.zero(cfg, m)
                for j in range(n):
                    c = cfg.from_int(rng.randrange(0, p * p))
                    if j == 0:
                        c = c + cfg.pi_pow(-rng.randrange(1, 3))
                    target = target + lat.basis.col(j).scale(c)
            exact = cvp(lat, norm, target)
            approx = cvp_bruteforce(lat, norm, target, depth=4)
            if not depth_sufficient(lat, norm, 4, approx.distance):
                approx = cvp_bruteforce(lat, norm, target, depth=6)
            assert exact.distance == approx.distance, (cfg, n, m, i)
            if off_span:
                assert exact.closest == approx.closest
                assert exact.coefficients == approx.coefficients
            # both results must satisfy the defining invariants
            assert lat.member(exact.closest) is not None
            assert norm.eval(target - exact.closest) == exact.distance
            assert norm.eval(target - approx.closest) == approx.distance

    _report(9, "cvp agrees with the depth-4/6 brute-force oracle on 100 instances", body)
