import random
from fractions import Fraction

import pytest

from padiclat.lattices import Lattice
from padiclat.linalg import Matrix, Vector
from padiclat.minkowski import (
    CheckRecord,
    corollary_products,
    equiv_constants,
    minkowski_first,
    minkowski_second,
    transference_first,
    transference_maxima,
    verification_report,
)
from padiclat.norms import ExtensionNorm, SupNorm, WeightedSupNorm
from padiclat.sampling import random_lattice, random_vector
from padiclat.scalars import FieldConfig, NormValue

Q2 = FieldConfig("Qp", 2)
B_ZETA = Matrix.from_int_rows(Q2, [[1, 0, 0], [0, 2, 0], [0, 0, 16], [0, 0, 16]])
ZETA_NORM = ExtensionNorm(Q2, [Q2.one()] * 5)
WEIGHTED = WeightedSupNorm(Q2, [NormValue.one(2), NormValue(2, -1)])

FIELDS = [FieldConfig("Qp", p) for p in (2, 3, 5)] + [FieldConfig("FpT", p) for p in (2, 3)]


class TestEquivConstants:
    def test_sup_norm_trivial(self):
        for m in (1, 2, 4):
            c = equiv_constants(SupNorm(Q2), m)
            assert c.c1 == NormValue.one(2)
            assert c.c2 == NormValue.one(2)

    def test_weighted(self):
        c = equiv_constants(WEIGHTED, 2)
        assert c.c1 == NormValue.one(2)
        assert c.c2 == NormValue(2, 1)  # the value 2
        # the two CVP distances: dist(e1, L(e2)) = 1 and dist(e2, L(e1)) = 1/2
        assert sorted(c.per_basis_distances) == [NormValue(2, -1), NormValue.one(2)]

    def test_extension(self):
        c = equiv_constants(ZETA_NORM, 4)
        assert c.c1 == NormValue.one(2)
        assert c.c2 == NormValue.one(2)
        assert all(d == NormValue.one(2) for d in c.per_basis_distances)

    def test_invariant_relations(self):
        c = equiv_constants(WEIGHTED, 2)
        assert c.c1 == NormValue.one(2) / c.max_basis_norm
        assert c.c2 == NormValue.one(2) / min(c.per_basis_distances)

    def test_m_equals_one(self):
        n = WeightedSupNorm(Q2, [NormValue(2, -2)])
        c = equiv_constants(n, 1)
        assert c.c1 == c.c2 == NormValue(2, 2)
        assert c.per_basis_distances == ()


class TestChecksOnWorkedExample:
    def setup_method(self):
        self.lat = Lattice(B_ZETA)
        self.consts = equiv_constants(ZETA_NORM, 4)

    def test_minkowski_first(self):
        rec_m, rec_n = minkowski_first(self.lat, ZETA_NORM, self.consts)
        assert rec_m.passed and rec_n.passed
        assert rec_m.left == NormValue.one(2)
        assert rec_m.right == NormValue(2, Fraction(-11, 6))

    def test_transference_first(self):
        rec_m, rec_n = transference_first(self.lat, ZETA_NORM, self.consts)
        assert rec_m.passed and rec_n.passed
        assert rec_n.left == NormValue(2, 5)  # 1 * 32

    def test_transference_maxima_both_orders(self):
        rec_m, rec_n = transference_maxima(self.lat, ZETA_NORM, self.consts)
        assert rec_n.left == NormValue.one(2)  # 1 * 1
        assert rec_m.passed and rec_n.passed
        swapped = transference_maxima(self.lat.dual(), ZETA_NORM, self.consts)
        assert swapped[1].left == NormValue(2, 1)  # 32 * (1/16) = 2
        assert all(r.passed for r in swapped)

    def test_minkowski_second(self):
        rec_m, rec_n = minkowski_second(self.lat, ZETA_NORM, self.consts)
        assert rec_m.left == NormValue(2, -5)  # 1 * 1/2 * 1/16
        assert rec_m.right == NormValue(2, Fraction(-11, 2))
        assert rec_m.passed and rec_n.passed

    def test_corollary_products(self):
        rec_m, rec_n = corollary_products(self.lat, ZETA_NORM, self.consts)
        assert rec_n.left == NormValue(2, 1)  # (1*32)(1/2*2)(1/16*1) = 2
        assert rec_m.passed and rec_n.passed


class TestChecksElsewhere:
    def test_minkowski_first_sum_difference(self):
        lat = Lattice(Matrix.from_int_rows(Q2, [[1, 1], [1, -1]]))
        consts = equiv_constants(SupNorm(Q2), 2)
        rec_m, _ = minkowski_first(lat, SupNorm(Q2), consts)
        assert rec_m.left == NormValue.one(2)
        assert rec_m.right == NormValue(2, Fraction(-1, 2))
        assert rec_m.passed

    def test_identity_lattices(self):
        lat = Lattice(Matrix.identity(Q2, 3))
        consts = equiv_constants(SupNorm(Q2), 3)
        for check in (
            minkowski_first,
            transference_first,
            transference_maxima,
            minkowski_second,
            corollary_products,
        ):
            for rec in check(lat, SupNorm(Q2), consts):
                assert rec.passed
                assert rec.left == rec.right  # identity is extremal everywhere

    def test_derived_constant_coherence(self):
        consts = equiv_constants(WEIGHTED, 2)
        lat = Lattice(Matrix.identity(Q2, 2))
        kappa = NormValue.one(2) / consts.c2
        _, first_n = minkowski_first(lat, WEIGHTED, consts)
        assert first_n.constant == kappa
        _, tm_n = transference_maxima(lat, WEIGHTED, consts)
        assert tm_n.constant == kappa**2
        _, ms_n = minkowski_second(lat, WEIGHTED, consts)
        assert ms_n.constant == kappa**lat.rank


class TestRandomSuite:
    def test_all_checks_pass_on_random_lattices(self):
        rng = random.Random(2024)
        for _ in range(50):
            cfg = rng.choice(FIELDS)
            m = rng.randrange(1, 6)
            n = rng.randrange(1, m + 1)
            lat = random_lattice(rng, cfg, m, n)
            norm = SupNorm(cfg)
            consts = equiv_constants(norm, m)
            for check in (
                minkowski_first,
                transference_first,
                transference_maxima,
                minkowski_second,
                corollary_products,
            ):
                for rec in check(lat, norm, consts):
                    assert rec.passed, (cfg, rec)

    def test_sampled_equivalence_thousand_vectors(self):
        rng = random.Random(11)
        sup = SupNorm(Q2)
        consts = equiv_constants(ZETA_NORM, 4)
        for _ in range(1000):
            v = random_vector(rng, Q2, 4)
            nv = ZETA_NORM.eval(v)
            mv = sup.eval(v)
            assert consts.c1 * nv <= mv
            assert mv <= consts.c2 * nv


class TestReport:
    def test_full_report_on_zeta(self):
        rep = verification_report(Lattice(B_ZETA), ZETA_NORM, seed=3)
        assert rep.ok
        names = [r.name for r in rep.records]
        assert "det_reciprocity" in names
        assert "double_dual" in names
        assert "norm_equivalence_sampled" in names
        text = rep.to_text()
        assert "PASS" in text and "FAIL" not in text

    def test_report_serialization_deterministic(self):
        a = verification_report(Lattice(B_ZETA), ZETA_NORM, seed=5).to_dict()
        b = verification_report(Lattice(B_ZETA), ZETA_NORM, seed=5).to_dict()
        assert a == b

    def test_failing_record_surfaces(self):
        rec = CheckRecord("demo", False, NormValue.one(2), NormValue(2, 1))
        from padiclat.minkowski import VerificationReport

        rep = VerificationReport([rec])
        assert not rep.ok
        assert "FAIL" in rep.to_text()
