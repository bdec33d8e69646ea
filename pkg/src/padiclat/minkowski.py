"""Norm-equivalence constants and the transference-type inequality checks.

The constants c1, c2 with c1*N(v) <= M(v) <= c2*N(v) (M the coordinate
sup norm) are computed exactly: c1 is the reciprocal of the largest
basis-vector norm, and 1/c2 is the smallest of the m distances from a
standard basis vector to the lattice spanned by the others -- one CVP
instance per coordinate.

From c2 the derived constants are kappa = 1/c2, c' = kappa^2 and
c'' = kappa^n; the five checks compare, all in exact NormValue
arithmetic:

* first minimum bound      lambda_1 >= det^(1/n)          (and kappa * det^(1/n))
* first transference       lambda_1(L) * lambda_1(L*) >= 1      (and kappa^2)
* maxima transference      max_1(L) * max_n(L*) >= 1            (and c')
* second minimum bound     prod max_i >= det                    (and c'' * det)
* dual product corollary   prod max_i(L) max_i(L*) >= 1         (and c''^2)

Only lower bounds are checked, never tightness.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache, reduce

from .lattices import Lattice
from .linalg import Matrix, Vector, dot
from .norms import SupNorm
from .ortho import successive_maxima
from .sampling import random_vector
from .scalars import NormValue, abs_value
from .solver import cvp


@dataclass(frozen=True)
class EquivConstants:
    """c1 * N <= M <= c2 * N, with the per-coordinate CVP distances kept."""

    c1: NormValue
    c2: NormValue
    per_basis_distances: tuple[NormValue, ...]
    max_basis_norm: NormValue


def equiv_constants(norm, m: int) -> EquivConstants:
    """Equivalence constants of a norm against the coordinate sup norm."""
    cfg = norm.cfg
    one = NormValue.one(cfg.p)
    units = [Vector.unit(cfg, m, i) for i in range(m)]
    basis_norms = [norm.eval(e) for e in units]
    max_basis = max(basis_norms)
    if max_basis.is_zero:
        raise ValueError("norm vanishes on a standard basis vector")
    if m == 1:
        # N(v) = N(e1) |v1| = N(e1) M(v), so both constants collapse
        return EquivConstants(
            c1=one / max_basis,
            c2=one / max_basis,
            per_basis_distances=(),
            max_basis_norm=max_basis,
        )
    distances = []
    for j in range(m):
        others = [units[i].entries for i in range(m) if i != j]
        sublattice = Lattice(Matrix.from_cols(cfg, others))
        distances.append(cvp(sublattice, norm, units[j]).distance)
    smallest = min(distances)
    if smallest.is_zero:
        raise ValueError("zero CVP distance; norm is degenerate on coordinates")
    return EquivConstants(
        c1=one / max_basis,
        c2=one / smallest,
        per_basis_distances=tuple(distances),
        max_basis_norm=max_basis,
    )


@dataclass(frozen=True)
class CheckRecord:
    """One verified comparison; passed iff `left relation right` exactly."""

    name: str
    passed: bool
    left: NormValue | None = None
    right: NormValue | None = None
    relation: str = ">="
    constant: NormValue | None = None
    detail: str = ""

    def to_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "left": None if self.left is None else str(self.left),
            "relation": self.relation,
            "right": None if self.right is None else str(self.right),
            "constant": None if self.constant is None else str(self.constant),
            "detail": self.detail,
        }


@lru_cache(maxsize=4096)
def _cached_maxima(basis: Matrix, norm):
    return successive_maxima(Lattice(basis), norm)


def _product(values, p) -> NormValue:
    return reduce(lambda a, b: a * b, values, NormValue.one(p))


def _kappa(consts: EquivConstants, p) -> NormValue:
    return NormValue.one(p) / consts.c2


def minkowski_first(lattice: Lattice, norm, consts: EquivConstants):
    """lambda_1 >= det^(1/n), unconditionally under M and scaled under N."""
    p = lattice.cfg.p
    rootdet = lattice.determinant().root(lattice.rank)
    lam_m = _cached_maxima(lattice.basis, SupNorm(lattice.cfg))[0]
    lam_n = _cached_maxima(lattice.basis, norm)[0]
    kappa = _kappa(consts, p)
    scaled = kappa * rootdet
    return [
        CheckRecord("minkowski_first[M]", lam_m >= rootdet, lam_m, rootdet),
        CheckRecord("minkowski_first[N]", lam_n >= scaled, lam_n, scaled, constant=kappa),
    ]


def transference_first(lattice: Lattice, norm, consts: EquivConstants):
    """lambda_1(L) * lambda_1(L*) >= 1, and >= kappa^2 under N."""
    p = lattice.cfg.p
    dual = lattice.dual()
    m_norm = SupNorm(lattice.cfg)
    left_m = _cached_maxima(lattice.basis, m_norm)[0] * _cached_maxima(dual.basis, m_norm)[0]
    left_n = _cached_maxima(lattice.basis, norm)[0] * _cached_maxima(dual.basis, norm)[0]
    one = NormValue.one(p)
    kap2 = _kappa(consts, p) ** 2
    return [
        CheckRecord("transference_first[M]", left_m >= one, left_m, one),
        CheckRecord("transference_first[N]", left_n >= kap2, left_n, kap2, constant=kap2),
    ]


def transference_maxima(lattice: Lattice, norm, consts: EquivConstants):
    """max_1(L) * max_n(L*) >= 1, and >= c' = kappa^2 under N."""
    p = lattice.cfg.p
    dual = lattice.dual()
    m_norm = SupNorm(lattice.cfg)
    left_m = _cached_maxima(lattice.basis, m_norm)[0] * _cached_maxima(dual.basis, m_norm)[-1]
    left_n = _cached_maxima(lattice.basis, norm)[0] * _cached_maxima(dual.basis, norm)[-1]
    one = NormValue.one(p)
    cprime = _kappa(consts, p) ** 2
    return [
        CheckRecord("transference_maxima[M]", left_m >= one, left_m, one),
        CheckRecord("transference_maxima[N]", left_n >= cprime, left_n, cprime, constant=cprime),
    ]


def minkowski_second(lattice: Lattice, norm, consts: EquivConstants):
    """prod max_i >= det, and >= c'' * det with c'' = kappa^n under N."""
    p = lattice.cfg.p
    determinant = lattice.determinant()
    prod_m = _product(_cached_maxima(lattice.basis, SupNorm(lattice.cfg)), p)
    prod_n = _product(_cached_maxima(lattice.basis, norm), p)
    cpp = _kappa(consts, p) ** lattice.rank
    scaled = cpp * determinant
    return [
        CheckRecord("minkowski_second[M]", prod_m >= determinant, prod_m, determinant),
        CheckRecord("minkowski_second[N]", prod_n >= scaled, prod_n, scaled, constant=cpp),
    ]


def corollary_products(lattice: Lattice, norm, consts: EquivConstants):
    """prod max_i(L) * max_i(L*) >= 1, and >= c''^2 under N."""
    p = lattice.cfg.p
    dual = lattice.dual()
    m_norm = SupNorm(lattice.cfg)
    left_m = _product(_cached_maxima(lattice.basis, m_norm), p) * _product(
        _cached_maxima(dual.basis, m_norm), p
    )
    left_n = _product(_cached_maxima(lattice.basis, norm), p) * _product(
        _cached_maxima(dual.basis, norm), p
    )
    one = NormValue.one(p)
    cpp2 = (_kappa(consts, p) ** lattice.rank) ** 2
    return [
        CheckRecord("corollary_products[M]", left_m >= one, left_m, one),
        CheckRecord("corollary_products[N]", left_n >= cpp2, left_n, cpp2, constant=cpp2),
    ]


_CHECKS = (
    minkowski_first,
    transference_first,
    transference_maxima,
    minkowski_second,
    corollary_products,
)


@dataclass
class VerificationReport:
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.records)

    def to_dict(self):
        return {"ok": self.ok, "checks": [r.to_dict() for r in self.records]}

    def to_text(self) -> str:
        lines = []
        width = max(len(r.name) for r in self.records) if self.records else 0
        for r in self.records:
            status = "PASS" if r.passed else "FAIL"
            if r.left is not None:
                body = f"{r.left} {r.relation} {r.right}"
                if r.constant is not None:
                    body += f"   [constant {r.constant}]"
            else:
                body = r.detail
            lines.append(f"{status}  {r.name:<{width}}  {body}")
        lines.append("all checks passed" if self.ok else "SOME CHECKS FAILED")
        return "\n".join(lines)


def verification_report(
    lattice: Lattice,
    norm,
    consts: EquivConstants | None = None,
    seed: int = 0,
    equivalence_samples: int = 200,
) -> VerificationReport:
    """Run every inequality plus the duality invariants on one lattice."""
    cfg = lattice.cfg
    p = cfg.p
    one = NormValue.one(p)
    if consts is None:
        consts = equiv_constants(norm, lattice.dim)
    records: list[CheckRecord] = []
    for check in _CHECKS:
        records.extend(check(lattice, norm, consts))

    dual = lattice.dual()
    recip = lattice.determinant() * dual.determinant()
    records.append(
        CheckRecord("det_reciprocity", recip == one, recip, one, relation="==")
    )
    records.append(
        CheckRecord(
            "double_dual",
            dual.dual().same_lattice(lattice),
            relation="==",
            detail="dual(dual(L)) spans the same module as L",
        )
    )

    rng = random.Random(seed)
    pair_ok = True
    for _ in range(50):
        u = Vector.zero(cfg, lattice.dim)
        w = Vector.zero(cfg, lattice.dim)
        for j in range(lattice.rank):
            u = u + lattice.basis.col(j).scale(cfg.from_int(rng.randrange(-9, 10)))
            w = w + dual.basis.col(j).scale(cfg.from_int(rng.randrange(-9, 10)))
        if abs_value(dot(u, w)) > one:
            pair_ok = False
            break
    records.append(
        CheckRecord(
            "dual_pairing_integral",
            pair_ok,
            relation="==",
            detail="50 sampled pairs u in L, w in L* have |u.w| <= 1",
        )
    )

    sup = SupNorm(cfg)
    good = 0
    for _ in range(equivalence_samples):
        v = random_vector(rng, cfg, lattice.dim)
        nv = norm.eval(v)
        mv = sup.eval(v)
        if consts.c1 * nv <= mv <= consts.c2 * nv:
            good += 1
    records.append(
        CheckRecord(
            "norm_equivalence_sampled",
            good == equivalence_samples,
            relation="==",
            detail=f"{good}/{equivalence_samples} vectors satisfy c1*N <= M <= c2*N",
        )
    )
    return VerificationReport(records)
