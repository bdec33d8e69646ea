"""The supported norm families on k^m.

Three families, all with values of the form p^e (e rational), so every
norm comparison in the toolkit is exact:

* ``SupNorm``          -- max_i |v_i| (the reference norm M);
* ``WeightedSupNorm``  -- max_i w_i |v_i| with fixed nonzero weights;
* ``ExtensionNorm``    -- the absolute value pulled back from the degree-m
  extension K = k[x]/(f) via the power-basis coordinates, i.e.
  |N_{K/k}(v)|^(1/m) computed from the multiplication-by-v matrix.

ExtensionNorm certifies the sufficient "unramified" condition (monic
integral f whose reduction in F_p[x] is irreducible, degree <= 8 searched
exhaustively).  Uncertified polynomials are accepted but flagged;
axiom_check is the user's safeguard there.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import linalg
from .scalars import FieldConfig, GFPoly, NormValue, Scalar, abs_value
from .linalg import Matrix, Vector


class SupNorm:
    """max_i |v_i|; the coordinate sup norm."""

    variant = "sup"

    def __init__(self, cfg: FieldConfig):
        self.cfg = cfg

    def eval(self, v: Vector) -> NormValue:
        out = NormValue.zero(self.cfg.p)
        for x in v:
            a = abs_value(x)
            if a > out:
                out = a
        return out

    def __eq__(self, other):
        return isinstance(other, SupNorm) and other.cfg == self.cfg

    def __hash__(self):
        return hash(("sup", self.cfg))

    def __repr__(self):
        return f"SupNorm({self.cfg.kind} p={self.cfg.p})"


class WeightedSupNorm:
    """max_i w_i |v_i| with strictly positive weights w_i = p^(e_i)."""

    variant = "weighted"

    def __init__(self, cfg: FieldConfig, weights):
        weights = tuple(weights)
        if not weights:
            raise ValueError("need at least one weight")
        for w in weights:
            if not isinstance(w, NormValue) or w.p != cfg.p:
                raise ValueError("weights must be NormValue over the same p")
            if w.is_zero:
                raise ValueError("weights must be nonzero")
        self.cfg = cfg
        self.weights = weights

    def eval(self, v: Vector) -> NormValue:
        if len(v) != len(self.weights):
            raise ValueError(f"expected length {len(self.weights)}, got {len(v)}")
        out = NormValue.zero(self.cfg.p)
        for w, x in zip(self.weights, v):
            a = w * abs_value(x)
            if a > out:
                out = a
        return out

    def __eq__(self, other):
        return (
            isinstance(other, WeightedSupNorm)
            and other.cfg == self.cfg
            and other.weights == self.weights
        )

    def __hash__(self):
        return hash(("weighted", self.cfg, self.weights))

    def __repr__(self):
        ws = ", ".join(str(w) for w in self.weights)
        return f"WeightedSupNorm([{ws}])"


class ExtensionNorm:
    """Absolute value of K = k[x]/(f) read through power-basis coordinates.

    eval(v) = |det(mul_v)|^(1/m) where mul_v is multiplication by
    v = v_0 + v_1 x + ... + v_{m-1} x^{m-1} in k[x]/(f).  When the
    polynomial is certified unramified the power basis spans the valuation
    ring, so the same value equals p^(-min_i val(v_i)); eval uses that
    shortcut and keeps the determinant route for uncertified inputs.
    """

    variant = "extension"

    def __init__(self, cfg: FieldConfig, min_poly):
        min_poly = tuple(min_poly)
        if len(min_poly) < 2:
            raise ValueError("min_poly must have degree >= 1")
        for c in min_poly:
            if not isinstance(c, Scalar) or c.cfg != cfg:
                raise ValueError("min_poly coefficients must be scalars of the field")
        if min_poly[-1] != cfg.one():
            raise ValueError("min_poly must be monic")
        self.cfg = cfg
        self.min_poly = min_poly
        self.degree = len(min_poly) - 1
        self.certified_unramified = self._certify()

    def _certify(self) -> bool:
        if self.degree > 8:
            return False
        residue = _residue_poly(self.min_poly)
        if residue is None:
            return False
        return _irreducible_mod_p(residue, self.cfg.p)

    def eval(self, v: Vector) -> NormValue:
        if len(v) != self.degree:
            raise ValueError(f"expected length {self.degree}, got {len(v)}")
        if self.certified_unramified:
            return SupNorm(self.cfg).eval(v)
        return self.eval_via_det(v)

    def eval_via_det(self, v: Vector) -> NormValue:
        """The defining formula |det(multiplication-by-v)|^(1/m)."""
        if len(v) != self.degree:
            raise ValueError(f"expected length {self.degree}, got {len(v)}")
        mult = self._mul_matrix(v)
        return abs_value(linalg.det(mult)).root(self.degree)

    def _mul_matrix(self, v: Vector) -> Matrix:
        m = self.degree
        cfg = self.cfg
        cols = []
        current = list(v.entries)
        for _ in range(m):
            cols.append(list(current))
            # multiply by x and reduce: x^m = -sum(min_poly[i] x^i)
            lead = current[-1]
            nxt = [cfg.zero()] + current[:-1]
            if not lead.is_zero():
                for i in range(m):
                    nxt[i] = nxt[i] - lead * self.min_poly[i]
            current = nxt
        return Matrix.from_cols(cfg, cols)

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionNorm)
            and other.cfg == self.cfg
            and other.min_poly == self.min_poly
        )

    def __hash__(self):
        return hash(("extension", self.cfg, self.min_poly))

    def __repr__(self):
        flag = "certified" if self.certified_unramified else "uncertified"
        return f"ExtensionNorm(degree={self.degree}, {flag})"


Norm = SupNorm | WeightedSupNorm | ExtensionNorm


def _residue_poly(min_poly) -> list[int] | None:
    """Reduction of an integral polynomial to the residue field F_p.

    Returns None when some coefficient is non-integral (reduction
    undefined) -- the polynomial simply stays uncertified then.
    """
    cfg = min_poly[0].cfg
    p = cfg.p
    out = []
    for c in min_poly:
        if c.is_zero():
            out.append(0)
            continue
        if c.valuation() < 0:
            return None
        if cfg.is_qp:
            out.append((c.num * pow(c.den, -1, p)) % p)
        else:
            den0 = c.den.constant_term()  # nonzero: val(c) >= 0
            out.append((c.num.constant_term() * pow(den0, -1, p)) % p)
    return out


def _irreducible_mod_p(coeffs: list[int], p: int) -> bool:
    """Exhaustive factor search over F_p; fine for degree <= 8."""
    f = GFPoly(p, coeffs)
    m = f.degree
    if m < 1 or f.coeffs[-1] % p == 0:
        return False
    if m == 1:
        return True
    for d in range(1, m // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = GFPoly(p, list(tail) + [1])  # monic candidate divisor
            if (f % g).is_zero():
                return False
    return True


@dataclass
class AxiomViolation:
    axiom: str
    detail: str


@dataclass
class AxiomReport:
    """Outcome of checking the three norm axioms on sample vectors."""

    checked_vectors: int = 0
    checked_pairs: int = 0
    violations: list[AxiomViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def axiom_check(norm, samples, max_pairs: int = 2000) -> AxiomReport:
    """Check positivity, homogeneity and the ultrametric inequality.

    Homogeneity is exercised with a fixed set of scalars (units, the
    uniformizer and its inverse).  The report carries the first violation
    of each axiom rather than raising.
    """
    cfg = norm.cfg
    report = AxiomReport()
    scalars = [
        cfg.one(),
        cfg.uniformizer(),
        cfg.pi_pow(-1),
        cfg.from_int(cfg.p - 1) + cfg.uniformizer(),
    ]

    def note(axiom, detail):
        if not any(v.axiom == axiom for v in report.violations):
            report.violations.append(AxiomViolation(axiom, detail))

    samples = list(samples)
    for v in samples:
        report.checked_vectors += 1
        nv = norm.eval(v)
        if v.is_zero():
            if not nv.is_zero:
                note("positivity", f"N({v}) = {nv} but v = 0")
        elif nv.is_zero:
            note("positivity", f"N({v}) = 0 but v != 0")
        for x in scalars:
            if norm.eval(v.scale(x)) != abs_value(x) * nv:
                note("homogeneity", f"N({x} * {v}) != |{x}| * N({v})")
    pairs = 0
    for i, v in enumerate(samples):
        for w in samples[i:]:
            if pairs >= max_pairs:
                break
            pairs += 1
            lhs = norm.eval(v + w)
            rhs = max(norm.eval(v), norm.eval(w))
            if lhs > rhs:
                note("ultrametric", f"N(v+w) = {lhs} > max = {rhs} for v={v}, w={w}")
    report.checked_pairs = pairs
    return report
