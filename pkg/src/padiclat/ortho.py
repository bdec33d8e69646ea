"""Norm-orthogonal bases and successive maxima.

A basis v_1..v_n is N-orthogonal when N(sum a_i v_i) = max_i N(a_i v_i)
for every choice of field coefficients.  For the norm families here all
values lie in finitely many cosets of p^Z, which reduces that universal
statement to a finite test:

* group the basis vectors by the coset (fractional part of the value
  exponent) of their norms;
* inside a group, scale each vector by a power of the uniformizer so all
  norms agree;
* the basis is orthogonal iff every nonzero F_p-combination of the
  scaled vectors in every group keeps the common norm.  Cancellation
  below the max can only happen among terms tying for it, and only the
  leading digit of each coefficient matters.

Orthogonalization is a greedy descent: whenever a combination w drops
below the common norm, dividing out the shared uniformizer power leaves
a vector with a unit coefficient on some basis member; swapping it in is
a unimodular change of basis that strictly shrinks the product of the
basis norms.  The product is bounded below (sorted basis norms dominate
the successive maxima entrywise), so the descent is finite.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import floor

from .lattices import Lattice
from .linalg import Matrix, Vector, rank
from .scalars import NormValue

_MAX_ROUNDS = 10_000


@dataclass(frozen=True)
class OrthogonalBasis:
    """A certified orthogonal basis with its descending norm sequence."""

    vectors: tuple[Vector, ...]
    maxima: tuple[NormValue, ...]
    certified: bool

    def matrix(self) -> Matrix:
        return Matrix.from_cols(self.vectors[0].cfg, [v.entries for v in self.vectors])


def _norm_exponents(vectors, norm):
    exps = []
    for v in vectors:
        nv = norm.eval(v)
        if nv.is_zero:
            raise ValueError(
                "norm vanishes on a nonzero basis vector; "
                "not a genuine norm (reducible extension polynomial?)"
            )
        exps.append(nv.exponent)
    return exps


def _find_violation(vectors, norm):
    """First (lexicographic) combination breaking orthogonality, or None.

    Returns (index to replace, replacement vector).
    """
    cfg = vectors[0].cfg
    p = cfg.p
    exps = _norm_exponents(vectors, norm)

    groups: dict = {}
    for i, e in enumerate(exps):
        groups.setdefault(e - floor(e), []).append(i)

    for key in sorted(groups, key=lambda f: min(groups[f])):
        idxs = groups[key]
        s = len(idxs)
        if s == 1:
            continue  # unit multiples of a single vector never cancel
        e_min = min(exps[i] for i in idxs)
        shifts = [int(exps[i] - e_min) for i in idxs]
        scaled = [vectors[i].scale(cfg.pi_pow(sh)) for i, sh in zip(idxs, shifts)]
        common = NormValue(p, e_min)
        # digit multiples precomputed; partial sums shared along the
        # lexicographic recursion so each combination costs one add
        multiples = [
            [None] + [u if d == 1 else u.scale(cfg.from_int(d)) for d in range(1, p)]
            for u in scaled
        ]
        eval_norm = norm.eval
        digits = [0] * s

        def search(k, partial):
            for d in range(p):
                digits[k] = d
                w = partial if d == 0 else (
                    multiples[k][d] if partial is None else partial + multiples[k][d]
                )
                if k + 1 < s:
                    hit = search(k + 1, w)
                    if hit is not None:
                        return hit
                elif w is not None and eval_norm(w) < common:
                    return w
            digits[k] = 0
            return None

        w = search(0, None)
        if w is not None:
            support = [k for k, d in enumerate(digits) if d]
            t = min(shifts[k] for k in support)
            w0 = w.scale(cfg.pi_pow(-t))
            j = max(idxs[k] for k in support if shifts[k] == t)
            return j, w0
    return None


def is_orthogonal(vectors, norm) -> bool:
    """Finite orthogonality test; raises on dependent input vectors."""
    vectors = list(vectors)
    cfg = vectors[0].cfg
    mat = Matrix.from_cols(cfg, [v.entries for v in vectors])
    if rank(mat) != len(vectors):
        raise ValueError("vectors are linearly dependent")
    return _find_violation(vectors, norm) is None


def orthogonalize(lattice: Lattice, norm) -> OrthogonalBasis:
    """Orthogonal basis of the same lattice, maxima sorted descending."""
    vectors = list(lattice.basis.cols())
    for _ in range(_MAX_ROUNDS):
        hit = _find_violation(vectors, norm)
        if hit is None:
            break
        j, w0 = hit
        vectors[j] = w0
    else:
        raise RuntimeError(
            "orthogonalization did not terminate; the supplied norm is degenerate"
        )
    values = [norm.eval(v) for v in vectors]
    order = sorted(range(len(vectors)), key=lambda i: -values[i].exponent)
    vectors = tuple(vectors[i] for i in order)
    maxima = tuple(values[i] for i in order)
    return OrthogonalBasis(vectors=vectors, maxima=maxima, certified=True)


def successive_maxima(lattice: Lattice, norm) -> tuple[NormValue, ...]:
    """Descending norms of any orthogonal basis; basis-independent."""
    return orthogonalize(lattice, norm).maxima
