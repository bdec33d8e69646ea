"""Longest- and closest-vector solvers, plus the brute-force test oracles.

cvp has two routes:

* targets inside span(L) reduce exactly over an orthogonal basis: round
  each coordinate to its integral part, and the residual's norm is the
  distance (per-coordinate minimization is globally optimal because the
  basis is orthogonal);
* general targets run a depth-first search over coefficient digit
  levels.  At level j the unexplored digits can only change the residual
  by a vector of norm <= p^(-j) * λ̄₁, so once that tail drops below the
  best distance found, the ultrametric law freezes every completion of
  the branch and it is pruned.  The search terminates because residuals
  stay in t + span(L), whose distance to t is positive for t outside the
  span, while the tail bound shrinks geometrically.

cvp_bruteforce enumerates every coefficient vector whose digits stop
before pi^depth.  maxima_bruteforce reuses that enumeration as an
independent oracle for successive maxima: over any orthogonal splitting
the number of depth-D coefficient vectors with norm >= r factors as
p^(nD) - p^(nD - Z(r)), so the exact norm histogram above the floor
p^(-D) * λ̄₁ determines the maxima multiset by pure counting.

Enumeration hot paths run on plain integers (Qp) or lane-packed
polynomial encodings (FpT) after clearing denominators with a unit
multiple, which leaves all norm values exactly recoverable.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import floor

import numpy as np

from .lattices import Lattice
from .linalg import Matrix, Vector, solve
from .norms import ExtensionNorm, SupNorm, WeightedSupNorm
from .ortho import orthogonalize
from .scalars import GFPoly, NormValue, Scalar, split_integral

_ENUM_CAP = 20_000_000


@dataclass(frozen=True)
class CvpResult:
    """A closest lattice point: closest = B * coefficients, distance = N(t - closest)."""

    closest: Vector
    distance: NormValue
    coefficients: Vector
    certified_depth: int


def lvp(lattice: Lattice, norm) -> tuple[Vector, NormValue]:
    """A lattice vector of maximal norm and that norm (the first maximum)."""
    ob = orthogonalize(lattice, norm)
    return ob.vectors[0], ob.maxima[0]


def _lambda1(lattice: Lattice, norm) -> NormValue:
    # the largest norm over the lattice is already attained on any basis
    # (every combination is ultrametrically dominated by its terms)
    return max(norm.eval(c) for c in lattice.basis.cols())


def cvp(lattice: Lattice, norm, target: Vector) -> CvpResult:
    """Exact minimizer of N(target - v) over the lattice."""
    cfg = lattice.cfg
    try:
        solve(lattice.basis, target)
        in_span = True
    except ValueError:
        in_span = False

    if in_span:
        ob = orthogonalize(lattice, norm)
        amat = ob.matrix()
        coords = solve(amat, target)
        depth = 0
        closest = Vector.zero(cfg, lattice.dim)
        for c, v in zip(coords, ob.vectors):
            integral = split_integral(c)[1]
            closest = closest + v.scale(integral)
            if not c.is_zero() and c.valuation() < 0:
                depth = max(depth, -int(c.valuation()))
        distance = norm.eval(target - closest)
        return CvpResult(
            closest=closest,
            distance=distance,
            coefficients=solve(lattice.basis, closest),
            certified_depth=depth,
        )
    return _cvp_search(lattice, norm, target)


class _ZeroDistance(Exception):
    pass


def _cvp_search(lattice: Lattice, norm, target: Vector) -> CvpResult:
    cfg = lattice.cfg
    p = cfg.p
    n = lattice.rank
    cols = lattice.basis.cols()
    lam1 = _lambda1(lattice, norm)

    best_dist = norm.eval(target)
    best_digits: tuple = ()
    deepest = 0
    prefix: list = []  # one digit tuple per explored level

    level_multiples: dict[int, list] = {}

    def multiples(level):
        table = level_multiples.get(level)
        if table is None:
            pi_level = cfg.pi_pow(level)
            table = [
                [None] + [c.scale(pi_level if d == 1 else cfg.from_int(d) * pi_level) for d in range(1, p)]
                for c in cols
            ]
            level_multiples[level] = table
        return table

    def descend(level, residual):
        nonlocal best_dist, best_digits, deepest
        if level > 200:
            raise RuntimeError("closest-vector search did not converge; degenerate norm?")
        value = norm.eval(residual)
        if value < best_dist:
            best_dist = value
            best_digits = tuple(prefix)
            if value.is_zero:
                raise _ZeroDistance
        tail = lam1 * NormValue(p, -level)
        if value > tail:
            # deeper digits change the residual by strictly less than its
            # norm, so every completion of this branch scores exactly `value`
            deepest = max(deepest, level)
            return
        if tail < best_dist:
            deepest = max(deepest, level)
            return
        table = multiples(level)
        digits = [0] * n

        def branch(i, r):
            if i == n:
                prefix.append(tuple(digits))
                descend(level + 1, r)
                prefix.pop()
                return
            for d in range(p):
                digits[i] = d
                branch(i + 1, r if d == 0 else r - table[i][d])
            digits[i] = 0

        branch(0, residual)

    try:
        descend(0, target)
    except _ZeroDistance:
        pass

    zero = cfg.zero()
    coeffs = []
    for i in range(n):
        acc = zero
        for level, tup in enumerate(best_digits):
            if tup[i]:
                acc = acc + cfg.from_int(tup[i]) * cfg.pi_pow(level)
        coeffs.append(acc)
    coefficients = Vector(cfg, coeffs)
    closest = lattice.basis.mat_vec(coefficients)
    return CvpResult(
        closest=closest,
        distance=best_dist,
        coefficients=coefficients,
        certified_depth=deepest,
    )


def depth_sufficient(lattice: Lattice, norm, depth: int, distance: NormValue) -> bool:
    """The enumeration-depth guarantee p^(-depth) * λ̄₁ < distance."""
    tail = _lambda1(lattice, norm) * NormValue(lattice.cfg.p, -depth)
    return tail < distance


# ---------------------------------------------------------------------------
# Raw enumeration machinery (integer / packed-polynomial fast paths)


def _unit_multiplier(cfg, scalars):
    """A multiplier clearing all denominators, and its valuation."""
    if cfg.is_qp:
        c = 1
        for x in scalars:
            c = math.lcm(c, x.den)
        k = 0
        cc = c
        while cc % cfg.p == 0:
            cc //= cfg.p
            k += 1
        return c, k
    c = GFPoly.const(cfg.p, 1)
    from .scalars import poly_gcd

    for x in scalars:
        c = c * (x.den // poly_gcd(c, x.den))
    return c, c.order()


def _raw_entries(cfg, scalars, mult):
    # mult is a multiple of every denominator, so each division is exact
    return [x.num * (mult // x.den) for x in scalars]


def _pack(poly: GFPoly, lane: int) -> int:
    out = 0
    for c in reversed(poly.coeffs):
        out = out * lane + c
    return out


def _fast_offsets(norm, m):
    """Per-coordinate weight exponents when the norm admits the raw path."""
    if isinstance(norm, SupNorm):
        return [Fraction(0)] * m
    if isinstance(norm, WeightedSupNorm):
        if len(norm.weights) != m:
            raise ValueError("weight count does not match dimension")
        return [w.exponent for w in norm.weights]
    if isinstance(norm, ExtensionNorm) and norm.certified_unramified:
        return [Fraction(0)] * m
    return None


def _int_order(x: int, p: int) -> int:
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k


def _packed_order(x: int, lane: int, p: int):
    i = 0
    while x:
        if (x % lane) % p:
            return i
        x //= lane
        i += 1
    return None


class _RawSystem:
    """Denominator-cleared copy of (basis columns [, target]) plus norm data."""

    def __init__(self, lattice, norm, target=None):
        cfg = lattice.cfg
        self.cfg = cfg
        self.p = cfg.p
        self.m = lattice.dim
        self.n = lattice.rank
        offsets = _fast_offsets(norm, self.m)
        self.fast = offsets is not None
        if not self.fast:
            return
        scalars = [x for col in lattice.basis.cols() for x in col]
        if target is not None:
            scalars += list(target)
        mult, self.shift = _unit_multiplier(cfg, scalars)
        self.lane = cfg.p**3 if not cfg.is_qp else None
        cols = []
        for j in range(self.n):
            raw = _raw_entries(cfg, list(lattice.basis.col(j)), mult)
            cols.append(raw)
        self.cols = cols
        self.target = _raw_entries(cfg, list(target), mult) if target is not None else None
        denom = 1
        for off in offsets:
            denom = math.lcm(denom, off.denominator)
        self.denom = denom
        self.offsets = [int(off * denom) for off in offsets]
        self.plain_sup = all(o == 0 for o in self.offsets)

    def coefficient_values(self, depth):
        """All depth-limited coefficient raws, indexed by the digit integer."""
        p, cfg = self.p, self.cfg
        count = p**depth
        if cfg.is_qp:
            return list(range(count))
        out = []
        for a in range(count):
            digits = []
            aa = a
            for _ in range(depth):
                digits.append(aa % p)
                aa //= p
            out.append(GFPoly(p, digits))
        return out

    def tables(self, depth, negate):
        """tables[i][a] = raw entries of (+/-) coeff_a * col_i, ready to add."""
        p, cfg = self.p, self.cfg
        values = self.coefficient_values(depth)
        tabs = []
        for col in self.cols:
            rows = []
            for a in values:
                if cfg.is_qp:
                    f = -a if negate else a
                    rows.append(tuple(f * x for x in col))
                else:
                    prod = [a * x for x in col]
                    if negate:
                        prod = [-q for q in prod]
                    rows.append(tuple(_pack(q, self.lane) for q in prod))
            tabs.append(rows)
        return tabs

    def start(self, use_target):
        if use_target:
            raw = self.target
        else:
            raw = [0 if self.cfg.is_qp else GFPoly(self.p)] * self.m
        if self.cfg.is_qp:
            return tuple(raw)
        return tuple(_pack(q, self.lane) for q in raw)

    def leaf_exponent(self, entries):
        """Scaled raw exponent (multiply of 1/denom) or None for the zero vector."""
        p = self.p
        if self.cfg.is_qp:
            if self.plain_sup:
                g = 0
                for x in entries:
                    g = math.gcd(g, x)
                if g == 0:
                    return None
                return -_int_order(g, p)
            best = None
            for off, x in zip(self.offsets, entries):
                if x == 0:
                    continue
                e = off - self.denom * _int_order(x, p)
                if best is None or e > best:
                    best = e
            return best
        lane = self.lane
        best = None
        for off, x in zip(self.offsets, entries):
            o = _packed_order(x, lane, p)
            if o is None:
                continue
            e = off - self.denom * o
            if best is None or e > best:
                best = e
        return best

    def true_norm(self, raw_exp) -> NormValue:
        if raw_exp is None:
            return NormValue.zero(self.p)
        return NormValue(self.p, Fraction(raw_exp, self.denom) + self.shift)


_INT64_SAFE = 1 << 62
_ZERO_SENTINEL = -(1 << 40)  # row exponent standing for the zero vector


class _RawArrays:
    """numpy int64 view of the enumeration; exact within checked bounds."""

    def __init__(self, raw: _RawSystem, depth: int, use_target: bool, negate: bool):
        self.ok = False
        tabs = raw.tables(depth, negate)
        start = raw.start(use_target)
        bound = max(abs(x) for x in start) if start else 0
        for tab in tabs:
            bound += max(max(abs(x) for x in row) for row in tab)
        if bound >= _INT64_SAFE:
            return
        self.ok = True
        self.raw = raw
        self.tabs = [np.array(tab, dtype=np.int64) for tab in tabs]
        self.start = np.array(start, dtype=np.int64)
        self.depth = depth

    def row_exponents(self):
        """denom-scaled raw exponents per coefficient row; sentinel for zero rows.

        Row index packs the coefficient ids most-significant-first:
        ridx = a_0 * count^(n-1) + ... + a_(n-1).
        """
        raw = self.raw
        acc = self.start[None, :]
        for tab in self.tabs:
            acc = (acc[:, None, :] + tab[None, :, :]).reshape(-1, acc.shape[1])
        p = raw.p
        base = p if raw.cfg.is_qp else raw.lane
        work = np.abs(acc)
        order = np.zeros(work.shape, dtype=np.int64)
        # packed lanes are unreduced sums: a value whose lanes are all
        # divisible by p is the zero polynomial and drains to 0 here
        while True:
            div = (work != 0) & ((work % base) % p == 0)
            if not div.any():
                break
            order[div] += 1
            work[div] //= base
        nonzero = work != 0
        offs = np.array(raw.offsets, dtype=np.int64)
        entry_exp = np.where(nonzero, offs[None, :] - raw.denom * order, _ZERO_SENTINEL)
        return entry_exp.max(axis=1)


def _ids_from_row(raw: _RawSystem, depth: int, ridx: int):
    count = raw.p**depth
    ids = []
    for _ in range(raw.n):
        ids.append(ridx % count)
        ridx //= count
    return tuple(reversed(ids))


def _lex_pick(raw: _RawSystem, depth: int, rows: np.ndarray) -> int:
    """Row index whose digit sequence is level-major lexicographically least."""
    p, n = raw.p, raw.n
    count = p**depth
    rows = rows.astype(np.int64)
    coeffs = []
    rest = rows.copy()
    for _ in range(n):
        coeffs.append(rest % count)
        rest //= count
    coeffs.reverse()  # coeffs[i] = a_i arrays
    keys = np.zeros(len(rows), dtype=np.int64)
    for j in range(depth):
        for i in range(n):
            digit = (coeffs[i] // p**j) % p
            weight = p ** ((depth - 1 - j) * n + (n - 1 - i))
            keys += digit * weight
    return int(rows[int(np.argmin(keys))])


def _digit_key(coeff_ids, p, depth):
    """Level-major digit sequence, the tie-break order for minimizers."""
    out = []
    digits = []
    for a in coeff_ids:
        row = []
        for _ in range(depth):
            row.append(a % p)
            a //= p
        digits.append(row)
    for j in range(depth):
        for row in digits:
            out.append(row[j])
    return tuple(out)


def _coeff_scalar(cfg, a, depth):
    """Scalar with the digit expansion encoded by the integer a."""
    acc = cfg.zero()
    for j in range(depth):
        d = a % cfg.p
        a //= cfg.p
        if d:
            acc = acc + cfg.from_int(d) * cfg.pi_pow(j)
    return acc


def cvp_bruteforce(lattice: Lattice, norm, target: Vector, depth: int) -> CvpResult:
    """Exhaustive minimum over all coefficients with digits below pi^depth.

    Equals cvp whenever p^(-depth) * λ̄₁ < the resulting distance.  Ties
    are broken by the lexicographically smallest digit sequence.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    cfg = lattice.cfg
    p, n = cfg.p, lattice.rank
    if p ** (n * depth) > _ENUM_CAP:
        raise ValueError("enumeration too large; lower depth or rank")

    raw = _RawSystem(lattice, norm, target)
    if raw.fast:
        arrays = _RawArrays(raw, depth, use_target=True, negate=True)
        if arrays.ok:
            best_exp, best_ids = _search_numpy(raw, arrays, depth)
        else:
            best_exp, best_ids = _search_raw(raw, depth)
        distance = raw.true_norm(best_exp)
    else:
        best_ids, distance = _search_generic(lattice, norm, target, depth)

    coeffs = Vector(cfg, [_coeff_scalar(cfg, a, depth) for a in best_ids])
    closest = lattice.basis.mat_vec(coeffs)
    return CvpResult(closest=closest, distance=distance, coefficients=coeffs, certified_depth=depth)


def _search_raw(raw: _RawSystem, depth: int):
    tabs = raw.tables(depth, negate=True)
    start = raw.start(use_target=True)
    n = raw.n
    leaf_exp = raw.leaf_exponent
    count = raw.p**depth

    best_exp = leaf_exp(start)
    best_ids = (0,) * n
    if best_exp is None:
        return None, best_ids
    best_key = None  # lazy; zeros are lexicographically minimal anyway

    stackless = [(0, start, ())]
    while stackless:
        i, acc, ids = stackless.pop()
        if i == n - 1:
            tab = tabs[i]
            for a in range(count):
                entries = tuple(x + y for x, y in zip(acc, tab[a]))
                e = leaf_exp(entries)
                if e is None:
                    return None, ids + (a,)
                if e < best_exp:
                    best_exp = e
                    best_ids = ids + (a,)
                    best_key = None
                elif e == best_exp:
                    cand = ids + (a,)
                    if best_key is None:
                        best_key = _digit_key(best_ids, raw.p, depth)
                    key = _digit_key(cand, raw.p, depth)
                    if key < best_key:
                        best_ids, best_key = cand, key
            continue
        tab = tabs[i]
        for a in range(count - 1, -1, -1):  # stack pops reversed
            entries = tuple(x + y for x, y in zip(acc, tab[a]))
            stackless.append((i + 1, entries, ids + (a,)))
    return best_exp, best_ids


def _search_numpy(raw: _RawSystem, arrays: _RawArrays, depth: int):
    row_exp = arrays.row_exponents()
    best = int(row_exp.min())
    candidates = np.nonzero(row_exp == best)[0]
    if len(candidates) == 1:
        ridx = int(candidates[0])
    else:
        ridx = _lex_pick(raw, depth, candidates)
    ids = _ids_from_row(raw, depth, ridx)
    return (None if best == _ZERO_SENTINEL else best), ids


def _histogram_numpy(raw: _RawSystem, arrays: _RawArrays, hist: Counter):
    row_exp = arrays.row_exponents()
    values, counts = np.unique(row_exp, return_counts=True)
    for v, c in zip(values.tolist(), counts.tolist()):
        key = None if v == _ZERO_SENTINEL else Fraction(v, raw.denom) + raw.shift
        hist[key] += c


def _search_generic(lattice, norm, target, depth):
    cfg = lattice.cfg
    p, n = cfg.p, lattice.rank
    count = p**depth
    coeff_scalars = [_coeff_scalar(cfg, a, depth) for a in range(count)]
    cols = lattice.basis.cols()
    best = None
    best_ids = None
    best_key = None
    for ids in itertools.product(range(count), repeat=n):
        v = target
        for a, col in zip(ids, cols):
            if a:
                v = v - col.scale(coeff_scalars[a])
        d = norm.eval(v)
        if best is None or d < best:
            best, best_ids, best_key = d, ids, None
        elif d == best:
            if best_key is None:
                best_key = _digit_key(best_ids, p, depth)
            key = _digit_key(ids, p, depth)
            if key < best_key:
                best_ids, best_key = ids, key
    return best_ids, best


def maxima_bruteforce(lattice: Lattice, norm, depth: int):
    """Successive maxima inferred by counting over the depth-limited set.

    Returns (maxima, certified).  certified=False means fewer than n
    maxima sit above the inference floor p^(-depth) * λ̄₁; retry deeper.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    cfg = lattice.cfg
    p, n = cfg.p, lattice.rank
    if p ** (n * depth) > _ENUM_CAP:
        raise ValueError("enumeration too large; lower depth or rank")

    raw = _RawSystem(lattice, norm, None)
    hist: Counter = Counter()
    if raw.fast:
        arrays = _RawArrays(raw, depth, use_target=False, negate=False)
        if arrays.ok:
            _histogram_numpy(raw, arrays, hist)
        else:
            _histogram_raw(raw, depth, hist)
        exps, certified = _infer_from_histogram(hist, p ** (n * depth), n, p, depth)
        return tuple(NormValue(p, e) for e in exps), certified
    count = p**depth
    coeff_scalars = [_coeff_scalar(cfg, a, depth) for a in range(count)]
    cols = lattice.basis.cols()
    for ids in itertools.product(range(count), repeat=n):
        v = Vector.zero(cfg, lattice.dim)
        for a, col in zip(ids, cols):
            if a:
                v = v + col.scale(coeff_scalars[a])
        value = norm.eval(v)
        hist[None if value.is_zero else value.exponent] += 1
    exps, certified = _infer_from_histogram(hist, p ** (n * depth), n, p, depth)
    return tuple(NormValue(p, e) for e in exps), certified


def _histogram_raw(raw: _RawSystem, depth: int, hist: Counter):
    tabs = raw.tables(depth, negate=False)
    start = raw.start(use_target=False)
    n = raw.n
    leaf_exp = raw.leaf_exponent
    count = raw.p**depth
    denom, shift = raw.denom, raw.shift

    stack = [(0, start)]
    while stack:
        i, acc = stack.pop()
        if i == n - 1:
            tab = tabs[i]
            for a in range(count):
                entries = tuple(x + y for x, y in zip(acc, tab[a]))
                e = leaf_exp(entries)
                hist[None if e is None else Fraction(e, denom) + shift] += 1
            continue
        tab = tabs[i]
        for a in range(count):
            entries = tuple(x + y for x, y in zip(acc, tab[a]))
            stack.append((i + 1, entries))


def _infer_from_histogram(hist: Counter, total: int, n: int, p: int, depth: int):
    """Recover the maxima multiset from exact norm counts.

    #{combinations with norm >= p^e} = p^(nD) - p^(nD - Z) where Z sums,
    over the maxima, how many leading digit positions are forced zero;
    processing observed exponents downward peels off the maxima one
    value at a time.  Only counts above e_max - depth are trustworthy
    (basis mixing perturbs smaller values).
    """
    values = sorted((e for e in hist if e is not None), reverse=True)
    if not values:
        return (), False
    floor_exp = values[0] - depth
    found: list = []
    cum = 0
    for e in values:
        if e <= floor_exp:
            break
        cum += hist[e]
        rem = total - cum
        k = 0
        while rem % p == 0:
            rem //= p
            k += 1
        if rem != 1:
            raise AssertionError("norm histogram inconsistent with an orthogonal splitting")
        z_total = n * depth - k
        z_known = sum(min(max(0, floor(f - e) + 1), depth) for f in found)
        fresh = z_total - z_known
        if fresh < 0:
            raise AssertionError("norm histogram inconsistent with an orthogonal splitting")
        found.extend([e] * fresh)
        if len(found) == n:
            return tuple(found), True
    return tuple(found), False
