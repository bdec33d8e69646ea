"""Lattices over the ring of integers of the working field.

A lattice is the set of O_k-combinations of n independent columns in
k^m.  The stored basis is just a representative: two bases describe the
same lattice exactly when their change-of-basis matrix is unimodular,
which is what ``same_lattice`` decides (``==`` is not defined for that
reason).  Duals live inside span(B) via D = B (BᵗB)⁻¹.
"""

from __future__ import annotations

from . import linalg
from .linalg import Matrix, Vector, gram, is_unimodular, solve
from .scalars import NormValue, abs_value


class Lattice:
    """L(B) = {Bx : x integral}; columns of B must be independent."""

    __slots__ = ("basis", "cfg")

    def __init__(self, basis: Matrix):
        if linalg.rank(basis) != basis.ncols:
            raise ValueError("basis columns are linearly dependent")
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "cfg", basis.cfg)

    def __setattr__(self, name, value):
        raise AttributeError("Lattice is immutable")

    @property
    def rank(self) -> int:
        return self.basis.ncols

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def member(self, v: Vector):
        """Coefficients of v over the basis if v lies in the lattice, else None.

        Total predicate: vectors outside span(B) also give None.
        """
        try:
            coeffs = solve(self.basis, v)
        except ValueError:
            return None
        for c in coeffs:
            if not c.is_zero() and c.valuation() < 0:
                return None
        return coeffs

    def same_lattice(self, other: "Lattice") -> bool:
        """True iff both bases generate the same O_k-module."""
        if other.cfg != self.cfg or other.dim != self.dim or other.rank != self.rank:
            return False
        cols = []
        for j in range(other.rank):
            try:
                cols.append(solve(self.basis, other.basis.col(j)))
            except ValueError:
                return False
        change = Matrix.from_cols(self.cfg, cols)
        return is_unimodular(change)

    def determinant(self) -> NormValue:
        """|det(BᵗB)|^(1/2); invariant under change of basis."""
        return abs_value(linalg.det(gram(self.basis))).root(2)

    def dual(self) -> "Lattice":
        return Lattice(dual_basis(self.basis))

    def scale(self, x) -> "Lattice":
        """The lattice x·L for a nonzero scalar x."""
        return Lattice(self.basis.scale(x))

    def __repr__(self):
        return f"Lattice(rank {self.rank} in dim {self.dim}, {self.cfg.kind} p={self.cfg.p})"


def new_lattice(basis: Matrix) -> Lattice:
    return Lattice(basis)


def dual_basis(b: Matrix) -> Matrix:
    """The unique D with span(D) = span(B) and BᵗD = I, i.e. B (BᵗB)⁻¹.

    Requires the dot pairing to be non-degenerate on span(B).  For rank
    below the ambient dimension the span can contain a vector orthogonal
    to all of span(B) (BᵗB singular); no dual exists then.
    """
    g = gram(b)
    if linalg.det(g).is_zero():
        raise ValueError(
            "dot pairing is degenerate on the span (singular gram matrix); dual does not exist"
        )
    return b @ linalg.inverse(g)


def member(lat: Lattice, v: Vector):
    return lat.member(v)


def same_lattice(a: Lattice, b: Lattice) -> bool:
    return a.same_lattice(b)


def determinant(lat: Lattice) -> NormValue:
    return lat.determinant()


def dual(lat: Lattice) -> Lattice:
    return lat.dual()
