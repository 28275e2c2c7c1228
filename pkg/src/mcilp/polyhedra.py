"""Rational polyhedra with exact vertex enumeration and LP bounds.

A :class:`Polyhedron` is {u in R^d : A u <= b} with integer A, b.  All
optimization here is done by exhaustive vertex enumeration over rationals,
which is exact and entirely adequate at the fixed, desk-scale dimensions
this library targets.  No floating point anywhere.

Classes
-------
Polyhedron      immutable inequality description, canonicalized
Box             integer box [lower, upper], the universal truncation device

Functions
---------
is_bounded      recession-cone test via a truncated vertex enumeration
vertices        exact vertex set by d-subset facet intersection
objective_bounds    exact (min, max) of a linear functional over a polytope
outcome_box     integer box bracketing the image of a polytope under
                finitely many linear objectives
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import ceil, floor, gcd

from .errors import DimensionMismatch, EmptyPolyhedron
from ._linalg import rank, solve, vdot

Rational = Fraction


def _canonical_rows(A, b):
    """Scale each row to integers (positive scaling keeps the halfplane)
    and drop all-zero rows with nonnegative right-hand side (vacuous)."""
    rows = []
    rhs = []
    for row, bi in zip(A, b):
        fr = [Fraction(x) for x in row] + [Fraction(bi)]
        mult = 1
        for x in fr:
            mult = mult * x.denominator // gcd(mult, x.denominator)
        row = tuple(int(x * mult) for x in fr[:-1])
        bi = int(fr[-1] * mult)
        if all(x == 0 for x in row) and bi >= 0:
            continue
        rows.append(row)
        rhs.append(bi)
    return tuple(rows), tuple(rhs)


@dataclass(frozen=True)
class Polyhedron:
    """{u in R^dim : A u <= b} with integer data, canonicalized on build."""

    A: tuple
    b: tuple
    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")
        A, b = _canonical_rows(self.A, self.b)
        if len(A) != len(b):
            raise ValueError("row count mismatch between A and b")
        for row in A:
            if len(row) != self.dim:
                raise DimensionMismatch(
                    f"constraint row has {len(row)} entries, expected {self.dim}")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def nrows(self):
        return len(self.A)

    def contains(self, u):
        if len(u) != self.dim:
            raise DimensionMismatch("point dimension mismatch")
        return all(vdot(row, u) <= bi for row, bi in zip(self.A, self.b))

    def intersect_rows(self, A_extra, b_extra):
        """New polyhedron with extra inequality rows appended."""
        return Polyhedron(self.A + tuple(tuple(r) for r in A_extra),
                          self.b + tuple(b_extra), self.dim)


@dataclass(frozen=True)
class Box:
    """Integer box [lower, upper], lower <= upper componentwise."""

    lower: tuple
    upper: tuple

    def __post_init__(self):
        lo = tuple(int(x) for x in self.lower)
        hi = tuple(int(x) for x in self.upper)
        if len(lo) != len(hi):
            raise DimensionMismatch("box corner dimensions differ")
        if any(a > b for a, b in zip(lo, hi)):
            raise ValueError("box has lower > upper")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def dim(self):
        return len(self.lower)

    def contains(self, v):
        return all(a <= x <= b for a, x, b in zip(self.lower, v, self.upper))

    def point_count(self):
        n = 1
        for a, b in zip(self.lower, self.upper):
            n *= b - a + 1
        return n

    def to_polyhedron(self):
        d = self.dim
        A = []
        b = []
        for i in range(d):
            e = [0] * d
            e[i] = 1
            A.append(tuple(e))
            b.append(self.upper[i])
            A.append(tuple(-x for x in e))
            b.append(-self.lower[i])
        return Polyhedron(tuple(A), tuple(b), d)

    def widen(self, margin):
        return Box(tuple(a - margin for a in self.lower),
                   tuple(b + margin for b in self.upper))


@lru_cache(maxsize=4096)
def vertices(P):
    """Exact vertex set of a bounded nonempty P, sorted lexicographically.

    Exhaustive d-subset facet intersection: every vertex lies on dim
    linearly independent active constraints.  Raises EmptyPolyhedron when no
    feasible intersection exists (for bounded P this means P is empty).
    """
    d = P.dim
    rows = P.A
    found = set()
    for idx in combinations(range(len(rows)), d):
        M = [rows[i] for i in idx]
        rhs = [P.b[i] for i in idx]
        if rank(M) < d:
            continue
        v = solve(M, rhs)
        if v is None:
            continue
        if P.contains(v):
            found.add(tuple(Fraction(x) for x in v))
    if not found:
        raise EmptyPolyhedron("polyhedron has no vertices (empty or degenerate)")
    return tuple(sorted(found))


@lru_cache(maxsize=4096)
def is_bounded(P):
    """True iff {u : Au <= b} is bounded (trivial recession cone).

    The recession cone {y : Ay <= 0} is truncated to [-1, 1]^d, giving a
    polytope whose vertices are enumerable; the cone is trivial exactly when
    every vertex of the truncation is the origin.  Empty P counts as bounded.
    """
    d = P.dim
    cube = Box((-1,) * d, (1,) * d).to_polyhedron()
    rec = Polyhedron(P.A + cube.A, (0,) * len(P.A) + cube.b, d)
    try:
        V = vertices(rec)
    except EmptyPolyhedron:
        return True
    zero = (Fraction(0),) * d
    return all(v == zero for v in V)


def objective_bounds(P, f):
    """Exact (min, max) of <f, u> over bounded nonempty P, as Fractions."""
    V = vertices(P)
    vals = [vdot(f, v) for v in V]
    return min(vals), max(vals)


def outcome_box(P, objectives):
    """Integer box bracketing {(<f_1,u>, ..., <f_k,u>) : u in P}.

    Lower corner floors the per-objective LP minima, upper corner ceils the
    maxima; contains every outcome of every lattice point of P.
    """
    lo = []
    hi = []
    for f in objectives:
        a, b = objective_bounds(P, f)
        lo.append(floor(a))
        hi.append(ceil(b))
    return Box(tuple(lo), tuple(hi))
