"""Ordered streaming of the points encoded by a rational-function object.

The stream visits the distinct projections of the support onto its last p
coordinates in the order induced by a term-order matrix: nonnegative integer
p x p, full rank, comparing points by the lexicographic order of their
images.  The walk bisects an image-space box, prunes empty slabs with an
intersection-and-count test, and therefore needs memory proportional to the
bisection depth rather than to the number of points: between two consecutive
outputs it touches at most a few root-to-leaf paths.

Only supports with 0/1 expansion coefficients can be streamed this way; a
vanishing count must mean an empty slab, not a cancellation.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DimensionMismatch
from ._linalg import mat_vec, det, solve
from ._kernels import count_in_slab
from .genfunc import gf_of_polytope, specialize_count
from .polyhedra import Box, Polyhedron
from .setops import intersect

__all__ = [
    "TermOrder",
    "EnumerationMetrics",
    "enumerate_support",
    "is_empty_slab",
    "initial_bounds",
    "depth_bound",
]


class TermOrder:
    """Comparison of integer points by the lexicographic order of R w.

    R has nonnegative integer entries and full rank, which makes the induced
    order total on integer points (equal images force equal points) and
    compatible with the bisection bounds below.
    """

    def __init__(self, R):
        R = tuple(tuple(int(x) for x in row) for row in R)
        p = len(R)
        if p == 0 or any(len(row) != p for row in R):
            raise DimensionMismatch("term-order matrix must be square")
        if any(x < 0 for row in R for x in row):
            raise ValueError("term-order entries must be nonnegative")
        if det(R) == 0:
            raise ValueError("term-order matrix must have full rank")
        self.R = R
        self.p = p

    @classmethod
    def lex(cls, p):
        return cls(tuple(tuple(1 if i == j else 0 for j in range(p))
                         for i in range(p)))

    def key(self, w):
        return tuple(mat_vec(self.R, w))

    def sort(self, points):
        return sorted(points, key=self.key)

    @property
    def max_entry(self):
        return max(x for row in self.R for x in row)


@dataclass
class EnumerationMetrics:
    """Counters exposing the delay and memory behavior of one stream."""

    nodes: int = 0
    outputs: int = 0
    max_stack: int = 0
    max_nodes_between_outputs: int = 0
    _since_output: int = field(default=0, repr=False)

    def _visit(self, stack_size):
        self.nodes += 1
        self._since_output += 1
        if stack_size > self.max_stack:
            self.max_stack = stack_size
        if self._since_output > self.max_nodes_between_outputs:
            self.max_nodes_between_outputs = self._since_output

    def _emit(self):
        self.outputs += 1
        self._since_output = 0


def initial_bounds(order, M):
    """Image-space box certain to contain R w for every |w|_inf <= M."""
    B = order.p * M * order.max_entry
    return (-B,) * order.p, (B,) * order.p


def depth_bound(order, M):
    """Stack-size ceiling for a stream over [-M, M]: a few coordinates of
    slack over p times the bit length of one image coordinate's range."""
    from math import log2
    B = order.p * M * order.max_entry
    return 4 * order.p * log2(2 * B + 1) + 4


def _slab_polytope(dim, order, M, lower, upper):
    p = order.p
    rows, rhs = [], []
    for i in range(dim):
        e = tuple(1 if j == i else 0 for j in range(dim))
        rows.append(e)
        rhs.append(M)
        rows.append(tuple(-x for x in e))
        rhs.append(M)
    pad = (0,) * (dim - p)
    for i, row in enumerate(order.R):
        rows.append(pad + row)
        rhs.append(upper[i])
        rows.append(pad + tuple(-x for x in row))
        rhs.append(-lower[i])
    return Polyhedron(tuple(rows), tuple(rhs), dim)


def is_empty_slab(g, order, M, lower, upper):
    """Slab emptiness by intersection and counting: encode the slab polytope
    and check that the restricted support counts to zero."""
    P = _slab_polytope(g.dim, order, M, lower, upper)
    slab = gf_of_polytope(P, assume_bounded=True)
    window = Box((-M,) * g.dim, (M,) * g.dim)
    return specialize_count(intersect(g, slab, window)) == 0


def enumerate_support(g, order, M, metrics=None):
    """Yield the distinct projections of the support of g onto its last p
    coordinates, ordered by the term order, all coordinates within [-M, M].

    Monomial encodings get a direct key-scan emptiness test; general ones go
    through is_empty_slab.  The generator is pull-based: nothing past the
    next point is computed until requested.
    """
    p = order.p
    if p > g.dim:
        raise DimensionMismatch("term order wider than the encoding")
    if metrics is None:
        metrics = EnumerationMetrics()

    if g.is_monomial:
        seen = {}
        for term in g.terms:
            if term.coeff == 0:
                continue
            w = term.num[g.dim - p:]
            if all(-M <= x <= M for x in term.num):
                seen[order.key(w)] = w
        keys = sorted(seen)

        def empty(lo, hi):
            return count_in_slab(keys, lo, hi) == 0

        def leaf_point(key):
            return seen.get(key)
    else:
        Rrows = [[Fraction(x) for x in row] for row in order.R]

        def empty(lo, hi):
            return is_empty_slab(g, order, M, lo, hi)

        def leaf_point(key):
            w = solve(Rrows, [Fraction(x) for x in key])
            if w is None or any(x.denominator != 1 for x in w):
                return None
            w = tuple(int(x) for x in w)
            if any(x < -M or x > M for x in w):
                return None
            if empty(key, key):
                return None
            return w

    lower, upper = initial_bounds(order, M)
    stack = [(lower, upper)]
    while stack:
        lo, hi = stack.pop()
        metrics._visit(len(stack) + 1)
        if lo == hi:
            w = leaf_point(lo)
            if w is not None:
                metrics._emit()
                yield w
            continue
        if empty(lo, hi):
            continue
        j = next(i for i in range(p) if lo[i] != hi[i])
        mid = (lo[j] + hi[j]) // 2
        left_hi = hi[:j] + (mid,) + hi[j + 1:]
        right_lo = lo[:j] + (mid + 1,) + lo[j + 1:]
        stack.append((right_lo, hi))
        stack.append((lo, left_hi))
        if len(stack) > metrics.max_stack:
            metrics.max_stack = len(stack)
