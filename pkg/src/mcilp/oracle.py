"""Brute-force ground truth for desk-scale verification.

Everything here is deliberately naive: explicit lattice scans, quadratic
dominance filtering, exhaustive distance evaluation.  The production
pipeline must agree with these answers exactly; the oracle is shipped in the
package (not test-only) so users can cross-check any production answer via
the CLI's oracle subcommands.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor

from .errors import EmptySet, TooLarge
from .polyhedra import vertices
from ._kernels import lattice_scan, pareto_filter as _filter_kernel

SCAN_LIMIT = 10 ** 6


def enumerate_lattice(P):
    """All lattice points of a bounded polyhedron, sorted lexicographically.

    Guards the bounding-box volume at 10^6 points; raises TooLarge beyond.
    Empty polyhedron gives an empty list.
    """
    from .errors import EmptyPolyhedron
    try:
        V = vertices(P)
    except EmptyPolyhedron:
        return []
    d = P.dim
    lower = tuple(ceil(min(v[j] for v in V)) for j in range(d))
    upper = tuple(floor(max(v[j] for v in V)) for j in range(d))
    if any(lo > hi for lo, hi in zip(lower, upper)):
        return []
    volume = 1
    for lo, hi in zip(lower, upper):
        volume *= hi - lo + 1
        if volume > SCAN_LIMIT:
            raise TooLarge(f"bounding box exceeds {SCAN_LIMIT} points")
    return lattice_scan(P.A, P.b, lower, upper)


def pareto_filter(outcomes):
    """Nondominated vectors under componentwise <= with one strict
    inequality; lex-sorted, duplicates collapsed."""
    return _filter_kernel(list(outcomes))


def oracle_nearest(points, norm, vhat):
    """Exhaustive nearest point: returns (point, exact measure).

    `norm` is either a callable mapping a difference vector to a Fraction,
    or an object with a .distance(vector) method (polyhedral norms) or a
    .value(vector) method (pseudo-norms, returning q(y) rather than a root).
    Ties break lexicographically.
    """
    pts = sorted(tuple(p) for p in points)
    if not pts:
        raise EmptySet("oracle_nearest over an empty set")
    if callable(norm):
        measure = norm
    elif hasattr(norm, "distance"):
        measure = norm.distance
    else:
        measure = norm.value
    best = None
    for p in pts:
        diff = tuple(a - b for a, b in zip(p, vhat))
        d = Fraction(measure(diff))
        if best is None or d < best[1]:
            best = (p, d)
    return best


@dataclass(frozen=True)
class Instance:
    """A named reference problem with its frozen scan-derived facts."""

    name: str
    problem: object

    def feasible_points(self):
        return enumerate_lattice(self.problem.polyhedron())

    def outcomes(self):
        F = self.problem.F
        out = []
        for u in self.feasible_points():
            out.append(tuple(sum(f[j] * u[j] for j in range(len(u))) for f in F))
        return out

    def pareto_set(self):
        return pareto_filter(self.outcomes())

    def strategy_set(self):
        """Feasible points whose outcome is Pareto-minimal, lex-sorted."""
        front = set(self.pareto_set())
        F = self.problem.F
        out = []
        for u in self.feasible_points():
            o = tuple(sum(f[j] * u[j] for j in range(len(u))) for f in F)
            if o in front:
                out.append(u)
        return out

    def ideal_point(self):
        outs = self.outcomes()
        k = len(self.problem.F)
        return tuple(min(o[i] for o in outs) for i in range(k))

    def dominated_within(self, box):
        """Box points weakly dominated by some feasible outcome."""
        front = self.pareto_set()
        out = []
        from itertools import product
        for v in product(*[range(lo, hi + 1)
                           for lo, hi in zip(box.lower, box.upper)]):
            if any(all(f[i] <= v[i] for i in range(len(v))) for f in front):
                out.append(v)
        return out


def instance_e1():
    """Triangle 0 <= u <= 3, u1+u2 >= 3 with identity objectives."""
    from .pareto import Problem
    A = ((-1, 0), (0, -1), (1, 0), (0, 1), (-1, -1))
    b = (0, 0, 3, 3, -3)
    F = ((1, 0), (0, 1))
    return Instance("E1", Problem(A, b, F))


def instance_e2():
    """Square [0,3]^2 with objectives u1+u2 and 2u1-u2."""
    from .pareto import Problem
    A = ((-1, 0), (0, -1), (1, 0), (0, 1))
    b = (0, 0, 3, 3)
    F = ((1, 1), (2, -1))
    return Instance("E2", Problem(A, b, F))
