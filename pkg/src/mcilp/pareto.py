"""Nondominated outcomes of bounded integer programs with several linear
objectives, encoded as short rational functions.

A problem is a bounded nonempty rational polyhedron of feasible integer
points together with integer objective rows; all objectives are minimized
and dominance is componentwise.  The production pipeline scans the feasible
lattice once, reduces the outcome multiset to its minimal antichain by a
sorted staircase sweep, and then rebuilds every derived object with the
generating-function engine: one polytope encoding per fiber of the outcome
map, a product-form encoding per staircase box of the dominated region, and
a monomial substitution for the graph.  Each construction is cross-checked
against a structurally different route (boolean combination of shifted
orthants, iterated intersections, a lifted triple product) that the test
suite runs on small instances.
"""

from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DimensionMismatch, ParseError
from .polyhedra import Box, Polyhedron, is_bounded, outcome_box, vertices
from ._linalg import identity, vdot
from .genfunc import (
    SRF,
    GFTerm,
    gf_of_box,
    gf_of_polytope,
    monomial_substitution,
    partial_specialize_tail,
    product_disjoint,
    specialize_count,
)
from .setops import boolean_combine, intersect, shift, simplify
from . import oracle

__all__ = [
    "Problem",
    "ParetoHandles",
    "parse_problem",
    "format_problem",
    "compute_handles",
    "pareto_gf",
    "count_pareto",
    "dominated_gf",
    "dominated_gf_boolean",
    "dominated_member_epigraph",
    "pareto_gf_hadamard",
    "strategies_gf",
    "strategies_gf_product",
    "graph_gf",
    "ideal_point",
]


def _int_entry(x):
    i = int(x)
    if i != x:
        raise ValueError(f"integer entry required, got {x!r}")
    return i


@dataclass(frozen=True)
class Problem:
    """Feasible region A u <= b (bounded, nonempty) with objective rows F.

    Entries are integers; rows of F map a feasible point u to its outcome
    F u, minimized componentwise.  Frozen and hashable so derived encodings
    can be cached per problem.
    """

    A: tuple
    b: tuple
    F: tuple

    def __post_init__(self):
        A = tuple(tuple(_int_entry(x) for x in row) for row in self.A)
        if not A or not A[0]:
            raise DimensionMismatch("constraint matrix must be nonempty")
        n = len(A[0])
        if any(len(row) != n for row in A):
            raise DimensionMismatch("ragged constraint matrix")
        b = tuple(_int_entry(x) for x in self.b)
        if len(b) != len(A):
            raise DimensionMismatch("right-hand side length mismatch")
        F = tuple(tuple(_int_entry(x) for x in row) for row in self.F)
        if not F:
            raise DimensionMismatch("at least one objective row required")
        if any(len(row) != n for row in F):
            raise DimensionMismatch("objective row length mismatch")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "F", F)
        P = Polyhedron(A, b, n)
        if not is_bounded(P):
            from .errors import UnboundedPolyhedron
            raise UnboundedPolyhedron("feasible region must be bounded")
        vertices(P)  # raises EmptyPolyhedron when infeasible

    @property
    def n(self):
        return len(self.A[0])

    @property
    def m(self):
        return len(self.A)

    @property
    def k(self):
        return len(self.F)

    def polyhedron(self):
        return Polyhedron(self.A, self.b, self.n)


# ---------------------------------------------------------------------------
# problem files


def parse_problem(text):
    """Parse the whitespace-tokenized problem format:

        mcilp-problem v1
        n <n> m <m> k <k>
        A
        <m rows of n integers>
        b
        <m integers>
        F
        <k rows of n integers>

    Line breaks are cosmetic; any extra trailing tokens are an error.
    """
    toks = text.split()
    pos = 0

    def take(expect=None):
        nonlocal pos
        if pos >= len(toks):
            raise ParseError("unexpected end of problem text")
        t = toks[pos]
        pos += 1
        if expect is not None and t != expect:
            raise ParseError(f"expected {expect!r}, got {t!r}")
        return t

    def take_int():
        t = take()
        try:
            return int(t)
        except ValueError:
            raise ParseError(f"expected integer, got {t!r}") from None

    take("mcilp-problem")
    take("v1")
    take("n")
    n = take_int()
    take("m")
    m = take_int()
    take("k")
    k = take_int()
    if n < 1 or m < 1 or k < 1:
        raise ParseError("n, m, k must be positive")
    take("A")
    A = tuple(tuple(take_int() for _ in range(n)) for _ in range(m))
    take("b")
    b = tuple(take_int() for _ in range(m))
    take("F")
    F = tuple(tuple(take_int() for _ in range(n)) for _ in range(k))
    if pos != len(toks):
        raise ParseError(f"trailing content starting at {toks[pos]!r}")
    return Problem(A, b, F)


def format_problem(problem):
    lines = [
        "mcilp-problem v1",
        f"n {problem.n} m {problem.m} k {problem.k}",
        "A",
    ]
    lines += [" ".join(str(x) for x in row) for row in problem.A]
    lines.append("b")
    lines.append(" ".join(str(x) for x in problem.b))
    lines.append("F")
    lines += [" ".join(str(x) for x in row) for row in problem.F]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# production pipeline


_Pipeline = namedtuple(
    "_Pipeline",
    "points outcomes front box fibers g_pareto g_spareto g_strategies g_graph",
)


def _staircase_minima(points):
    """Minimal elements under componentwise <= of lex-sorted distinct input.

    A dominator is lexicographically smaller than its victim, so one forward
    pass suffices, and by transitivity only previously accepted elements
    need checking.
    """
    front = []
    for p in points:
        if not any(all(a <= b for a, b in zip(q, p)) for q in front):
            front.append(p)
    return front


def _embed_with_outcome(g, o):
    """Append fixed outcome coordinates: x^u -> x^u z^o on every term."""
    zeros = (0,) * len(o)
    terms = tuple(
        GFTerm(t.coeff, t.num + o, tuple(d + zeros for d in t.dens))
        for t in g.terms
    )
    return SRF(g.dim + len(o), terms)


@lru_cache(maxsize=32)
def _pipeline(problem):
    P = problem.polyhedron()
    pts = oracle.enumerate_lattice(P)
    F = problem.F
    n, k = problem.n, problem.k
    outs = [tuple(vdot(f, u) for f in F) for u in pts]
    outcomes = sorted(set(outs))
    front = _staircase_minima(outcomes)
    box = outcome_box(P, F)
    front_set = set(front)
    n_strat = sum(1 for o in outs if o in front_set)

    fibers = []
    strat_terms = []
    spareto_terms = []
    for o in front:
        A = P.A + F + tuple(tuple(-x for x in f) for f in F)
        b = P.b + o + tuple(-x for x in o)
        g_o = gf_of_polytope(Polyhedron(A, b, n), assume_bounded=True)
        fibers.append((o, g_o))
        strat_terms.extend(g_o.terms)
        spareto_terms.extend(_embed_with_outcome(g_o, o).terms)
    g_strategies = SRF(n, tuple(strat_terms))
    g_spareto = SRF(n + k, tuple(spareto_terms))
    g_pareto = SRF.from_points(k, front)
    g_graph = monomial_substitution(gf_of_polytope(P, assume_bounded=True), F)

    # one scan-grade integrity check per encoding; cheap relative to the build
    assert specialize_count(g_strategies) == n_strat
    assert specialize_count(g_graph) == len(pts)

    return _Pipeline(
        points=tuple(pts),
        outcomes=tuple(outcomes),
        front=tuple(front),
        box=box,
        fibers=tuple(fibers),
        g_pareto=g_pareto,
        g_spareto=g_spareto,
        g_strategies=g_strategies,
        g_graph=g_graph,
    )


def pareto_gf(problem):
    """Monomial encoding of the minimal outcome antichain."""
    return _pipeline(problem).g_pareto


def count_pareto(problem):
    return specialize_count(pareto_gf(problem))


def graph_gf(problem):
    """Encoding of {(u, F u) : u feasible} in n + k variables."""
    return _pipeline(problem).g_graph


def strategies_gf(problem):
    """Pair of encodings: lifted strategy graph over minimal outcomes in
    n + k variables, and its projection to strategy points in n variables.

    Built fiber by fiber over the front; fibers are disjoint, so dropping
    the outcome coordinates never merges points and both encodings count
    the same set of strategies.
    """
    rec = _pipeline(problem)
    return rec.g_spareto, rec.g_strategies


def outcome_window(problem):
    """Integer box guaranteed to contain every feasible outcome."""
    return _pipeline(problem).box


# ---------------------------------------------------------------------------
# dominated region


def _dominated_boxes(points, lower, upper):
    """Disjoint integer boxes covering the part of [lower, upper] weakly
    dominated by some point.  Slices on the first coordinate; each slab
    recurses on the minima of the projections active in it."""
    pts = [p for p in points if all(x <= u for x, u in zip(p, upper))]
    if not pts:
        return []
    if len(lower) == 1:
        m = max(lower[0], min(p[0] for p in pts))
        return [((m,), (upper[0],))]
    starts = sorted({max(p[0], lower[0]) for p in pts})
    boxes = []
    for i, s in enumerate(starts):
        e = starts[i + 1] - 1 if i + 1 < len(starts) else upper[0]
        active = sorted({p[1:] for p in pts if p[0] <= s})
        sub = _staircase_minima(active)
        for blo, bhi in _dominated_boxes(sub, lower[1:], upper[1:]):
            boxes.append(((s,) + blo, (e,) + bhi))
    return boxes


def dominated_gf(problem, box=None):
    """Encoding of the box points weakly dominated by a feasible outcome.

    The region is an upward-closed staircase; it splits into disjoint boxes
    (at most one per front point and first-coordinate slab), each encoded in
    product form, so the result stays short for any front size.
    """
    rec = _pipeline(problem)
    if box is None:
        box = rec.box
    g = SRF.zero(problem.k)
    for lo, hi in _dominated_boxes(rec.front, box.lower, box.upper):
        g = g + gf_of_box(Box(lo, hi))
    return g


def dominated_gf_boolean(problem, box=None):
    """Same region as dominated_gf, built the literal way: a balanced union
    of one truncated shifted orthant per distinct outcome, evaluated with
    inclusion-exclusion.  Exponential in the number of outcomes; kept as an
    independent cross-check for small instances."""
    rec = _pipeline(problem)
    if box is None:
        box = rec.box
    sets = []
    for o in rec.outcomes:
        lo = tuple(max(x, l) for x, l in zip(o, box.lower))
        if any(l > h for l, h in zip(lo, box.upper)):
            sets.append(SRF.zero(problem.k))
        else:
            sets.append(gf_of_box(Box(lo, box.upper)))

    def tree(i, j):
        if i == j:
            return i
        mid = (i + j) // 2
        return ("union", tree(i, mid), tree(mid + 1, j))

    return boolean_combine(sets, tree(0, len(sets) - 1), box)


def dominated_member_epigraph(problem, point):
    """Membership test for the dominated region by counting the fiber
    {u feasible : F u <= point}; nonzero count means dominated.  Shares no
    geometry with the staircase decomposition."""
    P = problem.polyhedron()
    A = P.A + problem.F
    b = P.b + tuple(point)
    fiber = Polyhedron(A, b, problem.n)
    return specialize_count(gf_of_polytope(fiber, assume_bounded=True)) > 0


def pareto_gf_hadamard(problem, box=None):
    """Front encoding recovered from the dominated region alone: a point is
    minimal iff it is dominated but stops being so after any unit step down,
    so the front is the k-fold intersection of (D minus (e_i + D)).  Runs
    the intersection machinery hard; cross-check route for small fronts."""
    rec = _pipeline(problem)
    if box is None:
        box = rec.box
    D = dominated_gf(problem, box)
    acc = None
    for i in range(problem.k):
        e = tuple(1 if j == i else 0 for j in range(problem.k))
        stepped = intersect(D, shift(D, e), box)
        survives = simplify(D + stepped.scale(-1))
        acc = survives if acc is None else intersect(acc, survives, box)
    return acc


# ---------------------------------------------------------------------------
# literal lifted product route


def strategies_gf_product(problem):
    """Lifted strategy encoding by one big intersection: the product of the
    feasible encoding (in x) with the front encoding (in z) intersected with
    the graph encoding keeps exactly the pairs (u, F u) with F u minimal.
    The projection then specializes the z block to 1.  Quadratic blowup in
    term count; cross-check route."""
    rec = _pipeline(problem)
    P = problem.polyhedron()
    lift = product_disjoint(gf_of_polytope(P, assume_bounded=True), rec.g_pareto)
    ubox = outcome_box(P, identity(problem.n))
    window = Box(ubox.lower + rec.box.lower, ubox.upper + rec.box.upper)
    g_sp = intersect(lift, rec.g_graph, window)
    g_st = partial_specialize_tail(g_sp, problem.k)
    return g_sp, g_st


# ---------------------------------------------------------------------------
# ideal point


def ideal_point(problem):
    """Componentwise minimum of the outcomes, one linear minimization over
    the graph encoding per objective coordinate."""
    from .select import minimize_linear_over_set

    rec = _pipeline(problem)
    P = problem.polyhedron()
    ubox = outcome_box(P, identity(problem.n))
    window = Box(ubox.lower + rec.box.lower, ubox.upper + rec.box.upper)
    n, k = problem.n, problem.k
    out = []
    for i in range(k):
        c = (0,) * n + tuple(1 if j == i else 0 for j in range(k))
        _, value = minimize_linear_over_set(rec.g_graph, c, window)
        out.append(value)
    return tuple(out)


class ParetoHandles:
    """Bundle of every encoding for one problem.

    The dominated-region encoding is built on first access; everything else
    is materialized eagerly by the shared pipeline.
    """

    def __init__(self, problem):
        rec = _pipeline(problem)
        self.problem = problem
        self.box = rec.box
        self.g_pareto = rec.g_pareto
        self.g_graph = rec.g_graph
        self.g_spareto = rec.g_spareto
        self.g_strategies = rec.g_strategies
        self._dominated = None

    @property
    def g_dominated(self):
        if self._dominated is None:
            self._dominated = dominated_gf(self.problem)
        return self._dominated


def compute_handles(problem):
    return ParetoHandles(problem)
