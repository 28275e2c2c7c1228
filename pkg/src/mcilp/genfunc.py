"""Short rational generating functions for lattice-point sets.

The encoding: a finite (or polyhedral) set S of integer points is represented
as a sum of terms

    coeff * x^c / ((1 - x^{d_1}) * ... * (1 - x^{d_s}))

whose formal multivariate Laurent expansion has coefficient 1 exactly on the
points of S.  Construction from a bounded polyhedron goes through Brion's
decomposition into vertex tangent cones, triangulation of non-simplicial
cones, and recursive signed unimodular decomposition.

Boundary bookkeeping uses an infinitesimal apex shift: each vertex cone is
counted with its apex moved to v + theta*w for a symbolic infinitesimal
theta > 0 and an integer direction w chosen so that (a) every facet of the
original cone stays closed, hence the lattice set is unchanged, and (b) no
lattice point lies on any facet hyperplane of any cone produced during the
decomposition.  Condition (b) turns every membership decision into an exact
two-part sign test and removes all inclusion-exclusion over shared faces.
Directions are drawn from a deterministic sequence and retried until (b)
holds, so runs are reproducible.

Specialization (counting and weighted sums) substitutes x_i <- exp(t*l_i)
for a generic integer vector l and reads off constant terms of the Laurent
series in t using exact Bernoulli-number arithmetic; poles of any order are
supported, so repeated denominator vectors are first-class.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import floor
import random

from .errors import (DegenerateSubstitution, DimensionMismatch,
                     EmptyPolyhedron, NonGenericLambda, NonSimplicialCone,
                     ParseError, UnboundedPolyhedron)
from .polyhedra import Box, Polyhedron, is_bounded, vertices
from ._linalg import (adjugate, clear_denominators, det, hnf_solve, invert,
                      lll, mat_vec, nullspace, primitive, rank, solve,
                      transpose, vadd, vdot, vneg, vsub)


@dataclass(frozen=True)
class GFTerm:
    """One summand coeff * x^num / prod_j (1 - x^{dens[j]}).

    Denominator vectors are kept in a canonical sorted order (the product is
    commutative) so that equal terms compare and merge reliably.  Repeats are
    allowed and encode higher-order poles.
    """

    coeff: Fraction
    num: tuple
    dens: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        num = tuple(int(x) for x in self.num)
        dens = tuple(sorted(tuple(int(x) for x in d) for d in self.dens))
        for d in dens:
            if len(d) != len(num):
                raise DimensionMismatch("denominator vector dimension mismatch")
            if all(x == 0 for x in d):
                raise ValueError("zero denominator vector")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "dens", dens)

    @property
    def order(self):
        return len(self.dens)


@dataclass(frozen=True)
class SRF:
    """A short rational function: ambient dimension plus a term list."""

    dim: int
    terms: tuple

    def __post_init__(self):
        terms = tuple(self.terms)
        for t in terms:
            if len(t.num) != self.dim:
                raise DimensionMismatch("term dimension mismatch")
        object.__setattr__(self, "terms", terms)

    @staticmethod
    def zero(dim):
        return SRF(dim, ())

    @staticmethod
    def from_points(dim, points, coeff=Fraction(1)):
        """Monomial encoding of an explicit finite set (sorted, deduplicated)."""
        pts = sorted(set(tuple(int(x) for x in p) for p in points))
        return SRF(dim, tuple(GFTerm(coeff, p, ()) for p in pts))

    def __add__(self, other):
        if self.dim != other.dim:
            raise DimensionMismatch("cannot add functions of different dimension")
        return SRF(self.dim, self.terms + other.terms)

    def __neg__(self):
        return SRF(self.dim, tuple(GFTerm(-t.coeff, t.num, t.dens) for t in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        return SRF(self.dim, tuple(GFTerm(c * t.coeff, t.num, t.dens) for t in self.terms))

    @property
    def is_monomial(self):
        return all(not t.dens for t in self.terms)


@dataclass(frozen=True)
class Cone:
    """Simplicial cone apex + cone(generators), with a bookkeeping sign."""

    apex: tuple
    generators: tuple
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "apex", tuple(Fraction(x) for x in self.apex))
        object.__setattr__(self, "generators",
                           tuple(tuple(int(x) for x in g) for g in self.generators))
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def dim(self):
        return len(self.apex)

    def index(self):
        """|det| of the generator matrix w.r.t. the lattice of its span."""
        gens = self.generators
        if rank(gens) != len(gens):
            raise NonSimplicialCone("generators are linearly dependent")
        if len(gens) == len(self.apex):
            return abs(int(det(transpose(gens))))
        coords = _span_lattice_coords(gens)
        return abs(int(det(transpose(coords))))

    def is_unimodular(self):
        return self.index() == 1


class _NonGenericShift(Exception):
    """Internal: the current shift direction hit a facet hyperplane."""


# ---------------------------------------------------------------------------
# signed unimodular decomposition


def _short_vector(cols, Gmat, adj, dd):
    """Nonzero integer z with all |(G^{-1} z)_i| < 1, preferring the
    Minkowski bound |(G^{-1} z)_i|^d <= 1/|det|.

    Tries the first LLL-reduced basis vector of the lattice G^{-1} Z^d, then
    falls back to exhaustive search in the guaranteed box.
    """
    d = len(cols)
    basis = transpose(tuple(tuple(Fraction(x, dd) for x in row) for row in adj))
    reduced = lll(basis)
    best = None
    for rho in reduced:
        m = max(abs(x) for x in rho)
        if m < 1 and (best is None or m < best[0]):
            best = (m, rho)
    if best is not None:
        rho = best[1]
        z = tuple(int(sum(Gmat[i][j] * rho[j] for j in range(d))) for i in range(d))
        if any(z):
            return z
    # exhaustive search within the Minkowski box
    absdet = abs(dd)
    bounds = []
    for i in range(d):
        s = sum(abs(Gmat[i][j]) for j in range(d))
        B = 0
        while (B ** d) * absdet < s ** d:
            B += 1
        bounds.append(B)
    target = absdet ** (d - 1)
    for z in product(*[range(-B, B + 1) for B in bounds]):
        if not any(z):
            continue
        az = mat_vec(adj, z)
        if all(abs(a) ** d <= target for a in az):
            return tuple(z)
    raise AssertionError("short vector search failed despite Minkowski bound")


def _signed_unimodular_cols(cols, w):
    """Signed unimodular decomposition of the full-dimensional simplicial
    cone spanned by integer columns `cols`.

    Yields (sign, columns).  When `w` is given, every cone met during the
    recursion is checked to have no facet hyperplane orthogonal to w, and
    _NonGenericShift is raised otherwise.
    """
    out = []
    stack = [(tuple(cols), 1)]
    while stack:
        cs, sgn = stack.pop()
        Gmat = tuple(zip(*cs))
        adj, dd = adjugate(Gmat)
        if w is not None:
            if any(x == 0 for x in mat_vec(adj, w)):
                raise _NonGenericShift
        if abs(dd) == 1:
            out.append((sgn, cs))
            continue
        z = _short_vector(cs, Gmat, adj, dd)
        az = mat_vec(adj, z)
        for j, aj in enumerate(az):
            if aj == 0:
                continue
            child = cs[:j] + (z,) + cs[j + 1:]
            s = 1 if (aj > 0) == (dd > 0) else -1
            stack.append((child, sgn * s))
    return out


def _span_lattice_coords(gens):
    """Coordinates of `gens` in a basis of span(gens) intersected with Z^d.

    Returns integer coordinate vectors plus (via closure) nothing else; used
    to decompose lower-dimensional cones w.r.t. the induced lattice.
    """
    perp = nullspace(gens)
    if not perp:
        return tuple(tuple(g) for g in gens)
    E = tuple(clear_denominators(v) for v in perp)
    sol = hnf_solve(E, (0,) * len(E))
    assert sol is not None
    _, K = sol
    Kmat = transpose(K)  # d x r, columns are the lattice basis
    r = len(K)
    sq_rows = _independent_rows(Kmat, r)
    Ksq = tuple(Kmat[i] for i in sq_rows)
    coords = []
    for g in gens:
        rhs = tuple(g[i] for i in sq_rows)
        c = solve(Ksq, rhs)
        coords.append(tuple(int(x) for x in c))
    return tuple(coords)


def _independent_rows(M, r):
    """Indices of r linearly independent rows of M."""
    picked = []
    for i in range(len(M)):
        trial = picked + [i]
        if rank(tuple(M[j] for j in trial)) == len(trial):
            picked = trial
            if len(picked) == r:
                return picked
    raise ValueError("matrix has lower rank than requested")


def unimodular_decompose(C):
    """Signed unimodular decomposition of a simplicial cone.

    Returns a list of Cone values with |index| = 1 whose signed indicator sum
    equals the indicator of C up to lattice-point-free boundary sets; the
    boundary convention is resolved by the apex-shift machinery at counting
    time, not here.
    """
    gens = C.generators
    if not gens or rank(gens) != len(gens):
        raise NonSimplicialCone("cone generators must be linearly independent")
    d = len(gens[0])
    if len(gens) == d:
        pieces = _signed_unimodular_cols(gens, None)
        return [Cone(C.apex, cs, C.sign * s) for s, cs in pieces]
    # lower-dimensional: decompose in lattice coordinates of the span
    coords = _span_lattice_coords(gens)
    pieces = _signed_unimodular_cols(coords, None)
    # map back: columns are integer combinations of the original generators
    Gorig = transpose(gens)           # d x s
    Gcoord = transpose(coords)        # s x s
    inv = invert(Gcoord)
    out = []
    for s, cs in pieces:
        mapped = []
        for col in cs:
            lam = mat_vec(inv, col)   # coordinates w.r.t. original generators
            vec = tuple(sum(Gorig[i][j] * lam[j] for j in range(len(lam)))
                        for i in range(len(Gorig)))
            mapped.append(tuple(int(x) for x in vec))
        out.append(Cone(C.apex, tuple(mapped), C.sign * s))
    return out


# ---------------------------------------------------------------------------
# tangent cones, triangulation, vertex terms


def _tangent_rays(normals, d):
    """Extreme rays of the pointed full-dimensional cone {y : a.y <= 0}."""
    from itertools import combinations
    rays = set()
    if d == 1:
        if all(a[0] <= 0 for a in normals):
            rays.add((1,))
        if all(-a[0] <= 0 for a in normals):
            rays.add((-1,))
        return tuple(sorted(rays))
    for idx in combinations(range(len(normals)), d - 1):
        sub = tuple(normals[i] for i in idx)
        if rank(sub) != d - 1:
            continue
        ns = nullspace(sub)
        if len(ns) != 1:
            continue
        z = primitive(tuple(Fraction(x) for x in _clear(ns[0])))
        for cand in (z, vneg(z)):
            if all(vdot(a, cand) <= 0 for a in normals):
                rays.add(cand)
    return tuple(sorted(rays))


def _clear(v):
    return clear_denominators(v)


def _cone_facets(rays, r):
    """Outer facet normals of the pointed full-dimensional cone spanned by
    `rays` in R^r: primitive h with h.ray <= 0 for all rays, tight on a
    rank-(r-1) subset."""
    from itertools import combinations
    if r == 1:
        # cone is a single ray; its only facet is the origin, never needed
        return ()
    facets = set()
    for idx in combinations(range(len(rays)), r - 1):
        sub = tuple(rays[i] for i in idx)
        if rank(sub) != r - 1:
            continue
        ns = nullspace(sub)
        if len(ns) != 1:
            continue
        h = primitive(_clear(ns[0]))
        vals = [vdot(h, ray) for ray in rays]
        if all(v <= 0 for v in vals):
            facets.add(h)
        elif all(v >= 0 for v in vals):
            facets.add(vneg(h))
    return tuple(sorted(facets))


def _triangulate(rays):
    """Triangulate a pointed cone given by extreme rays into simplicial
    pieces; returns tuples of indices into `rays` (pulling triangulation)."""
    n = len(rays)
    r = rank(rays)
    if n == r:
        return [tuple(range(n))]
    d = len(rays[0])
    if r < d:
        pivots = _pivot_cols(rays, r)
        proj = [tuple(ray[j] for j in pivots) for ray in rays]
        return _triangulate(proj)
    facets = _cone_facets(rays, r)
    out = []
    r0 = rays[0]
    for h in facets:
        if vdot(h, r0) == 0:
            continue
        face_idx = [i for i in range(n) if vdot(h, rays[i]) == 0]
        face_rays = [rays[i] for i in face_idx]
        for piece in _triangulate(face_rays):
            out.append((0,) + tuple(face_idx[j] for j in piece))
    return out


def _pivot_cols(rows, r):
    picked = []
    cols = transpose(rows)
    for j in range(len(cols)):
        trial = picked + [j]
        if rank(tuple(cols[i] for i in trial)) == len(trial):
            picked = trial
            if len(picked) == r:
                return picked
    raise ValueError("rank deficiency while selecting pivot columns")


def _shift_direction(rays, normals, attempt):
    """Deterministic candidate sequence for the apex-shift direction w.

    w = L * w0 + m where w0 = -(sum of rays) satisfies a.w0 >= 1 for every
    active outer normal a, m walks a moment curve (then a seeded random
    sequence), and L is large enough to keep a.w > 0 for all a.  Keeping all
    facets of the tangent cone closed preserves the cone's lattice set under
    the infinitesimal shift.
    """
    d = len(rays[0])
    w0 = vneg(tuple(sum(r[i] for r in rays) for i in range(d)))
    assert any(w0), "pointed cone cannot have rays summing to zero"
    if attempt == 0:
        return w0
    if attempt <= 40:
        t = attempt
        m = tuple(t ** i for i in range(d))
    else:
        rng = random.Random(9176 + attempt)
        m = tuple(rng.randint(-attempt, attempt) for _ in range(d))
    L = 1 + max((abs(vdot(a, m)) for a in normals), default=0)
    return vadd(tuple(L * x for x in w0), m)


def _lowest_point(v, cols, w):
    """Lowest lattice point of the unimodular cone v + theta*w + cone(cols),
    exact in the symbolic infinitesimal theta."""
    Gmat = tuple(zip(*cols))
    adj, dd = adjugate(Gmat)
    assert abs(dd) == 1
    Ginv = adj if dd == 1 else tuple(tuple(-x for x in row) for row in adj)
    c = mat_vec(Ginv, w)
    if any(x == 0 for x in c):
        raise _NonGenericShift
    q = mat_vec(Ginv, tuple(Fraction(x) for x in v))
    t0 = []
    for qi, ci in zip(q, c):
        fq = qi - floor(qi)
        if fq == 0:
            t0.append(Fraction(1) if ci > 0 else Fraction(0))
        else:
            t0.append(1 - fq)
    p0 = tuple(Fraction(x) + sum(Gmat[i][j] * t0[j] for j in range(len(t0)))
               for i, x in enumerate(v))
    out = []
    for x in p0:
        if Fraction(x).denominator != 1:
            raise AssertionError("lowest cone point must be integral")
        out.append(int(x))
    return tuple(out)


def _vertex_cone_terms(P, v):
    """GF terms of the tangent cone of P at vertex v (exact, shift-resolved)."""
    active = [i for i in range(P.nrows) if vdot(P.A[i], v) == P.b[i]]
    normals = tuple(P.A[i] for i in active)
    rays = _tangent_rays(normals, P.dim)
    if not rays or rank(rays) < P.dim:
        raise AssertionError("tangent cone at a vertex must be full-dimensional")
    pieces = _triangulate(rays)
    for attempt in range(200):
        w = _shift_direction(rays, normals, attempt)
        try:
            terms = []
            for piece in pieces:
                cols = tuple(rays[i] for i in piece)
                for sgn, ucols in _signed_unimodular_cols(cols, w):
                    p0 = _lowest_point(v, ucols, w)
                    terms.append(GFTerm(Fraction(sgn), p0, ucols))
            return terms
        except _NonGenericShift:
            continue
    raise AssertionError("no generic shift direction found after 200 attempts")


# ---------------------------------------------------------------------------
# polytope generating functions


def gf_of_polytope(P, assume_bounded=False):
    """SRF whose expansion is exactly sum_{u in P cap Z^d} x^u.

    Brion's identity over vertex tangent cones; implicit equality rows are
    eliminated first by substituting an integer parameterization of the
    affine hull, so lower-dimensional polytopes work too.  Empty P gives the
    zero-term SRF.
    """
    if not assume_bounded and not is_bounded(P):
        raise UnboundedPolyhedron("generating function requires a bounded polyhedron")
    try:
        V = vertices(P)
    except EmptyPolyhedron:
        return SRF.zero(P.dim)
    eq = [i for i in range(P.nrows)
          if all(vdot(P.A[i], v) == P.b[i] for v in V)]
    if eq:
        return _gf_lower_dimensional(P, eq)
    terms = []
    for v in V:
        terms.extend(_vertex_cone_terms(P, v))
    return SRF(P.dim, tuple(terms))


def _gf_lower_dimensional(P, eq_rows):
    """Substitute the affine hull's integer parameterization and recurse."""
    d = P.dim
    Aeq = tuple(P.A[i] for i in eq_rows)
    beq = tuple(P.b[i] for i in eq_rows)
    sol = hnf_solve(Aeq, beq)
    if sol is None:
        return SRF.zero(d)
    z0, K = sol
    r = len(K)
    if r == 0:
        if P.contains(z0):
            return SRF(d, (GFTerm(Fraction(1), z0, ()),))
        return SRF.zero(d)
    Kmat = transpose(K)  # d x r
    eq_set = set(eq_rows)
    rows = []
    rhs = []
    for i in range(P.nrows):
        if i in eq_set:
            continue
        a = P.A[i]
        row = tuple(vdot(a, tuple(Kmat[l][j] for l in range(d))) for j in range(r))
        # row_j = a . (j-th lattice basis vector)
        rows.append(row)
        rhs.append(P.b[i] - vdot(a, z0))
    Pw = Polyhedron(tuple(rows), tuple(rhs), r)
    gw = gf_of_polytope(Pw, assume_bounded=True)
    return _affine_exponent_map(gw, Kmat, z0, d)


def _affine_exponent_map(g, Mmat, shift, new_dim):
    """Apply the exponent map e -> shift + M e to every term of g.

    M must have linearly independent columns so the map is injective on
    exponents; denominator vectors then stay nonzero and independent.
    """
    terms = []
    old = g.dim
    for t in g.terms:
        num = tuple(shift[i] + sum(Mmat[i][j] * t.num[j] for j in range(old))
                    for i in range(new_dim))
        dens = []
        for dvec in t.dens:
            nd = tuple(sum(Mmat[i][j] * dvec[j] for j in range(old))
                       for i in range(new_dim))
            if not any(nd):
                raise DegenerateSubstitution("denominator vector mapped to zero")
            dens.append(nd)
        terms.append(GFTerm(t.coeff, num, tuple(dens)))
    return SRF(new_dim, tuple(terms))


def gf_of_box(box):
    """Product-form SRF of an integer box: one term per corner, 2^d terms.

    Equals what gf_of_polytope produces on the box's inequality description;
    built directly because boxes are the workhorse of every truncation.
    """
    d = box.dim
    factors = []
    for i in range(d):
        lo, hi = box.lower[i], box.upper[i]
        e = tuple(1 if j == i else 0 for j in range(d))
        ne = vneg(e)
        if lo == hi:
            factors.append(((Fraction(1), lo, None),))
        else:
            factors.append(((Fraction(1), lo, e), (Fraction(1), hi, ne)))
    terms = []
    for combo in product(*factors):
        coeff = Fraction(1)
        num = []
        dens = []
        for cf, pos, dvec in combo:
            coeff *= cf
            num.append(pos)
            if dvec is not None:
                dens.append(dvec)
        terms.append(GFTerm(coeff, tuple(num), tuple(dens)))
    return SRF(d, tuple(terms))


def monomial_substitution(g, L):
    """Graph substitution x_j -> x_j * z^{L e_j}: exponents u -> (u, L u).

    L is a k x n integer matrix; the ambient dimension grows from n to n+k.
    Raises DegenerateSubstitution if a denominator vector would map to zero
    (impossible for this map shape, checked anyway).
    """
    n = g.dim
    k = len(L)
    for row in L:
        if len(row) != n:
            raise DimensionMismatch("substitution matrix has wrong row length")
    Mmat = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    Mmat += [tuple(int(x) for x in row) for row in L]
    return _affine_exponent_map(g, tuple(Mmat), (0,) * (n + k), n + k)


# ---------------------------------------------------------------------------
# exact specialization


@lru_cache(maxsize=None)
def _bernoulli(n):
    if n == 0:
        return Fraction(1)
    from math import comb
    acc = Fraction(0)
    for j in range(n):
        acc += comb(n + 1, j) * _bernoulli(j)
    return -acc / (n + 1)


@lru_cache(maxsize=100000)
def _phi_series(a, L):
    """Taylor coefficients of phi(a t) = a t / (exp(a t) - 1) up to t^L."""
    from math import factorial
    return tuple(_bernoulli(n) * Fraction(a) ** n / factorial(n) for n in range(L + 1))


def _exp_series(a, L):
    from math import factorial
    return tuple(Fraction(a) ** n / factorial(n) for n in range(L + 1))


def _series_mul(A, B, L):
    out = [Fraction(0)] * (L + 1)
    for i, x in enumerate(A):
        if x == 0 or i > L:
            continue
        for j, y in enumerate(B):
            if i + j > L:
                break
            if y:
                out[i + j] += x * y
    return tuple(out)


def pick_generic_lambda(g):
    """First moment-curve vector (1, t, t^2, ...) non-orthogonal to every
    denominator vector of g; deterministic."""
    dens = sorted(set(d for t in g.terms for d in t.dens))
    d = g.dim
    if d == 1:
        return (1,)
    t = 1
    while True:
        lam = tuple(t ** i for i in range(d))
        if all(vdot(lam, dv) != 0 for dv in dens):
            return lam
        t += 1


def normalize_orientation(g, lam):
    """Flip denominators so every denominator vector d has <lam, d> < 0.

    Uses 1/(1-x^d) = -x^{-d}/(1-x^{-d}) per offending vector; the encoded
    expansion (as the set's indicator series) is unchanged.
    """
    terms = []
    for t in g.terms:
        coeff = t.coeff
        num = t.num
        dens = []
        for dv in t.dens:
            s = vdot(lam, dv)
            if s == 0:
                raise NonGenericLambda("direction orthogonal to a denominator vector")
            if s > 0:
                coeff = -coeff
                num = vsub(num, dv)
                dens.append(vneg(dv))
            else:
                dens.append(dv)
        terms.append(GFTerm(coeff, num, tuple(dens)))
    return SRF(g.dim, tuple(terms))


def _term_constant(term, lam):
    """Constant Laurent coefficient in t of term under x_i <- exp(t lam_i)."""
    s = term.order
    if s == 0:
        return term.coeff
    a0 = vdot(lam, term.num)
    prod = _exp_series(a0, s)
    denom = 1
    for dv in term.dens:
        a = vdot(lam, dv)
        if a == 0:
            raise NonGenericLambda("direction orthogonal to a denominator vector")
        denom *= a
        prod = _series_mul(prod, _phi_series(a, s), s)
    sign = -1 if s % 2 else 1
    return term.coeff * Fraction(sign, 1) / denom * prod[s]


def _specialize_sum(g):
    lam = pick_generic_lambda(g)
    total = Fraction(0)
    for term in g.terms:
        total += _term_constant(term, lam)
    return total


def specialize_count(g):
    """|S| for the finite set S encoded by g, as an exact integer."""
    if not g.terms:
        return 0
    total = _specialize_sum(g)
    if total.denominator != 1:
        raise AssertionError(f"count came out non-integral: {total}")
    return int(total)


def _poly_monomials(f):
    """Accept a Polynomial-like object or an iterable of (coeff, exponents)."""
    mono = getattr(f, "monomials", None)
    items = mono if mono is not None else f
    out = []
    for coeff, exps in items:
        out.append((Fraction(coeff), tuple(int(e) for e in exps)))
    return tuple(out)


def _eval_poly(mono, v):
    total = Fraction(0)
    for coeff, exps in mono:
        term = coeff
        for x, e in zip(v, exps):
            if e:
                term *= Fraction(x) ** e
        total += term
    return total


def _apply_euler_op(g, i):
    """Apply the operator x_i * d/dx_i to every term of g."""
    terms = []
    for t in g.terms:
        if t.num[i] != 0:
            terms.append(GFTerm(t.coeff * t.num[i], t.num, t.dens))
        for j, dv in enumerate(t.dens):
            if dv[i] == 0:
                continue
            terms.append(GFTerm(t.coeff * dv[i], vadd(t.num, dv), t.dens + (dv,)))
    return _merge_terms(SRF(g.dim, tuple(terms)))


def _apply_poly_operator(g, mono):
    """Apply f(x_1 d_1, ..., x_d d_d) once, for f given by monomials."""
    total = SRF.zero(g.dim)
    for coeff, exps in mono:
        piece = g
        for i, e in enumerate(exps):
            for _ in range(e):
                piece = _apply_euler_op(piece, i)
        total = total + piece.scale(coeff)
    return _merge_terms(total)


def weighted_specialize(g, f, s):
    """Exact sum_{v in S} f(v)^s for the finite set S encoded by g.

    Monomial terms are evaluated directly; terms with denominators go
    through s applications of the differential operator f(x del) followed by
    constant-term extraction.
    """
    if s < 1:
        raise ValueError("power s must be a positive integer")
    mono = _poly_monomials(f)
    total = Fraction(0)
    op_terms = []
    for t in g.terms:
        if not t.dens:
            total += t.coeff * _eval_poly(mono, t.num) ** s
        else:
            op_terms.append(t)
    if op_terms:
        h = SRF(g.dim, tuple(op_terms))
        for _ in range(s):
            h = _apply_poly_operator(h, mono)
        total += _specialize_sum(h)
    return total


def partial_specialize_tail(g, k):
    """Substitute 1 for the last k variables, keeping the first dim-k alive.

    Substitution is z_i <- exp(t*lam_i) for a generic integer lam followed by
    extraction of the constant t-coefficient, performed per term with series
    whose coefficients live in the rational-function ring over the remaining
    variables.  Denominators of the form (1 - x^dx z^dz) with dx = 0 are
    genuine poles and need <lam, dz> != 0; mixed denominators expand as

        1/(1 - x^dx e^{at}) = sum_m x^{m dx} (e^{at}-1)^m / (1-x^dx)^{m+1}

    which is regular in t.  Output terms may repeat denominator vectors
    (higher-order poles); they specialize fine but are counting-grade, not
    window-grade.
    """
    n = g.dim - k
    if n < 1 or k < 1:
        raise DimensionMismatch("partial specialization needs 1 <= k < dim")
    pure = sorted(set(t.dens[j][n:] for t in g.terms for j in range(t.order)
                      if not any(t.dens[j][:n])))
    if k == 1:
        lam = (1,)
    else:
        tt = 1
        while True:
            lam = tuple(tt ** i for i in range(k))
            if all(vdot(lam, dz) != 0 for dz in pure):
                break
            tt += 1

    out_terms = []
    for term in g.terms:
        cx, cz = term.num[:n], term.num[n:]
        pure_a = []
        mixed = []
        for dv in term.dens:
            dx, dz = dv[:n], dv[n:]
            if not any(dx):
                pure_a.append(vdot(lam, dz))
            else:
                mixed.append((dx, vdot(lam, dz)))
        s0 = len(pure_a)
        # series in t up to order s0, coefficients: {(num, dens): Fraction}
        series = [{} for _ in range(s0 + 1)]
        a0 = vdot(lam, cz)
        base = _exp_series(a0, s0)
        for a in pure_a:
            base = _series_mul(base, _phi_series(a, s0), s0)
        for i, c in enumerate(base):
            if c:
                series[i][(cx, ())] = c
        for dx, a in mixed:
            # sum_m x^{m dx} (e^{at}-1)^m / (1-x^dx)^{m+1}, truncated at t^s0
            expm1 = tuple(x - (1 if idx == 0 else 0)
                          for idx, x in enumerate(_exp_series(a, s0)))
            factor = [{} for _ in range(s0 + 1)]
            power = (Fraction(1),) + (Fraction(0),) * s0  # (e^{at}-1)^m
            for m in range(s0 + 1):
                if m > 0:
                    power = _series_mul(power, expm1, s0)
                shift_num = tuple(m * x for x in dx)
                dens_part = (dx,) * (m + 1)
                for i, c in enumerate(power):
                    if c:
                        key = (shift_num, dens_part)
                        factor[i][key] = factor[i].get(key, Fraction(0)) + c
            new = [{} for _ in range(s0 + 1)]
            for i in range(s0 + 1):
                for (n1, d1), c1 in series[i].items():
                    for j in range(s0 + 1 - i):
                        for (n2, d2), c2 in factor[j].items():
                            key = (vadd(n1, n2), tuple(sorted(d1 + d2)))
                            new[i + j][key] = new[i + j].get(key, Fraction(0)) + c1 * c2
            series = new
        denom = 1
        for a in pure_a:
            if a == 0:
                raise NonGenericLambda("pure tail denominator orthogonal to lam")
            denom *= a
        sign = -1 if s0 % 2 else 1
        scale = term.coeff * Fraction(sign) / denom
        for (num, dens), c in sorted(series[s0].items()):
            if c:
                out_terms.append(GFTerm(scale * c, num, dens))
    return _merge_terms(SRF(n, tuple(out_terms)))


def _merge_terms(g):
    """Merge equal (num, dens) terms by summing coefficients; drop zeros."""
    acc = {}
    order = []
    for t in g.terms:
        key = (t.num, t.dens)
        if key in acc:
            acc[key] += t.coeff
        else:
            acc[key] = t.coeff
            order.append(key)
    terms = tuple(GFTerm(acc[k], k[0], k[1]) for k in order if acc[k] != 0)
    return SRF(g.dim, terms)


# ---------------------------------------------------------------------------
# expansion over a window (verification and recompression support)


def _term_window_adder(term, points, acc, lam):
    """Add term's expansion coefficients at the given window points into acc.

    Fast path solves the unique mu >= 0 when the denominator vectors are
    linearly independent; otherwise the coefficient at a point counts its
    representations, found by a budgeted search (valid because all vectors
    sit in the open halfspace <lam, .> < 0 after orientation normalization).
    """
    d = len(term.num)
    D = transpose(term.dens)  # d x s matrix, columns = denominator vectors
    s = len(term.dens)
    if rank(term.dens) == s:
        piv = _independent_rows(D, s)
        Dsq = tuple(D[i] for i in piv)
        inv = invert(Dsq)
        for v in points:
            rhs = tuple(v[i] - term.num[i] for i in piv)
            mu = mat_vec(inv, rhs)
            ok = all(x.denominator == 1 and x >= 0 for x in map(Fraction, mu))
            if not ok:
                continue
            mu = tuple(int(x) for x in mu)
            full = tuple(term.num[i] + sum(D[i][j] * mu[j] for j in range(s))
                         for i in range(d))
            if full == tuple(v):
                acc[tuple(v)] = acc.get(tuple(v), Fraction(0)) + term.coeff
        return
    drops = [-vdot(lam, dv) for dv in term.dens]
    assert all(a > 0 for a in drops)
    pset = set(tuple(v) for v in points)
    budget = vdot(lam, term.num) - min(vdot(lam, p) for p in points)

    def walk(j, point, left):
        if j == s:
            if point in pset:
                acc[point] = acc.get(point, Fraction(0)) + term.coeff
            return
        dv = term.dens[j]
        cur = point
        used = 0
        while used * drops[j] <= left:
            walk(j + 1, cur, left - used * drops[j])
            cur = vadd(cur, dv)
            used += 1

    if budget >= 0:
        walk(0, term.num, budget)


def expand_window(g, box):
    """Exact expansion coefficients of g at every lattice point of `box`.

    Orientation is normalized first so all terms expand in one common
    convergence region; only then do per-term geometric series add up
    pointwise to the encoded function.  Returns {point: coefficient} with
    zero coefficients omitted.  Terms must have linearly independent
    denominator vectors (true for everything the polytope and set-algebra
    pipelines produce).
    """
    if box.dim != g.dim:
        raise DimensionMismatch("window dimension mismatch")
    lam = None
    if g.terms:
        lam = pick_generic_lambda(g)
        g = normalize_orientation(g, lam)
    points = list(product(*[range(lo, hi + 1)
                            for lo, hi in zip(box.lower, box.upper)]))
    acc = {}
    for term in g.terms:
        if not term.dens:
            p = term.num
            if box.contains(p):
                acc[p] = acc.get(p, Fraction(0)) + term.coeff
        else:
            _term_window_adder(term, points, acc, lam)
    return {p: c for p, c in acc.items() if c != 0}


# ---------------------------------------------------------------------------
# serialization


def format_srf(g):
    """Text form: header `dim=<d> terms=<T>`, then one line per term:
    `coeff_num/coeff_den ; c_1,...,c_d ; d_11,...|d_12,...|...`."""
    lines = [f"dim={g.dim} terms={len(g.terms)}"]
    for t in g.terms:
        c = t.coeff
        num = ",".join(str(x) for x in t.num)
        dens = "|".join(",".join(str(x) for x in dv) for dv in t.dens)
        lines.append(f"{c.numerator}/{c.denominator} ; {num} ; {dens}")
    return "\n".join(lines) + "\n"


def parse_srf(text):
    """Inverse of format_srf; exact round-trip, strict about shape."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty generating function text")
    head = lines[0].split()
    try:
        dim = int(head[0].split("=", 1)[1])
        count = int(head[1].split("=", 1)[1])
    except (IndexError, ValueError) as exc:
        raise ParseError(f"bad header line: {lines[0]!r}") from exc
    if len(lines) - 1 != count:
        raise ParseError(f"expected {count} term lines, found {len(lines) - 1}")
    terms = []
    for ln in lines[1:]:
        parts = [p.strip() for p in ln.split(";")]
        if len(parts) != 3:
            raise ParseError(f"term line needs 3 fields: {ln!r}")
        try:
            cn, cd = parts[0].split("/")
            coeff = Fraction(int(cn), int(cd))
            num = tuple(int(x) for x in parts[1].split(",")) if parts[1] else ()
            dens = []
            if parts[2]:
                for chunk in parts[2].split("|"):
                    dens.append(tuple(int(x) for x in chunk.split(",")))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad term line: {ln!r}") from exc
        if len(num) != dim:
            raise ParseError(f"term exponent has wrong dimension: {ln!r}")
        terms.append(GFTerm(coeff, num, tuple(dens)))
    return SRF(dim, tuple(terms))


def product_disjoint(g1, g2):
    """SRF of the product g1(x) * g2(z) over the concatenated variable blocks.

    Encodes the Cartesian product of the two encoded sets.
    """
    d1, d2 = g1.dim, g2.dim
    zeros1 = (0,) * d1
    zeros2 = (0,) * d2
    terms = []
    for t1 in g1.terms:
        for t2 in g2.terms:
            num = t1.num + t2.num
            dens = tuple(dv + zeros2 for dv in t1.dens) + \
                tuple(zeros1 + dv for dv in t2.dens)
            terms.append(GFTerm(t1.coeff * t2.coeff, num, dens))
    return SRF(d1 + d2, tuple(terms))
