"""Set algebra on SRF-encoded finite lattice sets.

Intersection is a Hadamard product of expansions: per pair of terms the
common exponents {c1 + D1 mu = c2 + D2 nu, mu, nu >= 0} are the image of an
auxiliary polyhedron's lattice points, whose generating function is computed
by the polytope machinery and mapped back through the (injective) exponent
map.  Unions and differences reduce to intersections by inclusion-exclusion
inside a declared universe box.

Termwise products only see the encoded sets through their expansions, so
both inputs must be orientation-normalized to one common generic direction
before multiplying; `intersect` does that normalization itself, raw
`hadamard` checks and refuses.  A bounding window is required whenever an
input carries denominators: individual cone terms overlap in infinite sets
that only cancel across the whole sum, and the window is what keeps each
auxiliary polyhedron bounded.
"""

import os
from fractions import Fraction
from itertools import product

from .errors import DimensionMismatch, NonNormalizedInput, UniverseViolation
from .genfunc import (GFTerm, SRF, _affine_exponent_map, _independent_rows,
                      _merge_terms, expand_window, gf_of_box, gf_of_polytope,
                      normalize_orientation, pick_generic_lambda)
from .polyhedra import Box, Polyhedron, vertices
from ._linalg import hnf_solve, invert, mat_vec, rank, transpose, vdot


def simplify(g):
    """Merge identical terms (summing coefficients) and drop zero terms."""
    return _merge_terms(g)


def shift(g, w):
    """Encode {w + v : v in S}: multiply every numerator monomial by x^w."""
    if len(w) != g.dim:
        raise DimensionMismatch("shift vector dimension mismatch")
    w = tuple(int(x) for x in w)
    return SRF(g.dim, tuple(
        GFTerm(t.coeff, tuple(a + b for a, b in zip(t.num, w)), t.dens)
        for t in g.terms))


def _count_reps(term, point, lam):
    """Number of representations point = num + sum mu_j dens_j, mu >= 0."""
    s = term.order
    if s == 0:
        return 1 if term.num == point else 0
    if rank(term.dens) == s:
        D = transpose(term.dens)
        piv = _independent_rows(D, s)
        inv = invert(tuple(D[i] for i in piv))
        rhs = tuple(point[i] - term.num[i] for i in piv)
        mu = [Fraction(x) for x in mat_vec(inv, rhs)]
        if any(x.denominator != 1 or x < 0 for x in mu):
            return 0
        full = tuple(term.num[i] + sum(D[i][j] * int(mu[j]) for j in range(s))
                     for i in range(len(point)))
        return 1 if full == tuple(point) else 0
    drops = [-vdot(lam, dv) for dv in term.dens]
    assert all(a > 0 for a in drops)
    budget = vdot(lam, term.num) - vdot(lam, point)
    if budget < 0:
        return 0

    def walk(j, cur, left):
        if j == s:
            return 1 if cur == tuple(point) else 0
        total = 0
        used = 0
        pt = cur
        while used * drops[j] <= left:
            total += walk(j + 1, pt, left - used * drops[j])
            pt = tuple(a + b for a, b in zip(pt, term.dens[j]))
            used += 1
        return total

    return walk(0, term.num, budget)


def _pair_product(t1, t2, window, lam):
    """SRF of the expansion product of two single terms within `window`."""
    d = len(t1.num)
    if t1.order == 0 and t2.order == 0:
        if t1.num == t2.num:
            return SRF(d, (GFTerm(t1.coeff * t2.coeff, t1.num, ()),))
        return SRF.zero(d)
    if t1.order == 0 or t2.order == 0:
        mono, other = (t1, t2) if t1.order == 0 else (t2, t1)
        reps = _count_reps(other, mono.num, lam)
        if reps == 0:
            return SRF.zero(d)
        return SRF(d, (GFTerm(mono.coeff * other.coeff * reps, mono.num, ()),))
    if window is None:
        raise ValueError("hadamard of terms with denominators needs a window box")
    s1, s2 = t1.order, t2.order
    M = tuple(tuple(t1.dens[j][i] for j in range(s1)) +
              tuple(-t2.dens[j][i] for j in range(s2))
              for i in range(d))
    rhs = tuple(t2.num[i] - t1.num[i] for i in range(d))
    sol = hnf_solve(M, rhs)
    if sol is None:
        return SRF.zero(d)
    z0, K = sol
    r = len(K)
    coeff = t1.coeff * t2.coeff
    D1 = transpose(t1.dens)  # d x s1
    if r == 0:
        if any(x < 0 for x in z0):
            return SRF.zero(d)
        p = tuple(t1.num[i] + sum(D1[i][j] * z0[j] for j in range(s1))
                  for i in range(d))
        if not window.contains(p):
            return SRF.zero(d)
        return SRF(d, (GFTerm(coeff, p, ()),))
    Kmat = transpose(K)      # (s1+s2) x r
    rows = [tuple(-Kmat[i][j] for j in range(r)) for i in range(s1 + s2)]
    rhs_rows = [z0[i] for i in range(s1 + s2)]
    # exponent map w -> p(w) = t1.num + D1 (z0 + K w)_mu
    Pmat = tuple(tuple(sum(D1[i][l] * Kmat[l][j] for l in range(s1))
                       for j in range(r)) for i in range(d))
    pshift = tuple(t1.num[i] + sum(D1[i][j] * z0[j] for j in range(s1))
                   for i in range(d))
    for i in range(d):
        rows.append(Pmat[i])
        rhs_rows.append(window.upper[i] - pshift[i])
        rows.append(tuple(-x for x in Pmat[i]))
        rhs_rows.append(pshift[i] - window.lower[i])
    aux = Polyhedron(tuple(rows), tuple(rhs_rows), r)
    independent = rank(t1.dens) == s1 and rank(t2.dens) == s2
    gw = gf_of_polytope(aux, assume_bounded=independent)
    if not gw.terms:
        return SRF.zero(d)
    if rank(Pmat) == r:
        return _affine_exponent_map(gw, Pmat, pshift, d).scale(coeff)
    # non-injective exponent map: expand the (small, bounded) aux set and map
    # its points explicitly
    V = vertices(aux)
    lo = tuple(int(min(v[j] for v in V)) - 1 for j in range(r))
    hi = tuple(int(max(v[j] for v in V)) + 1 for j in range(r))
    pts = expand_window(gw, Box(lo, hi))
    acc = {}
    for wpt, c in pts.items():
        p = tuple(pshift[i] + sum(Pmat[i][j] * wpt[j] for j in range(r))
                  for i in range(d))
        acc[p] = acc.get(p, Fraction(0)) + c
    terms = tuple(GFTerm(coeff * c, p, ()) for p, c in sorted(acc.items()) if c)
    return SRF(d, terms)


def hadamard(g1, g2, window=None):
    """Pointwise product of the two expansions (intersection indicator for
    0/1 inputs).  Inputs must already share a normalized orientation.

    `window` is a Box that contains both encoded sets; it bounds every
    auxiliary polyhedron and may only be omitted when at least one side of
    every term pair is a plain monomial.
    """
    if g1.dim != g2.dim:
        raise DimensionMismatch("hadamard inputs differ in dimension")
    if not g1.terms or not g2.terms:
        return SRF.zero(g1.dim)
    dens = [dv for t in g1.terms + g2.terms for dv in t.dens]
    lam = None
    if dens:
        combined = SRF(g1.dim, tuple(g1.terms) + tuple(g2.terms))
        lam = pick_generic_lambda(combined)
        if any(vdot(lam, dv) >= 0 for dv in dens):
            raise NonNormalizedInput(
                "hadamard inputs must be orientation-normalized to a common "
                "generic direction")
    pieces = []
    for t1 in g1.terms:
        for t2 in g2.terms:
            piece = _pair_product(t1, t2, window, lam)
            if piece.terms:
                pieces.append(piece)
    total = SRF.zero(g1.dim)
    for piece in pieces:
        total = total + piece
    return simplify(total)


def intersect(g1, g2, window=None):
    """g(S1 cap S2) for 0/1-coefficient inputs: normalize both sides to a
    common generic direction, then Hadamard."""
    if g1.dim != g2.dim:
        raise DimensionMismatch("intersect inputs differ in dimension")
    if not g1.terms or not g2.terms:
        return SRF.zero(g1.dim)
    combined = SRF(g1.dim, tuple(g1.terms) + tuple(g2.terms))
    if any(t.dens for t in combined.terms):
        lam = pick_generic_lambda(combined)
        g1 = normalize_orientation(g1, lam)
        g2 = normalize_orientation(g2, lam)
    return hadamard(g1, g2, window)


def _validate_subset(g, universe):
    """Debug check: expansion inside a widened universe is 0/1 and contained."""
    coeffs = expand_window(g, universe.widen(1))
    seen = 0
    for p, c in coeffs.items():
        if c != 1 or not universe.contains(p):
            raise UniverseViolation(
                f"input set has coefficient {c} at {p}, outside the declared "
                f"universe or not an indicator")
        seen += 1
        if seen >= 20:
            break


def boolean_combine(sets, expr, universe):
    """Evaluate a Boolean expression tree over SRF-encoded subsets of
    `universe`.

    Tree grammar: an integer leaf indexes `sets`; ("union", l, r),
    ("inter", l, r), ("diff", l, r) and ("comp", child) combine subtrees.
    Uses g(S1 cup S2) = g1 + g2 - g1*g2, g(S1 \\ S2) = g1 - g1*g2, and
    complement against gf_of_box(universe).
    """
    if os.environ.get("MCILP_DEBUG_SETOPS"):
        for g in sets:
            _validate_subset(g, universe)

    def ev(node):
        if isinstance(node, int):
            return sets[node]
        op = node[0]
        if op == "comp":
            return simplify(gf_of_box(universe) - ev(node[1]))
        a = ev(node[1])
        b = ev(node[2])
        if op == "inter":
            return intersect(a, b, universe)
        both = intersect(a, b, universe)
        if op == "union":
            return simplify(a + b - both)
        if op == "diff":
            return simplify(a - both)
        raise ValueError(f"unknown Boolean operator: {op!r}")

    return ev(expr)


def term_stats(g):
    """(term count, max denominator order) for instrumentation."""
    if not g.terms:
        return (0, 0)
    return (len(g.terms), max(t.order for t in g.terms))
