"""Nearest-point selection over encoded lattice sets.

Polyhedral norms (unit ball a centrally symmetric rational polytope) admit
exact answers: every gauge value of an integer vector is a multiple of one
over the lcm of the ball offsets, so a binary search over scaled ball radii
finds the exact minimum, and the ordered stream breaks ties.  Pseudo-norms
given by an even-degree form q admit a guaranteed approximation: maximize
the complementary polynomial on a cube certified to contain the true
minimizer via moments of the encoding, with the approximation quality
translated so the final distance is within 1+eps of optimal.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product as iproduct
from math import gcd

from .errors import (
    DimensionMismatch,
    EmptySet,
    NegativeMoment,
    ParseError,
)
from ._linalg import vdot, vsub
from .genfunc import (
    SRF,
    gf_of_box,
    gf_of_polytope,
    specialize_count,
    weighted_specialize,
)
from .polyhedra import Box, Polyhedron
from .setops import intersect, simplify
from .enumeration import TermOrder, enumerate_support

__all__ = [
    "PolyhedralNorm",
    "PseudoNorm",
    "OddLp",
    "Polynomial",
    "minkowski_distance",
    "nearest_polyhedral",
    "enumerate_by_distance",
    "minimize_linear_over_set",
    "fptas_max_polynomial",
    "fptas_nearest_pseudonorm",
    "nearest_odd_lp",
    "decimal_root_bracket",
    "parse_norm",
    "FPTASMax",
    "NearestApprox",
]


# ---------------------------------------------------------------------------
# norms


class PolyhedralNorm:
    """Gauge of a bounded, centrally symmetric rational polytope A y <= b
    with positive offsets (so the origin is interior).

    distance(y) = max(0, max_i <A_i, y> / b_i), exact over the rationals;
    for integer y it is always a multiple of 1 / lcm(b).
    """

    def __init__(self, A, b, dim):
        rows, rhs = [], []
        for row, bi in zip(A, b):
            fr = [Fraction(x) for x in row] + [Fraction(bi)]
            mult = 1
            for x in fr:
                mult = mult * x.denominator // gcd(mult, x.denominator)
            rows.append(tuple(int(x * mult) for x in fr[:-1]))
            rhs.append(int(fr[-1] * mult))
        if any(len(r) != dim for r in rows):
            raise DimensionMismatch("ball row length mismatch")
        if any(x <= 0 for x in rhs):
            raise ValueError("ball offsets must be positive (origin interior)")
        ball = Polyhedron(tuple(rows), tuple(rhs), dim)
        from .polyhedra import is_bounded, vertices
        if not is_bounded(ball):
            raise ValueError("unit ball must be bounded")
        V = set(vertices(ball))
        if {tuple(-x for x in v) for v in V} != V:
            raise ValueError("unit ball must be centrally symmetric")
        self.A = tuple(rows)
        self.b = tuple(rhs)
        self.dim = dim

    @classmethod
    def from_vertices(cls, verts, dim):
        """Ball as the convex hull of a symmetric vertex set: facets are
        recovered from spanning subsets whose affine hull supports the hull."""
        from ._linalg import solve
        verts = [tuple(Fraction(x) for x in v) for v in verts]
        if any(len(v) != dim for v in verts):
            raise DimensionMismatch("vertex length mismatch")
        rows = set()
        from itertools import combinations
        for sub in combinations(verts, dim):
            M = [list(v) for v in sub]
            a = solve(M, [Fraction(1)] * dim)
            if a is None:
                continue
            vals = [vdot(a, v) for v in verts]
            if all(x <= 1 for x in vals):
                mult = 1
                for x in a:
                    mult = mult * x.denominator // gcd(mult, x.denominator)
                rows.add(tuple(int(x * mult) for x in a) + (mult,))
        if not rows:
            raise ValueError("vertex set spans no bounded ball")
        A = tuple(r[:-1] for r in sorted(rows))
        b = tuple(r[-1] for r in sorted(rows))
        return cls(A, b, dim)

    def distance(self, y):
        best = Fraction(0)
        for row, bi in zip(self.A, self.b):
            v = Fraction(vdot(row, y), bi)
            if v > best:
                best = v
        return best

    @property
    def offset_lcm(self):
        return reduce(lambda a, x: a * x // gcd(a, x), self.b, 1)


def minkowski_distance(norm, v, vhat):
    """Gauge distance between two points under a polyhedral norm."""
    return norm.distance(vsub(v, vhat))


class Polynomial:
    """Integer-exponent polynomial as (coefficient, exponents) monomials."""

    def __init__(self, monomials, dim):
        self.monomials = tuple(
            (Fraction(c), tuple(int(e) for e in exps)) for c, exps in monomials
        )
        if any(len(e) != dim for _, e in self.monomials):
            raise DimensionMismatch("monomial exponent length mismatch")
        if any(x < 0 for _, exps in self.monomials for x in exps):
            raise ValueError("exponents must be nonnegative")
        self.dim = dim

    def evaluate(self, point):
        acc = Fraction(0)
        for c, exps in self.monomials:
            term = c
            for x, e in zip(point, exps):
                term *= Fraction(x) ** e
            acc += term
        return acc

    @property
    def degree(self):
        return max((sum(e) for _, e in self.monomials), default=0)


class PseudoNorm:
    """Homogeneous form q of even degree D with cube-comparison constants:

        alpha * q(y)^(1/D)  <=  |y|_inf  <=  beta * q(y)^(1/D)

    for all real y.  The constants are the caller's claim; construction
    spot-checks them exactly on a small integer grid and rejects forms that
    fail there.  value(y) returns q(y); distances are q^(1/D).
    """

    def __init__(self, D, monomials, alpha, beta, dim, _orthant=None):
        D = int(D)
        if D < 1:
            raise ValueError("degree must be positive")
        if D % 2 and _orthant is None:
            raise ValueError("pseudo-norm degree must be even")
        self.D = D
        self.q = Polynomial(monomials, dim)
        if any(sum(exps) != D for _, exps in self.q.monomials):
            raise ValueError("form must be homogeneous of the stated degree")
        self.alpha = Fraction(alpha)
        self.beta = Fraction(beta)
        if not 0 < self.alpha <= self.beta:
            raise ValueError("need 0 < alpha <= beta")
        self.dim = dim
        # spot-check the claimed constants on a small grid restricted to the
        # domain of validity (an orthant for odd-degree internal use)
        if _orthant is None:
            grid = iproduct(range(-2, 3), repeat=dim)
        else:
            grid = (tuple(s * t for s, t in zip(_orthant, y))
                    for y in iproduct(range(0, 3), repeat=dim))
        for y in grid:
            if not any(y):
                continue
            qv = self.q.evaluate(y)
            m = max(abs(x) for x in y)
            if qv < 0:
                raise ValueError(f"form is negative at {y}")
            if self.alpha ** D * qv > Fraction(m) ** D:
                raise ValueError(f"alpha bound fails at {y}")
            if Fraction(m) ** D > self.beta ** D * qv:
                raise ValueError(f"beta bound fails at {y}")

    def value(self, y):
        return self.q.evaluate(y)


@dataclass(frozen=True)
class OddLp:
    """Sum of |y_i|^p for odd p; handled by orthant splitting."""

    p: int

    def value(self, y):
        return Fraction(sum(abs(int(x)) ** self.p for x in y))


# ---------------------------------------------------------------------------
# restricted counting helpers


def _restrict(g, box):
    if g.is_monomial:
        terms = tuple(
            t for t in g.terms
            if all(l <= x <= h for l, x, h in zip(box.lower, t.num, box.upper))
        )
        return SRF(g.dim, terms)
    return intersect(g, gf_of_box(box), box)


def _count_in_polytope(g, P, box):
    if g.is_monomial:
        n = 0
        for t in g.terms:
            if all(l <= x <= h for l, x, h in zip(box.lower, t.num, box.upper)) \
                    and all(vdot(row, t.num) <= bi for row, bi in zip(P.A, P.b)):
                n += int(t.coeff)
        return n
    gp = gf_of_polytope(P, assume_bounded=True)
    return specialize_count(intersect(g, gp, box))


def _ball_polytope(norm, vhat, n, L, M, dim):
    rows, rhs = [], []
    for i in range(dim):
        e = tuple(1 if j == i else 0 for j in range(dim))
        rows.append(e)
        rhs.append(M)
        rows.append(tuple(-x for x in e))
        rhs.append(M)
    for row, bi in zip(norm.A, norm.b):
        # gauge(v - vhat) <= n/L, scaled to integer data
        rows.append(tuple(L * x for x in row))
        rhs.append(n * bi + L * vdot(row, vhat))
    return Polyhedron(tuple(rows), tuple(rhs), dim)


# ---------------------------------------------------------------------------
# exact selection under polyhedral norms


def _check_vhat(vhat, dim):
    vhat = tuple(int(x) for x in vhat)
    if len(vhat) != dim:
        raise DimensionMismatch("reference point length mismatch")
    return vhat


def nearest_polyhedral(g, norm, vhat, M, order=None):
    """Exact nearest support point to vhat under a polyhedral norm.

    Binary search over ball radii in steps of 1/lcm(b); the tied nearest
    points are resolved to the least under the term order (lexicographic by
    default).  Returns (point, exact distance).
    """
    dim = g.dim
    vhat = _check_vhat(vhat, dim)
    if norm.dim != dim:
        raise DimensionMismatch("norm dimension mismatch")
    L = norm.offset_lcm
    box = Box((-M,) * dim, (M,) * dim)
    a = max(abs(x) for row in norm.A for x in row)
    n_hi = L * dim * a * (M + max((abs(x) for x in vhat), default=0))

    def ball_count(n):
        return _count_in_polytope(g, _ball_polytope(norm, vhat, n, L, M, dim), box)

    if ball_count(n_hi) == 0:
        raise EmptySet("no support point within the search box")
    lo, hi = 0, n_hi
    while lo < hi:
        mid = (lo + hi) // 2
        if ball_count(mid) > 0:
            hi = mid
        else:
            lo = mid + 1
    ball = gf_of_polytope(_ball_polytope(norm, vhat, lo, L, M, dim),
                          assume_bounded=True)
    onball = intersect(g, ball, box)
    order = order or TermOrder.lex(dim)
    point = next(enumerate_support(onball, order, M))
    return point, Fraction(lo, L)


def enumerate_by_distance(g, norm, vhat, M, order=None):
    """Yield (point, exact distance) in nondecreasing distance, ties in term
    order.  Consecutive occupied radii are found by binary search on the
    ball count, so runs of empty shells cost log, not linear, time."""
    dim = g.dim
    vhat = _check_vhat(vhat, dim)
    L = norm.offset_lcm
    box = Box((-M,) * dim, (M,) * dim)
    order = order or TermOrder.lex(dim)
    a = max(abs(x) for row in norm.A for x in row)
    n_hi = L * dim * a * (M + max((abs(x) for x in vhat), default=0))

    def ball_gf(n):
        return gf_of_polytope(_ball_polytope(norm, vhat, n, L, M, dim),
                              assume_bounded=True)

    def ball_count(n):
        return _count_in_polytope(g, _ball_polytope(norm, vhat, n, L, M, dim), box)

    total = specialize_count(_restrict(g, box))
    emitted = 0
    prev_n = -1
    prev_gf = SRF.zero(dim)
    while emitted < total:
        target = ball_count(n_hi)
        if target <= emitted:
            return
        lo, hi = prev_n + 1, n_hi
        while lo < hi:
            mid = (lo + hi) // 2
            if ball_count(mid) > emitted:
                hi = mid
            else:
                lo = mid + 1
        shell_ball = intersect(g, ball_gf(lo), box)
        shell = simplify(shell_ball + prev_gf.scale(-1))
        d = Fraction(lo, L)
        for p in enumerate_support(shell, order, M):
            emitted += 1
            yield p, d
        prev_n = lo
        prev_gf = shell_ball


def minimize_linear_over_set(g, c, box):
    """Exact minimum of <c, x> over the support within box, with the
    lexicographically least minimizer.  Returns (point, value)."""
    dim = g.dim
    c = tuple(int(x) for x in c)
    if len(c) != dim:
        raise DimensionMismatch("objective length mismatch")
    gbox = _restrict(g, box)
    if specialize_count(gbox) == 0:
        raise EmptySet("no support point within the box")
    lo = sum(min(ci * l, ci * h) for ci, l, h in zip(c, box.lower, box.upper))
    hi = sum(max(ci * l, ci * h) for ci, l, h in zip(c, box.lower, box.upper))
    M = max(max(abs(x) for x in box.lower), max(abs(x) for x in box.upper))

    def level_polytope(theta, equality):
        rows, rhs = [], []
        for i in range(dim):
            e = tuple(1 if j == i else 0 for j in range(dim))
            rows.append(e)
            rhs.append(box.upper[i])
            rows.append(tuple(-x for x in e))
            rhs.append(-box.lower[i])
        rows.append(c)
        rhs.append(theta)
        if equality:
            rows.append(tuple(-x for x in c))
            rhs.append(-theta)
        return Polyhedron(tuple(rows), tuple(rhs), dim)

    def nonempty(theta):
        return _count_in_polytope(g, level_polytope(theta, False), box) > 0

    while lo < hi:
        mid = (lo + hi) // 2
        if nonempty(mid):
            hi = mid
        else:
            lo = mid + 1
    level = gf_of_polytope(level_polytope(lo, True), assume_bounded=True)
    onlevel = intersect(g, level, box)
    point = next(enumerate_support(onlevel, TermOrder.lex(dim), M))
    return point, lo


# ---------------------------------------------------------------------------
# guaranteed approximation for polynomial objectives


class FPTASMax(tuple):
    """Witness point with its exact value and the moment certificate."""

    def __new__(cls, point, value, s, moment, count):
        self = super().__new__(cls, (point, value, s, moment, count))
        self.point, self.value, self.s, self.moment, self.count = \
            point, value, s, moment, count
        return self


def _moment_order(count, eps):
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("eps must be in (0, 1)")
    s = 1
    acc = Fraction(count) * (1 - eps)
    while acc > 1:
        s += 1
        acc *= 1 - eps
    return s


def fptas_max_polynomial(g, f, eps, box):
    """Maximize a nonnegative polynomial over the support within box with a
    multiplicative 1-eps guarantee.

    The s-th moment of f against the counting measure pins max f between
    (moment/count)^(1/s) and moment^(1/s) once count*(1-eps)^s <= 1.  The
    witness is found by box bisection, always keeping a half whose average
    s-th power is at least the parent's, so the surviving singleton beats
    the global average.  Negative moments mean f was negative somewhere on
    the support; that is the caller's contract violation and raises."""
    gbox = _restrict(g, box)
    count = specialize_count(gbox)
    if count == 0:
        raise EmptySet("no support point within the box")
    s = _moment_order(count, eps)
    moment = weighted_specialize(gbox, f, s)
    if moment < 0:
        raise NegativeMoment("negative moment: objective negative on support")

    cur_box, cur_gf, cur_count = box, gbox, count
    while cur_count > 1:
        axis = max(range(cur_box.dim),
                   key=lambda i: cur_box.upper[i] - cur_box.lower[i])
        lo, hi = cur_box.lower[axis], cur_box.upper[axis]
        mid = (lo + hi) // 2
        b1 = Box(cur_box.lower,
                 cur_box.upper[:axis] + (mid,) + cur_box.upper[axis + 1:])
        b2 = Box(cur_box.lower[:axis] + (mid + 1,) + cur_box.lower[axis + 1:],
                 cur_box.upper)
        g1 = _restrict(cur_gf, b1)
        g2 = _restrict(cur_gf, b2)
        c1, c2 = specialize_count(g1), specialize_count(g2)
        if c1 == 0:
            choice = (b2, g2, c2)
        elif c2 == 0:
            choice = (b1, g1, c1)
        else:
            m1 = weighted_specialize(g1, f, s)
            m2 = weighted_specialize(g2, f, s)
            # compare averages m1/c1 vs m2/c2 exactly
            choice = (b1, g1, c1) if m1 * c2 >= m2 * c1 else (b2, g2, c2)
        cur_box, cur_gf, cur_count = choice
    if cur_gf.is_monomial:
        point = next(t.num for t in cur_gf.terms if t.coeff)
    else:
        Mloc = max(abs(x) for x in cur_box.lower + cur_box.upper) or 1
        point = next(enumerate_support(cur_gf, TermOrder.lex(g.dim), Mloc))
    if hasattr(f, "evaluate"):
        value = f.evaluate(point)
    else:
        value = Polynomial(f, g.dim).evaluate(point)
    return FPTASMax(tuple(point), value, s, moment, count)


# ---------------------------------------------------------------------------
# pseudo-norm nearest point


class NearestApprox(tuple):
    """Approximate nearest point: exact form value, a decimal bracket of the
    actual distance, and the certificate that sized the search."""

    def __new__(cls, point, qvalue, bracket, certificate):
        self = super().__new__(cls, (point, qvalue, bracket, certificate))
        self.point, self.qvalue, self.bracket, self.certificate = \
            point, qvalue, bracket, certificate
        return self


def _int_nth_root(x, D):
    if x < 0:
        raise ValueError("negative radicand")
    if x == 0:
        return 0
    r = 1 << ((x.bit_length() + D - 1) // D)
    while True:
        nr = ((D - 1) * r + x // r ** (D - 1)) // D
        if nr >= r:
            break
        r = nr
    while r ** D > x:
        r -= 1
    while (r + 1) ** D <= x:
        r += 1
    return r


def decimal_root_bracket(q, D, digits=40):
    """Decimal strings lo <= q^(1/D) <= hi agreeing to `digits` places."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative radicand")
    scale = 10 ** digits
    N = q.numerator * scale ** D
    r = _int_nth_root(N // q.denominator, D)
    if (r + 1) ** D * q.denominator <= N:
        r += 1
    exact = r ** D * q.denominator == N

    def fmt(x):
        return f"{x // scale}.{x % scale:0{digits}d}"

    return fmt(r), fmt(r if exact else r + 1)


def _shifted_form_polynomial(pseudo, vhat, C):
    """Expand C - q(v - vhat) into monomials in v."""
    from math import comb
    dim = pseudo.dim
    acc = {(0,) * dim: Fraction(C)}
    for c, exps in pseudo.q.monomials:
        # expand prod_i (v_i - vhat_i)^{e_i}
        parts = [{(0,) * dim: Fraction(1)}]
        cur = {(0,) * dim: Fraction(1)}
        for i, e in enumerate(exps):
            new = {}
            for mono, coef in cur.items():
                for t in range(e + 1):
                    mexp = list(mono)
                    mexp[i] += t
                    w = coef * comb(e, t) * Fraction(-vhat[i]) ** (e - t)
                    key = tuple(mexp)
                    new[key] = new.get(key, Fraction(0)) + w
            cur = new
        for mono, coef in cur.items():
            acc[mono] = acc.get(mono, Fraction(0)) - c * coef
    return Polynomial([(v, k) for k, v in acc.items() if v], dim)


def fptas_nearest_pseudonorm(g, pseudo, vhat, eps, M, order=None):
    """Nearest support point to vhat under a pseudo-norm, within 1+eps.

    A cube search finds the smallest integer radius gamma holding a support
    point; the comparison constants blow it up to a cube certain to contain
    the true minimizer and bound the form there, turning the problem into a
    nonnegative-polynomial maximization handled by the moment method with a
    translated accuracy eps'.  Returns the point, the exact form value, a
    40-digit bracket of the distance, and the certificate."""
    dim = g.dim
    vhat = _check_vhat(vhat, dim)
    if pseudo.dim != dim:
        raise DimensionMismatch("pseudo-norm dimension mismatch")
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    box = Box((-M,) * dim, (M,) * dim)

    def cube(radius):
        lo = tuple(max(v - radius, -M) for v in vhat)
        hi = tuple(min(v + radius, M) for v in vhat)
        if any(l > h for l, h in zip(lo, hi)):
            return None
        return Box(lo, hi)

    def cube_count(radius):
        b = cube(radius)
        return 0 if b is None else specialize_count(_restrict(g, b))

    r_hi = M + max((abs(x) for x in vhat), default=0)
    if cube_count(r_hi) == 0:
        raise EmptySet("no support point within the search box")
    lo, hi = 0, r_hi
    while lo < hi:
        mid = (lo + hi) // 2
        if cube_count(mid) > 0:
            hi = mid
        else:
            lo = mid + 1
    gamma = lo
    D = pseudo.D
    alpha, beta = pseudo.alpha, pseudo.beta
    if gamma == 0:
        cert = {"gamma": 0, "delta": Fraction(0), "s": 0,
                "eps_prime": Fraction(0), "moment": Fraction(0), "count": 1}
        return NearestApprox(vhat, Fraction(0),
                             decimal_root_bracket(0, D), cert)
    delta = beta * gamma / alpha
    C = (beta * gamma / alpha ** 2) ** D
    ratio = (beta / alpha) ** (2 * D)
    if ratio <= 1:
        eps_prime = Fraction(1, 2)
    else:
        eps_prime = eps * D / (ratio - 1)
        if eps_prime >= 1:
            eps_prime = Fraction(1, 2)
    search = cube(int(delta))
    fpoly = _shifted_form_polynomial(pseudo, vhat, C)
    res = fptas_max_polynomial(g, fpoly, eps_prime, search)
    qvalue = C - res.value
    cert = {"gamma": gamma, "delta": delta, "s": res.s,
            "eps_prime": eps_prime, "moment": res.moment, "count": res.count}
    return NearestApprox(tuple(res.point), qvalue,
                         decimal_root_bracket(qvalue, D), cert)


def nearest_odd_lp(g, p, vhat, eps, M):
    """Approximate nearest point in the l_p pseudo-distance for odd p.

    Odd powers are not a form on all of space, but on each closed orthant
    around vhat the signed form sum (sigma_i y_i)^p agrees with sum |y_i|^p
    and is nonnegative, so each of the 2^dim orthant restrictions runs the
    even-degree machinery with relaxed cube constants (alpha 1/2 is safe up
    to dimension 3).  Candidates are compared by exact form value, then
    lexicographically."""
    dim = g.dim
    if p < 1 or p % 2 == 0:
        raise ValueError("p must be odd and positive")
    if dim > 3:
        raise DimensionMismatch("orthant constants certified up to dim 3")
    vhat = _check_vhat(vhat, dim)
    best = None
    for signs in iproduct((1, -1), repeat=dim):
        monos = []
        for i in range(dim):
            exps = tuple(p if j == i else 0 for j in range(dim))
            monos.append((Fraction(signs[i]) ** p, exps))
        pseudo = PseudoNorm(p, monos, Fraction(1, 2), 1, dim, _orthant=signs)
        lo = tuple(vhat[i] if signs[i] > 0 else -M for i in range(dim))
        hi = tuple(M if signs[i] > 0 else vhat[i] for i in range(dim))
        if any(l > h for l, h in zip(lo, hi)):
            continue
        orthant = _restrict(g, Box(lo, hi))
        if specialize_count(orthant) == 0:
            continue
        try:
            res = fptas_nearest_pseudonorm(orthant, pseudo, vhat, eps, M)
        except EmptySet:
            continue
        key = (res.qvalue, res.point)
        if best is None or key < (best.qvalue, best.point):
            best = res
    if best is None:
        raise EmptySet("no support point within the search box")
    return best


# ---------------------------------------------------------------------------
# norm specifications


def _parse_fraction(tok):
    try:
        if "/" in tok:
            a, b = tok.split("/")
            return Fraction(int(a), int(b))
        return Fraction(int(tok))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {tok!r}") from None


def parse_norm(spec, dim):
    """Parse a norm specification:

        linf
        l1
        poly-ineq <m> <k> <m*k entries> <m offsets>
        poly-verts <x,y> <x,y> ...
        pseudo <D> <c:e,e;c:e,e> <alpha> <beta>
        lp-odd <p>
    """
    toks = spec.split()
    if not toks:
        raise ParseError("empty norm specification")
    kind = toks[0]
    if kind == "linf":
        if len(toks) != 1:
            raise ParseError("linf takes no arguments")
        rows = []
        for i in range(dim):
            e = tuple(1 if j == i else 0 for j in range(dim))
            rows += [e, tuple(-x for x in e)]
        return PolyhedralNorm(tuple(rows), (1,) * (2 * dim), dim)
    if kind == "l1":
        if len(toks) != 1:
            raise ParseError("l1 takes no arguments")
        rows = tuple(iproduct((1, -1), repeat=dim))
        return PolyhedralNorm(rows, (1,) * len(rows), dim)
    if kind == "poly-ineq":
        try:
            m, k = int(toks[1]), int(toks[2])
        except (IndexError, ValueError):
            raise ParseError("poly-ineq needs row and column counts") from None
        if k != dim:
            raise ParseError(f"ball dimension {k} does not match set dimension {dim}")
        need = 3 + m * k + m
        if len(toks) != need:
            raise ParseError(f"poly-ineq expects {need} tokens, got {len(toks)}")
        entries = [_parse_fraction(t) for t in toks[3:3 + m * k]]
        offsets = [_parse_fraction(t) for t in toks[3 + m * k:]]
        A = tuple(tuple(entries[i * k:(i + 1) * k]) for i in range(m))
        return PolyhedralNorm(A, tuple(offsets), dim)
    if kind == "poly-verts":
        verts = []
        for t in toks[1:]:
            parts = t.split(",")
            if len(parts) != dim:
                raise ParseError(f"vertex {t!r} has wrong dimension")
            verts.append(tuple(_parse_fraction(x) for x in parts))
        if not verts:
            raise ParseError("poly-verts needs at least one vertex")
        return PolyhedralNorm.from_vertices(verts, dim)
    if kind == "pseudo":
        if len(toks) != 5:
            raise ParseError("pseudo expects: pseudo D monomials alpha beta")
        D = int(toks[1]) if toks[1].isdigit() else None
        if D is None:
            raise ParseError(f"bad degree {toks[1]!r}")
        monos = []
        for part in toks[2].split(";"):
            try:
                c, exps = part.split(":")
            except ValueError:
                raise ParseError(f"bad monomial {part!r}") from None
            exps = tuple(int(x) for x in exps.split(","))
            if len(exps) != dim:
                raise ParseError(f"monomial {part!r} has wrong dimension")
            monos.append((_parse_fraction(c), exps))
        alpha = _parse_fraction(toks[3])
        beta = _parse_fraction(toks[4])
        try:
            return PseudoNorm(D, monos, alpha, beta, dim)
        except ValueError as e:
            raise ParseError(str(e)) from None
    if kind == "lp-odd":
        if len(toks) != 2:
            raise ParseError("lp-odd expects one exponent")
        try:
            p = int(toks[1])
        except ValueError:
            raise ParseError(f"bad exponent {toks[1]!r}") from None
        if p < 1 or p % 2 == 0:
            raise ParseError("lp-odd exponent must be odd and positive")
        return OddLp(p)
    raise ParseError(f"unknown norm kind {kind!r}")
