"""Selection: exact polyhedral nearest points, ordered distance streams,
linear minimization, and the guaranteed polynomial approximation machinery."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mcilp import oracle
from mcilp.errors import DimensionMismatch, EmptySet, NegativeMoment, ParseError
from mcilp.genfunc import SRF, gf_of_polytope
from mcilp.pareto import pareto_gf
from mcilp.polyhedra import Box, Polyhedron
from mcilp.enumeration import TermOrder
from mcilp.select import (
    OddLp,
    PolyhedralNorm,
    Polynomial,
    PseudoNorm,
    decimal_root_bracket,
    enumerate_by_distance,
    fptas_max_polynomial,
    fptas_nearest_pseudonorm,
    minimize_linear_over_set,
    minkowski_distance,
    nearest_odd_lp,
    nearest_polyhedral,
    parse_norm,
)

E1_FRONT = pareto_gf(oracle.instance_e1().problem)


def linf(y):
    return Fraction(max(abs(x) for x in y))


def l1(y):
    return Fraction(sum(abs(x) for x in y))


# ---------------------------------------------------------------------------
# norms


class TestPolyhedralNorm:
    def test_linf_gauge(self):
        n = parse_norm("linf", 2)
        assert n.distance((3, -5)) == 5
        assert n.distance((0, 0)) == 0

    def test_l1_gauge(self):
        n = parse_norm("l1", 2)
        assert n.distance((3, -5)) == 8

    def test_fractional_ball(self):
        # ball |y| <= 3/2 in 1d: gauge(3) = 2
        n = PolyhedralNorm(((1,), (-1,)), (Fraction(3, 2), Fraction(3, 2)), 1)
        assert n.distance((3,)) == 2
        assert n.offset_lcm == 3  # rows scale to 2y <= 3

    def test_vertex_form_diamond(self):
        n = PolyhedralNorm.from_vertices([(1, 0), (-1, 0), (0, 1), (0, -1)], 2)
        for y in [(1, 1), (2, -3), (0, 5)]:
            assert n.distance(y) == l1(y)

    def test_vertex_form_square(self):
        n = PolyhedralNorm.from_vertices(
            [(1, 1), (1, -1), (-1, 1), (-1, -1)], 2
        )
        for y in [(1, 1), (2, -3), (0, 5)]:
            assert n.distance(y) == linf(y)

    def test_asymmetric_rejected(self):
        with pytest.raises(ValueError):
            PolyhedralNorm(((1, 0), (-1, 0), (0, 1), (0, -1)),
                           (1, 2, 1, 1), 2)

    def test_unbounded_rejected(self):
        with pytest.raises(ValueError):
            PolyhedralNorm(((1, 0), (-1, 0)), (1, 1), 2)

    def test_nonpositive_offset_rejected(self):
        with pytest.raises(ValueError):
            PolyhedralNorm(((1,), (-1,)), (1, 0), 1)

    def test_minkowski_distance_function(self):
        n = parse_norm("linf", 2)
        assert minkowski_distance(n, (3, 1), (1, 0)) == 2


class TestPseudoNorm:
    def test_euclidean_squared(self):
        q = PseudoNorm(2, [(1, (2, 0)), (1, (0, 2))], Fraction(7, 10), 1, 2)
        assert q.value((1, 2)) == 5

    def test_odd_degree_rejected(self):
        with pytest.raises(ValueError):
            PseudoNorm(3, [(1, (3, 0)), (1, (0, 3))], Fraction(1, 2), 1, 2)

    def test_inhomogeneous_rejected(self):
        with pytest.raises(ValueError):
            PseudoNorm(2, [(1, (2, 0)), (1, (0, 1))], Fraction(1, 2), 1, 2)

    def test_bad_alpha_detected_on_grid(self):
        # alpha=1 claims |y|_inf >= q^(1/2); fails at (1,1) where q=2
        with pytest.raises(ValueError):
            PseudoNorm(2, [(1, (2, 0)), (1, (0, 2))], 1, 1, 2)

    def test_negative_form_detected(self):
        with pytest.raises(ValueError):
            PseudoNorm(2, [(1, (2, 0)), (-1, (0, 2))], Fraction(1, 2), 1, 2)


# ---------------------------------------------------------------------------
# exact nearest under polyhedral norms


class TestNearestPolyhedral:
    def test_e1_linf(self):
        pt, d = nearest_polyhedral(E1_FRONT, parse_norm("linf", 2), (0, 0), 10)
        assert (pt, d) == ((1, 2), 2)

    def test_e1_l1(self):
        pt, d = nearest_polyhedral(E1_FRONT, parse_norm("l1", 2), (0, 0), 10)
        assert (pt, d) == ((0, 3), 3)

    def test_tie_break_follows_term_order(self):
        # reversed lex prefers (2,1) over (1,2) among the linf ties
        order = TermOrder(((0, 1), (1, 0)))
        pt, d = nearest_polyhedral(E1_FRONT, parse_norm("linf", 2),
                                   (0, 0), 10, order)
        assert (pt, d) == ((2, 1), 2)

    def test_reference_on_support(self):
        pt, d = nearest_polyhedral(E1_FRONT, parse_norm("linf", 2), (2, 1), 10)
        assert (pt, d) == ((2, 1), 0)

    def test_empty_raises(self):
        with pytest.raises(EmptySet):
            nearest_polyhedral(SRF.zero(2), parse_norm("linf", 2), (0, 0), 5)

    def test_fractional_granularity(self):
        # ball 2y <= 3: distances are multiples of 1/3... offsets lcm = 3
        n = PolyhedralNorm(((2,), (-2,)), (3, 3), 1)
        g = SRF.from_points(1, [(2,), (5,)])
        pt, d = nearest_polyhedral(g, n, (0,), 10)
        assert pt == (2,)
        assert d == Fraction(4, 3)
        assert (d * n.offset_lcm).denominator == 1

    def test_general_encoding_not_just_monomials(self):
        P = Polyhedron(((-1, 0), (0, -1), (1, 1)), (0, 0, 3), 2)
        g = gf_of_polytope(P)
        pt, d = nearest_polyhedral(g, parse_norm("linf", 2), (5, 5), 6)
        opt, od = oracle.oracle_nearest(oracle.enumerate_lattice(P),
                                        linf, (5, 5))
        assert d == od
        assert pt == opt


@settings(max_examples=25, deadline=None)
@given(
    st.sets(st.tuples(st.integers(-6, 6), st.integers(-6, 6)),
            min_size=1, max_size=10),
    st.tuples(st.integers(-4, 4), st.integers(-4, 4)),
    st.sampled_from(["linf", "l1"]),
)
def test_nearest_matches_oracle(pts, vhat, kind):
    g = SRF.from_points(2, sorted(pts))
    norm = parse_norm(kind, 2)
    fn = linf if kind == "linf" else l1
    pt, d = nearest_polyhedral(g, norm, vhat, 8)
    opt, od = oracle.oracle_nearest(sorted(pts), fn, vhat)
    assert d == od
    assert pt == opt  # both tie-break lexicographically


@settings(max_examples=10, deadline=None)
@given(
    st.sets(st.tuples(st.integers(-5, 5), st.integers(-5, 5)),
            min_size=1, max_size=8),
    st.integers(0, 4),
)
def test_random_symmetric_ball_granularity(pts, seed):
    rng = random.Random(1000 + seed)
    rows, rhs = [], []
    for i in range(2):
        e = tuple(1 if j == i else 0 for j in range(2))
        bi = rng.randint(1, 4)
        rows += [e, tuple(-x for x in e)]
        rhs += [bi, bi]
    a = (rng.randint(-3, 3), rng.randint(1, 3))
    bi = rng.randint(1, 5)
    rows += [a, tuple(-x for x in a)]
    rhs += [bi, bi]
    norm = PolyhedralNorm(tuple(rows), tuple(rhs), 2)
    g = SRF.from_points(2, sorted(pts))
    pt, d = nearest_polyhedral(g, norm, (0, 0), 8)
    _, od = oracle.oracle_nearest(sorted(pts), norm, (0, 0))
    assert d == od
    assert (d * norm.offset_lcm).denominator == 1


# ---------------------------------------------------------------------------
# ordered distance streams


class TestEnumerateByDistance:
    def test_e1_linf_order(self):
        got = list(enumerate_by_distance(E1_FRONT, parse_norm("linf", 2),
                                         (0, 0), 10))
        assert got == [((1, 2), 2), ((2, 1), 2), ((0, 3), 3), ((3, 0), 3)]

    def test_distances_nondecreasing_and_exact(self):
        pts = [(0, 0), (2, 2), (-3, 1), (4, -4), (1, 1)]
        g = SRF.from_points(2, sorted(pts))
        n = parse_norm("l1", 2)
        got = list(enumerate_by_distance(g, n, (1, 0), 10))
        assert [p for p, _ in got] != []
        ds = [d for _, d in got]
        assert ds == sorted(ds)
        assert {p for p, _ in got} == set(pts)
        for p, d in got:
            assert d == l1((p[0] - 1, p[1]))

    def test_far_cluster_skips_empty_shells(self):
        # support far from the reference: the stream must still start at the
        # true minimum distance
        g = SRF.from_points(2, [(50, 50), (50, 51)])
        n = parse_norm("linf", 2)
        got = list(enumerate_by_distance(g, n, (0, 0), 60))
        assert got == [((50, 50), 50), ((50, 51), 51)]

    def test_empty_support_finishes(self):
        g = SRF.from_points(1, [])
        assert list(enumerate_by_distance(g, parse_norm("linf", 1), (0,), 5)) == []


# ---------------------------------------------------------------------------
# linear minimization


class TestMinimizeLinear:
    def test_e1_sum(self):
        pt, v = minimize_linear_over_set(E1_FRONT, (1, 1), Box((0, 0), (3, 3)))
        assert (pt, v) == ((0, 3), 3)

    def test_negative_direction(self):
        pt, v = minimize_linear_over_set(E1_FRONT, (-1, 0), Box((0, 0), (3, 3)))
        assert (pt, v) == ((3, 0), -3)

    def test_lex_least_on_ties(self):
        g = SRF.from_points(2, [(0, 2), (1, 1), (2, 0)])
        pt, v = minimize_linear_over_set(g, (1, 1), Box((0, 0), (2, 2)))
        assert (pt, v) == ((0, 2), 2)

    def test_empty_raises(self):
        with pytest.raises(EmptySet):
            minimize_linear_over_set(SRF.zero(2), (1, 0), Box((0, 0), (1, 1)))

    def test_general_encoding(self):
        P = Polyhedron(((-1, 0), (0, -1), (1, 1)), (0, 0, 3), 2)
        pt, v = minimize_linear_over_set(gf_of_polytope(P), (-1, -2),
                                         Box((0, 0), (3, 3)))
        assert v == -6
        assert pt == (0, 3)


# ---------------------------------------------------------------------------
# guaranteed polynomial maximization


class TestFPTASMax:
    def test_window_example(self):
        g = SRF.from_points(1, [(0,), (1,), (2,), (3,)])
        f = Polynomial([(1, (1,))], 1)
        res = fptas_max_polynomial(g, f, Fraction(1, 2), Box((0,), (3,)))
        assert res.point in {(2,), (3,)}
        assert res.value >= Fraction(1, 2) * 3
        assert res.s == 2
        assert res.moment == 14
        assert res.count == 4

    def test_moment_sandwich(self):
        g = SRF.from_points(1, [(0,), (1,), (2,), (3,)])
        f = Polynomial([(1, (1,))], 1)
        res = fptas_max_polynomial(g, f, Fraction(1, 10), Box((0,), (3,)))
        # max^s <= moment <= count * max^s for a nonnegative objective
        assert 3 ** res.s <= res.moment <= res.count * 3 ** res.s

    def test_s_is_minimal(self):
        g = SRF.from_points(1, [(i,) for i in range(10)])
        f = Polynomial([(1, (1,))], 1)
        res = fptas_max_polynomial(g, f, Fraction(1, 10), Box((0,), (9,)))
        eps = Fraction(1, 10)
        assert res.count * (1 - eps) ** res.s <= 1
        if res.s > 1:
            assert res.count * (1 - eps) ** (res.s - 1) > 1

    def test_negative_objective_raises(self):
        g = SRF.from_points(1, [(-2,), (1,)])
        f = Polynomial([(1, (1,))], 1)  # negative at -2
        with pytest.raises(NegativeMoment):
            fptas_max_polynomial(g, f, Fraction(1, 2), Box((-2,), (1,)))

    def test_empty_raises(self):
        with pytest.raises(EmptySet):
            fptas_max_polynomial(SRF.zero(1), Polynomial([(1, (1,))], 1),
                                 Fraction(1, 2), Box((0,), (1,)))

    def test_zero_objective(self):
        g = SRF.from_points(1, [(1,), (2,)])
        f = Polynomial([], 1)
        res = fptas_max_polynomial(g, f, Fraction(1, 2), Box((0,), (3,)))
        assert res.value == 0


@settings(max_examples=25, deadline=None)
@given(
    st.sets(st.tuples(st.integers(-4, 4), st.integers(-4, 4)),
            min_size=1, max_size=9),
    st.sampled_from([Fraction(1, 2), Fraction(1, 10)]),
)
def test_fptas_guarantee_random(pts, eps):
    g = SRF.from_points(2, sorted(pts))
    # f = (x+5)^2 + y^2, strictly positive on the grid
    f = Polynomial([(1, (2, 0)), (10, (1, 0)), (25, (0, 0)), (1, (0, 2))], 2)
    res = fptas_max_polynomial(g, f, eps, Box((-4, -4), (4, 4)))
    true_max = max(f.evaluate(p) for p in pts)
    assert res.value >= (1 - eps) * true_max
    assert res.point in pts
    assert true_max ** res.s <= res.moment


# ---------------------------------------------------------------------------
# pseudo-norm nearest


EUCLID2 = PseudoNorm(2, [(1, (2, 0)), (1, (0, 2))], Fraction(7, 10), 1, 2)


class TestNearestPseudo:
    def test_e1_certificate(self):
        res = fptas_nearest_pseudonorm(E1_FRONT, EUCLID2, (0, 0),
                                       Fraction(1, 10), 10)
        assert res.qvalue == 5
        assert res.point in {(1, 2), (2, 1)}
        assert res.certificate["gamma"] == 2
        assert res.certificate["delta"] == Fraction(20, 7)
        assert res.certificate["eps_prime"] == Fraction(2401, 37995)

    def test_bracket_brackets(self):
        res = fptas_nearest_pseudonorm(E1_FRONT, EUCLID2, (0, 0),
                                       Fraction(1, 10), 10)
        lo, hi = (Fraction(x) for x in res.bracket)
        assert lo ** 2 <= res.qvalue <= hi ** 2
        assert hi - lo <= Fraction(1, 10 ** 40)

    def test_reference_on_support(self):
        res = fptas_nearest_pseudonorm(E1_FRONT, EUCLID2, (1, 2),
                                       Fraction(1, 2), 10)
        assert res.point == (1, 2)
        assert res.qvalue == 0
        assert res.certificate["gamma"] == 0

    def test_empty_raises(self):
        with pytest.raises(EmptySet):
            fptas_nearest_pseudonorm(SRF.zero(2), EUCLID2, (0, 0),
                                     Fraction(1, 2), 5)

    def test_degree_four(self):
        q4 = PseudoNorm(4, [(1, (4, 0)), (1, (0, 4))], Fraction(7, 10), 1, 2)
        res = fptas_nearest_pseudonorm(E1_FRONT, q4, (0, 0), Fraction(1, 10), 10)
        # true minimum of y1^4 + y2^4 over the front is 17 at (1,2)/(2,1)
        assert res.qvalue == 17


@settings(max_examples=20, deadline=None)
@given(
    st.sets(st.tuples(st.integers(-5, 5), st.integers(-5, 5)),
            min_size=1, max_size=8),
    st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
    st.sampled_from([Fraction(1, 2), Fraction(1, 10)]),
)
def test_pseudo_guarantee_random(pts, vhat, eps):
    g = SRF.from_points(2, sorted(pts))
    res = fptas_nearest_pseudonorm(g, EUCLID2, vhat, eps, 8)
    _, qmin = oracle.oracle_nearest(sorted(pts), EUCLID2.value, vhat)
    assert res.point in pts
    assert res.qvalue == EUCLID2.value(tuple(a - b for a, b in zip(res.point, vhat)))
    assert res.qvalue <= (1 + eps) ** 2 * qmin


class TestOddLp:
    def test_e1_cubed(self):
        res = nearest_odd_lp(E1_FRONT, 3, (0, 0), Fraction(1, 10), 10)
        assert res.qvalue == 9
        assert res.point == (1, 2)

    def test_even_p_rejected(self):
        with pytest.raises(ValueError):
            nearest_odd_lp(E1_FRONT, 2, (0, 0), Fraction(1, 2), 10)

    def test_dimension_limit(self):
        g = SRF.from_points(4, [(0, 0, 0, 0)])
        with pytest.raises(DimensionMismatch):
            nearest_odd_lp(g, 3, (1, 1, 1, 1), Fraction(1, 2), 5)

    def test_matches_oracle_small(self):
        pts = [(-3, 2), (1, -1), (4, 4), (0, 3)]
        g = SRF.from_points(2, sorted(pts))
        res = nearest_odd_lp(g, 3, (1, 1), Fraction(1, 10), 8)
        _, qmin = oracle.oracle_nearest(pts, OddLp(3), (1, 1))
        assert res.qvalue <= (1 + Fraction(1, 10)) ** 3 * qmin


# ---------------------------------------------------------------------------
# parsing and brackets


class TestParseNorm:
    def test_poly_ineq(self):
        n = parse_norm("poly-ineq 2 1 1 -1 2 2", 1)
        assert n.distance((4,)) == 2

    def test_poly_ineq_dimension_checked(self):
        with pytest.raises(ParseError):
            parse_norm("poly-ineq 2 1 1 -1 2 2", 2)

    def test_poly_verts(self):
        n = parse_norm("poly-verts 1,0 -1,0 0,1 0,-1", 2)
        assert n.distance((2, 2)) == 4

    def test_pseudo(self):
        n = parse_norm("pseudo 2 1:2,0;1:0,2 7/10 1", 2)
        assert n.value((1, 2)) == 5

    def test_pseudo_bad_constants_rejected(self):
        with pytest.raises(ParseError):
            parse_norm("pseudo 2 1:2,0;1:0,2 1 1", 2)

    def test_lp_odd(self):
        n = parse_norm("lp-odd 3", 2)
        assert n.value((1, -2)) == 9

    def test_lp_odd_even_rejected(self):
        with pytest.raises(ParseError):
            parse_norm("lp-odd 2", 2)

    def test_unknown_kind(self):
        with pytest.raises(ParseError):
            parse_norm("l7", 2)

    def test_token_count_checked(self):
        with pytest.raises(ParseError):
            parse_norm("linf extra", 2)


class TestRootBracket:
    def test_perfect_power_is_tight(self):
        lo, hi = decimal_root_bracket(Fraction(49), 2, 10)
        assert lo == hi == "7.0000000000"

    def test_sqrt2(self):
        lo, hi = decimal_root_bracket(2, 2, 40)
        assert lo.startswith("1.41421356237309504880168872420969807856")
        assert Fraction(lo) ** 2 <= 2 <= Fraction(hi) ** 2

    def test_cube_root(self):
        lo, hi = decimal_root_bracket(Fraction(27, 8), 3, 20)
        assert lo == hi == "1.50000000000000000000"
