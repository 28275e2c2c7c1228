"""Generating function construction, specialization, and serialization.

Expected counts come from direct lattice scans done by hand or by the
brute-force helpers below, never from the code under test.
"""

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mcilp.errors import (NonGenericLambda, NonSimplicialCone, ParseError,
                          UnboundedPolyhedron)
from mcilp.genfunc import (Cone, GFTerm, SRF, expand_window, format_srf,
                           gf_of_box, gf_of_polytope, monomial_substitution,
                           normalize_orientation, parse_srf,
                           pick_generic_lambda, product_disjoint,
                           specialize_count, unimodular_decompose,
                           weighted_specialize)
from mcilp.polyhedra import Box, Polyhedron


def brute_count(P, box):
    pts = product(*[range(lo, hi + 1) for lo, hi in zip(box.lower, box.upper)])
    return sum(1 for p in pts if P.contains(p))


def interval_gf(n=3):
    return gf_of_polytope(Polyhedron(((1,), (-1,)), (n, 0), 1))


def e1_polyhedron():
    return Polyhedron(((-1, 0), (0, -1), (1, 0), (0, 1), (-1, -1)),
                      (0, 0, 3, 3, -3), 2)


class TestPolytopeGF:
    def test_interval(self):
        g = interval_gf()
        assert len(g.terms) == 2
        assert specialize_count(g) == 4

    def test_interval_expansion(self):
        g = interval_gf()
        coeffs = expand_window(g, Box((-2,), (5,)))
        assert coeffs == {(0,): 1, (1,): 1, (2,): 1, (3,): 1}

    def test_unit_square(self):
        g = gf_of_polytope(Box((0, 0), (1, 1)).to_polyhedron())
        assert specialize_count(g) == 4
        coeffs = expand_window(g, Box((-1, -1), (2, 2)))
        assert coeffs == {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1}

    def test_triangle(self):
        P = Polyhedron(((-1, 0), (0, -1), (1, 1)), (0, 0, 2), 2)
        g = gf_of_polytope(P)
        assert specialize_count(g) == 6

    def test_e1_feasible_count(self):
        assert specialize_count(gf_of_polytope(e1_polyhedron())) == 10

    def test_empty_polytope(self):
        P = Polyhedron(((1,), (-1,)), (-1, 0), 1)
        g = gf_of_polytope(P)
        assert g.terms == () and specialize_count(g) == 0

    def test_single_point(self):
        P = Box((2, -1), (2, -1)).to_polyhedron()
        g = gf_of_polytope(P)
        assert specialize_count(g) == 1
        assert expand_window(g, Box((0, -3), (4, 1))) == {(2, -1): 1}

    def test_unbounded_raises(self):
        P = Polyhedron(((-1, 0), (0, -1)), (0, 0), 2)
        with pytest.raises(UnboundedPolyhedron):
            gf_of_polytope(P)

    def test_non_unimodular_vertex_cone(self):
        # cone {0 <= u2 <= 2 u1} truncated to the square [0,5]^2: tangent
        # cone at the origin has index 2 and exercises the signed
        # decomposition
        P = Polyhedron(((0, -1), (-2, 1), (1, 0), (0, 1)), (0, 0, 5, 5), 2)
        g = gf_of_polytope(P)
        assert specialize_count(g) == brute_count(P, Box((0, 0), (5, 5)))
        assert specialize_count(g) == 27

    def test_lower_dimensional_segment(self):
        # segment {u1 + u2 = 2, 0 <= u1 <= 2} has 3 lattice points
        P = Polyhedron(((1, 1), (-1, -1), (1, 0), (-1, 0)), (2, -2, 2, 0), 2)
        g = gf_of_polytope(P)
        assert specialize_count(g) == 3
        assert expand_window(g, Box((-1, -1), (3, 3))) == {
            (0, 2): 1, (1, 1): 1, (2, 0): 1}

    def test_lower_dimensional_no_lattice_points(self):
        # 2 u1 + 2 u2 = 1 has no integer solutions at all
        P = Polyhedron(((2, 2), (-2, -2), (1, 0), (-1, 0)), (1, -1, 1, 0), 2)
        assert gf_of_polytope(P).terms == ()

    def test_fractional_vertices_still_exact(self):
        # 2u <= 5, 2u >= 1: lattice points {1, 2}
        P = Polyhedron(((2,), (-2,)), (5, -1), 1)
        g = gf_of_polytope(P)
        assert expand_window(g, Box((-1,), (4,))) == {(1,): 1, (2,): 1}

    def test_expansion_is_zero_one(self):
        P = Polyhedron(((-1, -1), (1, 0), (0, 1), (-1, 1)), (1, 4, 3, 2), 2)
        g = gf_of_polytope(P)
        window = Box((-3, -3), (6, 5))
        coeffs = expand_window(g, window)
        expected = {p: Fraction(1)
                    for p in product(range(-3, 7), range(-3, 6)) if P.contains(p)}
        assert coeffs == expected


class TestBoxGF:
    def test_matches_general_path(self):
        B = Box((-2, 1), (1, 4))
        direct = gf_of_box(B)
        general = gf_of_polytope(B.to_polyhedron())
        assert specialize_count(direct) == specialize_count(general) == 16
        w = B.widen(2)
        assert expand_window(direct, w) == expand_window(general, w)

    def test_degenerate_axis(self):
        B = Box((1, 5), (3, 5))
        g = gf_of_box(B)
        assert specialize_count(g) == 3
        assert all(len(t.dens) <= 1 for t in g.terms)

    def test_term_count(self):
        assert len(gf_of_box(Box((0, 0, 0), (1, 1, 1))).terms) == 8


class TestDecomposition:
    def test_spec_cone(self):
        C = Cone((0, 0), ((1, 0), (1, 2)))
        pieces = unimodular_decompose(C)
        assert all(p.is_unimodular() for p in pieces)
        assert len(pieces) == 2

    def test_signed_count_matches_direct(self):
        # the signed decomposition must reproduce the cone's lattice count
        # once boundaries are resolved by the apex-shift convention, which is
        # exactly what gf_of_polytope does on the truncated cone
        P = Polyhedron(((0, -1), (-2, 1), (1, 0), (0, 1)), (0, 0, 5, 5), 2)
        assert specialize_count(gf_of_polytope(P)) == 27

    def test_non_simplicial_rejected(self):
        with pytest.raises(NonSimplicialCone):
            unimodular_decompose(Cone((0, 0), ((1, 0), (2, 0))))

    def test_index_drops(self):
        C = Cone((0, 0), ((1, 0), (1, 7)))
        for piece in unimodular_decompose(C):
            assert piece.index() == 1

    def test_shallow_for_big_index(self):
        # index 2^8 but only a handful of pieces thanks to short vectors
        C = Cone((0, 0), ((1, 0), (1, 256)))
        pieces = unimodular_decompose(C)
        assert len(pieces) <= 12

    def test_lower_dimensional_cone(self):
        # ray inside a plane embedded in 3-space
        C = Cone((0, 0, 0), ((1, 1, 0),))
        pieces = unimodular_decompose(C)
        assert len(pieces) == 1 and pieces[0].generators == ((1, 1, 0),)


class TestLambdaAndOrientation:
    def test_moment_curve_skips_orthogonal(self):
        g = SRF(2, (GFTerm(1, (0, 0), ((1, -1),)),))
        assert pick_generic_lambda(g) == (1, 2)

    def test_first_candidate_ok(self):
        g = SRF(2, (GFTerm(1, (0, 0), ((-1, 0), (0, -1))),))
        assert pick_generic_lambda(g) == (1, 1)

    def test_orientation_flip_preserves_set(self):
        g = interval_gf()
        lam = (1,)
        h = normalize_orientation(g, lam)
        for t in h.terms:
            assert all(sum(l * x for l, x in zip(lam, d)) < 0 for d in t.dens)
        assert expand_window(h, Box((-2,), (5,))) == expand_window(g, Box((-2,), (5,)))
        assert specialize_count(h) == 4

    def test_orthogonal_lambda_rejected(self):
        g = SRF(2, (GFTerm(1, (0, 0), ((1, -1),)),))
        with pytest.raises(NonGenericLambda):
            normalize_orientation(g, (1, 1))


class TestSpecialization:
    def test_repeated_denominator_pole(self):
        # 1/(1-x)^2 - x^4/(1-x)^2 - 4 x^4/(1-x): coefficients 1..4 on 0..3;
        # weighted check below uses the plain interval instead, this one just
        # exercises order-2 poles in counting
        t1 = GFTerm(1, (0,), ((1,), (1,)))
        t2 = GFTerm(-1, (4,), ((1,), (1,)))
        t3 = GFTerm(-4, (4,), ((1,),))
        g = SRF(1, (t1, t2, t3))
        # sum of coefficients = 1+2+3+4 = 10
        assert sum(expand_window(g, Box((0,), (8,))).values()) == 10

    def test_weighted_sum_monomial_set(self):
        S = SRF.from_points(1, [(0,), (1,), (2,), (3,)])
        f = [(Fraction(1), (1,))]
        assert weighted_specialize(S, f, 1) == 6
        assert weighted_specialize(S, f, 2) == 14

    def test_weighted_sum_via_operator(self):
        g = interval_gf()
        f = [(Fraction(1), (1,))]
        assert weighted_specialize(g, f, 1) == 6
        assert weighted_specialize(g, f, 2) == 14

    def test_weighted_sum_two_dims(self):
        g = gf_of_polytope(e1_polyhedron())
        f = [(Fraction(1), (1, 0)), (Fraction(1), (0, 1))]  # f(u) = u1 + u2
        expected = sum(u1 + u2 for u1 in range(4) for u2 in range(4)
                       if u1 + u2 >= 3)
        assert weighted_specialize(g, f, 1) == expected

    def test_weighted_matches_pareto_example(self):
        S = SRF.from_points(2, [(0, 3), (1, 2), (2, 1), (3, 0)])
        f = [(Fraction(1), (1, 0)), (Fraction(1), (0, 1))]
        assert weighted_specialize(S, f, 1) == 12


class TestSubstitution:
    def test_monomial_graph(self):
        g = SRF(1, (GFTerm(1, (2,), ()),))
        h = monomial_substitution(g, ((3,),))
        assert h.dim == 2 and h.terms[0].num == (2, 6)

    def test_interval_graph(self):
        g = interval_gf()
        h = monomial_substitution(g, ((1,),))
        coeffs = expand_window(h, Box((-1, -1), (4, 4)))
        assert coeffs == {(u, u): 1 for u in range(4)}

    def test_count_preserved(self):
        g = gf_of_polytope(e1_polyhedron())
        h = monomial_substitution(g, ((1, 0), (0, 1)))
        assert specialize_count(h) == specialize_count(g) == 10

    def test_product_disjoint(self):
        a = SRF.from_points(1, [(0,), (1,)])
        b = SRF.from_points(1, [(5,)])
        g = product_disjoint(a, b)
        assert specialize_count(g) == 2
        assert expand_window(g, Box((-1, 4), (2, 6))) == {(0, 5): 1, (1, 5): 1}


class TestSerialization:
    def test_round_trip(self):
        g = gf_of_polytope(e1_polyhedron())
        assert parse_srf(format_srf(g)) == g

    def test_header_shape(self):
        text = format_srf(interval_gf())
        assert text.splitlines()[0] == "dim=1 terms=2"

    def test_monomial_line(self):
        g = SRF.from_points(2, [(1, -2)])
        text = format_srf(g)
        assert "1/1 ; 1,-2 ; " in text
        assert parse_srf(text) == g

    def test_rational_coefficients(self):
        g = SRF(1, (GFTerm(Fraction(-3, 7), (0,), ((2,),)),))
        assert parse_srf(format_srf(g)) == g

    def test_bad_header(self):
        with pytest.raises(ParseError):
            parse_srf("nonsense\n")

    def test_wrong_term_count(self):
        with pytest.raises(ParseError):
            parse_srf("dim=1 terms=2\n1/1 ; 0 ; \n")

    def test_wrong_dimension(self):
        with pytest.raises(ParseError):
            parse_srf("dim=2 terms=1\n1/1 ; 0 ; \n")


@settings(max_examples=60, deadline=None)
@given(lo1=st.integers(-4, 4), w1=st.integers(0, 4),
       lo2=st.integers(-4, 4), w2=st.integers(0, 4))
def test_random_boxes_count_exactly(lo1, w1, lo2, w2):
    B = Box((lo1, lo2), (lo1 + w1, lo2 + w2))
    g = gf_of_polytope(B.to_polyhedron())
    assert specialize_count(g) == B.point_count()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
                min_size=0, max_size=8))
def test_monomial_encoding_round_trip(points):
    g = SRF.from_points(2, points)
    assert specialize_count(g) == len(set(points))
    window = Box((-3, -3), (3, 3))
    assert set(expand_window(g, window)) == set(points)
