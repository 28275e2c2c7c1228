"""Ground-truth scanners: these are the answers everything else must match."""

import pytest
from fractions import Fraction

from mcilp import oracle
from mcilp.errors import EmptySet, TooLarge
from mcilp.polyhedra import Box, Polyhedron


def test_enumerate_triangle():
    P = Polyhedron(((-1, 0), (0, -1), (1, 1)), (0, 0, 2), 2)
    pts = oracle.enumerate_lattice(P)
    assert pts == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]


def test_enumerate_empty():
    P = Polyhedron(((1,), (-1,)), (0, -1), 1)
    assert oracle.enumerate_lattice(P) == []


def test_enumerate_is_lex_sorted():
    P = Polyhedron(((-1, 0), (0, -1), (1, 0), (0, 1)), (1, 1, 2, 2), 2)
    pts = oracle.enumerate_lattice(P)
    assert pts == sorted(pts)
    assert len(pts) == 16


def test_scan_guard():
    P = Polyhedron(
        ((-1, 0, 0), (0, -1, 0), (0, 0, -1), (1, 0, 0), (0, 1, 0), (0, 0, 1)),
        (0, 0, 0, 200, 200, 200),
        3,
    )
    with pytest.raises(TooLarge):
        oracle.enumerate_lattice(P)


def test_filter_drops_dominated():
    pts = [(0, 3), (1, 2), (2, 1), (3, 0), (2, 2), (3, 3), (1, 2)]
    assert oracle.pareto_filter(pts) == [(0, 3), (1, 2), (2, 1), (3, 0)]


def test_filter_keeps_duplicates_once():
    assert oracle.pareto_filter([(1, 1), (1, 1)]) == [(1, 1)]


def test_filter_single_criterion():
    assert oracle.pareto_filter([(4,), (2,), (7,)]) == [(2,)]


def test_nearest_l1_with_tie():
    def l1(v):
        return sum(abs(x) for x in v)

    # (0,1) and (1,0) tie at distance 1; lex picks (0,1)
    pt, d = oracle.oracle_nearest([(1, 0), (0, 1), (2, 2)], l1, (0, 0))
    assert pt == (0, 1)
    assert d == 1


def test_nearest_empty_raises():
    with pytest.raises(EmptySet):
        oracle.oracle_nearest([], lambda v: 0, (0,))


def test_nearest_exact_fractions():
    pt, d = oracle.oracle_nearest(
        [(3,), (10,)], lambda v: Fraction(abs(v[0]), 7), (0,)
    )
    assert d == Fraction(3, 7)


class TestE1:
    inst = oracle.instance_e1()

    def test_feasible_count(self):
        assert len(self.inst.feasible_points()) == 10

    def test_pareto(self):
        assert self.inst.pareto_set() == [(0, 3), (1, 2), (2, 1), (3, 0)]

    def test_strategies(self):
        assert self.inst.strategy_set() == [(0, 3), (1, 2), (2, 1), (3, 0)]

    def test_ideal(self):
        assert self.inst.ideal_point() == (0, 0)

    def test_dominated_box(self):
        dom = self.inst.dominated_within(Box((0, 0), (3, 3)))
        assert len(dom) == 10
        assert (0, 0) not in dom
        assert (3, 3) in dom


class TestE2:
    inst = oracle.instance_e2()

    def test_feasible_count(self):
        assert len(self.inst.feasible_points()) == 16

    def test_pareto(self):
        assert self.inst.pareto_set() == [(0, 0), (1, -1), (2, -2), (3, -3)]

    def test_strategies(self):
        assert self.inst.strategy_set() == [(0, 0), (0, 1), (0, 2), (0, 3)]

    def test_ideal(self):
        assert self.inst.ideal_point() == (0, -3)
