"""Shared fixtures: a deterministic pool of small random instances.

Every instance is feasible by construction (general rows are anchored at an
interior center) and bounded by explicit box rows, with the feasible box
inside [-6, 6]^n and all matrix entries small.
"""

import random

import pytest

from mcilp.pareto import Problem


def make_random_problem(rng, max_dim=3):
    n = rng.randint(1, max_dim)
    k = rng.randint(1, max_dim)
    lower, upper = [], []
    for _ in range(n):
        lo = rng.randint(-6, 2)
        hi = min(6, lo + rng.randint(0, 5))
        lower.append(lo)
        upper.append(hi)
    rows, rhs = [], []
    for i in range(n):
        e = tuple(1 if j == i else 0 for j in range(n))
        rows.append(e)
        rhs.append(upper[i])
        rows.append(tuple(-x for x in e))
        rhs.append(-lower[i])
    center = tuple(rng.randint(lower[i], upper[i]) for i in range(n))
    for _ in range(rng.randint(0, 2)):
        a = tuple(rng.randint(-5, 5) for _ in range(n))
        if all(x == 0 for x in a):
            continue
        rows.append(a)
        rhs.append(sum(x * c for x, c in zip(a, center)) + rng.randint(0, 8))
    F = tuple(tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(k))
    return Problem(tuple(rows), tuple(rhs), F)


@pytest.fixture(scope="session")
def instance_pool():
    rng = random.Random(20260816)
    return [make_random_problem(rng) for _ in range(100)]
