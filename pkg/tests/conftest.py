import random
from fractions import Fraction

import pytest

from vcsndp.instance import Instance, pair


def random_graph(n, edge_prob, rng, cost_lo=1, cost_hi=9):
    edges = [
        (u, v, Fraction(rng.randint(cost_lo, cost_hi)))
        for u in range(n) for v in range(u + 1, n)
        if rng.random() < edge_prob
    ]
    return Instance(n=n, edges=tuple(edges))


def triangle(r=2):
    """Unit-cost triangle on {0,1,2}; requirement r(0,1)=r."""
    return Instance(
        3, ((0, 1, Fraction(1)), (0, 2, Fraction(1)), (2, 1, Fraction(1))),
        {pair(0, 1): r})


def c4(r=2):
    """Unit-cost 4-cycle with the opposite pair (0,2) required."""
    return Instance(
        4, ((0, 1, Fraction(1)), (1, 2, Fraction(1)),
            (2, 3, Fraction(1)), (3, 0, Fraction(1))),
        {pair(0, 2): r})


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
