"""Shared construction helpers for the test suite."""

import random
from fractions import Fraction

from tautilt.linalg import Matrix, solve_linear
from tautilt.rep import Representation


def R(algebra, dims, **maps):
    """Build a representation from row-lists keyed by arrow name."""
    built = {}
    for name, rows in maps.items():
        arrow = algebra.quiver.arrows[algebra.quiver.arrow_index(name)]
        built[name] = Matrix.from_rows(rows, cols=dims[arrow.source - 1])
    return Representation(algebra, dims, built)


def random_invertible(rng, n):
    while True:
        m = Matrix.from_rows(
            [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)], cols=n
        )
        if n == 0 or m.rank() == n:
            return m


def conjugate(m, seed=0):
    """A representation isomorphic to m via a seeded random change of basis."""
    rng = random.Random(seed)
    mats = [random_invertible(rng, d) for d in m.dims]
    inverses = [solve_linear(p, Matrix.identity(p.rows))[0] for p in mats]
    maps = {}
    for arrow in m.algebra.quiver.arrows:
        s, t = arrow.source - 1, arrow.target - 1
        maps[arrow.name] = mats[t] @ m.arrow_maps[arrow.name] @ inverses[s]
    return Representation(m.algebra, m.dims, maps)


def skewed_121(algebra):
    """The indecomposable with dimension vector 121 over the skewed triangle."""
    return R(algebra, (1, 2, 1), a=[[1], [0]], b=[[0, 1]], c=[[1]])


def skewed_101(algebra):
    return R(algebra, (1, 0, 1), c=[[1]])
