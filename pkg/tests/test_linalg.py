import random
from fractions import Fraction

import pytest

from tautilt.errors import ContractViolation
from tautilt.linalg import (
    Matrix,
    Subspace,
    kernel_basis,
    rref_rank,
    solve_linear,
    subspace_complement,
    subspace_intersection,
    subspace_ops,
    subspace_sum,
)


def M(rows):
    return Matrix.from_rows(rows)


def test_rref_identity():
    red, pivots, rank = rref_rank(Matrix.identity(2))
    assert red == Matrix.identity(2)
    assert pivots == [0, 1]
    assert rank == 2


def test_rref_zero():
    z = Matrix.zeros(3, 3)
    red, pivots, rank = rref_rank(z)
    assert red == z
    assert pivots == []
    assert rank == 0


def test_rref_rank_one():
    # hand elimination: second row is twice the first
    red, pivots, rank = rref_rank(M([[1, 2], [2, 4]]))
    assert red == M([[1, 2], [0, 0]])
    assert rank == 1
    assert pivots == [0]


def test_rref_clears_fractions():
    red, _, rank = rref_rank(M([[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 4), 1]]))
    assert rank == 2
    assert red == Matrix.identity(2)


def test_solve_identity():
    b = M([[3], [5]])
    x, ker = solve_linear(Matrix.identity(2), b)
    assert x == b
    assert ker.is_zero()


def test_solve_underdetermined():
    # x1 + x2 = 2: one particular solution plus a 1-dim kernel
    a = M([[1, 1]])
    b = M([[2]])
    x, ker = solve_linear(a, b)
    assert a @ x == b
    assert ker.dim == 1
    assert ker.contains_vector([-1, 1])


def test_solve_inconsistent():
    a = M([[1], [1]])
    b = M([[0], [1]])
    x, ker = solve_linear(a, b)
    assert x is None
    assert ker.is_zero()


def test_solve_shape_contract():
    with pytest.raises(ContractViolation):
        solve_linear(M([[1, 2]]), M([[1], [2]]))


def test_kernel_identity_and_zero():
    assert kernel_basis(Matrix.identity(3)).is_zero()
    full = kernel_basis(Matrix.zeros(2, 4))
    assert full.dim == 4


def test_kernel_line():
    ker = kernel_basis(M([[1, 2]]))
    assert ker.dim == 1
    assert ker.contains_vector([-2, 1])


def test_zero_by_n_matrices_are_legal():
    a = Matrix(0, 3, [])
    assert kernel_basis(a).is_full()
    b = Matrix(3, 0, [])
    assert (b @ a).rows == 3 and (b @ a).cols == 3
    assert (b @ a).is_zero()


def test_subspace_canonical_equality():
    u = Subspace.from_rows(2, [[-2, 1]])
    v = Subspace.from_rows(2, [[4, -2]])
    assert u == v


def test_subspace_ops_trivial_cases():
    u = Subspace.from_rows(2, [[1, 0]])
    s, i, c = subspace_ops(u, u)
    assert s == u and i == u and c.is_zero()

    v = Subspace.from_rows(2, [[0, 1]])
    s, i, _ = subspace_ops(u, v)
    assert s.is_full()
    assert i.is_zero()


def test_subspace_intersection_planes():
    u = Subspace.from_rows(3, [[1, 0, 0], [0, 1, 0]])
    v = Subspace.from_rows(3, [[0, 1, 0], [0, 0, 1]])
    assert subspace_intersection(u, v) == Subspace.from_rows(3, [[0, 1, 0]])


def test_complement_extends_to_ambient():
    u = Subspace.from_rows(3, [[1, 1, 0]])
    c = subspace_complement(u)
    assert subspace_sum(u, c).is_full()
    assert subspace_intersection(u, c).is_zero()


def test_subspace_ambient_contract():
    with pytest.raises(ContractViolation):
        subspace_sum(Subspace.zero(2), Subspace.zero(3))


def _random_matrix(rng, rows, cols, span=6):
    return Matrix.from_rows(
        [[Fraction(rng.randint(-span, span), rng.choice([1, 1, 2, 3])) for _ in range(cols)] for _ in range(rows)],
        cols=cols,
    )


def test_rank_nullity_seeded():
    rng = random.Random(20240811)
    for _ in range(40):
        rows = rng.randint(0, 5)
        cols = rng.randint(0, 5)
        m = _random_matrix(rng, rows, cols)
        _, _, rank = rref_rank(m)
        assert rank + kernel_basis(m).dim == cols


def test_rref_idempotent_and_canonical():
    rng = random.Random(7)
    for _ in range(25):
        rows, cols = rng.randint(1, 4), rng.randint(1, 5)
        m = _random_matrix(rng, rows, cols)
        red, _, rank = rref_rank(m)
        assert rref_rank(red)[0] == red
        # row-equivalent matrix: shuffle + add multiples of other rows
        lists = red.to_lists()[:rank] or [[0] * cols]
        mixed = [list(r) for r in lists]
        for i in range(len(mixed)):
            j = rng.randrange(len(mixed))
            if i != j:
                c = Fraction(rng.randint(1, 4), rng.randint(1, 3))
                mixed[i] = [a + c * b for a, b in zip(mixed[i], mixed[j])]
        rng.shuffle(mixed)
        assert rref_rank(Matrix.from_rows(mixed, cols=cols))[0] == rref_rank(Matrix.from_rows(lists, cols=cols))[0]


def test_dimension_formula_seeded():
    rng = random.Random(99)
    for _ in range(30):
        n = rng.randint(1, 5)
        u = Subspace.from_rows(n, [[rng.randint(-3, 3) for _ in range(n)] for _ in range(rng.randint(0, n))])
        v = Subspace.from_rows(n, [[rng.randint(-3, 3) for _ in range(n)] for _ in range(rng.randint(0, n))])
        s = subspace_sum(u, v)
        i = subspace_intersection(u, v)
        assert s.dim + i.dim == u.dim + v.dim
        assert s.contains(u) and s.contains(v)
        assert u.contains(i) and v.contains(i)


def test_exactness_no_epsilon():
    a = Fraction(3, 7)
    assert a * (1 / a) == 1
    m = M([[Fraction(1, 3), Fraction(1, 6)], [Fraction(1, 6), Fraction(1, 12)]])
    assert rref_rank(m)[2] == 1
