"""Dense exact linear algebra over the rational-function field."""

import itertools
from fractions import Fraction
from random import Random

import pytest

from involution_forge import (
    Degenerate,
    DimensionMismatch,
    Inconsistent,
    RationalFunction,
    VarTable,
    sample_point,
)
from involution_forge.linalg import (
    det,
    identity,
    invert,
    mat_mul,
    mat_vec,
    nullspace,
    rank_at_point,
    rref,
    solve_linear,
)
from helpers import random_polynomial


@pytest.fixture(scope="module")
def table():
    return VarTable.build(["x1", "x2", "x3"])


# entry sparsity matters a great deal here: exact elimination over the
# rational-function field reduces through multivariate gcds, so the dense
# multi-term cases stay tiny while the larger shapes use monomial entries
def random_matrix(table, rng, n, m=None, terms=1):
    m = n if m is None else m
    return [[random_polynomial(table, rng, terms=terms, degree=1, bound=3)
             for _ in range(m)] for _ in range(n)]


def det_by_permutation_expansion(rows, table):
    n = len(rows)
    total = RationalFunction.zero(table)
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n)
                         if perm[i] > perm[j])
        term = RationalFunction.constant(table,
                                         Fraction((-1) ** inversions))
        for i in range(n):
            term = term * rows[i][perm[i]]
        total = total + term
    return total


def test_det_matches_permutation_expansion(table):
    rng = Random(31)
    for n, terms, draws in ((2, 2, 6), (3, 2, 3), (4, 1, 4)):
        for _ in range(draws):
            rows = random_matrix(table, rng, n, terms=terms)
            assert det(rows, table) == det_by_permutation_expansion(
                rows, table)


def test_det_is_multiplicative(table):
    rng = Random(33)
    for n, terms, draws in ((2, 2, 4), (3, 1, 4)):
        for _ in range(draws):
            a = random_matrix(table, rng, n, terms=terms)
            b = random_matrix(table, rng, n, terms=terms)
            assert det(mat_mul(a, b), table) == det(a, table) * det(b, table)


def test_det_alternates_under_row_swap(table):
    rng = Random(35)
    rows = random_matrix(table, rng, 3)
    swapped = [rows[1], rows[0], rows[2]]
    assert det(swapped, table) == -det(rows, table)


def test_det_requires_square(table):
    one = RationalFunction.one(table)
    with pytest.raises(DimensionMismatch):
        det([[one, one]], table)


def test_invert_round_trip(table):
    rng = Random(37)
    done = 0
    while done < 6:
        rows = random_matrix(table, rng, 3)
        if det(rows, table).is_zero():
            continue
        inv = invert(rows, table)
        assert mat_mul(rows, inv) == identity(table, 3)
        assert mat_mul(inv, rows) == identity(table, 3)
        done += 1


def test_invert_rejects_singular(table):
    x1 = random_polynomial(table, Random(39), terms=1, degree=1, bound=2)
    rows = [[x1, x1], [x1, x1]]
    with pytest.raises(Degenerate):
        invert(rows, table)


def test_rref_shape_and_idempotence(table):
    rng = Random(41)
    for _ in range(8):
        rows = random_matrix(table, rng, 3, 4)
        reduced, pivots = rref(rows)
        again, pivots2 = rref(reduced)
        assert again == reduced
        assert pivots == pivots2
        one = RationalFunction.one(table)
        for row_index, col in enumerate(pivots):
            assert reduced[row_index][col] == one
            for other in range(len(reduced)):
                if other != row_index:
                    assert reduced[other][col].is_zero()


def test_nullspace_vectors_annihilate(table):
    rng = Random(43)
    for _ in range(8):
        rows = random_matrix(table, rng, 2, 4)
        basis = nullspace(rows, table, width=4)
        _, pivots = rref([row[:] for row in rows])
        assert len(basis) == 4 - len(pivots)
        zero = RationalFunction.zero(table)
        for vec in basis:
            image = mat_vec(rows, vec)
            assert all(entry == zero for entry in image)


def test_solve_linear_particular_and_kernel(table):
    rng = Random(47)
    one = RationalFunction.one(table)
    x1 = random_polynomial(table, rng, terms=1, degree=1, bound=1)
    particular, kernel, free = solve_linear([[one, one]], [x1], table)
    assert mat_vec([[one, one]], particular) == [x1]
    for vec in kernel:
        assert all(e.is_zero() for e in mat_vec([[one, one]], vec))
    assert free == [1]


def test_solve_linear_full_rank_unique(table):
    rng = Random(49)
    done = 0
    while done < 5:
        rows = random_matrix(table, rng, 3)
        if det(rows, table).is_zero():
            continue
        rhs = [random_polynomial(table, rng, terms=2, degree=1, bound=3)
               for _ in range(3)]
        particular, kernel, free = solve_linear(rows, rhs, table)
        assert mat_vec(rows, particular) == rhs
        assert kernel == []
        assert free == []
        done += 1


def test_solve_linear_inconsistent(table):
    one = RationalFunction.one(table)
    zero = RationalFunction.zero(table)
    with pytest.raises(Inconsistent):
        solve_linear([[one, one], [one, one]], [one, zero], table)


def test_rank_at_point_agrees_with_det(table):
    rng = Random(53)
    for _ in range(10):
        rows = random_matrix(table, rng, 3)
        d = det(rows, table)
        point = sample_point(table, [d] if not d.is_zero() else [], rng)
        full = rank_at_point(rows, point) == 3
        assert full == (not d.is_zero())
