import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import invariant_factors_bruteforce
from twistedk.linalg import IntegerMatrix, determinant, smith_normal_form, solve_integer, solve_mod

small_matrices = st.integers(0, 6).flatmap(
    lambda m: st.integers(0, 6).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m).map(
            lambda rows: IntegerMatrix(m, n, rows)
        )
    )
)


def check_decomposition(A, s):
    m, n = A.shape
    assert s.U @ A @ s.V == s.D
    assert abs(determinant(s.U)) == 1
    assert abs(determinant(s.V)) == 1
    assert s.U @ s.U_inv == IntegerMatrix.identity(m)
    assert s.V @ s.V_inv == IntegerMatrix.identity(n)
    diag = s.diagonal
    for i in range(m):
        for j in range(n):
            if i != j:
                assert s.D[i, j] == 0
    r = s.rank
    assert all(d > 0 for d in diag[:r])
    assert all(d == 0 for d in diag[r:])
    assert all(diag[i + 1] % diag[i] == 0 for i in range(r - 1))


def test_identity():
    s = smith_normal_form(IntegerMatrix.identity(3))
    assert s.D == IntegerMatrix.identity(3)


def test_two_by_two_example():
    A = IntegerMatrix.from_rows([[2, 4], [6, 8]])
    s = smith_normal_form(A)
    check_decomposition(A, s)
    assert s.D.tolist() == [[2, 0], [0, 4]]
    # d1 = gcd of the entries, d1 * d2 = |det|
    assert invariant_factors_bruteforce(A.rows) == [2, 4]
    assert abs(determinant(A)) == 8


def test_zero_matrix():
    A = IntegerMatrix.zeros(2, 3)
    s = smith_normal_form(A)
    check_decomposition(A, s)
    assert s.D.is_zero() and s.invariant_factors == []


def test_empty_matrices():
    for shape in [(0, 0), (0, 4), (3, 0)]:
        A = IntegerMatrix.zeros(*shape)
        s = smith_normal_form(A)
        assert s.D.shape == shape
        assert s.invariant_factors == []


@settings(max_examples=300, deadline=None)
@given(small_matrices)
def test_snf_invariants_and_oracle(A):
    s = smith_normal_form(A)
    check_decomposition(A, s)
    if A.nrows and A.ncols:
        assert s.invariant_factors == invariant_factors_bruteforce(A.rows)


def test_determinant_matches_invariant_factors():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(1, 5)
        A = IntegerMatrix(n, n, [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)])
        s = smith_normal_form(A)
        prod = 1
        for d in s.diagonal:
            prod *= d
        assert prod == abs(determinant(A))


def test_solve_identity():
    assert solve_integer(IntegerMatrix.identity(3), [4, -1, 7]) == [4, -1, 7]


def test_solve_parity_failure():
    assert solve_integer([[2]], [3]) is None


def test_solve_example():
    A = IntegerMatrix.from_rows([[2, 4], [6, 8]])
    x = solve_integer(A, [2, 6])
    assert x is not None and A.apply(x) == [2, 6]
    assert x == [1, 0]


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        solve_integer([[1, 2]], [1, 2])


@settings(max_examples=200, deadline=None)
@given(small_matrices.filter(lambda A: A.nrows > 0), st.data())
def test_solve_integer_property(A, data):
    b = data.draw(st.lists(st.integers(-20, 20), min_size=A.nrows, max_size=A.nrows))
    x = solve_integer(A, b)
    if x is not None:
        assert A.apply(x) == b
    else:
        s = smith_normal_form(A)
        c = s.U.apply(b)
        diag = s.diagonal
        inconsistent = [
            i for i, ci in enumerate(c)
            if (i >= len(diag) or diag[i] == 0) and ci != 0 or (i < len(diag) and diag[i] and ci % diag[i])
        ]
        assert inconsistent


@settings(max_examples=100, deadline=None)
@given(small_matrices.filter(lambda A: A.nrows > 0 and A.ncols > 0), st.data())
def test_solvable_systems_are_solved(A, data):
    x0 = data.draw(st.lists(st.integers(-5, 5), min_size=A.ncols, max_size=A.ncols))
    b = A.apply(x0)
    x = solve_integer(A, b)
    assert x is not None and A.apply(x) == b


def test_solve_mod_examples():
    assert solve_mod([[2]], [0], 4) in ([0], [2])
    assert solve_mod([[2]], [1], 4) is None
    assert solve_mod([[3]], [1], 4) == [3]


def test_solve_mod_errors():
    with pytest.raises(ValueError):
        solve_mod([[1]], [1], 1)
    with pytest.raises(ValueError):
        solve_mod([[1]], [1, 2], 3)


@settings(max_examples=100, deadline=None)
@given(small_matrices.filter(lambda A: 0 < A.nrows <= 3 and 0 < A.ncols <= 3), st.integers(2, 6), st.data())
def test_solve_mod_against_enumeration(A, n, data):
    b = data.draw(st.lists(st.integers(0, n - 1), min_size=A.nrows, max_size=A.nrows))
    x = solve_mod(A, b, n)
    import itertools

    exists = any(
        all((v - w) % n == 0 for v, w in zip(A.apply(list(c)), b))
        for c in itertools.product(range(n), repeat=A.ncols)
    )
    assert (x is not None) == exists
    if x is not None:
        assert all((v - w) % n == 0 for v, w in zip(A.apply(x), b))
