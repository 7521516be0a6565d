from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfkit.scalars import (
    ClusterCollision,
    ToleranceConfig,
    eigen_commutative,
    exact_rank,
    norm_scalar,
    recognize_integer,
    scalar_from_json,
    scalar_to_json,
    solve_linear,
    solve_sparse,
)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def test_tolerance_validation():
    with pytest.raises(ValueError):
        ToleranceConfig(residual_tol=0)
    with pytest.raises(ValueError):
        ToleranceConfig(max_random_retries=0)
    assert ToleranceConfig().with_(rng_seed=3).rng_seed == 3


def test_norm_scalar_keeps_integers():
    assert type(norm_scalar(Fraction(4, 2))) is int
    assert norm_scalar(Fraction(1, 3)) == Fraction(1, 3)


@given(st.one_of(fractions, st.integers(-50, 50)))
def test_rational_json_roundtrip(x):
    assert scalar_from_json(scalar_to_json(x)) == x


@given(st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False))
def test_complex_json_roundtrip(z):
    assert scalar_from_json(scalar_to_json(z)) == z


def test_solve_linear_exact():
    A = [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]]
    x = solve_linear(A, [Fraction(5), Fraction(6)])
    assert list(x) == [Fraction(-4), Fraction(9, 2)]


def test_solve_linear_inconsistent_and_shape():
    assert solve_linear([[1, 1], [1, 1]], [1, 2]) is None
    with pytest.raises(ValueError):
        solve_linear([[1, 0]], [1, 2])


def test_solve_linear_float():
    rng = np.random.default_rng(1)
    A = rng.standard_normal((5, 5)) + 0.5j
    x = rng.standard_normal(5)
    sol = solve_linear(A, A @ x)
    assert np.allclose(sol, x)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(fractions, min_size=4, max_size=4), min_size=4, max_size=4),
       st.lists(fractions, min_size=4, max_size=4))
def test_sparse_solver_reproduces_rhs(A, x):
    b = [sum((A[i][j] * x[j] for j in range(4)), Fraction(0)) for i in range(4)]
    rows = [({j: A[i][j] for j in range(4) if A[i][j]}, [b[i]]) for i in range(4)]
    sol, rank = solve_sparse(rows, 4)
    assert sol is not None
    assert rank == exact_rank(A)
    y = [sol[0].get(j, 0) for j in range(4)]
    for i in range(4):
        assert sum(A[i][j] * y[j] for j in range(4)) == b[i]


@given(st.integers(-10_000, 10_000), st.floats(-1e-8, 1e-8))
def test_recognize_integer_near(n, eps):
    assert recognize_integer(n + eps) == n


@given(st.integers(-1000, 1000), st.floats(0.01, 0.49))
def test_recognize_integer_far(n, off):
    assert recognize_integer(n + off) is None


def test_recognize_integer_complex():
    assert recognize_integer(3 + 1e-12j) == 3
    assert recognize_integer(3 + 0.1j) is None
    assert recognize_integer(Fraction(6, 3)) == 2
    assert recognize_integer(Fraction(1, 2)) is None


def test_eigen_commutative_projectors():
    rng = np.random.default_rng(0)
    V = rng.standard_normal((6, 6))
    lam = np.array([1, 1, 2, 3, 3, 3], dtype=float)
    op = V @ np.diag(lam) @ np.linalg.inv(V)
    spec = eigen_commutative(op)
    assert [round(l.real) for l, _ in spec] == [1, 2, 3]
    Ps = [P for _, P in spec]
    assert np.allclose(sum(Ps), np.eye(6))
    for l, P in spec:
        assert np.allclose(P @ P, P)
        assert np.allclose(op @ P, l * P)
    assert [round(np.trace(P).real) for P in Ps] == [2, 1, 3]


def test_eigen_commutative_merges_close_eigenvalues():
    spec = eigen_commutative(np.diag([0.0, 1e-9, 1.0, 1.0 + 3e-7]))
    assert len(spec) == 3


def test_eigen_commutative_rejects_jordan_block():
    with pytest.raises(ClusterCollision):
        eigen_commutative(np.array([[1.0, 1.0], [0.0, 1.0 + 1e-12]]))
