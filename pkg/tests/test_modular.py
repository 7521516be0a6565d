import numpy as np
import pytest

from conftest import double_of, double_table
from hopfkit.groups import make_group
from hopfkit.hopf import group_algebra
from hopfkit.modular import (
    analyze_modular,
    check_divisibility_double,
    check_frobenius_type,
    prime_dimension_report,
    s_matrix,
)
from hopfkit.double import trivial_R
from hopfkit.scalars import recognize_integer


def abelian_label(char, n):
    """Read ``(g, psi)`` off a one-dimensional character of D(kA): ``p_a h_b -> delta_{a,g} psi(b)``."""
    grid = char.reshape(n, n)
    g = int(np.argmax(np.abs(grid).sum(axis=1)))
    return g, grid[g]


@pytest.mark.parametrize("name", ["C2", "C3", "C2xC2"])
def test_abelian_s_matrix_formula(name):
    G = make_group(name)
    n = G.order
    T = double_table(name)
    md = s_matrix(double_of(name), T)
    labels = [abelian_label(c, n) for c in T.characters]
    oracle = np.array([[np.conj(psi_i[g_j] * psi_j[g_i]) for g_j, psi_j in labels]
                       for g_i, psi_i in labels])
    assert np.max(np.abs(md.s - oracle)) < 1e-9


@pytest.mark.parametrize("name", ["C2", "S3", "Q8"])
def test_s_is_pseudo_unitary(name):
    md = analyze_modular(double_of(name), double_table(name))
    m = md.rank
    assert np.allclose(md.s @ md.s.conj().T, md.dim_regular * np.eye(m), atol=1e-8)
    assert all(c.passed for c in md.checks), [c.name for c in md.checks if not c.passed]


def test_c2_double_fusion_is_klein_group():
    md = analyze_modular(double_of("C2"), double_table("C2"))
    N = md.fusion_bf
    for i in range(4):
        for j in range(4):
            assert N[i, j].sum() == 1
    assert np.array_equal(np.rint(md.fusion_verlinde.real).astype(int), N)


def test_s3_double_data():
    md = analyze_modular(double_of("S3"), double_table("S3"))
    assert md.dims == [1, 1, 2, 2, 2, 2, 3, 3]
    assert md.dim_regular == 36
    assert recognize_integer(complex(md.s[0, 0])) == 1


def test_divisibility_and_frobenius():
    H = group_algebra(make_group("Q8"))
    c = check_divisibility_double(H, double_table("Q8"))
    assert c.passed and c.detail["violations"] == []
    f = check_frobenius_type(trivial_R(group_algebra(make_group("S4"))))
    assert f.passed and f.detail["dims"] == [1, 1, 2, 3, 3]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_prime_dimension(p):
    c = prime_dimension_report(group_algebra(make_group(f"C{p}")))
    assert c.passed
    assert c.detail["grouplikes_H"] == p
    assert c.detail["double_one_dim_blocks"] == p * p
