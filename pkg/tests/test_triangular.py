from fractions import Fraction

import pytest

from hopfkit import hopf as hp
from hopfkit.double import build_double, trivial_R
from hopfkit.groups import double_dims_oracle, make_group
from hopfkit.hopf import group_algebra
from hopfkit.reptheory import wedderburn
from hopfkit.triangular import (
    TriangularError,
    TwistError,
    abelian_embedding,
    bicharacter_twist,
    certify_twist,
    check_u_involution,
    induce_twist,
    is_triangular,
    parity_twist,
    parity_vector,
    super_vector_example,
    twist_from_json,
    twist_group_algebra,
    twist_to_json,
)


def test_super_vector_R():
    Q = super_vector_example()
    assert is_triangular(Q) == (True, 0.0)
    assert Q.u == {1: 1}  # u = g
    c = check_u_involution(Q)
    assert c.passed and c.residual == 0
    assert parity_vector(Q).p == (0, 1)


def test_parity_twist_of_super_vector_R():
    Q = super_vector_example()
    Qt, c = parity_twist(Q)
    assert c.passed
    assert Qt.u == {0: 1}
    assert Qt.R == {(0, 0): 1}
    again, _ = parity_twist(Qt)
    assert again.R == Qt.R


def test_parity_twist_trivial_cases():
    Q = trivial_R(group_algebra(make_group("S3")))
    Qt, c = parity_twist(Q)
    assert c.passed and Qt.R == Q.R


def test_double_is_not_triangular():
    Q = build_double(group_algebra(make_group("C2"))).quasi
    assert not is_triangular(Q)[0]
    with pytest.raises(TriangularError):
        check_u_involution(Q)


def test_trivial_bicharacter_gives_trivial_twist():
    T = bicharacter_twist("C2xC2", "1")
    assert T.J == T.algebra.one2()


def test_klein_twist_is_rational_and_certified():
    T = bicharacter_twist("C2xC2", "a1b2")
    assert T.certified
    assert all(isinstance(v, (int, Fraction)) for v in T.J.values())
    assert T.J != T.algebra.one2()
    ta = twist_group_algebra(T)
    assert ta.passed, [(c.name, c.detail) for c in ta.checks if not c.passed]
    assert check_u_involution(ta.quasi).passed
    # R_J = sum (-1)^{a1 b2 + a2 b1} e_a (x) e_b is nontrivial
    assert ta.quasi.R != T.algebra.one2()


def test_z2_twist_recovers_trivial_R():
    ta = twist_group_algebra(bicharacter_twist("C2", "a1b1"))
    assert ta.quasi.R == {(0, 0): 1}
    # the super-vector R differs from it only by the parity correction
    Qt, _ = parity_twist(super_vector_example())
    assert Qt.R == ta.quasi.R


def test_complex_bicharacter_twist():
    T = bicharacter_twist("C3", "a1b1")
    assert T.algebra.scalar_mode == "complex"
    assert twist_group_algebra(T).passed


def test_bicharacter_rejection():
    with pytest.raises(TwistError):
        bicharacter_twist("C3", lambda a, b: 2)
    with pytest.raises(TwistError):
        bicharacter_twist("S3", "a1b1")
    with pytest.raises(TwistError):
        bicharacter_twist("C2xC2", "a1b3")


def test_non_cocycle_rejected():
    G = make_group("C2")
    H = group_algebra(G)
    J = hp.add(H.one2(), {(1, 0): Fraction(1, 3)})
    T = certify_twist(G, J)
    assert not T.certified
    with pytest.raises(TwistError):
        twist_group_algebra(T)


def test_induced_twist_on_s4_is_not_cocommutative():
    T = bicharacter_twist("C2xC2", "a1b2")
    S4 = make_group("S4")
    T4 = induce_twist(T, S4, abelian_embedding(T.base_group, S4))
    assert T4.certified
    ta = twist_group_algebra(T4)
    assert ta.passed
    H = ta.H
    assert max(hp.residual(H.comult[g], hp.flip(H.comult[g])) for g in range(24)) > 0.1
    # algebra unchanged; its double still has the group-double dims
    assert wedderburn(H).dims == wedderburn(group_algebra(S4)).dims
    assert check_u_involution(ta.quasi).passed


def test_twisted_double_dims_match_group_double():
    T = bicharacter_twist("C2xC2", "a1b2")
    ta = twist_group_algebra(T)
    dd = build_double(ta.H)
    assert sorted(wedderburn(dd.D).dims) == double_dims_oracle(make_group("C2xC2"))


def test_twist_json_roundtrip():
    T = bicharacter_twist("C2xC2", "a1b2")
    T2 = twist_from_json(twist_to_json(T))
    assert T2.certified and T2.J == T.J
