import copy
from fractions import Fraction

import pytest

from hopfkit import hopf as hp
from hopfkit.groups import make_group
from hopfkit.hopf import (
    AntipodeError,
    HopfFormatError,
    dual_hopf,
    group_algebra,
    hopf_from_json,
    hopf_to_json,
    monoid_bialgebra,
    solve_antipode,
    trivial_hopf,
    validate_hopf,
)


@pytest.mark.parametrize("name", ["C2", "C3", "S3", "Q8"])
def test_group_algebra_and_dual_are_exact_hopf(name):
    H = group_algebra(make_group(name))
    for A in (H, dual_hopf(H)):
        rep = validate_hopf(A)
        assert rep.passed
        assert all(r == 0 for r in rep.residuals.values())


def test_trivial_hopf():
    assert validate_hopf(trivial_hopf()).passed


def test_solved_antipode_is_group_inverse():
    G = make_group("S3")
    H = group_algebra(G)
    bare = H.with_antipode(None)
    S = solve_antipode(bare)
    for g in range(G.order):
        assert S[g] == {G.inverse[g]: 1}


def test_solved_antipode_of_dual():
    H = dual_hopf(group_algebra(make_group("D4")))
    S = solve_antipode(H.with_antipode(None))
    assert all(hp.residual(S[j], H.antipode[j]) == 0 for j in range(H.dim))


def test_monoid_bialgebra_has_no_antipode():
    B = monoid_bialgebra([[0, 1], [1, 1]])  # identity 0, absorbing 1
    assert validate_hopf(B, include_antipode=False).passed
    with pytest.raises(AntipodeError):
        solve_antipode(B)


def test_element_arithmetic():
    H = group_algebra(make_group("C3"))
    g = {1: 1}
    assert hp.mul(H, g, hp.mul(H, g, g)) == H.one()
    X = hp.tensor(g, {2: Fraction(1, 2)})
    assert hp.flip(X) == {(2, 1): Fraction(1, 2)}
    assert hp.comult(H, g) == {(1, 1): 1}
    assert hp.inverse(H, hp.add(H.one(), g), ) is not None


def test_legs_embedding():
    H = group_algebra(make_group("C2"))
    R = {(1, 1): 1}
    assert hp.legs(R, (0, 2), 3, H) == {(1, 0, 1): 1}


def test_json_roundtrip():
    H = group_algebra(make_group("S3"))
    H2 = hopf_from_json(hopf_to_json(H))
    assert hopf_to_json(H2) == hopf_to_json(H)
    assert H2.meta["group"].order == 6


def test_json_errors_carry_location():
    data = hopf_to_json(group_algebra(make_group("C2")))
    bad = copy.deepcopy(data)
    bad["mult"][0] = [0, 0]
    with pytest.raises(HopfFormatError) as err:
        hopf_from_json(bad)
    assert err.value.location == "mult[0]"
    bad = copy.deepcopy(data)
    del bad["unit"]
    with pytest.raises(HopfFormatError) as err:
        hopf_from_json(bad)
    assert err.value.location == "unit"
    bad = copy.deepcopy(data)
    bad["mult"].append([0, 0, 7, "1/1"])
    with pytest.raises(HopfFormatError):
        hopf_from_json(bad)


def test_corrupted_associativity_is_named():
    data = hopf_to_json(group_algebra(make_group("C3")))
    data["mult"].append([1, 1, 0, "1/2"])
    rep = validate_hopf(hopf_from_json(data))
    assert "associativity" in rep.failures()
