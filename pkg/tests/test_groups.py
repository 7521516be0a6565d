import itertools

import numpy as np
import pytest

from hopfkit.groups import (
    BUILTIN_GROUPS,
    FiniteGroup,
    GroupError,
    centralizer,
    conjugacy_classes,
    double_dims_oracle,
    make_group,
)

ORDERS = {"C2": 2, "C3": 3, "C5": 5, "C2xC2": 4, "S3": 6, "S4": 24, "D4": 8, "Q8": 8}


def brute_classes(G):
    seen, out = set(), []
    for g in range(G.order):
        if g in seen:
            continue
        cls = {G.mul(G.mul(h, g), G.inverse[h]) for h in range(G.order)}
        seen |= cls
        out.append(cls)
    return out


@pytest.mark.parametrize("name", BUILTIN_GROUPS)
def test_builtin_orders_and_axioms(name):
    G = make_group(name)
    assert G.order == ORDERS[name]
    e = G.identity_index
    for a, b, c in itertools.product(range(G.order), repeat=3):
        assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
    for a in range(G.order):
        assert G.mul(a, G.inverse[a]) == e


@pytest.mark.parametrize("name", BUILTIN_GROUPS)
def test_classes_match_bruteforce(name):
    G = make_group(name)
    classes = conjugacy_classes(G)
    assert classes[0] == [G.identity_index]
    assert sorted(map(sorted, classes)) == sorted(map(sorted, brute_classes(G)))
    for cls in classes:
        # orbit-stabilizer
        assert centralizer(G, cls[0]).order * len(cls) == G.order


def test_known_class_counts():
    assert len(conjugacy_classes(make_group("S3"))) == 3
    assert len(conjugacy_classes(make_group("S4"))) == 5
    assert len(conjugacy_classes(make_group("Q8"))) == 5
    assert len(conjugacy_classes(make_group("D4"))) == 5


def test_spec_parsing():
    assert make_group("cyclic(2)").order == 2
    assert make_group("product(cyclic(2), cyclic(3))").order == 6
    assert make_group("quaternion8").order == 8
    assert make_group("dihedral(3)").order == 6
    assert not make_group("Q8").is_abelian()
    for bad in ("C0", "S9", "nonsense", "product(C2)"):
        with pytest.raises((GroupError, ValueError)):
            make_group(bad)


def test_rejects_non_group_table():
    with pytest.raises(GroupError):
        FiniteGroup(np.array([[0, 1], [1, 1]]), ("a", "b"))


def test_json_roundtrip():
    G = make_group("C2xC2")
    H = FiniteGroup.from_json(G.to_json())
    assert np.array_equal(H.cayley, G.cayley)
    assert H.coords == G.coords


def test_double_dims_oracle_sanity():
    assert double_dims_oracle(make_group("C3")) == [1] * 9
    for name in ("S3", "D4", "Q8"):
        G = make_group(name)
        dims = double_dims_oracle(G)
        assert sum(d * d for d in dims) == G.order ** 2
    assert double_dims_oracle(make_group("S3")) == [1, 1, 2, 2, 2, 2, 3, 3]
