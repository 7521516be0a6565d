"""Finite groups as Cayley tables."""
from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

MAX_ORDER = 64


class GroupError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group on the index set ``0..order-1``.

    ``cayley[g, h]`` is the index of ``g*h``. ``coords``/``cyclic_orders`` are
    only set for groups built as products of cyclic groups; they identify the
    element with index ``g`` with the tuple ``coords[g]`` in
    ``Z_{n_1} x ... x Z_{n_k}``.
    """

    cayley: np.ndarray
    labels: tuple[str, ...]
    name: str = "G"
    cyclic_orders: tuple[int, ...] | None = None
    coords: tuple[tuple[int, ...], ...] | None = None
    identity_index: int = field(init=False)
    inverse: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        table = np.array(self.cayley, dtype=np.int64)
        table.setflags(write=False)
        object.__setattr__(self, "cayley", table)
        object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))
        n = table.shape[0]
        if table.shape != (n, n) or n == 0:
            raise GroupError("cayley table must be a non-empty square array")
        if n > MAX_ORDER:
            raise GroupError(f"group order {n} exceeds the bound {MAX_ORDER}")
        if len(self.labels) != n:
            raise GroupError("need one label per element")
        if table.min() < 0 or table.max() >= n:
            raise GroupError("cayley entries out of range")
        row = np.arange(n)
        ids = [e for e in range(n) if np.array_equal(table[e], row) and np.array_equal(table[:, e], row)]
        if not ids:
            raise GroupError("no identity element")
        e = ids[0]
        inverse = []
        for g in range(n):
            hits = np.flatnonzero(table[g] == e)
            if len(hits) != 1 or table[hits[0], g] != e:
                raise GroupError(f"element {self.labels[g]} has no two-sided inverse")
            inverse.append(int(hits[0]))
        # associativity: (gh)k == g(hk) for all triples
        lhs = table[table[:, :, None], np.arange(n)[None, None, :]]
        rhs = table[np.arange(n)[:, None, None], table[None, :, :]]
        if not np.array_equal(lhs, rhs):
            raise GroupError("cayley table is not associative")
        object.__setattr__(self, "identity_index", e)
        object.__setattr__(self, "inverse", tuple(inverse))

    @property
    def order(self) -> int:
        return self.cayley.shape[0]

    def mul(self, g: int, h: int) -> int:
        return int(self.cayley[g, h])

    def is_abelian(self) -> bool:
        return np.array_equal(self.cayley, self.cayley.T)

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity_index:
            x = self.mul(x, g)
            k += 1
        return k

    def to_json(self) -> dict:
        out = {"order": self.order, "cayley": self.cayley.tolist(), "labels": list(self.labels)}
        if self.cyclic_orders is not None:
            out["cyclic_orders"] = list(self.cyclic_orders)
            out["coords"] = [list(c) for c in self.coords]
        return out

    @classmethod
    def from_json(cls, data: dict, name: str = "G") -> "FiniteGroup":
        try:
            order = int(data["order"])
            table = data["cayley"]
            labels = data.get("labels") or [str(i) for i in range(order)]
        except (KeyError, TypeError) as exc:
            raise GroupError(f"malformed group JSON: {exc}") from exc
        if np.shape(table) != (order, order):
            raise GroupError("cayley table shape does not match order")
        kwargs = {}
        if "cyclic_orders" in data:
            kwargs["cyclic_orders"] = tuple(data["cyclic_orders"])
            kwargs["coords"] = tuple(tuple(c) for c in data["coords"])
        return cls(np.asarray(table), tuple(labels), name=data.get("name", name), **kwargs)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


def _from_elements(elements, mul, labels, name, **kwargs) -> FiniteGroup:
    index = {x: i for i, x in enumerate(elements)}
    table = [[index[mul(a, b)] for b in elements] for a in elements]
    return FiniteGroup(np.array(table), tuple(labels), name=name, **kwargs)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group needs n >= 1")
    labels = ["e"] + ["a" if k == 1 else f"a^{k}" for k in range(1, n)]
    return _from_elements(list(range(n)), lambda a, b: (a + b) % n, labels, f"C{n}",
                          cyclic_orders=(n,), coords=tuple((k,) for k in range(n)))


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n, as ``s^f r^k`` with ``s r = r^-1 s``."""
    if n < 1:
        raise GroupError("dihedral group needs n >= 1")
    elements = [(f, k) for f in range(2) for k in range(n)]

    def mul(x, y):
        (f1, k1), (f2, k2) = x, y
        return ((f1 + f2) % 2, ((-k1 if f2 else k1) + k2) % n)

    def label(x):
        f, k = x
        r = "" if k == 0 else ("r" if k == 1 else f"r^{k}")
        if f == 0:
            return r or "e"
        return "s" + r
    return _from_elements(elements, mul, [label(x) for x in elements], f"D{n}")


def _cycle_label(perm) -> str:
    seen, cycles = set(), []
    for start in range(len(perm)):
        if start in seen:
            continue
        cyc, i = [], start
        while i not in seen:
            seen.add(i)
            cyc.append(i + 1)
            i = perm[i]
        if len(cyc) > 1:
            cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


def symmetric(n: int) -> FiniteGroup:
    if not 1 <= n <= 4:
        raise GroupError("symmetric(n) is only provided for n <= 4")
    elements = list(itertools.permutations(range(n)))
    return _from_elements(elements, lambda s, t: tuple(s[t[i]] for i in range(n)),
                          [_cycle_label(p) for p in elements], f"S{n}")


def quaternion8() -> FiniteGroup:
    # (sign, unit) with unit in 1, i, j, k
    table = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elements = [(s, u) for u in "1ijk" for s in (1, -1)]

    def mul(x, y):
        sign, unit = table[(x[1], y[1])]
        return (x[0] * y[0] * sign, unit)

    labels = [("" if s == 1 else "-") + u for s, u in elements]
    return _from_elements(elements, mul, labels, "Q8")


def product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    if G.order * H.order > MAX_ORDER:
        raise GroupError(f"group order {G.order * H.order} exceeds the bound {MAX_ORDER}")
    elements = [(g, h) for g in range(G.order) for h in range(H.order)]
    kwargs = {}
    if G.cyclic_orders is not None and H.cyclic_orders is not None:
        kwargs["cyclic_orders"] = G.cyclic_orders + H.cyclic_orders
        kwargs["coords"] = tuple(G.coords[g] + H.coords[h] for g, h in elements)
    return _from_elements(
        elements, lambda x, y: (G.mul(x[0], y[0]), H.mul(x[1], y[1])),
        [f"({G.labels[g]},{H.labels[h]})" for g, h in elements], f"{G.name}x{H.name}", **kwargs)


_NAMED = {
    "cyclic": cyclic, "dihedral": dihedral, "symmetric": symmetric,
}


def make_group(spec) -> FiniteGroup:
    """Build a group from a short name or a constructor expression.

    Accepted forms: ``"C5"``, ``"D4"`` (order 8), ``"S3"``, ``"Q8"``,
    ``"C2xC2"``, ``"cyclic(2)"``, ``"dihedral(4)"``, ``"symmetric(3)"``,
    ``"quaternion8"``, ``"product(cyclic(2), cyclic(2))"``, or an existing
    :class:`FiniteGroup`.
    """
    if isinstance(spec, FiniteGroup):
        return spec
    if not isinstance(spec, str):
        raise GroupError(f"unsupported group spec {spec!r}")
    s = spec.strip()
    if s.startswith("product(") and s.endswith(")"):
        inner = s[len("product("):-1]
        depth = 0
        for pos, ch in enumerate(inner):
            depth += ch == "("
            depth -= ch == ")"
            if ch == "," and depth == 0:
                return product(make_group(inner[:pos]), make_group(inner[pos + 1:]))
        raise GroupError(f"cannot parse {spec!r}")
    m = re.fullmatch(r"(cyclic|dihedral|symmetric)\(\s*(\d+)\s*\)", s)
    if m:
        return _NAMED[m.group(1)](int(m.group(2)))
    if s in ("quaternion8", "quaternion8()", "Q8"):
        return quaternion8()
    if "x" in s:
        parts = s.split("x")
        G = make_group(parts[0])
        for p in parts[1:]:
            G = product(G, make_group(p))
        G = FiniteGroup(G.cayley, G.labels, name=s, cyclic_orders=G.cyclic_orders, coords=G.coords)
        return G
    m = re.fullmatch(r"([CDS])(\d+)", s)
    if m:
        kind, n = m.group(1), int(m.group(2))
        return {"C": cyclic, "D": dihedral, "S": symmetric}[kind](n)
    raise GroupError(f"unknown group spec {spec!r}")


BUILTIN_GROUPS = ("C2", "C3", "C5", "C2xC2", "S3", "S4", "D4", "Q8")


def conjugacy_classes(G: FiniteGroup) -> list[list[int]]:
    """Conjugacy classes, each sorted, listed by smallest member (identity first)."""
    seen = set()
    classes = []
    order = [G.identity_index] + [g for g in range(G.order) if g != G.identity_index]
    for g in order:
        if g in seen:
            continue
        cls = sorted({G.mul(G.mul(h, g), G.inverse[h]) for h in range(G.order)})
        seen.update(cls)
        classes.append(cls)
    return classes


def subgroup(G: FiniteGroup, members, name: str | None = None) -> FiniteGroup:
    """The subgroup on ``members`` with its own Cayley table.

    The result has an extra attribute ``parent_indices`` mapping its indices
    back into ``G``.
    """
    members = sorted(set(int(m) for m in members))
    pos = {g: i for i, g in enumerate(members)}
    try:
        table = [[pos[G.mul(a, b)] for b in members] for a in members]
    except KeyError as exc:
        raise GroupError("members are not closed under multiplication") from exc
    H = FiniteGroup(np.array(table), tuple(G.labels[m] for m in members), name=name or f"sub({G.name})")
    object.__setattr__(H, "parent_indices", tuple(members))
    return H


def centralizer(G: FiniteGroup, g: int) -> FiniteGroup:
    members = [h for h in range(G.order) if G.mul(h, g) == G.mul(g, h)]
    return subgroup(G, members, name=f"Z_{G.name}({G.labels[g]})")


def double_dims_oracle(G: FiniteGroup) -> list[int]:
    """Irreducible dimensions of the double of kG, from class sizes and centralizers.

    Each conjugacy class C with representative r contributes ``|C| * d`` for
    every irreducible dimension ``d`` of the centralizer of r. Returned sorted.
    """
    from .hopf import group_algebra
    from .reptheory import wedderburn

    dims = []
    for cls in conjugacy_classes(G):
        Z = centralizer(G, cls[0])
        table = wedderburn(group_algebra(Z))
        dims.extend(len(cls) * d for d in table.dims)
    return sorted(dims)


def class_size_profile(G: FiniteGroup) -> Counter:
    return Counter(len(c) for c in conjugacy_classes(G))
