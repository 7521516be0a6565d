"""Hopf algebras as sparse structure tensors.

Conventions, for a basis ``x_0 .. x_{n-1}``:

* ``mult[(i, j)] = {k: m}`` means ``x_i x_j = sum_k m x_k`` (missing key: zero);
* ``comult[i] = {(j, k): c}`` means ``Delta(x_i) = sum c x_j (x) x_k``;
* ``antipode[j] = {i: s}`` means ``S(x_j) = sum_i s x_i`` (column ``j`` of the matrix of S).

Elements of H are dicts ``{i: coeff}``, elements of H(x)H dicts
``{(i, j): coeff}``, and of H(x)H(x)H dicts ``{(i, j, k): coeff}``. Zero
coefficients are dropped whenever they are exactly zero.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

import numpy as np

from .groups import FiniteGroup
from .scalars import (
    DEFAULT_TOL,
    ToleranceConfig,
    is_exact,
    norm_scalar,
    scalar_from_json,
    scalar_to_json,
    solve_sparse,
)


class HopfFormatError(ValueError):
    """Malformed Hopf JSON; ``location`` names the offending field."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


class AntipodeError(ValueError):
    """The bialgebra has no antipode (the defining linear system is inconsistent)."""


@dataclass(frozen=True, eq=False)
class HopfAlgebra:
    dim: int
    labels: tuple[str, ...]
    mult: Mapping[tuple[int, int], Mapping[int, object]]
    unit: tuple
    comult: tuple
    counit: tuple
    antipode: tuple | None = None
    scalar_mode: str = "rational"
    name: str = "H"
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        n = self.dim
        if n < 1:
            raise HopfFormatError("dimension must be positive", "dim")
        if len(self.labels) != n:
            raise HopfFormatError("need one label per basis element", "labels")
        if len(self.unit) != n:
            raise HopfFormatError(f"expected {n} entries", "unit")
        if len(self.counit) != n:
            raise HopfFormatError(f"expected {n} entries", "counit")
        if len(self.comult) != n:
            raise HopfFormatError(f"expected {n} entries", "comult")
        if self.antipode is not None and len(self.antipode) != n:
            raise HopfFormatError(f"expected {n} columns", "antipode")
        if self.scalar_mode not in ("rational", "complex"):
            raise HopfFormatError("must be 'rational' or 'complex'", "scalar_mode")
        for (i, j), out in self.mult.items():
            if not (0 <= i < n and 0 <= j < n) or any(not 0 <= k < n for k in out):
                raise HopfFormatError(f"index out of range in product ({i}, {j})", "mult")
        for i, terms in enumerate(self.comult):
            if any(not (0 <= a < n and 0 <= b < n) for a, b in terms):
                raise HopfFormatError(f"index out of range in coproduct of {i}", "comult")

    # -- basis level --------------------------------------------------------

    def basis(self, i: int) -> dict:
        return {i: 1}

    def one(self) -> dict:
        return _clean({i: c for i, c in enumerate(self.unit)})

    def one2(self) -> dict:
        u = self.one()
        return tensor(u, u)

    def product_basis(self, i: int, j: int) -> Mapping[int, object]:
        return self.mult.get((i, j), {})

    @cached_property
    def right_table(self) -> list[list[tuple[int, Mapping]]]:
        """``right_table[k] = [(l, x_l x_k), ...]`` for nonzero products."""
        table = [[] for _ in range(self.dim)]
        for (l, k), out in self.mult.items():
            if out:
                table[k].append((l, out))
        return table

    @cached_property
    def left_table(self) -> list[list[tuple[int, Mapping]]]:
        table = [[] for _ in range(self.dim)]
        for (l, k), out in self.mult.items():
            if out:
                table[l].append((k, out))
        return table

    # -- dense views (floating) -------------------------------------------

    @cached_property
    def left_regular(self) -> np.ndarray:
        """``L[i]`` is the matrix of left multiplication by ``x_i``: ``L[i][k, j] = m^k_{ij}``."""
        n = self.dim
        L = np.zeros((n, n, n), dtype=complex)
        for (i, j), out in self.mult.items():
            for k, c in out.items():
                L[i, k, j] += complex(c)
        return L

    @cached_property
    def trace_form(self) -> np.ndarray:
        """``t[i] = tr(L_{x_i})``, so ``tr_reg(y) = t . y``."""
        return np.einsum("ikk->i", self.left_regular)

    @cached_property
    def antipode_matrix(self) -> np.ndarray:
        S = np.zeros((self.dim, self.dim), dtype=complex)
        for j, col in enumerate(self.require_antipode()):
            for i, c in col.items():
                S[i, j] += complex(c)
        return S

    @cached_property
    def comult_dense(self) -> np.ndarray:
        """``C[i, j, k]`` coefficient of ``x_j (x) x_k`` in ``Delta(x_i)``."""
        n = self.dim
        C = np.zeros((n, n, n), dtype=complex)
        for i, terms in enumerate(self.comult):
            for (j, k), c in terms.items():
                C[i, j, k] += complex(c)
        return C

    def require_antipode(self) -> tuple:
        if self.antipode is None:
            raise AntipodeError(f"{self.name} has no antipode set")
        return self.antipode

    def with_antipode(self, antipode) -> "HopfAlgebra":
        return HopfAlgebra(self.dim, self.labels, self.mult, self.unit, self.comult, self.counit,
                           tuple(antipode) if antipode is not None else None,
                           self.scalar_mode, self.name, dict(self.meta))

    def __repr__(self):
        return f"HopfAlgebra({self.name}, dim={self.dim}, {self.scalar_mode})"


# ---------------------------------------------------------------------------
# sparse element arithmetic

def _clean(d: dict) -> dict:
    return {k: norm_scalar(v) for k, v in d.items() if v != 0}


def _acc(out: dict, key, value):
    v = out.get(key, 0) + value
    if v == 0:
        out.pop(key, None)
    else:
        out[key] = v


def add(x: dict, y: dict, alpha=1) -> dict:
    out = dict(x)
    for k, v in y.items():
        _acc(out, k, alpha * v)
    return _clean(out)


def sub(x: dict, y: dict) -> dict:
    return add(x, y, -1)


def scale(x: dict, alpha) -> dict:
    return _clean({k: alpha * v for k, v in x.items()})


def residual(x: dict, y: dict | None = None) -> float:
    """``max |x - y|`` over coefficients (``|x|`` when ``y`` is None)."""
    d = x if y is None else sub(x, y)
    return max((float(abs(v)) for v in d.values()), default=0.0)


def mul(H: HopfAlgebra, x: dict, y: dict) -> dict:
    out: dict = {}
    for i, a in x.items():
        for j, b in y.items():
            prod = H.mult.get((i, j))
            if prod:
                ab = a * b
                for k, c in prod.items():
                    _acc(out, k, ab * c)
    return _clean(out)


def tensor(x: dict, y: dict) -> dict:
    """``x (x) y`` for x, y in H (or, with tuple keys, higher tensor powers)."""
    out = {}
    for i, a in x.items():
        ki = i if isinstance(i, tuple) else (i,)
        for j, b in y.items():
            kj = j if isinstance(j, tuple) else (j,)
            out[ki + kj] = a * b
    return _clean(out)


tensor_product_elements = tensor


def mul2(H: HopfAlgebra, X: dict, Y: dict) -> dict:
    """Product in H(x)H (or any tensor power, by key length)."""
    out: dict = {}
    for kx, a in X.items():
        for ky, b in Y.items():
            coef = a * b
            parts = [H.mult.get((p, q)) for p, q in zip(kx, ky)]
            if not all(parts):
                continue
            partial = {(): coef}
            for prod in parts:
                partial = {key + (k,): c * v for key, c in partial.items() for k, v in prod.items()}
            for key, v in partial.items():
                _acc(out, key, v)
    return _clean(out)


def flip(X: dict) -> dict:
    """``X^{21}``: swap the legs of an element of H(x)H."""
    return {(j, i): v for (i, j), v in X.items()}


def legs(X: dict, positions: tuple[int, ...], n_total: int, H: HopfAlgebra) -> dict:
    """Place a 2-tensor into legs ``positions`` of an ``n_total``-fold tensor, 1 elsewhere.

    ``legs(R, (0, 2), 3, H)`` is ``R^{13}``.
    """
    one = H.one()
    out = {(): 1}
    for leg in range(n_total):
        if leg in positions:
            continue
        out = {k + (i,): c * v for k, c in out.items() for i, v in one.items()}
    rest = [leg for leg in range(n_total) if leg not in positions]
    result: dict = {}
    for key_one, c1 in out.items():
        for kx, v in X.items():
            key = [None] * n_total
            for leg, idx in zip(rest, key_one):
                key[leg] = idx
            for leg, idx in zip(positions, kx):
                key[leg] = idx
            _acc(result, tuple(key), c1 * v)
    return _clean(result)


def apply_linear(cols, x: dict) -> dict:
    """Apply a linear map stored column-wise (``cols[j] = image of x_j``)."""
    out: dict = {}
    for j, a in x.items():
        for i, c in cols[j].items():
            _acc(out, i, a * c)
    return _clean(out)


def apply_S(H: HopfAlgebra, x: dict) -> dict:
    return apply_linear(H.require_antipode(), x)


def apply_S2(H: HopfAlgebra, X: dict, which=(True, True)) -> dict:
    """Apply S to the selected legs of an element of H(x)H."""
    S = H.require_antipode()
    out: dict = {}
    for (i, j), v in X.items():
        left = S[i] if which[0] else {i: 1}
        right = S[j] if which[1] else {j: 1}
        for a, ca in left.items():
            for b, cb in right.items():
                _acc(out, (a, b), v * ca * cb)
    return _clean(out)


def comult(H: HopfAlgebra, x: dict) -> dict:
    out: dict = {}
    for i, a in x.items():
        for key, c in H.comult[i].items():
            _acc(out, key, a * c)
    return _clean(out)


def counit(H: HopfAlgebra, x: dict):
    return norm_scalar(sum((a * H.counit[i] for i, a in x.items()), 0))


def comult_leg(H: HopfAlgebra, X: dict, leg: int) -> dict:
    """Apply Delta to one leg of a tensor (``leg=0``: ``(Delta (x) id)``)."""
    out: dict = {}
    for key, v in X.items():
        for (a, b), c in H.comult[key[leg]].items():
            _acc(out, key[:leg] + (a, b) + key[leg + 1:], v * c)
    return _clean(out)


def counit_leg(H: HopfAlgebra, X: dict, leg: int) -> dict:
    out: dict = {}
    for key, v in X.items():
        e = H.counit[key[leg]]
        if e:
            rest = key[:leg] + key[leg + 1:]
            _acc(out, rest[0] if len(rest) == 1 else rest, v * e)
    return _clean(out)


def to_dense(H: HopfAlgebra, x: dict) -> np.ndarray:
    v = np.zeros(H.dim, dtype=complex)
    for i, c in x.items():
        v[i] = complex(c)
    return v


def to_dense2(H: HopfAlgebra, X: dict) -> np.ndarray:
    M = np.zeros((H.dim, H.dim), dtype=complex)
    for (i, j), c in X.items():
        M[i, j] = complex(c)
    return M


def inverse(H: HopfAlgebra, x: dict, tol: ToleranceConfig = DEFAULT_TOL) -> dict | None:
    """Two-sided inverse of ``x`` in H, or None if it is not invertible."""
    n = H.dim
    exact = all(is_exact(v) for v in x.values()) and H.scalar_mode == "rational"
    one = H.one()
    if exact:
        rows = [dict() for _ in range(n)]
        for j in range(n):  # column j: x * x_j
            for k, c in mul(H, x, {j: 1}).items():
                rows[k][j] = c
        sol, _ = solve_sparse(((rows[k], [one.get(k, 0)]) for k in range(n)), n)
        if sol is None:
            return None
        y = _clean(sol[0])
    else:
        L = np.einsum("i,ikj->kj", to_dense(H, x), H.left_regular)
        rhs = to_dense(H, one)
        try:
            v = np.linalg.solve(L, rhs)
        except np.linalg.LinAlgError:
            return None
        y = _clean({i: complex(c) for i, c in enumerate(v) if abs(c) > 0})
    if residual(mul(H, y, x), one) > tol.residual_tol * max(1.0, residual(y)):
        return None
    return y


def inverse2(H: HopfAlgebra, X: dict, tol: ToleranceConfig = DEFAULT_TOL) -> dict | None:
    """Inverse in H(x)H by an exact (or least squares) linear solve."""
    n = H.dim
    one2 = H.one2()
    exact = all(is_exact(v) for v in X.values()) and H.scalar_mode == "rational"
    idx = lambda a, b: a * n + b  # noqa: E731
    if exact:
        rows: dict[int, dict] = {}
        for a in range(n):
            for b in range(n):
                for key, c in mul2(H, X, {(a, b): 1}).items():
                    rows.setdefault(idx(*key), {})[idx(a, b)] = c
        sol, _ = solve_sparse(((rows.get(r, {}), [one2.get(divmod(r, n), 0)]) for r in range(n * n)),
                              n * n)
        if sol is None:
            return None
        Y = _clean({divmod(c, n): v for c, v in sol[0].items()})
    else:
        M = np.zeros((n * n, n * n), dtype=complex)
        for a in range(n):
            for b in range(n):
                for key, c in mul2(H, X, {(a, b): 1}).items():
                    M[idx(*key), idx(a, b)] += complex(c)
        rhs = np.zeros(n * n, dtype=complex)
        for key, c in one2.items():
            rhs[idx(*key)] = complex(c)
        try:
            v = np.linalg.solve(M, rhs)
        except np.linalg.LinAlgError:
            return None
        Y = _clean({divmod(c, n): complex(v[c]) for c in range(n * n) if abs(v[c]) > 0})
    if residual(mul2(H, Y, X), one2) > tol.residual_tol * max(1.0, residual(Y)):
        return None
    return Y


# ---------------------------------------------------------------------------
# axioms

HOPF_AXIOMS = (
    "associativity", "unit", "coassociativity", "counit",
    "comult-homomorphism", "counit-homomorphism", "antipode",
)


@dataclass
class AxiomReport:
    residuals: dict[str, float]
    tol: float
    exact: bool

    @property
    def passed(self) -> bool:
        return all(r <= self.tol for r in self.residuals.values())

    def failures(self) -> list[str]:
        return [k for k, r in self.residuals.items() if r > self.tol]


def validate_hopf(H: HopfAlgebra, tol: ToleranceConfig = DEFAULT_TOL,
                  include_antipode: bool = True) -> AxiomReport:
    """Residual of every Hopf algebra axiom, evaluated on all basis (pairs/triples)."""
    n = H.dim
    one = H.one()
    res = dict.fromkeys(HOPF_AXIOMS[:6], 0.0)

    prods = {key: dict(v) for key, v in H.mult.items()}
    for i in range(n):
        for j in range(n):
            xij = prods.get((i, j), {})
            for k in range(n):
                lhs = mul(H, xij, {k: 1})
                rhs = mul(H, {i: 1}, prods.get((j, k), {}))
                res["associativity"] = max(res["associativity"], residual(lhs, rhs))
    for i in range(n):
        xi = {i: 1}
        res["unit"] = max(res["unit"], residual(mul(H, one, xi), xi), residual(mul(H, xi, one), xi))
        d = comult(H, xi)
        res["coassociativity"] = max(res["coassociativity"],
                                     residual(comult_leg(H, d, 0), comult_leg(H, d, 1)))
        res["counit"] = max(res["counit"], residual(counit_leg(H, d, 0), xi),
                            residual(counit_leg(H, d, 1), xi))
    deltas = [comult(H, {i: 1}) for i in range(n)]
    for i in range(n):
        for j in range(n):
            xij = prods.get((i, j), {})
            res["comult-homomorphism"] = max(res["comult-homomorphism"],
                                             residual(comult(H, xij), mul2(H, deltas[i], deltas[j])))
            res["counit-homomorphism"] = max(
                res["counit-homomorphism"],
                float(abs(counit(H, xij) - H.counit[i] * H.counit[j])))
    res["comult-homomorphism"] = max(res["comult-homomorphism"], residual(comult(H, one), H.one2()))
    res["counit-homomorphism"] = max(res["counit-homomorphism"], float(abs(counit(H, one) - 1)))

    if include_antipode:
        if H.antipode is None:
            res["antipode"] = float("inf")
        else:
            res["antipode"] = antipode_residual(H, H.antipode, deltas)
    exact = H.scalar_mode == "rational"
    return AxiomReport(res, tol.residual_tol, exact)


def antipode_residual(H: HopfAlgebra, S, deltas=None) -> float:
    """``max |m(S (x) id)Delta(x_i) - eps(x_i) 1|`` and the mirrored identity."""
    one = H.one()
    worst = 0.0
    for i in range(H.dim):
        target = scale(one, H.counit[i])
        left: dict = {}
        right: dict = {}
        terms = deltas[i] if deltas is not None else H.comult[i]
        for (a, b), c in terms.items():
            for k, v in mul(H, S[a], {b: 1}).items():
                _acc(left, k, c * v)
            for k, v in mul(H, {a: 1}, S[b]).items():
                _acc(right, k, c * v)
        worst = max(worst, residual(_clean(left), target), residual(_clean(right), target))
    return worst


def antipode_squared_residual(H: HopfAlgebra) -> float:
    """``max |S^2(x_j) - x_j|``; zero for semisimple H."""
    S = H.require_antipode()
    return max(residual(apply_linear(S, S[j]), {j: 1}) for j in range(H.dim))


# ---------------------------------------------------------------------------
# constructions

def group_algebra(G: FiniteGroup) -> HopfAlgebra:
    n = G.order
    mult = {(g, h): {G.mul(g, h): 1} for g in range(n) for h in range(n)}
    unit = tuple(1 if g == G.identity_index else 0 for g in range(n))
    comult_t = tuple({(g, g): 1} for g in range(n))
    antipode = tuple({G.inverse[g]: 1} for g in range(n))
    return HopfAlgebra(n, G.labels, mult, unit, comult_t, (1,) * n, antipode, "rational",
                       f"k[{G.name}]", {"group": G})


def dual_hopf(H: HopfAlgebra) -> HopfAlgebra:
    """The dual Hopf algebra on the dual basis ``p_i`` (``p_i(x_j) = delta_ij``)."""
    n = H.dim
    mult: dict = {}
    for i, terms in enumerate(H.comult):
        for (j, k), c in terms.items():
            mult.setdefault((j, k), {})[i] = c
    comult_t = [dict() for _ in range(n)]
    for (i, j), out in H.mult.items():
        for k, c in out.items():
            comult_t[k][(i, j)] = c
    antipode = None
    if H.antipode is not None:
        cols = [dict() for _ in range(n)]
        for j, col in enumerate(H.antipode):
            for i, c in col.items():
                cols[i][j] = c
        antipode = tuple(cols)
    name = H.name[:-2] if H.name.endswith("^*") else H.name + "^*"
    labels = tuple(l[2:-1] if l.startswith("p(") and l.endswith(")") else f"p({l})" for l in H.labels)
    return HopfAlgebra(n, labels, {k: v for k, v in mult.items() if v}, tuple(H.counit),
                       tuple(comult_t), tuple(H.unit), antipode, H.scalar_mode, name)


def trivial_hopf() -> HopfAlgebra:
    """The ground field k as a one-dimensional Hopf algebra."""
    return HopfAlgebra(1, ("1",), {(0, 0): {0: 1}}, (1,), ({(0, 0): 1},), (1,), ({0: 1},),
                       "rational", "k")


def monoid_bialgebra(table, labels=None, name="k[M]") -> HopfAlgebra:
    """Bialgebra of a finite monoid (``table[a][b]`` = index of ``ab``, identity at index 0).

    No antipode is set; :func:`solve_antipode` decides whether one exists.
    """
    n = len(table)
    labels = labels or tuple(str(i) for i in range(n))
    mult = {(a, b): {int(table[a][b]): 1} for a in range(n) for b in range(n)}
    unit = tuple(1 if a == 0 else 0 for a in range(n))
    return HopfAlgebra(n, tuple(labels), mult, unit, tuple({(a, a): 1} for a in range(n)),
                       (1,) * n, None, "rational", name)


def solve_antipode(B: HopfAlgebra, tol: ToleranceConfig = DEFAULT_TOL) -> tuple:
    """The unique antipode of a bialgebra, by solving the antipode axioms as a linear system.

    Unknown ``S[l, j]`` (coefficient of ``x_l`` in ``S(x_j)``) is column
    ``l*n + j``. Both ``m(S (x) id)Delta = eta eps`` and ``m(id (x) S)Delta =
    eta eps`` are imposed. Raises :class:`AntipodeError` if inconsistent.
    """
    n = B.dim
    one = B.one()
    rows: dict[tuple[int, int], dict] = {}

    def put(eq, col, val):
        row = rows.setdefault(eq, {})
        v = row.get(col, 0) + val
        if v == 0:
            row.pop(col, None)
        else:
            row[col] = v

    for i in range(n):
        for (j, k), c in B.comult[i].items():
            # sum_l S[l, j] x_l x_k
            for l, out in B.right_table[k]:
                for m, v in out.items():
                    put((0, i, m), l * n + j, c * v)
            # sum_l S[l, k] x_j x_l
            for l, out in B.left_table[j]:
                for m, v in out.items():
                    put((1, i, m), l * n + k, c * v)
    equations = [(side, i, m) for side in (0, 1) for i in range(n) for m in range(n)]
    exact = B.scalar_mode == "rational" and all(
        is_exact(v) for row in rows.values() for v in row.values())
    if exact:
        system = ((rows.get(eq, {}), [B.counit[eq[1]] * one.get(eq[2], 0)]) for eq in equations)
        sol, _ = solve_sparse(system, n * n)
        if sol is None:
            raise AntipodeError(f"{B.name}: antipode equations are inconsistent")
        values = sol[0]
        cols = [dict() for _ in range(n)]
        for col, v in values.items():
            l, j = divmod(col, n)
            cols[j][l] = v
    else:
        cols = _solve_antipode_float(B, rows, equations, tol)
    S = tuple(_clean(c) for c in cols)
    res = antipode_residual(B, S)
    if res > tol.residual_tol:
        raise AntipodeError(f"{B.name}: no antipode (residual {res:.3g})")
    return S


def _solve_antipode_float(B, rows, equations, tol):
    import scipy.sparse as sp
    from scipy.sparse.linalg import lsqr

    n = B.dim
    one = B.one()
    index = {eq: r for r, eq in enumerate(equations)}
    data, ri, ci = [], [], []
    for eq, row in rows.items():
        for col, v in row.items():
            data.append(complex(v))
            ri.append(index[eq])
            ci.append(col)
    A = sp.csr_matrix((data, (ri, ci)), shape=(len(equations), n * n), dtype=complex)
    b = np.array([complex(B.counit[eq[1]] * one.get(eq[2], 0)) for eq in equations])
    if n * n <= 1024:
        x, *_ = np.linalg.lstsq(A.toarray(), b, rcond=None)
    else:
        x = lsqr(A, b, atol=1e-15, btol=1e-15, iter_lim=20 * n * n)[0]
    if np.max(np.abs(A @ x - b), initial=0.0) > tol.residual_tol * (1 + np.max(np.abs(b))):
        raise AntipodeError(f"{B.name}: antipode equations are inconsistent")
    cols = [dict() for _ in range(n)]
    for col in range(n * n):
        if abs(x[col]) > tol.residual_tol * 1e-3:
            l, j = divmod(col, n)
            cols[j][l] = complex(x[col])
    return cols


# ---------------------------------------------------------------------------
# JSON

def _triplets(entries, arity, where):
    out = []
    if not isinstance(entries, list):
        raise HopfFormatError("expected a list of index/scalar tuples", where)
    for pos, item in enumerate(entries):
        if not isinstance(item, (list, tuple)) or len(item) != arity + 1:
            raise HopfFormatError(f"entry must have {arity} indices and a scalar", f"{where}[{pos}]")
        try:
            idx = tuple(int(v) for v in item[:arity])
            val = scalar_from_json(item[arity])
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise HopfFormatError(str(exc), f"{where}[{pos}]") from exc
        out.append((idx, val))
    return out


def hopf_to_json(H: HopfAlgebra) -> dict:
    mult = [[i, j, k, scalar_to_json(c)] for (i, j), out in sorted(H.mult.items())
            for k, c in sorted(out.items())]
    com = [[i, j, k, scalar_to_json(c)] for i, terms in enumerate(H.comult)
           for (j, k), c in sorted(terms.items())]
    data = {
        "name": H.name,
        "dim": H.dim,
        "labels": list(H.labels),
        "scalar_mode": H.scalar_mode,
        "mult": mult,
        "comult": com,
        "unit": [scalar_to_json(c) for c in H.unit],
        "counit": [scalar_to_json(c) for c in H.counit],
    }
    if isinstance(H.meta.get("group"), FiniteGroup):
        data["group"] = H.meta["group"].to_json()
    if H.antipode is not None:
        data["antipode"] = [[i, j, scalar_to_json(c)] for j, col in enumerate(H.antipode)
                            for i, c in sorted(col.items())]
    return data


def hopf_from_json(data: dict) -> HopfAlgebra:
    if not isinstance(data, dict):
        raise HopfFormatError("top level must be an object")
    try:
        n = int(data["dim"])
    except (KeyError, TypeError, ValueError) as exc:
        raise HopfFormatError("missing or invalid", "dim") from exc
    mode = data.get("scalar_mode", "rational")
    labels = tuple(data.get("labels") or [f"x{i}" for i in range(n)])
    mult: dict = {}
    for (i, j, k), v in _triplets(data.get("mult", []), 3, "mult"):
        if v != 0:
            mult.setdefault((i, j), {})
            mult[(i, j)][k] = norm_scalar(mult[(i, j)].get(k, 0) + v)
    com = [dict() for _ in range(n)]
    for (i, j, k), v in _triplets(data.get("comult", []), 3, "comult"):
        if not 0 <= i < n:
            raise HopfFormatError(f"index {i} out of range", "comult")
        if v != 0:
            com[i][(j, k)] = v
    for key in ("unit", "counit"):
        if not isinstance(data.get(key), list):
            raise HopfFormatError("missing dense scalar list", key)
    try:
        unit = tuple(scalar_from_json(v) for v in data["unit"])
        cou = tuple(scalar_from_json(v) for v in data["counit"])
    except (ValueError, ZeroDivisionError) as exc:
        raise HopfFormatError(str(exc), "unit/counit") from exc
    antipode = None
    if data.get("antipode") is not None:
        cols = [dict() for _ in range(n)]
        for (i, j), v in _triplets(data["antipode"], 2, "antipode"):
            if not (0 <= i < n and 0 <= j < n):
                raise HopfFormatError(f"index ({i}, {j}) out of range", "antipode")
            if v != 0:
                cols[j][i] = v
        antipode = tuple(cols)
    if mode == "rational":
        for name, vals in (("unit", unit), ("counit", cou)):
            if not all(is_exact(v) for v in vals):
                raise HopfFormatError("rational mode requires 'p/q' scalars", name)
    meta = {}
    if isinstance(data.get("group"), dict):
        try:
            meta["group"] = FiniteGroup.from_json(data["group"])
        except ValueError as exc:
            raise HopfFormatError(str(exc), "group") from exc
    if isinstance(data.get("factors"), dict):
        meta["factors"] = dict(data["factors"])
    return HopfAlgebra(n, labels, mult, unit, tuple(com), cou, antipode, mode,
                       data.get("name", "H"), meta)


def load_json(path) -> dict:
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise HopfFormatError(f"invalid JSON ({exc.msg})", f"line {exc.lineno}") from exc

