"""Quasitriangular structures, the Drinfeld double, and the maps attached to them."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import hopf as hp
from .groups import FiniteGroup
from .hopf import HopfAlgebra, mul, mul2, residual
from .scalars import DEFAULT_TOL, ToleranceConfig, exact_rank, scalar_to_json


class ConstructionError(RuntimeError):
    """A construction produced a structure that fails its own checks."""

    def __init__(self, message: str, residuals: dict | None = None):
        super().__init__(message)
        self.residuals = residuals or {}


@dataclass(frozen=True, eq=False)
class QuasitriangularStructure:
    """An element ``R = sum_i a_i (x) b_i`` of H(x)H together with derived data.

    Nothing is validated on construction; see :meth:`residuals`.
    """

    parent: HopfAlgebra
    R: dict
    tol: ToleranceConfig = field(default=DEFAULT_TOL, compare=False)

    @cached_property
    def R21(self) -> dict:
        return hp.flip(self.R)

    @cached_property
    def R_inv(self) -> dict:
        # (S (x) id)(R) is the inverse of a universal R-matrix
        return hp.apply_S2(self.parent, self.R, (True, False))

    @cached_property
    def monodromy(self) -> dict:
        """``R^{21} R``."""
        return mul2(self.parent, self.R21, self.R)

    @cached_property
    def u(self) -> dict:
        """Drinfeld element ``sum_i S(b_i) a_i``."""
        H = self.parent
        S = H.require_antipode()
        out: dict = {}
        for (a, b), c in self.R.items():
            out = hp.add(out, mul(H, S[b], {a: 1}), c)
        return out

    @cached_property
    def u_inv(self) -> dict | None:
        return hp.inverse(self.parent, self.u, self.tol)

    # -- residual checks ----------------------------------------------------

    def quasitriangularity_residuals(self) -> dict[str, float]:
        H, R = self.parent, self.R
        inter = 0.0
        for x in range(H.dim):
            d = hp.comult(H, {x: 1})
            inter = max(inter, residual(mul2(H, hp.flip(d), R), mul2(H, R, d)))
        R13 = hp.legs(R, (0, 2), 3, H)
        R23 = hp.legs(R, (1, 2), 3, H)
        R12 = hp.legs(R, (0, 1), 3, H)
        left = residual(hp.comult_leg(H, R, 0), mul2(H, R13, R23))
        right = residual(hp.comult_leg(H, R, 1), mul2(H, R13, R12))
        inv = max(residual(mul2(H, R, self.R_inv), H.one2()),
                  residual(mul2(H, self.R_inv, R), H.one2()))
        return {
            "intertwines-comult": inter,
            "comult-first-leg": left,
            "comult-second-leg": right,
            "R-invertible": inv,
        }

    def u_conjugation_residual(self) -> float:
        """``max_x |u x u^{-1} - S^2(x)|`` over basis x."""
        H = self.parent
        if self.u_inv is None:
            return float("inf")
        S = H.require_antipode()
        worst = 0.0
        for x in range(H.dim):
            lhs = mul(H, mul(H, self.u, {x: 1}), self.u_inv)
            worst = max(worst, residual(lhs, hp.apply_linear(S, S[x])))
        return worst

    def u_coproduct_residual(self) -> float:
        """``|Delta(u) R^{21}R - u (x) u|``."""
        H = self.parent
        lhs = mul2(H, hp.comult(H, self.u), self.monodromy)
        return residual(lhs, hp.tensor(self.u, self.u))

    def u_central_residual(self) -> float:
        H = self.parent
        return max(residual(mul(H, self.u, {x: 1}), mul(H, {x: 1}, self.u)) for x in range(H.dim))

    def u_invertible_residual(self) -> float:
        if self.u_inv is None:
            return float("inf")
        return residual(mul(self.parent, self.u, self.u_inv), self.parent.one())

    def special_grouplike_residual(self) -> float:
        """With ribbon element ``v := u``, ``|u v^{-1} - 1|``."""
        return self.u_invertible_residual()

    def is_triangular(self) -> tuple[bool, float]:
        res = residual(self.monodromy, self.parent.one2())
        return res <= self.tol.residual_tol, res

    def with_R(self, R: dict) -> "QuasitriangularStructure":
        return QuasitriangularStructure(self.parent, R, self.tol)


def drinfeld_element(Q: QuasitriangularStructure, check: bool = True) -> dict:
    """The Drinfeld element; with ``check`` the conjugation and coproduct identities are enforced."""
    if check:
        res = {"u-conjugation": Q.u_conjugation_residual(), "u-coproduct": Q.u_coproduct_residual()}
        if max(res.values()) > Q.tol.residual_tol:
            raise ConstructionError("Drinfeld element identities fail", res)
    return Q.u


def trivial_R(H: HopfAlgebra) -> QuasitriangularStructure:
    return QuasitriangularStructure(H, H.one2())


# ---------------------------------------------------------------------------
# the double

@dataclass(frozen=True, eq=False)
class DoubleData:
    """``D(H)`` on the basis ``p_a (x) h_b`` (index ``a * n + b``)."""

    base: HopfAlgebra
    D: HopfAlgebra
    quasi: QuasitriangularStructure

    @property
    def n(self) -> int:
        return self.base.dim

    def index(self, alpha: int, beta: int) -> int:
        return alpha * self.n + beta

    def embed_H(self, x: dict) -> dict:
        """``h -> eps_H (x) h``."""
        n, cou = self.n, self.base.counit
        return hp._clean({a * n + b: cou[a] * c for b, c in x.items() for a in range(n) if cou[a]})

    def embed_dual(self, p: dict) -> dict:
        """``p -> p (x) 1_H``."""
        n, unit = self.n, self.base.unit
        return hp._clean({a * n + b: unit[b] * c for a, c in p.items() for b in range(n) if unit[b]})


def _double_product_table(H: HopfAlgebra):
    n = H.dim
    S = H.require_antipode()
    # T[(c, a)][gamma][x] = coefficient of x_gamma in S(x_c) x_x x_a
    T: dict = {}
    for c in range(n):
        for a in range(n):
            table: dict = {}
            for x in range(n):
                y = mul(H, mul(H, S[c], {x: 1}), {a: 1})
                for gamma, v in y.items():
                    table.setdefault(gamma, {})[x] = v
            T[(c, a)] = table
    # p_alpha p_x = sum_i Delta_i^{alpha x} p_i
    dual_mult: dict = {}
    for i, terms in enumerate(H.comult):
        for (alpha, x), v in terms.items():
            dual_mult.setdefault((alpha, x), {})[i] = v
    mult: dict = {}
    for beta in range(n):
        d2 = hp.comult_leg(H, hp.comult(H, {beta: 1}), 0)
        for gamma in range(n):
            # Q[(x, b)]: coefficient of p_x (x) x_b in (h1 -> p_gamma <- S(h3)) (x) h2
            Q: dict = {}
            for (a, b, c), w in d2.items():
                for x, v in T[(c, a)].get(gamma, {}).items():
                    hp._acc(Q, (x, b), w * v)
            if not Q:
                continue
            for alpha in range(n):
                for delta in range(n):
                    out: dict = {}
                    for (x, b), q in Q.items():
                        pm = dual_mult.get((alpha, x))
                        hm = H.mult.get((b, delta))
                        if not pm or not hm:
                            continue
                        for i, pv in pm.items():
                            for k, hv in hm.items():
                                hp._acc(out, i * n + k, q * pv * hv)
                    if out:
                        mult[(alpha * n + beta, gamma * n + delta)] = hp._clean(out)
    return mult


def build_double(H: HopfAlgebra, tol: ToleranceConfig = DEFAULT_TOL,
                 with_antipode: bool = True) -> DoubleData:
    """The Drinfeld double ``D(H) = H^{*cop} (x) H`` with ``R = sum_i h_i (x) h_i^*``.

    Multiplication: ``(p (x) h)(q (x) g) = sum p (h1 -> q <- S^{-1}(h3)) (x) h2 g``
    with ``(a -> q)(x) = q(xa)`` and ``(q <- a)(x) = q(ax)``; ``S^{-1} = S``
    is required (semisimple H). The antipode is found by linear solve.
    """
    n = H.dim
    if hp.antipode_squared_residual(H) > tol.residual_tol:
        raise ConstructionError("build_double needs S^2 = id (semisimple H)")
    mult = _double_product_table(H)
    comult_t = []
    for alpha in range(n):
        dual_terms: dict = {}
        for (i, j), out in H.mult.items():
            v = out.get(alpha)
            if v:
                dual_terms[(j, i)] = v  # co-opposite
        for beta in range(n):
            terms: dict = {}
            for (j, i), v in dual_terms.items():
                for (b1, b2), c in H.comult[beta].items():
                    hp._acc(terms, (j * n + b1, i * n + b2), v * c)
            comult_t.append(hp._clean(terms))
    unit = tuple(hp.norm_scalar(H.counit[a] * H.unit[b]) for a in range(n) for b in range(n))
    counit = tuple(hp.norm_scalar(H.unit[a] * H.counit[b]) for a in range(n) for b in range(n))
    labels = tuple(f"p({H.labels[a]})|{H.labels[b]}" for a in range(n) for b in range(n))
    D = HopfAlgebra(n * n, labels, mult, unit, tuple(comult_t), counit, None, H.scalar_mode,
                    f"D({H.name})", {"factors": {"dual_dim": n, "alg_dim": n}})
    if with_antipode:
        D = D.with_antipode(hp.solve_antipode(D, tol))
    R: dict = {}
    for i in range(n):
        for a in range(n):
            if H.counit[a] == 0:
                continue
            for b in range(n):
                if H.unit[b] == 0:
                    continue
                hp._acc(R, (a * n + i, i * n + b), H.counit[a] * H.unit[b])
    quasi = QuasitriangularStructure(D, hp._clean(R), tol)
    return DoubleData(H, D, quasi)


def double_to_json(dd: DoubleData) -> dict:
    data = hp.hopf_to_json(dd.D)
    data["r_matrix"] = [[i, j, scalar_to_json(c)] for (i, j), c in sorted(dd.quasi.R.items())]
    data["factors"] = {"dual_dim": dd.n, "alg_dim": dd.n}
    if isinstance(dd.base.meta.get("group"), FiniteGroup):
        data["factors"]["base_group"] = dd.base.meta["group"].to_json()
    return data


def quasi_to_json(Q: QuasitriangularStructure) -> dict:
    data = hp.hopf_to_json(Q.parent)
    data["r_matrix"] = [[i, j, scalar_to_json(c)] for (i, j), c in sorted(Q.R.items())]
    return data


def r_matrix_from_json(data: dict, H: HopfAlgebra) -> dict:
    R: dict = {}
    for (i, j), v in hp._triplets(data["r_matrix"], 2, "r_matrix"):
        if not (0 <= i < H.dim and 0 <= j < H.dim):
            raise hp.HopfFormatError(f"index ({i}, {j}) out of range", "r_matrix")
        hp._acc(R, (i, j), v)
    return hp._clean(R)


# ---------------------------------------------------------------------------
# factorizability and the projection onto H

@dataclass
class FactorizabilityMap:
    """Matrix of ``p -> (1 (x) p)(R^{21}R)``; column k is the image of the k-th coordinate functional."""

    matrix: np.ndarray
    rank: int
    dim: int

    @property
    def invertible(self) -> bool:
        return self.rank == self.dim

    def apply(self, functional) -> np.ndarray:
        return self.matrix @ np.asarray(functional, dtype=complex)


def factorizability_map(dd, tol: ToleranceConfig = DEFAULT_TOL) -> FactorizabilityMap:
    Q = dd.quasi if isinstance(dd, DoubleData) else dd
    H = Q.parent
    M = Q.monodromy
    mat = hp.to_dense2(H, M)
    if H.scalar_mode == "rational" and all(hp.is_exact(v) for v in M.values()):
        rank = exact_rank(M)
    else:
        rank = int(np.linalg.matrix_rank(mat, tol=tol.integer_tol * max(1.0, np.abs(mat).max())))
    return FactorizabilityMap(mat, rank, H.dim)


@dataclass
class SurjectionReport:
    matrix: np.ndarray
    columns: list
    residuals: dict[str, float]
    rank: int
    target_dim: int
    tol: float

    @property
    def passed(self) -> bool:
        return self.rank == self.target_dim and all(r <= self.tol for r in self.residuals.values())


def hopf_surjection_f(Q: QuasitriangularStructure, dd: DoubleData | None = None,
                      tol: ToleranceConfig = DEFAULT_TOL) -> SurjectionReport:
    """The map ``D(H) -> H``, ``f(p h) = (p (x) 1)(R) h``, with Hopf-map validation.

    The double is built without its antipode when not supplied: a bialgebra
    map between Hopf algebras automatically intertwines the antipodes.
    """
    H = Q.parent
    n = H.dim
    if dd is None:
        dd = build_double(H, tol, with_antipode=False)
    D = dd.D
    # (p_alpha (x) 1)(R) = sum_j R[alpha, j] x_j
    first = [dict() for _ in range(n)]
    for (a, j), c in Q.R.items():
        first[a][j] = c
    cols = []
    for alpha in range(n):
        for beta in range(n):
            cols.append(mul(H, first[alpha], {beta: 1}))
    f = lambda x: hp.apply_linear(cols, x)  # noqa: E731

    alg = 0.0
    for i in range(D.dim):
        fi = cols[i]
        if not fi:
            for j in range(D.dim):
                alg = max(alg, residual(f(D.mult.get((i, j), {}))))
            continue
        for j in range(D.dim):
            alg = max(alg, residual(f(D.mult.get((i, j), {})), mul(H, fi, cols[j])))
    unit = residual(f(D.one()), H.one())
    coalg = 0.0
    cou = 0.0
    for i in range(D.dim):
        image: dict = {}
        for (a, b), c in D.comult[i].items():
            for key, v in hp.tensor(cols[a], cols[b]).items():
                hp._acc(image, key, c * v)
        coalg = max(coalg, residual(hp._clean(image), hp.comult(H, cols[i])))
        cou = max(cou, float(abs(hp.counit(H, cols[i]) - D.counit[i])))
    mat = {(k, i): v for i, col in enumerate(cols) for k, v in col.items()}
    if H.scalar_mode == "rational" and all(hp.is_exact(v) for v in mat.values()):
        rank = exact_rank(mat)
    else:
        dense = np.zeros((n, D.dim), dtype=complex)
        for (k, i), v in mat.items():
            dense[k, i] = complex(v)
        rank = int(np.linalg.matrix_rank(dense, tol=tol.integer_tol))
    dense = np.zeros((n, D.dim), dtype=complex)
    for (k, i), v in mat.items():
        dense[k, i] = complex(v)
    return SurjectionReport(dense, cols, {
        "algebra-map": alg, "unit": unit, "coalgebra-map": coalg, "counit": cou,
    }, rank, n, tol.residual_tol)
