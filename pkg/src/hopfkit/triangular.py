"""Triangular structures: u^2 = 1, the parity correction of R, and group algebra twists."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import hopf as hp
from .checks import Check
from .double import QuasitriangularStructure
from .groups import FiniteGroup, make_group
from .hopf import HopfAlgebra, group_algebra, mul, mul2, residual
from .reptheory import IrrepTable, left_operator, wedderburn
from .scalars import DEFAULT_TOL, ToleranceConfig, recognize_integer


class TriangularError(ValueError):
    pass


class TwistError(ValueError):
    pass


def is_triangular(Q: QuasitriangularStructure) -> tuple[bool, float]:
    """``R^{21} R == 1 (x) 1`` within ``residual_tol``."""
    return Q.is_triangular()


def check_u_involution(Q: QuasitriangularStructure, T: IrrepTable | None = None) -> Check:
    """``u^2 = 1``, ``(S (x) S)(R) = R``, ``u`` grouplike, and ``tr u = tr u^{-1}`` on every block."""
    tol = Q.tol
    ok, tri = is_triangular(Q)
    if not ok:
        raise TriangularError(f"R is not triangular (residual {tri:.3g})")
    H, u = Q.parent, Q.u
    res = {
        "u_squared": residual(mul(H, u, u), H.one()),
        "SS_R": residual(hp.apply_S2(H, Q.R), Q.R),
        "u_grouplike": residual(hp.comult(H, u), hp.tensor(u, u)),
        "u_counit": float(abs(hp.counit(H, u) - 1)),
    }
    if T is None:
        T = wedderburn(H, tol)
    u_inv = Q.u_inv if Q.u_inv is not None else {}
    tr_u = T.characters @ hp.to_dense(H, u)
    tr_uinv = T.characters @ hp.to_dense(H, u_inv)
    res["trace_u_vs_inverse"] = float(np.max(np.abs(tr_u - tr_uinv)))
    structural = max(v for k, v in res.items() if k != "trace_u_vs_inverse")
    passed = structural <= tol.residual_tol and res["trace_u_vs_inverse"] <= tol.integer_tol
    return Check("u-involution", passed, max(res.values()), res)


@dataclass(frozen=True)
class ParityVector:
    """``p[V]`` in {0, 1} with ``(-1)^p[V]`` the scalar by which u acts on block V."""

    p: tuple[int, ...]


def parity_vector(Q: QuasitriangularStructure, T: IrrepTable | None = None) -> ParityVector:
    H = Q.parent
    if T is None:
        T = wedderburn(H, Q.tol)
    u = hp.to_dense(H, Q.u)
    p = []
    for block in T.blocks:
        scalar = recognize_integer(complex(block.character @ u) / block.dim, Q.tol)
        if scalar not in (1, -1):
            raise TriangularError(f"u acts on a block by {scalar}, not by +-1")
        p.append(0 if scalar == 1 else 1)
    return ParityVector(tuple(p))


def parity_correction(H: HopfAlgebra, u: dict) -> dict:
    """``(1 (x) 1 + 1 (x) u + u (x) 1 - u (x) u) / 2``."""
    one = H.one()
    half = Fraction(1, 2) if H.scalar_mode == "rational" and all(hp.is_exact(v) for v in u.values()) \
        else 0.5
    total = hp.add(hp.tensor(one, one), hp.tensor(one, u))
    total = hp.add(total, hp.tensor(u, one))
    total = hp.add(total, hp.tensor(u, u), -1)
    return hp.scale(total, half)


def parity_twist(Q: QuasitriangularStructure, T: IrrepTable | None = None):
    """``R~ = (1/2)(1 (x) 1 + 1 (x) u + u (x) 1 - u (x) u) R``, a triangular structure with ``u~ = 1``.

    Returns ``(Q~, check)``; the check also compares, block by block, that
    ``R~`` acts on ``V (x) W`` as ``(-1)^{p(V)p(W)} R``.
    """
    tol = Q.tol
    H = Q.parent
    ok, tri = is_triangular(Q)
    if not ok:
        raise TriangularError(f"R is not triangular (residual {tri:.3g})")
    u2 = residual(mul(H, Q.u, Q.u), H.one())
    if u2 > tol.residual_tol:
        raise TriangularError(f"u^2 != 1 (residual {u2:.3g})")
    Rt = mul2(H, parity_correction(H, Q.u), Q.R)
    Qt = Q.with_R(Rt)
    res = dict(Qt.quasitriangularity_residuals())
    res["triangular"] = residual(Qt.monodromy, H.one2())
    res["u_tilde_is_one"] = residual(Qt.u, H.one())

    if T is None:
        T = wedderburn(H, tol)
    par = parity_vector(Q, T).p
    Rm, Rtm = hp.to_dense2(H, Q.R), hp.to_dense2(H, Rt)
    ops = [left_operator(H, b.idempotent) for b in T.blocks]
    blockwise = 0.0
    for a, La in enumerate(ops):
        for b, Lb in enumerate(ops):
            sign = -1 if par[a] and par[b] else 1
            blockwise = max(blockwise, float(np.max(np.abs(La @ Rtm @ Lb.T - sign * La @ Rm @ Lb.T))))
    res["blockwise_sign"] = blockwise
    structural = max(v for k, v in res.items() if k != "blockwise_sign")
    passed = structural <= tol.residual_tol and blockwise <= tol.integer_tol
    return Qt, Check("parity-twist", passed, max(res.values()), {**res, "parity": list(par)})


def super_vector_example() -> QuasitriangularStructure:
    """kZ_2 with ``R = a(x)a + b(x)a + a(x)b - b(x)b``, ``a = (1+g)/2``, ``b = (1-g)/2``."""
    H = group_algebra(make_group("C2"))
    half = Fraction(1, 2)
    a = {0: half, 1: half}
    b = {0: half, 1: -half}
    R = hp.tensor(a, a)
    R = hp.add(R, hp.tensor(b, a))
    R = hp.add(R, hp.tensor(a, b))
    R = hp.add(R, hp.tensor(b, b), -1)
    return QuasitriangularStructure(H, R)


# ---------------------------------------------------------------------------
# twists

@dataclass(frozen=True, eq=False)
class TwistData:
    base_group: FiniteGroup
    algebra: HopfAlgebra
    J: dict
    J_inv: dict | None
    checks: tuple[Check, ...] = field(default=())

    @property
    def certified(self) -> bool:
        return self.J_inv is not None and all(c.passed for c in self.checks)


def certify_twist(G: FiniteGroup, J: dict, tol: ToleranceConfig = DEFAULT_TOL,
                  algebra: HopfAlgebra | None = None) -> TwistData:
    """Check invertibility, the counital 2-cocycle identity and counitality of ``J`` in kG (x) kG."""
    H = algebra or group_algebra(G)
    J = hp._clean(dict(J))
    J_inv = hp.inverse2(H, J, tol)
    inv_res = float("inf") if J_inv is None else max(
        residual(mul2(H, J, J_inv), H.one2()), residual(mul2(H, J_inv, J), H.one2()))
    lhs = mul2(H, hp.comult_leg(H, J, 0), hp.legs(J, (0, 1), 3, H))
    rhs = mul2(H, hp.comult_leg(H, J, 1), hp.legs(J, (1, 2), 3, H))
    cocycle = residual(lhs, rhs)
    counit = max(residual(hp.counit_leg(H, J, 0), H.one()), residual(hp.counit_leg(H, J, 1), H.one()))
    checks = (
        Check.from_residual("cocycle", max(cocycle, inv_res), tol.residual_tol,
                            cocycle=cocycle, invertible=inv_res),
        Check.from_residual("cocycle", counit, tol.residual_tol, counitality=counit),
    )
    return TwistData(G, H, J, J_inv, checks)


def _characters(G: FiniteGroup):
    """``chi[b][a]`` for a product of cyclic groups, indexed through the coordinates."""
    if G.cyclic_orders is None:
        raise TwistError("group must be built as a product of cyclic groups")
    orders = G.cyclic_orders
    exact = all(n <= 2 for n in orders)

    def chi(b, a):
        if exact:
            return -1 if sum(x * y for x, y in zip(G.coords[a], G.coords[b]) if x and y) % 2 else 1
        phase = sum(Fraction(x * y, n) for x, y, n in zip(G.coords[a], G.coords[b], orders))
        return complex(np.exp(2j * np.pi * float(phase)))
    return chi, exact


def fourier_idempotents(G: FiniteGroup) -> list[dict]:
    """Primitive idempotents ``e_b = |G|^{-1} sum_a conj(chi_b(a)) a`` of kG, indexed by b in G."""
    chi, exact = _characters(G)
    n = G.order
    out = []
    for b in range(n):
        if exact:
            out.append(hp._clean({a: Fraction(chi(b, a), n) for a in range(n)}))
        else:
            out.append(hp._clean({a: complex(np.conj(chi(b, a))) / n for a in range(n)}))
    return out


def parse_bicharacter(spec: str, G: FiniteGroup) -> Callable:
    """``"a1b2"`` means ``beta(a, b) = (-1)^(a_1 b_2)``; terms join with ``+``; ``"1"`` is trivial.

    For factors of order n > 2 a term ``aibj`` means ``exp(2 pi i a_i b_j / n)``
    (n the order of the i-th factor).
    """
    spec = spec.strip()
    if spec in ("1", "trivial", ""):
        return lambda a, b: 1
    terms = []
    for term in spec.split("+"):
        term = term.strip()
        if len(term) < 4 or term[0] != "a" or "b" not in term:
            raise TwistError(f"cannot parse bicharacter term {term!r}")
        i, j = term[1:].split("b")
        terms.append((int(i) - 1, int(j) - 1))
    orders = G.cyclic_orders or ()
    for i, j in terms:
        if not (0 <= i < len(orders) and 0 <= j < len(orders)):
            raise TwistError(f"bicharacter term refers to a missing factor: {spec!r}")
        if orders[i] != orders[j]:
            raise TwistError("bicharacter terms must pair factors of equal order")

    def beta(a, b):
        phase = sum(Fraction(a[i] * b[j], orders[i]) for i, j in terms)
        if phase.denominator <= 2:
            return -1 if phase.numerator % 2 and phase.denominator == 2 else 1
        return complex(np.exp(2j * np.pi * float(phase)))
    return beta


def is_bicharacter(G: FiniteGroup, beta: Callable, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    cs = G.coords
    for a, a2, b in itertools.product(range(G.order), repeat=3):
        ab = G.mul(a, a2)
        if abs(beta(cs[ab], cs[b]) - beta(cs[a], cs[b]) * beta(cs[a2], cs[b])) > tol.residual_tol:
            return False
        if abs(beta(cs[b], cs[ab]) - beta(cs[b], cs[a]) * beta(cs[b], cs[a2])) > tol.residual_tol:
            return False
    return True


def bicharacter_twist(G, beta, tol: ToleranceConfig = DEFAULT_TOL) -> TwistData:
    """``J = sum_{g,h} beta(g, h) e_g (x) e_h`` over the Fourier idempotents of an abelian kG."""
    G = make_group(G)
    if not G.is_abelian():
        raise TwistError("bicharacter twists need an abelian group")
    if isinstance(beta, str):
        beta = parse_bicharacter(beta, G)
    chi, exact = _characters(G)
    if not is_bicharacter(G, beta, tol):
        raise TwistError("beta is not a bicharacter")
    values = {(g, h): beta(G.coords[g], G.coords[h]) for g in range(G.order) for h in range(G.order)}
    if exact and not all(hp.is_exact(v) for v in values.values()):
        exact = False
    H = group_algebra(G)
    if not exact:
        H = HopfAlgebra(H.dim, H.labels, H.mult, H.unit, H.comult, H.counit, H.antipode, "complex",
                        H.name, dict(H.meta))
    e = fourier_idempotents(G)
    J: dict = {}
    for (g, h), v in values.items():
        for key, c in hp.tensor(e[g], e[h]).items():
            hp._acc(J, key, v * c)
    T = certify_twist(G, J, tol, H)
    if not T.certified:
        raise TwistError(f"bicharacter twist failed certification: {[c.detail for c in T.checks]}")
    return T


def abelian_embedding(A: FiniteGroup, G: FiniteGroup) -> list[int] | None:
    """An injective homomorphism from a product of cyclic groups into G, as an index map."""
    orders = A.cyclic_orders
    if orders is None:
        raise TwistError("source group must be a product of cyclic groups")

    def power(g, k):
        x = G.identity_index
        for _ in range(k):
            x = G.mul(x, g)
        return x

    candidates = [[g for g in range(G.order) if G.element_order(g) == n] for n in orders]
    for gens in itertools.product(*candidates):
        if any(G.mul(x, y) != G.mul(y, x) for x, y in itertools.combinations(gens, 2)):
            continue
        image = []
        for c in A.coords:
            x = G.identity_index
            for g, k in zip(gens, c):
                x = G.mul(x, power(g, k))
            image.append(x)
        if len(set(image)) == A.order:
            return image
    return None


def induce_twist(T: TwistData, G: FiniteGroup, embedding: list[int],
                 tol: ToleranceConfig = DEFAULT_TOL) -> TwistData:
    """Push a twist on a subgroup algebra kA forward to kG along ``embedding``."""
    J = {(embedding[a], embedding[b]): v for (a, b), v in T.J.items()}
    H = group_algebra(G)
    if T.algebra.scalar_mode == "complex":
        H = HopfAlgebra(H.dim, H.labels, H.mult, H.unit, H.comult, H.counit, H.antipode, "complex",
                        H.name, dict(H.meta))
    return certify_twist(G, J, tol, H)


@dataclass
class TwistedAlgebra:
    H: HopfAlgebra
    quasi: QuasitriangularStructure
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def twist_group_algebra(T: TwistData, tol: ToleranceConfig = DEFAULT_TOL) -> TwistedAlgebra:
    """``(kG, Delta_J, R_J)`` with ``Delta_J(x) = J^{-1} Delta_0(x) J`` and ``R_J = (J^{21})^{-1} J``."""
    if not T.certified:
        raise TwistError("twist is not certified")
    H0 = T.algebra
    J, J_inv = T.J, T.J_inv
    comult_t = tuple(mul2(H0, mul2(H0, J_inv, H0.comult[g]), J) for g in range(H0.dim))
    B = HopfAlgebra(H0.dim, H0.labels, H0.mult, H0.unit, comult_t, H0.counit, None,
                    H0.scalar_mode, f"{H0.name}^J", {"group": T.base_group})
    B = B.with_antipode(hp.solve_antipode(B, tol))
    J21_inv = hp.inverse2(H0, hp.flip(J), tol)
    if J21_inv is None:
        raise TwistError("J^{21} is not invertible")
    R = mul2(H0, J21_inv, J)
    Q = QuasitriangularStructure(B, R, tol)

    checks = []
    axioms = hp.validate_hopf(B, tol)
    for name, r in axioms.residuals.items():
        checks.append(Check.from_residual(name, r, tol.residual_tol))
    gauge = max(residual(B.comult[g], mul2(H0, mul2(H0, J_inv, {(g, g): 1}), J))
                for g in range(B.dim))
    checks.append(Check.from_residual("gauge", gauge, tol.residual_tol))
    qt = Q.quasitriangularity_residuals()
    checks.append(Check.from_residual("quasitriangularity", max(qt.values()), tol.residual_tol, **qt))
    _, tri = is_triangular(Q)
    u_res = residual(Q.u, B.one())
    # the algebra is untouched, so block dims must match kG; categorical dims are tr(u~) per block
    T_B = wedderburn(B, tol)
    dims_ok = sorted(T_B.dims) == sorted(wedderburn(H0, tol, hopf=False).dims)
    cat = [recognize_integer(complex(b.character @ hp.to_dense(B, Q.u)), tol) for b in T_B.blocks]
    cat_ok = cat == T_B.dims
    checks.append(Check("twist-triangularity",
                        max(tri, u_res) <= tol.residual_tol and dims_ok and cat_ok, max(tri, u_res),
                        {"triangular": tri, "u_is_one": u_res, "dims": sorted(T_B.dims),
                         "dims_match_group_algebra": dims_ok, "categorical_dims": cat}))
    return TwistedAlgebra(B, Q, checks)


def twist_to_json(T: TwistData) -> dict:
    return {
        "group": T.base_group.to_json(),
        "J": [[i, j, hp.scalar_to_json(c)] for (i, j), c in sorted(T.J.items())],
        "scalar_mode": T.algebra.scalar_mode,
    }


def twist_from_json(data: dict, tol: ToleranceConfig = DEFAULT_TOL) -> TwistData:
    if "group" not in data or "J" not in data:
        raise hp.HopfFormatError("twist JSON needs 'group' and 'J'")
    G = FiniteGroup.from_json(data["group"])
    J: dict = {}
    for (i, j), v in hp._triplets(data["J"], 2, "J"):
        if not (0 <= i < G.order and 0 <= j < G.order):
            raise hp.HopfFormatError(f"index ({i}, {j}) out of range", "J")
        hp._acc(J, (i, j), v)
    H = group_algebra(G)
    if data.get("scalar_mode") == "complex" or not all(hp.is_exact(v) for v in J.values()):
        H = HopfAlgebra(H.dim, H.labels, H.mult, H.unit, H.comult, H.counit, H.antipode, "complex",
                        H.name, dict(H.meta))
    return certify_twist(G, J, tol, H)
