"""Modular data of Rep(D(H)): S-matrix, Verlinde eigenvalues, fusion, divisibility."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .checks import Check
from .double import (
    DoubleData,
    QuasitriangularStructure,
    build_double,
    factorizability_map,
    hopf_surjection_f,
)
from .hopf import HopfAlgebra, dual_hopf, to_dense2
from .reptheory import IrrepTable, fusion_bruteforce, grouplike_count, wedderburn
from .scalars import DEFAULT_TOL, ToleranceConfig, recognize_integer, solve_linear


class ModularError(RuntimeError):
    pass


@dataclass
class ModularData:
    s: np.ndarray
    dims: list[int]
    dual: tuple[int, ...]
    fusion_bf: np.ndarray | None = None
    fusion_verlinde: np.ndarray | None = None
    checks: list[Check] = field(default_factory=list)

    @property
    def dim_regular(self) -> int:
        """``dim`` of the regular object ``sum_i V_i (x) V_i^*``."""
        return sum(d * d for d in self.dims)

    @property
    def rank(self) -> int:
        return len(self.dims)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def residual_report(self) -> dict[str, float]:
        return {c.name: c.residual for c in self.checks}


def _quasi(dd) -> QuasitriangularStructure:
    return dd.quasi if isinstance(dd, DoubleData) else dd


def s_matrix(dd, T: IrrepTable, tol: ToleranceConfig = DEFAULT_TOL) -> ModularData:
    """``s_ij = (chi_i (x) chi_{j*})(R^{21} R)``, unnormalized (``s_00 = 1``)."""
    Q = _quasi(dd)
    if T.dual_involution is None:
        raise ModularError("irrep table has no dual involution")
    X = T.characters
    Mono = to_dense2(Q.parent, Q.monodromy)
    Xdual = X[list(T.dual_involution)]
    s = X @ Mono @ Xdual.T
    dims = T.dims
    md = ModularData(s, dims, T.dual_involution)

    sym = float(np.max(np.abs(s - s.T)))
    md.checks.append(Check.from_residual("s-symmetry", sym, tol.integer_tol))

    row0 = max(float(np.max(np.abs(s[:, 0] - dims))), float(np.max(np.abs(s[0, :] - dims))))
    recognized = [recognize_integer(complex(v), tol) for v in s[:, 0]] + \
                 [recognize_integer(complex(v), tol) for v in s[0, :]]
    exact_ok = recognized == list(dims) + list(dims)
    md.checks.append(Check("s-row0", exact_ok and row0 <= tol.integer_tol, row0,
                           {"s_i0": [int(v) if v is not None else None for v in recognized[:len(dims)]]}))

    sv = np.linalg.svd(s, compute_uv=False)
    rank = int(np.sum(sv > tol.integer_tol * max(1.0, sv.max())))
    md.checks.append(Check("s-invertibility", rank == len(dims), float(sv.min()),
                           {"rank": rank, "size": len(dims), "abs_det": float(abs(np.linalg.det(s)))}))
    return md


def verify_s_factorization(dd, T: IrrepTable, md: ModularData,
                           tol: ToleranceConfig = DEFAULT_TOL) -> Check:
    """``|s - A D|`` where row j of A holds the coordinates of ``F(chi_{j*})`` in the idempotent basis."""
    F = factorizability_map(_quasi(dd), tol)
    E = T.idempotents.T  # columns e_l
    X = T.characters
    m = len(T)
    A = np.zeros((m, m), dtype=complex)
    for j in range(m):
        image = F.apply(X[T.dual_involution[j]])
        coords = solve_linear(E, image, tol.with_(residual_tol=tol.integer_tol))
        if coords is None:
            return Check("s=AD", False, float("inf"), {"reason": f"F(chi_{j}*) is not central"})
        A[j] = coords
    res = float(np.max(np.abs(md.s - A @ np.diag(md.dims))))
    md.checks.append(Check.from_residual("s=AD", res, tol.integer_tol, A_invertible=bool(
        np.linalg.matrix_rank(A, tol=tol.integer_tol) == m)))
    return md.checks[-1]


def verlinde_eigen_table(md: ModularData, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """``phi[j, i] = s_ij / s_i0``; records the homomorphism and eigenvalue checks on ``md``."""
    s = md.s
    if np.any(np.abs(s[:, 0]) <= tol.integer_tol):
        raise ModularError("zero entry in the first column of s")
    phi = (s / s[:, [0]]).T
    if md.fusion_bf is not None:
        N = md.fusion_bf
        m = md.rank
        hom = 0.0
        for j in range(m):
            for l in range(m):
                hom = max(hom, float(np.max(np.abs(phi[j] * phi[l] - N[j, l] @ phi))))
        md.checks.append(Check.from_residual("phi-homomorphism", hom, tol.integer_tol))
        eig = 0.0
        for j in range(m):
            ev = np.linalg.eigvals(N[j].astype(float))
            cost = np.abs(ev[:, None] - phi[j][None, :])
            r, c = linear_sum_assignment(cost)
            eig = max(eig, float(cost[r, c].max()))
        md.checks.append(Check.from_residual("verlinde-eigen", eig, tol.integer_tol))
    return phi


def fusion_verlinde(md: ModularData, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """``N_j = Phi diag(phi[j]) Phi^{-1}`` with ``Phi[i, k] = s_ki / s_k0``; ``N[j, i, l] = (N_j)[i, l]``."""
    phi = (md.s / md.s[:, [0]]).T
    Phi = phi
    Phi_inv = np.linalg.inv(Phi)
    m = md.rank
    V = np.array([Phi @ np.diag(phi[j]) @ Phi_inv for j in range(m)])
    md.fusion_verlinde = V
    rec = np.zeros((m, m, m), dtype=np.int64)
    ok = True
    worst = 0.0
    for idx in np.ndindex(m, m, m):
        v = recognize_integer(complex(V[idx]), tol)
        worst = max(worst, abs(complex(V[idx]) - round(V[idx].real)))
        if v is None or v < 0:
            ok = False
        else:
            rec[idx] = v
    md.checks.append(Check("fusion-integrality", ok, worst))
    if md.fusion_bf is not None:
        equal = ok and np.array_equal(rec, md.fusion_bf)
        diff = float(np.max(np.abs(V - md.fusion_bf)))
        md.checks.append(Check("fusion-oracle-equivalence", bool(equal), diff))
    return V


def check_sum_rule(md: ModularData, tol: ToleranceConfig = DEFAULT_TOL) -> Check:
    """``sum_i s_ji s_{i j*} = dim R`` for every j."""
    s = md.s
    dual = list(md.dual)
    target = md.dim_regular
    sums = [complex(np.sum(s[j, :] * s[:, dual[j]])) for j in range(md.rank)]
    res = max(abs(v - target) for v in sums)
    md.checks.append(Check.from_residual("sum-rule", res, tol.integer_tol * target,
                                         dim_regular=target))
    return md.checks[-1]


def analyze_modular(dd, T: IrrepTable | None = None, tol: ToleranceConfig = DEFAULT_TOL) -> ModularData:
    """Every modular-data computation on a quasitriangular (normally double) Hopf algebra."""
    Q = _quasi(dd)
    if T is None:
        T = wedderburn(Q.parent, tol)
    md = s_matrix(Q, T, tol)
    md.fusion_bf = fusion_bruteforce(Q.parent, T, tol)
    verify_s_factorization(Q, T, md, tol)
    if md.check("s-invertibility").passed:
        verlinde_eigen_table(md, tol)
        fusion_verlinde(md, tol)
    check_sum_rule(md, tol)
    return md


# ---------------------------------------------------------------------------
# divisibility

def check_divisibility_double(H: HopfAlgebra, T: IrrepTable) -> Check:
    """Every irreducible dimension of D(H) divides dim H."""
    n = H.dim
    bad = [d for d in T.dims if n % d]
    ratio_ok = all((n * n) % (d * d) == 0 for d in T.dims)
    return Check("divisibility", not bad and ratio_ok, float(len(bad)), {
        "dim_H": n, "dims": list(T.dims), "violations": bad,
        "squared_ratios": [(n * n) // (d * d) if (n * n) % (d * d) == 0 else None for d in T.dims],
    })


def check_frobenius_type(Q: QuasitriangularStructure, tol: ToleranceConfig = DEFAULT_TOL,
                         dd: DoubleData | None = None) -> Check:
    """Irreducible dimensions of a quasitriangular H divide dim H.

    The irreducibles of H are pulled back to D(H) along the Hopf surjection
    ``f``, which is validated as part of the check.
    """
    H = Q.parent
    T = wedderburn(H, tol)
    f = hopf_surjection_f(Q, dd, tol)
    bad = [d for d in T.dims if H.dim % d]
    return Check("frobenius-type", not bad and f.passed, float(len(bad)), {
        "dim_H": H.dim, "dims": list(T.dims), "violations": bad,
        "surjection_rank": f.rank, "surjection_residuals": f.residuals,
    })


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p ** 0.5) + 1))


def prime_dimension_report(H: HopfAlgebra, tol: ToleranceConfig = DEFAULT_TOL) -> Check:
    """Grouplike counts and the block-count identity for a Hopf algebra of prime dimension."""
    p = H.dim
    if not _is_prime(p):
        raise ValueError(f"dimension {p} is not prime")
    g_h = grouplike_count(H, tol)
    g_dual = grouplike_count(dual_hopf(H), tol)
    dd = build_double(H, tol)
    TD = wedderburn(dd.D, tol)
    ones = sum(1 for d in TD.dims if d == 1)
    big = sum(d * d for d in TD.dims if d > 1)
    identity = p * p == ones + big
    dichotomy = p in (g_h, g_dual)
    return Check("prime-dimension", identity and dichotomy and all(d in (1, p) for d in TD.dims),
                 0.0, {
                     "p": p, "grouplikes_H": g_h, "grouplikes_dual": g_dual,
                     "double_one_dim_blocks": ones, "double_dims": list(TD.dims),
                     "counting_identity": identity, "dichotomy": dichotomy,
                 })
