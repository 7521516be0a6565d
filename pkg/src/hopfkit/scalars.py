"""Scalars, tolerances and the small amount of linear algebra everything else needs.

Two scalar backends coexist:

* exact rationals: Python ``int`` / :class:`fractions.Fraction` (ints are kept
  whenever the denominator is 1, which keeps group-algebra arithmetic fast);
* floating complex: Python ``complex`` / numpy ``complex128``.

Structure tensors are stored as sparse dicts of such scalars; spectral work
(Wedderburn, S-matrices) happens on dense numpy arrays.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from numbers import Number
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = [
    "ToleranceConfig",
    "DEFAULT_TOL",
    "ClusterCollision",
    "norm_scalar",
    "is_exact",
    "scalar_abs",
    "scalar_to_json",
    "scalar_from_json",
    "solve_linear",
    "solve_sparse",
    "exact_rank",
    "eigen_commutative",
    "recognize_integer",
]


@dataclass(frozen=True)
class ToleranceConfig:
    residual_tol: float = 1e-9
    integer_tol: float = 1e-6
    eigen_gap_tol: float = 1e-7
    max_random_retries: int = 8
    rng_seed: int = 0

    def __post_init__(self):
        for name in ("residual_tol", "integer_tol", "eigen_gap_tol"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"{name} must be a positive finite number, got {value!r}")
        if self.integer_tol < self.residual_tol:
            raise ValueError("integer_tol must be >= residual_tol")
        if self.max_random_retries < 1:
            raise ValueError("max_random_retries must be a positive integer")

    def with_(self, **changes) -> "ToleranceConfig":
        return replace(self, **changes)

    def rng(self, salt: int = 0) -> np.random.Generator:
        return np.random.default_rng([self.rng_seed, salt])


DEFAULT_TOL = ToleranceConfig()


class ClusterCollision(RuntimeError):
    """Eigenvalue clusters could not be separated; retry with another random element."""


# ---------------------------------------------------------------------------
# scalars

def norm_scalar(x):
    """Canonical form: Fractions with denominator 1 become ints."""
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, (bool, np.bool_)):
        return int(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating, np.complexfloating, float)):
        x = complex(x)
    if isinstance(x, complex):
        if not (math.isfinite(x.real) and math.isfinite(x.imag)):
            raise FloatingPointError(f"non-finite scalar {x!r}")
    return x


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def scalar_abs(x) -> float:
    return float(abs(x))


def scalar_to_json(x):
    """Rationals serialize as ``"p/q"`` strings, floats as ``[re, im]`` pairs."""
    x = norm_scalar(x)
    if is_exact(x):
        f = Fraction(x)
        return f"{f.numerator}/{f.denominator}"
    x = complex(x)
    return [x.real, x.imag]


def scalar_from_json(v):
    if isinstance(v, str):
        return norm_scalar(Fraction(v.strip()))
    if isinstance(v, bool):
        raise ValueError(f"not a scalar: {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return norm_scalar(complex(float(v[0]), float(v[1])))
    if isinstance(v, float):
        return norm_scalar(complex(v))
    raise ValueError(f"not a scalar: {v!r}")


# ---------------------------------------------------------------------------
# linear solves

def _reduce(row: dict, rhs: list, pivots: dict):
    """Eliminate every pivot column from ``row`` (in place)."""
    pending = [c for c in row if c in pivots]
    while pending:
        c = pending.pop()
        coef = row.get(c)
        if coef is None:
            continue
        prow, prhs = pivots[c]
        for k, v in prow.items():
            nv = row.get(k, 0) - coef * v
            if nv == 0:
                row.pop(k, None)
            else:
                if k not in row and k in pivots:
                    pending.append(k)
                row[k] = nv
        for t in range(len(rhs)):
            if prhs[t]:
                rhs[t] = rhs[t] - coef * prhs[t]


def solve_sparse(rows: Iterable[tuple[Mapping[int, object], Sequence]], ncols: int):
    """Exact Gaussian elimination on sparse rows ``({col: coef}, [rhs...])``.

    Returns ``(solution, rank)`` where ``solution`` is a list of per-rhs
    dicts ``{col: value}`` (free variables set to zero), or ``(None, rank)``
    when the system is inconsistent. Intended for rational scalars; with
    floating scalars there is no pivoting strategy, so use :func:`solve_linear`.
    """
    pivots: dict[int, tuple[dict, list]] = {}
    order: list[int] = []
    nrhs = None
    for coeffs, rhs in rows:
        row = {c: v for c, v in coeffs.items() if v != 0}
        rhs = list(rhs)
        if nrhs is None:
            nrhs = len(rhs)
        for c in row:
            if not 0 <= c < ncols:
                raise ValueError(f"column {c} out of range")
        _reduce(row, rhs, pivots)
        if not row:
            if any(r != 0 for r in rhs):
                return None, len(pivots)
            continue
        # sparsest-looking pivot: smallest column index keeps things deterministic
        c = min(row)
        inv = row[c]
        row = {k: norm_scalar(Fraction(v) / inv) if is_exact(v) and is_exact(inv) else v / inv
               for k, v in row.items()}
        rhs = [norm_scalar(Fraction(r) / inv) if is_exact(r) and is_exact(inv) else r / inv
               for r in rhs]
        pivots[c] = (row, rhs)
        order.append(c)
    nrhs = nrhs or 0
    solution = [dict() for _ in range(nrhs)]
    for c in reversed(order):
        row, rhs = pivots[c]
        for t in range(nrhs):
            val = rhs[t]
            for k, v in row.items():
                if k != c and k in solution[t]:
                    val = val - v * solution[t][k]
            if val != 0:
                solution[t][c] = norm_scalar(val)
    return solution, len(pivots)


def exact_rank(matrix) -> int:
    """Rank of an exact matrix given as a sequence of rows or a ``{(i, j): v}`` dict."""
    if isinstance(matrix, Mapping):
        rows: dict[int, dict] = {}
        ncols = 0
        for (i, j), v in matrix.items():
            rows.setdefault(i, {})[j] = v
            ncols = max(ncols, j + 1)
        _, rank = solve_sparse(((r, []) for r in rows.values()), ncols)
        return rank
    rows = [{j: v for j, v in enumerate(r) if v != 0} for r in matrix]
    ncols = max((len(r) for r in matrix), default=0)
    _, rank = solve_sparse(((r, []) for r in rows), ncols)
    return rank


def _all_exact(arr) -> bool:
    return all(is_exact(v) for v in np.asarray(arr, dtype=object).ravel())


def solve_linear(A, b, tol: ToleranceConfig = DEFAULT_TOL):
    """Solve ``A x = b``.

    Exact when every entry of ``A`` and ``b`` is rational, least squares
    otherwise. Returns ``None`` when the system is inconsistent (exactly, or
    with residual above ``residual_tol * (1 + |b|_inf)``).
    """
    A_obj = np.asarray(A, dtype=object)
    b_obj = np.asarray(b, dtype=object)
    if A_obj.ndim != 2:
        raise ValueError("A must be a matrix")
    vector = b_obj.ndim == 1
    if vector:
        b_obj = b_obj.reshape(-1, 1)
    if b_obj.ndim != 2 or b_obj.shape[0] != A_obj.shape[0]:
        raise ValueError(f"dimension mismatch: A is {A_obj.shape}, b is {np.shape(b)}")
    m, n = A_obj.shape

    if _all_exact(A_obj) and _all_exact(b_obj):
        rows = (({j: A_obj[i, j] for j in range(n) if A_obj[i, j] != 0}, list(b_obj[i]))
                for i in range(m))
        sol, _ = solve_sparse(rows, n)
        if sol is None:
            return None
        x = np.zeros((n, b_obj.shape[1]), dtype=object)
        for t, s in enumerate(sol):
            for c, v in s.items():
                x[c, t] = v
        return x[:, 0] if vector else x

    Af = np.asarray(A_obj, dtype=complex)
    bf = np.asarray(b_obj, dtype=complex)
    x, *_ = np.linalg.lstsq(Af, bf, rcond=None)
    res = np.max(np.abs(Af @ x - bf), initial=0.0)
    if res > tol.residual_tol * (1 + np.max(np.abs(bf), initial=0.0)):
        return None
    if not np.all(np.isfinite(x)):
        raise FloatingPointError("non-finite solution")
    return x[:, 0] if vector else x


# ---------------------------------------------------------------------------
# spectra

def _cluster(values: np.ndarray, gap: float) -> list[list[int]]:
    """Single-linkage clustering of complex numbers at distance ``gap``."""
    n = len(values)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(values[i] - values[j]) <= gap:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values(), key=lambda g: (values[g].real.mean(), values[g].imag.mean()))


def eigen_commutative(op, tol: ToleranceConfig = DEFAULT_TOL):
    """Eigenvalue clusters and spectral projectors of a diagonalizable operator.

    Returns ``[(eigenvalue, projector), ...]`` ordered by (real, imag) part of
    the eigenvalue. Eigenvalues closer than ``eigen_gap_tol`` (relative to the
    spectral radius when it exceeds 1) form one cluster. Each projector is the
    polynomial ``prod_{k != j} (op - l_k) / (l_j - l_k)`` in ``op``; it is
    evaluated through the eigenbasis, which gives the same matrix with much
    better conditioning than multiplying the factors out.

    Raises :class:`ClusterCollision` when the projectors fail their checks
    (non-diagonalizable at this tolerance, or clusters that should not merge).
    """
    A = np.asarray(op, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("operator must be square")
    n = A.shape[0]
    if n == 0:
        return []
    vals, vecs = np.linalg.eig(A)
    scale = max(1.0, float(np.max(np.abs(vals))))
    groups = _cluster(vals, tol.eigen_gap_tol * scale)
    try:
        inv = np.linalg.inv(vecs)
    except np.linalg.LinAlgError as exc:
        raise ClusterCollision("eigenvector matrix is singular") from exc
    out = []
    for g in groups:
        P = vecs[:, g] @ inv[g, :]
        out.append((complex(vals[g].mean()), P))
    bound = tol.residual_tol * n
    eye = np.eye(n)
    if np.max(np.abs(sum(P for _, P in out) - eye)) > bound:
        raise ClusterCollision("spectral projectors do not sum to the identity")
    for lam, P in out:
        if np.max(np.abs(P @ P - P)) > bound or np.max(np.abs(A @ P - lam * P)) > bound * scale:
            raise ClusterCollision("operator is not diagonalizable at the given tolerance")
    return out


# ---------------------------------------------------------------------------
# integers

def recognize_integer(x, tol: ToleranceConfig = DEFAULT_TOL) -> int | None:
    """Nearest integer to ``x`` if within ``integer_tol`` (real and imaginary parts), else None."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else None
    if not isinstance(x, Number) and not isinstance(x, np.generic):
        raise TypeError(f"not a scalar: {x!r}")
    z = complex(x)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        return None
    n = round(z.real)
    if abs(z.real - n) <= tol.integer_tol and abs(z.imag) <= tol.integer_tol:
        return int(n)
    return None
