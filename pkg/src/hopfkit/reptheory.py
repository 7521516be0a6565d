"""Wedderburn decomposition of semisimple algebras given by structure constants."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .hopf import HopfAlgebra, dual_hopf
from .scalars import (
    DEFAULT_TOL,
    ClusterCollision,
    ToleranceConfig,
    eigen_commutative,
    recognize_integer,
)


class WedderburnError(RuntimeError):
    pass


class FusionError(RuntimeError):
    pass


def _mult_arrays(A: HopfAlgebra):
    """Flattened structure constants ``(I, J, K, M)`` with ``x_I x_J ~ M x_K``."""
    cache = A.__dict__.get("_mult_arrays")
    if cache is None:
        I, J, K, M = [], [], [], []
        for (i, j), out in A.mult.items():
            for k, c in out.items():
                I.append(i)
                J.append(j)
                K.append(k)
                M.append(complex(c))
        cache = (np.array(I, dtype=np.int64), np.array(J, dtype=np.int64),
                 np.array(K, dtype=np.int64), np.array(M, dtype=complex))
        A.__dict__["_mult_arrays"] = cache
    return cache


def dense_product(A: HopfAlgebra, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    I, J, K, M = _mult_arrays(A)
    out = np.zeros(A.dim, dtype=complex)
    np.add.at(out, K, x[I] * y[J] * M)
    return out


def left_operator(A: HopfAlgebra, z: np.ndarray) -> np.ndarray:
    """Dense matrix of ``y -> z y``."""
    I, J, K, M = _mult_arrays(A)
    L = np.zeros((A.dim, A.dim), dtype=complex)
    np.add.at(L, (K, J), z[I] * M)
    return L


def regular_trace(A: HopfAlgebra) -> np.ndarray:
    """``t`` with ``tr(L_y) = t . y``."""
    I, J, K, M = _mult_arrays(A)
    t = np.zeros(A.dim, dtype=complex)
    mask = J == K
    np.add.at(t, I[mask], M[mask])
    return t


def center_basis(A: HopfAlgebra, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of ``{z : z x_j = x_j z for all j}``."""
    n = A.dim
    I, J, K, M = _mult_arrays(A)
    # row (j, k) of the commutator system, column i:  [x_i x_j - x_j x_i]_k
    rows = np.concatenate([J * n + K, I * n + K])
    cols = np.concatenate([I, J])
    vals = np.concatenate([M, -M])
    C = sp.csr_matrix((vals, (rows, cols)), shape=(n * n, n))
    gram = (C.conj().T @ C).toarray()
    w, V = np.linalg.eigh(gram)
    thresh = max(1.0, float(w.max(initial=0.0))) * 1e-10
    return V[:, w <= thresh]


@dataclass(frozen=True)
class Block:
    idempotent: np.ndarray
    dim: int
    character: np.ndarray


@dataclass(frozen=True, eq=False)
class IrrepTable:
    """Blocks of a semisimple algebra; block 0 is the counit block for Hopf algebras."""

    blocks: tuple[Block, ...]
    dual_involution: tuple[int, ...] | None
    unit_block_index: int | None
    algebra_dim: int
    residuals: dict

    @property
    def dims(self) -> list[int]:
        return [b.dim for b in self.blocks]

    @property
    def characters(self) -> np.ndarray:
        return np.array([b.character for b in self.blocks])

    @property
    def idempotents(self) -> np.ndarray:
        return np.array([b.idempotent for b in self.blocks])

    def __len__(self):
        return len(self.blocks)


def _sort_key(block: Block):
    re = tuple(float(v) + 0.0 for v in np.round(block.character.real, 6))
    im = tuple(float(v) + 0.0 for v in np.round(block.character.imag, 6))
    return (block.dim, re, im)


def wedderburn(A: HopfAlgebra, tol: ToleranceConfig = DEFAULT_TOL, hopf: bool = True) -> IrrepTable:
    """Central primitive idempotents, dimensions and characters of a semisimple algebra.

    A random element of the center is split by :func:`eigen_commutative`
    applied to its multiplication operator on the center; the spectral
    projector of each eigenvalue applied to 1 is the corresponding central
    idempotent. ``dim_i = sqrt(tr_reg(e_i))`` and
    ``chi_i(x) = tr_reg(e_i x) / dim_i``.

    With ``hopf=True`` the counit block is moved to index 0 and the dual
    involution ``chi_{i*} = chi_i o S`` is computed.
    """
    n = A.dim
    C = center_basis(A, tol)
    c = C.shape[1]
    if c == 0:
        raise WedderburnError("trivial center: not a unital algebra")
    one = np.array([complex(v) for v in A.unit])
    one_c = C.conj().T @ one
    split = None
    for attempt in range(tol.max_random_retries):
        rng = tol.rng(salt=attempt)
        coords = rng.standard_normal(c) + 1j * rng.standard_normal(c)
        z = C @ coords
        K = C.conj().T @ left_operator(A, z) @ C
        try:
            spectrum = eigen_commutative(K, tol)
        except ClusterCollision:
            continue
        if len(spectrum) == c:
            split = spectrum
            break
    if split is None:
        raise WedderburnError(
            f"could not separate {c} central blocks after {tol.max_random_retries} random elements")

    t = regular_trace(A)
    I, J, K_, M = _mult_arrays(A)
    W = np.zeros((n, n), dtype=complex)  # W[i, j] = tr_reg(x_i x_j)
    np.add.at(W, (I, J), M * t[K_])
    blocks = []
    for _, P in split:
        e = C @ (P @ one_c)
        d2 = complex(t @ e)
        d = recognize_integer(math.sqrt(max(d2.real, 0.0)), tol) if abs(d2.imag) <= tol.integer_tol else None
        if d is None or d <= 0 or recognize_integer(d2, tol) != d * d:
            raise WedderburnError(f"block trace {d2:.6g} is not a perfect square: "
                                  "not semisimple or tolerance too tight")
        blocks.append(Block(e, d, (e @ W) / d))

    residuals = _block_residuals(A, blocks, one)
    if sum(b.dim ** 2 for b in blocks) != n:
        raise WedderburnError("sum of squared block dimensions differs from the algebra dimension")
    bad = {k: v for k, v in residuals.items() if v > tol.residual_tol * n}
    if bad:
        raise WedderburnError(f"idempotent checks failed: {bad}")

    unit_index = None
    dual = None
    if hopf:
        eps = np.array([complex(v) for v in A.counit])
        matches = [i for i, b in enumerate(blocks)
                   if b.dim == 1 and np.max(np.abs(b.character - eps)) <= tol.integer_tol]
        if len(matches) != 1:
            raise WedderburnError("counit is not the character of exactly one block")
        unit_block = blocks.pop(matches[0])
        blocks = [unit_block] + sorted(blocks, key=_sort_key)
        unit_index = 0
        if A.antipode is not None:
            dual = _dual_involution(A, blocks, tol)
    else:
        blocks.sort(key=_sort_key)
    return IrrepTable(tuple(blocks), dual, unit_index, n, residuals)


def _block_residuals(A: HopfAlgebra, blocks, one) -> dict:
    orth = 0.0
    central = 0.0
    for i, bi in enumerate(blocks):
        for j, bj in enumerate(blocks):
            prod = dense_product(A, bi.idempotent, bj.idempotent)
            target = bi.idempotent if i == j else 0
            orth = max(orth, float(np.max(np.abs(prod - target))))
        L = left_operator(A, bi.idempotent)
        # e x_j - x_j e, via the regular action on basis columns
        R = np.zeros_like(L)
        I, J, K, M = _mult_arrays(A)
        np.add.at(R, (K, I), bi.idempotent[J] * M)
        central = max(central, float(np.max(np.abs(L - R))))
    total = float(np.max(np.abs(sum(b.idempotent for b in blocks) - one)))
    return {"orthogonal-idempotents": orth, "central": central, "sum-to-one": total}


def _dual_involution(A: HopfAlgebra, blocks, tol) -> tuple[int, ...]:
    S = A.antipode_matrix
    perm = []
    chars = np.array([b.character for b in blocks])
    for b in blocks:
        target = b.character @ S
        dist = np.max(np.abs(chars - target), axis=1)
        j = int(np.argmin(dist))
        if dist[j] > tol.integer_tol:
            raise WedderburnError("character composed with the antipode is not a character")
        perm.append(j)
    if sorted(perm) != list(range(len(blocks))) or any(perm[perm[i]] != i for i in range(len(perm))):
        raise WedderburnError("dual map on blocks is not an involution")
    return tuple(perm)


def character_rank(T: IrrepTable, tol: ToleranceConfig = DEFAULT_TOL) -> int:
    X = T.characters
    return int(np.linalg.matrix_rank(X, tol=tol.integer_tol * max(1.0, np.abs(X).max())))


def fusion_bruteforce(H: HopfAlgebra, T: IrrepTable, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """``N[i, j, l]``: multiplicity of ``V_l`` in ``V_i (x) V_j``, from characters.

    The character of ``V_i (x) V_j`` is ``x -> (chi_i (x) chi_j)(Delta x)``;
    it is expanded in the irreducible characters by a least squares solve,
    and every coefficient must be a nonnegative integer.
    """
    X = T.characters
    m = len(T)
    K, A_, B_, Cv = [], [], [], []
    for k, terms in enumerate(H.comult):
        for (a, b), c in terms.items():
            K.append(k)
            A_.append(a)
            B_.append(b)
            Cv.append(complex(c))
    K = np.array(K, dtype=np.int64)
    A_ = np.array(A_, dtype=np.int64)
    B_ = np.array(B_, dtype=np.int64)
    Cv = np.array(Cv, dtype=complex)
    psi = np.zeros((m, m, H.dim), dtype=complex)
    for i in range(m):
        for j in range(m):
            np.add.at(psi[i, j], K, Cv * X[i, A_] * X[j, B_])
    coeffs, *_ = np.linalg.lstsq(X.T, psi.reshape(m * m, H.dim).T, rcond=None)
    fit = np.max(np.abs(X.T @ coeffs - psi.reshape(m * m, H.dim).T), initial=0.0)
    scale = max(1.0, float(np.abs(psi).max()))
    if fit > tol.integer_tol * scale:
        raise FusionError(f"tensor product character is not a combination of irreducibles (residual {fit:.3g})")
    N = np.zeros((m, m, m), dtype=np.int64)
    flat = coeffs.T.reshape(m, m, m)
    for idx in np.ndindex(m, m, m):
        v = recognize_integer(complex(flat[idx]), tol)
        if v is None or v < 0:
            raise FusionError(f"fusion coefficient N{idx} = {flat[idx]:.6g} is not a nonnegative integer")
        N[idx] = v
    return N


def grouplike_count(H: HopfAlgebra, tol: ToleranceConfig = DEFAULT_TOL) -> int:
    """Number of grouplike elements of H = one-dimensional representations of H*."""
    return sum(1 for d in wedderburn(dual_hopf(H), tol).dims if d == 1)


def one_dim_count(T: IrrepTable) -> int:
    return sum(1 for d in T.dims if d == 1)
