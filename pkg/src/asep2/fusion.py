"""Projectors, monodromies and the fused transfer-matrix hierarchy.

The double-row transfer matrix tau(x) traces the auxiliary space out of
K+(x) T(x) K-(x) That(x).  Its fused companions tau_2, tau_3 use 2 or 3
auxiliary copies projected onto the antisymmetric subspace, with arguments
(x, qx, ..., q^{m-1}x).

Projector convention: the antisymmetrizers used here are the orthogonal,
idempotent ones (P^2 = P, P^T = P).  Every fused object carries the projector
on both sides, so overall sign/normalization choices of the antisymmetric
basis drop out of all traces; idempotency is what the product identities
require.  As a consequence the diagonal companion matrix S in
P = R(q)...S differs from a raw reading of its display by the constant fixed
in `s_matrix` (the displayed prefactor is not idempotent-normalized).

Computation: fused transfer matrices are evaluated in the compressed basis of
the antisymmetric subspace (dimension 3, 3, 1 for m = 1, 2, 3), which is
algebraically identical to sandwiching full-space projectors and keeps the
m = 3 hierarchy cheap; `fused_transfer(..., method="full")` builds the literal
full-space products for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .linalg import embed_operator, partial_trace, partial_transpose
from .model import k_minus, k_plus, permutation_matrix, r_matrix, scalar_kernels, u_matrix
from .params import ModelParams

__all__ = [
    "SpacedOperator",
    "antisym_basis",
    "projector",
    "s_matrix",
    "monodromy",
    "transfer",
    "r_tilde",
    "fused_k",
    "fused_transfer",
]


@dataclass
class SpacedOperator:
    """Matrix on an explicit tensor-factor layout.

    ``dims[k]`` is the dimension of factor k; ``aux`` lists which factors are
    auxiliary (traced in a transfer matrix), the rest are quantum sites.
    """

    matrix: np.ndarray
    dims: tuple
    aux: tuple

    def __post_init__(self):
        D = int(np.prod(self.dims))
        if self.matrix.shape != (D, D):
            raise ValueError("matrix shape inconsistent with dims")

    @property
    def quantum(self):
        return tuple(k for k in range(len(self.dims)) if k not in self.aux)

    def trace_aux(self):
        return partial_trace(self.matrix, list(self.dims), list(self.aux))


def antisym_basis(order):
    """Orthonormal basis (columns) of the antisymmetric subspace of (C^3)^order."""
    if order == 1:
        return np.eye(3, dtype=complex)
    if order == 2:
        cols = []
        for (i, j) in ((0, 1), (0, 2), (1, 2)):
            v = np.zeros(9)
            v[i * 3 + j] = 1 / np.sqrt(2)
            v[j * 3 + i] = -1 / np.sqrt(2)
            cols.append(v)
        return np.array(cols, dtype=complex).T
    if order == 3:
        v = np.zeros(27)
        for prm in permutations((0, 1, 2)):
            inv = sum(1 for a in range(3) for b in range(a + 1, 3) if prm[a] > prm[b])
            v[prm[0] * 9 + prm[1] * 3 + prm[2]] = (-1) ** inv / np.sqrt(6)
        return np.array([v], dtype=complex).T
    raise ValueError("projector order must be 1, 2 or 3")


def projector(order):
    """Orthogonal antisymmetrizer on (C^3)^order (rank 3 for order 2, rank 1
    for order 3)."""
    U = antisym_basis(order)
    return (U @ U.conj().T).real.astype(complex)


def s_matrix(order, params: ModelParams):
    """Diagonal companion of the projector factorizations
    P_12 = R_12(q) S_12 and P_123 = R_12(q) R_13(q^2) R_23(q) S_123.

    The diagonal carries q^(-inversions) on the permutation positions; the
    scalar prefactor is pinned by idempotency of the orthogonal projector.
    """
    q = params.q
    if order == 2:
        pat = np.diag([0, 1, 1, 1 / q, 0, 1, 1 / q, 1 / q, 0]).astype(complex)
        return -pat / (2 * (q - 1))
    if order == 3:
        diag = np.zeros(27)
        for prm in permutations((1, 2, 3)):
            inv = sum(1 for a in range(3) for b in range(a + 1, 3) if prm[a] > prm[b])
            idx = (prm[0] - 1) * 9 + (prm[1] - 1) * 3 + (prm[2] - 1)
            diag[idx] = q ** (-inv)
        return np.diag(diag).astype(complex) * (-1.0 / (6 * (q - 1) ** 2 * (q**2 - 1)))
    raise ValueError("projector order must be 2 or 3")


def monodromy(x, params: ModelParams, hatted=False):
    """One-row monodromy on V_0 (x) V_1 ... V_N.

    Unhatted: R_{0N}(x/theta_N) ... R_{01}(x/theta_1); hatted:
    R_{10}(x theta_1) ... R_{N0}(x theta_N).
    """
    theta = params.theta
    N = len(theta)
    dims = [3] * (1 + N)
    out = _apply_monodromy(np.eye(3 ** (N + 1), dtype=complex), x, params, dims, 0, hatted)
    return SpacedOperator(out, tuple(dims), (0,))


def _apply_monodromy(panel, x, params, dims, aux, hatted):
    """Left-multiply `panel` by the monodromy with auxiliary factor `aux`."""
    theta = params.theta
    N = len(theta)
    first_site = len(dims) - N
    if not hatted:
        # T v applies R_{aux,1} first
        for k in range(1, N + 1):
            Rk = embed_operator(r_matrix(x / theta[k - 1], params), dims, [aux, first_site + k - 1])
            panel = Rk @ panel
    else:
        # That v applies R_{N,aux} first
        for k in range(N, 0, -1):
            Rk = embed_operator(r_matrix(x * theta[k - 1], params), dims, [first_site + k - 1, aux])
            panel = Rk @ panel
    return panel


def r_tilde(x, params: ModelParams):
    """Crossed inverse rho2(x) ((R^{t1}(x))^{-1})^{t1}, evaluated through the
    crossing relation as (U_2 R_{21}^{t1}(q^3/x) U_2^{-1})^{t1}.

    The closed form stays finite where R^{t1} itself is singular (x = 1, q^3);
    only x = 0 is excluded.  Equality with the inverse-based definition at
    generic points is covered by tests.
    """
    if x == 0:
        raise ValueError("r_tilde is singular at x = 0")
    q = params.q
    P = permutation_matrix(3)
    R21 = P @ r_matrix(q**3 / x, params) @ P
    U2 = np.kron(np.eye(3), u_matrix(params))
    inner = partial_transpose(R21, [3, 3], 0)
    return partial_transpose(U2 @ inner @ np.linalg.inv(U2), [3, 3], 0)


def _k_fused_aux(sign, m, x, params, family):
    """Unprojected fused boundary matrix on the 3^m auxiliary space.

    sign=-1 builds K-_{12..m}(x) = K^-_1(x) R_21(qx^2) ... R_m1(q^{m-1}x^2)
    K^-_{<2..m>}(qx); sign=+1 the reversed-order K+ companion with crossed-R
    factors.  The inner factor carries its own projector pair.
    """
    dims = [3] * m
    if m == 1:
        return (k_minus if sign < 0 else k_plus)(x, params, family)
    inner = _k_fused_aux(sign, m - 1, q_shift(x, params), params, family)
    Pin = projector(m - 1)
    inner = Pin @ inner @ Pin
    inner_emb = embed_operator(inner, dims, list(range(1, m)))
    q = params.q
    if sign < 0:
        out = embed_operator(k_minus(x, params, family), dims, [0])
        for j in range(2, m + 1):
            out = out @ embed_operator(r_matrix(q ** (j - 1) * x**2, params), dims, [j - 1, 0])
        return out @ inner_emb
    out = inner_emb
    for j in range(m, 1, -1):
        out = out @ embed_operator(r_tilde(q ** (j - 1) * x**2, params), dims, [j - 1, 0])
    return out @ embed_operator(k_plus(x, params, family), dims, [0])


def q_shift(x, params):
    return params.q * x


def fused_k(sign, m, x, params: ModelParams, family="A"):
    """Projected fused boundary matrix P K^{sign}_{1..m}(x) P on (C^3)^m."""
    if m not in (1, 2, 3):
        raise ValueError("fused order m must be 1, 2 or 3")
    raw = _k_fused_aux(-1 if sign < 0 else +1, m, x, params, family)
    P = projector(m)
    mat = P @ raw @ P if m > 1 else raw
    return SpacedOperator(np.asarray(mat, dtype=complex), (3,) * m, tuple(range(m)))


def fused_transfer(m, x, params: ModelParams, family="A", method="compressed"):
    """Fused double-row transfer matrix tau_m(x) on the 3^N site space.

    m = 1 is the plain transfer matrix.  The compressed method works in the
    antisymmetric-subspace basis; "full" sandwiches explicit projectors in the
    full auxiliary product space.  Both produce the same matrix.
    """
    if m not in (1, 2, 3):
        raise ValueError("fused order m must be 1, 2 or 3")
    if method == "full":
        return _fused_transfer_full(m, x, params, family)
    return _fused_transfer_compressed(m, x, params, family)


def _aux_args(m, x, q):
    return [x * q**j for j in range(m)]


def _fused_transfer_compressed(m, x, params, family):
    q = params.q
    N = params.N
    dims = [3] * m + [3] * N
    Dq = 3**N
    U = antisym_basis(m)
    dc = U.shape[1]
    Uemb = np.kron(U, np.eye(Dq))

    args = _aux_args(m, x, q)
    panel = Uemb.copy()
    for j in range(m, 0, -1):
        panel = _apply_monodromy(panel, args[j - 1], params, dims, j - 1, hatted=False)
    Tc = Uemb.conj().T @ panel

    panel = Uemb.copy()
    for j in range(m, 0, -1):
        panel = _apply_monodromy(panel, args[j - 1], params, dims, j - 1, hatted=True)
    Thc = Uemb.conj().T @ panel

    Km = U.conj().T @ _k_fused_aux(-1, m, x, params, family) @ U
    Kp = U.conj().T @ _k_fused_aux(+1, m, x, params, family) @ U

    prod = np.kron(Kp, np.eye(Dq)) @ Tc @ np.kron(Km, np.eye(Dq)) @ Thc
    return partial_trace(prod, [dc, Dq], [0])


def _fused_transfer_full(m, x, params, family):
    q = params.q
    N = params.N
    dims = [3] * m + [3] * N
    D = int(np.prod(dims))
    P = embed_operator(projector(m), dims, list(range(m))) if m > 1 else np.eye(D)

    args = _aux_args(m, x, q)
    T = np.eye(D, dtype=complex)
    for j in range(m, 0, -1):
        T = _apply_monodromy(T, args[j - 1], params, dims, j - 1, hatted=False)
    T = P @ T @ P
    Th = np.eye(D, dtype=complex)
    for j in range(m, 0, -1):
        Th = _apply_monodromy(Th, args[j - 1], params, dims, j - 1, hatted=True)
    Th = P @ Th @ P

    Km = embed_operator(fused_k(-1, m, x, params, family).matrix, dims, list(range(m)))
    Kp = embed_operator(fused_k(+1, m, x, params, family).matrix, dims, list(range(m)))
    return partial_trace(Kp @ T @ Km @ Th, dims, list(range(m)))


def transfer(x, params: ModelParams, family="A"):
    """Double-row transfer matrix tau(x) (3^N x 3^N)."""
    return fused_transfer(1, x, params, family)
