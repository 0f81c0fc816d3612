"""Concrete matrices of the two open two-species exclusion processes.

Local basis: |1>, |2>, |3> are the unit vectors of C^3, carrying the species
labels (1, 0, -1) in that order, so every displayed matrix is used verbatim.
Boundary family "A" is the non particle-conserving model; family "B" conserves
the number of species-"0" particles.

The rank-m bulk matrix follows the standard stochastic pattern: a(x) on
(ii,ii), b-(x) on (ij,ij) for i<j, b+(x) for i>j, c+(x) on (ij,ji) for i<j,
c-(x) for i>j.  It reproduces the displayed 9x9 matrix at m=2 and the 4x4
single-species matrix at m=1, and is gated by the Yang-Baxter property test.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import SimpleNamespace

import numpy as np

from .linalg import embed_operator, partial_trace
from .params import ModelParams

__all__ = [
    "FAMILIES",
    "MultiKVariant",
    "scalar_kernels",
    "permutation_matrix",
    "u_matrix",
    "r_matrix",
    "k_minus",
    "k_plus",
    "boundary_block_left",
    "boundary_block_right",
    "bulk_block",
    "markov_generator",
    "multispecies_k_minus",
    "boundary_builder",
    "markovian_boundary_limit",
    "single_species_objects",
]

FAMILIES = ("A", "B")


def _check_family(family):
    if family not in FAMILIES:
        raise ValueError(f"unknown boundary family {family!r}; expected one of {FAMILIES}")


def scalar_kernels(params: ModelParams):
    """Closed-form scalar functions of the spectral parameter.

    a, b+, b-, c+, c- are the bulk matrix entries; rho1/rho2 the unitarity and
    crossing-unitarity scalars; h1/h2 the boundary-matrix inversion scalars
    (family A normalization).
    """
    q = params.q
    e1, e2 = params.eta1, params.eta2
    al, be, ga, de = params.alpha, params.beta, params.gamma, params.delta

    def a(x):
        return q - x

    def b_plus(x):
        return q - q * x

    def b_minus(x):
        return 1 - x

    def c_plus(x):
        return q * x - x

    def c_minus(x):
        return (q - 1) + 0 * x

    def rho1(x):
        return a(x) * a(1 / x)

    def rho2(x):
        return b_minus(x) * b_plus(q**3 / x)

    def h1(x):
        return (q * al * x**2 - e1 * x - q * ga) * (q * al / x**2 - e1 / x - q * ga)

    def h2(x):
        return (q * be * x**2 - q * e2 * x - q**3 * de) * (
            q**7 * be / x**2 - q**4 * e2 / x - q**3 * de
        )

    return SimpleNamespace(
        a=a, b_plus=b_plus, b_minus=b_minus, c_plus=c_plus, c_minus=c_minus,
        rho1=rho1, rho2=rho2, h1=h1, h2=h2,
    )


def permutation_matrix(d):
    """Swap operator on C^d (x) C^d."""
    P = np.zeros((d * d, d * d))
    for i in range(d):
        for j in range(d):
            P[i * d + j, j * d + i] = 1.0
    return P


def u_matrix(params):
    """Crossing matrix diag{1/q, 1, q}."""
    q = params.q
    return np.diag([1 / q, 1.0, q]).astype(complex)


def r_matrix(x, params: ModelParams, m=2):
    """Bulk solution of the Yang-Baxter equation on C^{m+1} (x) C^{m+1}."""
    if m < 1:
        raise ValueError("rank m must be >= 1")
    k = scalar_kernels(params)
    d = m + 1
    R = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            rc = i * d + j
            if i == j:
                R[rc, rc] = k.a(x)
            elif i < j:
                R[rc, rc] = k.b_minus(x)
                R[rc, j * d + i] = k.c_plus(x)
            else:
                R[rc, rc] = k.b_plus(x)
                R[rc, j * d + i] = k.c_minus(x)
    return R


def k_minus(x, params: ModelParams, family="A"):
    """Left boundary reflection matrix (3x3) of the given family."""
    _check_family(family)
    q, e1 = params.q, params.eta1
    al, ga = params.alpha, params.gamma
    if family == "A":
        return np.array(
            [
                [q * (ga - al) * x**2 + e1 * x, q * ga * (x**2 - 1), q * ga * (x**2 - 1)],
                [0, -q * al * x**2 + e1 * x + q * ga, 0],
                [q * al * (x**2 - 1), q * al * (x**2 - 1), e1 * x + q * (ga - al)],
            ],
            dtype=complex,
        )
    return np.array(
        [
            [q * (ga - al) * x**2 + e1 * x, 0, q * ga * (x**2 - 1)],
            [0, q * ga * x**2 + e1 * x - q * al, 0],
            [q * al * (x**2 - 1), 0, e1 * x + q * (ga - al)],
        ],
        dtype=complex,
    )


def k_plus(x, params: ModelParams, family="A"):
    """Right boundary reflection matrix (3x3) of the given family."""
    _check_family(family)
    q, e2 = params.q, params.eta2
    be, de = params.beta, params.delta
    if family == "A":
        return np.array(
            [
                [e2 * x + q**2 * (de - q * be), be * (x**2 - q**3), be * (x**2 - q**3)],
                [0, -q * be * x**2 + q * e2 * x + q**3 * de, 0],
                [q * de * (x**2 - q**3), q * de * (x**2 - q**3),
                 q * (de - q * be) * x**2 + q**2 * e2 * x],
            ],
            dtype=complex,
        )
    return np.array(
        [
            [e2 * x + q**2 * (q * de - be), 0, be * (x**2 - q**3)],
            [0, q * de * x**2 + q * e2 * x - q**3 * be, 0],
            [q * de * (x**2 - q**3), 0, q * (q * de - be) * x**2 + q**2 * e2 * x],
        ],
        dtype=complex,
    )


def boundary_block_left(params, family="A"):
    """3x3 injection/extraction generator at site 1."""
    _check_family(family)
    q = params.q
    al, ga = params.alpha, params.gamma
    if family == "A":
        return np.array(
            [
                [-q * al, q * ga, q * ga],
                [0, -q * al - q * ga, 0],
                [q * al, q * al, -q * ga],
            ]
        )
    return np.array([[-q * al, 0, q * ga], [0, 0, 0], [q * al, 0, -q * ga]])


def boundary_block_right(params, family="A"):
    """3x3 injection/extraction generator at site N."""
    _check_family(family)
    q = params.q
    be, de = params.beta, params.delta
    if family == "A":
        return np.array(
            [
                [-q * de, q * be, q * be],
                [0, -q * de - q * be, 0],
                [q * de, q * de, -q * be],
            ]
        )
    return np.array([[-q * de, 0, q * be], [0, 0, 0], [q * de, 0, -q * be]])


def bulk_block(params):
    """9x9 nearest-neighbour exchange generator: rate q when the left species
    label exceeds the right one, rate 1 the other way.

    The boundary blocks identify basis index with ascending species label
    (|1>,|2>,|3> = species -1, 0, +1), so a swap at rate q happens from basis
    pairs (i, j) with i > j.
    """
    q = params.q
    L = np.zeros((9, 9))
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            src = i * 3 + j
            dst = j * 3 + i
            rate = 1.0 if i < j else q
            L[dst, src] = rate
            L[src, src] = -rate
    return L


def markov_generator(N, params: ModelParams, family="A"):
    """Markov generator on the 3^N configuration space; columns sum to zero."""
    _check_family(family)
    if N < 1:
        raise ValueError("N must be >= 1")
    dims = [3] * N
    L = embed_operator(boundary_block_left(params, family), dims, [0]).real
    L = L + embed_operator(boundary_block_right(params, family), dims, [N - 1]).real
    blk = bulk_block(params)
    for i in range(N - 1):
        L = L + embed_operator(blk, dims, [i, i + 1]).real
    return L.astype(complex)


# ---------------------------------------------------------------------------
# multi-species boundary matrices
# ---------------------------------------------------------------------------

VARIANTS = ("even", "odd", "type3", "type4", "type5")


@dataclass(frozen=True)
class MultiKVariant:
    tag: str
    m: int

    def __post_init__(self):
        if self.tag not in VARIANTS:
            raise ValueError(f"unknown variant {self.tag!r}; expected one of {VARIANTS}")
        if self.m < 2:
            raise ValueError("rank m must be >= 2")
        if self.tag == "even" and self.m % 2 != 0:
            raise ValueError("variant 'even' requires even rank m = 2r")
        if self.tag == "odd" and self.m % 2 != 1:
            raise ValueError("variant 'odd' requires odd rank m = 2r-1")


def _alpha_bar(params):
    """Root of q*ab^2 - eta1*ab - q*alpha*gamma = 0 continuous in q -> 1."""
    q, e1 = params.q, params.eta1
    disc = e1**2 + 4 * q**2 * params.alpha * params.gamma
    return (e1 + np.sqrt(disc)) / (2 * q)


def _gamma_bar(params):
    """Root of q*gb^2 + eta1*gb - q*alpha*gamma = 0 continuous in q -> 1."""
    q, e1 = params.q, params.eta1
    disc = e1**2 + 4 * q**2 * params.alpha * params.gamma
    return (-e1 + np.sqrt(disc)) / (2 * q)


def multispecies_k_minus(x, params: ModelParams, variant: MultiKVariant):
    """Left reflection matrix of size (m+1) for the m-species process.

    The 'type3' case analysis is read with its fourth row condition as
    i = m+1 (the printed index is not defined for general m); the 'type5'
    interior diagonal is read as (q*gamma*x/gbar - q*x^2)(gbar*x + alpha).
    Both readings are the ones that satisfy the rank-m reflection equation;
    the alternatives fail it.
    """
    q, e1 = params.q, params.eta1
    al, ga = params.alpha, params.gamma
    m = variant.m
    d = m + 1
    K = np.zeros((d, d), dtype=complex)
    diag_in = q * (ga - al) * x**2 + e1 * x
    diag_out = e1 * x + q * (ga - al)
    g_entry = q * ga * (x**2 - 1)
    a_entry = q * al * (x**2 - 1)

    if variant.tag == "even":
        r = m // 2
        for i in range(1, r + 1):
            K[i - 1, i - 1] = diag_in
            K[i - 1, 2 * r + 1 - i] = g_entry
            K[2 * r + 1 - i, i - 1] = a_entry
        for i in range(r + 2, 2 * r + 2):
            K[i - 1, i - 1] = diag_out
        K[r, r] = q * ga * x**2 + e1 * x - q * al
    elif variant.tag == "odd":
        r = (m + 1) // 2
        for i in range(1, r + 1):
            K[i - 1, i - 1] = diag_in
            K[i - 1, 2 * r - i] = g_entry
            K[2 * r - i, i - 1] = a_entry
        for i in range(r + 1, 2 * r + 1):
            K[i - 1, i - 1] = diag_out
    elif variant.tag == "type3":
        K[0, 0] = diag_in
        K[m, m] = diag_out
        for j in range(1, m + 1):
            K[0, j] = g_entry
            K[m, j - 1] = a_entry
        for i in range(1, m):
            K[i, i] = -q * al * x**2 + e1 * x + q * ga
    elif variant.tag == "type4":
        ab = _alpha_bar(params)
        _check_bar_constraint(params, ab, which="alpha")
        K[0, 0] = q * (ga - al) * x**3 + e1 * x**2
        for j in range(1, m + 1):
            K[0, j] = q * ga * x * (x**2 - 1)
        K[1, 0] = q * al * x * (x**2 - 1)
        K[1, 1] = e1 * x**2 + q * (ga - al) * x
        for j in range(2, m + 1):
            K[1, j] = q * ab * (x**2 - 1)
        for i in range(2, m + 1):
            K[i, i] = (q - q * al * x / ab) * (ga * x + ab)
    else:  # type5
        gb = _gamma_bar(params)
        _check_bar_constraint(params, gb, which="gamma")
        K[m, m] = diag_out
        for j in range(m):
            K[m, j] = a_entry
        K[m - 1, m] = g_entry
        K[m - 1, m - 1] = diag_in
        for j in range(m - 1):
            K[m - 1, j] = q * gb * x * (x**2 - 1)
        for i in range(m - 1):
            K[i, i] = (q * ga * x / gb - q * x**2) * (gb * x + al)
    return K


def _check_bar_constraint(params, bar, which):
    q = params.q
    if which == "alpha":
        if bar == 0 and params.alpha != 0:
            raise ValueError("derived parameter alpha-bar inconsistent (degenerate root)")
        resid = params.alpha - (bar + bar * (q - 1) / (q * (params.gamma + bar)))
    else:
        if bar == 0 and params.gamma != 0:
            raise ValueError("derived parameter gamma-bar inconsistent (degenerate root)")
        resid = params.gamma - (bar + bar * (1 - q) / (q * (params.alpha + bar)))
    if abs(resid) > 1e-9 * max(1.0, params.alpha, params.gamma):
        raise ValueError(f"derived parameter {which}-bar violates its constraint (resid {resid:.2e})")


# ---------------------------------------------------------------------------
# recursive boundary construction
# ---------------------------------------------------------------------------

def basic_boundary(params):
    """2x2 single-species boundary generator."""
    q, al, ga = params.q, params.alpha, params.gamma
    return np.array([[-q * al, q * ga], [q * al, -q * ga]])


def _check_markov_block(mat):
    mat = np.asarray(mat, dtype=float)
    if mat.shape[0] != mat.shape[1]:
        raise ValueError("boundary block must be square")
    if np.abs(mat.sum(axis=0)).max() > 1e-9 * max(1.0, np.abs(mat).max()):
        raise ValueError("boundary block columns must sum to zero")
    return mat


def boundary_builder(base, rule, params: ModelParams, primed=None):
    """Grow an integrable boundary generator by one of the four recursions.

    base  -- list of input boundary blocks (rules 1, 3, 4 take one block,
             rule 2 takes two and stacks the second in the new corner).
    rule  -- 1: extend by an inert state (zero new row/column).
             2: extend by two states carrying a fresh single-species block.
             3: extend by one state feeding the top two states with primed
                rates (q*gamma', q*alpha'); primed = (alpha', gamma').
             4: extend by one state feeding the previous two states with the
                unprimed rates; the base must end in a single-species block.
    """
    blocks = [_check_markov_block(b) for b in base]
    q = params.q
    if rule == 1:
        (b,) = blocks
        n = b.shape[0]
        out = np.zeros((n + 1, n + 1))
        out[:n, :n] = b
        return out
    if rule == 2:
        b, tail = blocks
        n, t = b.shape[0], tail.shape[0]
        out = np.zeros((n + t, n + t))
        out[:n, :n] = b
        out[n:, n:] = tail
        return out
    if rule == 3:
        (b,) = blocks
        if primed is None:
            raise ValueError("rule 3 needs primed = (alpha', gamma')")
        alp, gp = primed
        n = b.shape[0]
        out = np.zeros((n + 1, n + 1))
        out[:n, :n] = b
        out[0, n] = q * gp
        out[1, n] = q * alp
        out[n, n] = -q * (alp + gp)
        return out
    if rule == 4:
        (b,) = blocks
        n = b.shape[0]
        corner = b[n - 2 :, n - 2 :]
        if np.abs(corner - basic_boundary(params)).max() > 1e-9 * max(1.0, np.abs(b).max()):
            raise ValueError("rule 4 requires the base to end in the basic single-species block")
        out = np.zeros((n + 1, n + 1))
        out[:n, :n] = b
        out[n - 2, n] = q * params.gamma
        out[n - 1, n] = q * params.alpha
        out[n, n] = -q * (params.alpha + params.gamma)
        return out
    raise ValueError("rule must be 1, 2, 3 or 4")


def markovian_boundary_limit(k_of_x, dim):
    """Boundary generator encoded by a stochastic reflection matrix.

    Off-diagonal rates are K'(1)/2; diagonals restore zero column sums.
    Valid whenever K(1) is proportional to the identity.
    """
    h = 1e-6
    Kp = (k_of_x(1.0 + h) - k_of_x(1.0 - h)) / (2 * h) / 2.0
    L = Kp.real.copy()
    np.fill_diagonal(L, 0.0)
    np.fill_diagonal(L, -L.sum(axis=0))
    return L


# ---------------------------------------------------------------------------
# single-species degeneration
# ---------------------------------------------------------------------------

def _single_species_k(x, params: ModelParams):
    q, e1, e2 = params.q, params.eta1, params.eta2
    al, be, ga, de = params.alpha, params.beta, params.gamma, params.delta
    K2m = np.array(
        [
            [q * (ga - al) * x**2 + e1 * x, q * ga * (x**2 - 1)],
            [q * al * (x**2 - 1), e1 * x + q * (ga - al)],
        ],
        dtype=complex,
    )
    K2p = np.array(
        [
            [e2 * x + q**2 * (de - be), be * (x**2 - q**2)],
            [q * de * (x**2 - q**2), q * (de - be) * x**2 + q * e2 * x],
        ],
        dtype=complex,
    )
    return K2m, K2p


def single_species_transfer(x, params: ModelParams):
    """Double-row transfer matrix (dimension 2^N) of the open single-species
    process, with the same inhomogeneities as the parent chain."""
    theta = params.theta
    N = len(theta)
    dims = [2] * (1 + N)
    D = 2 ** (N + 1)
    T = np.eye(D, dtype=complex)
    for k in range(N, 0, -1):
        T = T @ embed_operator(r_matrix(x / theta[k - 1], params, m=1), dims, [0, k])
    That = np.eye(D, dtype=complex)
    for k in range(1, N + 1):
        That = That @ embed_operator(r_matrix(x * theta[k - 1], params, m=1), dims, [k, 0])
    K2m, K2p = _single_species_k(x, params)
    Kp = embed_operator(K2p, dims, [0])
    Km = embed_operator(K2m, dims, [0])
    return partial_trace(Kp @ T @ Km @ That, dims, [0])


def single_species_objects(x, params: ModelParams):
    """4x4 bulk matrix, 2x2 boundary matrices and the 2^N double-row transfer
    matrix of the open single-species process reached in the zero-"0" sector."""
    K2m, K2p = _single_species_k(x, params)
    return SimpleNamespace(
        R=r_matrix(x, params, m=1),
        k_minus=K2m,
        k_plus=K2p,
        tau=single_species_transfer(x, params),
    )
