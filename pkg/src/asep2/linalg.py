"""Dense complex linear algebra and tensor-product utilities.

Everything downstream works with plain ``numpy.ndarray`` matrices of dtype
complex128 ("CMatrix").  Tensor factors are ordered left to right, so a matrix
acting on factors ``(d_0, d_1, ..., d_{n-1})`` has row/column index
``i_0 * d_1*...*d_{n-1} + ... + i_{n-1}``, matching ``numpy.kron`` order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as _sla

__all__ = [
    "SingularMatrixError",
    "EigenPair",
    "PolyMatrix",
    "kron",
    "kron_all",
    "embed_operator",
    "permute_factors",
    "partial_transpose",
    "partial_trace",
    "invert",
    "eigen",
    "cluster_eigenvalues",
    "interpolation_nodes",
    "poly_fit",
    "fit_matrix_function",
    "poly_derivative",
]


class SingularMatrixError(np.linalg.LinAlgError):
    """Raised when a matrix inversion meets a numerically singular input."""

    def __init__(self, pivot: float):
        self.pivot = pivot
        super().__init__(f"matrix is numerically singular (smallest pivot {pivot:.3e})")


def kron(a, b):
    """Kronecker product of two matrices."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def kron_all(*mats):
    out = np.asarray(mats[0], dtype=complex)
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def _check_dims(m, dims):
    D = int(np.prod(dims))
    if m.shape != (D, D):
        raise ValueError(f"matrix shape {m.shape} does not match factor dims {dims}")


def permute_factors(m, dims, perm):
    """Reorder the tensor factors of a square matrix.

    ``perm[k]`` is the old position of the factor that ends up at position k.
    """
    m = np.asarray(m)
    _check_dims(m, dims)
    n = len(dims)
    t = m.reshape(list(dims) + list(dims))
    t = t.transpose(list(perm) + [n + p for p in perm])
    new_dims = [dims[p] for p in perm]
    D = int(np.prod(dims))
    return t.reshape(D, D), new_dims


def embed_operator(op, dims, sites):
    """Embed ``op`` (acting on the listed tensor factors, in that slot order)
    into the full product space with factor dimensions ``dims``."""
    op = np.asarray(op, dtype=complex)
    n = len(dims)
    sites = list(sites)
    rest = [k for k in range(n) if k not in sites]
    d_rest = int(np.prod([dims[k] for k in rest])) if rest else 1
    big = np.kron(op, np.eye(d_rest))
    order = sites + rest  # factor order big currently acts in
    inv = [order.index(k) for k in range(n)]
    out, _ = permute_factors(big, [dims[k] for k in order], inv)
    return out


def partial_transpose(m, dims, which):
    """Transpose a single tensor factor of a square matrix."""
    m = np.asarray(m)
    _check_dims(m, dims)
    n = len(dims)
    t = m.reshape(list(dims) + list(dims))
    axes = list(range(2 * n))
    axes[which], axes[n + which] = n + which, which
    D = int(np.prod(dims))
    return t.transpose(axes).reshape(D, D)


def partial_trace(m, dims, which):
    """Trace out the listed tensor factors, acting as identity on the rest."""
    m = np.asarray(m)
    _check_dims(m, dims)
    t = m.reshape(list(dims) + list(dims))
    n = len(dims)
    for w in sorted(which, reverse=True):
        t = np.trace(t, axis1=w, axis2=w + n)
        n -= 1
    d = int(np.prod([dims[k] for k in range(len(dims)) if k not in which]))
    return t.reshape(d, d)


def invert(m, cond_cap=1e13):
    """Inverse of a square matrix; raises SingularMatrixError when the smallest
    singular value indicates conditioning beyond ``cond_cap``."""
    m = np.asarray(m, dtype=complex)
    sv = np.linalg.svd(m, compute_uv=False)
    if sv[-1] == 0 or sv[0] / sv[-1] > cond_cap:
        raise SingularMatrixError(float(sv[-1]))
    return np.linalg.inv(m)


@dataclass
class EigenPair:
    """One spectral triple of a general complex matrix.

    ``left`` is the left eigenvector w with w^H m = value * w^H; ``defective``
    marks members of a degenerate cluster whose left/right overlap collapses
    (nontrivial Jordan structure at working precision).
    """

    value: complex
    right: np.ndarray
    left: np.ndarray
    defective: bool = False


def eigen(m, defect_tol=1e-8):
    """Complete spectrum of a general (non-Hermitian) complex matrix.

    Returns a list of EigenPair sorted by (real, imag) of the eigenvalue.
    Backed by LAPACK via scipy (balanced Hessenberg + shifted QR); left and
    right vectors are returned index-paired and are biorthogonal outside
    degenerate clusters.
    """
    m = np.asarray(m, dtype=complex)
    w, vl, vr = _sla.eig(m, left=True, right=True)
    order = np.lexsort((w.imag.round(12), w.real.round(12)))
    w, vl, vr = w[order], vl[:, order], vr[:, order]
    scale = max(1.0, float(np.abs(w).max()))
    pairs = []
    for k in range(len(w)):
        overlap = abs(np.vdot(vl[:, k], vr[:, k]))
        pairs.append(
            EigenPair(
                value=complex(w[k]),
                right=vr[:, k].copy(),
                left=vl[:, k].copy(),
                defective=bool(overlap < defect_tol * scale / max(scale, 1.0)),
            )
        )
    return pairs


def cluster_eigenvalues(values, rel_gap=1e-7):
    """Group near-coincident eigenvalues.

    Single linkage on the complex values with threshold ``rel_gap`` relative to
    the overall spectral scale; returns a list of (mean value, multiplicity)
    sorted by (real, imag).
    """
    vals = np.asarray(list(values), dtype=complex)
    if vals.size == 0:
        return []
    scale = max(1.0, float(np.abs(vals).max()))
    tol = rel_gap * scale
    order = np.lexsort((vals.imag, vals.real))
    vals = vals[order]
    clusters = [[vals[0]]]
    for v in vals[1:]:
        if min(abs(v - u) for u in clusters[-1]) <= tol:
            clusters[-1].append(v)
        else:
            clusters.append([v])
    out = [(complex(np.mean(c)), len(c)) for c in clusters]
    out.sort(key=lambda t: (t[0].real, t[0].imag))
    return out


@dataclass
class PolyMatrix:
    """Matrix-valued polynomial; ``coeffs[k]`` multiplies x**k."""

    coeffs: np.ndarray  # shape (degree+1, n, n)

    @property
    def degree(self):
        return self.coeffs.shape[0] - 1

    @property
    def shape(self):
        return self.coeffs.shape[1:]

    def __call__(self, x):
        out = np.zeros(self.shape, dtype=complex)
        for c in self.coeffs[::-1]:
            out = out * x + c
        return out

    def derivative(self, x):
        out = np.zeros(self.shape, dtype=complex)
        for k in range(self.degree, 0, -1):
            out = out * x + k * self.coeffs[k]
        return out

    def leading(self):
        return self.coeffs[-1]


def interpolation_nodes(degree, radius=1.5, phase=0.23):
    """degree+1 scaled roots of unity; the slight phase offset keeps the nodes
    away from the real axis where transfer-matrix kernels have poles."""
    k = np.arange(degree + 1)
    return radius * np.exp(2j * np.pi * (k + phase) / (degree + 1))


def poly_fit(samples, degree):
    """Interpolating PolyMatrix through ``samples`` = [(x, matrix), ...].

    Requires at least degree+1 pairwise-distinct nodes; uses the first
    degree+1 of them.  Raises on repeated nodes or unusable conditioning.
    """
    if len(samples) < degree + 1:
        raise ValueError(f"need {degree + 1} samples for degree {degree}, got {len(samples)}")
    pts = [np.asarray(s[0], dtype=complex).item() for s in samples[: degree + 1]]
    mats = [np.asarray(s[1], dtype=complex) for s in samples[: degree + 1]]
    xs = np.array(pts)
    if np.min(np.abs(xs[:, None] - xs[None, :]) + np.eye(len(xs))) < 1e-14:
        raise ValueError("repeated interpolation nodes")
    V = np.vander(xs, degree + 1, increasing=True)
    cond = np.linalg.cond(V)
    if cond > 1e12:
        raise ValueError(f"Vandermonde conditioning failure (cond {cond:.3e})")
    flat = np.array([m.reshape(-1) for m in mats])
    co = np.linalg.solve(V, flat)
    shape = mats[0].shape
    return PolyMatrix(co.reshape(degree + 1, *shape))


def fit_matrix_function(f, degree, radius=1.5):
    """poly_fit of a matrix-valued function sampled at the default nodes."""
    nodes = interpolation_nodes(degree, radius)
    return poly_fit([(x, f(x)) for x in nodes], degree)


def poly_derivative(p: PolyMatrix, x):
    """Exact derivative of the interpolant at x."""
    return p.derivative(x)
