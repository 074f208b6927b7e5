"""Dense complex linear algebra: normal eigendecompositions and fractional powers.

All functions are pure; inputs are never modified.
"""

import os
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import DimensionOverflow, NoConvergence, NotNormal, ZeroEigenvalue

__all__ = [
    "SpectralDecomposition",
    "eig_normal",
    "principal_log",
    "frac_power",
    "kron",
    "pinv",
    "sigma_min",
    "max_dim",
]

# eigenvalues closer than this are treated as one eigenspace
CLUSTER_TOL = 1e-9
# |Im| below this (relative to |z|) on the negative real axis snaps to real
NEG_AXIS_TOL = 1e-12


def max_dim():
    """Upper bound on matrix dimensions produced by :func:`kron`."""
    return int(os.environ.get("HGFRFT_MAX_DIM", 16384))


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenpairs of a normal matrix, ``a = q @ diag(lam) @ q^H``.

    Columns of ``q`` are orthonormal and ``lam`` is sorted by
    (real part, imaginary part).
    """

    q: np.ndarray
    lam: np.ndarray

    @property
    def n(self):
        return self.lam.shape[0]

    def reconstruct(self):
        return (self.q * self.lam) @ self.q.conj().T


def _as_square(a):
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def _phase_normalize(q):
    """Make the first largest-magnitude entry of each column real positive."""
    q = q.copy()
    for k in range(q.shape[1]):
        col = q[:, k]
        mag = np.abs(col)
        idx = int(np.flatnonzero(mag >= mag.max() * (1 - 1e-9))[0])
        q[:, k] = col * (np.conj(col[idx]) / mag[idx])
    return q


def _orthonormalize_clusters(q, lam):
    # Re-orthonormalize each eigenspace jointly; F^beta is basis independent
    # on a cluster, so this only guards against eigensolver drift.
    q = q.copy()
    start = 0
    n = lam.shape[0]
    while start < n:
        stop = start + 1
        while stop < n and abs(lam[stop] - lam[start]) <= CLUSTER_TOL:
            stop += 1
        if stop - start > 1:
            block, _ = np.linalg.qr(q[:, start:stop])
            q[:, start:stop] = block
        start = stop
    return q


def _sort_eigenpairs(q, lam):
    q = _phase_normalize(q)
    keys = []
    for k in range(lam.shape[0]):
        vec = np.round(q[:, k], 9)
        keys.append(
            (
                round(float(lam[k].real) / CLUSTER_TOL) * CLUSTER_TOL,
                round(float(lam[k].imag) / CLUSTER_TOL) * CLUSTER_TOL,
                tuple(vec.real.tolist()),
                tuple(vec.imag.tolist()),
                k,
            )
        )
    order = [key[-1] for key in sorted(keys)]
    return q[:, order], lam[order]


def eig_normal(a):
    """Unitary eigendecomposition of a normal matrix.

    Hermitian input goes through ``eigh``; other normal matrices use the
    complex Schur form, whose triangular factor is diagonal for normal
    matrices, so the Schur vectors are an orthonormal eigenbasis.

    Raises
    ------
    NotNormal
        If ``||A A^H - A^H A||_max > 1e-8 ||A||_max^2``.
    NoConvergence
        If LAPACK fails.
    """
    a = _as_square(a).astype(complex)
    scale = np.abs(a).max() if a.size else 0.0
    ah = a.conj().T
    if np.abs(a @ ah - ah @ a).max() > 1e-8 * scale**2:
        raise NotNormal("matrix is not normal")
    try:
        if np.abs(a - ah).max() <= 1e-12 * max(scale, 1.0):
            lam, q = sla.eigh((a + ah) / 2)
            lam = lam.astype(complex)
        else:
            t, q = sla.schur(a, output="complex")
            lam = np.diag(t).copy()
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NoConvergence(str(exc)) from exc
    q, lam = _sort_eigenpairs(q, lam)
    q = _phase_normalize(_orthonormalize_clusters(q, lam))
    return SpectralDecomposition(q=q, lam=lam)


def _snap(z):
    z = complex(z)
    if z.real < 0 and abs(z.imag) <= NEG_AXIS_TOL * max(1.0, abs(z)):
        return complex(z.real, 0.0)
    return z


def principal_log(z):
    """Principal branch of the complex logarithm, argument in (-pi, pi].

    >>> principal_log(-1)
    3.141592653589793j
    """
    z = complex(z)
    if z == 0:
        raise ZeroEigenvalue("logarithm of zero")
    # atan2(+0.0, x<0) = +pi, which is the branch we want on the cut
    im = z.imag if z.imag != 0 else 0.0
    return complex(np.log(abs(z)), np.arctan2(im, z.real))


def frac_power(dec, beta):
    """``Q diag(lam**beta) Q^H`` using the principal branch for each eigenvalue."""
    lam = np.array([_snap(z) for z in dec.lam])
    if np.any(lam == 0):
        raise ZeroEigenvalue("fractional power of a singular matrix")
    beta = float(beta)
    if beta == 0.0:
        return np.eye(dec.n, dtype=complex)
    logs = np.array([principal_log(z) for z in lam])
    return (dec.q * np.exp(beta * logs)) @ dec.q.conj().T


def kron(a, b, cap=None):
    """Kronecker product with a guard on the output size."""
    a = np.asarray(a)
    b = np.asarray(b)
    cap = max_dim() if cap is None else cap
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if max(rows, cols) > cap:
        raise DimensionOverflow(f"kron result {rows}x{cols} exceeds cap {cap}")
    return np.kron(a, b)


def pinv(a, rtol=1e-12):
    """Moore-Penrose pseudo-inverse; singular values below ``rtol * s_max`` are dropped."""
    if rtol <= 0:
        raise ValueError("rtol must be positive")
    a = np.asarray(a)
    try:
        u, s, vh = np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    if s.size == 0:
        return np.zeros((a.shape[1], a.shape[0]), dtype=a.dtype)
    keep = s > rtol * s[0]
    s_inv = np.zeros_like(s)
    s_inv[keep] = 1.0 / s[keep]
    return (vh.conj().T * s_inv) @ u.conj().T


def sigma_min(a):
    """Smallest singular value (of the ``min(rows, cols)`` available)."""
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.linalg.svd(a, compute_uv=False)[-1])
