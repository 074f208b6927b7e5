"""Fractional-domain filters: convolution, bandpass projections, shift invariance."""

import json
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimensionMismatch, IndexOutOfRange
from .transform import JointSpectrum, hgfrft, inverse_hgfrft, synthesis_matrix

__all__ = [
    "FrequencyRegion",
    "LinearFilter",
    "frequency_range",
    "region_from_box",
    "convolve",
    "bandpass",
    "bandpass_filter",
    "convolution_filter",
    "commutes_with",
    "is_shift_invariant",
    "diagonal_in_basis",
]


@dataclass(frozen=True)
class FrequencyRegion:
    """Finite set of joint spectral index pairs ``(i, j)`` on an ``m x n`` grid."""

    pairs: tuple
    shape: tuple

    def __init__(self, pairs, shape):
        m, n = shape
        clean = sorted({(int(i), int(j)) for i, j in pairs})
        for i, j in clean:
            if not (0 <= i < m and 0 <= j < n):
                raise IndexOutOfRange(f"pair ({i}, {j}) outside {m}x{n}")
        object.__setattr__(self, "pairs", tuple(clean))
        object.__setattr__(self, "shape", (int(m), int(n)))

    @classmethod
    def from_flat(cls, indices, shape):
        n = shape[1]
        for k in indices:
            if not 0 <= k < shape[0] * n:
                raise IndexOutOfRange(f"flat index {k} outside {shape[0]}x{n}")
        return cls([divmod(int(k), n) for k in indices], shape)

    @classmethod
    def full(cls, shape):
        return cls([(i, j) for i in range(shape[0]) for j in range(shape[1])], shape)

    @property
    def flat(self):
        n = self.shape[1]
        return [i * n + j for i, j in self.pairs]

    def mask(self):
        out = np.zeros(self.shape, dtype=bool)
        for i, j in self.pairs:
            out[i, j] = True
        return out

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def to_json(self):
        return json.dumps([list(p) for p in self.pairs])

    @classmethod
    def from_json(cls, text, shape):
        return cls([tuple(p) for p in json.loads(text)], shape)


@dataclass(frozen=True)
class LinearFilter:
    """Dense operator on vectorized joint signals (``mn x mn``)."""

    mat: np.ndarray

    def __post_init__(self):
        if not np.all(np.isfinite(self.mat)):
            raise ValueError("filter has non-finite entries")

    def __call__(self, x):
        x = np.asarray(x)
        return (self.mat @ x.reshape(-1)).reshape(x.shape)


def frequency_range(spec, tol=None):
    """Indices of the coefficients whose magnitude exceeds ``tol``.

    The default threshold is ``1e-10`` times the largest magnitude.
    """
    mag = np.abs(spec.coeff)
    if tol is None:
        tol = 1e-10 * mag.max() if mag.size else 0.0
    if tol < 0:
        raise ValueError("tol must be non-negative")
    idx = np.argwhere(mag > tol)
    return FrequencyRegion([tuple(p) for p in idx], mag.shape)


def region_from_box(hilbert_values, graph_values, hilbert_box, graph_box):
    """Spectral pairs whose eigenvalues fall inside a rectangle.

    The Hilbert side is compared through reciprocals of its eigenvalues;
    both boxes are closed ``(lo, hi)`` intervals on the real part.
    """
    hv = np.asarray(hilbert_values)
    gv = np.asarray(graph_values)
    inv = 1.0 / hv.real
    rows = np.flatnonzero((inv >= hilbert_box[0]) & (inv <= hilbert_box[1]))
    cols = np.flatnonzero((gv.real >= graph_box[0]) & (gv.real <= graph_box[1]))
    return FrequencyRegion([(i, j) for i in rows for j in cols], (hv.size, gv.size))


def _same_shape(*arrays):
    shapes = {np.shape(a) for a in arrays}
    if len(shapes) != 1:
        raise DimensionMismatch(f"shape mismatch: {sorted(shapes)}")


def convolve(g, f, op_h, op_g):
    """Inverse transform of the pointwise product of the two spectra."""
    _same_shape(g, f)
    prod = hgfrft(g, op_h, op_g).coeff * hgfrft(f, op_h, op_g).coeff
    spec = JointSpectrum(prod, op_h.order, op_g.order)
    return inverse_hgfrft(spec, op_h.inverse(), op_g.inverse())


def bandpass(f, region, op_h, op_g):
    spec = hgfrft(f, op_h, op_g)
    if region.shape != spec.shape:
        raise IndexOutOfRange(f"region grid {region.shape} != spectrum grid {spec.shape}")
    kept = JointSpectrum(spec.coeff * region.mask(), spec.alpha, spec.beta)
    return inverse_hgfrft(kept, op_h.inverse(), op_g.inverse())


def bandpass_filter(region, op_h, op_g):
    """Matrix of the projection onto the selected synthesis vectors."""
    u = synthesis_matrix(op_h, op_g)[:, region.flat]
    return LinearFilter(u @ u.conj().T)


def convolution_filter(g, op_h, op_g):
    """Matrix of ``f -> g * f``."""
    u = synthesis_matrix(op_h, op_g)
    eig = hgfrft(g, op_h, op_g).coeff.reshape(-1)
    return LinearFilter((u * eig) @ u.conj().T)


def commutes_with(filt, op, tol=1e-9):
    l = filt.mat if isinstance(filt, LinearFilter) else np.asarray(filt)
    op = np.asarray(op)
    if l.shape != op.shape or l.shape[0] != l.shape[1]:
        raise DimensionMismatch(f"filter {l.shape} vs operator {op.shape}")
    residual = float(np.abs(op @ l - l @ op).max())
    return residual <= tol, residual


def is_shift_invariant(filt, op_b, op_a, tol=1e-9):
    """True when the filter commutes with ``B (x) I`` and ``I (x) A``."""
    op_b = np.asarray(op_b)
    op_a = np.asarray(op_a)
    l = filt.mat if isinstance(filt, LinearFilter) else np.asarray(filt)
    m, n = op_b.shape[0], op_a.shape[0]
    if l.shape != (m * n, m * n):
        raise DimensionMismatch(f"filter {l.shape} does not act on {m}x{n} signals")
    ok_b, _ = commutes_with(l, linalg.kron(op_b, np.eye(n)), tol)
    ok_a, _ = commutes_with(l, linalg.kron(np.eye(m), op_a), tol)
    return ok_b and ok_a


def diagonal_in_basis(basis, values):
    """``V diag(values) V^{-1}``: a shift whose eigenvectors are the columns of ``basis``."""
    basis = np.asarray(basis)
    return (basis * np.asarray(values)) @ np.linalg.inv(basis)
