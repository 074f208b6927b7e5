"""Bandlimited sampling, greedy sample selection and fractional-order search."""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import DimensionMismatch, IndexOutOfRange, RankDeficient
from .filtering import FrequencyRegion
from .transform import vec

__all__ = [
    "SamplingPlan",
    "GridSearchResult",
    "bandlimited_basis",
    "selection_matrix",
    "reconstruction_operator",
    "greedy_sample",
    "make_plan",
    "sample",
    "recover",
    "recovery_error",
    "top_support",
    "grid_search",
    "order_grid",
]

RANK_TOL = 1e-10


@dataclass(frozen=True)
class SamplingPlan:
    w: tuple
    support: FrequencyRegion
    d: np.ndarray
    r: np.ndarray
    alpha: float = 0.0
    beta: float = 0.0

    def to_dict(self):
        return {
            "w": list(self.w),
            "support": [list(p) for p in self.support.pairs],
            "alpha": self.alpha,
            "beta": self.beta,
        }

    def to_json(self):
        return json.dumps(self.to_dict())


def bandlimited_basis(op_h, op_g, support):
    """Synthesis vectors of the support pairs, ordered by flat index (``mn x K``)."""
    if len(support) == 0:
        raise ValueError("support is empty")
    m, n = op_h.size, op_g.size
    if support.shape != (m, n):
        raise IndexOutOfRange(f"support grid {support.shape} != operator grid {(m, n)}")
    h_syn = op_h.inverse().mat
    g_syn = op_g.inverse().mat
    cols = [np.kron(h_syn[:, i], g_syn[:, j]) for i, j in support.pairs]
    return np.stack(cols, axis=1)


def selection_matrix(w, size):
    d = np.zeros((len(w), size))
    for t, k in enumerate(w):
        if not 0 <= k < size:
            raise IndexOutOfRange(f"sample index {k} outside 0..{size - 1}")
        d[t, k] = 1.0
    return d


def reconstruction_operator(d, u_k):
    """``R = U_K (D U_K)^+``; requires ``D U_K`` to have full column rank."""
    du = np.asarray(d) @ u_k
    if du.shape[0] < du.shape[1] or linalg.sigma_min(du) <= RANK_TOL:
        raise RankDeficient(
            f"sampled basis {du.shape} is rank deficient (need rank {u_k.shape[1]})"
        )
    return u_k @ linalg.pinv(du)


def greedy_sample(u_k, num_samples):
    """Pick rows one at a time, each maximizing the smallest singular value.

    Ties (within a relative 1e-12) go to the smallest row index.
    """
    u_k = np.asarray(u_k)
    rows = u_k.shape[0]
    if num_samples < 1:
        raise ValueError("num_samples must be >= 1")
    if num_samples > rows:
        raise ValueError(f"cannot draw {num_samples} samples from {rows} rows")
    chosen = []
    available = np.ones(rows, dtype=bool)
    for _ in range(num_samples):
        cand = np.flatnonzero(available)
        if chosen:
            base = np.broadcast_to(u_k[chosen], (cand.size, len(chosen), u_k.shape[1]))
            stacks = np.concatenate([base, u_k[cand][:, None, :]], axis=1)
        else:
            stacks = u_k[cand][:, None, :]
        sv = np.linalg.svd(stacks, compute_uv=False)[:, -1]
        best = sv.max()
        pick = int(cand[np.flatnonzero(sv >= best - 1e-12 * max(best, 1.0))[0]])
        chosen.append(pick)
        available[pick] = False
    return chosen


def make_plan(op_h, op_g, support, num_samples=None):
    u_k = bandlimited_basis(op_h, op_g, support)
    num_samples = len(support) if num_samples is None else num_samples
    w = greedy_sample(u_k, num_samples)
    d = selection_matrix(w, u_k.shape[0])
    r = reconstruction_operator(d, u_k)
    return SamplingPlan(tuple(w), support, d, r, op_h.order, op_g.order)


def sample(x, w):
    v = vec(x)
    w = list(w)
    for k in w:
        if not 0 <= k < v.size:
            raise IndexOutOfRange(f"sample index {k} outside 0..{v.size - 1}")
    return v[w]


def recover(samples, plan):
    samples = np.asarray(samples)
    if samples.shape != (len(plan.w),):
        raise DimensionMismatch(f"expected {len(plan.w)} samples, got {samples.shape}")
    m, n = plan.support.shape
    return (plan.r @ samples).reshape(m, n)


def recovery_error(f_rec, f):
    """Euclidean norm of the vectorized difference."""
    if np.shape(f_rec) != np.shape(f):
        raise DimensionMismatch(f"{np.shape(f_rec)} vs {np.shape(f)}")
    return float(np.linalg.norm(vec(f_rec) - vec(f)))


def top_support(coeff, size):
    """The ``size`` largest-magnitude coefficients; ties go to the lower flat index."""
    mag = np.abs(coeff).reshape(-1)
    order = np.argsort(-mag, kind="stable")[:size]
    return FrequencyRegion.from_flat(sorted(order.tolist()), coeff.shape)


def order_grid(lo, hi, step):
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return np.round(lo + step * np.arange(count), 12)


@dataclass
class GridSearchResult:
    alpha: float
    beta: float
    error: float
    table: list = field(default_factory=list)  # (stage, alpha, beta, error)


def _grid_error(x, noise, fam_h, fam_g, alpha, beta, support_size):
    op_h, op_g = fam_h.at(alpha), fam_g.at(beta)
    coeff = op_h.mat @ x @ op_g.mat.T
    support = top_support(coeff, support_size)
    u_k = bandlimited_basis(op_h, op_g, support)
    w = greedy_sample(u_k, len(noise))
    try:
        r = reconstruction_operator(selection_matrix(w, u_k.shape[0]), u_k)
    except RankDeficient:
        return math.inf
    return float(np.linalg.norm(r @ noise))


def grid_search(
    x,
    noise,
    fam_h,
    fam_g,
    support_size,
    alpha_range=(-2.0, 2.0),
    beta_range=(-2.0, 2.0),
    coarse_step=0.25,
    fine_step=0.01,
):
    """Coarse-then-fine search for the orders minimizing ``||R n||_2``.

    At every grid point the support is the ``support_size`` strongest
    coefficients of the clean signal, the samples are chosen greedily, and
    the error is the noise amplified by the reconstruction operator.  One
    refinement pass covers +-``coarse_step`` around the coarse optimum,
    clipped to the ranges.  Ties keep the lexicographically smaller pair.
    """
    x = np.asarray(x)
    noise = np.asarray(noise)
    if noise.ndim != 1 or noise.size < 1:
        raise DimensionMismatch("noise must be a non-empty vector")
    table = []
    best = (math.inf, 0.0, 0.0)

    def sweep(stage, alphas, betas, best):
        for a in alphas:
            for b in betas:
                err = _grid_error(x, noise, fam_h, fam_g, a, b, support_size)
                table.append((stage, float(a), float(b), err))
                if err < best[0] or (err == best[0] and (a, b) < (best[1], best[2])):
                    best = (err, float(a), float(b))
        return best

    best = sweep("coarse", order_grid(*alpha_range, coarse_step), order_grid(*beta_range, coarse_step), best)
    if fine_step and fine_step < coarse_step and math.isfinite(best[0]):
        k = int(round(coarse_step / fine_step))
        offsets = fine_step * np.arange(-k, k + 1)
        a_fine = np.round(best[1] + offsets, 12)
        b_fine = np.round(best[2] + offsets, 12)
        a_fine = a_fine[(a_fine >= alpha_range[0] - 1e-12) & (a_fine <= alpha_range[1] + 1e-12)]
        b_fine = b_fine[(b_fine >= beta_range[0] - 1e-12) & (b_fine <= beta_range[1] + 1e-12)]
        best = sweep("fine", a_fine, b_fine, best)
    return GridSearchResult(best[1], best[2], best[0], table)
