"""Signal generators and spectral metrics for the experiments."""

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, IndexOutOfRange, UnstableSpeed
from .transform import JointSpectrum, synthesis_matrix

__all__ = [
    "ChirpSpec",
    "DiffusionKind",
    "DiffusionSpec",
    "chirp_field",
    "synthesize_bandlimited",
    "add_gaussian_noise",
    "dft_frequencies",
    "heat_spectral_solution",
    "heat_iteration",
    "wave_spectral_solution",
    "energy_compactness",
    "peak_to_energy",
]


@dataclass(frozen=True)
class ChirpSpec:
    """Linear chirp per vertex; vertex ``i`` (1-based) starts at ``f0 + df*i``
    and sweeps ``b0 + db*i`` Hz over ``duration`` seconds."""

    f0: float = 50.0
    b0: float = 150.0
    duration: float = 0.2
    samples: int = 200
    df: float = 5.0
    db: float = 10.0

    def __post_init__(self):
        if self.duration <= 0:
            raise ValueError("duration must be positive")
        if self.samples < 2:
            raise ValueError("need at least two samples")
        if self.f0 < 0 or self.b0 < 0:
            raise ValueError("f0 and b0 must be non-negative")

    def start_frequency(self, i):
        return self.f0 + self.df * i

    def bandwidth(self, i):
        return self.b0 + self.db * i

    def times(self):
        return np.arange(self.samples) * self.duration / self.samples


class DiffusionKind(enum.Enum):
    HEAT = "heat"
    WAVE = "wave"


@dataclass(frozen=True)
class DiffusionSpec:
    s: float
    t_horizon: int
    kind: DiffusionKind = DiffusionKind.HEAT

    def stable(self, lam):
        lam = np.asarray(lam, dtype=float)
        if self.kind is DiffusionKind.HEAT:
            return bool(np.all(np.abs(1 - self.s * lam) <= 1 + 1e-12))
        lmax = lam.max(initial=0.0)
        return lmax <= 0 or self.s < 4.0 / lmax


def chirp_field(spec, n):
    """``m x n`` joint signal; column ``j`` holds the chirp of vertex ``i = j + 1``."""
    if n < 1:
        raise ValueError("need at least one vertex")
    t = spec.times()[:, None]
    i = np.arange(1, n + 1)[None, :]
    f0 = spec.start_frequency(i)
    mu = spec.bandwidth(i) / spec.duration
    return np.exp(2j * np.pi * (f0 * t + 0.5 * mu * t**2))


def synthesize_bandlimited(coeffs, op_h, op_g):
    """Sum of ``c * column_k`` of the synthesis matrix for ``{k: c}``."""
    m, n = op_h.size, op_g.size
    out = np.zeros(m * n, dtype=complex)
    if not coeffs:
        return out.reshape(m, n)
    u = synthesis_matrix(op_h, op_g)
    for k, c in coeffs.items():
        if not 0 <= k < m * n:
            raise IndexOutOfRange(f"flat index {k} outside 0..{m * n - 1}")
        out += c * u[:, k]
    return out.reshape(m, n)


def add_gaussian_noise(x, sigma, seed):
    """Circular complex Gaussian noise with total variance ``sigma**2`` per entry."""
    if sigma < 0:
        raise ValueError("sigma must be non-negative")
    x = np.asarray(x)
    if sigma == 0:
        return x.copy()
    rng = np.random.default_rng(seed)
    scale = sigma / np.sqrt(2.0)
    noise = rng.normal(0.0, scale, x.shape) + 1j * rng.normal(0.0, scale, x.shape)
    return x + noise


def dft_frequencies(m):
    return 2 * np.pi * np.arange(m) / m


def _spectral_inputs(y, lam, omega):
    coeff = y.coeff if isinstance(y, JointSpectrum) else np.asarray(y)
    lam = np.asarray(lam, dtype=float)
    omega = np.asarray(omega, dtype=float)
    if coeff.shape != (omega.size, lam.size):
        raise DimensionMismatch(
            f"spectrum {coeff.shape} needs {omega.size} frequencies x {lam.size} eigenvalues"
        )
    return coeff, lam, omega


def _wrap(y, coeff):
    if isinstance(y, JointSpectrum):
        return JointSpectrum(coeff, y.alpha, y.beta)
    return JointSpectrum(coeff, 1.0, 1.0)


def heat_spectral_solution(y, lam, omega, s, t_horizon):
    """Closed-form heat spectrum: each entry times ``(a^T - 1) / (a - 1) / sqrt(m)``.

    ``a = (1 - s*lam_l) exp(-1j*omega_k)``.  Rows of the spectrum index the
    Hilbert frequencies ``omega`` and columns the graph eigenvalues ``lam``.
    """
    coeff, lam, omega = _spectral_inputs(y, lam, omega)
    m = omega.size
    a = (1 - s * lam)[None, :] * np.exp(-1j * omega)[:, None]
    near_one = np.abs(a - 1) < 1e-12
    safe = np.where(near_one, 2.0, a)
    factor = np.where(near_one, float(t_horizon), (safe**t_horizon - 1) / (safe - 1))
    return _wrap(y, coeff * factor / np.sqrt(m))


def heat_iteration(f1, laplacian, s, t_horizon):
    """Rows ``t = 0..T-1`` of ``(I - sL)^t f1``."""
    step = np.eye(laplacian.shape[0]) - s * np.asarray(laplacian)
    out = [np.asarray(f1, dtype=complex)]
    for _ in range(t_horizon - 1):
        out.append(step @ out[-1])
    return np.stack(out)


def wave_spectral_solution(y, lam, omega, s, t_horizon):
    """Each entry times ``sum_t cos(t*arccos(1 - s*lam_l/2)) exp(-1j*omega_k*t)``, t < T."""
    coeff, lam, omega = _spectral_inputs(y, lam, omega)
    lmax = lam.max(initial=0.0)
    if s < 0 or (lmax > 0 and s >= 4.0 / lmax):
        raise UnstableSpeed(f"wave speed {s} violates 0 <= s < 4/lambda_max = {4.0 / lmax if lmax > 0 else np.inf}")
    theta = np.arccos(np.clip(1 - s * lam / 2, -1.0, 1.0))
    t = np.arange(t_horizon)
    cosines = np.cos(np.outer(t, theta))  # T x n
    phases = np.exp(-1j * np.outer(omega, t))  # m x T
    return _wrap(y, coeff * (phases @ cosines))


def energy_compactness(spec, percentiles):
    """Normalized error after discarding the weakest ``p`` percent of coefficients.

    For each ``p`` the ``floor(p/100 * N)`` smallest-magnitude coefficients
    are zeroed.  Returns an array of ``(p, error)`` rows.
    """
    coeff = spec.coeff if isinstance(spec, JointSpectrum) else np.asarray(spec)
    flat = coeff.reshape(-1)
    total = np.linalg.norm(flat)
    order = np.argsort(np.abs(flat), kind="stable")
    cum = np.concatenate([[0.0], np.cumsum(np.abs(flat[order]) ** 2)])
    rows = []
    for p in percentiles:
        if not 0 <= p <= 100:
            raise ValueError(f"percentile {p} outside [0, 100]")
        dropped = int(np.floor(p / 100.0 * flat.size + 1e-9))
        err = np.sqrt(cum[dropped]) / total if total > 0 else 0.0
        rows.append((float(p), float(min(err, 1.0))))
    return np.array(rows)


def peak_to_energy(v):
    v = np.asarray(v)
    return float(np.abs(v).max() / np.linalg.norm(v))
