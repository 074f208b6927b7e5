"""Graph fractional Fourier transform for signals valued in a Hilbert space.

Joint signals are ``m x n`` arrays (Hilbert grid x graph vertices); the
transform applies a fractional power of a unitary Hilbert-side transform
to the rows and a fractional power of a graph Fourier transform to the
columns.
"""

from . import filtering, graph, linalg, sampling, signals, transform
from .errors import *  # noqa: F401,F403
from .filtering import FrequencyRegion, bandpass, bandpass_filter, convolve, frequency_range
from .graph import (
    Graph,
    ShiftKind,
    cartesian_product,
    cycle_graph,
    path_graph,
    random_geometric_graph,
    shift_matrix,
)
from .sampling import (
    SamplingPlan,
    greedy_sample,
    grid_search,
    make_plan,
    order_grid,
    recover,
    recovery_error,
    sample,
)
from .signals import (
    ChirpSpec,
    chirp_field,
    dft_frequencies,
    heat_iteration,
    heat_spectral_solution,
    peak_to_energy,
    synthesize_bandlimited,
    wave_spectral_solution,
)
from .transform import (
    FractionalOperator,
    JointSpectrum,
    OperatorFamily,
    dft_operator,
    gft_operator,
    hgfrft,
    inverse_hgfrft,
    joint_matrix,
    partial_g,
    partial_h,
)

__version__ = "0.1.0"
