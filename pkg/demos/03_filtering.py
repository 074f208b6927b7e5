"""
Band-pass filtering and convolution in the fractional joint domain
==================================================================
"""

import numpy as np

from hgfrft import FrequencyRegion, bandpass, bandpass_filter, convolve, cycle_graph, dft_operator
from hgfrft import gft_operator, hgfrft, frequency_range

rng = np.random.default_rng(4)
op_h = dft_operator(6).at(0.6)
op_g = gft_operator(cycle_graph(5)).at(0.8)

x = rng.normal(size=(6, 5))
region = FrequencyRegion([(0, 0), (0, 1), (1, 0), (5, 4)], (6, 5))

y = bandpass(x, region, op_h, op_g)
print("support after band-pass:", frequency_range(hgfrft(y, op_h, op_g), tol=1e-10).pairs)
print("applying twice changes nothing:", np.abs(bandpass(y, region, op_h, op_g) - y).max())

p = bandpass_filter(region, op_h, op_g).mat
print("projector rank:", np.linalg.matrix_rank(p), " self-adjoint residual:", np.abs(p - p.conj().T).max())

# convolution multiplies spectra pointwise
g = rng.normal(size=(6, 5))
lhs = hgfrft(convolve(g, x, op_h, op_g), op_h, op_g).coeff
rhs = hgfrft(g, op_h, op_g).coeff * hgfrft(x, op_h, op_g).coeff
print("convolution theorem residual:", np.abs(lhs - rhs).max())
