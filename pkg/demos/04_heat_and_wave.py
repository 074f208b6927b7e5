"""
Heat and wave propagation on a path graph
=========================================

Forward-Euler heat steps and the leapfrog wave scheme both have closed
forms in the joint spectrum.  The heat one is checked against direct
time stepping.
"""

import numpy as np

from hgfrft import dft_frequencies, dft_operator, gft_operator, hgfrft, path_graph, shift_matrix
from hgfrft import heat_iteration, heat_spectral_solution, wave_spectral_solution
from hgfrft.errors import UnstableSpeed

g = path_graph(6)
lap = shift_matrix(g, "laplacian")
fg = gft_operator(g, "laplacian")
lam = fg.shift_eigenvalues.real
T = 10
s = 0.2
print("Laplacian eigenvalues:", np.round(lam, 4))

f1 = np.zeros(6)
f1[0] = 1.0
frames = heat_iteration(f1, lap, s, T)
print("heat at t = 0, 5, 9:")
print(np.round(frames[[0, 5, 9]], 4))

y = np.tile(fg.base @ f1, (T, 1))
closed = heat_spectral_solution(y, lam, dft_frequencies(T), s, T).coeff
direct = hgfrft(frames, dft_operator(T).at(1), fg.at(1)).coeff
print("closed form vs stepping:", np.abs(closed - direct).max())

wave = wave_spectral_solution(y, lam, dft_frequencies(T), 0.5, T)
print("wave spectrum peak:", np.abs(wave.coeff).max().round(4))
try:
    wave_spectral_solution(y, lam, dft_frequencies(T), 4 / lam.max(), T)
except UnstableSpeed as exc:
    print("too fast:", exc)
