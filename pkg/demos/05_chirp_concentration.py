"""
Chirps on 48 vertices: which fractional order concentrates them best?
=====================================================================
"""

import numpy as np

from hgfrft import ChirpSpec, chirp_field, dft_operator, order_grid, peak_to_energy

spec = ChirpSpec()
x = chirp_field(spec, 48)
print("field shape:", x.shape)

fam = dft_operator(spec.samples)
grid = order_grid(0.0, 2.0, 0.01)

for vertex in (1, 16, 48):
    col = x[:, vertex - 1]
    scores = np.array([peak_to_energy(fam.at(a).mat @ col) for a in grid])
    best = grid[scores.argmax()]
    print(
        f"vertex {vertex:2d}: start {spec.start_frequency(vertex):.0f} Hz, sweep {spec.bandwidth(vertex):.0f} Hz,"
        f" best order {best:.2f} ({scores.max():.3f}) vs order 1 ({peak_to_energy(fam.at(1).mat @ col):.3f})"
    )
