"""
Picking the sampling orders by grid search
==========================================

For each (alpha, beta) the K strongest spectral coefficients define the
support, greedy sampling picks K vertices, and the noise gain of the
reconstruction operator is measured.  The search returns the orders with
the smallest error.
"""

import numpy as np

from hgfrft import cycle_graph, gft_operator, grid_search, path_graph, synthesize_bandlimited

fh = gft_operator(path_graph(4))
fg = gft_operator(cycle_graph(4))
x = synthesize_bandlimited({0: 1.0, 1: 0.5, 2: 2.0}, fh.at(0.7), fg.at(0.5))

noise = 0.05 * (np.random.default_rng(0).normal(size=3) + 1j * np.random.default_rng(1).normal(size=3))
res = grid_search(x, noise, fh, fg, 3, coarse_step=0.25, fine_step=0.05)

coarse = [r for r in res.table if r[0] == "coarse"]
at_one = next(r[3] for r in coarse if r[1] == 1 and r[2] == 1)
print(f"{len(res.table)} grid points evaluated")
print(f"best orders ({res.alpha:.2f}, {res.beta:.2f}) error {res.error:.4f}")
print(f"orders (1, 1) error {at_one:.4f}")
