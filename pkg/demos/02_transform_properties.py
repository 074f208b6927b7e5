"""
Checking the transform identities numerically
=============================================
"""

import numpy as np

from hgfrft import dft_operator, gft_operator, hgfrft, inverse_hgfrft, joint_matrix, partial_g, partial_h
from hgfrft import random_geometric_graph

rng = np.random.default_rng(1)
g = random_geometric_graph(12, 0.45, seed=3)
print(g.num_edges, "edges, connected:", g.is_connected())

fh = dft_operator(5)
fg = gft_operator(g, "laplacian")
x = rng.normal(size=(5, 12)) + 1j * rng.normal(size=(5, 12))

a, b = 0.3, -1.4
spec = hgfrft(x, fh.at(a), fg.at(b))

print("zero orders give back x:   ", np.abs(hgfrft(x, fh.at(0), fg.at(0)).coeff - x).max())
print("inverse round trip:        ", np.abs(inverse_hgfrft(spec, fh.at(-a), fg.at(-b)) - x).max())
print("separable (H then G):      ", np.abs(partial_g(partial_h(x, fh.at(a)), fg.at(b)) - spec.coeff).max())
print("energy preserved:          ", abs(np.linalg.norm(spec.coeff) - np.linalg.norm(x)))

# orders add
m1 = joint_matrix(fh.at(0.4), fg.at(0.9))
m2 = joint_matrix(fh.at(-1.1), fg.at(0.35))
print("additivity:                ", np.abs(m1 @ m2 - joint_matrix(fh.at(-0.7), fg.at(1.25))).max())

# at orders (1, 1) we are back to the ordinary joint transform
print("orders (1,1) vs F_H x F_G^T:", np.abs(hgfrft(x, fh.at(1), fg.at(1)).coeff - fh.base @ x @ fg.base.T).max())
