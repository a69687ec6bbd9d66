"""Comparing inner products on a non-orthogonal eigenbasis.

The eta-inner product is indefinite, the eta_plus product is positive, and
the symmetry-twisted product (X psi_m)^dagger eta_plus psi_n is real for
X in {C, PT, CPT}. The transpose product psi_m^T psi_n with no metric is
complex in general, vanishing only by accident in special models.

Run:  python3 demos/03_inner_products.py
"""

import numpy as np

from pseudoherm import fixtures
from pseudoherm.metric import metric_from_diagonalizer
from pseudoherm.products import gram_report, rival_inner_transpose
from pseudoherm.spectral import build_biortho, decompose
from pseudoherm.symmetry import build_suite

np.set_printoptions(precision=4, suppress=True)

for fx in (fixtures.fixture_I1(2.0), fixtures.fixture_I2(), fixtures.family_eq23(0, 3, 5)):
    H, eta = fx.hamiltonian, fx.fundamental_metric
    sd = decompose(H, eta, vectors=fx.pinned_eigenvectors)
    ep = metric_from_diagonalizer(sd.diagonalizer).matrix
    bio = build_biortho(sd.vectors, eta, ep)
    grams = gram_report(bio, eta, ep, build_suite(bio))
    print("=" * 60)
    print(fx.name)
    for key in ("eta", "eta_plus", "X:PT", "X:CPT", "rival_transpose"):
        g = grams[key]
        print(f"{key:16s} real-definite={g.real_definite!s:5s} diagonal={g.diagonal_signs}")
    v = sd.vectors
    print("psi_0^T psi_1 =", np.round(rival_inner_transpose(None, v[:, 0], v[:, 1]), 6))

# The unnormalized pair [1, -ir], [1, -i/r] is transpose-orthogonal for any r.
w = fixtures.family_eq23(0, 3, 5).pinned_eigenvectors
print("unnormalized pair:", rival_inner_transpose(None, w[:, 0], w[:, 1]))
