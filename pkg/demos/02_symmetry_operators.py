"""Parity, time reversal and charge conjugation built from eigenvectors.

Two worked examples. In the first (I1) the generalized parity equals the
fundamental metric and T^2 = P^2 = 1. In the second (I2) the metric
diag(x, 1/x) is already positive definite, and T^2 differs from P^2.

Run:  python3 demos/02_symmetry_operators.py
"""

import numpy as np

from pseudoherm import fixtures
from pseudoherm.core import square
from pseudoherm.metric import metric_from_diagonalizer
from pseudoherm.spectral import build_biortho, decompose
from pseudoherm.symmetry import build_suite, p2_t2_condition, verify_suite

np.set_printoptions(precision=4, suppress=True)


def show(fx):
    print("=" * 60)
    print(fx.name)
    H, eta = fx.hamiltonian, fx.fundamental_metric
    # Pinned eigenvectors fix the phases, which T, PT and CPT depend on.
    sd = decompose(H, eta, vectors=fx.pinned_eigenvectors)
    print("eigenvalues:", sd.eigenvalues.real, " eta-norm signs:", sd.signs)

    eta_plus = metric_from_diagonalizer(sd.diagonalizer).matrix
    print("eta_plus =\n", eta_plus)

    bio = build_biortho(sd.vectors, eta, eta_plus)
    suite = build_suite(bio)
    for name, op in suite.operators().items():
        tag = " K0" if op.antilinear else ""
        print(f"{name}{tag} =\n{op.matrix}")

    report = verify_suite(H, suite, bio)
    print("suite verified:", report["ok"])
    print("[H,P] residual: %.3f   [H,T] residual: %.3f"
          % (report["residuals"]["commutator.P"], report["residuals"]["commutator.T"]))
    print("T^2 =\n", square(suite.T).matrix)
    print("P^2 =\n", square(suite.P).matrix)
    print("(condition holds, T^2 == P^2):", p2_t2_condition(bio))
    CP = suite.C.matrix @ suite.P.matrix
    print("(CP)^-1 =\n", np.linalg.inv(CP))
    print("PC =\n", suite.P.matrix @ suite.C.matrix)


show(fixtures.fixture_I1(r=2.0))
show(fixtures.fixture_I2(a=3, b=1, c=1, x=2))
