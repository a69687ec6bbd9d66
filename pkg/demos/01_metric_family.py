"""Metrics of a two-level non-Hermitian Hamiltonian.

H = [[a, -ib], [ic, a]] is not Hermitian when b != c, yet for bc > 0 its
spectrum a +- sqrt(bc) is real. This script solves for every metric eta with
eta H eta^-1 = H^dagger, checks the four closed-form metrics against the
solved family, and lets the library pick a fundamental metric on its own.

Run:  python3 demos/01_metric_family.py
"""

import numpy as np

from pseudoherm import fixtures
from pseudoherm.metric import (
    choose_fundamental_metric,
    classify_metric,
    hidden_symmetry_ops,
    pseudo_hermiticity_residual,
    solve_metric_space,
)
from pseudoherm.spectral import eig

np.set_printoptions(precision=4, suppress=True)

fx = fixtures.family_eq3(a=1, b=1, c=4)
H = fx.hamiltonian
print("H =\n", H)

evals, _ = eig(H)
print("eigenvalues:", evals)  # 3 and -1, both real

# The metric equation is linear in eta, so its solutions form a vector space.
family = solve_metric_space(H)
print("metric family dimension:", family.dimension)

# Each closed-form metric lies in that space.
for name, eta in fx.metrics.items():
    flags = classify_metric(eta)
    on = [k for k, v in flags.as_dict().items() if v]
    print(f"{name}: residual {pseudo_hermiticity_residual(H, eta):.1e}, "
          f"defect {family.projection_defect(eta):.1e}, flags {on}")

# eta1 is Hermitian and squares to the identity, the preferred choice.
eta, choice = choose_fundamental_metric(H, family)
print("chosen metric (", choice, "):\n", eta)

# Two metrics combine into an operator commuting with H.
F, res = hidden_symmetry_ops(fx.metrics["eta1"], fx.metrics["eta3"], H)
print("eta3^-1 eta1 =\n", F.matrix)
print("commutator residual:", res)
