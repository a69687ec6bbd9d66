"""Generalized parity, time-reversal and charge operators from a biorthonormal basis.

With ``psi_n`` the eta-normalized eigenvectors, ``upsilon_n = eta_plus psi_n``
and alternating signs ``s_n = (-1)^n``::

    P   = sum s_n psi_n psi_n^dagger
    T   = (sum upsilon_n upsilon_n^T) K0
    PT  = (sum s_n psi_n upsilon_n^T) K0
    C   = sum s_n psi_n upsilon_n^dagger
    CPT = (sum psi_n upsilon_n^T) K0

Only C, PT and CPT are guaranteed to commute with ``H`` and square to one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    DEFAULT_TOL,
    OperatorRep,
    apply,
    compose,
    dagger,
    fro,
    involution_residual,
    square,
    symmetry_residual,
)
from .errors import CompletenessViolation, SuiteInvalid


def alternating_signs(n):
    return np.array([(-1) ** k for k in range(n)], dtype=float)


def build_parity(bio):
    s = alternating_signs(bio.psi.shape[1])
    return OperatorRep((bio.psi * s) @ dagger(bio.psi))


def build_time_reversal(bio):
    return OperatorRep(bio.upsilon @ bio.upsilon.T, antilinear=True)


def build_pt(bio):
    s = alternating_signs(bio.psi.shape[1])
    return OperatorRep((bio.psi * s) @ bio.upsilon.T, antilinear=True)


def completeness_defect(bio):
    n = bio.psi.shape[0]
    return fro(bio.psi @ dagger(bio.upsilon) - np.eye(n))


def build_charge(bio, tol=DEFAULT_TOL):
    """Charge operator; refuses an incomplete basis.

    Raises
    ------
    CompletenessViolation
        ``sum psi_n upsilon_n^dagger`` is not the identity.
    """
    n = bio.psi.shape[0]
    defect = completeness_defect(bio)
    if defect > tol.bound(np.sqrt(n)):
        raise CompletenessViolation(f"||sum psi upsilon^dagger - I|| = {defect:.3g}")
    s = alternating_signs(bio.psi.shape[1])
    return OperatorRep((bio.psi * s) @ dagger(bio.upsilon))


def build_cpt(bio):
    return OperatorRep(bio.psi @ bio.upsilon.T, antilinear=True)


@dataclass(frozen=True, eq=False)
class SymmetrySuite:
    P: OperatorRep
    T: OperatorRep
    C: OperatorRep
    PT: OperatorRep
    CPT: OperatorRep
    eta: object = None
    eta_plus: object = None
    residuals: dict = field(default_factory=dict)

    def operators(self):
        return {"P": self.P, "T": self.T, "C": self.C, "PT": self.PT, "CPT": self.CPT}


def build_suite(bio, eta=None, eta_plus=None, tol=DEFAULT_TOL):
    return SymmetrySuite(
        P=build_parity(bio),
        T=build_time_reversal(bio),
        C=build_charge(bio, tol),
        PT=build_pt(bio),
        CPT=build_cpt(bio),
        eta=eta,
        eta_plus=eta_plus,
    )


MUST_PASS_PREFIXES = ("involution.", "commutator.C", "commutator.PT", "commutator.CPT",
                      "action.", "composition.")


def _must_pass(name):
    if name.startswith("commutator."):
        return name in ("commutator.C", "commutator.PT", "commutator.CPT")
    return name.startswith(MUST_PASS_PREFIXES)


def action_residuals(suite, bio):
    """Max column residuals of the defining action of each operator."""
    s = alternating_signs(bio.psi.shape[1])
    psi, ups = bio.psi, bio.upsilon

    def worst(diff):
        return float(np.max(np.linalg.norm(diff, axis=0)))

    return {
        "action.P": worst(apply(suite.P, ups) - psi * s),
        "action.T": worst(apply(suite.T, psi) - ups),
        "action.PT": worst(apply(suite.PT, psi) - psi * s),
        "action.C": worst(apply(suite.C, psi) - psi * s),
        "action.CPT": worst(apply(suite.CPT, psi) - psi),
    }


def verify_suite(H, suite, bio, tol=DEFAULT_TOL, strict=True):
    """Residual report for a symmetry suite.

    Must-pass entries are the involutions of C, PT and CPT, their
    commutators with ``H``, the action laws and the composition identities
    ``PT = P o T`` and ``CPT = C o PT``. The P and T commutators and
    squares are reported without being enforced.

    Returns
    -------
    report : dict
        ``{"residuals": {name: float}, "passed": {name: bool}, "ok": bool}``

    Raises
    ------
    SuiteInvalid
        If ``strict`` and any must-pass residual exceeds its bound.
    """
    H = np.asarray(H, dtype=complex)
    ops = suite.operators()
    res = {}
    for name in ("C", "PT", "CPT", "P", "T"):
        res[f"involution.{name}" if name in ("C", "PT", "CPT") else f"square.{name}"] = \
            involution_residual(ops[name])
    for name, op in ops.items():
        res[f"commutator.{name}"] = symmetry_residual(H, op)
    res.update(action_residuals(suite, bio))
    res["composition.PT"] = fro(compose(suite.P, suite.T).matrix - suite.PT.matrix)
    res["composition.CPT"] = fro(compose(suite.C, suite.PT).matrix - suite.CPT.matrix)
    res["square.T_minus_P"] = fro(square(suite.T).matrix - square(suite.P).matrix)
    res["completeness"] = completeness_defect(bio)

    scales = {
        "commutator": fro(H) * max(fro(op.matrix) for op in ops.values()),
        "default": max(fro(op.matrix) for op in ops.values()) ** 2,
    }
    passed = {}
    for name, value in res.items():
        if _must_pass(name):
            scale = scales["commutator"] if name.startswith("commutator.") else scales["default"]
            passed[name] = bool(value <= tol.bound(scale))
    ok = all(passed.values())
    if strict and not ok:
        bad = {k: res[k] for k, v in passed.items() if not v}
        raise SuiteInvalid(f"symmetry suite failed: {bad}", failures=bad)
    return {"residuals": res, "passed": passed, "ok": ok}


def p2_t2_condition(bio, tol=DEFAULT_TOL):
    """Compare ``T^2`` with ``P^2`` and test the sign-twisted Gram condition.

    The condition is ``(-1)^(m+n) psi_m^dagger psi_n = upsilon_m^dagger upsilon_n``
    for all ``m, n``.

    Returns
    -------
    condition_holds, t2_equals_p2 : bool
    """
    s = alternating_signs(bio.psi.shape[1])
    lhs = np.outer(s, s) * (dagger(bio.psi) @ bio.psi)
    rhs = dagger(bio.upsilon) @ bio.upsilon
    cond = tol.close(lhs, rhs)
    t2 = square(build_time_reversal(bio)).matrix
    p2 = square(build_parity(bio)).matrix
    return bool(cond), bool(tol.close(t2, p2))
