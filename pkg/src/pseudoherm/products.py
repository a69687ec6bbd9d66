"""Inner products on the eigenbasis.

``x_inner`` is the symmetry-twisted product ``(X psi_m)^dagger eta_plus psi_n``,
real for every symmetry ``X`` in a verified suite. The two transpose
products (no metric, no complex conjugation of the bra) are kept for
comparison; they are generally complex.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOL, OperatorRep, apply, as_vector, dagger, symmetry_residual
from .errors import DimensionMismatch, NotASymmetry


@dataclass(frozen=True, eq=False)
class InnerProductReport:
    values: np.ndarray
    real_definite: bool
    diagonal_signs: tuple

    @classmethod
    def from_values(cls, values, tol=DEFAULT_TOL):
        values = np.array(values, dtype=complex)
        values.setflags(write=False)
        bound = tol.bound(np.abs(values).max(initial=0.0))
        real = bool(np.abs(values.imag).max(initial=0.0) <= bound)
        signs = []
        for d in np.diag(values):
            if abs(d - 1) <= bound:
                signs.append(1)
            elif abs(d + 1) <= bound:
                signs.append(-1)
            else:
                signs.append("non-unit")
        return cls(values=values, real_definite=real, diagonal_signs=tuple(signs))


def _pair(a, b):
    a = as_vector(a)
    b = as_vector(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"vector lengths {a.shape[0]} and {b.shape[0]}")
    return a, b


def _op(X, n):
    return OperatorRep.identity(n) if X is None else X


def eta_inner(psi_m, psi_n, eta):
    psi_m, psi_n = _pair(psi_m, psi_n)
    return complex(np.vdot(psi_m, np.asarray(eta) @ psi_n))


def x_inner(X, psi_m, psi_n, eta_plus, H=None, tol=DEFAULT_TOL):
    """``(X psi_m)^dagger eta_plus psi_n``.

    If ``H`` is given, ``X`` is first checked to commute with it.

    Raises
    ------
    NotASymmetry
        ``[H, X]`` exceeds the tolerance.
    """
    psi_m, psi_n = _pair(psi_m, psi_n)
    if H is not None:
        H = np.asarray(H, dtype=complex)
        res = symmetry_residual(H, X)
        if res > tol.bound(np.linalg.norm(H) * np.linalg.norm(X.matrix)):
            raise NotASymmetry(f"[H, X] residual {res:.3g}")
    return complex(np.vdot(apply(X, psi_m), np.asarray(eta_plus) @ psi_n))


def x_norm(X, psi_n, eta_plus, H=None, tol=DEFAULT_TOL):
    return x_inner(X, psi_n, psi_n, eta_plus, H=H, tol=tol)


def rival_inner_transpose(X, psi_m, psi_n):
    """``(X psi_m)^T psi_n``; ``X=None`` means the identity."""
    psi_m, psi_n = _pair(psi_m, psi_n)
    return complex(apply(_op(X, len(psi_m)), psi_m) @ psi_n)


def rival_inner_biortho(X, upsilon_m, psi_n):
    """``(X upsilon_m)^T psi_n``; ``X=None`` means the identity."""
    upsilon_m, psi_n = _pair(upsilon_m, psi_n)
    return complex(apply(_op(X, len(upsilon_m)), upsilon_m) @ psi_n)


def _gram(f, left, right):
    k = left.shape[1]
    return np.array([[f(left[:, m], right[:, n]) for n in range(k)] for m in range(k)])


def gram_report(bio, eta, eta_plus, suite=None, tol=DEFAULT_TOL):
    """Gram matrices of every product over the basis, keyed by name.

    Keys: ``eta``, ``eta_plus``, ``X:<name>`` for C, PT and CPT of the
    suite, and ``rival_transpose``, ``rival_biortho`` (plain, plus their
    CPT-twisted variants when a suite is given).
    """
    psi, ups = bio.psi, bio.upsilon
    eta = np.asarray(eta, dtype=complex)
    eta_plus = np.asarray(eta_plus, dtype=complex)
    out = {
        "eta": dagger(psi) @ eta @ psi,
        "eta_plus": dagger(psi) @ eta_plus @ psi,
    }
    if suite is not None:
        for name in ("C", "PT", "CPT"):
            X = getattr(suite, name)
            out[f"X:{name}"] = dagger(apply(X, psi)) @ eta_plus @ psi
    out["rival_transpose"] = _gram(lambda a, b: rival_inner_transpose(None, a, b), psi, psi)
    out["rival_biortho"] = _gram(lambda a, b: rival_inner_biortho(None, a, b), ups, psi)
    if suite is not None:
        out["rival_transpose:CPT"] = _gram(lambda a, b: rival_inner_transpose(suite.CPT, a, b), psi, psi)
        out["rival_biortho:CPT"] = _gram(lambda a, b: rival_inner_biortho(suite.CPT, a, b), ups, psi)
    return {k: InnerProductReport.from_values(v, tol) for k, v in out.items()}
