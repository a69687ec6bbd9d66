"""Metric operators under which a matrix is pseudo-Hermitian.

A metric ``eta`` is any invertible matrix with ``eta H eta^-1 = H^dagger``.
Given the eta-normalized diagonalizer ``D`` of a real-spectrum ``H``, the
positive-definite member of the family is ``(D D^dagger)^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import least_squares

from .core import (
    DEFAULT_TOL,
    MAX_DIM,
    OperatorRep,
    as_square,
    condition_number,
    dagger,
    fro,
    frozen,
    symmetry_residual,
)
from .errors import (
    DimensionMismatch,
    OddDimension,
    SingularD,
    SingularMetric,
)

NULL_SPACE_RTOL = 1e-8


@dataclass(frozen=True)
class MetricFlags:
    hermitian: bool
    involutory: bool
    unitary: bool
    real_symmetric: bool
    simple: bool
    unimodular: bool
    positive_definite: bool

    def as_dict(self):
        return dict(self.__dict__)


@dataclass(frozen=True, eq=False)
class Metric:
    matrix: np.ndarray
    flags: MetricFlags

    @classmethod
    def from_matrix(cls, eta, tol=DEFAULT_TOL):
        eta = as_square(eta, "eta")
        return cls(matrix=frozen(eta), flags=classify_metric(eta, tol))

    @property
    def dim(self):
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class MetricFamily:
    """Frobenius-orthonormal basis of the solutions of ``eta H = H^dagger eta``."""

    basis: tuple
    singular_values: np.ndarray = field(default=None)

    @property
    def dimension(self):
        return len(self.basis)

    def coefficients(self, eta):
        eta = np.asarray(eta, dtype=complex)
        return np.array([np.vdot(B, eta) for B in self.basis])

    def project(self, eta):
        eta = np.asarray(eta, dtype=complex)
        out = np.zeros_like(eta)
        for c, B in zip(self.coefficients(eta), self.basis):
            out += c * B
        return out

    def projection_defect(self, eta):
        """Relative distance of ``eta`` from the span of the basis."""
        eta = np.asarray(eta, dtype=complex)
        nrm = fro(eta)
        if nrm == 0:
            return 0.0
        return fro(eta - self.project(eta)) / nrm

    def combine(self, coefficients):
        out = np.zeros_like(self.basis[0]) if self.basis else None
        for c, B in zip(coefficients, self.basis):
            out = out + c * B
        return out


def _invertible(eta, tol):
    cond = condition_number(eta)
    return np.isfinite(cond) and cond <= 1.0 / max(tol.abs, 1e-300)


def _checked_inverse(eta, tol, name="metric"):
    if not _invertible(eta, tol):
        raise SingularMetric(f"{name} is singular")
    return np.linalg.inv(eta)


def pseudo_hermiticity_residual(H, eta, tol=DEFAULT_TOL):
    """``||eta H eta^-1 - H^dagger||_F / max(1, ||H||_F)``."""
    H = as_square(H, "H")
    eta = as_square(eta, "eta")
    if H.shape != eta.shape:
        raise DimensionMismatch(f"H {H.shape} vs eta {eta.shape}")
    inv = _checked_inverse(eta, tol)
    return fro(eta @ H @ inv - dagger(H)) / max(1.0, fro(H))


def classify_metric(eta, tol=DEFAULT_TOL):
    """Boolean properties of a metric, each decided under ``tol``.

    ``simple`` means ``det eta = 1``; ``unimodular`` the weaker
    ``|det eta| = 1``. ``positive_definite`` requires Hermiticity.
    """
    eta = as_square(eta, "eta")
    n = eta.shape[0]
    eye = np.eye(n)
    scale = fro(eta)
    hermitian = fro(eta - dagger(eta)) <= tol.bound(scale)
    det = complex(np.linalg.det(eta))
    positive = False
    if hermitian:
        w = np.linalg.eigvalsh(0.5 * (eta + dagger(eta)))
        positive = bool(np.all(w > tol.bound(scale)))
    return MetricFlags(
        hermitian=hermitian,
        involutory=tol.close(eta @ eta, eye),
        unitary=tol.close(dagger(eta) @ eta, eye),
        real_symmetric=fro(eta - eta.T) <= tol.bound(scale) and fro(eta.imag) <= tol.bound(scale),
        simple=abs(det - 1) <= tol.bound(abs(det)),
        unimodular=abs(abs(det) - 1) <= tol.bound(abs(det)),
        positive_definite=positive,
    )


def metric_from_diagonalizer(D, tol=DEFAULT_TOL):
    """Positive-definite metric ``(D D^dagger)^-1``."""
    D = as_square(D, "D")
    if not _invertible(D, tol):
        raise SingularD("diagonalizer is singular")
    Dinv = np.linalg.inv(D)
    eta = dagger(Dinv) @ Dinv
    eta = 0.5 * (eta + dagger(eta))
    return Metric.from_matrix(eta, tol)


def sigma_x_blocks(n, pairs=None):
    """Symmetric permutation matrix swapping each index pair.

    With the default adjacent pairing this is ``diag(sx, sx, ...)``.
    """
    if n % 2:
        raise OddDimension(f"conjugate pairing needs even dimension, got {n}")
    if pairs is None:
        pairs = [(k, k + 1) for k in range(0, n, 2)]
    S = np.zeros((n, n))
    for i, j in pairs:
        S[i, j] = S[j, i] = 1.0
    if not np.allclose(S.sum(axis=0), 1.0):
        raise ValueError(f"pairing {pairs} does not cover 0..{n - 1} exactly once")
    return S


def metric_conjugate_paired(D, pairing=None, tol=DEFAULT_TOL):
    """Metric ``(D S D^dagger)^-1`` for an all-complex, conjugate-paired spectrum.

    ``pairing`` lists column index pairs holding conjugate eigenvalues;
    by default columns ``(0, 1), (2, 3), ...`` are paired.
    """
    D = as_square(D, "D")
    S = sigma_x_blocks(D.shape[0], pairing)
    if not _invertible(D, tol):
        raise SingularD("diagonalizer is singular")
    Dinv = np.linalg.inv(D)
    eta = dagger(Dinv) @ S @ Dinv
    return Metric.from_matrix(eta, tol)


def _phase_fix(B):
    flat = B.ravel()
    nz = np.flatnonzero(np.abs(flat) > 1e-12 * np.abs(flat).max())
    k = nz[0]
    return B * (np.conj(flat[k]) / abs(flat[k]))


def intertwiner_operator(H):
    """Matrix of ``eta -> eta H - H^dagger eta`` acting on row-major ``vec(eta)``."""
    H = as_square(H, "H")
    n = H.shape[0]
    eye = np.eye(n)
    return np.kron(eye, H.T) - np.kron(dagger(H), eye)


def solve_metric_space(H, tol=DEFAULT_TOL, rtol=NULL_SPACE_RTOL):
    """Null space of the intertwining map, reshaped into matrices.

    Singular values below ``rtol * sigma_max`` count as zero. Each basis
    matrix is Frobenius-normalized with its first non-negligible entry
    (row-major) made real positive.
    """
    H = as_square(H, "H")
    n = H.shape[0]
    if n > MAX_DIM:
        raise DimensionMismatch(f"dimension {n} exceeds the supported maximum {MAX_DIM}")
    L = intertwiner_operator(H)
    _, s, vh = np.linalg.svd(L)
    smax = s[0] if s.size else 0.0
    null = s <= rtol * smax if smax > 0 else np.ones_like(s, dtype=bool)
    basis = tuple(frozen(_phase_fix(np.conj(vh[k]).reshape(n, n))) for k in np.flatnonzero(null))
    return MetricFamily(basis=basis, singular_values=frozen(s, dtype=float))


def is_secular(family_generator, eta, samples, tol=DEFAULT_TOL, threshold=None):
    """Whether one fixed ``eta`` serves every sampled member of a family.

    ``family_generator(*params)`` must return the matrix for each
    parameter tuple in ``samples``.
    """
    threshold = tol.abs if threshold is None else threshold
    for params in samples:
        if not isinstance(params, (tuple, list)):
            params = (params,)
        H = family_generator(*params)
        H = getattr(H, "hamiltonian", H)
        try:
            res = pseudo_hermiticity_residual(H, eta, tol)
        except SingularMetric:
            return False
        if res > threshold:
            return False
    return True


def hidden_symmetry_ops(eta_i, eta_j, H, tol=DEFAULT_TOL, order="commuting"):
    """Operator built from two metrics of ``H``, with its commutator residual.

    ``order="commuting"`` returns ``eta_j^-1 eta_i``, which commutes with
    ``H`` whenever both inputs are metrics of ``H``. ``order="as_written"``
    returns ``eta_i eta_j^-1``, which commutes with ``H^dagger`` instead.

    Returns
    -------
    op : OperatorRep
    residual : float
        ``||[H, op]||_F``.
    """
    mi = as_square(getattr(eta_i, "matrix", eta_i), "eta_i")
    mj = as_square(getattr(eta_j, "matrix", eta_j), "eta_j")
    inv = _checked_inverse(mj, tol, "eta_j")
    if order == "commuting":
        F = inv @ mi
    elif order == "as_written":
        F = mi @ inv
    else:
        raise ValueError(f"unknown order {order!r}")
    op = OperatorRep(F)
    return op, symmetry_residual(H, op)


# ---------------------------------------------------------------------------
# fundamental metric selection
# ---------------------------------------------------------------------------

def hermitian_metric_basis(family):
    """Real basis of the Hermitian metrics inside ``family``.

    Hermitian parts of ``B`` and ``iB`` span them since the adjoint of a
    metric is again a metric. The result is orthonormal in the real
    Frobenius inner product.
    """
    if family.dimension == 0:
        return ()
    n = family.basis[0].shape[0]
    gens = []
    for B in family.basis:
        for z in (B, 1j * B):
            gens.append(0.5 * (z + dagger(z)))
    real = np.array([np.concatenate([g.real.ravel(), g.imag.ravel()]) for g in gens])
    u, s, vh = np.linalg.svd(real, full_matrices=False)
    keep = s > NULL_SPACE_RTOL * s[0] if s.size and s[0] > 0 else np.zeros(0, dtype=bool)
    out = []
    for row in vh[keep]:
        M = (row[: n * n] + 1j * row[n * n:]).reshape(n, n)
        out.append(frozen(_canonical_sign(0.5 * (M + dagger(M)))))
    return tuple(out)


def _canonical_sign(M):
    """Fix the overall sign of a Hermitian matrix: non-negative trace, then first entry."""
    tr = np.trace(M).real
    if abs(tr) > 1e-9 * max(1.0, fro(M)):
        return M if tr > 0 else -M
    flat = M.ravel()
    k = np.flatnonzero(np.abs(flat) > 1e-9 * np.abs(flat).max())[0]
    return M if (flat[k].real, flat[k].imag) > (0, 0) else -M


def find_involutory_metric(herm_basis, tol=DEFAULT_TOL, seed=0, restarts=24):
    """Search the real span of ``herm_basis`` for ``eta`` with ``eta^2 = I``.

    Deterministic for fixed ``seed``; returns ``None`` when no restart
    converges below ``tol``.
    """
    if not herm_basis:
        return None
    n = herm_basis[0].shape[0]
    stack = np.array(herm_basis)
    eye = np.eye(n)

    def resid(x):
        M = np.tensordot(x, stack, axes=1)
        R = M @ M - eye
        return np.concatenate([R.real.ravel(), R.imag.ravel()])

    rng = np.random.default_rng(seed)
    k = len(herm_basis)
    starts = [np.sqrt(n) * e for e in np.eye(k)]
    starts += [np.sqrt(n) * rng.standard_normal(k) / np.sqrt(k) for _ in range(restarts)]
    found = []
    for x0 in starts:
        sol = least_squares(resid, x0, xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=2000)
        M = np.tensordot(sol.x, stack, axes=1)
        if fro(M @ M - eye) <= tol.bound(np.sqrt(n)):
            M = _canonical_sign(0.5 * (M + dagger(M)))
            found.append(M)
    if not found:
        return None
    # prefer the best-conditioned solution, break ties by real-symmetric-ness
    found.sort(key=lambda M: (round(condition_number(M), 6), round(fro(M.imag), 9)))
    return found[0]


def choose_fundamental_metric(H, family=None, tol=DEFAULT_TOL, seed=0):
    """Pick a fundamental metric for ``H`` from its metric family.

    Preference order: the identity (``H`` Hermitian); a Hermitian
    involutory metric; the best-conditioned Hermitian invertible metric.

    Returns
    -------
    eta : ndarray or None
    choice : str
        Which rule selected ``eta`` (``"none"`` when nothing qualifies).
    """
    H = as_square(H, "H")
    n = H.shape[0]
    if fro(H - dagger(H)) <= tol.bound(fro(H)):
        return np.eye(n, dtype=complex), "identity"
    if family is None:
        family = solve_metric_space(H, tol)
    herm = hermitian_metric_basis(family)
    if not herm:
        return None, "none"
    inv = find_involutory_metric(herm, tol, seed=seed)
    if inv is not None and pseudo_hermiticity_residual(H, inv, tol) <= 1e-8:
        return inv, "hermitian-involutory"
    rng = np.random.default_rng(seed)
    candidates = list(herm) + [np.tensordot(rng.standard_normal(len(herm)), np.array(herm), axes=1)]
    candidates = [_canonical_sign(c) for c in candidates if _invertible(c, tol)]
    if not candidates:
        return None, "none"
    best = min(candidates, key=condition_number)
    # unit |det| keeps the eta-norm scale comparable across inputs
    best = best / abs(np.linalg.det(best)) ** (1.0 / n)
    return best, "hermitian-invertible"
