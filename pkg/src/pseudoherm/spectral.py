"""Eigendecomposition, spectrum classification and eta-normalized bases.

Eigenvalues are ordered by descending real part, ties broken by descending
imaginary part. The order matters downstream: the alternating signs in the
parity and charge operators follow it.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOL,
    MAX_DIM,
    as_square,
    as_vector,
    condition_number,
    dagger,
    fro,
    frozen,
)
from .errors import (
    BiorthogonalityViolation,
    DegenerateSpectrum,
    DimensionMismatch,
    NoConvergence,
    NonDiagonalizable,
    NonRealEtaNorm,
    SingularD,
    ZeroEtaNorm,
)


class SpectrumClass(enum.Enum):
    ALL_REAL = "AllReal"
    CONJUGATE_PAIRED = "ConjugatePaired"
    MIXED = "Mixed"


@dataclass(frozen=True, eq=False)
class SpectralData:
    """Ordered eigenpairs of ``H`` normalized against a fundamental metric.

    ``vectors`` and ``diagonalizer`` hold the same data: the columns of the
    diagonalizer are the normalized eigenvectors in index order.
    """

    eigenvalues: np.ndarray
    vectors: np.ndarray
    signs: tuple
    diagonalizer: np.ndarray
    spectrum_class: SpectrumClass
    ordering: tuple
    condition: float

    @property
    def dim(self):
        return len(self.eigenvalues)


@dataclass(frozen=True, eq=False)
class BiorthoSystem:
    """Columns ``psi[:, n]``, ``phi[:, n] = eta psi_n`` and ``upsilon[:, n] = eta_plus psi_n``."""

    psi: np.ndarray
    phi: np.ndarray
    upsilon: np.ndarray

    @property
    def dim(self):
        return self.psi.shape[0]

    def gram(self):
        """Matrix of ``psi_m^dagger upsilon_n``; the identity for a valid system."""
        return dagger(self.psi) @ self.upsilon

    def with_phases(self, phases):
        """Rephase every basis vector by the matching unit complex number."""
        ph = np.asarray(phases, dtype=complex)
        return BiorthoSystem(
            psi=frozen(self.psi * ph),
            phi=frozen(self.phi * ph),
            upsilon=frozen(self.upsilon * ph),
        )


# ---------------------------------------------------------------------------
# eigenvalues
# ---------------------------------------------------------------------------

def _is_real(z, tol):
    return abs(z.imag) <= tol.rel * max(1.0, abs(z))


def _order_key(tol):
    def cmp(x, y):
        a, b = x[1], y[1]
        scale = max(1.0, abs(a), abs(b))
        if abs(a.real - b.real) > tol.rel * scale:
            return -1 if a.real > b.real else 1
        if abs(a.imag - b.imag) > tol.rel * scale:
            return -1 if a.imag > b.imag else 1
        return 0
    return functools.cmp_to_key(cmp)


def sort_order(eigenvalues, tol=DEFAULT_TOL):
    """Indices putting ``eigenvalues`` in descending (real, imag) order."""
    items = list(enumerate(np.asarray(eigenvalues, dtype=complex)))
    return [i for i, _ in sorted(items, key=_order_key(tol))]


def _eig2(H):
    """Closed form for 2x2 matrices from the characteristic polynomial."""
    (h00, h01), (h10, h11) = H
    mean = 0.5 * (h00 + h11)
    half = 0.5 * (h00 - h11)
    root = np.sqrt(complex(half * half + h01 * h10))
    evals = np.array([mean + root, mean - root])
    vecs = np.empty((2, 2), dtype=complex)
    for k, e in enumerate(evals):
        u = np.array([h01, e - h00])
        w = np.array([e - h11, h10])
        cand = u if np.linalg.norm(u) >= np.linalg.norm(w) else w
        nrm = np.linalg.norm(cand)
        if nrm == 0.0:
            # H is a multiple of the identity
            cand = np.eye(2, dtype=complex)[k]
            nrm = 1.0
        vecs[:, k] = cand / nrm
    return evals, vecs


def eig(H, tol=DEFAULT_TOL, ordering=None):
    """Eigenvalues and unit-norm eigenvectors of ``H``, sorted.

    Parameters
    ----------
    H : (n, n) array_like
        Complex matrix with ``n <= 16``.
    tol : Tolerance
    ordering : sequence of int, optional
        Permutation applied after the default sort; ``ordering[k]`` is the
        sorted index placed at position ``k``.

    Returns
    -------
    eigenvalues : (n,) complex ndarray
    vectors : (n, n) complex ndarray
        Column ``k`` is the eigenvector of ``eigenvalues[k]``.

    Raises
    ------
    DegenerateSpectrum
        Two eigenvalues coincide.
    NonDiagonalizable
        The eigenvector matrix is numerically singular.
    NoConvergence
        The iterative solver failed.
    """
    H = as_square(H, "H")
    n = H.shape[0]
    if n > MAX_DIM:
        raise DimensionMismatch(f"dimension {n} exceeds the supported maximum {MAX_DIM}")
    if n == 1:
        evals, vecs = H[0].copy(), np.ones((1, 1), dtype=complex)
    elif n == 2:
        evals, vecs = _eig2(H)
    else:
        try:
            evals, vecs = np.linalg.eig(H)
        except np.linalg.LinAlgError as exc:
            raise NoConvergence(str(exc)) from exc
        vecs = vecs / np.linalg.norm(vecs, axis=0)

    scale = max(1.0, fro(H))
    for i in range(n):
        for j in range(i + 1, n):
            if abs(evals[i] - evals[j]) <= 1e-8 * scale:
                raise DegenerateSpectrum(
                    f"repeated eigenvalue {evals[i]:.6g} (indices {i}, {j})")
    cond = condition_number(vecs)
    if cond > 1.0 / max(tol.abs, 1e-300):
        raise NonDiagonalizable(f"eigenvector matrix condition number {cond:.3g}")
    resid = np.linalg.norm(H @ vecs - vecs * evals, axis=0)
    if np.any(resid > 1e-10 * scale):
        raise NoConvergence(f"eigenpair residual {resid.max():.3g} too large")

    order = sort_order(evals, tol)
    if ordering is not None:
        ordering = [int(k) for k in ordering]
        if sorted(ordering) != list(range(n)):
            raise ValueError(f"ordering {ordering} is not a permutation of 0..{n - 1}")
        order = [order[k] for k in ordering]
    return evals[order], vecs[:, order]


def classify_spectrum(eigenvalues, tol=DEFAULT_TOL):
    """Classify a spectrum as all-real, conjugate-paired or mixed.

    Returns
    -------
    cls : SpectrumClass
    pairs : list of (int, int) or None
        Index pairs ``(i, j)`` with ``E_j = conj(E_i)`` and ``Im E_i > 0``;
        only for ``CONJUGATE_PAIRED``.
    """
    ev = np.asarray(eigenvalues, dtype=complex)
    real = [_is_real(z, tol) for z in ev]
    if all(real):
        return SpectrumClass.ALL_REAL, None
    if any(real) or len(ev) % 2:
        return SpectrumClass.MIXED, None
    unused = set(range(len(ev)))
    pairs = []
    for i in range(len(ev)):
        if i not in unused or ev[i].imag < 0:
            continue
        unused.discard(i)
        target = np.conj(ev[i])
        best = min(unused, key=lambda j: abs(ev[j] - target), default=None)
        if best is None or abs(ev[best] - target) > tol.rel * max(1.0, abs(target)):
            return SpectrumClass.MIXED, None
        unused.discard(best)
        pairs.append((i, best))
    if unused:
        return SpectrumClass.MIXED, None
    return SpectrumClass.CONJUGATE_PAIRED, pairs


def pairing_permutation(pairs):
    """Flatten conjugate pairs into an ordering that keeps each pair adjacent."""
    return [k for pair in pairs for k in pair]


# ---------------------------------------------------------------------------
# normalization
# ---------------------------------------------------------------------------

def auto_phase(v):
    """Rotate ``v`` so its largest-modulus entry is real and positive.

    Entries whose moduli tie within 1e-12 resolve to the lowest index.
    """
    v = as_vector(v)
    mod = np.abs(v)
    top = mod.max()
    if top == 0:
        return v
    k = int(np.flatnonzero(mod >= top * (1 - 1e-12))[0])
    return v * (np.conj(v[k]) / mod[k])


def eta_normalize(vectors, eta, tol=DEFAULT_TOL, phase="auto"):
    """Scale eigenvectors to unit eta-norm magnitude.

    Parameters
    ----------
    vectors : (n, k) array_like
        Raw eigenvectors as columns.
    eta : (n, n) array_like
        Fundamental metric.
    phase : {"auto", "keep"}
        ``"auto"`` applies :func:`auto_phase`; ``"keep"`` preserves the
        incoming phases (used for pinned reference vectors).

    Returns
    -------
    psi : (n, k) ndarray
        Columns with ``psi_n^dagger eta psi_n = eps_n``.
    signs : tuple of int
        The signs ``eps_n``.

    Raises
    ------
    ZeroEtaNorm
        A vector has vanishing eta-norm, as happens for eigenvectors of
        non-real eigenvalues.
    NonRealEtaNorm
        The eta-norm is complex, which only a non-Hermitian metric allows.
    """
    V = np.array(vectors, dtype=complex)
    if V.ndim == 1:
        V = V[:, None]
    eta = as_square(eta, "eta")
    if V.shape[0] != eta.shape[0]:
        raise DimensionMismatch(f"vectors of length {V.shape[0]} vs metric {eta.shape}")
    if phase not in ("auto", "keep"):
        raise ValueError(f"unknown phase convention {phase!r}")
    eta_scale = fro(eta)
    out = np.empty_like(V)
    signs = []
    for k in range(V.shape[1]):
        v = V[:, k]
        if phase == "auto":
            v = auto_phase(v)
        q = complex(np.vdot(v, eta @ v))
        scale = eta_scale * float(np.vdot(v, v).real)
        if abs(q) <= tol.bound(scale):
            raise ZeroEtaNorm(f"vector {k} has zero eta-norm ({abs(q):.3g})")
        if abs(q.imag) > tol.bound(abs(q)) + 1e-8 * abs(q):
            raise NonRealEtaNorm(f"vector {k} has complex eta-norm {q:.6g}")
        signs.append(1 if q.real > 0 else -1)
        out[:, k] = v / np.sqrt(abs(q.real))
    return out, tuple(signs)


def build_diagonalizer(psi, ordering=None, H=None, eigenvalues=None, tol=DEFAULT_TOL):
    """Stack eigenvectors as columns of ``D``.

    When ``H`` and ``eigenvalues`` are given, ``D^-1 H D`` is checked
    against ``diag(eigenvalues)``.
    """
    D = np.array(psi, dtype=complex)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise DimensionMismatch(f"need n eigenvectors of length n, got {D.shape}")
    if ordering is not None:
        D = D[:, list(ordering)]
        if eigenvalues is not None:
            eigenvalues = np.asarray(eigenvalues)[list(ordering)]
    cond = condition_number(D)
    if not np.isfinite(cond) or cond > 1.0 / max(tol.abs, 1e-300):
        raise SingularD(f"diagonalizer is singular (condition number {cond:.3g})")
    if H is not None and eigenvalues is not None:
        H = as_square(H, "H")
        Lam = np.diag(np.asarray(eigenvalues, dtype=complex))
        resid = fro(np.linalg.solve(D, H @ D) - Lam)
        if resid > tol.bound(fro(Lam)) * cond:
            raise NonDiagonalizable(f"D^-1 H D deviates from diagonal by {resid:.3g}")
    return frozen(D)


def build_biortho(psi, eta, eta_plus, tol=DEFAULT_TOL):
    """Assemble ``(psi, eta psi, eta_plus psi)`` and verify ``psi^dagger upsilon = I``."""
    psi = np.array(psi, dtype=complex)
    eta = as_square(eta, "eta")
    eta_plus = as_square(eta_plus, "eta_plus")
    if not (psi.shape[0] == eta.shape[0] == eta_plus.shape[0]):
        raise DimensionMismatch("basis and metrics differ in dimension")
    bio = BiorthoSystem(psi=frozen(psi), phi=frozen(eta @ psi), upsilon=frozen(eta_plus @ psi))
    n = psi.shape[1]
    defect = fro(bio.gram() - np.eye(n))
    if defect > tol.bound(np.sqrt(n)):
        raise BiorthogonalityViolation(f"||psi^dagger upsilon - I|| = {defect:.3g}")
    return bio


def decompose(H, eta, tol=DEFAULT_TOL, ordering=None, phases=None, vectors=None):
    """Run eig -> classify -> eta-normalize -> diagonalizer in one call.

    Parameters
    ----------
    phases : sequence of complex, optional
        Unit phases multiplied onto the auto-phased normalized vectors.
    vectors : (n, n) array_like, optional
        Pinned eigenvectors (columns, in the desired order). They are
        checked against ``H`` and normalized with their phases kept.
    """
    H = as_square(H, "H")
    evals, raw = eig(H, tol, ordering=ordering)
    cls, _ = classify_spectrum(evals, tol)
    phase_mode = "auto"
    if vectors is not None:
        pinned = np.array(vectors, dtype=complex)
        if pinned.shape != H.shape:
            raise DimensionMismatch(f"pinned vectors have shape {pinned.shape}")
        evals = np.array([np.vdot(v, H @ v) / np.vdot(v, v) for v in pinned.T])
        resid = np.linalg.norm(H @ pinned - pinned * evals, axis=0)
        if np.any(resid > 1e-9 * max(1.0, fro(H)) * np.linalg.norm(pinned, axis=0)):
            raise NonDiagonalizable("pinned vectors are not eigenvectors of H")
        raw, phase_mode = pinned, "keep"
    psi, signs = eta_normalize(raw, eta, tol, phase=phase_mode)
    if phases is not None:
        ph = np.asarray(phases, dtype=complex)
        if ph.shape != (psi.shape[1],):
            raise DimensionMismatch(f"expected {psi.shape[1]} phases, got {ph.shape}")
        if np.any(np.abs(np.abs(ph) - 1) > 1e-9):
            raise ValueError("phases must have unit modulus")
        psi = psi * ph
    D = build_diagonalizer(psi, H=H, eigenvalues=evals, tol=tol)
    if ordering is None:
        ordering = range(len(evals))
    return SpectralData(
        eigenvalues=frozen(evals),
        vectors=D,
        signs=signs,
        diagonalizer=D,
        spectrum_class=cls,
        ordering=tuple(int(k) for k in ordering),
        condition=condition_number(D),
    )
