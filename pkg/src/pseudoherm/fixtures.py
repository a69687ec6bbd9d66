"""Parameterized example Hamiltonians and seeded random constructions.

Each named family pins its reference eigenvectors with fixed phases, since
T, PT and CPT change under rephasing of the eigenvectors while P, C and
eta_plus do not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import MAX_DIM, condition_number, frozen

DEFAULT_S = 1 + 1j


@dataclass(frozen=True, eq=False)
class PaperFixture:
    """A named Hamiltonian with its fundamental metric and reference values.

    Attributes
    ----------
    name : str
    hamiltonian : ndarray
    fundamental_metric : ndarray
    pinned_eigenvectors : ndarray or None
        Columns in eigenvalue order (larger root first), phases as printed.
    expected : dict
        Named expected matrices and scalars.
    params : dict
    metrics : dict
        Every closed-form metric known for the family.
    real_spectrum : bool
    """

    name: str
    hamiltonian: np.ndarray
    fundamental_metric: np.ndarray
    pinned_eigenvectors: np.ndarray = None
    expected: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    metrics: dict = field(default_factory=dict)
    real_spectrum: bool = True

    @property
    def dim(self):
        return self.hamiltonian.shape[0]


def _freeze_dict(d):
    return {k: (frozen(v) if isinstance(v, np.ndarray) else v) for k, v in d.items()}


def _make(name, H, eta, pinned=None, expected=None, params=None, metrics=None, real=True):
    return PaperFixture(
        name=name,
        hamiltonian=frozen(H),
        fundamental_metric=frozen(eta),
        pinned_eigenvectors=None if pinned is None else frozen(pinned),
        expected=_freeze_dict(expected or {}),
        params=dict(params or {}),
        metrics=_freeze_dict(metrics or {}),
        real_spectrum=real,
    )


def eq3_hamiltonian(a, b, c):
    return np.array([[a, -1j * b], [1j * c, a]], dtype=complex)


def family_eq3(a, b, c, s=DEFAULT_S):
    """``H = [[a, -ib], [ic, a]]`` with its four closed-form metrics.

    The spectrum ``a +- sqrt(bc)`` is real iff ``bc > 0``; otherwise the
    fixture is still built with ``real_spectrum=False``.
    """
    H = eq3_hamiltonian(a, b, c)
    real = b * c > 0
    root = np.sqrt(complex(b * c))
    metrics = {
        "eta1": np.array([[0, -1j], [1j, 0]]),
        "eta4": np.array([[0, -1], [1, 0]], dtype=complex),
    }
    pinned = None
    params = {"a": a, "b": b, "c": c, "s": s}
    if b != 0 and c != 0:
        r = np.sqrt(complex(c / b))
        if real and b > 0:
            r = float(r.real)
        params["r"] = r
        metrics["eta2"] = np.array([[r * r, -s], [s, 1]], dtype=complex)
        metrics["eta3"] = np.array([[r, 0], [0, 1 / r]], dtype=complex)
        if real and b > 0:
            k = math.sqrt(r / 2)
            pinned = k * np.array([[-1j / r, 1 / r], [1, -1j]])
    expected = {"eigenvalues": np.array([a + root, a - root])}
    return _make(f"eq3(a={a}, b={b}, c={c})", H, metrics["eta1"], pinned, expected,
                 params, metrics, real)


def eq23_hamiltonian(a, b, c):
    return np.array([[a - c, 1j * b], [1j * b, a + c]], dtype=complex)


def family_eq23(a, b, c):
    """``H = [[a - c, ib], [ib, a + c]]`` with metric ``diag(1, -1)``.

    Pinned vectors ``[1, -ir]`` and ``[1, -i/r]`` are left unnormalized;
    they are transpose-orthogonal for every real ``r``.
    """
    H = eq23_hamiltonian(a, b, c)
    eta = np.diag([1.0, -1.0]).astype(complex)
    real = c * c > b * b
    root = np.sqrt(complex(c * c - b * b))
    params = {"a": a, "b": b, "c": c}
    pinned = None
    expected = {"eigenvalues": np.array([a + root, a - root])}
    if real and b != 0:
        r = (c + root.real) / b
        params["r"] = r
        pinned = np.array([[1, 1], [-1j * r, -1j / r]])
        expected["transpose_product"] = complex(pinned[:, 0] @ pinned[:, 1])
    return _make(f"eq23(a={a}, b={b}, c={c})", H, eta, pinned, expected, params,
                 {"eta": eta}, real)


def eq28_hamiltonian(a, b, c, x):
    return np.array([[a, -1j * c / x], [1j * c * x, b]], dtype=complex)


def eq28_angle(a, b, c):
    """Mixing angle with ``tan(2 theta) = 2c / (a - b)``, larger root first."""
    return 0.5 * math.atan2(2 * c, a - b)


def family_eq28(a, b, c, x):
    """``H = [[a, -ic/x], [icx, b]]`` with the secular metric ``diag(x, 1/x)``."""
    if x == 0:
        raise ValueError("x must be non-zero")
    H = eq28_hamiltonian(a, b, c, x)
    eta = np.diag([x, 1 / x]).astype(complex)
    th = eq28_angle(a, b, c)
    ct, st = math.cos(th), math.sin(th)
    c2, s2 = math.cos(2 * th), math.sin(2 * th)
    sx = math.sqrt(abs(x))
    pinned = np.array([[sx * ct / x, 1j * st / sx], [1j * sx * st, x * ct / sx]])
    disc = math.sqrt((a - b) ** 2 + 4 * c * c)
    expected = {
        "eigenvalues": np.array([0.5 * (a + b + disc), 0.5 * (a + b - disc)]),
        "theta": th,
        "P": np.array([[c2 / x, -1j * s2], [1j * s2, -x * c2]]),
        "T": np.array([[x * c2, 1j * s2], [1j * s2, c2 / x]]),
        "C": np.array([[c2, -1j * s2 / x], [1j * x * s2, -c2]]),
        "eta_plus": eta,
        "transpose_product": 1j * st * ct * (1 + x * x) / x,
    }
    return _make(f"eq28(a={a}, b={b}, c={c}, x={x})", H, eta, pinned, expected,
                 {"a": a, "b": b, "c": c, "x": x, "theta": th}, {"eta": eta})


def fixture_I1(r=2.0, a=1.0):
    """``family_eq3`` at ``b = 1, c = r^2`` with the reference operator values."""
    if r <= 0:
        raise ValueError("r must be positive")
    base = family_eq3(a, 1.0, r * r)
    expected = dict(base.expected)
    expected.update({
        "eta_plus": np.diag([r, 1 / r]),
        "P": np.array([[0, -1j], [1j, 0]]),
        "T": np.array([[0, -1j], [-1j, 0]]),
        "C": np.array([[0, -1j / r], [1j * r, 0]]),
        "PT": np.diag([-1.0, 1.0]),
        "CPT": np.array([[0, -1j / r], [-1j * r, 0]]),
        "signs": (1, -1),
        "transpose_product": -1j * (1 + r * r) / (2 * r),
    })
    return _make(f"I1(r={r}, a={a})", base.hamiltonian, base.fundamental_metric,
                 base.pinned_eigenvectors, expected, {**base.params, "r": r}, base.metrics)


def fixture_I2(a=3.0, b=1.0, c=1.0, x=2.0):
    """``family_eq28`` plus the extra claims of the second worked example."""
    base = family_eq28(a, b, c, x)
    expected = dict(base.expected)
    expected["CP_inverse"] = base.fundamental_metric
    expected["signs"] = (1, 1)
    return _make(f"I2(a={a}, b={b}, c={c}, x={x})", base.hamiltonian, base.fundamental_metric,
                 base.pinned_eigenvectors, expected, base.params, base.metrics)


# ---------------------------------------------------------------------------
# random constructions
# ---------------------------------------------------------------------------

COND_CAP = 1e3


def _random_diagonalizer(n, rng):
    # complex Ginibre entries, redrawn until cond(D) < COND_CAP
    while True:
        D = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
        if condition_number(D) < COND_CAP:
            return D


def random_real_spectrum(n, seed):
    """``H = D diag(lam) D^-1`` with real ``lam`` spaced by more than 0.1.

    Returns
    -------
    H, D : ndarray
    lam : (n,) float ndarray, descending
    """
    if not 1 <= n <= MAX_DIM:
        raise ValueError(f"n must be in 1..{MAX_DIM}")
    rng = np.random.default_rng(seed)
    D = _random_diagonalizer(n, rng)
    gaps = rng.uniform(0.2, 1.5, size=n - 1)
    lam = np.concatenate([[0.0], -np.cumsum(gaps)])
    lam = lam - lam.mean() + rng.uniform(-1, 1)
    H = D @ np.diag(lam) @ np.linalg.inv(D)
    return H, D, lam


def random_conjugate_paired(n_pairs, seed):
    """``H = D diag(l1, conj(l1), l2, conj(l2), ...) D^-1`` with ``Im l > 0.1``.

    Columns of ``D`` are ordered so each conjugate pair is adjacent.
    """
    if not 1 <= 2 * n_pairs <= MAX_DIM:
        raise ValueError("dimension out of range")
    rng = np.random.default_rng(seed)
    n = 2 * n_pairs
    D = _random_diagonalizer(n, rng)
    re = np.cumsum(rng.uniform(0.2, 1.5, size=n_pairs))
    im = rng.uniform(0.2, 2.0, size=n_pairs)
    lam = np.empty(n, dtype=complex)
    lam[0::2] = re + 1j * im
    lam[1::2] = re - 1j * im
    H = D @ np.diag(lam) @ np.linalg.inv(D)
    return H, D, lam


def random_hermitian(n, seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (A + A.conj().T)
