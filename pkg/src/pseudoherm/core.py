"""Dense complex matrix helpers and the linear/antilinear operator algebra.

An antilinear operator is stored as a matrix ``M`` plus a flag; it acts as
``v -> M @ conj(v)``. The complex conjugation ``K0`` is never folded into
the matrix, composition is derived from ``(a o b)(v) = a(b(v))``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch

MAX_DIM = 16


@dataclass(frozen=True)
class Tolerance:
    """Absolute plus relative closeness threshold.

    Two operands are close when their Frobenius distance is at most
    ``abs + rel * scale`` where ``scale`` is the larger operand norm.
    """

    abs: float = 1e-10
    rel: float = 1e-9

    def __post_init__(self):
        if not (self.abs >= 0 and self.rel >= 0):
            raise ValueError("tolerances must be non-negative")

    def bound(self, scale=0.0):
        return self.abs + self.rel * float(scale)

    def close(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        if a.shape != b.shape:
            return False
        scale = max(fro(a), fro(b))
        return fro(a - b) <= self.bound(scale)

    def small(self, residual, scale=0.0):
        return float(residual) <= self.bound(scale)


DEFAULT_TOL = Tolerance()


def frozen(a, dtype=complex):
    """Return a read-only copy of ``a``."""
    out = np.array(a, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


def as_square(a, name="matrix"):
    """Validate ``a`` as a finite square complex matrix and return a copy."""
    m = np.array(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DimensionMismatch(f"{name} must be a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return m


def as_vector(v, name="vector"):
    x = np.array(v, dtype=complex)
    if x.ndim != 1:
        raise DimensionMismatch(f"{name} must be one-dimensional, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{name} has non-finite entries")
    return x


def fro(a):
    return float(np.linalg.norm(np.asarray(a), "fro" if np.ndim(a) == 2 else None))


def dagger(a):
    return np.conj(np.asarray(a)).T


def _check_dims(*dims):
    if len(set(dims)) != 1:
        raise DimensionMismatch(f"dimension mismatch: {dims}")


@dataclass(frozen=True, eq=False)
class OperatorRep:
    """A linear (``v -> M v``) or antilinear (``v -> M conj(v)``) operator."""

    matrix: np.ndarray
    antilinear: bool = False

    def __post_init__(self):
        object.__setattr__(self, "matrix", frozen(as_square(self.matrix, "operator matrix")))
        object.__setattr__(self, "antilinear", bool(self.antilinear))

    @property
    def dim(self):
        return self.matrix.shape[0]

    def __call__(self, v):
        return apply(self, v)

    def __matmul__(self, other):
        return compose(self, other)

    def __repr__(self):
        kind = "antilinear" if self.antilinear else "linear"
        return f"OperatorRep({kind}, {self.matrix.tolist()!r})"

    @classmethod
    def identity(cls, n):
        return cls(np.eye(n), antilinear=False)

    @classmethod
    def conjugation(cls, n):
        """The bare complex conjugation ``K0`` in dimension ``n``."""
        return cls(np.eye(n), antilinear=True)


def apply(op, v):
    """Apply ``op`` to the vector (or column stack) ``v``."""
    x = np.asarray(v, dtype=complex)
    _check_dims(op.dim, x.shape[0])
    if op.antilinear:
        x = np.conj(x)
    return op.matrix @ x


def compose(a, b):
    """Operator ``a o b``; antilinearity combines by XOR.

    If ``a`` is antilinear its conjugation passes through ``b``'s matrix:
    ``A conj(B op_b(v)) = A conj(B) conj(op_b(v))``.
    """
    _check_dims(a.dim, b.dim)
    bm = np.conj(b.matrix) if a.antilinear else b.matrix
    return OperatorRep(a.matrix @ bm, antilinear=a.antilinear != b.antilinear)


def square(op):
    return compose(op, op)


def symmetry_residual(H, op):
    """Frobenius norm of the commutator ``[H, op]`` expressed on matrices.

    For an antilinear ``op = M K0`` the commutator vanishes iff
    ``H M = M conj(H)``.
    """
    H = as_square(H, "H")
    _check_dims(H.shape[0], op.dim)
    M = op.matrix
    rhs = M @ (np.conj(H) if op.antilinear else H)
    return fro(H @ M - rhs)


def is_involutory(op, tol=DEFAULT_TOL):
    sq = square(op)
    return (not sq.antilinear) and tol.close(sq.matrix, np.eye(op.dim))


def involution_residual(op):
    sq = square(op)
    if sq.antilinear:
        return float("inf")
    return fro(sq.matrix - np.eye(op.dim))


def condition_number(a):
    s = np.linalg.svd(np.asarray(a), compute_uv=False)
    if s[-1] == 0:
        return float("inf")
    return float(s[0] / s[-1])
