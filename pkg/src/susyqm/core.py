"""Dense complex operator arithmetic shared by every other module.

Operators are plain numpy ``complex128`` arrays.  :func:`as_operator`
checks squareness and finiteness once, at the boundary; the algebra
helpers stay thin after that.  All residual comparisons in the package
are relative, scaled by ``max(1, norm)`` of the participating operators,
so validators behave uniformly across operator scales.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ConvergenceError",
    "CrossCheckError",
    "DEFAULT_POLICY",
    "NumericPolicy",
    "RelationCheck",
    "ShapeError",
    "SIGMA1",
    "SIGMA2",
    "SIGMA3",
    "ValidationError",
    "adjoint",
    "anticommutator",
    "as_operator",
    "commutator",
    "frozen_copy",
    "is_hermitian",
    "rel_residual",
    "residual_norm",
]


class ShapeError(ValueError):
    """Operands have incompatible or non-square shapes."""


class ValidationError(ValueError):
    """A validated object failed one or more of its defining relations.

    ``failures`` holds the :class:`RelationCheck` entries that did not pass.
    """

    def __init__(self, message: str, failures=()):
        super().__init__(message)
        self.failures = tuple(failures)


class ConvergenceError(RuntimeError):
    """An iterative routine exhausted its sweep budget."""


class CrossCheckError(RuntimeError):
    """Two independent formulas for the same quantity disagree."""


@dataclass(frozen=True)
class RelationCheck:
    """Scalar residual of one defining relation, with its pass verdict."""

    name: str
    residual: float
    tolerance: float
    passed: bool


@dataclass(frozen=True)
class NumericPolicy:
    """Tolerances for validators, kernel detection and the eigensolver.

    Every tolerance is relative.  Hermiticity and algebra residuals are
    scaled by ``max(1, norm)`` of the operands, kernel cutoffs by the
    largest singular value, pairing windows by the larger eigenvalue of
    a candidate pair.
    """

    hermiticity_tol: float = 1e-10
    algebra_tol: float = 1e-10
    kernel_tol: float = 1e-8
    eigensolver_tol: float = 1e-12
    pairing_tol: float = 1e-8

    def __post_init__(self):
        for name in (
            "hermiticity_tol",
            "algebra_tol",
            "kernel_tol",
            "eigensolver_tol",
            "pairing_tol",
        ):
            value = getattr(self, name)
            if not 0.0 < value <= 1e-3:
                raise ValueError(f"{name} must lie in (0, 1e-3], got {value!r}")


DEFAULT_POLICY = NumericPolicy()


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


SIGMA1 = _readonly(np.array([[0, 1], [1, 0]], dtype=np.complex128))
SIGMA2 = _readonly(np.array([[0, -1j], [1j, 0]], dtype=np.complex128))
SIGMA3 = _readonly(np.array([[1, 0], [0, -1]], dtype=np.complex128))


def as_operator(a, name: str = "operator") -> np.ndarray:
    """Coerce ``a`` to a square, finite complex matrix."""
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ShapeError(f"{name} must be a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def frozen_copy(a) -> np.ndarray:
    """Defensive read-only copy for values stored in result objects."""
    return _readonly(np.array(a))


def _same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise ShapeError(f"incompatible operators: shapes {a.shape} and {b.shape}")


def commutator(a, b) -> np.ndarray:
    """Return ``AB - BA``."""
    a = as_operator(a, "A")
    b = as_operator(b, "B")
    _same_dim(a, b)
    return a @ b - b @ a


def anticommutator(a, b) -> np.ndarray:
    """Return ``AB + BA``."""
    a = as_operator(a, "A")
    b = as_operator(b, "B")
    _same_dim(a, b)
    return a @ b + b @ a


def adjoint(a) -> np.ndarray:
    """Conjugate transpose (also accepts rectangular blocks)."""
    return np.asarray(a, dtype=np.complex128).conj().T


def residual_norm(a) -> float:
    """Frobenius norm, the scalar residual of a matrix equation."""
    return float(np.linalg.norm(np.asarray(a)))


def rel_residual(x, *operands) -> float:
    """Norm of ``x`` relative to the largest operand scale.

    The scale is ``max(1, ||op||_F over operands)`` so the result is
    comparable against a :class:`NumericPolicy` tolerance regardless of
    operator magnitudes.
    """
    scale = 1.0
    for op in operands:
        scale = max(scale, residual_norm(op))
    return residual_norm(x) / scale


def is_hermitian(a, policy: NumericPolicy = DEFAULT_POLICY) -> bool:
    """True iff ``||A - A^dag|| <= hermiticity_tol * max(1, ||A||)``."""
    arr = as_operator(a)
    res = residual_norm(arr - adjoint(arr))
    return res <= policy.hermiticity_tol * max(1.0, residual_norm(arr))
