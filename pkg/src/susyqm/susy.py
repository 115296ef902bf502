"""Supersymmetric system validators, equivalences and constructions.

Two flavours of supercharge are supported:

* *real* charges: self-adjoint ``Q_i`` with ``{Q_i, Q_j} = 2 delta_ij H``;
* *complex* charges: nilpotent ``q_i`` with ``{q_i, q_j^dag} = 2 delta_ij H``
  and ``{q_i, q_j} = 0`` (a self-adjoint complex charge would force
  ``H = 0``, which is excluded).

A *graded* system additionally carries an involution K that anticommutes
with every charge.  Validators return rich per-relation residual reports
rather than booleans so tolerance behaviour stays observable; failures
raise :class:`ValidationError` naming each broken relation.

The constructive results implemented here: real/complex charge-pair
conversion (both directions), the second supercharge ``+-i K Q``, the
sign test ``Q2 = -+ i K Q1`` linking any charge pair produced by
:func:`charges_from_parts`, the involution built from two anticommuting
charges with its kernel-extension freedom, and the reduction of a graded
system to the standard block representation ``H = diag(A^dag A, A A^dag)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import (
    DEFAULT_POLICY,
    CrossCheckError,
    NumericPolicy,
    RelationCheck,
    ShapeError,
    SIGMA1,
    SIGMA2,
    SIGMA3,
    ValidationError,
    adjoint,
    anticommutator,
    as_operator,
    commutator,
    frozen_copy,
    residual_norm,
)
from .grading import (
    GradingBasis,
    Involution,
    grading_basis,
    involution_checks,
    validate_involution,
)
from .spectral import eigh

__all__ = [
    "GradedSystem",
    "PairingSign",
    "StandardRepresentation",
    "SuperchargeSystem",
    "charges_from_parts",
    "check_pairing_relation",
    "complex_from_real",
    "construct_involution",
    "hamiltonian_from_parts",
    "hermitian_parts",
    "real_from_complex",
    "reparametrize",
    "second_supercharge",
    "standard_representation",
    "validate_complex_system",
    "validate_graded_complex_system",
    "validate_graded_real_system",
    "validate_real_system",
]

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class SuperchargeSystem:
    """Hamiltonian with validated supercharges (no grading operator)."""

    hamiltonian: np.ndarray
    charges: tuple[np.ndarray, ...]
    complex_charges: bool
    checks: tuple[RelationCheck, ...]

    @property
    def dim(self) -> int:
        return self.hamiltonian.shape[0]


@dataclass(frozen=True)
class GradedSystem:
    """Supercharge system together with an involution anticommuting with
    every charge."""

    hamiltonian: np.ndarray
    involution: Involution
    charges: tuple[np.ndarray, ...]
    complex_charges: bool
    checks: tuple[RelationCheck, ...]

    @property
    def dim(self) -> int:
        return self.hamiltonian.shape[0]


@dataclass(frozen=True)
class StandardRepresentation:
    """Grading-adapted block data: A maps the bosonic to the fermionic
    sector, ``h_plus``/``h_minus`` are the sector restrictions of H."""

    basis: GradingBasis
    a_operator: np.ndarray
    h_plus: np.ndarray
    h_minus: np.ndarray


class PairingSign(enum.Enum):
    MINUS = "Q2 = -iKQ1"
    PLUS = "Q2 = +iKQ1"
    FAIL = "no sign relation"


# ---------------------------------------------------------------------------
# validators


def _coerce_inputs(h, charges, label: str):
    h_arr = as_operator(h, "H")
    if not charges:
        raise ValidationError("at least one supercharge is required")
    charge_arrs = []
    for i, q in enumerate(charges):
        arr = as_operator(q, f"{label}{i + 1}")
        if arr.shape != h_arr.shape:
            raise ShapeError(
                f"{label}{i + 1} has shape {arr.shape}, expected {h_arr.shape}"
            )
        charge_arrs.append(arr)
    return h_arr, charge_arrs


def _system_scale(h, charges, k=None) -> float:
    scale = max(1.0, residual_norm(h))
    for q in charges:
        scale = max(scale, residual_norm(q))
    if k is not None:
        scale = max(scale, residual_norm(k))
    return scale


def _herm_check(name: str, m, policy: NumericPolicy) -> RelationCheck:
    res = residual_norm(m - adjoint(m)) / max(1.0, residual_norm(m))
    return RelationCheck(
        f"{name} self-adjoint", res, policy.hermiticity_tol,
        res <= policy.hermiticity_tol,
    )


def _nonzero_check(h, policy: NumericPolicy) -> RelationCheck:
    res = residual_norm(h)
    return RelationCheck("H != 0", res, policy.algebra_tol,
                         res > policy.algebra_tol)


def _real_checks(h, charges, policy, scale):
    checks = [_herm_check("H", h, policy), _nonzero_check(h, policy)]
    tol = policy.algebra_tol
    n = len(charges)
    for i in range(n):
        checks.append(_herm_check(f"Q{i + 1}", charges[i], policy))
    for i in range(n):
        for j in range(i, n):
            target = 2.0 * h if i == j else 0.0
            res = residual_norm(charges[i] @ charges[j]
                                + charges[j] @ charges[i] - target) / scale
            rhs = "2H" if i == j else "0"
            checks.append(RelationCheck(
                f"{{Q{i + 1},Q{j + 1}}} = {rhs}", res, tol, res <= tol))
    for i in range(n):
        # Conservation of the charges follows from the algebra; verified
        # anyway so a failure report points at the right operator.
        res = residual_norm(h @ charges[i] - charges[i] @ h) / scale
        checks.append(RelationCheck(f"[H,Q{i + 1}] = 0", res, tol, res <= tol))
    return checks


def _complex_checks(h, charges, policy, scale):
    checks = [_herm_check("H", h, policy), _nonzero_check(h, policy)]
    tol = policy.algebra_tol
    n = len(charges)
    for i, q in enumerate(charges):
        res = residual_norm(q - adjoint(q)) / max(1.0, residual_norm(q))
        checks.append(RelationCheck(
            f"q{i + 1} not self-adjoint (a self-adjoint complex charge "
            f"forces H = 0)",
            res, policy.hermiticity_tol, res > policy.hermiticity_tol))
    for i in range(n):
        for j in range(i, n):
            target = 2.0 * h if i == j else 0.0
            res = residual_norm(charges[i] @ adjoint(charges[j])
                                + adjoint(charges[j]) @ charges[i]
                                - target) / scale
            rhs = "2H" if i == j else "0"
            checks.append(RelationCheck(
                f"{{q{i + 1},q{j + 1}^dag}} = {rhs}", res, tol, res <= tol))
            res = residual_norm(charges[i] @ charges[j]
                                + charges[j] @ charges[i]) / scale
            checks.append(RelationCheck(
                f"{{q{i + 1},q{j + 1}}} = 0", res, tol, res <= tol))
            res = residual_norm(adjoint(charges[i]) @ adjoint(charges[j])
                                + adjoint(charges[j]) @ adjoint(charges[i])) / scale
            checks.append(RelationCheck(
                f"{{q{i + 1}^dag,q{j + 1}^dag}} = 0", res, tol, res <= tol))
    for i in range(n):
        res = residual_norm(h @ charges[i] - charges[i] @ h) / scale
        checks.append(RelationCheck(f"[H,q{i + 1}] = 0", res, tol, res <= tol))
    return checks


def _graded_checks(h, k, charges, policy, scale, label):
    checks = involution_checks(k, policy)
    tol = policy.algebra_tol
    for i, q in enumerate(charges):
        res = residual_norm(k @ q + q @ k) / scale
        checks.append(RelationCheck(
            f"{{K,{label}{i + 1}}} = 0", res, tol, res <= tol))
    res = residual_norm(h @ k - k @ h) / scale
    checks.append(RelationCheck("[H,K] = 0", res, tol, res <= tol))
    return checks


def _raise_failures(checks, what: str):
    failures = [c for c in checks if not c.passed]
    if failures:
        detail = "; ".join(
            f"{c.name} (residual {c.residual:.3e}, tolerance {c.tolerance:.1e})"
            for c in failures
        )
        raise ValidationError(f"{what}: {detail}", failures)


def validate_real_system(h, charges: Sequence,
                         policy: NumericPolicy = DEFAULT_POLICY) -> SuperchargeSystem:
    """Validate self-adjoint charges satisfying ``{Q_i,Q_j} = 2 delta_ij H``."""
    h_arr, charge_arrs = _coerce_inputs(h, charges, "Q")
    scale = _system_scale(h_arr, charge_arrs)
    checks = _real_checks(h_arr, charge_arrs, policy, scale)
    _raise_failures(checks, "not a valid real-supercharge system")
    return SuperchargeSystem(
        frozen_copy(h_arr), tuple(frozen_copy(q) for q in charge_arrs),
        False, tuple(checks))


def validate_complex_system(h, charges: Sequence,
                            policy: NumericPolicy = DEFAULT_POLICY) -> SuperchargeSystem:
    """Validate nilpotent complex charges with ``{q_i,q_j^dag} = 2 delta_ij H``."""
    h_arr, charge_arrs = _coerce_inputs(h, charges, "q")
    scale = _system_scale(h_arr, charge_arrs)
    checks = _complex_checks(h_arr, charge_arrs, policy, scale)
    _raise_failures(checks, "not a valid complex-supercharge system")
    return SuperchargeSystem(
        frozen_copy(h_arr), tuple(frozen_copy(q) for q in charge_arrs),
        True, tuple(checks))


def validate_graded_real_system(h, k, charges: Sequence,
                                policy: NumericPolicy = DEFAULT_POLICY) -> GradedSystem:
    """Real-supercharge validation plus ``{K,Q_i} = 0`` for an involution K."""
    h_arr, charge_arrs = _coerce_inputs(h, charges, "Q")
    k_arr = as_operator(k, "K")
    if k_arr.shape != h_arr.shape:
        raise ShapeError(f"K has shape {k_arr.shape}, expected {h_arr.shape}")
    scale = _system_scale(h_arr, charge_arrs, k_arr)
    checks = _real_checks(h_arr, charge_arrs, policy, scale)
    checks += _graded_checks(h_arr, k_arr, charge_arrs, policy, scale, "Q")
    _raise_failures(checks, "not a valid graded real-supercharge system")
    return GradedSystem(
        frozen_copy(h_arr), Involution(frozen_copy(k_arr)),
        tuple(frozen_copy(q) for q in charge_arrs), False, tuple(checks))


def validate_graded_complex_system(h, k, charges: Sequence,
                                   policy: NumericPolicy = DEFAULT_POLICY) -> GradedSystem:
    """Complex-supercharge validation plus ``{K,q_i} = 0``."""
    h_arr, charge_arrs = _coerce_inputs(h, charges, "q")
    k_arr = as_operator(k, "K")
    if k_arr.shape != h_arr.shape:
        raise ShapeError(f"K has shape {k_arr.shape}, expected {h_arr.shape}")
    scale = _system_scale(h_arr, charge_arrs, k_arr)
    checks = _complex_checks(h_arr, charge_arrs, policy, scale)
    checks += _graded_checks(h_arr, k_arr, charge_arrs, policy, scale, "q")
    _raise_failures(checks, "not a valid graded complex-supercharge system")
    return GradedSystem(
        frozen_copy(h_arr), Involution(frozen_copy(k_arr)),
        tuple(frozen_copy(q) for q in charge_arrs), True, tuple(checks))


# ---------------------------------------------------------------------------
# charge-pair conversions


def complex_from_real(q1, q2) -> np.ndarray:
    """Combine two real charges into ``q = (Q1 + i Q2) / sqrt(2)``."""
    a = as_operator(q1, "Q1")
    b = as_operator(q2, "Q2")
    if a.shape != b.shape:
        raise ShapeError(f"charge shapes differ: {a.shape} vs {b.shape}")
    return (a + 1j * b) / _SQRT2


def real_from_complex(q) -> tuple[np.ndarray, np.ndarray]:
    """Split a complex charge into its two real charges (inverse of
    :func:`complex_from_real`)."""
    arr = as_operator(q, "q")
    qd = adjoint(arr)
    return (arr + qd) / _SQRT2, -1j * (arr - qd) / _SQRT2


def _coerce_involution(k, policy: NumericPolicy) -> Involution:
    if isinstance(k, Involution):
        return k
    return validate_involution(k, policy)


def second_supercharge(k, q, sign: int = 1,
                       policy: NumericPolicy = DEFAULT_POLICY) -> np.ndarray:
    """Build the companion charge ``Q' = sign * i K Q`` of a single-charge
    graded system.

    The output is re-verified to be self-adjoint, odd with respect to K,
    to square to ``Q^2`` and to anticommute with Q.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    inv = _coerce_involution(k, policy)
    q_arr = as_operator(q, "Q")
    h = q_arr @ q_arr
    validate_graded_real_system(h, inv.matrix, [q_arr], policy)
    q_prime = sign * 1j * (inv.matrix @ q_arr)

    scale = _system_scale(h, [q_arr, q_prime], inv.matrix)
    tol = policy.algebra_tol
    residuals = {
        "Q'^2 = Q^2": residual_norm(q_prime @ q_prime - h) / scale,
        "{Q,Q'} = 0": residual_norm(anticommutator(q_arr, q_prime)) / scale,
        "{K,Q'} = 0": residual_norm(anticommutator(inv.matrix, q_prime)) / scale,
    }
    checks = [_herm_check("Q'", q_prime, policy)]
    checks += [RelationCheck(name, res, tol, res <= tol)
               for name, res in residuals.items()]
    _raise_failures(checks, "second supercharge failed its post conditions")
    return q_prime


def check_pairing_relation(k, q1, q2,
                           policy: NumericPolicy = DEFAULT_POLICY) -> PairingSign:
    """Report which of ``Q2 = -iKQ1`` or ``Q2 = +iKQ1`` holds.

    ``FAIL`` is reserved for systems sneaking past the validator while
    satisfying neither sign relation (possible for degenerate spectra,
    where the second charge is not unique up to sign).
    """
    inv = _coerce_involution(k, policy)
    a = as_operator(q1, "Q1")
    b = as_operator(q2, "Q2")
    h = a @ a
    validate_graded_real_system(h, inv.matrix, [a, b], policy)
    scale = _system_scale(h, [a, b], inv.matrix)
    kq1 = 1j * (inv.matrix @ a)
    if residual_norm(b + kq1) / scale <= policy.algebra_tol:
        return PairingSign.MINUS
    if residual_norm(b - kq1) / scale <= policy.algebra_tol:
        return PairingSign.PLUS
    return PairingSign.FAIL


# ---------------------------------------------------------------------------
# involution construction


def construct_involution(q1, q2, d_plus: int | None = None,
                         policy: NumericPolicy = DEFAULT_POLICY) -> Involution:
    """Build an involution from two anticommuting charges.

    On the orthogonal complement of ``ker Q1`` the involution is forced:
    ``K = i Q2 Q1^+``.  On the kernel itself (whose dimension ``d`` is
    shared by both charges) any choice of signature works; the extension
    used here is diagonal in the kernel eigenbasis with ``d_plus``
    entries ``+1`` followed by ``d - d_plus`` entries ``-1``.  ``d_plus``
    defaults to ``d``.  The sign convention makes
    :func:`check_pairing_relation` report ``MINUS``; the opposite overall
    sign is reachable by swapping the charge order.

    The pseudo-inverse and the kernel basis are taken from one
    eigendecomposition of Q1 so borderline eigenvalues cannot be
    classified inconsistently between the two ingredients.
    """
    a = as_operator(q1, "Q1")
    b = as_operator(q2, "Q2")
    if a.shape != b.shape:
        raise ShapeError(f"charge shapes differ: {a.shape} vs {b.shape}")
    h = a @ a
    validate_real_system(h, [a, b], policy)

    dec = eigh(a, policy)
    magnitudes = np.abs(dec.eigenvalues)
    scale = float(magnitudes.max(initial=0.0))
    keep = magnitudes > policy.kernel_tol * scale
    d = int(np.count_nonzero(~keep))
    if d_plus is None:
        d_plus = d
    if not 0 <= d_plus <= d:
        raise ValueError(
            f"d_plus must lie in [0, {d}] (dim ker Q1 = {d}), got {d_plus}")

    inverted = np.zeros_like(dec.eigenvalues)
    inverted[keep] = 1.0 / dec.eigenvalues[keep]
    u = dec.eigenvectors
    q1_pinv = (u * inverted) @ adjoint(u)
    kernel_vecs = u[:, ~keep]
    signature = np.concatenate(
        [np.ones(d_plus), -np.ones(d - d_plus)]).astype(np.complex128)
    k = 1j * (b @ q1_pinv) + (kernel_vecs * signature) @ adjoint(kernel_vecs)

    involution = validate_involution(k, policy)
    validate_graded_real_system(h, involution.matrix, [a, b], policy)
    pair_res = residual_norm(b + 1j * (involution.matrix @ a)) / _system_scale(
        h, [a, b], involution.matrix)
    if pair_res > policy.algebra_tol:
        raise CrossCheckError(
            f"constructed involution violates Q2 = -iKQ1 "
            f"(residual {pair_res:.3e})")
    return involution


# ---------------------------------------------------------------------------
# standard representation


def standard_representation(system: GradedSystem,
                            policy: NumericPolicy = DEFAULT_POLICY) -> StandardRepresentation:
    """Rotate a single-charge graded system into grading-adapted blocks.

    The map A is read off the charge's off-diagonal block (for a complex
    charge ``q = sqrt(2) [[0, A^dag], [0, 0]]``, for a real charge the
    lower-left block of ``Q``); the sector blocks of H are then verified
    against ``A^dag A`` and ``A A^dag``.  A is only determined up to the
    unitary freedom of the grading basis, so its contract is spectral,
    not entrywise.
    """
    if len(system.charges) != 1:
        raise ValueError(
            f"standard representation needs exactly one charge, "
            f"got {len(system.charges)}")
    q = system.charges[0]
    h = system.hamiltonian
    basis = grading_basis(system.involution, policy)
    u = basis.unitary
    nb = basis.dim_bosonic
    scale = _system_scale(h, [q])
    tol = policy.algebra_tol

    qc = adjoint(u) @ q @ u
    diag_res = math.hypot(residual_norm(qc[:nb, :nb]),
                          residual_norm(qc[nb:, nb:])) / scale
    if diag_res > tol:
        raise ValidationError(
            f"charge is not odd in the grading basis "
            f"(diagonal-block residual {diag_res:.3e})")
    if system.complex_charges:
        lower_res = residual_norm(qc[nb:, :nb]) / scale
        if lower_res > tol:
            raise ValidationError(
                f"complex charge has a lower-left block "
                f"(residual {lower_res:.3e}); it does not reduce to the "
                f"standard strictly-upper form")
        a_op = adjoint(qc[:nb, nb:]) / _SQRT2
    else:
        a_op = qc[nb:, :nb]

    hc = adjoint(u) @ h @ u
    h_plus = hc[:nb, :nb]
    h_minus = hc[nb:, nb:]
    res_plus = residual_norm(h_plus - adjoint(a_op) @ a_op) / scale
    res_minus = residual_norm(h_minus - a_op @ adjoint(a_op)) / scale
    if res_plus > tol or res_minus > tol:
        raise ValidationError(
            f"H blocks do not match the partner forms: "
            f"|h_plus - A^dag A| = {res_plus:.3e}, "
            f"|h_minus - A A^dag| = {res_minus:.3e} (tolerance {tol:.1e})")
    return StandardRepresentation(
        basis, frozen_copy(a_op), frozen_copy(h_plus), frozen_copy(h_minus))


# ---------------------------------------------------------------------------
# general single-charge and charge-pair forms


def hermitian_parts(a1) -> tuple[np.ndarray, np.ndarray]:
    """Split ``A1 = a1 + i a2`` into its Hermitian and anti-Hermitian parts.

    ``a1`` is exactly Hermitian by construction; ``a2`` is Hermitian to
    rounding and ``a1 + i a2`` reproduces ``A1`` to within one rounding
    per entry (exactly, whenever the complementary subtraction is exact).
    """
    arr = as_operator(a1, "A1")
    part1 = 0.5 * (arr + adjoint(arr))
    part2 = -1j * (arr - part1)
    return part1, part2


def _require_hermitian_parts(a1, a2, policy):
    p1 = as_operator(a1, "a1")
    p2 = as_operator(a2, "a2")
    if p1.shape != p2.shape:
        raise ShapeError(f"part shapes differ: {p1.shape} vs {p2.shape}")
    checks = [_herm_check("a1", p1, policy), _herm_check("a2", p2, policy)]
    _raise_failures(checks, "parts must be Hermitian")
    return p1, p2


def charges_from_parts(a1, a2,
                       policy: NumericPolicy = DEFAULT_POLICY) -> tuple[np.ndarray, np.ndarray]:
    """Assemble the canonical charge pair from two Hermitian parts.

    ``Q1 = sigma_1 (x) a1 + sigma_2 (x) a2`` and
    ``Q2 = sigma_2 (x) a1 - sigma_1 (x) a2``; the pair is odd for
    ``K = sigma_3 (x) 1`` and satisfies ``Q2 = -iKQ1``.  ``Q2`` is unique
    up to this global sign, which flips under ``(a1, a2) -> (a2, -a1)``.
    """
    p1, p2 = _require_hermitian_parts(a1, a2, policy)
    q1 = np.kron(SIGMA1, p1) + np.kron(SIGMA2, p2)
    q2 = np.kron(SIGMA2, p1) - np.kron(SIGMA1, p2)
    return q1, q2


def hamiltonian_from_parts(a1, a2,
                           policy: NumericPolicy = DEFAULT_POLICY) -> np.ndarray:
    """Hamiltonian of the :func:`charges_from_parts` pair,
    ``1 (x) (a1^2 + a2^2) + sigma_3 (x) i[a1, a2]``."""
    p1, p2 = _require_hermitian_parts(a1, a2, policy)
    even = np.kron(np.eye(2), p1 @ p1 + p2 @ p2)
    twist = np.kron(SIGMA3, 1j * commutator(p1, p2))
    return even + twist


# ---------------------------------------------------------------------------
# reparametrization freedom


def reparametrize(system, rotation,
                  policy: NumericPolicy = DEFAULT_POLICY):
    """Rotate a two-real-charge system by an orthogonal 2x2 matrix.

    The transformed charges satisfy the same algebra with the *same*
    Hamiltonian, which is passed through untouched; the result is
    revalidated.  Works for plain and graded systems alike and returns
    the same kind it was given.
    """
    if system.complex_charges or len(system.charges) != 2:
        raise ValueError("reparametrize needs a system with exactly two "
                         "real charges")
    rot = np.asarray(rotation)
    if rot.shape != (2, 2):
        raise ShapeError(f"rotation must be 2x2, got shape {rot.shape}")
    if np.iscomplexobj(rot) and residual_norm(rot.imag) > 0.0:
        raise ValidationError("rotation must be real")
    rot = rot.real.astype(float)
    ortho_res = residual_norm(rot.T @ rot - np.eye(2))
    if ortho_res > policy.algebra_tol:
        raise ValidationError(
            f"rotation is not orthogonal (residual {ortho_res:.3e})")
    q1, q2 = system.charges
    new_charges = [rot[0, 0] * q1 + rot[0, 1] * q2,
                   rot[1, 0] * q1 + rot[1, 1] * q2]
    if isinstance(system, GradedSystem):
        return validate_graded_real_system(
            system.hamiltonian, system.involution.matrix, new_charges, policy)
    return validate_real_system(system.hamiltonian, new_charges, policy)
