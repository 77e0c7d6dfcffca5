"""Defect operators, the fundamental equation, and its converse model.

For a contraction P the defect operator is D = (I - P*P)^{1/2}.  The
fundamental equation of a commuting pair (S, P),

    S - S*P = D X D,    X acting on the defect space,

has a unique solution F when the pair has the symmetrized bidisc as a
spectral set, and that solution has numerical radius at most 1.  The
converse construction realizes any matrix of numerical radius at most 1
as the solution attached to an explicit finite pair.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gamma_pairs import OperatorPair, make_operator_pair
from .numerics import (
    DEFAULT_TOL,
    Tolerances,
    as_matrix,
    numerical_radius,
    operator_norm,
    require_square,
)

__all__ = [
    "DefectData",
    "FundamentalOperator",
    "ResidualTooLargeError",
    "FundamentalBoundError",
    "defect_operator",
    "solve_fundamental",
    "truncated_model_from_F",
]


class ResidualTooLargeError(ValueError):
    """The fundamental equation is unsolvable at the detected defect rank."""


class FundamentalBoundError(ValueError):
    """Numerical radius of the solution exceeds 1 on a verified member pair."""


@dataclass(frozen=True)
class DefectData:
    """Defect operator of a contraction together with a defect-space basis.

    ``D`` is the PSD square root of I - P*P on the full space, ``basis``
    holds orthonormal columns spanning the defect space (eigenvalues of
    I - P*P above ``rank_tol``), and ``eigenvalues``/``vectors`` keep the
    full Hermitian eigendecomposition for pseudo-inversion.
    """

    D: np.ndarray
    basis: np.ndarray
    rank: int
    eigenvalues: np.ndarray
    vectors: np.ndarray


@dataclass(frozen=True)
class FundamentalOperator:
    """Solution of the fundamental equation in defect-space coordinates."""

    F: np.ndarray
    residual: float
    nr: float
    defect: DefectData


def defect_operator(p, tol: Tolerances = DEFAULT_TOL) -> DefectData:
    """Defect operator of a contraction by clamped Hermitian eigendecomposition."""
    p = require_square(as_matrix(p), "P")
    if operator_norm(p) > 1.0 + tol.psd_tol:
        raise ValueError("P is not a contraction within tolerance")
    n = p.shape[0]
    g = np.eye(n) - p.conj().T @ p
    g = 0.5 * (g + g.conj().T)
    lam, u = np.linalg.eigh(g) if n else (np.zeros(0), np.zeros((0, 0)))
    lam = np.clip(lam, 0.0, None)
    d = (u * np.sqrt(lam)) @ u.conj().T
    keep = lam > tol.rank_tol
    return DefectData(d, u[:, keep], int(np.count_nonzero(keep)), lam, u)


def solve_fundamental(
    pair: OperatorPair,
    tol: Tolerances = DEFAULT_TOL,
    contraction_verified: bool = False,
) -> FundamentalOperator:
    """Solve S - S*P = D X D on the defect space of P.

    The solution is D^+ (S - S*P) D^+ compressed to the defect basis,
    where D^+ is the eigenvalue-cutoff pseudoinverse of the defect
    operator.  The residual of the reconstructed equation is recomputed
    and must stay below ``residual_tol`` times a norm scale, otherwise
    the equation is unsolvable at the detected rank (the pair is not a
    member pair, or the rank cutoff misfired).

    With ``contraction_verified=True`` the numerical-radius bound
    nr <= 1 + psd_tol is enforced and its violation raises
    ``FundamentalBoundError``.
    """
    dd = defect_operator(pair.P, tol)
    rhs = pair.S - pair.S.conj().T @ pair.P
    inv = np.where(dd.eigenvalues > tol.rank_tol, 1.0 / np.sqrt(np.clip(dd.eigenvalues, tol.rank_tol, None)), 0.0)
    dpinv = (dd.vectors * inv) @ dd.vectors.conj().T
    f = dd.basis.conj().T @ (dpinv @ rhs @ dpinv) @ dd.basis
    recon = dd.D @ (dd.basis @ f @ dd.basis.conj().T) @ dd.D
    scale = 1.0 + pair.s_norm * (1.0 + pair.p_norm)
    residual = operator_norm(rhs - recon)
    if residual > tol.residual_tol * scale:
        raise ResidualTooLargeError(
            f"fundamental equation residual {residual:.3e} exceeds tolerance "
            f"at defect rank {dd.rank}"
        )
    nr = numerical_radius(f, tol) if dd.rank else 0.0
    if contraction_verified and nr > 1.0 + tol.psd_tol:
        raise FundamentalBoundError(
            f"numerical radius {nr:.12f} exceeds 1 on a verified member pair"
        )
    return FundamentalOperator(f, residual, nr, dd)


def truncated_model_from_F(
    fhat, n_blocks: int, tol: Tolerances = DEFAULT_TOL
) -> OperatorPair:
    """Finite pair whose fundamental operator is the given matrix.

    On ``n_blocks`` copies of the coefficient space, S carries the input
    on the diagonal blocks and its adjoint on the first superdiagonal,
    while P is the block backward shift.  The first-block compression of
    the corresponding infinite pair is co-invariant, so the construction
    is exactly finite: S and P commute exactly, P is nilpotent, the
    defect operator of P is the projection onto block 0, and
    S - S*P equals the input on that block.
    """
    fhat = require_square(as_matrix(fhat), "coefficient matrix")
    if n_blocks < 1:
        raise ValueError("block count must be positive")
    nr = numerical_radius(fhat, tol)
    if nr > 1.0 + tol.psd_tol:
        raise ValueError(f"numerical radius {nr:.12f} exceeds 1")
    k = fhat.shape[0]
    shift = np.eye(n_blocks, k=1)
    s = np.kron(np.eye(n_blocks), fhat) + np.kron(shift, fhat.conj().T)
    p = np.kron(shift, np.eye(k)).astype(complex)
    return make_operator_pair(s, p, tol)
