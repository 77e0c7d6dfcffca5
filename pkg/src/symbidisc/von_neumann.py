"""Matrix polynomials in two variables and the von Neumann report.

Every member pair (S, P) of finite dimension carries the variety

    det(F + p F* - s I) = 0,

with F the fundamental operator, and satisfies
||f(S, P)|| <= max ||f(s, p)|| over the variety's unimodular-|p| boundary
points for every matrix-valued polynomial f.  The report certifies this
inequality at sampled boundary angles.

The orientation of the representation matters: substituting F* for F
above produces the conjugate variety, on which the inequality fails for
complex fundamental operators (directly observable on truncated-model
pairs with a complex scalar solution).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .fundamental import FundamentalOperator, solve_fundamental
from .gamma_pairs import OperatorPair
from .geometry import GammaPoint
from .numerics import DEFAULT_TOL, Tolerances, operator_norm
from .varieties import DeterminantalVariety, boundary_sample

__all__ = [
    "MatrixPolynomial",
    "VNReport",
    "evaluate_pair",
    "cup_transform",
    "lambda_variety",
    "vn_report",
]

_REFINE_CAP = 1 << 16
_HOLDS_SLACK = 1e-6


@dataclass(frozen=True)
class MatrixPolynomial:
    """Polynomial sum of C[i, j] s^i p^j with square matrix coefficients.

    ``coeffs`` has shape (deg_s + 1, deg_p + 1, k, k).
    """

    coeffs: np.ndarray

    @classmethod
    def from_coeffs(cls, c) -> "MatrixPolynomial":
        c = np.asarray(c, dtype=complex)
        if c.ndim != 4 or c.shape[2] != c.shape[3]:
            raise ValueError(
                "coefficients must have shape (deg_s+1, deg_p+1, k, k)"
            )
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        return cls(c.copy())

    @classmethod
    def scalar(cls, grid) -> "MatrixPolynomial":
        """Scalar polynomial from a 2-d coefficient grid."""
        g = np.atleast_2d(np.asarray(grid, dtype=complex))
        return cls.from_coeffs(g[:, :, None, None])

    @property
    def block_dim(self) -> int:
        return self.coeffs.shape[2]

    @property
    def degrees(self) -> tuple[int, int]:
        return self.coeffs.shape[0] - 1, self.coeffs.shape[1] - 1

    def eval_points(self, s_vals, p_vals) -> np.ndarray:
        """Scalar substitution at point arrays; returns shape (M, k, k)."""
        s_vals = np.asarray(s_vals, dtype=complex).ravel()
        p_vals = np.asarray(p_vals, dtype=complex).ravel()
        ds, dp = self.degrees
        vs = np.vander(s_vals, ds + 1, increasing=True)
        vp = np.vander(p_vals, dp + 1, increasing=True)
        return np.einsum("mi,mj,ijkl->mkl", vs, vp, self.coeffs)


def evaluate_pair(f: MatrixPolynomial, pair: OperatorPair) -> np.ndarray:
    """Operator value sum of C[i, j] (tensor) S^i P^j as a block matrix."""
    ds, dp = f.degrees
    n = pair.dim
    s_pows = [np.eye(n, dtype=complex)]
    for _ in range(ds):
        s_pows.append(s_pows[-1] @ pair.S)
    p_pows = [np.eye(n, dtype=complex)]
    for _ in range(dp):
        p_pows.append(p_pows[-1] @ pair.P)
    k = f.block_dim
    out = np.zeros((k * n, k * n), dtype=complex)
    for i in range(ds + 1):
        for j in range(dp + 1):
            c = f.coeffs[i, j]
            if c.any():
                out += np.kron(c, s_pows[i] @ p_pows[j])
    return out


def cup_transform(f: MatrixPolynomial) -> MatrixPolynomial:
    """Coefficient-wise adjoint; the involution with
    f_cup(A, B) = f(A*, B*)* on commuting arguments."""
    return MatrixPolynomial(np.conj(np.swapaxes(f.coeffs, -1, -2)).copy())


def lambda_variety(
    pair: OperatorPair,
    tol: Tolerances = DEFAULT_TOL,
    fund: Optional[FundamentalOperator] = None,
) -> DeterminantalVariety:
    """Determinantal variety attached to a member pair.

    With F the fundamental operator, the representing matrix is F, so
    that det(A + p A* - s I) = det(F + p F* - s I).  A zero-rank defect
    (P unitary) yields the degenerate 0 x 0 representation.
    """
    if fund is None:
        fund = solve_fundamental(pair, tol)
    return DeterminantalVariety.from_matrix(fund.F, tol)


@dataclass(frozen=True)
class VNReport:
    lhs: float
    rhs: float
    ratio: float
    holds: bool
    m: int
    sample_count: int
    argmax: Optional[GammaPoint]
    argmax_theta: float
    degenerate: bool


def _boundary_max(f: MatrixPolynomial, variety: DeterminantalVariety, m: int):
    pts = boundary_sample(variety, m)
    s_vals = np.array([pt.s for pt in pts])
    p_vals = np.array([pt.p for pt in pts])
    vals = f.eval_points(s_vals, p_vals)
    norms = np.linalg.svd(vals, compute_uv=False)[:, 0] if vals.size else np.zeros(0)
    k = int(np.argmax(norms)) if norms.size else 0
    best = float(norms[k]) if norms.size else 0.0
    return best, pts[k] if pts else None


def vn_report(
    f: MatrixPolynomial,
    pair: OperatorPair,
    m: int = 2048,
    tol: Tolerances = DEFAULT_TOL,
) -> VNReport:
    """Compare ||f(S, P)|| against the sampled boundary maximum of ||f(s, p)||.

    The right-hand side samples only the unimodular-|p| fibers of the
    attached variety.  ``holds`` allows the multiplicative slack 1 + 1e-6
    for grid under-sampling of the maximum; on apparent violation the
    angular grid is doubled (up to 2^16) before a violation is reported.
    Degenerate reports (zero defect rank) use the convention points
    (0, e^{i theta}).
    """
    if m < 1:
        raise ValueError("sample count must be positive")
    fund = solve_fundamental(pair, tol)
    variety = lambda_variety(pair, tol, fund=fund)
    lhs = operator_norm(evaluate_pair(f, pair))
    cur_m = m
    while True:
        rhs, arg = _boundary_max(f, variety, cur_m)
        holds = lhs <= rhs * (1.0 + _HOLDS_SLACK)
        if holds or cur_m >= _REFINE_CAP:
            break
        cur_m *= 2
    if rhs > 0:
        ratio = lhs / rhs
    else:
        ratio = 0.0 if lhs == 0 else math.inf
    theta = (
        math.atan2(arg.p.imag, arg.p.real) % (2.0 * math.pi) if arg is not None else 0.0
    )
    count = max(variety.dim, 1) * cur_m
    return VNReport(
        lhs=lhs,
        rhs=rhs,
        ratio=ratio,
        holds=holds,
        m=cur_m,
        sample_count=count,
        argmax=arg,
        argmax_theta=theta,
        degenerate=variety.dim == 0,
    )
