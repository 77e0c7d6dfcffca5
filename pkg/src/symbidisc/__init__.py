"""Numerical operator theory on the symmetrized bidisc.

Verifies spectral-set membership of commuting matrix pairs, solves the
fundamental equation on defect spaces, constructs and classifies
determinantal varieties, builds truncated dilation models, and certifies
a von Neumann-type inequality on variety boundaries.
"""

from .numerics import (
    DEFAULT_TOL,
    Tolerances,
    joint_spectrum,
    numerical_radius,
    operator_norm,
    spectral_radius,
)
from .geometry import GammaPoint, RegionTag, classify_point, point_roots, symmetrize_point
from .gamma_pairs import (
    NonCommutingRootError,
    NoSquareRootError,
    OperatorPair,
    PairVerdict,
    check_gamma_contraction,
    check_gamma_isometry,
    check_pure,
    desymmetrize_pair,
    make_operator_pair,
    rho_pencil,
    strictness_constant,
    symmetrize_pair,
)
from .fundamental import (
    DefectData,
    FundamentalBoundError,
    FundamentalOperator,
    ResidualTooLargeError,
    defect_operator,
    solve_fundamental,
    truncated_model_from_F,
)
from .varieties import (
    BivarPolynomial,
    DeterminantalVariety,
    DistinguishedStatus,
    DistinguishedVerdict,
    boundary_sample,
    classify_distinguished,
    fiber_at_p,
    symmetrize_bidisc_variety,
    variety_membership,
)
from .von_neumann import (
    MatrixPolynomial,
    VNReport,
    cup_transform,
    evaluate_pair,
    lambda_variety,
    vn_report,
)
from .model_theory import (
    CharFnCoeffs,
    DilationReport,
    TruncatedModel,
    build_model,
    characteristic_coeffs,
    dilation_check,
)

__version__ = "0.1.0"
