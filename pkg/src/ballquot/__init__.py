"""Exact and numeric verification of the diagonal Kähler-Einstein identity
for Bergman metrics of finite cyclic ball quotients.

The package answers, at desk scale, one question from several independent
directions: for which cyclic fixed point free diagonal groups does the
Bergman metric of the quotient satisfy the Einstein equation?  The exact
route expands both sides of the identity as truncated rational power series
and locates the lowest-order mismatch; the combinatorial route predicts
that mismatch in closed form and checks the inequalities that make it
nonzero; the numeric route evaluates the bordered Monge-Ampère determinant
in floating point and cross-checks the other two.
"""

__version__ = "0.1.0"

from .exactnum import (
    CycloConsistencyError,
    CycloElem,
    Rational,
    binomial,
    cyclotomic_polynomial,
    format_rational,
    power_of_eps,
    root_power_sum,
)
from .group import (
    CasePrediction,
    GroupSpec,
    InvalidGroupError,
    classify_case,
    enumerate_specs,
    is_fixed_point_free,
    is_fixed_point_free_exhaustive,
    validate_spec,
)
from .kernel import (
    ResidualInconsistencyError,
    ResidualReport,
    check_f_derivative,
    check_f_reindex,
    detA_slice,
    f_series,
    f_series_oracle,
    ke_residual,
    phi_diagonal_series,
    pq_series,
    residual_series,
)
from .lemmas import LemmaCheckResult
from .numeric import (
    NumericDefectSample,
    J_phi,
    detA_direct,
    ke_defect,
    monomial_oracle_phi,
    phi_derivatives,
    phi_eval,
    residual_grid_scan,
)
from .series import CycloSeries, TruncSeries
