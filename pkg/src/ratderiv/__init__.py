"""Exact higher-order derivatives of reciprocals of factored polynomials.

Built on them: partial fractions, antiderivatives and residues of rational
functions, general Hermite interpolation and closed forms for linear
recurrences. All arithmetic is exact over the Gaussian rationals.
"""
from .calculus import (
    AntiderivativeExpr,
    PartialFractionDecomposition,
    antiderivative,
    contour_integral_sum,
    partial_fractions,
    rational_derivative,
    residues,
)
from .errors import (
    FormulaInadmissible,
    InvalidParameters,
    NOutOfRange,
    ParseError,
    PoleError,
    RatDerivError,
    RootsMismatch,
)
from .interpolation import HermiteSpec, hermite_interpolate, hermite_phi_psi, lagrange_basis, spitzbart_Q
from .numeric import FactoredDenominator, GaussianRational, Polynomial, expand_factored
from .reciprocal import (
    EvalContext,
    ParamSet,
    canonical_params,
    derivative,
    derivative_formula_I,
    derivative_formula_I_unchecked,
    derivative_formula_II,
    validate_params,
)
from .recurrence import RecurrenceSpec, closed_form_term, iterate_recurrence

__version__ = "0.1.0"
