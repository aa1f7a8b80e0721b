"""Fast Gauss quadrature for the Hermite weight exp(-x^2) and generalized
Freud weights exp(-V(x)), with weighted barycentric interpolation on R.

Hermite rules cost O(n) via asymptotics-seeded Newton iteration (O(sqrt(n))
with subsampling); generalized rules are seeded by equilibrium-measure
asymptotics and evaluated through recurrence coefficients obtained with a
discretized Stieltjes procedure.
"""
__version__ = "0.1.0"

from .errors import (FreudQuadError, DomainError, IndexRangeError,
                     DegeneracyError, UnsupportedRegimeError,
                     ConvergenceError, ResolutionError)
from .specfun import airy_ai, airy_ai_prime, airy_zero
from .rules import QuadratureRule
from .hermite import hermite_rule, hermite_rule_asy
from .potentials import FreudPotential
from .recurrence import (RecurrenceCoeffs, hermite_eval_scaled,
                         hermite_rule_rec, golub_welsch, stieltjes_coeffs,
                         freud_eval_scaled)
from .equilibrium import EquilibriumMeasure, solve_support
from .freud import freud_rule, newton_general
from .interp import BarycentricInterpolant, bary_weights

__all__ = [
    "FreudQuadError", "DomainError", "IndexRangeError", "DegeneracyError",
    "UnsupportedRegimeError", "ConvergenceError", "ResolutionError",
    "airy_ai", "airy_ai_prime", "airy_zero",
    "QuadratureRule", "hermite_rule", "hermite_rule_asy",
    "FreudPotential", "RecurrenceCoeffs", "hermite_eval_scaled",
    "hermite_rule_rec", "golub_welsch", "stieltjes_coeffs",
    "freud_eval_scaled", "EquilibriumMeasure", "solve_support",
    "freud_rule", "newton_general",
    "BarycentricInterpolant", "bary_weights",
    "__version__",
]
