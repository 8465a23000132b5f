"""Two-sided brackets and semiclassical estimates for the negative-spectrum
tail of half-line operators -(p(x) y')' - Q(x) y with y(0) = 0.

The potential Q acts diagonally on a fixed basis through decreasing branch
eigenvalues alpha_j(x); counting and summing the operator eigenvalues below
-eps is then bracketed between exactly solvable constant-coefficient cell
models, approximated by a phase-space tail sum, and cross-checked against a
finite-difference eigensolver on each decoupled branch.
"""

from .bounds import SpectralBracket, TheoremExpressionReport, assemble_bracket, \
    theorem_expressions
from .cells import Cell, CellSpectrum, a_eval, b_value, beta_value, clamp_phi, \
    cell_spectrum_dirichlet, cell_spectrum_neumann
from .oracle import Grid, GridPolicy, OracleResult, TridiagonalOperator, \
    discretize_branch, discretize_interval, eigenvalues_below, negative_tail, \
    sturm_count_below
from .partition import AdmissibilityError, DeltaSequence, NoNegativeSpectrumError, \
    Partition, build_partition, refine_delta_sequence
from .potential import BranchFamily, CoefficientP, Example33Envelope, \
    ExplicitCoefficients, GeometricCoefficients, InverseSquareCoefficients, \
    LinearCutoffEnvelope, LogDecay, PowerDecay, PowerEnvelope, Unclassified, \
    ValidationReport, alpha_eval, alpha_values, iterated_log, l_epsilon, p_eval, \
    p_values, psi, validate_family
from .semiclassical import ExponentReport, WeylResult, error_exponents, \
    weyl_tail_sum

__version__ = "0.1.0"

__all__ = [
    "SpectralBracket", "TheoremExpressionReport", "assemble_bracket",
    "theorem_expressions",
    "Cell", "CellSpectrum", "a_eval", "b_value", "beta_value", "clamp_phi",
    "cell_spectrum_dirichlet", "cell_spectrum_neumann",
    "Grid", "GridPolicy", "OracleResult", "TridiagonalOperator",
    "discretize_branch", "discretize_interval", "eigenvalues_below",
    "negative_tail", "sturm_count_below",
    "AdmissibilityError", "DeltaSequence", "NoNegativeSpectrumError",
    "Partition", "build_partition", "refine_delta_sequence",
    "BranchFamily", "CoefficientP", "Example33Envelope", "ExplicitCoefficients",
    "GeometricCoefficients", "InverseSquareCoefficients", "LinearCutoffEnvelope",
    "LogDecay", "PowerDecay", "PowerEnvelope", "Unclassified", "ValidationReport",
    "alpha_eval", "alpha_values", "iterated_log", "l_epsilon", "p_eval",
    "p_values", "psi", "validate_family",
    "ExponentReport", "WeylResult", "error_exponents", "weyl_tail_sum",
    "__version__",
]
