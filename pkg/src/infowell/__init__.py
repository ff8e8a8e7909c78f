"""infowell: exact Dirichlet-kernel integrals I(n, k) of the 1D infinite
well and the information measures built on them, cross-checked by an
independent adaptive-quadrature oracle."""

__version__ = "0.1.0"

from .dirichlet import (
    IntegralIndex,
    PartialFractionTerm,
    asymptotic_bk,
    asymptotic_ink,
    inner_alternating_sum,
    inner_alternating_sum_float,
    lemma1_direct,
    lemma1_expand,
    lemma1_reconstruct,
    lemma2_ink,
    lemma3_k_integral,
    theorem1_ink,
)
from .exact import (
    BigRational,
    DecimalValue,
    PiPolynomial,
    binomial,
    format_exact,
    parse_exact,
    pi_poly_eval,
    pi_poly_log,
)
from .measures import (
    Kind,
    MeasureValue,
    OrderError,
    Space,
    momentum_entropic_moment,
    momentum_renyi_entropy,
    momentum_renyi_length,
    momentum_tsallis_entropy,
    position_entropic_moment_exact,
    position_renyi_entropy,
    position_renyi_length,
    position_tsallis_entropy,
    uncertainty_product,
    uncertainty_quotient,
    uncertainty_sum,
)
from .oracle import (
    PrecisionError,
    QuadratureResult,
    VerificationEntry,
    VerificationReport,
    quad_entropic_moment,
    quad_ink,
    run_verification,
    shannon_estimate,
)
from .well import (
    WellState,
    density_grid,
    energy,
    momentum_density,
    position_density,
    singular_points,
)

__all__ = [
    "BigRational",
    "DecimalValue",
    "IntegralIndex",
    "Kind",
    "MeasureValue",
    "OrderError",
    "PartialFractionTerm",
    "PiPolynomial",
    "PrecisionError",
    "QuadratureResult",
    "Space",
    "VerificationEntry",
    "VerificationReport",
    "WellState",
    "asymptotic_bk",
    "asymptotic_ink",
    "binomial",
    "density_grid",
    "energy",
    "format_exact",
    "inner_alternating_sum",
    "inner_alternating_sum_float",
    "lemma1_direct",
    "lemma1_expand",
    "lemma1_reconstruct",
    "lemma2_ink",
    "lemma3_k_integral",
    "momentum_density",
    "momentum_entropic_moment",
    "momentum_renyi_entropy",
    "momentum_renyi_length",
    "momentum_tsallis_entropy",
    "parse_exact",
    "pi_poly_eval",
    "pi_poly_log",
    "position_density",
    "position_entropic_moment_exact",
    "position_renyi_entropy",
    "position_renyi_length",
    "position_tsallis_entropy",
    "quad_entropic_moment",
    "quad_ink",
    "run_verification",
    "shannon_estimate",
    "singular_points",
    "theorem1_ink",
    "uncertainty_product",
    "uncertainty_quotient",
    "uncertainty_sum",
]
