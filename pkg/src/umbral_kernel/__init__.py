"""Exact umbral calculus kernel for poly-Cauchy / Peters mixed-type polynomials."""

from .identities import (
    SUITE_A,
    SUITE_B,
    IdentityReport,
    UsageError,
    get_identity,
    identity_eval,
    identity_registry,
    mu_certification,
)
from .mixed import (
    MixedParams,
    cp_oracle,
    cp_sheffer_pair,
    cphat_oracle,
    cphat_sheffer_pair,
)
from .polynomial import Polynomial
from .rational import Rational, parse_text, to_text
from .sequences import (
    bernoulli_poly,
    boole_poly,
    changhee_poly,
    falling_poly,
    frobenius_euler_poly,
    peters_poly,
    poly_cauchy1,
    poly_cauchy2,
    rising_poly,
    stirling1,
)
from .series import Series, SeriesError
from .umbral import (
    LinearFunctional,
    ShefferPair,
    UmbralError,
    connection_constants,
    sheffer_polys,
    transfer,
)

__all__ = [
    "SUITE_A", "SUITE_B", "IdentityReport", "UsageError", "get_identity", "identity_eval",
    "identity_registry", "mu_certification", "MixedParams", "cp_oracle", "cp_sheffer_pair",
    "cphat_oracle", "cphat_sheffer_pair", "Polynomial", "Rational", "parse_text", "to_text",
    "bernoulli_poly", "boole_poly", "changhee_poly", "falling_poly", "frobenius_euler_poly",
    "peters_poly", "poly_cauchy1", "poly_cauchy2", "rising_poly", "stirling1", "Series",
    "SeriesError", "LinearFunctional", "ShefferPair", "UmbralError", "connection_constants",
    "sheffer_polys", "transfer",
]
