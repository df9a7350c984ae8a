"""Ramanujan expansions toolkit.

Exact Ramanujan sums, multiplicative Ramanujan coefficients with their
conductors, truncated Ramanujan-type series with convergence verdicts, the
clouds of coefficients expanding a given arithmetic function, and numerical
convergence experiments.
"""

__version__ = "0.1.0"

from ramanujan_clouds.arith import TabulatedFunction, factorize, mobius
from ramanujan_clouds.clouds import (
    canonical_coefficient,
    cm_cloud_coefficient,
    euler_selberg_value,
    hildebrand_coefficient,
    null_cloud_test,
    opacity_core,
    reconstruct_from_core,
    selberg_decompose,
)
from ramanujan_clouds.coefficients import CoefficientSpec, PrimeEntry, classify_prime, conductors
from ramanujan_clouds.config import Settings, configure, get_settings, load_settings
from ramanujan_clouds.exceptions import (
    DomainError,
    FinitenessNotProvableError,
    PreconditionError,
    RamanujanToolkitError,
    SpecParseError,
)
from ramanujan_clouds.ramanujan import ramanujan_sum
from ramanujan_clouds.series import SeriesKind, SeriesParams, estimate_limit, exact_sum, partial_sum

__all__ = [
    "CoefficientSpec",
    "DomainError",
    "FinitenessNotProvableError",
    "PreconditionError",
    "PrimeEntry",
    "RamanujanToolkitError",
    "SeriesKind",
    "SeriesParams",
    "Settings",
    "SpecParseError",
    "TabulatedFunction",
    "__version__",
    "canonical_coefficient",
    "classify_prime",
    "cm_cloud_coefficient",
    "conductors",
    "configure",
    "estimate_limit",
    "euler_selberg_value",
    "exact_sum",
    "factorize",
    "get_settings",
    "hildebrand_coefficient",
    "load_settings",
    "mobius",
    "null_cloud_test",
    "opacity_core",
    "partial_sum",
    "ramanujan_sum",
    "reconstruct_from_core",
    "selberg_decompose",
]
