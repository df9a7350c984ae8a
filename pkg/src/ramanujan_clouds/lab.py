"""Numerical laboratory: converse convergence, a divergent coprime series, square-free counts."""

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Literal, NamedTuple

import mpmath
import numpy as np

from ramanujan_clouds.arith import factorize, get_sieve, is_prime
from ramanujan_clouds.coefficients import CoefficientSpec, GeometricTail, PowerLaw, PrimeEntry, ZeroTail, classify_prime
from ramanujan_clouds.config import get_settings
from ramanujan_clouds.exceptions import DomainError, NotGrowingError, PreconditionError, UnsupportedBranchError
from ramanujan_clouds.scalars import Scalar, magnitude, normalize
from ramanujan_clouds.series import (
    ConvergedEstimate,
    SeriesKind,
    SeriesParams,
    SeriesTrace,
    estimate_limit,
    fit_growth,
    geometric_schedule,
    judge,
    partial_sum_table,
)

logger = logging.getLogger(__name__)

Branch = Literal["contraction", "dilation"]

MIN_GROWTH_POINTS = 8
CONVERGENT_TRACE_TOLERANCE = 0.05


@dataclass(frozen=True)
class ContractionExperiment:
    """K(x) = H(x) + alpha H(x / rho) with K tending to ``ell``.

    ``h_source`` must be a step function, depending on x only through floor(x).
    """

    alpha: complex
    rho: float
    h_source: Callable[[float], Scalar]
    ell: Scalar

    def __post_init__(self) -> None:
        if self.rho <= 1:
            raise DomainError(f"rho = {self.rho} must exceed 1", condition="rho_above_one")

    @property
    def branch(self) -> Branch:
        """Contraction for |alpha| < 1, dilation for |alpha| > rho.

        Raises:
            UnsupportedBranchError: For 1 <= |alpha| <= rho, which includes alpha = -1.

        """
        size = abs(self.alpha)
        if size < 1:
            return "contraction"
        if size > self.rho:
            return "dilation"
        raise UnsupportedBranchError(f"|alpha| = {size:g} lies in [1, rho = {self.rho:g}]")

    @property
    def predicted_limit(self) -> Scalar:
        """ell / (1 + alpha), the limit of H."""
        return normalize(complex(self.ell) / (1 + self.alpha))

    def k_value(self, x: float) -> Scalar:
        """K(x)."""
        return normalize(self.h_source(x) + self.alpha * self.h_source(x / self.rho))


def synthetic_step_source(target: Scalar, decay: float = 2.0) -> Callable[[float], Scalar]:
    """Step function H(x) = target + 1 / (1 + floor(x))^decay, tending to ``target``."""

    def source(x: float) -> Scalar:
        return normalize(target + (1.0 + np.floor(x)) ** -decay)

    return source


@dataclass(frozen=True)
class ConverseLimitReport:
    """H and K along the checkpoints with their distances to the predicted limits.

    ``monotone_from`` is the first checkpoint from which the H residuals never
    increase, or None when the last step still increases.
    """

    branch: Branch
    xs: tuple[float, ...]
    h_values: tuple[Scalar, ...]
    k_values: tuple[Scalar, ...]
    k_residuals: tuple[float, ...]
    h_residuals: tuple[float, ...]
    predicted_limit: Scalar
    recovered_limit: Scalar
    monotone_from: float | None


def _monotone_from(xs: Sequence[float], residuals: Sequence[float]) -> float | None:
    start = len(residuals) - 1
    while start > 0 and residuals[start - 1] >= residuals[start]:
        start -= 1
    if start == len(residuals) - 1 and len(residuals) > 1 and residuals[-2] < residuals[-1]:
        return None
    return xs[start]


def converse_limit_demo(experiment: ContractionExperiment, xs: Sequence[float]) -> ConverseLimitReport:
    """Evaluate H and K along ``xs`` and compare them with ell and ell / (1 + alpha)."""
    branch = experiment.branch
    if not xs:
        raise DomainError("at least one checkpoint is needed", condition="schedule")
    h_values = tuple(normalize(experiment.h_source(x)) for x in xs)
    k_values = tuple(experiment.k_value(x) for x in xs)
    predicted = experiment.predicted_limit
    k_residuals = tuple(magnitude(k - experiment.ell) for k in k_values)
    h_residuals = tuple(magnitude(h - predicted) for h in h_values)
    recovered = normalize(complex(k_values[-1]) / (1 + experiment.alpha))
    logger.debug("Converse limit demo (%s): last H residual %.3g", branch, h_residuals[-1])
    return ConverseLimitReport(
        branch,
        tuple(float(x) for x in xs),
        h_values,
        k_values,
        k_residuals,
        h_residuals,
        predicted,
        recovered,
        _monotone_from(list(xs), h_residuals),
    )


@dataclass(frozen=True)
class CoprimeRecursionReport:
    """Converse convergence applied to S_G(b p, x) and S_G(b, x).

    ``recursion_residual`` is the largest |S_G(b, x) - S_G(bp, x) + G(p) S_G(bp, x/p)|.
    """

    p: int
    alpha: Scalar
    demo: ConverseLimitReport
    recursion_residual: float


def coprime_recursion_demo(g: CoefficientSpec, b: int, p: int, xs: Sequence[int]) -> CoprimeRecursionReport:
    """Run the converse convergence argument with H = S_G(bp, .), K = S_G(b, .), alpha = -G(p), rho = p.

    Raises:
        PreconditionError: If p divides b or p is bad for G.

    """
    if b % p == 0:
        raise PreconditionError(f"p = {p} divides b = {b}", condition="p_coprime_to_b")
    c = classify_prime(g, p)
    if c.is_bad:
        raise PreconditionError(f"p = {p} is bad for G", condition="p_not_bad")
    x_max = max(xs)
    h_table = partial_sum_table(g, SeriesParams(b=b * p), x_max)
    k_table = partial_sum_table(g, SeriesParams(b=b), x_max)
    alpha = complex(-c.value)
    ell = k_table.at(x_max)
    experiment = ContractionExperiment(alpha, float(p), h_table.at, ell)
    demo = converse_limit_demo(experiment, [float(x) for x in xs])
    residual = max(magnitude(k_table.at(x) - experiment.k_value(float(x))) for x in xs)
    return CoprimeRecursionReport(p, normalize(alpha), demo, residual)


def counterexample_coefficient(s: Scalar, p1: int, p2: int) -> CoefficientSpec:
    """Coefficient with G(p1) = p1^(1-s), G(p1^k) = 0 for k >= 2 and G(p^k) = -p^(-ks) elsewhere.

    Its coprime series S_G(b) converges for p1 not dividing b and grows like
    x^(1 - Re s) for p1 dividing b.

    Raises:
        DomainError: Unless 1/2 <= Re s < 1 and p1 != p2 are primes.

    """
    z = complex(s)
    if not 0.5 <= z.real < 1:  # noqa: PLR2004
        raise DomainError(f"Re s = {z.real:g} must lie in [1/2, 1)", condition="critical_strip_half")
    for p in (p1, p2):
        if not is_prime(p):
            raise DomainError(f"{p} is not prime", condition="prime")
    if p1 == p2:
        raise DomainError("p1 and p2 must differ", condition="distinct_primes")
    p2_value = -(complex(p2) ** -z)
    entries = {
        p1: PrimeEntry((normalize(complex(p1) ** (1 - z)),), ZeroTail()),
        p2: PrimeEntry((normalize(p2_value),), GeometricTail(normalize(complex(p2) ** -z))),
    }
    return CoefficientSpec(entries, PowerLaw(normalize(z), negate=True))


def counterexample_ramanujan_trace(g: CoefficientSpec, p1: int, b: int, schedule: Sequence[int]) -> SeriesTrace:
    """Partial sums of the sum over r coprime to b of G(r) c_r(p1), with a verdict."""
    params = SeriesParams(a=p1, b=b)
    table = partial_sum_table(g, params, max(schedule))
    checkpoints = tuple((x, normalize(table.at_floor(x))) for x in schedule)
    verdict = judge([float(x) for x in schedule], [v for _, v in checkpoints])
    return SeriesTrace(SeriesKind.F, params, checkpoints, verdict)


class GrowthFit(NamedTuple):
    """Fitted power growth of a trace and the first abscissa of the fit window."""

    exponent: float
    fit_quality: float
    window_start: float


def growth_exponent(trace: SeriesTrace) -> GrowthFit:
    """Least-squares exponent of |partial sum| against x.

    Raises:
        NotGrowingError: With fewer than eight checkpoints, a slope below the
            divergence threshold, or a final sum smaller than at the window start.

    """
    xs, values = trace.xs, trace.values
    if len(xs) < MIN_GROWTH_POINTS:
        raise NotGrowingError(f"{len(xs)} checkpoints are too few for a growth fit")
    exponent, r2, start = fit_growth(xs, values)
    first = magnitude(values[xs.index(start)]) if start in xs else magnitude(values[0])
    if exponent <= get_settings().verdict.min_divergence_exponent or magnitude(values[-1]) < first:
        raise NotGrowingError(f"trace does not grow: fitted exponent {exponent:.3g}")
    return GrowthFit(exponent, r2, start)


@dataclass(frozen=True)
class DivergentFamilyReport:
    """Both sides of the counterexample dichotomy for one coefficient."""

    coefficient: CoefficientSpec
    convergent: SeriesTrace
    divergent: SeriesTrace
    growth: GrowthFit
    predicted_exponent: float


def a2_experiment(s: Scalar, p1: int, p2: int, x_max: int, *, points: int = 24) -> DivergentFamilyReport:
    """Coprime series of the counterexample at b = 1 (convergent) and b = p1 (divergent)."""
    g = counterexample_coefficient(s, p1, p2)
    schedule = geometric_schedule(x_max, points=points)
    convergent = estimate_limit(SeriesKind.S, g, SeriesParams(), schedule, rel_tol=CONVERGENT_TRACE_TOLERANCE)
    divergent = estimate_limit(SeriesKind.S, g, SeriesParams(b=p1), schedule)
    growth = growth_exponent(divergent)
    if not isinstance(convergent.verdict, ConvergedEstimate):
        logger.warning("Convergent side did not settle: %s", convergent.verdict)
    return DivergentFamilyReport(g, convergent, divergent, growth, 1.0 - complex(s).real)


def _check_sieve_range(x: int) -> None:
    bound = get_settings().sieve_bound
    if not 1 <= x <= bound:
        raise DomainError(f"x = {x} must lie in 1..{bound}", condition="sieve_bound")


class SquarefreeStats(NamedTuple):
    """Square-free count up to x, its density and 6 / pi^2."""

    count: int
    ratio: float
    predicted_ratio: float


def squarefree_stats(x: int) -> SquarefreeStats:
    """Count the square-free q <= x with the sieve."""
    _check_sieve_range(x)
    count = int(get_sieve().squarefree_mask(x).sum())
    return SquarefreeStats(count, count / x, float(6 / mpmath.pi**2))


@dataclass(frozen=True)
class SquarefreeDirichlet:
    """Truncated square-free Dirichlet series coprime to b and its predicted asymptotic.

    ``predicted`` is C1 x^(1-s) / (1-s) + C2 zeta(s) / zeta(2s).
    """

    s: complex
    b: int
    x: int
    partial: complex
    c1: float
    c2: complex
    predicted: complex

    @property
    def residual(self) -> float:
        """|partial - predicted|."""
        return abs(self.partial - self.predicted)

    @property
    def without_main_term(self) -> complex:
        """partial - C1 x^(1-s) / (1-s)."""
        return self.partial - self.c1 * self.x ** (1 - self.s) / (1 - self.s)


def sf_dirichlet(s: Scalar, b: int, x: int) -> SquarefreeDirichlet:
    """Sum of mu^2(q) q^(-s) over q <= x coprime to b.

    Raises:
        DomainError: If Re s < 1/2, s = 1, b < 1 or x exceeds the sieve bound.

    """
    z = complex(s)
    if z.real < 0.5 or z == 1:  # noqa: PLR2004
        raise DomainError(f"s = {z} needs Re s >= 1/2 and s != 1", condition="dirichlet_exponent")
    if b < 1:
        raise DomainError(f"b = {b} must be positive", condition="positive_integer")
    _check_sieve_range(x)
    mask = get_sieve().squarefree_mask(x)
    q = np.arange(x + 1)
    primes_b = factorize(b).primes
    for p in primes_b:
        mask[p::p] = False
    partial = complex(np.sum(np.power(q[mask].astype(np.complex128), -z)))

    c1 = float(6 / mpmath.pi**2)
    c2 = complex(1.0)
    for p in primes_b:
        c1 /= 1 + 1 / p
        c2 /= 1 + complex(p) ** -z
    ratio = complex(mpmath.zeta(z) / mpmath.zeta(2 * z))
    predicted = c1 * x ** (1 - z) / (1 - z) + c2 * ratio
    return SquarefreeDirichlet(z, b, x, partial, c1, c2, predicted)


def doubling_schedule(x_start: int, x_max: int) -> list[int]:
    """x_start, 2 x_start, 4 x_start, ... up to x_max."""
    xs = [x_start]
    while xs[-1] * 2 <= x_max:
        xs.append(xs[-1] * 2)
    return xs

