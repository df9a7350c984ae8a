"""Truncated Ramanujan, coprime and Lucht series and their identities.

Every series is an instance of the three-variable series

    F_G(a, b, c)(x) = sum over q <= x with (q, b) = 1 of G(cq) c_q(a),

with R_G(a) = F_G(a, 1, 1), S_G(b) = F_G(1, b, 1) and L_G(d) = F_G(1, 1, d).
Partial sums are step functions of x: they only depend on floor(x), and x < 1
gives the empty sum. Arguments x/d in the identities are real divisions, so
floor(x/d) = floor(x) // d.
"""

import logging
import math
import random
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction
from math import gcd

import numpy as np
import numpy.typing as npt

from ramanujan_clouds.arith import divisors, factorize, get_sieve, mobius, radical
from ramanujan_clouds.coefficients import (
    INFINITY,
    CoefficientSpec,
    FlatPowerLaw,
    OneEverywhere,
    PowerLaw,
    ZeroOnPrimes,
    cm_index,
    coefficient_tolerance,
    conductors,
    value_from_pairs,
)
from ramanujan_clouds.config import VerdictConfig, get_settings
from ramanujan_clouds.exceptions import DomainError, FinitenessNotProvableError, PreconditionError, ResourceError
from ramanujan_clouds.ramanujan import ramanujan_sum, ramanujan_sum_from_pairs, ramanujan_sum_prime_power
from ramanujan_clouds.scalars import Scalar, divide, is_zero, magnitude, normalize

logger = logging.getLogger(__name__)

Real = int | float | Fraction


class SeriesKind(StrEnum):
    """Series families; all are specialisations of F."""

    R = "R"
    S = "S"
    L = "L"
    F = "F"


@dataclass(frozen=True, slots=True)
class SeriesParams:
    """Arguments (a, b, c) of F_G(a, b, c)."""

    a: int = 1
    b: int = 1
    c: int = 1

    def __post_init__(self) -> None:
        for name in ("a", "b", "c"):
            if getattr(self, name) < 1:
                raise DomainError(f"series parameter {name} must be positive", condition="positive_integer")


def series_params(kind: SeriesKind | str, *, a: int = 1, b: int = 1, c: int = 1, d: int = 1) -> SeriesParams:
    """Map the parameters of one series kind to F's (a, b, c)."""
    match SeriesKind(kind):
        case SeriesKind.R:
            return SeriesParams(a=a)
        case SeriesKind.S:
            return SeriesParams(b=b)
        case SeriesKind.L:
            return SeriesParams(c=d)
        case SeriesKind.F:
            return SeriesParams(a, b, c)


def _term(g: CoefficientSpec, params: SeriesParams, q: int) -> Scalar:
    if params.b > 1 and gcd(q, params.b) != 1:
        return 0
    sieve = get_sieve()
    q_pairs = sieve.factor_pairs(q)
    c_q = ramanujan_sum_from_pairs(q_pairs, params.a)
    if c_q == 0:
        return 0
    g_value = value_from_pairs(g, sieve.factor_pairs(params.c * q)) if params.c > 1 else value_from_pairs(g, q_pairs)
    return g_value * c_q


def _block_terms(g: CoefficientSpec, params: SeriesParams, lo: int, hi: int) -> list[Scalar]:
    return [_term(g, params, q) for q in range(lo, hi)]


def _check_budget(n: int) -> None:
    budget = get_settings().scan.budget
    if n > budget:
        raise ResourceError(f"scan of {n} terms exceeds the budget of {budget}")


def _terms(g: CoefficientSpec, params: SeriesParams, n: int) -> list[Scalar]:
    """Terms for q = 1..n, computed per partition and concatenated in q order."""
    scan = get_settings().scan
    if scan.workers == 1 or n <= scan.partition_size:
        return _block_terms(g, params, 1, n + 1)
    bounds = list(range(1, n + 1, scan.partition_size)) + [n + 1]
    with ThreadPoolExecutor(max_workers=scan.workers) as executor:
        futures = [executor.submit(_block_terms, g, params, lo, hi) for lo, hi in zip(bounds, bounds[1:], strict=False)]
        blocks = [future.result() for future in futures]
    return [term for block in blocks for term in block]


def _dense_prime_values(g: CoefficientSpec, primes: npt.NDArray[np.int64]) -> npt.NDArray[np.complex128]:
    values = np.zeros(len(primes), dtype=np.complex128)
    match g.default:
        case ZeroOnPrimes():
            pass
        case OneEverywhere():
            values[:] = 1.0
        case PowerLaw(s=s, negate=negate) | FlatPowerLaw(s=s, negate=negate):
            values = np.power(primes.astype(np.complex128), -complex(s))
            if negate:
                values = -values
    for p in g.listed_primes:
        idx = np.searchsorted(primes, p)
        if idx < len(primes) and primes[idx] == p:
            values[idx] = complex(g.prime_power_value(p, 1))
    return values


def dense_coprime_partial_sums(g: CoefficientSpec, b: int, n: int) -> npt.NDArray[np.complex128]:
    """Cumulative sums of G(q) mu(q) over q <= n coprime to b, in floating point.

    The term is the product of -G(p) over the primes of a square-free q, so
    it is assembled one prime at a time with strided numpy updates.
    """
    _check_budget(n)
    sieve = get_sieve()
    primes = sieve.primes_up_to(n)
    prime_values = _dense_prime_values(g, primes)
    terms = np.ones(n + 1, dtype=np.complex128)
    for p, value in zip(primes.tolist(), prime_values.tolist(), strict=True):
        if b % p == 0:
            terms[p::p] = 0.0
        else:
            terms[p::p] *= -value
    terms[~sieve.squarefree_mask(n)] = 0.0
    terms[0] = 0.0
    return np.cumsum(terms)


@dataclass(frozen=True)
class PartialSumTable:
    """Cumulative partial sums of one series for q <= n_max."""

    params: SeriesParams
    cumulative: Sequence[Scalar]

    @property
    def n_max(self) -> int:
        """Largest q covered."""
        return len(self.cumulative) - 1

    def at(self, x: Real) -> Scalar:
        """Partial sum at real ``x``; the empty sum for x < 1."""
        if x < 1:
            return 0
        return self.at_floor(math.floor(x))

    def at_floor(self, n: int) -> Scalar:
        """Partial sum over q <= n."""
        if n > self.n_max:
            raise DomainError(f"partial sums are tabulated up to {self.n_max}, not {n}", condition="scan_range")
        return self.cumulative[n] if n > 0 else 0


def partial_sum_table(g: CoefficientSpec, params: SeriesParams, n_max: int) -> PartialSumTable:
    """Tabulate the partial sums of F_G(a, b, c) for every q <= n_max."""
    n_max = max(n_max, 0)
    _check_budget(n_max)
    scan = get_settings().scan
    if params.a == 1 and params.c == 1 and not g.is_exact and n_max >= scan.dense_threshold:
        logger.debug("Dense coprime scan up to %d", n_max)
        return PartialSumTable(params, dense_coprime_partial_sums(g, params.b, n_max))
    cumulative: list[Scalar] = [0]
    running: Scalar = 0
    for term in _terms(g, params, n_max):
        running += term
        cumulative.append(running)
    return PartialSumTable(params, cumulative)


def partial_sum(kind: SeriesKind | str, g: CoefficientSpec, params: SeriesParams, x: Real) -> Scalar:
    """Truncated sum of the series up to real ``x``.

    ``params`` must already describe the kind through ``series_params``;
    ``kind`` is checked against it.
    """
    _check_kind(SeriesKind(kind), params)
    if x < 0:
        raise DomainError(f"x = {x} must be non-negative", condition="non_negative_x")
    if x < 1:
        return 0
    n = math.floor(x)
    _check_budget(n)
    total: Scalar = 0
    for term in _terms(g, params, n):
        total += term
    return normalize(total)


def _check_kind(kind: SeriesKind, params: SeriesParams) -> None:
    match kind:
        case SeriesKind.R if params.b != 1 or params.c != 1:
            raise DomainError("R-series take only the argument a", condition="series_params")
        case SeriesKind.S if params.a != 1 or params.c != 1:
            raise DomainError("S-series take only the coprimality modulus b", condition="series_params")
        case SeriesKind.L if params.a != 1 or params.b != 1:
            raise DomainError("L-series take only the shift d", condition="series_params")
        case _:
            pass


def is_provably_finite(g: CoefficientSpec) -> bool:
    """Whether every F_G(a, b, c) has finitely many nonzero terms.

    With G vanishing on unlisted primes, a contributing q only involves listed
    primes and primes of ac, and the vertical limit caps its exponents at
    v_p(a) + 1.
    """
    return isinstance(g.default, ZeroOnPrimes)


def exact_sum(kind: SeriesKind | str, g: CoefficientSpec, params: SeriesParams) -> Scalar:
    """Full value of a provably finite series as a finite Euler product.

    Raises:
        FinitenessNotProvableError: If G does not vanish on unlisted primes.

    """
    _check_kind(SeriesKind(kind), params)
    if not is_provably_finite(g):
        raise FinitenessNotProvableError(
            f"default rule {type(g.default).__name__} leaves infinitely many candidate terms",
        )
    a_exponents = dict(factorize(params.a).factors)
    c_exponents = dict(factorize(params.c).factors)
    value: Scalar = 1
    for p in sorted(set(g.listed_primes) | set(a_exponents) | set(c_exponents)):
        shift = c_exponents.get(p, 0)
        if params.b % p == 0:
            value *= g.prime_power_value(p, shift)
        else:
            cap = a_exponents.get(p, 0) + 1
            value *= sum(
                (g.prime_power_value(p, shift + k) * ramanujan_sum_prime_power(p, k, params.a) for k in range(cap + 1)),
                start=0,
            )
        if value == 0:
            return 0
    return normalize(value)


class Identity(StrEnum):
    """Partial-sum identities between the series."""

    S_REC = "S-rec"
    RS = "RS"
    R_REC = "R-rec"
    LS = "LS"
    L_REC = "L-rec"
    LR = "LR"
    LR_INVERSE = "LR-inverse"
    FG_TRANSFORM = "FGtransform"


@dataclass(frozen=True, slots=True)
class IdentityParams:
    """Integers an identity is instantiated with; unused fields are ignored."""

    a: int = 1
    b: int = 1
    c: int = 1
    d: int = 1
    p: int = 2
    w: int = 1


@dataclass
class _SumCache:
    g: CoefficientSpec
    n_max: int
    tables: dict[SeriesParams, PartialSumTable] = field(default_factory=dict)

    def at(self, params: SeriesParams, x: int) -> Scalar:
        table = self.tables.get(params)
        if table is None:
            table = partial_sum_table(self.g, params, self.n_max)
            self.tables[params] = table
        return table.at_floor(x)


def _require(condition: bool, name: str, message: str) -> None:
    if not condition:
        raise PreconditionError(message, condition=name)


def _require_infinite_w(g: CoefficientSpec, c: int) -> None:
    for p, _ in factorize(c).factors:
        _require(cm_index(g, p) == INFINITY, "infinite_cm_index", f"w_(p,G) must be infinite for p = {p} dividing c")


def _identity_sides(
    identity: Identity,
    g: CoefficientSpec,
    params: IdentityParams,
) -> tuple[list[tuple[Scalar, SeriesParams, int]], list[tuple[Scalar, SeriesParams, int]], Scalar]:
    """Both sides as weighted partial sums: (weight, series, divisor of x), plus a common denominator."""
    a, b, c, d = params.a, params.b, params.c, params.d
    match identity:
        case Identity.S_REC:
            _require(gcd(b, c) == 1, "coprime_b_c", f"S-rec needs (b, c) = 1, got b={b}, c={c}")
            lhs = [(1, SeriesParams(b=b), 1)]
            rhs = [(g.value_at(e) * mobius(e), SeriesParams(b=b * c), e) for e in divisors(c)]
            return lhs, rhs, 1
        case Identity.RS:
            lhs = [(1, SeriesParams(a=a), 1)]
            rhs = [(g.value_at(e) * ramanujan_sum(e, a), SeriesParams(b=a), e) for e in divisors(a * radical(a))]
            return lhs, rhs, 1
        case Identity.R_REC:
            _require(gcd(b, c) == 1, "coprime_b_c", f"R-rec needs (b, c) = 1, got b={b}, c={c}")
            _require_infinite_w(g, c)
            lhs = [(1, SeriesParams(a=b * c), 1)]
            rhs = [(g.value_at(h) * h, SeriesParams(a=b), h) for h in divisors(c)]
            return lhs, rhs, 1
        case Identity.LS:
            lhs = [(1, SeriesParams(c=d), 1)]
            rhs = [(mobius(ell) * g.value_at(ell * d), SeriesParams(b=d), ell) for ell in divisors(d)]
            return lhs, rhs, 1
        case Identity.L_REC:
            _require_infinite_w(g, c)
            return [(1, SeriesParams(c=b * c), 1)], [(g.value_at(c), SeriesParams(c=b), 1)], 1
        case Identity.LR:
            lhs = [(1, SeriesParams(a=a), 1)]
            rhs = [(e, SeriesParams(c=e), e) for e in divisors(a)]
            return lhs, rhs, 1
        case Identity.LR_INVERSE:
            lhs = [(d, SeriesParams(c=d), d)]
            rhs = [(mobius(d // t), SeriesParams(a=t), 1) for t in divisors(d)]
            return lhs, rhs, 1
        case Identity.FG_TRANSFORM:
            return _fg_transform_sides(g, params)


def _fg_transform_sides(
    g: CoefficientSpec,
    params: IdentityParams,
) -> tuple[list[tuple[Scalar, SeriesParams, int]], list[tuple[Scalar, SeriesParams, int]], Scalar]:
    a, b, c, p, w = params.a, params.b, params.c, params.p, params.w
    _require(factorize(p).factors == ((p, 1),), "prime_p", f"{p} is not prime")
    _require((a * b * c) % p != 0, "p_coprime_abc", f"p = {p} must not divide abc = {a * b * c}")
    _require(w >= 1, "positive_w", f"w = {w} must be positive")
    g_p = g.prime_power_value(p, 1)
    g_next = g.prime_power_value(p, w + 1)
    delta = normalize(g.prime_power_value(p, w) * g_p - g_next)
    _require(not is_zero(delta, coefficient_tolerance(g)), "nonzero_delta", "G(p^w)G(p) - G(p^(w+1)) vanishes")
    lhs = [(1, SeriesParams(a, p * b, c), 1)]
    rhs = [(g_p, SeriesParams(a, b, p**w * c), 1), (-g_next, SeriesParams(a, b, c), 1)]
    return lhs, rhs, delta


def identity_residual(
    identity: Identity | str,
    g: CoefficientSpec,
    params: IdentityParams,
    xs: Sequence[Real],
) -> float | Fraction:
    """Largest |LHS - RHS| of a partial-sum identity over the points ``xs``.

    The result is an exact ``Fraction`` when G is exact and a float otherwise;
    mathematically it is zero for every x.

    Raises:
        PreconditionError: If a side condition of the identity fails; the
            error's ``condition`` names it.

    """
    identity = Identity(identity)
    lhs, rhs, denominator = _identity_sides(identity, g, params)
    floors = [math.floor(x) if x >= 1 else 0 for x in xs]
    cache = _SumCache(g, max(floors, default=0))
    worst: float | Fraction = 0
    for n in floors:
        left = sum((weight * cache.at(sp, n // div) for weight, sp, div in lhs), start=0)
        right = sum((weight * cache.at(sp, n // div) for weight, sp, div in rhs), start=0)
        if denominator != 1:
            right = divide(right, denominator)
        residual = abs(normalize(left - right))
        worst = max(worst, residual if isinstance(residual, Fraction | int) else float(residual))
    logger.debug("Identity %s residual %s", identity, worst)
    return worst


@dataclass(frozen=True, slots=True)
class ConvergedEstimate:
    """Partial sums settled inside the Cauchy window."""

    value: Scalar
    error_bound: float


@dataclass(frozen=True, slots=True)
class Diverging:
    """Partial sums grow like x^exponent."""

    exponent: float
    fit_quality: float


@dataclass(frozen=True, slots=True)
class Inconclusive:
    """Neither criterion applies."""

    reason: str


Verdict = ConvergedEstimate | Diverging | Inconclusive


@dataclass(frozen=True)
class SeriesTrace:
    """Partial-sum trajectory with a convergence verdict.

    ``heuristic`` is False only when the verdict comes from an exact sum.
    """

    kind: SeriesKind
    params: SeriesParams
    checkpoints: tuple[tuple[Real, Scalar], ...]
    verdict: Verdict
    exact: Scalar | None = None
    heuristic: bool = True

    @property
    def xs(self) -> list[float]:
        """Checkpoint abscissae."""
        return [float(x) for x, _ in self.checkpoints]

    @property
    def values(self) -> list[Scalar]:
        """Partial sums at the checkpoints."""
        return [value for _, value in self.checkpoints]


def fit_growth(xs: Sequence[float], values: Sequence[Scalar]) -> tuple[float, float, float]:
    """Least-squares slope of log|sum| against log x on checkpoints with x >= sqrt(x_max).

    Returns:
        (exponent, R^2, first x of the fit window). The window falls back to
        the top half of the checkpoints when fewer than four qualify.

    """
    x_arr = np.asarray(xs, dtype=float)
    y_arr = np.abs(np.asarray([complex(v) for v in values], dtype=np.complex128))
    usable = (x_arr > 0) & (y_arr > 0)
    x_arr, y_arr = x_arr[usable], y_arr[usable]
    if len(x_arr) < 2:  # noqa: PLR2004
        return 0.0, 0.0, float(x_arr[0]) if len(x_arr) else 0.0
    window = x_arr >= math.sqrt(x_arr[-1])
    if window.sum() < 4:  # noqa: PLR2004
        window = np.arange(len(x_arr)) >= len(x_arr) // 2
    log_x, log_y = np.log(x_arr[window]), np.log(y_arr[window])
    slope, intercept = np.polyfit(log_x, log_y, 1)
    fitted = slope * log_x + intercept
    ss_res = float(np.sum((log_y - fitted) ** 2))
    ss_tot = float(np.sum((log_y - log_y.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 0.0
    return float(slope), r2, float(x_arr[window][0])


def judge(
    xs: Sequence[float],
    values: Sequence[Scalar],
    criteria: VerdictConfig | None = None,
    *,
    rel_tol: float | None = None,
) -> Verdict:
    """Heuristic verdict on a trajectory of partial sums.

    Converged when the last ``cauchy_window`` sums stay within
    ``rel_tol * max(1, |last|)`` of the last one; Diverging when the growth fit
    has exponent above the threshold with R^2 above the minimum.
    """
    criteria = criteria or get_settings().verdict
    tol = criteria.cauchy_rel_tol if rel_tol is None else rel_tol
    if len(values) < criteria.cauchy_window:
        return Inconclusive(f"fewer than {criteria.cauchy_window} checkpoints")
    last = values[-1]
    spread = max(magnitude(v - last) for v in values[-criteria.cauchy_window :])
    if spread <= tol * max(1.0, magnitude(last)):
        return ConvergedEstimate(normalize(last), spread)
    exponent, r2, _ = fit_growth(xs, values)
    if exponent > criteria.min_divergence_exponent and r2 > criteria.min_fit_quality:
        return Diverging(exponent, r2)
    return Inconclusive(f"spread {spread:.3g} above tolerance, growth exponent {exponent:.3g} with R^2 {r2:.3g}")


def geometric_schedule(x_max: int, points: int = 24, start: int = 8) -> list[int]:
    """Strictly increasing integer checkpoints from ``start`` to ``x_max``, roughly geometric."""
    if x_max <= start:
        return list(range(1, x_max + 1))
    ratio = (x_max / start) ** (1.0 / (points - 1))
    xs = sorted({min(x_max, round(start * ratio**i)) for i in range(points)} | {x_max})
    return xs


def estimate_limit(
    kind: SeriesKind | str,
    g: CoefficientSpec,
    params: SeriesParams,
    schedule: Sequence[Real],
    *,
    rel_tol: float | None = None,
) -> SeriesTrace:
    """Evaluate the series along ``schedule`` and attach a verdict.

    Provably finite series carry their exact value and a non-heuristic
    Converged verdict.
    """
    kind = SeriesKind(kind)
    _check_kind(kind, params)
    if len(schedule) < 4 or any(x1 >= x2 for x1, x2 in zip(schedule, schedule[1:], strict=False)):  # noqa: PLR2004
        raise DomainError("schedule must be strictly increasing with at least four points", condition="schedule")
    table = partial_sum_table(g, params, math.floor(schedule[-1]))
    checkpoints = tuple((x, normalize(table.at(x))) for x in schedule)
    if is_provably_finite(g):
        value = exact_sum(kind, g, params)
        return SeriesTrace(kind, params, checkpoints, ConvergedEstimate(value, 0.0), exact=value, heuristic=False)
    verdict = judge([float(x) for x, _ in checkpoints], [v for _, v in checkpoints], rel_tol=rel_tol)
    logger.debug("Verdict for %s%s: %s", kind, params, verdict)
    return SeriesTrace(kind, params, checkpoints, verdict)


@dataclass(frozen=True)
class FinitenessReport:
    """Per-condition verdicts of the finiteness convergence criterion.

    ``standing`` is the common value R_G(1) = S_G(1) = L_G(1);
    ``ramanujan_at_divisors`` probes R_G(a) for a | N(G), ``coprime_at_conductor``
    probes S_G(N(G)) and ``coprime_samples`` probes S_G(b) for sampled b
    coprime to the hyperbad primes.
    """

    n: int
    n_t: int
    standing: SeriesTrace
    ramanujan_at_divisors: tuple[SeriesTrace, ...]
    coprime_at_conductor: SeriesTrace
    coprime_samples: tuple[SeriesTrace, ...]
    notes: tuple[str, ...]

    @property
    def traces(self) -> tuple[SeriesTrace, ...]:
        """Every probe in report order."""
        return (self.standing, *self.ramanujan_at_divisors, self.coprime_at_conductor, *self.coprime_samples)

    @property
    def consistent(self) -> bool:
        """False when some probes converge while others diverge."""
        verdicts = [t.verdict for t in self.traces]
        converged = any(isinstance(v, ConvergedEstimate) for v in verdicts)
        diverging = any(isinstance(v, Diverging) for v in verdicts)
        return not (converged and diverging)


def finiteness_check(g: CoefficientSpec, x_budget: int, *, samples: int = 4) -> FinitenessReport:
    """Probe the equivalent convergence conditions of the finiteness criterion numerically."""
    cond = conductors(g)
    schedule = geometric_schedule(x_budget)
    notes: list[str] = []
    if cond.default_hypertransparent:
        notes.append("OneEverywhere default: S_G(1) cannot converge absolutely")
    hyperbad = math.prod(cond.hyperbad_primes)
    sample_bs = [b for b in range(1, 64) if gcd(b, hyperbad) == 1][:samples]
    standing = estimate_limit(SeriesKind.R, g, SeriesParams(), schedule)
    at_divisors = tuple(estimate_limit(SeriesKind.R, g, SeriesParams(a=a), schedule) for a in divisors(cond.n))
    at_conductor = estimate_limit(SeriesKind.S, g, SeriesParams(b=cond.n), schedule)
    coprime = tuple(estimate_limit(SeriesKind.S, g, SeriesParams(b=b), schedule) for b in sample_bs)
    report = FinitenessReport(cond.n, cond.n_t, standing, at_divisors, at_conductor, coprime, tuple(notes))
    if not report.consistent:
        logger.warning("Finiteness probes disagree for N=%d", cond.n)
    return report


def random_identity_params(identity: Identity | str, g: CoefficientSpec, rng: random.Random) -> IdentityParams:
    """Draw parameters satisfying the side conditions of ``identity`` for ``g``."""
    identity = Identity(identity)
    infinite_w = [p for p in (2, 3, 5, 7, 11, 13) if cm_index(g, p) == INFINITY]
    match identity:
        case Identity.S_REC:
            b = rng.randint(1, 30)
            c = rng.choice([c for c in range(1, 31) if gcd(b, c) == 1])
            return IdentityParams(b=b, c=c)
        case Identity.RS | Identity.LR:
            return IdentityParams(a=rng.randint(1, 60))
        case Identity.LS | Identity.LR_INVERSE:
            return IdentityParams(d=rng.randint(1, 60))
        case Identity.R_REC | Identity.L_REC:
            c = math.prod(rng.sample(infinite_w, k=min(len(infinite_w), rng.randint(0, 2))))
            b = rng.choice([b for b in range(1, 31) if gcd(b, c) == 1])
            return IdentityParams(b=b, c=c)
        case Identity.FG_TRANSFORM:
            return _random_fg_params(g, rng)


def _random_fg_params(g: CoefficientSpec, rng: random.Random) -> IdentityParams:
    tol = coefficient_tolerance(g)
    candidates: list[tuple[int, int]] = []
    for p in g.listed_primes:
        size = len(g.prime_entries[p].values)
        for w in range(1, size + 2):
            delta = g.prime_power_value(p, w) * g.prime_power_value(p, 1) - g.prime_power_value(p, w + 1)
            if not is_zero(normalize(delta), tol):
                candidates.append((p, w))
    if not candidates:
        raise PreconditionError(
            "no listed prime admits a nonzero transformation determinant",
            condition="nonzero_delta",
        )
    p, w = rng.choice(candidates)
    coprime = [n for n in range(1, 25) if n % p]
    return IdentityParams(a=rng.choice(coprime), b=rng.choice(coprime), c=rng.choice(coprime), p=p, w=w)
