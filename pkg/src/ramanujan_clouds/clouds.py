"""Ramanujan clouds of an arithmetic function F.

Constructions of coefficients G with R_G = F on a declared finite domain:
the canonical coefficient, the Hildebrand coefficient, the completely
multiplicative cloud, and the opacity-core reconstruction; plus the finite
Euler product evaluation of R_G, the null-cloud criterion and the Selberg
factorization of semi-multiplicative functions.
"""

import logging
from dataclasses import dataclass, field
from enum import StrEnum
from types import MappingProxyType
from typing import Literal

from ramanujan_clouds.arith import (
    TabulatedFunction,
    divisors,
    eratosthenes_transform,
    factorize,
    first_multiplicativity_violation,
    mobius,
    primes_up_to,
    radical,
    require_multiplicative,
)
from ramanujan_clouds.coefficients import (
    INFINITY,
    CoefficientSpec,
    DefaultRule,
    FactorKind,
    FlatPowerLaw,
    GeometricTail,
    OneEverywhere,
    OneTail,
    PowerLaw,
    PrimeClass,
    PrimeEntry,
    TailRule,
    ZeroOnPrimes,
    ZeroTail,
    classify_prime,
    coefficient_tolerance,
    conductors,
    finite_factor,
    ramanujan_factorization,
)
from ramanujan_clouds.config import get_settings
from ramanujan_clouds.exceptions import DomainError, NotSemiMultiplicativeError, PreconditionError
from ramanujan_clouds.ramanujan import ramanujan_sum_from_pairs
from ramanujan_clouds.scalars import Scalar, all_exact, divide, is_zero, magnitude, normalize, scalars_equal
from ramanujan_clouds.series import (
    ConvergedEstimate,
    Diverging,
    SeriesKind,
    SeriesParams,
    SeriesTrace,
    estimate_limit,
    exact_sum,
    geometric_schedule,
    is_provably_finite,
    judge,
    partial_sum_table,
)

logger = logging.getLogger(__name__)


def _function_tolerance(f: TabulatedFunction) -> float:
    return 0.0 if all_exact(*f.values) else get_settings().tolerances.cloud


def _prime_power_exponent(p: int, bound: int) -> int:
    """Largest K with p^K <= bound."""
    k = 0
    while p ** (k + 1) <= bound:
        k += 1
    return k


def _eratosthenes_along_prime(f: TabulatedFunction, p: int, k: int) -> Scalar:
    """f'(p^k) = f(p^k) - f(p^(k-1)) for multiplicative f, with f'(1) = 1."""
    if k == 0:
        return 1
    return f(p**k) - f(p ** (k - 1))


def _canonical_values(f: TabulatedFunction, p: int, count: int) -> list[Scalar]:
    """G_f(p^v) = 1 - sum over K < v of f'(p^K) / p^K for v = 1..count."""
    values: list[Scalar] = []
    running: Scalar = 0
    for v in range(1, count + 1):
        running += divide(_eratosthenes_along_prime(f, p, v - 1), p ** (v - 1))
        values.append(normalize(1 - running))
    return values


def canonical_coefficient(f: TabulatedFunction, q_max: int) -> CoefficientSpec:
    """Canonical coefficient G_F of a multiplicative F on ``1..min(q_max, A_max)``.

    G_F vanishes on primes, so its coprime series is identically one and
    R_{G_F} equals its Euler-Ramanujan factor, which reproduces F exactly on
    the domain. Values past the tabulated powers are closed with a zero tail.

    Raises:
        NotMultiplicativeError: If F(1) != 1 or F is not multiplicative on the domain.

    """
    domain = f.truncate(q_max)
    require_multiplicative(domain, _function_tolerance(domain))
    entries = {
        p: PrimeEntry(tuple(_canonical_values(domain, p, _prime_power_exponent(p, domain.a_max) + 1)), ZeroTail())
        for p in primes_up_to(domain.a_max)
    }
    logger.debug("Canonical coefficient over %d primes", len(entries))
    return CoefficientSpec(entries, ZeroOnPrimes())


def _square_full_lift(q: int) -> list[tuple[int, int]]:
    """Prime-exponent pairs of q * rad(q)."""
    return [(p, e + 1) for p, e in factorize(q).factors]


def hildebrand_coefficient(f: TabulatedFunction, q_max: int) -> dict[int, Scalar]:
    """Hildebrand coefficient Hi_F, keyed by the square-full arguments q * rad(q).

    Hi(1) = F(1) and, for q > 1, Hi(q rad q) is solved from
    F(q) = sum over d | q of Hi(d rad d) c_{d rad d}(q), whose top term has
    c_{q rad q}(q) = q mu(rad q) != 0.
    """
    domain = f.truncate(q_max)
    by_q: dict[int, Scalar] = {1: domain(1)}
    for q in range(2, domain.a_max + 1):
        remainder: Scalar = domain(q)
        for d in divisors(q)[:-1]:
            c = ramanujan_sum_from_pairs(_square_full_lift(d), q)
            if c:
                remainder -= by_q[d] * c
        by_q[q] = normalize(divide(remainder, q * mobius(radical(q))))
    return {q * radical(q): value for q, value in by_q.items()}


def hildebrand_reconstruct(hi: dict[int, Scalar], a: int) -> Scalar:
    """F(a) = sum over q | a of Hi(q rad q) c_{q rad q}(a)."""
    total: Scalar = 0
    for q in divisors(a):
        key = q * radical(q)
        if key not in hi:
            raise DomainError(f"Hildebrand coefficient missing at {key}", condition="hildebrand_domain")
        total += hi[key] * ramanujan_sum_from_pairs(_square_full_lift(q), a)
    return normalize(total)


@dataclass(frozen=True)
class CmCloud:
    """Outcome of the completely multiplicative cloud construction.

    ``coefficient`` is None when the cloud is empty; ``reason`` then names the
    failed check.
    """

    coefficient: CoefficientSpec | None
    reason: str | None = None
    trace: SeriesTrace | None = None

    @property
    def empty(self) -> bool:
        """Whether no completely multiplicative coefficient was found."""
        return self.coefficient is None


def cm_cloud_coefficient(f: TabulatedFunction, *, limit_tol: float = 1e-2) -> CmCloud:
    """Candidate G(q) = F'(q) / (q F(1)) of the completely multiplicative cloud.

    Checks complete multiplicativity of F'/F(1) on the domain and, heuristically
    when values are floating, that the partial sums of F'(q) mu(q) / q settle on
    F(1)^2 (exactly when every value is exact and the partial sums are flat).
    """
    tol = _function_tolerance(f)
    f1 = f(1)
    if is_zero(f1, tol):
        return CmCloud(None, "F(1) vanishes")
    f_prime = eratosthenes_transform(f)
    ratio = [normalize(divide(v, f1)) for v in f_prime.values]
    for n in range(2, f.a_max + 1):
        p = factorize(n).factors[0][0]
        if not scalars_equal(ratio[n - 1], ratio[p - 1] * ratio[n // p - 1], tol):
            return CmCloud(None, f"F'/F(1) is not completely multiplicative at {n}")

    table = TabulatedFunction(tuple(normalize(divide(f_prime(q) * mobius(q), q)) for q in range(1, f.a_max + 1)))
    running: Scalar = 0
    cumulative: list[Scalar] = []
    for value in table.values:
        running += value
        cumulative.append(running)
    schedule = geometric_schedule(f.a_max)
    values = [normalize(cumulative[x - 1]) for x in schedule]
    verdict = judge([float(x) for x in schedule], values, rel_tol=limit_tol if tol else 0.0)
    if tol == 0.0 and not isinstance(verdict, ConvergedEstimate):
        verdict = judge([float(x) for x in schedule], values, rel_tol=limit_tol)
    trace = SeriesTrace(SeriesKind.S, SeriesParams(), tuple(zip(schedule, values, strict=True)), verdict)
    if isinstance(verdict, Diverging):
        return CmCloud(None, "sum of F'(q) mu(q) / q diverges", trace)
    if not isinstance(verdict, ConvergedEstimate):
        return CmCloud(None, "sum of F'(q) mu(q) / q does not settle on the domain", trace)
    target = f1 * f1
    exact_flat = tol == 0.0 and verdict.error_bound == 0
    limit_matches = (
        verdict.value == target
        if exact_flat
        else magnitude(verdict.value - target) <= limit_tol * max(1.0, magnitude(target))
    )
    if not limit_matches:
        return CmCloud(None, f"sum of F'(q) mu(q) / q tends to {verdict.value}, not F(1)^2 = {target}", trace)

    entries: dict[int, PrimeEntry] = {}
    for p in primes_up_to(f.a_max):
        g_p = normalize(divide(ratio[p - 1], p))
        if is_zero(g_p, tol):
            continue
        count = _prime_power_exponent(p, f.a_max)
        entries[p] = PrimeEntry(tuple(normalize(g_p**k) for k in range(1, count + 1)), GeometricTail(g_p))
    return CmCloud(CoefficientSpec(entries, ZeroOnPrimes()), None, trace)


@dataclass(frozen=True)
class OpacityCore:
    """Square-free supported multiplicative function H_G(q) = G(q N_T(G)) mu^2(q).

    Listed primes carry explicit values; every other prime takes the value
    of the default rule at its first power.
    """

    prime_values: MappingProxyType[int, Scalar]
    default: DefaultRule
    q_max: int
    n_t: int = 1

    def at_prime(self, p: int) -> Scalar:
        """H(p)."""
        value = self.prime_values.get(p)
        if value is not None:
            return value
        return CoefficientSpec({}, self.default).prime_power_value(p, 1)

    def value_at(self, q: int) -> Scalar:
        """H(q); zero off the square-free numbers."""
        fac = factorize(q)
        if not fac.is_squarefree:
            return 0
        value: Scalar = 1
        for p in fac.primes:
            value *= self.at_prime(p)
        return normalize(value)

    def tabulate(self) -> TabulatedFunction:
        """H on ``1..q_max``."""
        return TabulatedFunction.from_callable(self.value_at, self.q_max)

    def as_coefficient_spec(self) -> CoefficientSpec:
        """A coefficient agreeing with H on square-free numbers, for coprime-series evaluation."""
        return CoefficientSpec({p: PrimeEntry((v,), ZeroTail()) for p, v in self.prime_values.items()}, self.default)


def opacity_core(g: CoefficientSpec, q_max: int) -> OpacityCore:
    """Opacity core of G: H(p) = G(p^(v+1)) off the hypertransparent primes, 1 on them.

    Raises:
        PreconditionError: For a OneEverywhere default, which has infinitely
            many transparent primes.

    """
    if isinstance(g.default, OneEverywhere):
        raise PreconditionError(
            "a OneEverywhere default has infinitely many transparent primes",
            condition="finitely_many_transparent_primes",
        )
    cond = conductors(g)
    values: dict[int, Scalar] = {}
    for c in cond.classifications:
        if c.prime_class is PrimeClass.HYPERTRANSPARENT:
            values[c.p] = 1
        else:
            values[c.p] = g.prime_power_value(c.p, int(c.v) + 1)
    return OpacityCore(MappingProxyType(values), g.default, q_max, cond.n_t)


@dataclass(frozen=True)
class SemiMultiplicativeForm:
    """Selberg factorization F(n) = c M_F(n / a_F), zero off the multiples of a_F."""

    a_f: int
    c: Scalar
    m: TabulatedFunction

    @property
    def a_max(self) -> int:
        """Largest argument of F covered by the tabulation of M_F."""
        return self.a_f * self.m.a_max

    def value(self, n: int) -> Scalar:
        """F(n)."""
        if n % self.a_f:
            return 0
        return normalize(self.c * self.m(n // self.a_f))


def _selberg_product(f: TabulatedFunction, a_f: int, c: Scalar, a: int) -> Scalar:
    """c * prod over p | a of F(a_F p^(v_p(a) - v_p(a_F))) / c."""
    a_f_fac = factorize(a_f)
    value: Scalar = c
    for p, e in factorize(a).factors:
        value *= divide(f(a_f * p ** (e - a_f_fac.valuation(p))), c)
    return normalize(value)


def selberg_decompose(f: TabulatedFunction) -> SemiMultiplicativeForm:
    """Split a semi-multiplicative F into threshold, constant and multiplicative part.

    Raises:
        PreconditionError: If F vanishes on the whole domain.
        NotSemiMultiplicativeError: With the first violated coprime pair of M_F,
            or when F is nonzero off the multiples of its threshold.

    """
    tol = _function_tolerance(f)
    support = [n for n in range(1, f.a_max + 1) if not is_zero(f(n), tol)]
    if not support:
        raise PreconditionError("F vanishes on the tabulated domain", condition="nonzero_function")
    a_f = support[0]
    c = f(a_f)
    for n in support:
        if n % a_f:
            raise NotSemiMultiplicativeError(f"F({n}) != 0 although the threshold {a_f} does not divide {n}")
    m = TabulatedFunction(tuple(normalize(divide(f(a_f * n), c)) for n in range(1, f.a_max // a_f + 1)))
    pair = first_multiplicativity_violation(m, tol)
    if pair is not None:
        raise NotSemiMultiplicativeError(
            f"M_F({pair[0] * pair[1]}) != M_F({pair[0]}) M_F({pair[1]}) with threshold {a_f}",
            pair=pair,
        )
    for n in range(a_f, f.a_max + 1, a_f):
        if not scalars_equal(f(n), _selberg_product(f, a_f, c, n), tol):
            raise NotSemiMultiplicativeError(f"Selberg product differs from F({n})")
    logger.debug("Selberg factorization with threshold %d", a_f)
    return SemiMultiplicativeForm(a_f, c, m)


def _cm_index_infinite_on_domain(m: TabulatedFunction, p: int) -> bool:
    """Whether (M * mu)(p^k) = (M * mu)(p)^k for every p^k in the domain."""
    tol = _function_tolerance(m)
    if p > m.a_max:
        return True
    base = _eratosthenes_along_prime(m, p, 1)
    return all(
        scalars_equal(_eratosthenes_along_prime(m, p, k), base**k, tol)
        for k in range(2, _prime_power_exponent(p, m.a_max) + 1)
    )


def relative_simply_bad_primes(m: TabulatedFunction, core: OpacityCore) -> list[int]:
    """Listed primes of H with 1 <= |H(p)| <= p that M and H do not tie together.

    A bad p is excluded only when (M * mu) is completely multiplicative along
    p on the domain and H(p) = (M(p) - 1) / p; primes beyond the domain of M
    are kept.
    """
    tol = _function_tolerance(m)
    primes: list[int] = []
    for p in sorted(core.prime_values):
        h = core.at_prime(p)
        size = magnitude(h)
        if not (1 - tol <= size <= p + tol):
            continue
        if p > m.a_max:
            primes.append(p)
            continue
        tied = _cm_index_infinite_on_domain(m, p) and scalars_equal(h, divide(m(p) - 1, p), tol)
        if not tied:
            primes.append(p)
    return primes


AnalyticCheck = Literal["exact", "heuristic"]


@dataclass(frozen=True)
class Reconstruction:
    """Coefficient rebuilt from an opacity core, with the checks that backed it."""

    coefficient: CoefficientSpec
    analytic_checks: AnalyticCheck
    relative_simply_bad: tuple[int, ...]
    reproduces_domain: bool | None
    notes: tuple[str, ...] = field(default_factory=tuple)


def _core_series_checks(form: SemiMultiplicativeForm, core: OpacityCore, n: int) -> AnalyticCheck:
    """Check that S_H(N) converges and S_H(1) = F(a_F) / a_F.

    The reconstruction has a_F = N_T(G), and E_G(N_T) carries a factor p^v for
    every simply transparent p, so R_G(N_T) = N_T S_H(1).
    """
    h_spec = core.as_coefficient_spec()
    tol = get_settings().tolerances.cloud
    target = normalize(divide(form.c, form.a_f))
    if is_provably_finite(h_spec):
        total = exact_sum(SeriesKind.S, h_spec, SeriesParams())
        if not scalars_equal(total, target, tol):
            raise PreconditionError(
                f"sum of H(q) mu(q) is {total}, not F(a_F) / a_F = {target}",
                condition="core_sum_equals_threshold_value",
            )
        return "exact"
    schedule = geometric_schedule(max(core.q_max, 1024))
    at_n = estimate_limit(SeriesKind.S, h_spec, SeriesParams(b=n), schedule)
    if not isinstance(at_n.verdict, ConvergedEstimate):
        raise PreconditionError("coprime series of H at N does not converge", condition="core_series_converges")
    total_trace = estimate_limit(SeriesKind.S, h_spec, SeriesParams(), schedule)
    verdict = total_trace.verdict
    if not isinstance(verdict, ConvergedEstimate) or magnitude(verdict.value - target) > max(tol, verdict.error_bound):
        raise PreconditionError(
            f"sum of H(q) mu(q) does not settle on F(a_F) / a_F = {target}",
            condition="core_sum_equals_threshold_value",
        )
    return "heuristic"


def _moves_along_prime(m: TabulatedFunction, p: int, tol: float) -> bool:
    return any(not scalars_equal(m(p**k), 1, tol) for k in range(1, _prime_power_exponent(p, m.a_max) + 1))


def _reconstructed_tail(last: Scalar, tol: float) -> TailRule:
    if is_zero(last, tol):
        return ZeroTail()
    if scalars_equal(last, 1, tol):
        return OneTail()
    return GeometricTail(1)


def _reconstructed_default(rule: DefaultRule) -> DefaultRule:
    match rule:
        case PowerLaw(s=s, negate=negate) | FlatPowerLaw(s=s, negate=negate):
            return FlatPowerLaw(s, negate)
        case _:
            return rule


def reconstruct_from_core(form: SemiMultiplicativeForm, core: OpacityCore, n: int, q_max: int) -> Reconstruction:
    """Rebuild the unique G in the cloud of F with opacity core H.

    G(p^v) = 1 for p | a_F and v <= v_p(a_F), and
    G(p^(v + v_p(a_F))) = H(p) + (1 - H(p)) G_{M_F}(p^v) for v >= 1. M_F is
    assumed to have vanishing Eratosthenes transform beyond its domain, which
    fixes the tails. R_G = F is verified on a <= min(q_max, domain of F) when
    the result is provably finite.

    Raises:
        PreconditionError: Naming the first failed hypothesis.

    """
    if n % form.a_f:
        raise PreconditionError(f"a_F = {form.a_f} does not divide N = {n}", condition="a_f_divides_n")
    relative = relative_simply_bad_primes(form.m, core)
    missing = [p for p in relative if n % p]
    if missing:
        raise PreconditionError(
            f"relative simply bad primes {missing} do not divide N = {n}",
            condition="relative_simply_bad_divide_n",
        )
    tol = get_settings().tolerances.cloud
    for p, _ in factorize(n).factors:
        if scalars_equal(core.at_prime(p), 1, tol):
            raise PreconditionError(f"H({p}) = 1 at a prime dividing N", condition="core_not_one_on_n")
    checks = _core_series_checks(form, core, n)

    m = form.m
    a_f_fac = factorize(form.a_f)
    nontrivial = [p for p in primes_up_to(m.a_max) if _moves_along_prime(m, p, tol)]
    entries: dict[int, PrimeEntry] = {}
    for p in sorted(set(core.prime_values) | set(a_f_fac.primes) | set(nontrivial)):
        h = core.at_prime(p)
        if scalars_equal(h, 1, tol):
            entries[p] = PrimeEntry((1,), OneTail())
            continue
        shift = a_f_fac.valuation(p)
        g_m = _canonical_values(m, p, _prime_power_exponent(p, m.a_max) + 1)
        values = [1] * shift + [normalize(h + (1 - h) * value) for value in g_m]
        entries[p] = PrimeEntry(tuple(values), _reconstructed_tail(values[-1], tol))
    g = CoefficientSpec(entries, _reconstructed_default(core.default))

    notes: list[str] = []
    reproduces: bool | None = None
    if is_provably_finite(g):
        limit = min(q_max, form.a_max)
        reproduces = all(
            scalars_equal(exact_sum(SeriesKind.R, g, SeriesParams(a=a)), form.value(a), tol)
            for a in range(1, limit + 1)
        )
        if not reproduces:
            logger.warning("Reconstructed coefficient does not reproduce F on 1..%d", limit)
    else:
        notes.append("R_G = F not verified: the reconstruction has infinitely many nonzero terms")
    return Reconstruction(g, checks, tuple(relative), reproduces, tuple(notes))


class NullCloudVerdict(StrEnum):
    """Membership of G in the cloud of the zero function."""

    IN_NULL_CLOUD = "in_null_cloud"
    NOT_IN_NULL_CLOUD = "not_in_null_cloud"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class NullCloudReport:
    """Null-cloud verdict, the coprime sum at N(G) and the sampled R_G(a)."""

    verdict: NullCloudVerdict
    n: int
    coprime_value: Scalar | None
    heuristic: bool
    samples: tuple[tuple[int, Scalar], ...]
    consistent: bool
    reason: str = ""


def null_cloud_test(g: CoefficientSpec, x_budget: int = 10**4, *, sample_max: int = 30) -> NullCloudReport:
    """Decide whether R_G vanishes identically through S_G(N(G)) = 0.

    Exact when G vanishes on unlisted primes; otherwise the coprime sum is
    estimated and the verdict is inconclusive when its error bound straddles
    the tolerance. Samples R_G(a) for a <= ``sample_max`` as a cross-check.
    """
    n = conductors(g).n
    tol = get_settings().tolerances.cloud
    if is_provably_finite(g):
        value: Scalar | None = exact_sum(SeriesKind.S, g, SeriesParams(b=n))
        samples = tuple((a, exact_sum(SeriesKind.R, g, SeriesParams(a=a))) for a in range(1, sample_max + 1))
        verdict = NullCloudVerdict.IN_NULL_CLOUD if is_zero(value, tol) else NullCloudVerdict.NOT_IN_NULL_CLOUD
        heuristic, reason = False, ""
    else:
        trace = estimate_limit(SeriesKind.S, g, SeriesParams(b=n), geometric_schedule(x_budget))
        samples = tuple(
            (a, partial_sum_table(g, SeriesParams(a=a), x_budget).at_floor(x_budget)) for a in range(1, sample_max + 1)
        )
        heuristic = True
        match trace.verdict:
            case ConvergedEstimate(value=estimate, error_bound=bound):
                value = estimate
                if magnitude(estimate) + bound <= tol:
                    verdict, reason = NullCloudVerdict.IN_NULL_CLOUD, ""
                elif magnitude(estimate) - bound > tol:
                    verdict, reason = NullCloudVerdict.NOT_IN_NULL_CLOUD, ""
                else:
                    verdict, reason = NullCloudVerdict.INCONCLUSIVE, "estimate within its error bound of zero"
            case Diverging():
                value, verdict, reason = None, NullCloudVerdict.NOT_IN_NULL_CLOUD, "coprime series diverges"
            case _:
                value, verdict, reason = None, NullCloudVerdict.INCONCLUSIVE, "coprime series did not settle"
    sample_tol = tol if not heuristic else max(tol, get_settings().verdict.cauchy_rel_tol)
    all_zero = all(is_zero(v, sample_tol) for _, v in samples)
    consistent = verdict is NullCloudVerdict.INCONCLUSIVE or all_zero == (verdict is NullCloudVerdict.IN_NULL_CLOUD)
    if not consistent:
        logger.warning("Null-cloud verdict %s disagrees with sampled R_G", verdict)
    return NullCloudReport(verdict, n, value, heuristic, samples, consistent, reason)


def series_base(g: CoefficientSpec, x_budget: int = 10**4) -> Scalar:
    """R_G(N_T(G)), exactly when possible, else as E_G(N_T) times an estimate of S_G(rad N_T).

    Raises:
        PreconditionError: If the coprime series estimate does not converge.

    """
    n_t = conductors(g).n_t
    if is_provably_finite(g):
        return exact_sum(SeriesKind.R, g, SeriesParams(a=n_t))
    trace = estimate_limit(SeriesKind.S, g, SeriesParams(b=radical(n_t)), geometric_schedule(x_budget))
    if not isinstance(trace.verdict, ConvergedEstimate):
        raise PreconditionError("R_G(N_T) is unobtainable: coprime series did not converge", condition="base")
    return normalize(finite_factor(FactorKind.E, g, n_t) * trace.verdict.value)


def euler_selberg_value(g: CoefficientSpec, a: int, base: Scalar | None = None) -> Scalar:
    """R_G(a) as R_G(N_T) times finite Euler factors over the primes of a.

    Zero unless N_T(G) divides a. Each prime contributes 1 + p + ... + p^K when
    hypertransparent, and otherwise the sum over v <= k <= K of
    p^(k-v) (G(p^k) - G(p^(k+1))) divided by 1 - G(p^(v+1)), with v its
    transparency index and K = v_p(a).
    """
    n_t = conductors(g).n_t
    if a % n_t:
        return 0
    value: Scalar = series_base(g) if base is None else base
    for p, e in factorize(a).factors:
        c = classify_prime(g, p)
        if c.v == INFINITY:
            value *= sum(p**k for k in range(e + 1))
            continue
        v = int(c.v)
        numerator: Scalar = sum(
            (p ** (k - v) * (g.prime_power_value(p, k) - g.prime_power_value(p, k + 1)) for k in range(v, e + 1)),
            start=0,
        )
        value *= divide(numerator, 1 - g.prime_power_value(p, v + 1))
    return normalize(value)


def factorized_series_value(g: CoefficientSpec, a: int, base: Scalar | None = None) -> Scalar:
    """R_G(a) through the factorization a = h t a_tilde.

    D_G(h) C_G(rad N_T / rad t) E_G(t) / E_G(N_T) E_G(a_tilde) / C_G(a_tilde) R_G(N_T).
    """
    n_t = conductors(g).n_t
    h, t, a_tilde = ramanujan_factorization(g, a)
    value: Scalar = series_base(g) if base is None else base
    value *= finite_factor(FactorKind.D, g, h) * finite_factor(FactorKind.C, g, radical(n_t) // radical(t))
    value = divide(value * finite_factor(FactorKind.E, g, t), finite_factor(FactorKind.E, g, n_t))
    value = divide(value * finite_factor(FactorKind.E, g, a_tilde), finite_factor(FactorKind.C, g, a_tilde))
    return normalize(value)


@dataclass(frozen=True)
class SeparatingReport:
    """Checks of S_G(a) C_G(a) = S_G(1) and G(p) = 1 - S_G(1) / S_G(p)."""

    coprime_total: Scalar
    violations: tuple[str, ...]

    @property
    def holds(self) -> bool:
        """Whether no violation was found."""
        return not self.violations


def separating_check(g: CoefficientSpec, a_max: int) -> SeparatingReport:
    """Verify the separating identities of a finite coefficient with S_G(1) != 0 on a <= a_max."""
    tol = coefficient_tolerance(g)
    total = exact_sum(SeriesKind.S, g, SeriesParams())
    if is_zero(total, tol):
        raise PreconditionError("S_G(1) vanishes", condition="nonzero_coprime_total")
    violations: list[str] = []
    for a in range(1, a_max + 1):
        s_a = exact_sum(SeriesKind.S, g, SeriesParams(b=a))
        if is_zero(s_a, tol):
            violations.append(f"S_G({a}) vanishes")
        elif not scalars_equal(s_a * finite_factor(FactorKind.C, g, a), total, tol):
            violations.append(f"S_G({a}) C_G({a}) != S_G(1)")
    for p in g.listed_primes:
        recovered = 1 - divide(total, exact_sum(SeriesKind.S, g, SeriesParams(b=p)))
        if not scalars_equal(recovered, g.prime_power_value(p, 1), tol):
            violations.append(f"G({p}) differs from 1 - S_G(1) / S_G({p})")
    return SeparatingReport(total, tuple(violations))
