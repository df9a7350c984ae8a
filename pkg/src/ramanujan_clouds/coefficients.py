"""Multiplicative coefficients G given by per-prime tables.

A ``CoefficientSpec`` lists G(p), ..., G(p^K) for finitely many primes, closes
each table with a tail rule and covers every other prime with a default rule.
The completely multiplicative index w and the transparency index v are read
off the rules symbolically, so classification never samples a prefix.
"""

import logging
import math
import random
from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction
from math import prod
from types import MappingProxyType

from ramanujan_clouds.arith import divisors, factorize, is_prime, mobius, radical, require_prime
from ramanujan_clouds.config import get_settings
from ramanujan_clouds.exceptions import ClassificationError, DomainError
from ramanujan_clouds.ramanujan import ramanujan_sum
from ramanujan_clouds.scalars import Scalar, all_exact, is_exact, normalize, scalars_equal

logger = logging.getLogger(__name__)

INFINITY = math.inf
Index = int | float


@dataclass(frozen=True, slots=True)
class ZeroTail:
    """G(p^k) = 0 beyond the table."""


@dataclass(frozen=True, slots=True)
class GeometricTail:
    """G(p^k) = G(p^K) * ratio^(k - K) beyond the table."""

    ratio: Scalar


@dataclass(frozen=True, slots=True)
class OneTail:
    """G(p^k) = 1 beyond the table."""


TailRule = ZeroTail | GeometricTail | OneTail


@dataclass(frozen=True, slots=True)
class ZeroOnPrimes:
    """G(p^k) = 0 for every unlisted prime and k >= 1."""


@dataclass(frozen=True, slots=True)
class PowerLaw:
    """G(p^k) = p^(-ks), negated when ``negate`` is set."""

    s: Scalar
    negate: bool = False


@dataclass(frozen=True, slots=True)
class FlatPowerLaw:
    """G(p^k) = p^(-s) for every k >= 1, negated when ``negate`` is set."""

    s: Scalar
    negate: bool = False


@dataclass(frozen=True, slots=True)
class OneEverywhere:
    """G(p^k) = 1 for every unlisted prime."""


DefaultRule = ZeroOnPrimes | PowerLaw | FlatPowerLaw | OneEverywhere


def _prime_power_of_exponent(p: int, exponent: Scalar) -> Scalar:
    """``p ** -exponent``, exact for non-negative integral exponents."""
    if is_exact(exponent) and Fraction(exponent).denominator == 1 and exponent >= 0:
        return Fraction(1, p ** int(exponent))
    return complex(p) ** (-complex(exponent))


def _default_value(rule: DefaultRule, p: int, k: int) -> Scalar:
    match rule:
        case ZeroOnPrimes():
            return 0
        case OneEverywhere():
            return 1
        case PowerLaw(s=s, negate=negate):
            value = _prime_power_of_exponent(p, s * k)
            return normalize(-value if negate else value)
        case FlatPowerLaw(s=s, negate=negate):
            value = _prime_power_of_exponent(p, s)
            return normalize(-value if negate else value)


@dataclass(frozen=True, slots=True)
class PrimeEntry:
    """Table G(p), ..., G(p^K) and the rule for higher powers."""

    values: tuple[Scalar, ...]
    tail: TailRule = field(default_factory=ZeroTail)

    def __post_init__(self) -> None:
        if not self.values:
            raise DomainError("a prime entry needs at least G(p)", condition="empty_table")


@dataclass(frozen=True)
class CoefficientSpec:
    """A multiplicative coefficient; immutable after construction."""

    prime_entries: Mapping[int, PrimeEntry] = field(default_factory=dict)
    default: DefaultRule = field(default_factory=ZeroOnPrimes)
    _cache: dict[int, Scalar] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        for p in self.prime_entries:
            if not is_prime(p):
                raise DomainError(f"table key {p} is not prime", condition="prime")
        if isinstance(self.default, PowerLaw | FlatPowerLaw) and complex(self.default.s).real <= 0:
            raise ClassificationError(
                f"power-law default needs Re s > 0, got {self.default.s}; unlisted primes would be bad",
            )
        object.__setattr__(self, "prime_entries", MappingProxyType(dict(sorted(self.prime_entries.items()))))

    @property
    def listed_primes(self) -> tuple[int, ...]:
        """Primes with an explicit table."""
        return tuple(self.prime_entries)

    @property
    def is_exact(self) -> bool:
        """Whether every table value, tail ratio and default parameter is exact."""
        scalars: list[Scalar] = []
        for entry in self.prime_entries.values():
            scalars.extend(entry.values)
            if isinstance(entry.tail, GeometricTail):
                scalars.append(entry.tail.ratio)
        if isinstance(self.default, PowerLaw | FlatPowerLaw):
            scalars.append(self.default.s)
        return all_exact(*scalars)

    def prime_power_value(self, p: int, k: int) -> Scalar:
        """G(p^k) from the table, its tail or the default rule."""
        if k == 0:
            return 1
        entry = self.prime_entries.get(p)
        if entry is None:
            return _default_value(self.default, p, k)
        size = len(entry.values)
        if k <= size:
            return entry.values[k - 1]
        match entry.tail:
            case ZeroTail():
                return 0
            case OneTail():
                return 1
            case GeometricTail(ratio=ratio):
                return normalize(entry.values[-1] * ratio ** (k - size))

    def value_at(self, n: int) -> Scalar:
        """G(n) by multiplicativity over the factorization of ``n``."""
        cached = self._cache.get(n)
        if cached is not None:
            return cached
        value = value_from_pairs(self, factorize(n).factors)
        self._cache[n] = value
        return value


def value_from_pairs(g: CoefficientSpec, pairs: tuple[tuple[int, int], ...] | list[tuple[int, int]]) -> Scalar:
    """G of the integer with the given prime-exponent pairs."""
    value: Scalar = 1
    for p, e in pairs:
        value = value * g.prime_power_value(p, e)
        if value == 0:
            return 0
    return normalize(value)


def value_at(g: CoefficientSpec, n: int) -> Scalar:
    """Multiplicative extension of G to ``n``."""
    return g.value_at(n)


def coefficient_tolerance(g: CoefficientSpec) -> float:
    """Tolerance for equality tests involving ``g``; zero when every input is exact."""
    return 0.0 if g.is_exact else get_settings().tolerances.coefficient


def _eq(x: Scalar, y: Scalar, tol: float) -> bool:
    return scalars_equal(x, y, tol)


def cm_index(g: CoefficientSpec, p: int) -> Index:
    """Completely multiplicative index w_{p,G}.

    The largest w with G(p^k) = G(p)^k for every k <= w, infinite when no
    power breaks the identity.
    """
    require_prime(p)
    tol = coefficient_tolerance(g)
    base = g.prime_power_value(p, 1)
    entry = g.prime_entries.get(p)
    if entry is None:
        match g.default:
            case PowerLaw(negate=True) | FlatPowerLaw():
                return 1
            case _:
                return INFINITY
    size = len(entry.values)
    for k in range(2, size + 1):
        if not _eq(entry.values[k - 1], base**k, tol):
            return k - 1
    if _eq(base, 0, tol):
        # Table is all zero; every tail rule except OneTail keeps it at zero.
        return size if isinstance(entry.tail, OneTail) else INFINITY
    match entry.tail:
        case ZeroTail():
            return size
        case OneTail():
            if _eq(base, 1, tol):
                return INFINITY
            return size + 1 if _eq(base ** (size + 1), 1, tol) else size
        case GeometricTail(ratio=ratio):
            return INFINITY if _eq(ratio, base, tol) else size


def transparency_index(g: CoefficientSpec, p: int) -> Index:
    """Transparency index v_{p,G}: the least K >= 0 with G(p^(K+1)) != 1."""
    require_prime(p)
    tol = coefficient_tolerance(g)
    entry = g.prime_entries.get(p)
    if entry is None:
        return INFINITY if isinstance(g.default, OneEverywhere) else 0
    for k, value in enumerate(entry.values, start=1):
        if not _eq(value, 1, tol):
            return k - 1
    size = len(entry.values)
    match entry.tail:
        case ZeroTail():
            return size
        case OneTail():
            return INFINITY
        case GeometricTail(ratio=ratio):
            return INFINITY if _eq(ratio, 1, tol) else size


class PrimeClass(StrEnum):
    """Partition of primes by badness, transparency and finiteness of w."""

    NOT_BAD = "not_bad"
    SIMPLY_BAD_OPAQUE = "simply_bad_opaque"
    HYPERBAD_OPAQUE = "hyperbad_opaque"
    SIMPLY_TRANSPARENT = "simply_transparent"
    HYPERTRANSPARENT = "hypertransparent"


@dataclass(frozen=True, slots=True)
class PrimeClassification:
    """Classification of one prime for one coefficient."""

    p: int
    value: Scalar
    w: Index
    v: Index
    prime_class: PrimeClass
    exact: bool

    @property
    def is_bad(self) -> bool:
        """1 <= |G(p)| <= p."""
        return self.prime_class is not PrimeClass.NOT_BAD

    @property
    def is_transparent(self) -> bool:
        """G(p) = 1."""
        return self.prime_class in (PrimeClass.SIMPLY_TRANSPARENT, PrimeClass.HYPERTRANSPARENT)

    @property
    def is_simply_bad(self) -> bool:
        """Bad with a finite completely multiplicative index."""
        return self.prime_class in (PrimeClass.SIMPLY_BAD_OPAQUE, PrimeClass.SIMPLY_TRANSPARENT)

    @property
    def is_hyperbad(self) -> bool:
        """Bad with an infinite completely multiplicative index."""
        return self.prime_class in (PrimeClass.HYPERBAD_OPAQUE, PrimeClass.HYPERTRANSPARENT)


def _is_bad_value(value: Scalar, p: int, tol: float) -> bool:
    if is_exact(value):
        return 1 <= abs(value) <= p
    size = abs(value)
    return 1 - tol <= size <= p + tol


def classify_prime(g: CoefficientSpec, p: int) -> PrimeClassification:
    """Classify ``p`` as not bad, simply or hyper bad, simply or hyper transparent."""
    tol = coefficient_tolerance(g)
    value = g.prime_power_value(p, 1)
    w = cm_index(g, p)
    v = transparency_index(g, p)
    if not _is_bad_value(value, p, tol):
        prime_class = PrimeClass.NOT_BAD
    elif _eq(value, 1, tol):
        prime_class = PrimeClass.HYPERTRANSPARENT if w == INFINITY else PrimeClass.SIMPLY_TRANSPARENT
    else:
        prime_class = PrimeClass.HYPERBAD_OPAQUE if w == INFINITY else PrimeClass.SIMPLY_BAD_OPAQUE
    return PrimeClassification(p, value, w, v, prime_class, exact=tol == 0.0)


@dataclass(frozen=True, slots=True)
class Conductors:
    """Ramanujan conductor N(G), transparency conductor N_T(G) and the listed classifications."""

    n: int
    n_t: int
    classifications: tuple[PrimeClassification, ...]
    default_hypertransparent: bool

    @property
    def bad_primes(self) -> tuple[PrimeClassification, ...]:
        """Listed bad primes."""
        return tuple(c for c in self.classifications if c.is_bad)

    @property
    def transparent_primes(self) -> tuple[PrimeClassification, ...]:
        """Listed transparent primes."""
        return tuple(c for c in self.classifications if c.is_transparent)

    @property
    def hyperbad_primes(self) -> tuple[int, ...]:
        """Listed primes with infinite w among the bad ones."""
        return tuple(c.p for c in self.classifications if c.is_hyperbad)


def conductors(g: CoefficientSpec) -> Conductors:
    """Compute N(G) and N_T(G) over the listed primes.

    Default rules never create simply bad primes: ZeroOnPrimes and power laws
    keep |G(p)| < 1 and OneEverywhere makes every unlisted prime hypertransparent.
    """
    classifications = tuple(classify_prime(g, p) for p in g.listed_primes)
    n = prod(int(c.p ** int(c.w)) for c in classifications if c.is_simply_bad)
    n_t = prod(int(c.p ** int(c.v)) for c in classifications if c.prime_class is PrimeClass.SIMPLY_TRANSPARENT)
    logger.debug("Conductors N=%d N_T=%d", n, n_t)
    return Conductors(n, n_t, classifications, default_hypertransparent=isinstance(g.default, OneEverywhere))


class FactorKind(StrEnum):
    """Finite factors attached to a coefficient."""

    E = "E"
    U = "U"
    C = "C"
    D = "D"


def euler_factor(g: CoefficientSpec, p: int, a: int) -> Scalar:
    """The p-Euler factor: sum over K <= v_p(a) of p^K (G(p^K) - G(p^(K+1)))."""
    v = factorize(a).valuation(p)
    return normalize(
        sum((p**k * (g.prime_power_value(p, k) - g.prime_power_value(p, k + 1)) for k in range(v + 1)), start=0)
    )


def finite_factor(kind: FactorKind | str, g: CoefficientSpec, a: int) -> Scalar:
    """Product forms of E_G, U_G, C_G and the divisor sum D_G at ``a``."""
    if a < 1:
        raise DomainError(f"finite factors need a positive argument, got {a}", condition="positive_integer")
    pairs = factorize(a).factors
    value: Scalar = 1
    match FactorKind(kind):
        case FactorKind.E:
            for p, _ in pairs:
                value *= euler_factor(g, p, a)
        case FactorKind.U:
            for p, e in pairs:
                value *= g.prime_power_value(p, e) - g.prime_power_value(p, e + 1)
        case FactorKind.C:
            for p, _ in pairs:
                value *= 1 - g.prime_power_value(p, 1)
        case FactorKind.D:
            for p, e in pairs:
                value *= sum((g.prime_power_value(p, k) * p**k for k in range(e + 1)), start=0)
    return normalize(value)


def finite_factor_divisor_sum(kind: FactorKind | str, g: CoefficientSpec, a: int) -> Scalar:
    """Divisor-sum forms of the finite factors, for cross-checking ``finite_factor``."""
    value: Scalar = 0
    match FactorKind(kind):
        case FactorKind.E:
            for d in divisors(a * radical(a)):
                value += g.value_at(d) * ramanujan_sum(d, a)
        case FactorKind.U:
            for d in divisors(a):
                value += mobius(d) * g.value_at(d * a)
        case FactorKind.C:
            for d in divisors(a):
                value += g.value_at(d) * mobius(d)
        case FactorKind.D:
            for d in divisors(a):
                value += g.value_at(d) * d
    return normalize(value)


def euler_factor_forms(g: CoefficientSpec, p: int, a: int) -> tuple[Scalar, Scalar, Scalar]:
    """Three expressions of E_{p,G}(a) that must agree.

    Returns the series of G(p^K) c_{p^K}(a) run past the vertical limit, the
    same series cut at K = v_p(a) + 1, and the telescoped sum over K <= v_p(a).
    """
    v = factorize(a).valuation(p)
    terms = [g.prime_power_value(p, k) * ramanujan_sum(p**k, a) for k in range(v + 4)]
    return normalize(sum(terms, start=0)), normalize(sum(terms[: v + 2], start=0)), euler_factor(g, p, a)


def ramanujan_factorization(g: CoefficientSpec, a: int) -> tuple[int, int, int]:
    """Split ``a = h * t * a_tilde``.

    ``h`` collects the primes with infinite w among bad primes, ``t`` the
    simply transparent primes, ``a_tilde`` everything else.
    """
    h = t = 1
    for p, e in factorize(a).factors:
        c = classify_prime(g, p)
        if c.is_hyperbad:
            h *= p**e
        elif c.prime_class is PrimeClass.SIMPLY_TRANSPARENT:
            t *= p**e
    return h, t, a // (h * t)


def random_finite_spec(
    rng: random.Random,
    *,
    exact: bool = True,
    primes: tuple[int, ...] = (2, 3, 5, 7),
    max_exponent: int = 3,
) -> CoefficientSpec:
    """Seeded random coefficient with a ZeroOnPrimes default.

    Prime 2 is always listed. Values are nonzero; about a fifth of the
    entries are completely multiplicative with a geometric tail and about
    a tenth start with a run of ones closed by a zero tail.
    """

    def draw() -> Scalar:
        if exact:
            numerator = rng.choice([n for n in range(-4, 5) if n])
            return normalize(Fraction(numerator, rng.randint(1, 3)))
        return complex(rng.uniform(-2.0, 2.0), rng.uniform(-1.0, 1.0))

    entries: dict[int, PrimeEntry] = {}
    for p in primes:
        if p != 2 and rng.random() < 0.3:  # noqa: PLR2004
            continue
        size = rng.randint(1, max_exponent)
        roll = rng.random()
        if roll < 0.2:  # noqa: PLR2004
            base = draw()
            entries[p] = PrimeEntry(tuple(normalize(base**k) for k in range(1, size + 1)), GeometricTail(base))
        elif roll < 0.3:  # noqa: PLR2004
            ones = rng.randint(1, max_exponent)
            entries[p] = PrimeEntry((1,) * ones + (draw(),), ZeroTail())
        else:
            entries[p] = PrimeEntry(tuple(draw() for _ in range(size)), ZeroTail())
    return CoefficientSpec(entries, ZeroOnPrimes())


def spec_values_equal(left: CoefficientSpec, right: CoefficientSpec, primes: list[int], max_exponent: int) -> bool:
    """Compare two coefficients on p^k for the given primes and k <= max_exponent."""
    tol = 0.0 if left.is_exact and right.is_exact else get_settings().tolerances.cloud
    return all(
        scalars_equal(left.prime_power_value(p, k), right.prime_power_value(p, k), tol)
        for p in primes
        for k in range(1, max_exponent + 1)
    )

