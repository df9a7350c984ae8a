"""Exact integer arithmetic over a smallest-prime-factor sieve.

The sieve is a numpy array of smallest prime factors. It is extended lazily,
by doubling, up to the configured bound; requests beyond the bound raise
``DomainError`` instead of falling back to slow trial division.
"""

import logging
import threading
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt, prod

import numpy as np
import numpy.typing as npt

from ramanujan_clouds.config import get_settings
from ramanujan_clouds.exceptions import DomainError, NotMultiplicativeError
from ramanujan_clouds.scalars import Scalar, normalize, scalars_equal

logger = logging.getLogger(__name__)

_INITIAL_SIEVE_SIZE = 1 << 16


def _smallest_prime_factors(limit: int) -> npt.NDArray[np.int64]:
    """Sieve of Eratosthenes recording the smallest prime factor of each n <= limit."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    unmarked = np.nonzero(spf == 0)[0]
    spf[unmarked] = unmarked
    return spf


class PrimeSieve:
    """Smallest-prime-factor table growing on demand up to ``bound``."""

    def __init__(self, bound: int) -> None:
        self.bound = bound
        self._lock = threading.Lock()
        self._spf = _smallest_prime_factors(min(bound, _INITIAL_SIEVE_SIZE))

    @property
    def size(self) -> int:
        """Largest integer currently covered by the table."""
        return len(self._spf) - 1

    def ensure(self, n: int) -> npt.NDArray[np.int64]:
        """Return a table covering ``n``, growing it when needed."""
        if n > self.bound:
            raise DomainError(f"{n} exceeds the sieve bound {self.bound}", condition="sieve_bound")
        spf = self._spf
        if n <= len(spf) - 1:
            return spf
        with self._lock:
            if n > len(self._spf) - 1:
                target = min(self.bound, max(n, 2 * (len(self._spf) - 1)))
                logger.debug("Growing sieve to %d", target)
                self._spf = _smallest_prime_factors(target)
            return self._spf

    def factor_pairs(self, n: int) -> tuple[tuple[int, int], ...]:
        """Prime-exponent pairs of ``n`` in increasing prime order."""
        if n < 1:
            raise DomainError(f"cannot factorize {n}", condition="positive_integer")
        spf = self.ensure(n)
        pairs: list[tuple[int, int]] = []
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            pairs.append((p, e))
        return tuple(pairs)

    def primes_up_to(self, n: int) -> npt.NDArray[np.int64]:
        """All primes ``p <= n`` as an array."""
        if n < 2:
            return np.zeros(0, dtype=np.int64)
        spf = self.ensure(n)
        idx = np.arange(2, n + 1, dtype=np.int64)
        return idx[spf[2 : n + 1] == idx]

    def squarefree_mask(self, n: int) -> npt.NDArray[np.bool_]:
        """Boolean array ``m`` of length ``n + 1`` with ``m[q]`` true iff q is square-free."""
        mask = np.ones(n + 1, dtype=bool)
        mask[0] = False
        for p in self.primes_up_to(isqrt(n)):
            mask[int(p) * int(p) :: int(p) * int(p)] = False
        return mask

    def mobius_array(self, n: int) -> npt.NDArray[np.int64]:
        """Array ``mu`` of length ``n + 1`` with ``mu[q]`` the Möbius function."""
        mu = np.ones(n + 1, dtype=np.int64)
        mu[0] = 0
        for p in self.primes_up_to(n):
            mu[int(p) :: int(p)] *= -1
        mu[~self.squarefree_mask(n)] = 0
        return mu


_sieve: PrimeSieve | None = None
_sieve_lock = threading.Lock()


def get_sieve() -> PrimeSieve:
    """Return the shared sieve for the active settings."""
    global _sieve  # noqa: PLW0603
    bound = get_settings().sieve_bound
    sieve = _sieve
    if sieve is None or sieve.bound != bound:
        with _sieve_lock:
            if _sieve is None or _sieve.bound != bound:
                _sieve = PrimeSieve(bound)
                _factorize_over.cache_clear()
            sieve = _sieve
    return sieve


@dataclass(frozen=True, slots=True)
class Factorization:
    """Canonical prime-exponent decomposition of a positive integer."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        """Distinct prime divisors in increasing order."""
        return tuple(p for p, _ in self.factors)

    @property
    def radical(self) -> int:
        """Product of the distinct prime divisors."""
        return prod(self.primes)

    @property
    def is_squarefree(self) -> bool:
        """Whether every exponent equals one."""
        return all(e == 1 for _, e in self.factors)

    def valuation(self, p: int) -> int:
        """Exponent of ``p`` in ``n``."""
        for q, e in self.factors:
            if q == p:
                return e
        return 0


@lru_cache(maxsize=1 << 16)
def _factorize_over(n: int, sieve: PrimeSieve) -> Factorization:
    return Factorization(n, sieve.factor_pairs(n))


def factorize(n: int) -> Factorization:
    """Factorize ``n`` over the sieve.

    Args:
        n: Positive integer not exceeding the sieve bound.

    Returns:
        The canonical factorization; ``1`` has no factors.

    Raises:
        DomainError: If ``n < 1`` or ``n`` exceeds the sieve bound.

    """
    return _factorize_over(n, get_sieve())


def is_prime(p: int) -> bool:
    """Primality test over the sieve."""
    if p < 2:
        return False
    return int(get_sieve().ensure(p)[p]) == p


def require_prime(p: int) -> None:
    """Raise ``DomainError`` unless ``p`` is prime."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime", condition="prime")


def primes_up_to(n: int) -> list[int]:
    """All primes ``p <= n`` in increasing order."""
    return [int(p) for p in get_sieve().primes_up_to(n)]


def mobius(n: int) -> int:
    """Möbius function."""
    fac = factorize(n)
    if not fac.is_squarefree:
        return 0
    return -1 if len(fac.factors) % 2 else 1


def euler_phi(n: int) -> int:
    """Euler's totient."""
    return prod((p - 1) * p ** (e - 1) for p, e in factorize(n))


def radical(n: int) -> int:
    """Product of the distinct primes dividing ``n``."""
    return factorize(n).radical


def p_adic_valuation(p: int, n: int) -> int:
    """Largest ``k`` with ``p**k`` dividing ``n``."""
    require_prime(p)
    if n < 1:
        raise DomainError(f"valuation of {n} is undefined", condition="positive_integer")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def divisors_from_pairs(pairs: Sequence[tuple[int, int]]) -> list[int]:
    """Sorted divisors of the integer with the given prime-exponent pairs."""
    divs = [1]
    for p, e in pairs:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def divisors(n: int) -> list[int]:
    """Sorted divisors of ``n``."""
    return divisors_from_pairs(factorize(n).factors)


def coprime(m: int, n: int) -> bool:
    """Whether ``gcd(m, n) == 1``."""
    return gcd(m, n) == 1


@dataclass(frozen=True, slots=True)
class TabulatedFunction:
    """An arithmetic function given by its values on ``1..a_max``.

    ``values[a - 1]`` holds the value at ``a``. Queries outside the domain are
    errors; there is no extrapolation.
    """

    values: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        if not self.values:
            raise DomainError("a tabulation needs at least the value at 1", condition="empty_tabulation")

    @property
    def a_max(self) -> int:
        """Largest argument in the domain."""
        return len(self.values)

    def __call__(self, a: int) -> Scalar:
        if not 1 <= a <= len(self.values):
            raise DomainError(f"{a} is outside the tabulated domain 1..{self.a_max}", condition="tabulation_domain")
        return self.values[a - 1]

    @classmethod
    def from_callable(cls, f: Callable[[int], Scalar], a_max: int) -> "TabulatedFunction":
        """Tabulate ``f`` on ``1..a_max``."""
        return cls(tuple(normalize(f(a)) for a in range(1, a_max + 1)))

    def truncate(self, a_max: int) -> "TabulatedFunction":
        """Restrict to ``1..a_max``."""
        return TabulatedFunction(self.values[: min(a_max, self.a_max)])


def dirichlet_convolve(f: TabulatedFunction, g: TabulatedFunction) -> TabulatedFunction:
    """Dirichlet product ``(f*g)(n) = sum_{d|n} f(d) g(n/d)`` on the common domain."""
    n_max = min(f.a_max, g.a_max)
    out: list[Scalar] = [0] * (n_max + 1)
    for d in range(1, n_max + 1):
        fd = f.values[d - 1]
        if fd == 0:
            continue
        for m in range(1, n_max // d + 1):
            out[d * m] += fd * g.values[m - 1]
    return TabulatedFunction(tuple(normalize(v) for v in out[1:]))


def mobius_table(n_max: int) -> TabulatedFunction:
    """Möbius function tabulated on ``1..n_max``."""
    return TabulatedFunction(tuple(int(v) for v in get_sieve().mobius_array(n_max)[1:]))


def eratosthenes_transform(f: TabulatedFunction) -> TabulatedFunction:
    """Eratosthenes transform ``f' = f * mu``."""
    return dirichlet_convolve(f, mobius_table(f.a_max))


def divisor_summatory(f: TabulatedFunction) -> TabulatedFunction:
    """Inverse of the Eratosthenes transform, ``f * 1``."""
    return dirichlet_convolve(f, TabulatedFunction((1,) * f.a_max))


def first_multiplicativity_violation(f: TabulatedFunction, tol: float) -> tuple[int, int] | None:
    """First coprime pair ``(m, n)`` on the domain with ``f(mn) != f(m) f(n)``.

    Multiplicativity is equivalent to ``f(1) = 1`` together with
    ``f(n) = prod f(p**e)`` over the factorization, which is what is scanned.
    """
    if not scalars_equal(f(1), 1, tol):
        return (1, 1)
    for n in range(2, f.a_max + 1):
        pairs = factorize(n).factors
        if len(pairs) < 2:  # noqa: PLR2004
            continue
        head = pairs[0][0] ** pairs[0][1]
        rest = n // head
        if not scalars_equal(f(n), f(head) * f(rest), tol):
            return (head, rest)
    return None


def require_multiplicative(f: TabulatedFunction, tol: float) -> None:
    """Raise ``NotMultiplicativeError`` on the first violation."""
    pair = first_multiplicativity_violation(f, tol)
    if pair is None:
        return
    if pair == (1, 1):
        raise NotMultiplicativeError(f"F(1) = {f(1)} instead of 1")
    raise NotMultiplicativeError(f"F({pair[0] * pair[1]}) != F({pair[0]}) F({pair[1]})")
