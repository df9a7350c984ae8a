"""Tests for the sieve, factorization and tabulated functions."""

from fractions import Fraction
from math import gcd, prod

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ramanujan_clouds.arith import (
    PrimeSieve,
    TabulatedFunction,
    coprime,
    dirichlet_convolve,
    divisor_summatory,
    divisors,
    eratosthenes_transform,
    euler_phi,
    factorize,
    first_multiplicativity_violation,
    is_prime,
    mobius,
    mobius_table,
    p_adic_valuation,
    primes_up_to,
    radical,
    require_multiplicative,
)
from ramanujan_clouds.config import Settings, configure
from ramanujan_clouds.exceptions import DomainError, NotMultiplicativeError


class TestPrimeSieve:
    """Tests for the lazily growing smallest-prime-factor table."""

    def test_initial_size_is_capped_by_bound(self) -> None:
        """A bound below the initial size builds the whole table at once."""
        sieve = PrimeSieve(100)
        assert sieve.size == 100

    def test_grows_by_doubling(self) -> None:
        """Growth targets at least twice the current size."""
        sieve = PrimeSieve(10**6)
        assert sieve.size == 65536
        sieve.ensure(100_000)
        assert sieve.size == 131_072

    def test_growth_stops_at_bound(self) -> None:
        """The table never exceeds the bound."""
        sieve = PrimeSieve(70_000)
        sieve.ensure(69_999)
        assert sieve.size == 70_000

    def test_beyond_bound_raises(self) -> None:
        """Requests past the bound are domain errors naming the condition."""
        sieve = PrimeSieve(100)
        with pytest.raises(DomainError) as excinfo:
            sieve.factor_pairs(101)
        assert excinfo.value.condition == "sieve_bound"

    def test_factor_pairs(self) -> None:
        """Pairs come in increasing prime order."""
        sieve = PrimeSieve(1000)
        assert sieve.factor_pairs(1) == ()
        assert sieve.factor_pairs(360) == ((2, 3), (3, 2), (5, 1))
        assert sieve.factor_pairs(997) == ((997, 1),)

    def test_nonpositive_argument(self) -> None:
        """Zero has no factorization."""
        with pytest.raises(DomainError):
            PrimeSieve(100).factor_pairs(0)

    def test_primes_up_to(self) -> None:
        """The prime list below 30 and the empty list below 2."""
        sieve = PrimeSieve(100)
        assert sieve.primes_up_to(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
        assert sieve.primes_up_to(1).tolist() == []

    def test_squarefree_mask(self) -> None:
        """Seven of the first ten integers are square-free."""
        mask = PrimeSieve(100).squarefree_mask(10)
        assert int(mask.sum()) == 7
        assert not mask[4]
        assert not mask[8]
        assert not mask[9]

    def test_mobius_array_matches_pointwise(self) -> None:
        """The vectorised Möbius function agrees with the factorization-based one."""
        mu = PrimeSieve(1000).mobius_array(500)
        assert mu[0] == 0
        assert all(int(mu[n]) == mobius(n) for n in range(1, 501))

    def test_smallest_prime_factors(self) -> None:
        """Each entry is the least divisor above one."""
        spf = PrimeSieve(1000).ensure(1000)
        assert all(int(spf[n]) == next(d for d in range(2, n + 1) if n % d == 0) for n in range(2, 1001))

    @pytest.mark.usefixtures("small_sieve")
    def test_settings_bound_applies(self) -> None:
        """The shared sieve follows the configured bound."""
        assert is_prime(97)
        with pytest.raises(DomainError):
            is_prime(101)


class TestFactorization:
    """Tests for factorize and the derived functions."""

    @given(st.integers(min_value=1, max_value=100_000))
    def test_factorization_reconstructs(self, n: int) -> None:
        """The product over the factorization is n."""
        fac = factorize(n)
        assert prod(p**e for p, e in fac) == n
        assert all(is_prime(p) for p in fac.primes)

    @pytest.mark.usefixtures("default_settings")
    def test_lowered_bound_applies_to_earlier_results(self) -> None:
        """A factorization made under a larger bound is refused once the bound drops below n."""
        assert factorize(1009).primes == (1009,)
        configure(Settings(sieve_bound=100))
        with pytest.raises(DomainError) as excinfo:
            factorize(1009)
        assert excinfo.value.condition == "sieve_bound"

    def test_properties(self) -> None:
        """Radical, square-freeness and valuation of 360."""
        fac = factorize(360)
        assert fac.primes == (2, 3, 5)
        assert fac.radical == 30
        assert not fac.is_squarefree
        assert fac.valuation(2) == 3
        assert fac.valuation(7) == 0

    def test_mobius(self) -> None:
        """Möbius at 1, primes, products of two primes and non-square-free numbers."""
        assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]

    def test_euler_phi(self) -> None:
        """Totients of small numbers."""
        assert [euler_phi(n) for n in (1, 2, 9, 10, 36)] == [1, 1, 6, 4, 12]

    def test_radical_and_valuation(self) -> None:
        """rad(72) = 6 and v_2(72) = 3."""
        assert radical(72) == 6
        assert p_adic_valuation(2, 72) == 3
        assert p_adic_valuation(5, 72) == 0

    def test_valuation_needs_prime(self) -> None:
        """Valuations at composite numbers are rejected."""
        with pytest.raises(DomainError):
            p_adic_valuation(4, 16)

    def test_divisors(self) -> None:
        """Divisors come sorted."""
        assert divisors(12) == [1, 2, 3, 4, 6, 12]
        assert divisors(1) == [1]

    @given(st.integers(min_value=1, max_value=5000), st.integers(min_value=1, max_value=5000))
    def test_coprime(self, m: int, n: int) -> None:
        """coprime agrees with gcd."""
        assert coprime(m, n) == (gcd(m, n) == 1)

    def test_primes_up_to(self) -> None:
        """There are 25 primes below 100."""
        assert len(primes_up_to(100)) == 25


class TestTabulatedFunction:
    """Tests for tabulated arithmetic functions and Dirichlet products."""

    def test_domain_is_enforced(self) -> None:
        """Queries outside 1..a_max raise."""
        f = TabulatedFunction((1, 2, 3))
        assert f(3) == 3
        with pytest.raises(DomainError):
            f(4)
        with pytest.raises(DomainError):
            f(0)

    def test_empty_tabulation(self) -> None:
        """A tabulation must contain F(1)."""
        with pytest.raises(DomainError):
            TabulatedFunction(())

    def test_identity_times_mobius_is_phi(self) -> None:
        """Id * mu = phi."""
        ident = TabulatedFunction.from_callable(lambda a: a, 200)
        assert dirichlet_convolve(ident, mobius_table(200)).values == tuple(euler_phi(n) for n in range(1, 201))

    def test_eratosthenes_inverse(self) -> None:
        """Summing the Eratosthenes transform over divisors gives the function back."""
        f = TabulatedFunction.from_callable(lambda a: Fraction(a * a + 1, a + 2), 120)
        assert divisor_summatory(eratosthenes_transform(f)).values == f.values

    def test_truncate(self) -> None:
        """Truncation keeps the prefix and never extends."""
        f = TabulatedFunction((1, 2, 3, 4))
        assert f.truncate(2).values == (1, 2)
        assert f.truncate(10).values == f.values

    def test_from_callable_normalizes(self) -> None:
        """Integral fractions become ints and floats become complex values."""
        f = TabulatedFunction.from_callable(lambda a: Fraction(2 * a, 2) if a % 2 else float(a), 4)
        assert f.values == (1, 2 + 0j, 3, 4 + 0j)
        assert isinstance(f(1), int)


class TestMultiplicativity:
    """Tests for the multiplicativity scan."""

    def test_multiplicative_function_passes(self) -> None:
        """phi is multiplicative."""
        phi = TabulatedFunction.from_callable(euler_phi, 300)
        assert first_multiplicativity_violation(phi, 0.0) is None
        require_multiplicative(phi, 0.0)

    def test_violation_pair(self) -> None:
        """Changing F(6) breaks multiplicativity at the pair (2, 3)."""
        values = [1, 2, 3, 4, 5, 5, 7, 8]
        assert first_multiplicativity_violation(TabulatedFunction(tuple(values)), 0.0) == (2, 3)

    def test_value_at_one(self) -> None:
        """F(1) != 1 is reported as the pair (1, 1)."""
        f = TabulatedFunction((2, 2, 3))
        assert first_multiplicativity_violation(f, 0.0) == (1, 1)
        with pytest.raises(NotMultiplicativeError):
            require_multiplicative(f, 0.0)

    def test_float_tolerance(self) -> None:
        """Floating values are compared within the tolerance."""
        values = tuple(complex(n) + 1e-14 for n in range(1, 31))
        f = TabulatedFunction((1, *values[1:]))
        assert first_multiplicativity_violation(f, 1e-9) is None

    def test_mobius_table_is_integer(self) -> None:
        """The tabulated Möbius function holds Python ints."""
        table = mobius_table(30)
        assert all(isinstance(v, int) for v in table.values)
        assert np.array_equal(np.array(table.values), np.array([mobius(n) for n in range(1, 31)]))
