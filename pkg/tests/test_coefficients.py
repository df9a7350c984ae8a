"""Tests for coefficient specs, prime classification and finite factors."""

import random
from fractions import Fraction

import pytest

from ramanujan_clouds.coefficients import (
    INFINITY,
    CoefficientSpec,
    FactorKind,
    FlatPowerLaw,
    GeometricTail,
    OneEverywhere,
    OneTail,
    PowerLaw,
    PrimeClass,
    PrimeEntry,
    ZeroOnPrimes,
    ZeroTail,
    classify_prime,
    cm_index,
    conductors,
    euler_factor_forms,
    finite_factor,
    finite_factor_divisor_sum,
    random_finite_spec,
    ramanujan_factorization,
    spec_values_equal,
    transparency_index,
)
from ramanujan_clouds.exceptions import ClassificationError, DomainError


class TestCoefficientSpec:
    """Tests for evaluation of coefficients."""

    def test_value_at_one(self, simply_bad_spec: CoefficientSpec) -> None:
        """G(1) = 1 for any coefficient."""
        assert simply_bad_spec.value_at(1) == 1

    def test_zero_tail(self, simply_bad_spec: CoefficientSpec) -> None:
        """Values past the table follow the zero tail."""
        assert simply_bad_spec.value_at(9) == 4
        assert simply_bad_spec.value_at(27) == 0

    def test_geometric_and_one_tails(self) -> None:
        """Geometric and one tails continue the last table value."""
        g = CoefficientSpec(
            {2: PrimeEntry((Fraction(1, 2),), GeometricTail(Fraction(1, 3))), 3: PrimeEntry((5,), OneTail())},
        )
        assert g.prime_power_value(2, 3) == Fraction(1, 18)
        assert g.prime_power_value(3, 4) == 1

    def test_multiplicative_extension(self, mixed_spec: CoefficientSpec) -> None:
        """G(n) is the product over prime powers."""
        assert mixed_spec.value_at(2 * 3 * 5) == Fraction(-1, 2) * 1 * Fraction(1, 4)
        assert mixed_spec.value_at(7) == 0

    def test_power_law_default(self) -> None:
        """Integral exponents stay exact."""
        g = CoefficientSpec({}, PowerLaw(2))
        assert g.prime_power_value(3, 2) == Fraction(1, 81)
        assert CoefficientSpec({}, PowerLaw(2, negate=True)).prime_power_value(3, 1) == Fraction(-1, 9)
        assert CoefficientSpec({}, FlatPowerLaw(1)).prime_power_value(5, 3) == Fraction(1, 5)

    def test_complex_power_law(self) -> None:
        """Non-integral exponents evaluate in floating point."""
        value = CoefficientSpec({}, PowerLaw(0.5)).prime_power_value(3, 1)
        assert isinstance(value, complex)
        assert abs(value - 3**-0.5) < 1e-12

    def test_rejects_composite_keys(self) -> None:
        """Table keys must be prime."""
        with pytest.raises(DomainError):
            CoefficientSpec({4: PrimeEntry((1,))})

    def test_rejects_bad_power_law(self) -> None:
        """A power law with Re s <= 0 would make every prime bad."""
        with pytest.raises(ClassificationError):
            CoefficientSpec({}, PowerLaw(0))

    def test_empty_entry(self) -> None:
        """Entries need G(p)."""
        with pytest.raises(DomainError):
            PrimeEntry(())

    def test_is_exact(self, mixed_spec: CoefficientSpec) -> None:
        """Exactness follows every scalar of the coefficient."""
        assert mixed_spec.is_exact
        assert not CoefficientSpec({2: PrimeEntry((0.5,))}).is_exact
        assert not CoefficientSpec({}, PowerLaw(0.6)).is_exact


class TestIndices:
    """Tests for the completely multiplicative and transparency indices."""

    def test_cm_index_table(self, simply_bad_spec: CoefficientSpec) -> None:
        """4 = 2^2 but 0 != 2^3."""
        assert cm_index(simply_bad_spec, 3) == 2

    def test_cm_index_one_tail(self, null_cloud_spec: CoefficientSpec) -> None:
        """1^k = 1 for every k."""
        assert cm_index(null_cloud_spec, 2) == INFINITY

    def test_cm_index_zero_table(self) -> None:
        """0^k = 0 = G(p^k)."""
        g = CoefficientSpec({7: PrimeEntry((0, 0), ZeroTail())})
        assert cm_index(g, 7) == INFINITY

    def test_cm_index_geometric(self) -> None:
        """A geometric tail with ratio G(p) never breaks the identity."""
        g = CoefficientSpec({2: PrimeEntry((3, 9), GeometricTail(3)), 3: PrimeEntry((3, 9), GeometricTail(2))})
        assert cm_index(g, 2) == INFINITY
        assert cm_index(g, 3) == 2

    def test_cm_index_defaults(self) -> None:
        """Defaults decide the index of unlisted primes."""
        assert cm_index(CoefficientSpec({}, ZeroOnPrimes()), 11) == INFINITY
        assert cm_index(CoefficientSpec({}, PowerLaw(2)), 11) == INFINITY
        assert cm_index(CoefficientSpec({}, PowerLaw(2, negate=True)), 11) == 1
        assert cm_index(CoefficientSpec({}, FlatPowerLaw(2)), 11) == 1
        assert cm_index(CoefficientSpec({}, OneEverywhere()), 11) == INFINITY

    def test_transparency_index(self, transparent_spec: CoefficientSpec, simply_bad_spec: CoefficientSpec) -> None:
        """First power where G differs from one."""
        assert transparency_index(transparent_spec, 5) == 2
        assert transparency_index(simply_bad_spec, 3) == 0
        assert transparency_index(CoefficientSpec({}, OneEverywhere()), 13) == INFINITY
        assert transparency_index(CoefficientSpec({5: PrimeEntry((1, 1), OneTail())}), 5) == INFINITY


class TestClassification:
    """Tests for prime classes and conductors."""

    def test_simply_bad(self, simply_bad_spec: CoefficientSpec) -> None:
        """G(3) = 2 is bad with w = 2."""
        c = classify_prime(simply_bad_spec, 3)
        assert c.prime_class is PrimeClass.SIMPLY_BAD_OPAQUE
        assert c.is_bad
        assert c.is_simply_bad
        assert not c.is_transparent
        cond = conductors(simply_bad_spec)
        assert (cond.n, cond.n_t) == (9, 1)

    def test_simply_transparent(self, transparent_spec: CoefficientSpec) -> None:
        """G(5) = G(25) = 1, G(125) = 3 contributes 25 to both conductors."""
        c = classify_prime(transparent_spec, 5)
        assert c.prime_class is PrimeClass.SIMPLY_TRANSPARENT
        assert (c.w, c.v) == (2, 2)
        cond = conductors(transparent_spec)
        assert (cond.n, cond.n_t) == (25, 25)

    def test_hypertransparent(self, null_cloud_spec: CoefficientSpec) -> None:
        """G(2^k) = 1 for all k is hypertransparent and leaves the conductors at one."""
        c = classify_prime(null_cloud_spec, 2)
        assert c.prime_class is PrimeClass.HYPERTRANSPARENT
        assert c.is_hyperbad
        assert conductors(null_cloud_spec).n == 1
        assert conductors(null_cloud_spec).hyperbad_primes == (2,)

    def test_hyperbad_opaque_and_not_bad(self) -> None:
        """A completely multiplicative bad prime and a prime with |G(p)| > p."""
        g = CoefficientSpec({2: PrimeEntry((-2,), GeometricTail(-2)), 3: PrimeEntry((7,), ZeroTail())})
        assert classify_prime(g, 2).prime_class is PrimeClass.HYPERBAD_OPAQUE
        assert classify_prime(g, 3).prime_class is PrimeClass.NOT_BAD
        assert conductors(g).n == 1

    def test_empty_spec(self) -> None:
        """No listed primes: both conductors are empty products."""
        cond = conductors(CoefficientSpec({}, ZeroOnPrimes()))
        assert (cond.n, cond.n_t) == (1, 1)
        assert cond.classifications == ()

    def test_one_everywhere_flag(self) -> None:
        """The OneEverywhere default is reported as hypertransparent."""
        assert conductors(CoefficientSpec({}, OneEverywhere())).default_hypertransparent

    def test_float_classification(self) -> None:
        """Floating values within tolerance of one are transparent."""
        g = CoefficientSpec({3: PrimeEntry((1 + 1e-15 + 0j, 0.5 + 0j), ZeroTail())})
        c = classify_prime(g, 3)
        assert c.prime_class is PrimeClass.SIMPLY_TRANSPARENT
        assert not c.exact


class TestFiniteFactors:
    """Tests for the E, U, C and D factors."""

    def test_euler_factor_telescoping_hypertransparent(self, null_cloud_spec: CoefficientSpec) -> None:
        """E vanishes at a hypertransparent prime dividing a."""
        assert finite_factor(FactorKind.E, null_cloud_spec, 4) == 0

    def test_euler_factor_two_terms(self) -> None:
        """1 + (p - 1) g for v_p(a) = 1 and a zero tail past G(p)."""
        g = CoefficientSpec({3: PrimeEntry((Fraction(1, 5),), ZeroTail())})
        assert finite_factor(FactorKind.E, g, 3) == 1 + 2 * Fraction(1, 5)

    def test_coprime_factor(self, mixed_spec: CoefficientSpec) -> None:
        """C(6) = (1 - G(2))(1 - G(3)) vanishes with G(3) = 1; C(10) does not."""
        assert finite_factor(FactorKind.C, mixed_spec, 6) == 0
        assert finite_factor(FactorKind.C, mixed_spec, 10) == Fraction(3, 2) * Fraction(3, 4)

    def test_divisor_factor(self) -> None:
        """D(6) = 1 + 2 g2 + 3 g3 + 6 g2 g3 for completely multiplicative G."""
        g2, g3 = Fraction(1, 3), Fraction(-1, 7)
        g = CoefficientSpec({2: PrimeEntry((g2,), GeometricTail(g2)), 3: PrimeEntry((g3,), GeometricTail(g3))})
        assert finite_factor(FactorKind.D, g, 6) == 1 + 2 * g2 + 3 * g3 + 6 * g2 * g3

    def test_rejects_nonpositive(self, mixed_spec: CoefficientSpec) -> None:
        """Finite factors need a positive argument."""
        with pytest.raises(DomainError):
            finite_factor("E", mixed_spec, 0)

    def test_product_and_divisor_forms_agree(self) -> None:
        """Product and divisor-sum forms agree on random exact coefficients."""
        rng = random.Random(7)
        for _ in range(20):
            g = random_finite_spec(rng)
            for kind in FactorKind:
                for a in range(1, 61):
                    assert finite_factor(kind, g, a) == finite_factor_divisor_sum(kind, g, a)

    def test_euler_factor_forms(self, mixed_spec: CoefficientSpec) -> None:
        """The three expressions of E_p agree past the vertical limit."""
        for p in (2, 3, 5, 7):
            for a in range(1, 50):
                full, cut, telescoped = euler_factor_forms(mixed_spec, p, a)
                assert full == cut == telescoped


class TestRamanujanFactorization:
    """Tests for a = h t a_tilde."""

    def test_split(self) -> None:
        """h collects hyperbad primes, t simply transparent ones."""
        g = CoefficientSpec({2: PrimeEntry((1,), OneTail()), 5: PrimeEntry((1, 3), ZeroTail())})
        assert ramanujan_factorization(g, 200) == (8, 25, 1)
        assert ramanujan_factorization(g, 600) == (8, 25, 3)

    def test_coprime_argument(self, mixed_spec: CoefficientSpec) -> None:
        """An argument free of classified primes stays in a_tilde."""
        assert ramanujan_factorization(mixed_spec, 49) == (1, 1, 49)


class TestRandomSpecs:
    """Tests for the seeded random coefficient generator."""

    def test_seeded(self) -> None:
        """Equal seeds give equal coefficients."""
        left = random_finite_spec(random.Random(3))
        right = random_finite_spec(random.Random(3))
        assert dict(left.prime_entries) == dict(right.prime_entries)

    def test_shape(self) -> None:
        """Prime 2 is listed, the default is zero and the values are exact."""
        rng = random.Random(11)
        for _ in range(30):
            g = random_finite_spec(rng)
            assert 2 in g.listed_primes
            assert isinstance(g.default, ZeroOnPrimes)
            assert g.is_exact

    def test_floating(self) -> None:
        """Floating specs carry complex values."""
        assert not random_finite_spec(random.Random(1), exact=False).is_exact

    def test_values_equal(self, mixed_spec: CoefficientSpec) -> None:
        """A coefficient equals itself and differs from the zero coefficient."""
        assert spec_values_equal(mixed_spec, mixed_spec, [2, 3, 5], 4)
        assert not spec_values_equal(mixed_spec, CoefficientSpec(), [2, 3, 5], 4)
