"""Shared pytest fixtures for the Ramanujan expansions toolkit tests."""

import json
from collections.abc import Iterator
from fractions import Fraction
from pathlib import Path
from typing import Any

import pytest

from ramanujan_clouds.coefficients import (
    CoefficientSpec,
    GeometricTail,
    OneTail,
    PrimeEntry,
    ZeroOnPrimes,
    ZeroTail,
)
from ramanujan_clouds.config import Settings, configure


@pytest.fixture
def small_sieve() -> Iterator[Settings]:
    """Activate settings with a sieve bound of 100, restoring the defaults afterwards."""
    settings = Settings(sieve_bound=100)
    configure(settings)
    yield settings
    configure(Settings())


@pytest.fixture
def default_settings() -> Iterator[Settings]:
    """Activate default settings and restore them after commands that reconfigure the toolkit."""
    settings = Settings()
    configure(settings)
    yield settings
    configure(Settings())


@pytest.fixture
def simply_bad_spec() -> CoefficientSpec:
    """G(3) = 2, G(9) = 4, zero beyond; zero on every other prime."""
    return CoefficientSpec({3: PrimeEntry((2, 4), ZeroTail())}, ZeroOnPrimes())


@pytest.fixture
def transparent_spec() -> CoefficientSpec:
    """G(5) = G(25) = 1, G(125) = 3, zero beyond; zero on every other prime."""
    return CoefficientSpec({5: PrimeEntry((1, 1, 3), ZeroTail())}, ZeroOnPrimes())


@pytest.fixture
def null_cloud_spec() -> CoefficientSpec:
    """G(2^k) = 1 for every k and zero on every other prime."""
    return CoefficientSpec({2: PrimeEntry((1,), OneTail())}, ZeroOnPrimes())


@pytest.fixture
def mixed_spec() -> CoefficientSpec:
    """Finite coefficient with an opaque, a transparent and a completely multiplicative prime."""
    return CoefficientSpec(
        {
            2: PrimeEntry((Fraction(-1, 2), Fraction(1, 3)), ZeroTail()),
            3: PrimeEntry((1, Fraction(-2, 3)), ZeroTail()),
            5: PrimeEntry((Fraction(1, 4),), GeometricTail(Fraction(1, 4))),
        },
        ZeroOnPrimes(),
    )


def write_json(path: Path, document: Any) -> Path:
    """Dump ``document`` to ``path`` and return the path."""
    path.write_text(json.dumps(document))
    return path


@pytest.fixture
def spec_file(tmp_path: Path) -> Path:
    """Coefficient file with G(3) = 2, G(9) = 4 and a zero default."""
    return write_json(
        tmp_path / "spec.json",
        {"default": {"tag": "zero_on_primes"}, "primes": {"3": {"values": [[2, 0], [4, 0]], "tail": {"tag": "zero"}}}},
    )


@pytest.fixture
def null_spec_file(tmp_path: Path) -> Path:
    """Coefficient file of G(2^k) = 1."""
    return write_json(tmp_path / "null.json", {"primes": {"2": {"values": [[1, 0]], "tail": {"tag": "one"}}}})


@pytest.fixture
def id_function_file(tmp_path: Path) -> Path:
    """Function file of the identity on 1..60."""
    return write_json(tmp_path / "id.json", {"builtin": "id", "a_max": 60})
