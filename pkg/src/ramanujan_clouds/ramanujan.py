"""Ramanujan sums c_q(a).

Hölder's closed form is the default evaluation path; Kluyver's divisor sum is
kept as a cross-check mode and a floating cosine sum as an independent oracle.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from math import gcd
from typing import Literal

import numpy as np

from ramanujan_clouds.arith import divisors, euler_phi, factorize, mobius, require_prime
from ramanujan_clouds.exceptions import DomainError, PreconditionError

logger = logging.getLogger(__name__)

Method = Literal["holder", "kluyver"]


def _require_positive(**values: int) -> None:
    for name, value in values.items():
        if value < 1:
            raise DomainError(f"{name} = {value} must be a positive integer", condition="positive_integer")


def ramanujan_sum(q: int, a: int, method: Method = "holder") -> int:
    """Evaluate the Ramanujan sum ``c_q(a)`` exactly.

    Args:
        q: Modulus, positive.
        a: Argument, positive.
        method: ``"holder"`` for phi(q) mu(q/g) / phi(q/g) with g = (q, a), or
            ``"kluyver"`` for the divisor sum over d | (q, a) of d mu(q/d).

    Returns:
        The integer value of the sum.

    """
    _require_positive(q=q, a=a)
    g = gcd(q, a)
    match method:
        case "holder":
            m = q // g
            mu = mobius(m)
            if mu == 0:
                return 0
            return euler_phi(q) * mu // euler_phi(m)
        case "kluyver":
            return sum(d * mobius(q // d) for d in divisors(g))


def ramanujan_sum_prime_power(p: int, k: int, a: int) -> int:
    """Closed form of ``c_{p^k}(a)`` without factorizing ``p**k``.

    Equal to ``p^k - p^(k-1)`` for k <= v_p(a), ``-p^(k-1)`` for
    k = v_p(a) + 1 and zero beyond.
    """
    if k == 0:
        return 1
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    if k <= v:
        return p**k - p ** (k - 1)
    if k == v + 1:
        return -(p ** (k - 1))
    return 0


def ramanujan_sum_from_pairs(modulus: Sequence[tuple[int, int]], a: int) -> int:
    """``c_q(a)`` for ``q`` given by its prime-exponent pairs, using multiplicativity in q."""
    value = 1
    for p, k in modulus:
        value *= ramanujan_sum_prime_power(p, k, a)
        if value == 0:
            return 0
    return value


def ramanujan_sum_trigonometric(q: int, a: int) -> float:
    """Floating evaluation of the defining sum of cos(2 pi j a / q) over reduced residues j."""
    _require_positive(q=q, a=a)
    j = np.arange(1, q + 1)
    reduced = j[np.gcd(j, q) == 1]
    return float(np.cos(2.0 * np.pi * reduced * (a % q) / q).sum())


def vertical_limit_bound(p: int, a: int) -> int:
    """Return ``v_p(a) + 1``; ``c_{p^K}(a)`` vanishes for every larger ``K``."""
    require_prime(p)
    _require_positive(a=a)
    return factorize(a).valuation(p) + 1


@dataclass(frozen=True, slots=True)
class RamanujanSumTable:
    """Row-major table of ``c_q(a)`` for ``q <= q_max`` and ``a <= a_max``."""

    q_max: int
    a_max: int
    rows: tuple[tuple[int, ...], ...]

    def entry(self, q: int, a: int) -> int:
        """Table lookup of ``c_q(a)``."""
        if not (1 <= q <= self.q_max and 1 <= a <= self.a_max):
            raise DomainError(f"({q}, {a}) is outside the table", condition="table_domain")
        return self.rows[q - 1][a - 1]

    def csv_rows(self) -> list[tuple[int, int, int]]:
        """``(q, a, c_q(a))`` triples in row-major order."""
        return [(q, a, self.rows[q - 1][a - 1]) for q in range(1, self.q_max + 1) for a in range(1, self.a_max + 1)]


def build_table(q_max: int, a_max: int, *, verify: bool = False) -> RamanujanSumTable:
    """Precompute ``c_q(a)``; with ``verify`` every entry is checked against Kluyver's formula."""
    _require_positive(q_max=q_max, a_max=a_max)
    rows = []
    for q in range(1, q_max + 1):
        row = tuple(ramanujan_sum(q, a) for a in range(1, a_max + 1))
        if verify:
            for a, value in enumerate(row, start=1):
                if value != ramanujan_sum(q, a, method="kluyver"):
                    raise PreconditionError(f"Hölder and Kluyver disagree at q={q}, a={a}", condition="kluyver_check")
        rows.append(row)
    logger.debug("Built Ramanujan sum table %dx%d", q_max, a_max)
    return RamanujanSumTable(q_max, a_max, tuple(rows))
