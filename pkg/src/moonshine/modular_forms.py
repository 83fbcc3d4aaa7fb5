"""q-expansions of E4, E6, the Dedekind eta function, j and j^(1/3).

``order`` arguments count whole powers of q past the leading exponent:
a series built with ``order=N`` is exact for exponents ``v, v+1, ..., v+N``
where ``v`` is its leading exponent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .qseries import PuiseuxSeries, from_sum


def divisor_sigma(n: int, k: int) -> int:
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d**k
            if d * d != n:
                total += (n // d) ** k
        d += 1
    return total


@dataclass(frozen=True)
class EisensteinPair:
    """E4 and E6 normalised to constant term 1."""

    e4: PuiseuxSeries
    e6: PuiseuxSeries

    def discriminant(self) -> PuiseuxSeries:
        """``(E4^3 - E6^2) / 1728 = q - 24 q^2 + ...``."""
        return (self.e4**3 - self.e6**2).scale(Fraction(1, 1728))


def _check_order(order: int) -> None:
    if order < 1:
        raise ValueError(f"order must be at least 1, got {order}")


@lru_cache(maxsize=32)
def eisenstein(order: int) -> EisensteinPair:
    """E4 = 1 + 240 sum sigma_3(n) q^n and E6 = 1 - 504 sum sigma_5(n) q^n through q^order."""
    _check_order(order)
    e4 = [1] + [240 * divisor_sigma(n, 3) for n in range(1, order + 1)]
    e6 = [1] + [-504 * divisor_sigma(n, 5) for n in range(1, order + 1)]
    return EisensteinPair(
        PuiseuxSeries.polynomial(e4, prec=order + 1),
        PuiseuxSeries.polynomial(e6, prec=order + 1),
    )


@lru_cache(maxsize=32)
def jay(order: int) -> PuiseuxSeries:
    """The j-function ``1728 E4^3 / (E4^3 - E6^2)`` exact through q^(order-1)."""
    _check_order(order)
    # the division by q - ... costs two orders of relative precision
    pair = eisenstein(order + 1)
    e4_cubed = pair.e4**3
    j = (e4_cubed * (e4_cubed - pair.e6**2).invert()).scale(1728)
    return j.truncate(order)


def _eta_theta_sum(order: int) -> PuiseuxSeries:
    prec = Fraction(1, 24) + order + 1
    plus, minus = [], []
    k = 0
    # exponents 6(k+1/12)^2 = (12k+1)^2/24 and 6(k+5/12)^2 = (12k+5)^2/24
    while True:
        added = False
        for kk in {k, -k}:
            e1 = Fraction((12 * kk + 1) ** 2, 24)
            e2 = Fraction((12 * kk + 5) ** 2, 24)
            if e1 < prec:
                plus.append(e1)
                added = True
            if e2 < prec:
                minus.append(e2)
                added = True
        if not added:
            break
        k += 1
    return from_sum(plus, prec) + from_sum(minus, prec, sign=-1)


def _eta_discriminant(order: int) -> PuiseuxSeries:
    pair = eisenstein(order + 1)
    return pair.discriminant().root(24)


@lru_cache(maxsize=32)
def eta(order: int, method: str = "theta_sum") -> PuiseuxSeries:
    """Dedekind eta, ``q^(1/24) (1 - q - q^2 + q^5 + ...)``, exact through q^(1/24 + order).

    ``method="theta_sum"`` sums the two interleaved quadratic-exponent series;
    ``method="discriminant"`` takes the 24th root of ``(E4^3 - E6^2)/1728``.
    """
    _check_order(order)
    if method == "theta_sum":
        return _eta_theta_sum(order)
    if method == "discriminant":
        return _eta_discriminant(order)
    raise ValueError(f"unknown eta method {method!r}")


@lru_cache(maxsize=32)
def j_cuberoot(order: int) -> PuiseuxSeries:
    """``j^(1/3) = q^(-1/3) (1 + 248 q + 4124 q^2 + ...)`` exact through q^(-1/3 + order)."""
    _check_order(order)
    return jay(order).root(3)
