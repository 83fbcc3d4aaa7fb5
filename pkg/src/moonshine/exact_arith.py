"""Exact rational and cyclotomic arithmetic.

Rationals are plain :class:`fractions.Fraction`.  A :class:`Cyclotomic`
is an element of ``Q(zeta_n)`` stored in the power basis
``zeta_n^0 .. zeta_n^(n-1)``; every value is kept reduced modulo the
cyclotomic polynomial ``Phi_n`` so that equality is structural.
"""

from __future__ import annotations

import cmath
import math
import os
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

Rational = Fraction
Number = Union[int, Fraction]

DEFAULT_MAX_CONDUCTOR = 10**6


class ConductorOverflow(ValueError):
    """Raised when an operation needs a cyclotomic field larger than the cap."""


def max_conductor() -> int:
    value = os.environ.get("MOONSHINE_MAX_CONDUCTOR")
    if value:
        return int(value)
    return DEFAULT_MAX_CONDUCTOR


def _check_conductor(n: int) -> None:
    if n < 1:
        raise ValueError(f"conductor must be positive, got {n}")
    cap = max_conductor()
    if n > cap:
        raise ConductorOverflow(f"conductor {n} exceeds cap {cap}")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_rational(r: Fraction | int) -> str:
    r = Fraction(r)
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    # Phi_n = prod_{d | n} (x^d - 1)^mu(n/d); multiply the numerator factors
    # first, then divide by the denominator ones (each a sparse binomial)
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    poly = [1]
    for d in divisors:
        if _mobius(n // d) == 1:
            out = [0] * (len(poly) + d)
            for i, c in enumerate(poly):
                out[i] -= c
                out[i + d] += c
            poly = out
    for d in divisors:
        if _mobius(n // d) == -1:
            # divide by x^d - 1: q_i = q_{i-d} - p_i, run from the bottom
            q = [0] * (len(poly) - d)
            for i in range(len(q)):
                q[i] = (q[i - d] if i >= d else 0) - poly[i]
            poly = q
    return tuple(poly)


@lru_cache(maxsize=None)
def _phi_terms(n: int) -> tuple[tuple[int, int], ...]:
    """Nonzero (degree, coefficient) pairs of Phi_n below its leading term."""
    phi = cyclotomic_polynomial(n)
    return tuple((j, c) for j, c in enumerate(phi[:-1]) if c)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def _reduce(n: int, ints: Mapping[int, int] | list[int]) -> list[int]:
    """Reduce sum c_e x^e (integer c) modulo x^n - 1, then modulo Phi_n by long division."""
    deg = euler_phi(n)
    acc = [0] * n
    items = ints.items() if isinstance(ints, Mapping) else enumerate(ints)
    for e, c in items:
        if c:
            acc[e % n] += c
    terms = _phi_terms(n)
    # Phi_n is monic: x^k = x^(k-deg) * (x^deg - Phi_n) + ...
    for k in range(n - 1, deg - 1, -1):
        top = acc[k]
        if top:
            shift = k - deg
            for j, c in terms:
                acc[shift + j] -= top * c
    return acc[:deg]


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


class Cyclotomic:
    """An exact element ``sum_e c_e zeta_n^e`` of the cyclotomic field Q(zeta_n).

    Instances are immutable.  Coefficients are stored reduced modulo Phi_n,
    so only exponents below ``euler_phi(n)`` ever appear and two values of the
    same conductor are equal iff their coefficient maps agree.
    """

    __slots__ = ("_n", "_coeffs")

    def __init__(self, n: int, coeffs: Mapping[int, Number] | None = None):
        _check_conductor(n)
        self._n = n
        terms = {}
        if coeffs:
            den = 1
            fracs = {}
            for e, c in coeffs.items():
                c = Fraction(c)
                if c:
                    fracs[e % n] = fracs.get(e % n, 0) + c
            for c in fracs.values():
                den = _lcm(den, Fraction(c).denominator)
            reduced = _reduce(n, {e: int(c * den) for e, c in fracs.items()})
            terms = {e: Fraction(c, den) for e, c in enumerate(reduced) if c}
        self._coeffs: dict[int, Fraction] = terms

    @classmethod
    def _raw(cls, n: int, coeffs: dict[int, Fraction]) -> "Cyclotomic":
        obj = cls.__new__(cls)
        obj._n = n
        obj._coeffs = coeffs
        return obj

    @classmethod
    def rational(cls, r: Number, n: int = 1) -> "Cyclotomic":
        return cls(n, {0: r})

    @classmethod
    def zeta(cls, n: int, e: int = 1) -> "Cyclotomic":
        """The root of unity ``exp(2 pi i e / n)``."""
        return cls(n, {e % n: 1})

    @classmethod
    def root_of_unity(cls, turns: Fraction) -> "Cyclotomic":
        """``exp(2 pi i * turns)`` at the smallest conductor that holds it."""
        turns = Fraction(turns)
        return cls.zeta(turns.denominator, turns.numerator)

    @classmethod
    def sqrt_int(cls, m: int) -> "Cyclotomic":
        """Exact positive square root of a positive integer, at conductor 4m.

        Uses the quadratic Gauss sum: sum_{k<4m} zeta_{4m}^{k^2} = 2(1+i) sqrt(m).
        """
        if m < 1:
            raise ValueError("sqrt_int needs a positive integer")
        N = 4 * m
        gauss: dict[int, int] = {}
        for k in range(N):
            e = k * k % N
            gauss[e] = gauss.get(e, 0) + 1
        g = cls(N, gauss)
        # 1/(2(1+i)) = (1-i)/4
        i = cls.zeta(N, m)
        return g * ((cls.rational(1, N) - i) * Fraction(1, 4))

    @property
    def conductor(self) -> int:
        return self._n

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_rational(self) -> bool:
        return all(e == 0 for e in self._coeffs)

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self._coeffs.get(0, Fraction(0))

    def lift(self, m: int) -> "Cyclotomic":
        """Re-express in Q(zeta_m); ``m`` must be a multiple of the conductor."""
        if m == self._n:
            return self
        if m % self._n:
            raise ValueError(f"cannot lift conductor {self._n} to {m}")
        scale = m // self._n
        return Cyclotomic(m, {e * scale: c for e, c in self._coeffs.items()})

    def _common(self, other: "Cyclotomic") -> tuple["Cyclotomic", "Cyclotomic"]:
        if self._n == other._n:
            return self, other
        m = _lcm(self._n, other._n)
        _check_conductor(m)
        return self.lift(m), other.lift(m)

    @staticmethod
    def _coerce(x) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclotomic.rational(x)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        out = dict(a._coeffs)
        for e, c in b._coeffs.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Cyclotomic._raw(a._n, out)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self._n, {e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Cyclotomic._raw(self._n, {})
            return Cyclotomic._raw(self._n, {e: c * other for e, c in self._coeffs.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._coeffs or not other._coeffs:
            return Cyclotomic._raw(max(self._n, other._n), {})
        if other.is_rational():
            return self._common(other)[0] * other.as_rational()
        if self.is_rational():
            return other._common(self)[0] * self.as_rational()
        a, b = self._common(other)
        # integer convolution over a common denominator
        da = 1
        for c in a._coeffs.values():
            da = _lcm(da, c.denominator)
        db = 1
        for c in b._coeffs.values():
            db = _lcm(db, c.denominator)
        ai = [(e, int(c * da)) for e, c in a._coeffs.items()]
        bi = [(e, int(c * db)) for e, c in b._coeffs.items()]
        prod: dict[int, int] = {}
        for ea, ca in ai:
            for eb, cb in bi:
                k = ea + eb
                prod[k] = prod.get(k, 0) + ca * cb
        reduced = _reduce(a._n, prod)
        den = da * db
        return Cyclotomic._raw(a._n, {e: Fraction(c, den) for e, c in enumerate(reduced) if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int) -> "Cyclotomic":
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = Cyclotomic.rational(1, self._n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "Cyclotomic":
        """Complex conjugate: zeta^e -> zeta^(n-e)."""
        return Cyclotomic(self._n, {(-e) % self._n: c for e, c in self._coeffs.items()})

    def embed(self) -> complex:
        """Numerical value in C."""
        n = self._n
        re = math.fsum(float(c) * math.cos(2 * math.pi * e / n) for e, c in self._coeffs.items())
        im = math.fsum(float(c) * math.sin(2 * math.pi * e / n) for e, c in self._coeffs.items())
        return complex(re, im)

    def __complex__(self) -> complex:
        return self.embed()

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._n == other._n:
            return self._coeffs == other._coeffs
        a, b = self._common(other)
        return a._coeffs == b._coeffs

    __hash__ = None  # equality crosses conductors; keep unhashable

    def __repr__(self) -> str:
        if not self._coeffs:
            return f"Cyclotomic({self._n}, 0)"
        parts = []
        for e in sorted(self._coeffs):
            c = format_rational(self._coeffs[e])
            parts.append(c if e == 0 else f"{c}*z{self._n}^{e}")
        return f"Cyclotomic({self._n}, {' + '.join(parts)})"

    def to_terms(self) -> list[dict[str, object]]:
        """JSON-friendly list of ``{"e": exponent, "c": "p/q"}``."""
        return [{"e": e, "c": format_rational(c)} for e, c in sorted(self._coeffs.items())]

    @classmethod
    def from_terms(cls, n: int, terms: Iterable) -> "Cyclotomic":
        coeffs: dict[int, Fraction] = {}
        for t in terms:
            if isinstance(t, Mapping):
                e, c = t["e"], t["c"]
            else:
                e, c = t
            coeffs[int(e) % n] = coeffs.get(int(e) % n, Fraction(0)) + parse_rational(c)
        return cls(n, coeffs)


def cyc_mul(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    return a * b


def cyc_embed(a: Cyclotomic) -> complex:
    return a.embed()


def cyc_conj(a: Cyclotomic) -> Cyclotomic:
    return a.conj()


def is_finite_complex(z: complex) -> bool:
    return cmath.isfinite(z)
