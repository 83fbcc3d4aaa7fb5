"""Truncated Puiseux series in the nome ``q = exp(2 pi i tau)``.

A :class:`PuiseuxSeries` holds exact rational coefficients on the exponent
grid ``L/d, (L+1)/d, ...`` and a truncation order: every exponent at or above
``prec`` is unknown.  Arithmetic propagates the truncation order so that
every coefficient a series reports is exact.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact_arith import Number, format_rational

DEFAULT_TERMS = 64
TAIL_BOUND = 1e-12


class SeriesError(ValueError):
    """Raised for non-invertible series or roots that do not exist exactly."""


class TruncationError(ValueError):
    """Raised when numeric evaluation would be dominated by the unknown tail."""


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _int_root(n: int, m: int) -> int | None:
    """Exact integer m-th root of n >= 0, or None."""
    if n < 0:
        return None
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + m - 1) // m)
    while True:
        y = ((m - 1) * x + n // x ** (m - 1)) // m
        if y >= x:
            break
        x = y
    return x if x**m == n else None


def rational_root(r: Fraction, m: int) -> Fraction:
    """Exact positive m-th root of a positive rational, or SeriesError."""
    r = Fraction(r)
    if r <= 0:
        raise SeriesError(f"leading coefficient {r} is not a positive rational")
    num = _int_root(r.numerator, m)
    den = _int_root(r.denominator, m)
    if num is None or den is None:
        raise SeriesError(f"leading coefficient {r} has no rational {m}-th root")
    return Fraction(num, den)


@dataclass(frozen=True)
class SamplePoint:
    """A point ``tau`` of the upper half-plane."""

    tau: complex

    def __post_init__(self):
        if not self.tau.imag > 0:
            raise ValueError(f"tau must lie in the upper half-plane, got {self.tau}")

    @property
    def nome(self) -> complex:
        return cmath.exp(2j * math.pi * self.tau)

    def s_image(self) -> "SamplePoint":
        return SamplePoint(-1 / self.tau)

    def t_image(self) -> "SamplePoint":
        return SamplePoint(self.tau + 1)


class PuiseuxSeries:
    """Truncated series ``sum_k c_k q^((L+k)/d) + O(q^prec)`` with Fraction coefficients."""

    __slots__ = ("den", "lead", "coeffs", "prec")

    def __init__(self, den: int, lead: int, coeffs: Sequence[Number], prec: Number):
        if den < 1:
            raise ValueError("exponent denominator must be positive")
        prec = Fraction(prec)
        coeffs = [Fraction(c) for c in coeffs]
        # drop leading zeros
        start = 0
        while start < len(coeffs) and not coeffs[start]:
            start += 1
        coeffs = coeffs[start:]
        lead += start
        # drop terms at or beyond the truncation order
        keep = len(coeffs)
        while keep and Fraction(lead + keep - 1, den) >= prec:
            keep -= 1
        coeffs = coeffs[:keep]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        if not coeffs:
            lead = 0
        else:
            # shrink the exponent grid when every used exponent allows it
            g = den
            g = math.gcd(g, lead)
            for i, c in enumerate(coeffs):
                if c and g > 1:
                    g = math.gcd(g, lead + i)
            if g > 1:
                coeffs = coeffs[::g]
                lead //= g
                den //= g
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "lead", lead)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("PuiseuxSeries is immutable")

    # construction -----------------------------------------------------------

    @classmethod
    def from_terms(cls, terms: Mapping[Number, Number], prec: Number) -> "PuiseuxSeries":
        """Build from ``{exponent: coefficient}``; terms at or past ``prec`` are dropped."""
        terms = {Fraction(e): Fraction(c) for e, c in terms.items() if c}
        prec = Fraction(prec)
        terms = {e: c for e, c in terms.items() if e < prec}
        if not terms:
            return cls(1, 0, [], prec)
        den = 1
        for e in terms:
            den = _lcm(den, e.denominator)
        nums = {int(e * den): c for e, c in terms.items()}
        lo = min(nums)
        dense = [Fraction(0)] * (max(nums) - lo + 1)
        for k, c in nums.items():
            dense[k - lo] = c
        return cls(den, lo, dense, prec)

    @classmethod
    def constant(cls, c: Number, prec: Number = DEFAULT_TERMS) -> "PuiseuxSeries":
        return cls(1, 0, [c], prec)

    @classmethod
    def monomial(cls, exponent: Number, coeff: Number = 1, terms: int = DEFAULT_TERMS) -> "PuiseuxSeries":
        """``coeff * q^exponent`` known to ``terms`` whole powers of q past its exponent."""
        exponent = Fraction(exponent)
        return cls.from_terms({exponent: coeff}, exponent + terms)

    @classmethod
    def polynomial(cls, coeffs: Sequence[Number], prec: Number | None = None) -> "PuiseuxSeries":
        """``sum coeffs[k] q^k``; exact (default ``prec`` = 64 past the end)."""
        if prec is None:
            prec = len(coeffs) + DEFAULT_TERMS
        return cls(1, 0, coeffs, prec)

    # inspection -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def valuation(self) -> Fraction:
        """Leading exponent; for the zero series, the truncation order."""
        if not self.coeffs:
            return self.prec
        return Fraction(self.lead, self.den)

    @property
    def leading_coefficient(self) -> Fraction:
        if not self.coeffs:
            raise SeriesError("zero series has no leading coefficient")
        return self.coeffs[0]

    def terms(self) -> dict[Fraction, Fraction]:
        return {
            Fraction(self.lead + i, self.den): c for i, c in enumerate(self.coeffs) if c
        }

    def coefficient(self, exponent: Number) -> Fraction:
        exponent = Fraction(exponent)
        if exponent >= self.prec:
            raise TruncationError(f"coefficient of q^{exponent} lies beyond truncation {self.prec}")
        k = exponent * self.den - self.lead
        if k.denominator != 1 or not 0 <= k < len(self.coeffs):
            return Fraction(0)
        return self.coeffs[int(k)]

    def relative_coefficients(self, count: int) -> list[Fraction]:
        """Coefficients of ``q^(v + k)`` for k = 0..count-1, v the valuation."""
        v = self.valuation
        return [self.coefficient(v + k) for k in range(count)]

    # arithmetic -------------------------------------------------------------

    def _on_grid(self, den: int) -> tuple[int, list[Fraction]]:
        step = den // self.den
        if step == 1:
            return self.lead, list(self.coeffs)
        dense = [Fraction(0)] * (max(len(self.coeffs) - 1, 0) * step + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            dense[i * step] = c
        return self.lead * step, dense

    @staticmethod
    def _coerce(x) -> "PuiseuxSeries":
        if isinstance(x, PuiseuxSeries):
            return x
        if isinstance(x, (int, Fraction)):
            # exact constant: infinite precision is represented by a huge order
            return PuiseuxSeries(1, 0, [x], Fraction(10**9))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        den = _lcm(self.den, other.den)
        prec = min(self.prec, other.prec)
        la, ca = self._on_grid(den)
        lb, cb = other._on_grid(den)
        if not ca:
            la = lb
        if not cb:
            lb = la
        lo = min(la, lb)
        hi = max(la + len(ca), lb + len(cb))
        out = [Fraction(0)] * (hi - lo)
        for i, c in enumerate(ca):
            out[la - lo + i] += c
        for i, c in enumerate(cb):
            out[lb - lo + i] += c
        return PuiseuxSeries(den, lo, out, prec)

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries(self.den, self.lead, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Number) -> "PuiseuxSeries":
        c = Fraction(c)
        return PuiseuxSeries(self.den, self.lead, [x * c for x in self.coeffs], self.prec)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        prec = min(self.prec + other.valuation, other.prec + self.valuation)
        if not self.coeffs or not other.coeffs:
            return PuiseuxSeries(1, 0, [], prec)
        den = _lcm(self.den, other.den)
        la, ca = self._on_grid(den)
        lb, cb = other._on_grid(den)
        # only products below prec matter
        limit = int(math.ceil(prec * den)) - la - lb
        limit = min(limit, len(ca) + len(cb) - 1)
        if limit <= 0:
            return PuiseuxSeries(den, la + lb, [], prec)
        da = 1
        for c in ca:
            da = _lcm(da, c.denominator)
        db = 1
        for c in cb:
            db = _lcm(db, c.denominator)
        ia = [int(c * da) for c in ca]
        ib = [int(c * db) for c in cb]
        nz_b = [(j, x) for j, x in enumerate(ib) if x]
        out = [0] * limit
        for i, x in enumerate(ia):
            if not x or i >= limit:
                continue
            for j, y in nz_b:
                if i + j >= limit:
                    break
                out[i + j] += x * y
        d = da * db
        return PuiseuxSeries(den, la + lb, [Fraction(v, d) for v in out], prec)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PuiseuxSeries":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.invert() ** (-k)
        result = PuiseuxSeries._coerce(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.invert()

    def _unit_part(self) -> tuple[Fraction, list[Fraction], int, int]:
        """Split as ``q^v * (c0 + c1 t + ...)`` with ``t = q^(step/den)``.

        ``step`` is the gcd of the occupied offsets, so sparse grids (eta has
        one nonzero slot in 24) are recursed over compactly. Returns
        (v, coeffs in t, number of known coefficients, step).
        """
        if not self.coeffs:
            raise SeriesError("the zero series is not invertible")
        v = self.valuation
        rel = self.prec - v
        n_grid = int(math.ceil(rel * self.den))
        step = 0
        for i, c in enumerate(self.coeffs[:n_grid]):
            if c and i:
                step = math.gcd(step, i)
        step = step or n_grid or 1
        n_known = -(-n_grid // step)
        coeffs = list(self.coeffs[:n_grid:step]) + [Fraction(0)] * max(0, n_known - len(self.coeffs[:n_grid:step]))
        return v, coeffs, n_known, step

    @staticmethod
    def _spread(g: list[Fraction], step: int) -> list[Fraction]:
        if step == 1:
            return g
        dense = [Fraction(0)] * ((len(g) - 1) * step + 1)
        dense[::step] = g
        return dense

    def invert(self) -> "PuiseuxSeries":
        """Multiplicative inverse, keeping the same relative precision."""
        v, f, n, step = self._unit_part()
        f0 = f[0]
        if not f0:
            raise SeriesError("leading coefficient is zero")
        nz = [(i, c) for i, c in enumerate(f) if c and i]
        g = [Fraction(0)] * n
        g[0] = 1 / f0
        for k in range(1, n):
            acc = Fraction(0)
            for i, c in nz:
                if i > k:
                    break
                acc += c * g[k - i]
            g[k] = -acc / f0
        return PuiseuxSeries(self.den, -self.lead, self._spread(g, step), -v + (self.prec - v))

    def power(self, alpha: Number) -> "PuiseuxSeries":
        """``self ** alpha`` for rational alpha, branch fixed by a positive leading coefficient.

        Needs ``c0 ** alpha`` rational; the exponent shift ``v * alpha`` is always
        representable on a finer grid.
        """
        alpha = Fraction(alpha)
        v, f, n, step = self._unit_part()
        c0 = f[0]
        if alpha.denominator == 1:
            lead_c = c0 ** alpha.numerator
        else:
            root = rational_root(c0, alpha.denominator)
            lead_c = root**alpha.numerator
        # g = (f/c0)^alpha with f0 = 1: k g_k = sum_{i=1..k} (alpha i - (k - i)) f_i g_{k-i}
        nz = [(i, c / c0) for i, c in enumerate(f) if c and i]
        g = [Fraction(0)] * n
        g[0] = Fraction(1)
        for k in range(1, n):
            acc = Fraction(0)
            for i, u in nz:
                if i > k:
                    break
                acc += (alpha * i - (k - i)) * u * g[k - i]
            g[k] = acc / k
        new_v = v * alpha
        rel = self.prec - v
        # place on a grid fine enough for new_v and t = q^(step/den)
        den = _lcm(self.den, new_v.denominator)
        stride = den // self.den * step
        dense = [Fraction(0)] * ((n - 1) * stride + 1)
        for i, c in enumerate(g):
            dense[i * stride] = c * lead_c
        return PuiseuxSeries(den, int(new_v * den), dense, new_v + rel)

    def root(self, m: int) -> "PuiseuxSeries":
        """Exact m-th root with positive rational leading coefficient."""
        if m < 1:
            raise ValueError("root order must be positive")
        return self.power(Fraction(1, m))

    def truncate(self, prec: Number) -> "PuiseuxSeries":
        prec = Fraction(prec)
        if prec > self.prec:
            raise TruncationError(f"cannot extend truncation from {self.prec} to {prec}")
        return PuiseuxSeries(self.den, self.lead, self.coeffs, prec)

    def shift(self, exponent: Number) -> "PuiseuxSeries":
        """Multiply by ``q^exponent``."""
        return self * PuiseuxSeries.from_terms({exponent: 1}, Fraction(exponent) + 10**9)

    def rescale(self, factor: Number) -> "PuiseuxSeries":
        """Substitute ``q -> q^factor`` (factor a positive rational)."""
        factor = Fraction(factor)
        if factor <= 0:
            raise ValueError("rescale factor must be positive")
        return PuiseuxSeries.from_terms(
            {e * factor: c for e, c in self.terms().items()}, self.prec * factor
        )

    # comparison -------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return self.prec == other.prec and self.terms() == other.terms()

    __hash__ = None

    def agrees_with(self, other: "PuiseuxSeries", prec: Number | None = None) -> bool:
        """Equal coefficients below ``prec`` (default: the smaller truncation)."""
        if prec is None:
            prec = min(self.prec, other.prec)
        return self.truncate(prec).terms() == other.truncate(prec).terms()

    # numerics ---------------------------------------------------------------

    def tail_bound(self, tau: complex) -> float:
        r = abs(cmath.exp(2j * math.pi * tau))
        if r >= 1:
            return math.inf
        return r ** float(self.prec) / (1 - r)

    def eval(self, tau: complex | SamplePoint) -> complex:
        """Evaluate at ``tau``, reading ``q^e`` as ``exp(2 pi i e tau)``.

        For ``|Re tau| <= 1/2`` this is the principal power of ``q``.
        """
        if isinstance(tau, SamplePoint):
            tau = tau.tau
        else:
            tau = SamplePoint(complex(tau)).tau
        bound = self.tail_bound(tau)
        if not bound < TAIL_BOUND:
            raise TruncationError(
                f"tail bound {bound:.3g} at tau={tau} exceeds {TAIL_BOUND}; raise the order"
            )
        step = cmath.exp(2j * math.pi * tau / self.den)
        base = cmath.exp(2j * math.pi * tau * self.lead / self.den)
        # Horner over the dense grid
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * step + float(c)
        return acc * base

    # rendering --------------------------------------------------------------

    def render(self, var: str = "q") -> str:
        parts = []
        for e, c in sorted(self.terms().items()):
            parts.append(f"{format_rational(c)}*{var}^({format_rational(e)})")
        parts.append(f"O({var}^({format_rational(self.prec)}))")
        return " + ".join(parts)

    def to_json(self) -> dict[str, object]:
        return {
            "coeffs": {format_rational(e): format_rational(c) for e, c in sorted(self.terms().items())},
            "truncation": format_rational(self.prec),
        }

    def __repr__(self) -> str:
        return f"PuiseuxSeries({self.render()})"


def series_add(a: PuiseuxSeries, b: PuiseuxSeries) -> PuiseuxSeries:
    return a + b


def series_mul(a: PuiseuxSeries, b: PuiseuxSeries) -> PuiseuxSeries:
    return a * b


def series_invert(a: PuiseuxSeries) -> PuiseuxSeries:
    return a.invert()


def series_root(a: PuiseuxSeries, m: int) -> PuiseuxSeries:
    return a.root(m)


def series_eval_numeric(a: PuiseuxSeries, p: SamplePoint | complex) -> complex:
    return a.eval(p)


def from_sum(exponents: Iterable[Number], prec: Number, sign: int = 1) -> PuiseuxSeries:
    """``sign * sum q^e`` over the given exponents, counting repeats."""
    terms: dict[Fraction, Fraction] = {}
    for e in exponents:
        e = Fraction(e)
        if e < Fraction(prec):
            terms[e] = terms.get(e, Fraction(0)) + sign
    return PuiseuxSeries.from_terms(terms, prec)
