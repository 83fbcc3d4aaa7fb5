"""Lattice theta series and the coset functions psi_m of sqrt(n) Z.

Theta series are returned as PuiseuxSeries in ``q = exp(2 pi i tau)``, so a
vector of norm ``x.x`` contributes ``q^(x.x/2)``; use ``.rescale(2)`` to read
them in the nome ``exp(pi i tau)``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exact_arith import Cyclotomic, parse_rational
from .modular_forms import eta
from .qseries import PuiseuxSeries, SamplePoint

DEFAULT_BUDGET = 10**7


class EnumerationBudgetExceeded(RuntimeError):
    pass


class GramFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Lattice:
    """A positive-definite lattice given by the Gram matrix of a basis."""

    gram: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        g = tuple(tuple(Fraction(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if n == 0 or any(len(row) != n for row in g):
            raise ValueError("Gram matrix must be square and non-empty")
        for i in range(n):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise ValueError("Gram matrix is not symmetric")
        if any(d <= 0 for d in _ldl(g)[0]):
            raise ValueError("Gram matrix is not positive definite")

    @property
    def dim(self) -> int:
        return len(self.gram)

    @classmethod
    def identity(cls, dim: int) -> "Lattice":
        return cls(tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))

    def direct_sum(self, other: "Lattice") -> "Lattice":
        n, m = self.dim, other.dim
        rows = [list(r) + [0] * m for r in self.gram] + [[0] * n + list(r) for r in other.gram]
        return Lattice(tuple(tuple(r) for r in rows))


def _ldl(g: Sequence[Sequence[Fraction]]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """G = U^T D U with U unit upper triangular; returns (diag D, U)."""
    n = len(g)
    d = [Fraction(0)] * n
    u = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n):
        d[i] = g[i][i] - sum((u[k][i] ** 2 * d[k] for k in range(i)), Fraction(0))
        if d[i] <= 0:
            # not positive definite; caller inspects d
            return d, u
        for j in range(i + 1, n):
            s = g[i][j] - sum((u[k][i] * u[k][j] * d[k] for k in range(i)), Fraction(0))
            u[i][j] = s / d[i]
    return d, u


def parse_gram(text: str) -> Lattice:
    """Read ``dim`` on the first line, then ``dim`` rows of rationals."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    numbered = [(i + 1, ln) for i, ln in enumerate(lines) if ln]
    if not numbered:
        raise GramFormatError("empty Gram file")
    lineno, first = numbered[0]
    try:
        dim = int(first)
    except ValueError:
        raise GramFormatError(f"line {lineno}: expected dimension, got {first!r}") from None
    rows = numbered[1:]
    if len(rows) != dim:
        raise GramFormatError(f"expected {dim} matrix rows, found {len(rows)}")
    gram = []
    for lineno, ln in rows:
        parts = ln.split()
        if len(parts) != dim:
            raise GramFormatError(f"line {lineno}: expected {dim} entries, found {len(parts)}")
        try:
            gram.append(tuple(parse_rational(p) for p in parts))
        except ValueError as exc:
            raise GramFormatError(f"line {lineno}: {exc}") from None
    try:
        return Lattice(tuple(gram))
    except ValueError as exc:
        raise GramFormatError(str(exc)) from None


def norm_counts(lattice: Lattice, bound: Fraction | int, budget: int = DEFAULT_BUDGET) -> Counter:
    """Count lattice vectors by norm ``x.x`` for all norms strictly below ``bound``."""
    bound = Fraction(bound)
    d, u = _ldl(lattice.gram)
    n = lattice.dim
    counts: Counter = Counter()
    x = [0] * n
    visited = 0

    def recurse(i: int, partial: Fraction) -> None:
        nonlocal visited
        if i < 0:
            counts[partial] += 1
            return
        c = sum((u[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        room = bound - partial
        if room <= 0:
            return
        radius = math.sqrt(float(room / d[i])) + 1e-9
        lo = math.ceil(-float(c) - radius)
        hi = math.floor(-float(c) + radius)
        for xi in range(lo, hi + 1):
            visited += 1
            if visited > budget:
                raise EnumerationBudgetExceeded(
                    f"more than {budget} enumeration nodes; lower the order"
                )
            t = xi + c
            val = partial + d[i] * t * t
            if val < bound:
                x[i] = xi
                recurse(i - 1, val)
        x[i] = 0

    recurse(n - 1, Fraction(0))
    return counts


def theta_series(lattice: Lattice, order: int, budget: int = DEFAULT_BUDGET) -> PuiseuxSeries:
    """sum_x q^(x.x/2) over all vectors with ``x.x < 2*order``; truncation order ``order`` in q."""
    counts = norm_counts(lattice, 2 * order, budget)
    return PuiseuxSeries.from_terms({norm / 2: c for norm, c in counts.items()}, order)


@dataclass(frozen=True)
class CosetLabel:
    """Coset ``m`` of sqrt(n)Z inside its dual, ``n`` even."""

    n: int
    m: int

    def __post_init__(self):
        if self.n <= 0 or self.n % 2:
            raise ValueError(f"n must be a positive even integer, got {self.n}")
        if not 0 <= self.m < self.n:
            raise ValueError(f"m must lie in [0, {self.n}), got {self.m}")

    @property
    def t_phase(self) -> Fraction:
        """T_mm = exp(2 pi i * t_phase) = exp(pi i m^2/n - pi i/12)."""
        return Fraction(self.m**2, 2 * self.n) - Fraction(1, 24)


def coset_numerator(c: CosetLabel, prec: Fraction) -> PuiseuxSeries:
    """sum_k q^(n (k + m/n)^2 / 2) = sum_k q^((nk+m)^2 / (2n)) below ``prec``."""
    n, m = c.n, c.m
    terms: dict[Fraction, int] = {}
    k = 0
    while True:
        added = False
        for kk in {k, -k - 1}:
            e = Fraction((n * kk + m) ** 2, 2 * n)
            if e < prec:
                terms[e] = terms.get(e, 0) + 1
                added = True
        if not added:
            break
        k += 1
    return PuiseuxSeries.from_terms(terms, prec)


@lru_cache(maxsize=16)
def _eta_inverse(order: int) -> PuiseuxSeries:
    return eta(order).invert()


def coset_psi(c: CosetLabel, order: int) -> PuiseuxSeries:
    """psi_m = eta^-1 * sum_k q^(n(k+m/n)^2/2), exact through ``order`` powers past its lead."""
    mm = min(c.m, c.n - c.m)
    lead_num = Fraction(mm * mm, 2 * c.n)
    numerator = coset_numerator(c, lead_num + order + 1)
    psi = numerator * _eta_inverse(order)
    return psi.truncate(lead_num - Fraction(1, 24) + order + 1)


def t_transform_check(c: CosetLabel, order: int, candidate: PuiseuxSeries | None = None) -> bool:
    """Check ``psi(tau+1) = T_mm psi(tau)`` coefficientwise in exact cyclotomic arithmetic.

    ``candidate`` (default: the computed psi_m) is shifted term by term,
    ``q^e -> exp(2 pi i e) q^e``, and compared with T_mm times the reference psi_m.
    """
    reference = coset_psi(c, order)
    if candidate is None:
        candidate = reference
    prec = min(candidate.prec, reference.prec)
    cand = candidate.truncate(prec).terms()
    ref = reference.truncate(prec).terms()
    t_mm = Cyclotomic.root_of_unity(c.t_phase)
    for e in set(cand) | set(ref):
        lhs = Cyclotomic.root_of_unity(e) * cand.get(e, Fraction(0))
        rhs = t_mm * ref.get(e, Fraction(0))
        if lhs != rhs:
            return False
    return True


def cyclic_s_numeric(n: int) -> np.ndarray:
    from .modular_data import cyclic_data

    return cyclic_data(n).s_numeric()


def s_transform_residual(
    n: int, point: SamplePoint | complex, order: int = 64, s_matrix: np.ndarray | None = None
) -> float:
    """max_m |psi_m(-1/tau) - sum_m' S_mm' psi_m'(tau)| with the finite Fourier transform S."""
    if not isinstance(point, SamplePoint):
        point = SamplePoint(complex(point))
    if s_matrix is None:
        s_matrix = cyclic_s_numeric(n)
    psis = [coset_psi(CosetLabel(n, m), order) for m in range(n)]
    at_tau = np.array([p.eval(point) for p in psis])
    at_s = np.array([p.eval(point.s_image()) for p in psis])
    return float(np.max(np.abs(at_s - s_matrix @ at_tau)))
