"""Eigenphase tuples in SU(n), a numerical search for unitary products with
prescribed spectra, and the cross-check against affine fusion."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Any, Sequence

import numpy as np
from scipy.linalg import expm

from ..exact_arith import format_rational, parse_rational
from .affine import affine_fusion
from .partitions import from_dynkin

DEFAULT_CAP = 6
DEFAULT_ITERS = 500
DEFAULT_RESTARTS = 32
DEFAULT_STEP = 0.05
DEFAULT_TOL = 1e-6


@dataclass(frozen=True)
class EigenphaseTuple:
    """delta_1 >= ... >= delta_n, summing to 0, with delta_1 - delta_n <= 1.

    The matrix with these eigenphases has eigenvalues exp(2 pi i delta_j).
    """

    phases: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        p = tuple(Fraction(x) for x in self.phases)
        object.__setattr__(self, "phases", p)
        if not p:
            raise ValueError("eigenphase tuple is empty")
        if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
            raise ValueError(f"eigenphases must be weakly decreasing: {self}")
        if sum(p) != 0:
            raise ValueError(f"eigenphases must sum to 0: {self}")
        if p[0] - p[-1] > 1:
            raise ValueError(f"eigenphase spread exceeds 1: {self}")

    @classmethod
    def parse(cls, text: str) -> "EigenphaseTuple":
        parts = [s for s in text.strip().strip("()[]").split(",") if s.strip()]
        return cls(tuple(parse_rational(s) for s in parts))

    @property
    def n(self) -> int:
        return len(self.phases)

    def floats(self) -> np.ndarray:
        return np.array([float(x) for x in self.phases])

    def diagonal(self) -> np.ndarray:
        return np.diag(np.exp(2j * np.pi * self.floats()))

    def dynkin(self, k: int) -> tuple[int, ...] | None:
        """Labels k(delta_i - delta_{i+1}), or None if some label is not an integer."""
        out = []
        for a, b in zip(self.phases, self.phases[1:]):
            v = k * (a - b)
            if v.denominator != 1:
                return None
            out.append(int(v))
        return tuple(out)

    def __str__(self) -> str:
        return ",".join(format_rational(x) for x in self.phases)


def _as_tuple(x: EigenphaseTuple | str | Sequence) -> EigenphaseTuple:
    if isinstance(x, EigenphaseTuple):
        return x
    if isinstance(x, str):
        return EigenphaseTuple.parse(x)
    return EigenphaseTuple(tuple(x))


def eigenphases(u: np.ndarray) -> np.ndarray:
    """Eigenphases of an SU(n) matrix as the representative in Delta_n (float, decreasing)."""
    theta = np.mod(np.angle(np.linalg.eigvals(u)) / (2 * np.pi), 1.0)
    theta = np.sort(theta)[::-1]
    s = int(round(theta.sum()))
    theta[:s] -= 1.0
    return np.sort(theta)[::-1]


def _wrap(x: np.ndarray) -> np.ndarray:
    return x - np.round(x)


def _matching(phases: np.ndarray, target: np.ndarray) -> tuple[float, np.ndarray, np.ndarray]:
    """Best cyclic pairing of unordered phases on the circle with the target phases.

    Returns (squared distance, index order into ``phases``, wrapped differences).
    """
    p = np.mod(phases, 1.0)
    g = np.sort(np.mod(target, 1.0))
    order = np.argsort(p)
    n = len(p)
    best = (np.inf, order, np.zeros(n))
    for r in range(n):
        idx = np.roll(order, -r)
        diff = _wrap(p[idx] - g)
        f = float(diff @ diff)
        if f < best[0]:
            best = (f, idx, diff)
    return best


def phase_distance(u: np.ndarray, target: EigenphaseTuple | Sequence[float]) -> float:
    """Euclidean distance between the spectrum of ``u`` and ``target``, as phases on the circle."""
    t = target.floats() if isinstance(target, EigenphaseTuple) else np.asarray(target, float)
    lam = np.linalg.eigvals(u)
    return float(np.sqrt(_matching(np.angle(lam) / (2 * np.pi), t)[0]))


def _objective(w: np.ndarray, da: np.ndarray, db: np.ndarray, target: np.ndarray):
    c = da @ w @ db @ w.conj().T
    lam, vecs = np.linalg.eig(c)
    f, idx, diff = _matching(np.angle(lam) / (2 * np.pi), target)
    return f, c, lam[idx], vecs[:, idx], diff


def _gradient(w, da, db, lam, vecs, diff) -> np.ndarray:
    # Perturb w -> w expm(eps X): d lambda_i = tr(X M_i) with
    # M_i = Db b_i a_i^H - b_i a_i^H Db, a_i = w^H Da^H v_i, b_i = w^H v_i.
    wh = w.conj().T
    a = wh @ da.conj().T @ vecs
    b = wh @ vecs
    k = np.zeros_like(w)
    for i in range(len(lam)):
        outer = np.outer(b[:, i], a[:, i].conj())
        m = db @ outer - outer @ db
        k += (diff[i] / np.pi) * m / lam[i]
    g = 1j * k
    return (g - g.conj().T) / 2


def _haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


@dataclass
class Feasibility:
    found: bool
    distance: float
    A: np.ndarray | None = None
    B: np.ndarray | None = None
    restart: int | None = None
    iterations: int = 0

    def to_json(self) -> dict[str, Any]:
        return {
            "found": self.found,
            "distance": self.distance,
            "restart": self.restart,
            "iterations": self.iterations,
        }


def unitary_product_search(
    alpha,
    beta,
    gamma,
    iters: int = DEFAULT_ITERS,
    tol: float = DEFAULT_TOL,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
    cap: int = DEFAULT_CAP,
    step: float = DEFAULT_STEP,
) -> Feasibility:
    """Look for A, B in SU(n) with eigenphases alpha, beta such that AB has eigenphases gamma.

    A = Da is fixed and B = W Db W^H is optimized over W by Riemannian gradient
    descent (conjugating both by a common unitary changes nothing). A miss is
    not a proof that no such pair exists.
    """
    alpha, beta, gamma = (_as_tuple(x) for x in (alpha, beta, gamma))
    n = alpha.n
    if beta.n != n or gamma.n != n:
        raise ValueError("eigenphase tuples must have the same length")
    if n > cap:
        raise ValueError(f"n = {n} exceeds the search cap {cap}")
    da, db, target = alpha.diagonal(), beta.diagonal(), gamma.floats()
    rng = np.random.default_rng(seed)
    best = Feasibility(False, np.inf)
    total = 0
    for restart in range(restarts):
        w = np.eye(n, dtype=complex) if restart == 0 else _haar_unitary(n, rng)
        f, c, lam, vecs, diff = _objective(w, da, db, target)
        eta = step
        for _ in range(iters):
            if np.sqrt(f) < tol:
                break
            total += 1
            g = _gradient(w, da, db, lam, vecs, diff)
            if not np.any(g):
                break
            while eta > 1e-14:
                w_new = w @ expm(-eta * g)
                f_new, c_new, lam_new, vecs_new, diff_new = _objective(w_new, da, db, target)
                if f_new < f:
                    w, f, lam, vecs, diff = w_new, f_new, lam_new, vecs_new, diff_new
                    eta *= 1.5
                    break
                eta /= 2
            else:
                break
        d = float(np.sqrt(f))
        if d < best.distance:
            best = Feasibility(False, d, da, w @ db @ w.conj().T, restart, total)
        if d < tol:
            best.found = True
            best.iterations = total
            return best
    best.iterations = total
    best.A = best.B = None
    return best


@dataclass
class AWReport:
    n: int
    levels: list[int]
    fusion: dict[int, int]
    least_nonzero_k: int | None
    search: Feasibility
    verdict: str
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "levels": self.levels,
            "fusion": {str(k): v for k, v in self.fusion.items()},
            "least_nonzero_k": self.least_nonzero_k,
            "search": self.search.to_json(),
            "verdict": self.verdict,
            "notes": self.notes,
        }


def admissible_levels(tuples: Sequence[EigenphaseTuple], k_max: int) -> list[int]:
    """Levels k <= k_max at which every k(delta_i - delta_j) is an integer."""
    step = 1
    for t in tuples:
        for a, b in zip(t.phases, t.phases[1:]):
            step = lcm(step, (a - b).denominator)
    return list(range(step, k_max + 1, step))


def aw_crosscheck(
    alpha,
    beta,
    gamma,
    k_max: int = 8,
    iters: int = DEFAULT_ITERS,
    tol: float = DEFAULT_TOL,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
) -> AWReport:
    """Compare the unitary search verdict with sl_n level-k fusion coefficients for k <= k_max."""
    alpha, beta, gamma = (_as_tuple(x) for x in (alpha, beta, gamma))
    n = alpha.n
    if n < 2:
        raise ValueError("the cross-check needs n >= 2")
    search = unitary_product_search(alpha, beta, gamma, iters=iters, tol=tol, restarts=restarts, seed=seed)
    levels = admissible_levels((alpha, beta, gamma), k_max)
    fusion = {}
    for k in levels:
        lam, mu, nu = (from_dynkin(t.dynkin(k)) for t in (alpha, beta, gamma))
        fusion[k] = affine_fusion(n, k, lam, mu, nu)
    least = next((k for k in levels if fusion[k]), None)
    notes = []
    if not levels:
        notes.append(f"no admissible level k <= {k_max}")
        verdict = "INCONCLUSIVE"
    elif (search.found and least is not None) or (not search.found and least is None):
        verdict = "CONSISTENT"
    else:
        verdict = "INCONCLUSIVE"
    return AWReport(n, levels, fusion, least, search, verdict, notes)
