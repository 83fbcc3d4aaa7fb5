"""sl_n level-k fusion coefficients by the Kac-Walton algorithm."""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

from .lr import lr_product
from .partitions import Partition, from_dynkin, normalize, sl_level, to_dynkin
from .ring import FusionRing

Dynkin = tuple[int, ...]


def _affine_cartan(n: int) -> list[list[int]]:
    if n == 2:
        return [[2, -2], [-2, 2]]
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        a[i][(i + 1) % n] = -1
        a[i][(i - 1) % n] = -1
    return a


def alcove_reduce(dynkin: Dynkin, n: int, k: int) -> tuple[int, Dynkin] | None:
    """Move ``dynkin + rho`` into the level-(k+n) fundamental alcove by affine reflections.

    Returns (sign, reduced Dynkin labels), or None when the shifted weight
    sits on an alcove wall.
    """
    a = [k + n - sum(x + 1 for x in dynkin)] + [x + 1 for x in dynkin]
    cartan = _affine_cartan(n)
    sign = 1
    while True:
        if any(x == 0 for x in a):
            return None
        i = next((i for i, x in enumerate(a) if x < 0), None)
        if i is None:
            break
        ai = a[i]
        a = [a[j] - ai * cartan[i][j] for j in range(n)]
        sign = -sign
    return sign, tuple(x - 1 for x in a[1:])


@lru_cache(maxsize=4096)
def sl_tensor_product(n: int, lam: Partition, mu: Partition) -> dict[Dynkin, int]:
    """Decomposition of L(lam) (x) L(mu) for sl_n, keyed by Dynkin labels."""
    out: dict[Dynkin, int] = {}
    for gamma, c in lr_product(lam, mu, n).items():
        key = to_dynkin(gamma, n)
        out[key] = out.get(key, 0) + c
    return out


@lru_cache(maxsize=16384)
def fusion_product(n: int, k: int, lam: Partition, mu: Partition) -> dict[Dynkin, int]:
    """Level-k fusion of two integrable sl_n weights, keyed by Dynkin labels."""
    out: dict[Dynkin, int] = {}
    for weight, mult in sl_tensor_product(n, lam, mu).items():
        reduced = alcove_reduce(weight, n, k)
        if reduced is None:
            continue
        sign, target = reduced
        out[target] = out.get(target, 0) + sign * mult
    return {w: c for w, c in out.items() if c}


def _check(n: int, k: int, parts: Sequence[Sequence[int]]) -> list[Partition]:
    if n < 2:
        raise ValueError("n must be at least 2")
    if k < 1:
        raise ValueError("level k must be at least 1")
    out = []
    for p in parts:
        p = normalize(p)
        if len(p) > n:
            raise ValueError(f"partition {p} has more than {n} rows")
        if sl_level(p, n) > k:
            raise ValueError(f"partition {p} has level {sl_level(p, n)} > k = {k}")
        out.append(from_dynkin(to_dynkin(p, n)))
    return out


def affine_fusion(n: int, k: int, lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
    """N^(k) nu_{lam, mu} for sl_n at level k; partitions are read modulo full columns."""
    lam, mu, nu = _check(n, k, [lam, mu, nu])
    coeff = fusion_product(n, k, lam, mu).get(to_dynkin(nu, n), 0)
    if coeff < 0:
        raise AssertionError(f"negative fusion coefficient {coeff}")
    return coeff


def sl_tensor_coeff(n: int, lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]) -> int:
    """Tensor product multiplicity of L(nu) in L(lam) (x) L(mu) for sl_n."""
    lam, mu = normalize(lam), normalize(mu)
    return sl_tensor_product(n, from_dynkin(to_dynkin(lam, n)), from_dynkin(to_dynkin(mu, n))).get(
        to_dynkin(normalize(nu), n), 0
    )


def fusion_monotonicity_check(
    n: int, k_max: int, lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]
) -> bool:
    """N^(k) <= N^(k+1) for every level from the least admissible to k_max, and
    N^(k) reaches the tensor coefficient once k >= level(lam) + level(mu)."""
    lam, mu, nu = normalize(lam), normalize(mu), normalize(nu)
    k_min = max(1, sl_level(lam, n), sl_level(mu, n), sl_level(nu, n))
    tensor = sl_tensor_coeff(n, lam, mu, nu)
    values = [affine_fusion(n, k, lam, mu, nu) for k in range(k_min, k_max + 1)]
    if any(a > b for a, b in zip(values, values[1:])):
        return False
    if values and values[-1] > tensor:
        return False
    saturate = sl_level(lam, n) + sl_level(mu, n)
    for k, v in zip(range(k_min, k_max + 1), values):
        if k >= saturate and v != tensor:
            return False
    return True


def integrable_weights(n: int, k: int) -> list[Dynkin]:
    """All Dynkin labels of sl_n with level at most k, identity first."""
    out: list[Dynkin] = []

    def rec(prefix: list[int], remaining: int) -> None:
        if len(prefix) == n - 1:
            out.append(tuple(prefix))
            return
        for x in range(remaining + 1):
            rec(prefix + [x], remaining - x)

    rec([], k)
    out.sort(key=lambda w: (sum(w), [-x for x in w]))
    return out


def affine_fusion_ring(n: int, k: int) -> FusionRing:
    """The sl_n level-k fusion ring on integrable weights; the star is the dual weight."""
    weights = integrable_weights(n, k)
    index = {w: i for i, w in enumerate(weights)}
    r = len(weights)
    tensor = np.zeros((r, r, r), dtype=np.int64)
    for a, wa in enumerate(weights):
        for b, wb in enumerate(weights):
            for wc, c in fusion_product(n, k, from_dynkin(wa), from_dynkin(wb)).items():
                tensor[a, b, index[wc]] = c
    star = tuple(index[tuple(reversed(w))] for w in weights)
    labels = tuple(",".join(map(str, w)) or "0" for w in weights)
    return FusionRing(labels, tensor, star, 0)
