"""Fusion rings given by a structure-constant tensor N[a, b, c] = N_ab^c."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any, Sequence

import numpy as np


@dataclass(frozen=True, eq=False)
class FusionRing:
    labels: tuple[str, ...]
    tensor: np.ndarray
    star: tuple[int, ...] | None
    identity: int = 0

    @property
    def rank(self) -> int:
        return len(self.labels)

    @classmethod
    def from_tensor(
        cls, tensor: np.ndarray, identity: int = 0, labels: Sequence[str] | None = None
    ) -> "FusionRing":
        """Build a ring, reading the star off N_ab^1 = delta_{b, a*}; star is None when
        that pattern does not define a permutation."""
        tensor = np.asarray(tensor)
        r = tensor.shape[0]
        if labels is None:
            labels = [str(i) for i in range(r)]
        star: list[int] | None = []
        for a in range(r):
            hits = np.nonzero(tensor[a, :, identity])[0]
            if len(hits) != 1:
                star = None
                break
            star.append(int(hits[0]))
        if star is not None and sorted(star) != list(range(r)):
            star = None
        return cls(tuple(labels), tensor, tuple(star) if star is not None else None, identity)

    def multiply(self, a: int, b: int) -> dict[str, int]:
        return {self.labels[c]: int(v) for c, v in enumerate(self.tensor[a, b]) if v}


@dataclass
class FusionReport:
    F1: bool
    F2: bool
    F3: bool
    associative: bool
    commutative: bool
    unital: bool
    star_involution: bool
    star: list[int] | None = None
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(
            (self.F1, self.F2, self.F3, self.associative, self.commutative, self.unital, self.star_involution)
        )

    def to_json(self) -> dict[str, Any]:
        out = asdict(self)
        out["ok"] = self.ok
        return out


def validate_fusion_ring(ring: FusionRing) -> FusionReport:
    """Check F1-F3, associativity, commutativity and the unit, exhaustively."""
    N = ring.tensor
    r = ring.rank
    failures: list[str] = []
    shape_ok = N.shape == (r, r, r)
    f1 = bool(shape_ok and np.issubdtype(N.dtype, np.integer) and np.all(N >= 0))
    if not f1:
        failures.append("F1: structure constants are not all nonnegative integers")
    if not shape_ok:
        return FusionReport(False, False, False, False, False, False, False, None, failures)
    one = ring.identity
    eye = np.eye(r, dtype=N.dtype)
    unital = bool(np.array_equal(N[one], eye) and np.array_equal(N[:, one], eye))
    if not unital:
        failures.append("identity label does not act as a unit")
    commutative = bool(np.array_equal(N, N.transpose(1, 0, 2)))
    if not commutative:
        failures.append("N_ab^c != N_ba^c")
    # (a b) c = a (b c): sum_e N_ab^e N_ec^d = sum_e N_bc^e N_ae^d
    left = np.einsum("abe,ecd->abcd", N, N)
    right = np.einsum("bce,aed->abcd", N, N)
    associative = bool(np.array_equal(left, right))
    if not associative:
        failures.append("associativity fails")
    star = ring.star
    if star is None or sorted(star) != list(range(r)):
        return FusionReport(f1, False, False, associative, commutative, unital, False, None,
                            failures + ["no star permutation"])
    s = np.array(star)
    involution = bool(np.all(s[s] == np.arange(r)))
    if not involution:
        failures.append("star is not an involution")
    f3 = bool(np.array_equal(N[:, :, one], (s[:, None] == np.arange(r)[None, :]).astype(N.dtype)))
    if not f3:
        failures.append("F3: N_ab^1 != delta_{b, a*}")
    f2 = bool(s[one] == one and np.array_equal(N[np.ix_(s, s, s)], N))
    if not f2:
        failures.append("F2: star is not a ring endomorphism of the basis")
    return FusionReport(f1, f2, f3, associative, commutative, unital, involution, list(star), failures)
