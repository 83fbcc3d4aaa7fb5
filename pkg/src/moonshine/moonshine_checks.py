"""Exact checks that low-order j and j^(1/3) coefficients split into sums of
irreducible dimensions of the Monster and of E8."""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Iterator, Sequence

from .modular_forms import j_cuberoot, jay

DEFAULT_CAP = 10_000

MONSTER_MULTS = ((1, 1), (1, 1, 1), (2, 2, 1, 1))
E8_MULTS = ((0, 1), (1, 1, 1), (1, 2, 1, 1))


class DecompositionCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class DimensionList:
    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        d = tuple(int(x) for x in self.dims)
        object.__setattr__(self, "dims", d)
        if not d or d[0] != 1:
            raise ValueError("dimension list must start with 1")
        if any(a >= b for a, b in zip(d, d[1:])):
            raise ValueError(f"dimensions must be strictly increasing: {d}")

    def __len__(self) -> int:
        return len(self.dims)

    def prefix(self, k: int) -> "DimensionList":
        return DimensionList(self.dims[:k])


def parse_dims(text: str) -> DimensionList:
    """One positive integer per line; ``#`` starts a comment."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not line.isdigit():
            raise ValueError(f"line {lineno}: expected a positive integer, got {line!r}")
        out.append(int(line))
    return DimensionList(tuple(out))


def load_dims(name_or_path: str | Path) -> DimensionList:
    """Bundled list (``monster`` or ``e8``) or a text file path."""
    p = Path(name_or_path)
    if p.exists():
        return parse_dims(p.read_text())
    text = resources.files("moonshine.data").joinpath("dims", f"{name_or_path}_dims.txt").read_text()
    return parse_dims(text)


def _as_dims(dims: DimensionList | Sequence[int]) -> DimensionList:
    return dims if isinstance(dims, DimensionList) else DimensionList(tuple(dims))


def verify_decomposition(value: int, dims: DimensionList | Sequence[int], mults: Sequence[int]) -> bool:
    """True iff sum(mults[i] * dims[i]) == value, in exact integers."""
    d = _as_dims(dims).dims
    if len(mults) != len(d):
        raise ValueError(f"{len(mults)} multiplicities for {len(d)} dimensions")
    if any(m < 0 for m in mults):
        return False
    return sum(m * x for m, x in zip(mults, d)) == value


def enumerate_decompositions(
    value: int, dims: DimensionList | Sequence[int], cap: int = DEFAULT_CAP
) -> list[list[int]]:
    """Every nonnegative solution of sum(m_i d_i) = value, in decreasing lexicographic order.

    Since d_0 = 1, each choice of the higher multiplicities fixes m_0.
    Raises DecompositionCapExceeded when there are more than ``cap`` solutions.
    """
    if value < 0:
        return []
    d = _as_dims(dims).dims

    def rec(i: int, remaining: int) -> Iterator[list[int]]:
        if i == 0:
            yield [remaining]
            return
        for m in range(remaining // d[i] + 1):
            for head in rec(i - 1, remaining - m * d[i]):
                yield head + [m]

    out = []
    for sol in rec(len(d) - 1, value):
        out.append(sol)
        if len(out) > cap:
            raise DecompositionCapExceeded(f"more than {cap} decompositions of {value}")
    out.sort(reverse=True)
    return out


@dataclass
class IdentityCheck:
    name: str
    value: int
    dims: list[int]
    mults: list[int]
    ok: bool

    def to_json(self) -> dict[str, Any]:
        return {"name": self.name, "value": self.value, "dims": self.dims, "mults": self.mults, "ok": self.ok}


@dataclass
class MoonshineReport:
    monster: list[IdentityCheck] = field(default_factory=list)
    e8: list[IdentityCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.monster + self.e8)

    def to_json(self) -> dict[str, Any]:
        return {
            "monster": [c.to_json() for c in self.monster],
            "e8": [c.to_json() for c in self.e8],
            "ok": self.ok,
        }


def _block(label: str, coeffs: Sequence[int], dims: DimensionList, table) -> list[IdentityCheck]:
    out = []
    for i, (value, mults) in enumerate(zip(coeffs, table), 1):
        sub = dims.dims[: len(mults)]
        ok = len(sub) == len(mults) and verify_decomposition(value, sub, mults)
        out.append(IdentityCheck(f"{label} q^{i}", value, list(sub), list(mults), ok))
    return out


def mckay_report(
    monster_dims: DimensionList | Sequence[int] | None = None,
    e8_dims: DimensionList | Sequence[int] | None = None,
) -> MoonshineReport:
    """Recompute j and j^(1/3), then check the three Monster and three E8 splittings."""
    monster = _as_dims(monster_dims) if monster_dims is not None else load_dims("monster")
    e8 = _as_dims(e8_dims) if e8_dims is not None else load_dims("e8")
    j = jay(4)
    j_coeffs = [int(j.coefficient(e)) for e in (1, 2, 3)]
    cube = j_cuberoot(3).relative_coefficients(4)
    cube_coeffs = [int(c) for c in cube[1:]]
    return MoonshineReport(
        monster=_block("j", j_coeffs, monster, MONSTER_MULTS),
        e8=_block("j^(1/3)", cube_coeffs, e8, E8_MULTS),
    )
