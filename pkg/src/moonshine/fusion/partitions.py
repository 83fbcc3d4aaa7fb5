from __future__ import annotations

from typing import Iterable, Sequence

Partition = tuple[int, ...]


def normalize(p: Iterable[int]) -> Partition:
    """Strip trailing zeros and check the parts are weakly decreasing and nonnegative."""
    parts = [int(x) for x in p]
    if any(x < 0 for x in parts):
        raise ValueError(f"partition has a negative part: {parts}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"partition is not weakly decreasing: {parts}")
    while parts and parts[-1] == 0:
        parts.pop()
    return tuple(parts)


def parse_partition(text: str) -> Partition:
    """``"3,2,1"`` -> (3, 2, 1); empty string or ``"()"`` is the empty partition."""
    text = text.strip().strip("()[]")
    if not text:
        return ()
    try:
        return normalize(int(x) for x in text.split(","))
    except ValueError as exc:
        raise ValueError(f"bad partition {text!r}: {exc}") from None


def padded(p: Sequence[int], n: int) -> list[int]:
    if len(p) > n:
        raise ValueError(f"partition {tuple(p)} has more than {n} rows")
    return list(p) + [0] * (n - len(p))


def contains(outer: Sequence[int], inner: Sequence[int]) -> bool:
    if len(inner) > len(outer):
        return False
    return all(o >= i for o, i in zip(outer, inner))


def to_dynkin(p: Sequence[int], n: int) -> tuple[int, ...]:
    """sl_n Dynkin labels of a partition with at most n rows (full columns drop out)."""
    q = padded(p, n)
    return tuple(q[i] - q[i + 1] for i in range(n - 1))


def from_dynkin(labels: Sequence[int]) -> Partition:
    """Partition with at most n-1 rows whose Dynkin labels are ``labels``."""
    parts = []
    total = 0
    for x in reversed(labels):
        total += x
        parts.append(total)
    return normalize(reversed(parts))


def sl_level(p: Sequence[int], n: int) -> int:
    """Level of the sl_n weight: first row minus n-th row."""
    return sum(to_dynkin(p, n))
