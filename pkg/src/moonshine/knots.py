"""Knot diagrams, Wirtinger relations, and colourings by finite groups.

A crossing with over arc i, incoming under arc j, outgoing under arc k and
sign s imposes x_i^s x_j x_i^-s = x_k.  Counting solutions with values in a
finite group G counts homomorphisms from the knot group to G.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence


class PDFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class DiagramError(ValueError):
    pass


class GroupTableError(ValueError):
    pass


@dataclass(frozen=True)
class Crossing:
    over: int
    under_in: int
    under_out: int
    sign: int

    def to_text(self) -> str:
        s = "+" if self.sign > 0 else "-"
        return f"X{s} over={self.over} in={self.under_in} out={self.under_out}"


@dataclass(frozen=True)
class KnotDiagram:
    arc_count: int
    crossings: tuple[Crossing, ...]

    def __post_init__(self) -> None:
        if self.arc_count < 1:
            raise DiagramError("a diagram needs at least one arc")
        if not self.crossings:
            if self.arc_count != 1:
                raise DiagramError("a crossingless diagram has exactly one arc")
            return
        if len(self.crossings) != self.arc_count:
            raise DiagramError(f"{len(self.crossings)} crossings but {self.arc_count} arcs")
        seen_in: set[int] = set()
        seen_out: set[int] = set()
        for c in self.crossings:
            for a in (c.over, c.under_in, c.under_out):
                if not 0 <= a < self.arc_count:
                    raise DiagramError(f"arc {a} out of range 0..{self.arc_count - 1}")
            if c.sign not in (1, -1):
                raise DiagramError(f"crossing sign must be +1 or -1, got {c.sign}")
            if c.under_out in seen_out:
                raise DiagramError(f"arc {c.under_out} used twice as under_out")
            if c.under_in in seen_in:
                raise DiagramError(f"arc {c.under_in} used twice as under_in")
            seen_in.add(c.under_in)
            seen_out.add(c.under_out)

    def relabel(self, perm: Sequence[int]) -> "KnotDiagram":
        """Rename arc a to perm[a]."""
        if sorted(perm) != list(range(self.arc_count)):
            raise ValueError("relabelling must be a permutation of the arcs")
        return KnotDiagram(
            self.arc_count,
            tuple(Crossing(perm[c.over], perm[c.under_in], perm[c.under_out], c.sign) for c in self.crossings),
        )

    def mirror(self) -> "KnotDiagram":
        return KnotDiagram(
            self.arc_count, tuple(Crossing(c.over, c.under_in, c.under_out, -c.sign) for c in self.crossings)
        )

    def to_text(self) -> str:
        if not self.crossings:
            return "unknot\n"
        return "".join(c.to_text() + "\n" for c in self.crossings)


_CROSSING = re.compile(r"^X([+-])((?:\s+\w+=\S+)+)$")


def parse_pd(text: str) -> KnotDiagram:
    """Parse one crossing per line, ``X+ over=0 in=1 out=2``, or the single keyword ``unknot``."""
    crossings: list[Crossing] = []
    unknot_line = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "unknot":
            unknot_line = lineno
            continue
        m = _CROSSING.match(line)
        if not m:
            raise PDFormatError(f"expected 'X<sign> over=<a> in=<b> out=<c>', got {line!r}", lineno)
        fields = {}
        for token in m.group(2).split():
            key, _, value = token.partition("=")
            if key not in ("over", "in", "out") or key in fields:
                raise PDFormatError(f"unexpected or repeated field {key!r}", lineno)
            if not value.isdigit():
                raise PDFormatError(f"arc id must be a nonnegative integer, got {value!r}", lineno)
            fields[key] = int(value)
        if len(fields) != 3:
            raise PDFormatError("crossing needs over=, in= and out=", lineno)
        sign = 1 if m.group(1) == "+" else -1
        crossings.append(Crossing(fields["over"], fields["in"], fields["out"], sign))
    if unknot_line is not None and crossings:
        raise PDFormatError("'unknot' cannot be combined with crossings", unknot_line)
    if unknot_line is None and not crossings:
        raise PDFormatError("empty diagram; write 'unknot' for the crossingless circle")
    if not crossings:
        return KnotDiagram(1, ())
    arcs = {a for c in crossings for a in (c.over, c.under_in, c.under_out)}
    n = max(arcs) + 1
    if n != len(crossings):
        raise DiagramError(f"{len(crossings)} crossings but arc ids run to {n - 1}")
    return KnotDiagram(n, tuple(crossings))


def from_pd_code(code: Iterable[Sequence[int]]) -> KnotDiagram:
    """Convert the 4-tuple code X[i, j, k, l] (edges 1..2n, counterclockwise from the
    incoming under edge i) into arcs with explicit over/under data."""
    code = [tuple(x) for x in code]
    if not code:
        return KnotDiagram(1, ())
    m = 2 * len(code)
    nxt = {e: e % m + 1 for e in range(1, m + 1)}
    ends = {i for i, _, _, _ in code}
    # an arc starts at each outgoing under edge and runs until an incoming under edge
    arc_of: dict[int, int] = {}
    starts = sorted(k for _, _, k, _ in code)
    for arc, start in enumerate(starts):
        e = start
        while True:
            arc_of[e] = arc
            if e in ends:
                break
            e = nxt[e]
    if len(arc_of) != m:
        raise DiagramError("PD code does not describe a single closed component")
    crossings = []
    for i, j, k, l in code:
        if nxt[i] != k:
            raise DiagramError(f"under strand {i}->{k} is not consecutive")
        if nxt[j] == l:
            sign = -1
        elif nxt[l] == j:
            sign = 1
        else:
            raise DiagramError(f"over strand {j},{l} is not consecutive")
        crossings.append(Crossing(arc_of[j], arc_of[i], arc_of[k], sign))
    return KnotDiagram(len(code), tuple(crossings))


@dataclass(frozen=True, eq=False)
class CayleyTable:
    """Group multiplication table on indices 0..order-1; index 0 is the identity."""

    table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        n = len(self.table)
        if n == 0 or any(len(row) != n for row in self.table):
            raise GroupTableError("table must be square and nonempty")
        full = set(range(n))
        for a in range(n):
            if set(self.table[a]) != full or {self.table[b][a] for b in range(n)} != full:
                raise GroupTableError(f"row or column {a} is not a permutation")
            if self.table[0][a] != a or self.table[a][0] != a:
                raise GroupTableError("index 0 does not act as the identity")
        t = self.table
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                for c in range(n):
                    if t[ab][c] != t[a][t[b][c]]:
                        raise GroupTableError(f"associativity fails at ({a}, {b}, {c})")
        inv = tuple(next(b for b in range(n) if t[a][b] == 0) for a in range(n))
        object.__setattr__(self, "_inv", inv)

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def conj(self, g: int, x: int, sign: int = 1) -> int:
        """g^sign x g^-sign."""
        if sign < 0:
            g = self._inv[g]
        return self.table[self.table[g][x]][self._inv[g]]

    def to_csv(self) -> str:
        lines = [f"order={self.order}"]
        if self.names:
            lines.append("# " + ",".join(self.names))
        lines += [",".join(map(str, row)) for row in self.table]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_permutations(cls, perms: Sequence[Sequence[int]], names: Sequence[str] | None = None) -> "CayleyTable":
        """Table of a permutation group listed with the identity first; (p*q)(x) = p(q(x))."""
        index = {tuple(p): i for i, p in enumerate(perms)}
        table = tuple(
            tuple(index[tuple(p[x] for x in q)] for q in perms) for p in perms
        )
        return cls(table, tuple(names) if names else None)


def parse_cayley_csv(text: str) -> CayleyTable:
    """CSV of element indices after an ``order=<n>`` header; ``#`` starts a comment."""
    rows: list[tuple[int, ...]] = []
    order = None
    names = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("names:"):
                names = tuple(s.strip() for s in body[len("names:"):].split(","))
            continue
        if not line:
            continue
        if order is None:
            m = re.fullmatch(r"order\s*=\s*(\d+)", line)
            if not m:
                raise GroupTableError(f"line {lineno}: expected header 'order=<n>'")
            order = int(m.group(1))
            continue
        try:
            row = tuple(int(x) for x in line.split(","))
        except ValueError:
            raise GroupTableError(f"line {lineno}: non-integer entry in {line!r}") from None
        if len(row) != order or any(not 0 <= x < order for x in row):
            raise GroupTableError(f"line {lineno}: expected {order} indices in 0..{order - 1}")
        rows.append(row)
    if order is None:
        raise GroupTableError("missing 'order=<n>' header")
    if len(rows) != order:
        raise GroupTableError(f"expected {order} rows, found {len(rows)}")
    return CayleyTable(tuple(rows), names)


@dataclass(frozen=True, eq=False)
class ColourSet:
    """Allowed arc values; closed under conjugation by its own elements."""

    group: CayleyTable
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        elems = tuple(sorted(set(self.elements)))
        if not elems:
            raise ValueError("colour set is empty")
        if any(not 0 <= x < self.group.order for x in elems):
            raise ValueError("colour index out of range")
        object.__setattr__(self, "elements", elems)
        members = set(elems)
        for g in elems:
            for x in elems:
                if self.group.conj(g, x) not in members:
                    raise ValueError(f"colour set is not closed under conjugation: {g} . {x}")

    @classmethod
    def whole(cls, group: CayleyTable) -> "ColourSet":
        return cls(group, tuple(range(group.order)))


def _search(d: KnotDiagram, g: CayleyTable, colours: ColourSet) -> tuple[int, int]:
    n = d.arc_count
    allowed = colours.elements
    if not d.crossings:
        return len(allowed), 0
    allowed_set = set(allowed)
    # visit arcs along the knot so each crossing closes as early as possible
    by_in = {c.under_in: c for c in d.crossings}
    by_out = {c.under_out: c for c in d.crossings}
    order = []
    a = d.crossings[0].under_in
    while a not in order:
        order.append(a)
        a = by_in[a].under_out
    order += [x for x in range(n) if x not in order]
    pos = {a: i for i, a in enumerate(order)}
    # each crossing is checked when its last arc is assigned
    checks: list[list[Crossing]] = [[] for _ in range(n)]
    for c in d.crossings:
        checks[max(pos[c.over], pos[c.under_in], pos[c.under_out])].append(c)
    value = [-1] * n
    total = 0
    multi = 0

    def rec(i: int) -> None:
        nonlocal total, multi
        if i == n:
            total += 1
            if len(set(value)) > 1:
                multi += 1
            return
        arc = order[i]
        candidates = allowed
        # forward check: the outgoing arc of a crossing is fixed by its over and in arcs
        c = by_out[arc]
        if value[c.over] >= 0 and value[c.under_in] >= 0:
            v = g.conj(value[c.over], value[c.under_in], c.sign)
            candidates = (v,) if v in allowed_set else ()
        for v in candidates:
            value[arc] = v
            if all(g.conj(value[c.over], value[c.under_in], c.sign) == value[c.under_out] for c in checks[i]):
                rec(i + 1)
        value[arc] = -1

    rec(0)
    return total, multi


def count_homs(d: KnotDiagram, g: CayleyTable, colours: ColourSet | None = None) -> int:
    """Number of arc assignments into ``colours`` satisfying every crossing relation."""
    return _search(d, g, colours or ColourSet.whole(g))[0]


def count_surjective_flag(d: KnotDiagram, g: CayleyTable, colours: ColourSet | None = None) -> tuple[int, int]:
    """(all solutions, solutions using at least two distinct colours)."""
    return _search(d, g, colours or ColourSet.whole(g))


def count_colourings(d: KnotDiagram) -> int:
    """Classical 3-colourings: homomorphisms sending meridians to transpositions of S3."""
    g = load_group("s3")
    return count_homs(d, g, ColourSet(g, S3_TRANSPOSITIONS))


S3_TRANSPOSITIONS = (1, 2, 3)

_DATA = "moonshine.data"


def _read_asset(folder: str, name: str) -> str:
    return resources.files(_DATA).joinpath(folder, name).read_text()


def bundled_knots() -> list[str]:
    return sorted(p.name[:-3] for p in resources.files(_DATA).joinpath("knots").iterdir() if p.name.endswith(".pd"))


def load_knot(name_or_path: str | Path) -> KnotDiagram:
    """A bundled diagram by name (e.g. ``trefoil``) or a PD file path."""
    p = Path(name_or_path)
    if p.suffix == ".pd" and p.exists():
        return parse_pd(p.read_text())
    name = p.stem if p.suffix == ".pd" else str(name_or_path)
    if name not in bundled_knots():
        raise FileNotFoundError(f"no PD file or bundled diagram named {name_or_path!r}")
    return parse_pd(_read_asset("knots", name + ".pd"))


def load_group(name_or_path: str | Path) -> CayleyTable:
    """A bundled group table (``s3``, ``z3``, ``q8``) or a CSV file path."""
    p = Path(name_or_path)
    if p.suffix == ".csv" and p.exists():
        return parse_cayley_csv(p.read_text())
    name = p.stem if p.suffix == ".csv" else str(name_or_path).lower()
    try:
        return parse_cayley_csv(_read_asset("groups", name + ".csv"))
    except FileNotFoundError:
        raise FileNotFoundError(f"no CSV file or bundled group named {name_or_path!r}") from None
