"""Modular data (S, T), its axioms, built-in examples, and Verlinde's formula."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .exact_arith import Cyclotomic, parse_rational

Matrix = tuple[tuple[Cyclotomic, ...], ...]

DEFAULT_TOL = 1e-6
DEFAULT_N_MAX = 10**4


class VerlindeError(ValueError):
    """Verlinde's formula produced a non-integral or negative value."""


class TOrderSearchError(RuntimeError):
    pass


class ModularDataFormatError(ValueError):
    pass


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, m, p = len(a), len(b), len(b[0])
    zero = Cyclotomic.rational(0)
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = zero
            for k in range(m):
                x, y = a[i][k], b[k][j]
                if x.is_zero() or y.is_zero():
                    continue
                acc = acc + x * y
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_diag_right(a: Matrix, d: Sequence[Cyclotomic]) -> Matrix:
    return tuple(tuple(x * d[j] for j, x in enumerate(row)) for row in a)


def identity_matrix(n: int) -> Matrix:
    one, zero = Cyclotomic.rational(1), Cyclotomic.rational(0)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def conj_transpose(a: Matrix) -> Matrix:
    return tuple(tuple(x.conj() for x in row) for row in zip(*a))


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


@dataclass(frozen=True)
class ModularData:
    """Labels, identity index, exact S and diagonal T, and a common conductor.

    ``S`` may be None for float-only data, in which case ``s_float`` /
    ``t_float`` hold the numeric matrices and validation is tolerance-based.
    """

    labels: tuple[str, ...]
    identity: int
    S: Matrix | None
    T: tuple[Cyclotomic, ...] | None
    conductor: int = 1
    s_float: np.ndarray | None = field(default=None, compare=False)
    t_float: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        r = len(self.labels)
        if r < 1:
            raise ValueError("modular data needs at least one label")
        if not 0 <= self.identity < r:
            raise ValueError("identity index out of range")
        if self.S is not None:
            if len(self.S) != r or any(len(row) != r for row in self.S):
                raise ValueError("S must be square with one row per label")
            for row in self.S:
                for x in row:
                    if self.conductor % x.conductor:
                        raise ValueError(
                            f"entry of conductor {x.conductor} outside Q(zeta_{self.conductor})"
                        )
        elif self.s_float is None:
            raise ValueError("either exact S or s_float is required")
        if self.T is not None:
            if len(self.T) != r:
                raise ValueError("T must have one entry per label")
        elif self.t_float is None:
            raise ValueError("either exact T or t_float is required")

    @property
    def rank(self) -> int:
        return len(self.labels)

    @property
    def exact(self) -> bool:
        return self.S is not None and self.T is not None

    def s_numeric(self) -> np.ndarray:
        if self.S is None:
            return np.asarray(self.s_float, dtype=complex)
        return np.array([[x.embed() for x in row] for row in self.S], dtype=complex)

    def t_numeric(self) -> np.ndarray:
        if self.T is None:
            return np.asarray(self.t_float, dtype=complex)
        return np.array([x.embed() for x in self.T], dtype=complex)

    # serialisation ----------------------------------------------------------

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "labels": list(self.labels),
            "identity": self.identity,
            "conductor": self.conductor,
        }
        if self.S is not None:
            out["S"] = [[x.to_terms() for x in row] for row in self.S]
        else:
            out["S_float"] = [[[z.real, z.imag] for z in row] for row in self.s_numeric()]
        if self.T is not None:
            out["T"] = [x.to_terms() for x in self.T]
        else:
            out["T_float"] = [[z.real, z.imag] for z in self.t_numeric()]
        return out

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> "ModularData":
        try:
            labels = tuple(str(x) for x in obj["labels"])
            identity = int(obj.get("identity", 0))
            n = int(obj.get("conductor", 1))
            S = T = s_float = t_float = None
            if "S" in obj:
                S = tuple(tuple(Cyclotomic.from_terms(n, e) for e in row) for row in obj["S"])
            elif "S_float" in obj:
                s_float = np.array([[complex(*z) for z in row] for row in obj["S_float"]])
            else:
                raise ModularDataFormatError("missing 'S' or 'S_float'")
            if "T" in obj:
                T = tuple(Cyclotomic.from_terms(n, e) for e in obj["T"])
            elif "T_float" in obj:
                t_float = np.array([complex(*z) for z in obj["T_float"]])
            else:
                raise ModularDataFormatError("missing 'T' or 'T_float'")
            return cls(labels, identity, S, T, n, s_float, t_float)
        except ModularDataFormatError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ModularDataFormatError(f"malformed modular data: {exc}") from None

    @classmethod
    def loads(cls, text: str) -> "ModularData":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ModularDataFormatError(f"line {exc.lineno}: {exc.msg}") from None
        return cls.from_json(obj)

    def dumps(self) -> str:
        return json.dumps(self.to_json())


# built-in data ---------------------------------------------------------------


def cyclic_data(n: int) -> ModularData:
    """Cyclic modular data: S_mm' = zeta_n^(-mm')/sqrt(n), T_mm = exp(pi i m^2/n - pi i/12).

    S uses the sign that makes S^2 = (ST)^3 hold with this T; the opposite
    sign differs by the charge conjugation m -> -m, and gives (ST)^3 = I.
    """
    if n <= 0 or n % 2:
        raise ValueError(f"cyclic modular data needs a positive even n, got {n}")
    conductor = _lcm(4 * n, 24)
    inv_sqrt = (Cyclotomic.sqrt_int(n) * Fraction(1, n)).lift(conductor)
    S = tuple(
        tuple((Cyclotomic.zeta(n, -m * mp) * inv_sqrt).lift(conductor) for mp in range(n))
        for m in range(n)
    )
    T = tuple(
        Cyclotomic.root_of_unity(Fraction(m * m, 2 * n) - Fraction(1, 24)).lift(conductor)
        for m in range(n)
    )
    return ModularData(tuple(str(m) for m in range(n)), 0, S, T, conductor)


S3_LABELS = ("(e,1)", "(e,sgn)", "(e,std)", "(C3,1)", "(C3,w)", "(C3,w2)", "(C2,+)", "(C2,-)")
_S3_SIX_S = (
    (1, 1, 2, 2, 2, 2, 3, 3),
    (1, 1, 2, 2, 2, 2, -3, -3),
    (2, 2, 4, -2, -2, -2, 0, 0),
    (2, 2, -2, 4, -2, -2, 0, 0),
    (2, 2, -2, -2, -2, 4, 0, 0),
    (2, 2, -2, -2, 4, -2, 0, 0),
    (3, -3, 0, 0, 0, 0, 3, -3),
    (3, -3, 0, 0, 0, 0, -3, 3),
)


def s3_data() -> ModularData:
    """Modular data of the finite group S3 (quantum double), identity label first."""
    S = tuple(tuple(Cyclotomic.rational(Fraction(x, 6), 6) for x in row) for row in _S3_SIX_S)
    one = Cyclotomic.rational(1, 6)
    T = (
        one, one, one, one,
        Cyclotomic.zeta(3, 1).lift(6), Cyclotomic.zeta(3, 2).lift(6),
        one, Cyclotomic.rational(-1, 6),
    )
    return ModularData(S3_LABELS, 0, S, T, 6)


def builtin(name: str) -> ModularData:
    """``"s3"`` or ``"cyclic:<n>"``."""
    if name == "s3":
        return s3_data()
    if name.startswith("cyclic:"):
        return cyclic_data(int(name.split(":", 1)[1]))
    raise ValueError(f"unknown built-in modular data {name!r}")


# axioms ----------------------------------------------------------------------


@dataclass
class AxiomReport:
    M1: bool
    M2: bool
    M3: bool
    M4: bool
    T_order: int | None
    self_duality: str = "unchecked"
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.M1 and self.M2 and self.M3 and self.M4

    def to_json(self) -> dict[str, Any]:
        return asdict(self)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def t_order(d: ModularData, n_max: int = DEFAULT_N_MAX, tol: float = DEFAULT_TOL) -> int | None:
    """Least N with T^N = I, or None when T has no finite order.

    Roots of unity in Q(zeta_c) have order dividing lcm(c, 2), so only those
    divisors are candidates.
    """
    if d.T is not None:
        bound = _lcm(d.conductor, 2)
        candidates = _divisors(bound)
        for N in candidates:
            if N > n_max:
                raise TOrderSearchError(f"T-order search exceeded N_max={n_max}")
            if all(t**N == 1 for t in d.T):
                return N
        return None
    t = d.t_numeric()
    if np.any(np.abs(np.abs(t) - 1) > tol):
        return None
    for N in range(1, n_max + 1):
        if np.all(np.abs(t**N - 1) < tol):
            return N
    raise TOrderSearchError(f"T-order search exceeded N_max={n_max}")


def _m1_exact(d: ModularData) -> bool:
    S = d.S
    return mat_eq(S, transpose(S)) and mat_eq(mat_mul(S, conj_transpose(S)), identity_matrix(d.rank))


def _st_cubed(S: Matrix, T: Sequence[Cyclotomic]) -> Matrix:
    st = mat_diag_right(S, T)
    return mat_mul(mat_mul(st, st), st)


def _m3_exact(d: ModularData) -> bool:
    return mat_eq(mat_mul(d.S, d.S), _st_cubed(d.S, d.T))


def _positive_column(values: np.ndarray, tol: float) -> bool:
    """All entries share one phase (Perron-Frobenius weakening of M2)."""
    if np.any(np.abs(values) < tol):
        return False
    phases = values / np.abs(values)
    return bool(np.all(np.abs(phases - phases[0]) < tol))


def validate_axioms(d: ModularData, tol: float = DEFAULT_TOL, n_max: int = DEFAULT_N_MAX) -> AxiomReport:
    """Check M1-M4; M1-M3 exactly for exact data, M4 numerically via Verlinde."""
    notes: list[str] = []
    order = t_order(d, n_max, tol)
    s_num = d.s_numeric()
    t_num = d.t_numeric()
    r = d.rank
    if d.exact:
        m1 = _m1_exact(d) and order is not None
        m3 = _m3_exact(d)
        row = d.S[d.identity]
        m2 = all(x == x.conj() and x.embed().real > 0 for x in row)
    else:
        notes.append("float data: M1-M3 checked to tolerance only")
        unitary = np.allclose(s_num @ s_num.conj().T, np.eye(r), atol=tol)
        m1 = unitary and np.allclose(s_num, s_num.T, atol=tol) and order is not None
        st = s_num * t_num[None, :]
        m3 = bool(np.allclose(s_num @ s_num, st @ st @ st, atol=tol))
        row = s_num[d.identity]
        m2 = bool(np.all(np.abs(row.imag) < tol) and np.all(row.real > tol))
    if not m2:
        weak = any(_positive_column(s_num[:, j], tol) for j in range(r))
        notes.append(
            "M2 fails literally; "
            + ("some column has constant phase (Perron-Frobenius weakening holds)" if weak else "no constant-phase column")
        )
    try:
        verlinde(d, tol)
        m4 = True
    except VerlindeError as exc:
        m4 = False
        notes.append(f"M4: {exc}")
    return AxiomReport(bool(m1), bool(m2), bool(m3), m4, order, "unchecked", notes)


def verlinde(d: ModularData, tol: float = DEFAULT_TOL) -> np.ndarray:
    """N[a, b, c] = sum_i S_ai S_bi conj(S_ci) / S_1i, rounded to integers.

    Raises VerlindeError when a value is farther than ``tol`` from a
    nonnegative integer, or when some S_1i vanishes.
    """
    s = d.s_numeric()
    first = s[d.identity]
    if np.any(np.abs(first) < 1e-12):
        raise VerlindeError("S has a vanishing entry in the identity row")
    # einsum over i: S_ai S_bi conj(S_ci) / S_1i
    raw = np.einsum("ai,bi,ci->abc", s, s / first[None, :], s.conj())
    rounded = np.rint(raw.real)
    err = np.max(np.abs(raw - rounded)) if raw.size else 0.0
    if err > tol:
        raise VerlindeError(f"Verlinde values are not integral (max deviation {err:.3g})")
    if np.any(rounded < 0):
        raise VerlindeError("Verlinde formula produced negative values")
    return rounded.astype(np.int64)


def sl2z_relations_check(d: ModularData) -> bool:
    """S^2 = (ST)^3 and S^4 = I, exactly."""
    if not d.exact:
        raise ValueError("exact S and T are required")
    s2 = mat_mul(d.S, d.S)
    return mat_eq(s2, _st_cubed(d.S, d.T)) and mat_eq(mat_mul(s2, s2), identity_matrix(d.rank))


def charge_conjugation(d: ModularData) -> list[int] | None:
    """The permutation given by S^2, or None if S^2 is not a permutation matrix."""
    s = d.s_numeric()
    s2 = s @ s
    perm = []
    for a in range(d.rank):
        hits = np.nonzero(np.abs(s2[a]) > 0.5)[0]
        if len(hits) != 1 or abs(s2[a, hits[0]] - 1) > 1e-9:
            return None
        perm.append(int(hits[0]))
    return perm


def with_scaled_s(d: ModularData, factor: Fraction | int) -> ModularData:
    S = tuple(tuple(x * Fraction(factor) for x in row) for row in d.S)
    return ModularData(d.labels, d.identity, S, d.T, d.conductor)


def parse_modular_data(text: str) -> ModularData:
    return ModularData.loads(text)


__all__ = [
    "AxiomReport",
    "ModularData",
    "ModularDataFormatError",
    "TOrderSearchError",
    "VerlindeError",
    "builtin",
    "charge_conjugation",
    "cyclic_data",
    "parse_rational",
    "s3_data",
    "sl2z_relations_check",
    "t_order",
    "validate_axioms",
    "verlinde",
]
