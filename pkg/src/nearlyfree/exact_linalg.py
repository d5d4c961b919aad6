"""Exact scalars and dense exact linear algebra.

Two coefficient fields are supported: the rationals (``QQ``, backed by
:class:`fractions.Fraction`) and prime fields ``GF(p)`` with ``2**30 < p < 2**31``.
Prime-field elements are stored as plain ``int`` residues inside matrices; the
products of two residues fit in a signed 64-bit integer, which lets the
elimination run on numpy ``int64`` arrays without overflow.

Elimination over QQ works on sparse rows (``dict`` column -> value) because the
Jacobian matrices built upstream have very few nonzeros per row; elimination
over GF(p) is dense and vectorised.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import PrimeDisagreement

Rational = Fraction

# 30-bit primes just below 2**31, the sampling table for the modular fast path.
PRIME_TABLE = (
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549,
    2147483543, 2147483497, 2147483489, 2147483477, 2147483423, 2147483399,
    2147483353, 2147483323, 2147483269, 2147483249, 2147483237, 2147483179,
    2147483171, 2147483137, 2147483123, 2147483077, 2147483069, 2147483059,
    2147483053, 2147483033, 2147483029, 2147482951, 2147482949, 2147482943,
    2147482937, 2147482921,
)

# Matrices with more columns than this go through the two-prime path by default.
MODULAR_THRESHOLD = 200

GUARD_RETRIES = 3


class RationalField:
    """The field of rational numbers."""

    name = "QQ"
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def convert(self, value) -> Fraction:
        return Fraction(value)

    def inv(self, a):
        return 1 / a

    def normalize(self, a):
        return a

    def to_fraction(self, a) -> Fraction:
        return a

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField:
    """The prime field GF(p); elements are ints in ``range(p)``."""

    zero = 0
    one = 1

    def __init__(self, p: int):
        if p < 2:
            raise ValueError(f"invalid modulus {p}")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def convert(self, value) -> int:
        if isinstance(value, PrimeFieldElement):
            if value.p != self.p:
                raise ValueError("element belongs to a different prime field")
            return value.residue
        if isinstance(value, int):
            return value % self.p
        value = Fraction(value)
        den = value.denominator % self.p
        if den == 0:
            raise ZeroDivisionError(
                f"denominator {value.denominator} vanishes modulo {self.p}"
            )
        return value.numerator * pow(den, -1, self.p) % self.p

    def inv(self, a: int) -> int:
        return pow(a, -1, self.p)

    def normalize(self, a: int) -> int:
        return a % self.p

    def to_fraction(self, a) -> Fraction:
        """Symmetric lift of a residue to an integer."""
        a %= self.p
        return Fraction(a - self.p if a > self.p // 2 else a)

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = RationalField()
_PRIME_FIELDS: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _PRIME_FIELDS:
        _PRIME_FIELDS[p] = PrimeField(p)
    return _PRIME_FIELDS[p]


class PrimeFieldElement:
    """A standalone element of GF(p) with operator support."""

    __slots__ = ("residue", "p")

    def __init__(self, value, p: int):
        self.p = p
        self.residue = GF(p).convert(value)

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.p != self.p:
                raise ValueError("mixing elements of different prime fields")
            return other.residue
        return GF(self.p).convert(other)

    def __add__(self, other):
        return PrimeFieldElement(self.residue + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return PrimeFieldElement(self.residue - self._coerce(other), self.p)

    def __rsub__(self, other):
        return PrimeFieldElement(self._coerce(other) - self.residue, self.p)

    def __mul__(self, other):
        return PrimeFieldElement(self.residue * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElement(-self.residue, self.p)

    def inverse(self):
        if self.residue == 0:
            raise ZeroDivisionError("zero has no inverse")
        return PrimeFieldElement(pow(self.residue, -1, self.p), self.p)

    def __truediv__(self, other):
        return self * PrimeFieldElement(other, self.p).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return PrimeFieldElement(pow(self.residue, n, self.p), self.p)

    def __eq__(self, other):
        try:
            return self.residue == self._coerce(other)
        except (ValueError, ZeroDivisionError):
            return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.p))

    def __bool__(self):
        return self.residue != 0

    def __repr__(self):
        return f"{self.residue} (mod {self.p})"


@dataclass(frozen=True)
class ExactMatrix:
    """Dense row-major matrix over QQ or GF(p); entries are field-native values."""

    row_count: int
    col_count: int
    entries: tuple
    field: object = QQ

    def __post_init__(self):
        if len(self.entries) != self.row_count * self.col_count:
            raise ValueError("entries length must equal row_count * col_count")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field=QQ, col_count=None):
        rows = [list(r) for r in rows]
        if col_count is None:
            col_count = len(rows[0]) if rows else 0
        entries = []
        for r in rows:
            if len(r) != col_count:
                raise ValueError("ragged rows")
            entries.extend(field.convert(v) for v in r)
        return cls(len(rows), col_count, tuple(entries), field)

    @classmethod
    def zeros(cls, row_count, col_count, field=QQ):
        return cls(row_count, col_count, (field.zero,) * (row_count * col_count), field)

    def row(self, i: int) -> tuple:
        return self.entries[i * self.col_count:(i + 1) * self.col_count]

    def rows(self) -> list[tuple]:
        return [self.row(i) for i in range(self.row_count)]

    def sparse_rows(self) -> list[dict]:
        out = []
        for r in self.rows():
            out.append({j: v for j, v in enumerate(r) if v != 0})
        return out

    def transpose(self) -> "ExactMatrix":
        cols = [
            [self.entries[i * self.col_count + j] for i in range(self.row_count)]
            for j in range(self.col_count)
        ]
        return ExactMatrix(self.col_count, self.row_count,
                           tuple(v for c in cols for v in c), self.field)

    def apply(self, vector: Sequence) -> list:
        """Matrix-vector product ``m @ v``."""
        if len(vector) != self.col_count:
            raise ValueError("dimension mismatch")
        f = self.field
        out = []
        for r in self.rows():
            out.append(f.normalize(sum((a * b for a, b in zip(r, vector)), f.zero)))
        return out

    def over(self, field) -> "ExactMatrix":
        """Reduce a rational matrix to another field."""
        if field == self.field:
            return self
        src = self.field
        return ExactMatrix(
            self.row_count, self.col_count,
            tuple(field.convert(src.to_fraction(v)) for v in self.entries), field,
        )


# ---------------------------------------------------------------------------
# Elimination kernels


@dataclass
class Echelon:
    """Reduced row echelon form of a row space.

    ``rows[c]`` is the unique reduced basis vector with pivot ``c``: entry 1 at
    ``c`` and 0 at every other pivot column.
    """

    col_count: int
    field: object
    rows: dict  # pivot column -> sparse row dict

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def free_columns(self) -> list[int]:
        return [c for c in range(self.col_count) if c not in self.rows]

    def reduce(self, vec: dict) -> dict:
        """Unique representative of ``vec`` modulo the row space."""
        f = self.field
        out = dict(vec)
        for c in [c for c in vec if c in self.rows]:
            a = out.pop(c, 0)
            if a == 0:
                continue
            for j, v in self.rows[c].items():
                if j == c:
                    continue
                w = f.normalize(out.get(j, 0) - a * v)
                if w == 0:
                    out.pop(j, None)
                else:
                    out[j] = w
        return out


def _rref_sparse(rows: Iterable[dict], col_count: int, field) -> Echelon:
    pivots: dict[int, dict] = {}
    norm = field.normalize
    for row in rows:
        r = {c: v for c, v in row.items() if v != 0}
        for c in [c for c in r if c in pivots]:
            a = r.pop(c, 0)
            if a == 0:
                continue
            for j, v in pivots[c].items():
                if j == c:
                    continue
                w = norm(r.get(j, 0) - a * v)
                if w == 0:
                    r.pop(j, None)
                else:
                    r[j] = w
        if not r:
            continue
        c0 = min(r)
        inv = field.inv(r[c0])
        r = {j: norm(v * inv) for j, v in r.items()}
        for pr in pivots.values():
            a = pr.get(c0)
            if a is None:
                continue
            for j, v in r.items():
                w = norm(pr.get(j, 0) - a * v)
                if w == 0:
                    pr.pop(j, None)
                else:
                    pr[j] = w
        pivots[c0] = r
    return Echelon(col_count, field, pivots)


def _dense_array(rows: Sequence[dict], col_count: int, p: int) -> np.ndarray:
    a = np.zeros((len(rows), col_count), dtype=np.int64)
    for i, r in enumerate(rows):
        for j, v in r.items():
            a[i, j] = v % p
    return a


def _eliminate_mod_p(a: np.ndarray, p: int, reduce_above: bool):
    """In-place Gauss(-Jordan) elimination mod p; returns the pivot columns."""
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = a[r, c:] * inv % p
        below = r + 1 + np.flatnonzero(a[r + 1:, c])
        targets = below
        if reduce_above and r:
            above = np.flatnonzero(a[:r, c])
            if above.size:
                targets = np.concatenate([above, below])
        if targets.size:
            factors = a[targets, c][:, None]
            a[targets, c:] = (a[targets, c:] - factors * a[r, c:]) % p
        pivots.append(c)
        r += 1
    return pivots


def rref_rows(rows: Sequence[dict], col_count: int, field) -> Echelon:
    """Reduced echelon form of the span of sparse rows."""
    if isinstance(field, PrimeField) and rows and col_count:
        a = _dense_array(rows, col_count, field.p)
        pivots = _eliminate_mod_p(a, field.p, reduce_above=True)
        out = {}
        for i, c in enumerate(pivots):
            nz = np.flatnonzero(a[i])
            out[c] = {int(j): int(a[i, j]) for j in nz}
        return Echelon(col_count, field, out)
    return _rref_sparse(rows, col_count, field)


def rank_rows(rows: Sequence[dict], col_count: int, field) -> int:
    """Rank of the span of sparse rows (forward elimination only over GF(p))."""
    if not rows or not col_count:
        return 0
    if isinstance(field, PrimeField):
        a = _dense_array(rows, col_count, field.p)
        return len(_eliminate_mod_p(a, field.p, reduce_above=False))
    return _rref_sparse(rows, col_count, field).rank


def kernel_rows(rows: Sequence[dict], col_count: int, field) -> list[dict]:
    """Basis of the right null space, as sparse vectors."""
    ech = rref_rows(rows, col_count, field)
    basis = []
    for free in ech.free_columns():
        v = {free: field.one}
        for c, r in ech.rows.items():
            a = r.get(free)
            if a:
                v[c] = field.normalize(-a)
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# Public matrix API


def rank(m: ExactMatrix) -> int:
    return rank_rows(m.sparse_rows(), m.col_count, m.field)


def row_reduce(m: ExactMatrix) -> Echelon:
    return rref_rows(m.sparse_rows(), m.col_count, m.field)


def kernel_basis(m: ExactMatrix) -> list[list]:
    """Basis of ``{v : m @ v = 0}``; length is ``col_count - rank(m)``."""
    f = m.field
    out = []
    for v in kernel_rows(m.sparse_rows(), m.col_count, f):
        out.append([v.get(j, f.zero) for j in range(m.col_count)])
    return out


class PrimeSampler:
    """Reproducible uniform draws from :data:`PRIME_TABLE`."""

    def __init__(self, seed=0):
        self._rng = random.Random(seed)

    def draw(self) -> int:
        return self._rng.choice(PRIME_TABLE)

    def pair(self) -> tuple[int, int]:
        p, q = self._rng.sample(PRIME_TABLE, 2)
        return p, q


def modular_pair_rank(builder: Callable, p: int, q: int) -> int:
    rp = rank(builder(GF(p)))
    rq = rank(builder(GF(q)))
    if rp != rq:
        raise PrimeDisagreement(f"rank mod {p} is {rp} but rank mod {q} is {rq}")
    return rp


def rank_with_guard(builder: Callable, *, seed=0, threshold=MODULAR_THRESHOLD,
                    sampler: PrimeSampler | None = None, log: list | None = None) -> int:
    """Rank of a matrix that ``builder(field)`` can materialize over any field.

    Matrices with at most ``threshold`` columns are ranked over QQ. Larger ones
    are ranked modulo two distinct random primes; on disagreement the draw is
    repeated up to :data:`GUARD_RETRIES` times before falling back to QQ.
    ``log`` (if given) collects ``(p, q, outcome)`` tuples for every attempt.
    """
    probe = builder(QQ)
    if probe.col_count <= threshold or probe.row_count == 0:
        return rank(probe)
    sampler = sampler or PrimeSampler(seed)
    for _ in range(GUARD_RETRIES + 1):
        p, q = sampler.pair()
        try:
            r = modular_pair_rank(builder, p, q)
        except (PrimeDisagreement, ZeroDivisionError) as exc:
            if log is not None:
                log.append((p, q, type(exc).__name__))
            continue
        if log is not None:
            log.append((p, q, "agree"))
        return r
    if log is not None:
        log.append((None, None, "fallback-QQ"))
    return rank(probe)
