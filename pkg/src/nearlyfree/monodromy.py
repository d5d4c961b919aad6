"""Local monodromy of plane curve cusps, kept in cyclotomic form.

A characteristic polynomial is stored as multiplicities of cyclotomic factors
Phi_k, so eigenvalue-order queries are dictionary lookups. Expansion to integer
coefficients is only used for display and degree checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import NegativeMultiplicity


def _divisors(n: int) -> list:
    small, large = [], []
    for k in range(1, math.isqrt(n) + 1):
        if n % k == 0:
            small.append(k)
            if k != n // k:
                large.append(n // k)
    return small + large[::-1]


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic(k: int) -> tuple:
    """Integer coefficients of Phi_k, lowest degree first."""
    num = [-1] + [0] * (k - 1) + [1]
    for e in _divisors(k)[:-1]:
        num = _exact_divide(num, list(cyclotomic(e)))
    return tuple(num)


def _exact_divide(a: list, b: list) -> list:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        q[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    if any(a):
        raise ArithmeticError("division is not exact")
    return q


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


@dataclass(frozen=True)
class PuiseuxSequence:
    pairs: tuple

    def __post_init__(self):
        pairs = tuple((int(m), int(n)) for m, n in self.pairs)
        if not pairs:
            raise ValueError("a Puiseux sequence needs at least one pair")
        for m, n in pairs:
            if m < 1 or n < 2:
                raise ValueError(f"invalid Puiseux pair ({m}, {n}): need m >= 1, n >= 2")
            if math.gcd(m, n) != 1:
                raise ValueError(f"Puiseux pair ({m}, {n}) is not coprime")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def parse(cls, text: str) -> "PuiseuxSequence":
        """Read pairs written as ``"m1,n1;m2,n2"``."""
        pairs = []
        for chunk in text.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            parts = chunk.split(",")
            if len(parts) != 2:
                raise ValueError(f"malformed pair {chunk!r}")
            pairs.append((int(parts[0]), int(parts[1])))
        return cls(tuple(pairs))

    @property
    def g(self) -> int:
        return len(self.pairs)

    @property
    def convention_sensitive(self) -> bool:
        """With two or more pairs the m/n roles in Le's formula matter."""
        return self.g >= 2


@dataclass(frozen=True)
class CyclotomicProduct:
    """prod Phi_k^{e_k}, with ``multiplicities`` as sorted (k, e_k) items, e_k > 0."""

    multiplicities: tuple

    @classmethod
    def from_dict(cls, mult: dict) -> "CyclotomicProduct":
        bad = {k: e for k, e in mult.items() if e < 0}
        if bad:
            raise NegativeMultiplicity(f"negative cyclotomic multiplicities {bad}")
        return cls(tuple(sorted((k, e) for k, e in mult.items() if e > 0)))

    def as_dict(self) -> dict:
        return dict(self.multiplicities)

    def multiplicity(self, k: int) -> int:
        return self.as_dict().get(k, 0)

    @property
    def degree(self) -> int:
        return sum(e * euler_phi(k) for k, e in self.multiplicities)

    def orders(self) -> list:
        return [k for k, _ in self.multiplicities]

    def expand(self) -> list:
        """Integer coefficients, lowest degree first."""
        out = [1]
        for k, e in self.multiplicities:
            for _ in range(e):
                out = _poly_mul(out, cyclotomic(k))
        return out

    def __mul__(self, other: "CyclotomicProduct") -> "CyclotomicProduct":
        mult = self.as_dict()
        for k, e in other.multiplicities:
            mult[k] = mult.get(k, 0) + e
        return CyclotomicProduct.from_dict(mult)

    def __str__(self):
        if not self.multiplicities:
            return "1"
        return "*".join(f"Phi_{k}" + (f"^{e}" if e > 1 else "") for k, e in self.multiplicities)


def _p_factor(ell: int, n: int, nu: int) -> dict:
    """P_{ell,n}(t^nu) as cyclotomic multiplicities.

    Uses t^m - 1 = prod_{k | m} Phi_k on each of the four binomials.
    """
    mult = {}
    for m, sign in ((ell * n * nu, 1), (nu, 1), (ell * nu, -1), (n * nu, -1)):
        for k in _divisors(m):
            mult[k] = mult.get(k, 0) + sign
    return mult


def le_delta(ps: PuiseuxSequence) -> CyclotomicProduct:
    """Characteristic polynomial of the local monodromy of a cusp.

    Factors P_{l_i,n_i}(t^{nu_{i+1}}) with l_1 = m_1,
    l_i = m_i + n_i (l_{i-1} n_{i-1} - m_{i-1}) and nu_i = n_i ... n_g.
    Pairs are used in the given order.
    """
    pairs = ps.pairs
    g = len(pairs)
    nus = [1] * (g + 2)
    for i in range(g, 0, -1):
        nus[i] = pairs[i - 1][1] * nus[i + 1]
    total: dict = {}
    ell_prev = None
    for i, (m, n) in enumerate(pairs, start=1):
        if i == 1:
            ell = m
        else:
            m_prev, n_prev = pairs[i - 2]
            ell = m + n * (ell_prev * n_prev - m_prev)
        factor = _p_factor(ell, n, nus[i + 1])
        if factor.get(1, 0) != 0 or factor.get(2, 0) != 0:
            raise NegativeMultiplicity(
                f"factor for pair ({m}, {n}) has a root at 1 or -1: {factor}")
        for k, e in factor.items():
            total[k] = total.get(k, 0) + e
        ell_prev = ell
    return CyclotomicProduct.from_dict(total)


def has_eigenvalue_of_order(delta: CyclotomicProduct, d: int) -> bool:
    if d < 1:
        raise ValueError("order must be positive")
    return delta.multiplicity(d) > 0


@dataclass(frozen=True)
class HypothesisVerdict:
    passed: bool
    reason: str  # "even", "orders" or "fail"
    offending: tuple = ()

    def __str__(self):
        if self.passed:
            return f"Pass({self.reason})"
        return f"Fail({', '.join(str(i) for i in self.offending)})"


def order_hypothesis(d: int, cusps: Iterable[PuiseuxSequence]) -> HypothesisVerdict:
    """Either d is even, or no cusp has a monodromy eigenvalue of order d.

    ``offending`` lists the indices of the cusps that break the order condition.
    """
    if d % 2 == 0:
        return HypothesisVerdict(True, "even")
    bad = tuple(i for i, ps in enumerate(cusps) if has_eigenvalue_of_order(le_delta(ps), d))
    if bad:
        return HypothesisVerdict(False, "fail", bad)
    return HypothesisVerdict(True, "orders")


def fibonacci(j: int) -> int:
    if j < 0:
        raise ValueError("index must be nonnegative")
    a, b = 0, 1
    for _ in range(j):
        a, b = b, a + b
    return a


def catalan_check(j: int) -> bool:
    """a_j^2 - a_{j-2} a_{j+2} == (-1)^j."""
    if j < 2:
        raise ValueError("index must be at least 2")
    return fibonacci(j) ** 2 - fibonacci(j - 2) * fibonacci(j + 2) == (-1) ** j


@dataclass(frozen=True)
class UnicuspidalCase:
    case: int
    j: int | None = None

    def __str__(self):
        return f"case {self.case}" + (f" (j={self.j})" if self.j is not None else "")


SPORADIC = {(3, 22, 8): 5, (6, 43, 16): 6}


def classify_unicuspidal(a: int, b: int, d: int) -> UnicuspidalCase | None:
    """Which realizable family the triple (a, b, d) belongs to, if any."""
    if d == a + 1 and b == d:
        return UnicuspidalCase(1)
    if d % 2 == 0 and a * 2 == d and b == 2 * d - 1:
        return UnicuspidalCase(2)
    j = 5
    while fibonacci(j) <= b:
        ajm2, aj = fibonacci(j - 2), fibonacci(j)
        if (a, b, d) == (ajm2 ** 2, aj ** 2, ajm2 * aj):
            return UnicuspidalCase(3, j)
        j += 2
    j = 5
    while fibonacci(j) <= b:
        if (a, b, d) == (fibonacci(j - 2), fibonacci(j + 2), fibonacci(j)):
            return UnicuspidalCase(4, j)
        j += 2
    if (a, b, d) in SPORADIC:
        return UnicuspidalCase(SPORADIC[(a, b, d)])
    return None


def realizable_triples(max_degree: int) -> list:
    """All (a, b, d, case) with 3 <= d <= max_degree, enumerated family by family."""
    out = []
    for d in range(3, max_degree + 1):
        out.append((d - 1, d, d, 1))
    for d in range(4, max_degree + 1, 2):
        out.append((d // 2, 2 * d - 1, d, 2))
    j = 5
    while fibonacci(j - 2) * fibonacci(j) <= max_degree:
        out.append((fibonacci(j - 2) ** 2, fibonacci(j) ** 2, fibonacci(j - 2) * fibonacci(j), 3))
        j += 2
    j = 5
    while fibonacci(j) <= max_degree:
        out.append((fibonacci(j - 2), fibonacci(j + 2), fibonacci(j), 4))
        j += 2
    for (a, b, d), case in SPORADIC.items():
        if d <= max_degree:
            out.append((a, b, d, case))
    return sorted(out, key=lambda t: (t[2], t[3], t[0]))
