"""Graded invariants of the Milnor algebra M(f) = S/J_f of a plane curve.

Everything is computed degree by degree from the Macaulay matrices of the
Jacobian ideal: the rows of the degree-k matrix are the products u*f_x, u*f_y,
u*f_z for monomials u of degree k-d+1, written against :func:`monomial_basis`.

* ``m(f)_k`` is dim S_k minus the rank of that matrix; the same rank gives
  dim AR(f)_{k-d+1}, the relations a*f_x + b*f_y + c*f_z = 0.
* Graded Betti numbers are Koszul homology dimensions of (x, y, z) acting on
  M(f); the multiplication maps come from the reduced echelon forms.
* Jacobian module dimensions n_k = dim N(f)_k use the closed formula
  n_k = m_k + m_{T-k} - ms_k - tau, where ms is the Hilbert function of a
  smooth curve of the same degree and T = 3(d-2).

Large computations run modulo two random primes and must agree; see
:func:`guarded`.
"""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import asdict, dataclass, field as dc_field
from typing import Callable, Sequence

from . import exact_linalg as la
from .errors import (CrossCheckFailure, DegreeMismatch, ExponentMismatch,
                     InconsistentTable, NegativeDimension, NoPlateau,
                     PrimeDisagreement)
from .exact_linalg import GF, QQ, PrimeSampler
from .poly import Curve, HomPoly, dim_s, monomial_basis, monomial_index, partials


# ---------------------------------------------------------------------------
# Result types


@dataclass(frozen=True)
class HilbertProfile:
    d: int
    K: int
    values: tuple
    tau: int
    st: int

    def m(self, k: int) -> int:
        """m(f)_k for any k; values above K are the plateau value."""
        if k < 0:
            return 0
        if k > self.K:
            return self.tau
        return self.values[k]

    @property
    def plateau_at_boundary(self) -> bool:
        """True when stabilization begins exactly at K-2 (flagged in reports)."""
        return self.st >= self.K - 2


@dataclass(frozen=True)
class SmoothReference:
    d: int
    values: tuple
    T: int

    def ms(self, k: int) -> int:
        if 0 <= k <= self.T:
            return self.values[k]
        return 0


@dataclass(frozen=True)
class JacobianModuleDims:
    values: tuple  # n_k for 0 <= k <= T

    @property
    def total(self) -> int:
        return sum(self.values)

    @property
    def T(self) -> int:
        return len(self.values) - 1

    def n(self, k: int) -> int:
        return self.values[k] if 0 <= k < len(self.values) else 0

    def support(self) -> list:
        return [k for k, v in enumerate(self.values) if v]

    def is_symmetric(self) -> bool:
        return self.values == self.values[::-1]

    def is_block_unimodal(self) -> bool:
        """Nonzero entries form one contiguous block that rises then falls."""
        sup = self.support()
        if not sup:
            return True
        block = self.values[sup[0]:sup[-1] + 1]
        if 0 in block:
            return False
        i = 0
        while i + 1 < len(block) and block[i + 1] >= block[i]:
            i += 1
        while i + 1 < len(block) and block[i + 1] <= block[i]:
            i += 1
        return i == len(block) - 1


@dataclass(frozen=True)
class SyzygyVector:
    a: HomPoly
    b: HomPoly
    c: HomPoly

    @property
    def components(self):
        return (self.a, self.b, self.c)

    @property
    def degree(self) -> int:
        degs = {p.degree for p in self.components if not p.is_zero()}
        if len(degs) > 1:
            raise DegreeMismatch(f"syzygy components have degrees {sorted(degs)}")
        return degs.pop() if degs else 0


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers beta_{i,j} of M(f), stored sparsely."""

    entries: tuple  # sorted (i, j, value) with value > 0

    @classmethod
    def from_dict(cls, table: dict) -> "BettiTable":
        return cls(tuple(sorted((i, j, v) for (i, j), v in table.items() if v)))

    def get(self, i: int, j: int) -> int:
        for a, b, v in self.entries:
            if (a, b) == (i, j):
                return v
        return 0

    def row(self, i: int) -> dict:
        return {j: v for a, j, v in self.entries if a == i}

    def total(self, i: int) -> int:
        return sum(self.row(i).values())

    def degrees(self, i: int) -> list:
        """Twist degrees of F_i with multiplicity, ascending."""
        out = []
        for j, v in sorted(self.row(i).items()):
            out.extend([j] * v)
        return out

    def as_resolution(self) -> str:
        parts = []
        for i in (3, 2, 1, 0):
            row = self.row(i)
            if not row:
                continue
            terms = []
            for j, v in sorted(row.items()):
                t = f"S(-{j})" if j else "S"
                terms.append(t + (f"^{v}" if v > 1 else ""))
            parts.append(" + ".join(terms))
        return "0 -> " + " -> ".join(parts)


@dataclass(frozen=True)
class ResolutionShape:
    kind: str  # "Free", "NearlyFree" or "Other"
    exponents: tuple = ()
    b: int | None = None


@dataclass(frozen=True)
class Classification:
    kind: str  # "Smooth", "Free", "NearlyFree", "Neither"
    tau: int
    mdr: int | None
    ct: int | None
    st: int
    d1: int | None = None
    d2: int | None = None
    b: int | None = None
    almost: bool = False
    witness: tuple | None = None

    @property
    def exponents(self):
        if self.d1 is None:
            return None
        return (self.d1, self.d2)


# ---------------------------------------------------------------------------
# Smooth reference and the closed formula for N(f)


def smooth_reference(d: int) -> SmoothReference:
    """Coefficients of ((1 - t^{d-1}) / (1 - t))^3 up to T = 3(d-2)."""
    if d < 2:
        raise ValueError("degree must be at least 2")
    T = 3 * (d - 2)
    base = [1] * (d - 1)
    poly = [1]
    for _ in range(3):
        nxt = [0] * (len(poly) + len(base) - 1)
        for i, a in enumerate(poly):
            for j, b in enumerate(base):
                nxt[i + j] += a * b
        poly = nxt
    return SmoothReference(d, tuple(poly[:T + 1]), T)


def jacobian_module_dims(h: HilbertProfile) -> JacobianModuleDims:
    ref = smooth_reference(h.d)
    T = ref.T
    values = []
    for k in range(T + 1):
        n = h.m(k) + h.m(T - k) - ref.ms(k) - h.tau
        if n < 0:
            raise NegativeDimension(f"dim N(f)_{k} evaluated to {n}")
        values.append(n)
    return JacobianModuleDims(tuple(values))


# ---------------------------------------------------------------------------
# Degreewise linear algebra over one field


class MilnorAlgebra:
    """Cached degreewise data of M(f) over a fixed field."""

    def __init__(self, curve: Curve, field=QQ):
        self.curve = curve
        self.field = field
        self.d = curve.degree
        self.K = 3 * self.d - 3
        self.partials = [{m: field.convert(c) for m, c in g.terms.items()}
                         for g in partials(curve.f)]
        self._rank: dict = {}
        self._echelon: dict = {}
        self._ar_basis: dict = {}

    # Jacobian ideal ------------------------------------------------------
    def jacobian_rows(self, k: int) -> list:
        """Sparse rows of u*f_x, u*f_y, u*f_z for u in S_{k-d+1}, row index 3*u + i."""
        j = k - self.d + 1
        if j < 0:
            return []
        idx = monomial_index(k)
        rows = []
        for u in monomial_basis(j):
            for g in self.partials:
                rows.append({idx[(u[0] + m[0], u[1] + m[1], u[2] + m[2])]: c
                             for m, c in g.items()})
        return rows

    def rank_j(self, k: int) -> int:
        """rank of (J_f)_k as a subspace of S_k."""
        if k not in self._rank:
            if k in self._echelon:
                self._rank[k] = self._echelon[k].rank
            elif k < self.d - 1:
                self._rank[k] = 0
            elif isinstance(self.field, la.PrimeField):
                self._rank[k] = la.rank_rows(self.jacobian_rows(k), dim_s(k), self.field)
            else:
                self._rank[k] = self.echelon(k).rank
        return self._rank[k]

    def echelon(self, k: int) -> la.Echelon:
        if k not in self._echelon:
            self._echelon[k] = la.rref_rows(self.jacobian_rows(k), dim_s(k), self.field)
            self._rank[k] = self._echelon[k].rank
        return self._echelon[k]

    def m(self, k: int) -> int:
        return dim_s(k) - self.rank_j(k) if k >= 0 else 0

    def hilbert_profile(self) -> HilbertProfile:
        K = self.K
        values = tuple(self.m(k) for k in range(K + 1))
        tau = values[K]
        if not (values[K - 2] == values[K - 1] == tau):
            raise NoPlateau(
                f"m(f)_k does not stabilize by K={K}: last values {values[K - 2:]}"
                " (non-reduced input?)")
        st = K
        while st > 0 and values[st - 1] == tau:
            st -= 1
        return HilbertProfile(self.d, K, values, tau, st)

    # Syzygies ------------------------------------------------------------
    def ar_dim(self, j: int) -> int:
        if j < 0:
            return 0
        return 3 * dim_s(j) - self.rank_j(j + self.d - 1)

    def koszul_dim(self, j: int) -> int:
        """Dimension of the span of the Koszul relations in AR(f)_j."""
        e = j - self.d + 1
        if e < 0:
            return 0
        fx, fy, fz = self.partials
        neg = lambda g: {m: self.field.normalize(-c) for m, c in g.items()}
        gens = [(fy, neg(fx), {}), (fz, {}, neg(fx)), ({}, fz, neg(fy))]
        idx = monomial_index(j)
        s = dim_s(j)
        rows = []
        for u in monomial_basis(e):
            for gen in gens:
                row = {}
                for block, g in enumerate(gen):
                    for m, c in g.items():
                        row[block * s + idx[(u[0] + m[0], u[1] + m[1], u[2] + m[2])]] = c
                rows.append(row)
        return la.rank_rows(rows, 3 * s, self.field)

    def mdr(self) -> int | None:
        if self.hilbert_profile().tau == 0:
            return None
        for j in range(0, 3 * self.d):
            if self.ar_dim(j) > self.koszul_dim(j):
                return j
        raise CrossCheckFailure("no essential syzygy found below degree 3d")

    def ar_basis(self, j: int) -> list:
        """Basis of AR(f)_j as sparse vectors in S_j^3 (index block * dim S_j + monomial)."""
        if j in self._ar_basis:
            return self._ar_basis[j]
        k = j + self.d - 1
        rows = self.jacobian_rows(k)
        if not rows:
            self._ar_basis[j] = []
            return []
        cols = [dict() for _ in range(dim_s(k))]
        for r, row in enumerate(rows):
            for c, v in row.items():
                cols[c][r] = v
        kernel = la.kernel_rows(cols, len(rows), self.field)
        s = dim_s(j)
        # row index 3*u + i  ->  coordinate i*s + u
        out = [{(r % 3) * s + r // 3: v for r, v in vec.items()} for vec in kernel]
        self._ar_basis[j] = out
        return out

    def ar_generator_counts(self, top: int) -> dict:
        """Number of minimal generators of AR(f) in each degree j <= top."""
        counts = {}
        for j in range(0, top + 1):
            dim = self.ar_dim(j)
            if dim == 0:
                continue
            prev = self.ar_basis(j - 1) if j >= 1 else []
            sp, s = dim_s(j - 1), dim_s(j)
            idx = monomial_index(j)
            basis_prev = monomial_basis(j - 1) if j >= 1 else ()
            rows = []
            for vec in prev:
                for shift in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
                    row = {}
                    for pos, v in vec.items():
                        block, u = divmod(pos, sp)
                        mon = basis_prev[u]
                        row[block * s + idx[(mon[0] + shift[0], mon[1] + shift[1],
                                             mon[2] + shift[2])]] = v
                    rows.append(row)
            image = la.rank_rows(rows, 3 * s, self.field) if rows else 0
            if dim > image:
                counts[j] = dim - image
        return counts

    # Koszul homology -------------------------------------------------------
    def _standard(self, k: int):
        """Column indices of degree-k standard monomials and their positions."""
        if k < 0:
            return [], {}
        if k < self.d - 1:
            cols = list(range(dim_s(k)))
        else:
            cols = self.echelon(k).free_columns()
        return cols, {c: i for i, c in enumerate(cols)}

    def multiplication(self, k: int, var: int) -> list:
        """Matrix of multiplication by x/y/z from M(f)_k to M(f)_{k+1}; row per basis element."""
        cols, _ = self._standard(k)
        _, pos_next = self._standard(k + 1)
        basis_k = monomial_basis(k)
        idx_next = monomial_index(k + 1)
        ech = self.echelon(k + 1) if k + 1 >= self.d - 1 else None
        rows = []
        for c in cols:
            mon = list(basis_k[c])
            mon[var] += 1
            target = idx_next[tuple(mon)]
            if ech is None or target not in ech.rows:
                rows.append({pos_next[target]: self.field.one})
            else:
                rows.append({pos_next[j]: self.field.normalize(-v)
                             for j, v in ech.rows[target].items() if j != target})
        return rows

    def betti_numbers(self, top: int | None = None) -> dict:
        """beta_{i,j} = dim H_i of the Koszul complex of (x, y, z) on M(f), degree j."""
        top = self.K + 1 if top is None else top
        mult = {}

        def mul(k, var):
            if (k, var) not in mult:
                mult[k, var] = self.multiplication(k, var)
            return mult[k, var]

        dims = {k: len(self._standard(k)[0]) for k in range(-3, top + 1)}

        def diff_rank(i, j):
            # d_i : K_i(j) = M_{j-i}^{C(3,i)} -> K_{i-1}(j) = M_{j-i+1}^{C(3,i-1)}
            k = j - i
            if i < 1 or i > 3 or k < 0 or dims.get(k, 0) == 0 or dims.get(k + 1, 0) == 0:
                return 0
            tgt = dims[k + 1]
            neg = self.field.normalize
            rows = []
            if i == 1:
                for var in range(3):
                    rows.extend(mul(k, var))
                ncols = tgt
            elif i == 2:
                # e_xy, e_xz, e_yz -> blocks e_x, e_y, e_z
                pairs = [(0, 1), (0, 2), (1, 2)]
                for a, b in pairs:
                    ma, mb = mul(k, a), mul(k, b)
                    for ra, rb in zip(ma, mb):
                        row = {b * tgt + c: v for c, v in ra.items()}
                        for c, v in rb.items():
                            row[a * tgt + c] = neg(-v)
                        rows.append(row)
                ncols = 3 * tgt
            else:
                # e_xyz -> x e_yz - y e_xz + z e_xy ; blocks (xy=0, xz=1, yz=2)
                mx, my, mz = mul(k, 0), mul(k, 1), mul(k, 2)
                for rx, ry, rz in zip(mx, my, mz):
                    row = {2 * tgt + c: v for c, v in rx.items()}
                    row.update({1 * tgt + c: neg(-v) for c, v in ry.items()})
                    row.update({0 * tgt + c: v for c, v in rz.items()})
                    rows.append(row)
                ncols = 3 * tgt
            return la.rank_rows(rows, ncols, self.field)

        binom = (1, 3, 3, 1)
        table = {}
        for j in range(0, top + 1):
            ranks = {i: diff_rank(i, j) for i in range(1, 4)}
            for i in range(4):
                dim = binom[i] * dims.get(j - i, 0)
                h = dim - ranks.get(i, 0) - ranks.get(i + 1, 0)
                if h:
                    table[(i, j)] = h
        return table


# ---------------------------------------------------------------------------
# Field selection


_CACHE: OrderedDict = OrderedDict()
_CACHE_SIZE = 6


def algebra(curve: Curve, field=QQ) -> MilnorAlgebra:
    key = (curve.f, field)
    if key in _CACHE:
        _CACHE.move_to_end(key)
        return _CACHE[key]
    alg = MilnorAlgebra(curve, field)
    _CACHE[key] = alg
    if len(_CACHE) > _CACHE_SIZE:
        _CACHE.popitem(last=False)
    return alg


def prefers_rationals(curve: Curve, threshold: int = la.MODULAR_THRESHOLD) -> bool:
    """Whether the largest degreewise matrix is small enough to work over QQ."""
    return dim_s(3 * curve.degree - 2) <= threshold


@dataclass
class FieldUsage:
    """Provenance of a guarded computation."""

    field: str
    primes: tuple = ()
    seed: int = 0
    attempts: list = dc_field(default_factory=list)


def guarded(curve: Curve, fn: Callable, field=None, seed=0, usage: FieldUsage | None = None,
            threshold: int = la.MODULAR_THRESHOLD):
    """Evaluate ``fn(MilnorAlgebra)`` exactly.

    ``field`` may be a field object, or None for automatic choice: QQ for small
    degrees, otherwise two random primes whose results must agree (retried with
    fresh primes up to three times, then QQ).
    """
    usage = usage if usage is not None else FieldUsage("QQ", seed=seed)
    usage.seed = seed
    if field is not None:
        usage.field = repr(field)
        usage.primes = (field.p,) if isinstance(field, la.PrimeField) else ()
        return fn(algebra(curve, field))
    if prefers_rationals(curve, threshold):
        usage.field = "QQ"
        return fn(algebra(curve, QQ))
    sampler = PrimeSampler(seed)
    for _ in range(la.GUARD_RETRIES + 1):
        p, q = sampler.pair()
        try:
            rp = fn(algebra(curve, GF(p)))
            rq = fn(algebra(curve, GF(q)))
        except ZeroDivisionError:
            usage.attempts.append((p, q, "unlucky prime"))
            continue
        if rp == rq:
            usage.field = "GF(p)"
            usage.primes = (p, q)
            usage.attempts.append((p, q, "agree"))
            return rp
        usage.attempts.append((p, q, "disagree"))
    usage.field = "QQ"
    usage.attempts.append((None, None, "fallback-QQ"))
    return fn(algebra(curve, QQ))


# ---------------------------------------------------------------------------
# Module-level operations


def hilbert_profile(c: Curve, field=None, seed=0) -> HilbertProfile:
    return guarded(c, MilnorAlgebra.hilbert_profile, field, seed)


def ar_dims(c: Curve, j: int, field=None, seed=0) -> int:
    return guarded(c, lambda A: A.ar_dim(j), field, seed)


def mdr(c: Curve, field=None, seed=0) -> int | None:
    """Minimal degree of an essential syzygy; None for smooth curves."""
    return guarded(c, MilnorAlgebra.mdr, field, seed)


def ct_direct(h: HilbertProfile) -> int:
    """max q such that m(f)_k equals the smooth value for all k <= q."""
    ref = smooth_reference(h.d)
    q = -1
    while q + 1 <= h.K and h.m(q + 1) == ref.ms(q + 1):
        q += 1
    return q


def _ct(A: MilnorAlgebra) -> int:
    h = A.hilbert_profile()
    if h.tau == 0:
        raise ValueError("ct is defined here only for singular curves (tau > 0)")
    via_mdr = A.mdr() + A.d - 2
    direct = ct_direct(h)
    if via_mdr != direct:
        raise CrossCheckFailure(f"ct from mdr is {via_mdr} but direct value is {direct}")
    return via_mdr


def ct(c: Curve, field=None, seed=0) -> int:
    return guarded(c, _ct, field, seed)


def minimal_generator_degrees_AR(c: Curve, field=None, seed=0) -> list:
    """Degrees of a minimal generating set of AR(f) in degrees <= d, ascending."""
    def run(A):
        out = []
        for j, n in sorted(A.ar_generator_counts(A.d).items()):
            out.extend([j] * n)
        return out
    return guarded(c, run, field, seed)


def _hilbert_numerator(h: HilbertProfile, top: int) -> list:
    """Coefficients of (1-t)^3 * sum_k m_k t^k up to t^top."""
    m = [h.m(k) for k in range(top + 1)]
    out = []
    for j in range(top + 1):
        out.append(sum(c * m[j - i] for i, c in enumerate((1, -3, 3, -1)) if j - i >= 0))
    return out


def _betti(A: MilnorAlgebra) -> BettiTable:
    h = A.hilbert_profile()
    top = A.K + 1
    table = A.betti_numbers(top)
    numerator = _hilbert_numerator(h, top)
    for j in range(top + 1):
        alt = sum((-1) ** i * table.get((i, j), 0) for i in range(4))
        if alt != numerator[j]:
            raise InconsistentTable(
                f"Betti numbers disagree with the Hilbert series in degree {j}")
    return BettiTable.from_dict(table)


def betti_table(c: Curve, field=None, seed=0) -> BettiTable:
    return guarded(c, _betti, field, seed)


def resolution_shape(bt: BettiTable, d: int) -> ResolutionShape:
    b2, b3 = bt.degrees(2), bt.degrees(3)
    if len(b2) != len(b3) + 2:
        raise InconsistentTable(
            f"rank F_2 = {len(b2)} but rank F_3 = {len(b3)}; expected a difference of 2")
    exps = tuple(j - (d - 1) for j in b2)
    if not b3 and len(b2) == 2:
        return ResolutionShape("Free", exps)
    if len(b3) == 1 and len(b2) == 3:
        return ResolutionShape("NearlyFree", exps, sum(exps) - 2 * (d - 1))
    return ResolutionShape("Other")


def _classify(A: MilnorAlgebra) -> Classification:
    h = A.hilbert_profile()
    d = A.d
    if h.tau == 0:
        return Classification("Smooth", 0, None, None, h.st)
    n = jacobian_module_dims(h)
    d1 = A.mdr()
    ct_value = d1 + d - 2
    direct = ct_direct(h)
    if ct_value != direct:
        raise CrossCheckFailure(f"ct from mdr is {ct_value} but direct value is {direct}")
    common = dict(tau=h.tau, mdr=d1, ct=ct_value, st=h.st)
    if n.total == 0:
        d2 = d - 1 - d1
        if h.tau != (d - 1) ** 2 - d1 * d2:
            raise ExponentMismatch(
                f"free exponents ({d1},{d2}) predict tau={(d - 1) ** 2 - d1 * d2}, got {h.tau}")
        return Classification("Free", d1=d1, d2=d2, **common)
    if max(n.values) == 1:
        d2 = d - d1
        if h.tau != (d - 1) ** 2 - d1 * (d2 - 1) - 1:
            raise ExponentMismatch(
                f"nearly free exponents ({d1},{d2}) predict "
                f"tau={(d - 1) ** 2 - d1 * (d2 - 1) - 1}, got {h.tau}")
        almost = n.total == (1 if d % 2 == 0 else 2)
        return Classification("NearlyFree", d1=d1, d2=d2, b=d2 - d + 2, almost=almost,
                               **common)
    k = next(k for k, v in enumerate(n.values) if v >= 2)
    return Classification("Neither", witness=(k, n.values[k]), **common)


def classify(c: Curve, field=None, seed=0) -> Classification:
    return guarded(c, _classify, field, seed)


def verify_syzygy(c: Curve, r: SyzygyVector) -> bool:
    r.degree  # raises DegreeMismatch on inhomogeneous input
    fx, fy, fz = partials(c.f)
    return (r.a * fx + r.b * fy + r.c * fz).is_zero()


def verify_second_syzygy(c: Curve, r1: SyzygyVector, r2: SyzygyVector, r3: SyzygyVector,
                         R: Sequence[HomPoly]) -> bool:
    """Check v1*r1 + v2*r2 + v3*r3 = 0 componentwise for R = (v1, v2, v3)."""
    rs = (r1, r2, r3)
    degs = set()
    for v, r in zip(R, rs):
        if not v.is_zero():
            degs.add(v.degree + r.degree)
    if len(degs) > 1:
        raise DegreeMismatch(f"R and r_i give inconsistent total degrees {sorted(degs)}")
    for comp in range(3):
        total = HomPoly({})
        for v, r in zip(R, rs):
            term = v * r.components[comp]
            if not term.is_zero():
                total = total + term
        if not total.is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# Full report


@dataclass(frozen=True)
class JacobianReport:
    degree: int
    hilbert: HilbertProfile
    smooth: SmoothReference
    n_dims: JacobianModuleDims
    classification: Classification
    betti: BettiTable | None = None
    shape: ResolutionShape | None = None
    ar_generators: tuple | None = None
    checks: dict = dc_field(default_factory=dict)


def _report(A: MilnorAlgebra, with_betti: bool) -> JacobianReport:
    h = A.hilbert_profile()
    cls = _classify(A)
    n = jacobian_module_dims(h)
    bt = shape = gens = None
    if with_betti:
        bt = _betti(A)
        shape = resolution_shape(bt, A.d)
        gens = []
        for j, k in sorted(A.ar_generator_counts(A.d).items()):
            gens.extend([j] * k)
        gens = tuple(gens)
    return JacobianReport(A.d, h, smooth_reference(A.d), n, cls, bt, shape, gens,
                          consistency_checks(h, n, cls, bt, A.d))


def consistency_checks(h: HilbertProfile, n: JacobianModuleDims, cls: Classification,
                       bt: BettiTable | None, d: int) -> dict:
    """Identities that must hold for every reduced curve; each maps to a bool."""
    checks = {
        "plateau": True,
        "plateau_at_boundary": h.plateau_at_boundary,
        "symmetry": n.is_symmetric(),
        "unimodality": n.is_block_unimodal(),
    }
    if cls.kind != "Smooth":
        checks["ct_identity"] = cls.ct == ct_direct(h)
    if cls.kind == "Free":
        checks["tau_identity"] = cls.tau == (d - 1) ** 2 - cls.d1 * cls.d2
        checks["free_tau_bound"] = 4 * cls.tau >= 3 * (d - 1) ** 2
    if cls.kind == "NearlyFree":
        checks["tau_identity"] = cls.tau == (d - 1) ** 2 - cls.d1 * (cls.d2 - 1) - 1
        checks["st_identity"] = cls.st == cls.d2 + d - 2
        checks["ct_st_sum"] = cls.ct + cls.st == 3 * d - 4
        window = set(range(d + cls.d1 - 3, d + cls.d2 - 2))
        checks["window"] = set(n.support()) == window
    if bt is not None and cls.kind in ("Free", "NearlyFree"):
        shape = resolution_shape(bt, d)
        checks["resolution_shape"] = shape.kind == cls.kind and \
            shape.exponents[:2] == (cls.d1, cls.d2)
    return checks


def analyze(c: Curve, field=None, seed=0, betti: bool = True,
            usage: FieldUsage | None = None) -> JacobianReport:
    return guarded(c, lambda A: _report(A, betti), field, seed, usage)
