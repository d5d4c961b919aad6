"""Buchberger's algorithm for small ideals in two or three variables.

Polynomials are plain dicts mapping exponent tuples to field-native
coefficients (see :mod:`nearlyfree.exact_linalg` for the fields). Pair
selection uses the sugar strategy and pairs are pruned with the
Gebauer-Moeller criteria.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .exact_linalg import QQ
from .poly import HomPoly

Infinite = math.inf


@dataclass(frozen=True)
class TermOrder:
    """Graded reverse lexicographic order.

    ``priority`` lists variable indices from the largest variable to the
    smallest; the default ``(0, 1, 2)`` means x > y > z.
    """

    nvars: int = 3
    priority: tuple | None = None
    kind: str = "grevlex"

    def __post_init__(self):
        if self.kind != "grevlex":
            raise ValueError(f"unsupported term order {self.kind!r}")
        if self.priority is None:
            object.__setattr__(self, "priority", tuple(range(self.nvars)))
        if sorted(self.priority) != list(range(self.nvars)):
            raise ValueError("priority must be a permutation of the variables")

    def key(self, m):
        return (sum(m), tuple(-m[i] for i in reversed(self.priority)))


def _lcm(a, b):
    return tuple(max(u, v) for u, v in zip(a, b))


def _divides(a, b):
    return all(u <= v for u, v in zip(a, b))


def _coprime(a, b):
    return all(u == 0 or v == 0 for u, v in zip(a, b))


def leading_monomial(p: dict, order: TermOrder):
    return max(p, key=order.key)


def _monic(p: dict, order: TermOrder, fld):
    lm = leading_monomial(p, order)
    inv = fld.inv(p[lm])
    return {m: fld.normalize(c * inv) for m, c in p.items()}


def _sub_scaled(target: dict, src: dict, coef, shift, fld):
    """target -= coef * x^shift * src, in place."""
    norm = fld.normalize
    for m, c in src.items():
        mm = tuple(u + v for u, v in zip(m, shift))
        w = norm(target.get(mm, 0) - coef * c)
        if w == 0:
            target.pop(mm, None)
        else:
            target[mm] = w


def reduce_full(p: dict, basis: Sequence[tuple], order: TermOrder, fld) -> dict:
    """Full normal form of p by monic polynomials given as (lm, poly) pairs."""
    p = dict(p)
    rem: dict = {}
    key = order.key
    while p:
        lm = max(p, key=key)
        c = p[lm]
        for glm, g in basis:
            if _divides(glm, lm):
                shift = tuple(u - v for u, v in zip(lm, glm))
                _sub_scaled(p, g, c, shift, fld)
                break
        else:
            rem[lm] = c
            del p[lm]
    return rem


@dataclass
class GroebnerBasis:
    generators: list
    order: TermOrder
    field: object = QQ
    leading: list = dc_field(default_factory=list)
    degree_bound: int | None = None

    def __post_init__(self):
        if not self.leading:
            self.leading = [leading_monomial(g, self.order) for g in self.generators]

    @property
    def nvars(self):
        return self.order.nvars


def _spoly(f, flm, g, glm, fld):
    l = _lcm(flm, glm)
    out = {}
    sf = tuple(u - v for u, v in zip(l, flm))
    sg = tuple(u - v for u, v in zip(l, glm))
    for m, c in f.items():
        out[tuple(u + v for u, v in zip(m, sf))] = c
    _sub_scaled(out, g, fld.one, sg, fld)
    return out


def _is_homogeneous(polys):
    return all(len({sum(m) for m in p}) <= 1 for p in polys)


def buchberger(gens: Iterable[dict], order: TermOrder | None = None, field=QQ,
               degree_bound: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    For homogeneous generators ``degree_bound`` truncates the computation: the
    result is then a Groebner basis up to that degree only, which is enough for
    Hilbert function values in degrees <= degree_bound.
    """
    fld = field
    gens = [{m: fld.convert(c) for m, c in g.items()} for g in gens]
    gens = [{m: c for m, c in g.items() if c != 0} for g in gens]
    gens = [g for g in gens if g]
    if not gens:
        raise ValueError("buchberger needs at least one nonzero generator")
    nvars = len(next(iter(gens[0])))
    order = order or TermOrder(nvars)
    if degree_bound is not None and not _is_homogeneous(gens):
        raise ValueError("degree_bound requires homogeneous generators")

    polys: list[dict] = []
    lms: list = []
    sugar: list[int] = []
    active: list[int] = []
    pairs: list = []
    counter = itertools.count()

    def pair_sugar(i, j):
        l = _lcm(lms[i], lms[j])
        dl = sum(l)
        return max(sugar[i] + dl - sum(lms[i]), sugar[j] + dl - sum(lms[j]))

    def add(h: dict, s: int):
        nonlocal active, pairs
        h = _monic(h, order, fld)
        k = len(polys)
        polys.append(h)
        hlm = leading_monomial(h, order)
        lms.append(hlm)
        sugar.append(s)
        # Gebauer-Moeller update
        cand = [(g, _lcm(lms[g], hlm)) for g in active]
        keep = []
        while cand:
            g, l = cand.pop()
            if _coprime(lms[g], hlm) or not any(
                    _divides(l2, l) for _, l2 in itertools.chain(cand, keep)):
                keep.append((g, l))
        new_pairs = [(g, l) for g, l in keep if not _coprime(lms[g], hlm)]
        old = []
        for entry in pairs:
            _, _, i, j, l = entry
            if _divides(hlm, l) and _lcm(lms[i], hlm) != l and _lcm(lms[j], hlm) != l:
                continue
            old.append(entry)
        for g, l in new_pairs:
            old.append((pair_sugar(g, k), next(counter), g, k, l))
        heapq.heapify(old)
        pairs = old
        active = [g for g in active if not _divides(hlm, lms[g])] + [k]

    for g in sorted(gens, key=lambda p: order.key(leading_monomial(p, order))):
        red = reduce_full(g, [(lms[i], polys[i]) for i in active], order, fld)
        if red:
            add(red, max(sum(m) for m in g))

    while pairs:
        s, _, i, j, l = heapq.heappop(pairs)
        if degree_bound is not None and sum(l) > degree_bound:
            continue
        sp = _spoly(polys[i], lms[i], polys[j], lms[j], fld)
        red = reduce_full(sp, [(lms[a], polys[a]) for a in active], order, fld)
        if red:
            add(red, s)

    # interreduce
    basis = [polys[i] for i in active]
    basis.sort(key=lambda p: order.key(leading_monomial(p, order)))
    minimal = []
    for p in basis:
        lm = leading_monomial(p, order)
        if not any(_divides(leading_monomial(q, order), lm) for q in minimal):
            minimal.append(p)
    reduced = []
    for idx, p in enumerate(minimal):
        lm = leading_monomial(p, order)
        others = [(leading_monomial(q, order), q) for k, q in enumerate(minimal) if k != idx]
        tail = dict(p)
        c = tail.pop(lm)
        tail = reduce_full(tail, others, order, fld)
        tail[lm] = c
        reduced.append(_monic(tail, order, fld))
    reduced.sort(key=lambda p: order.key(leading_monomial(p, order)))
    return GroebnerBasis(reduced, order, fld, degree_bound=degree_bound)


def normal_form(p: dict, gb: GroebnerBasis) -> dict:
    fld = gb.field
    p = {m: fld.convert(c) for m, c in p.items()}
    p = {m: c for m, c in p.items() if c != 0}
    return reduce_full(p, list(zip(gb.leading, gb.generators)), gb.order, fld)


def s_polynomials_reduce_to_zero(gb: GroebnerBasis) -> bool:
    """Buchberger's criterion, checked on every pair."""
    basis = list(zip(gb.leading, gb.generators))
    for (alm, a), (blm, b) in itertools.combinations(basis, 2):
        if gb.degree_bound is not None and sum(_lcm(alm, blm)) > gb.degree_bound:
            continue
        sp = _spoly(a, alm, b, blm, gb.field)
        if reduce_full(sp, basis, gb.order, gb.field):
            return False
    return True


def is_reduced(gb: GroebnerBasis) -> bool:
    for i, (lm, g) in enumerate(zip(gb.leading, gb.generators)):
        if g[lm] != gb.field.one:
            return False
        for j, h in enumerate(gb.generators):
            if i != j and any(_divides(lm, m) for m in h):
                return False
    return True


def _standard_monomials_of_degree(leading, nvars, k):
    for m in _monomials(nvars, k):
        if not any(_divides(l, m) for l in leading):
            yield m


def _monomials(nvars, k):
    if nvars == 1:
        yield (k,)
        return
    for a in range(k, -1, -1):
        for rest in _monomials(nvars - 1, k - a):
            yield (a,) + rest


def quotient_dimension(gb: GroebnerBasis):
    """Number of standard monomials; :data:`Infinite` for unbounded staircases."""
    n = gb.nvars
    bounds = []
    for i in range(n):
        pure = [l[i] for l in gb.leading if all(l[j] == 0 for j in range(n) if j != i)]
        if not pure:
            return Infinite
        bounds.append(min(pure))
    count = 0
    for m in itertools.product(*(range(b) for b in bounds)):
        if not any(_divides(l, m) for l in gb.leading):
            count += 1
    return count


def standard_monomials(gb: GroebnerBasis) -> list:
    if quotient_dimension(gb) == Infinite:
        raise ValueError("quotient is infinite dimensional")
    n = gb.nvars
    bounds = [min(l[i] for l in gb.leading if all(l[j] == 0 for j in range(n) if j != i))
              for i in range(n)]
    return [m for m in itertools.product(*(range(b) for b in bounds))
            if not any(_divides(l, m) for l in gb.leading)]


def hompoly_to_dict(f: HomPoly, fld=QQ) -> dict:
    return {m: fld.convert(c) for m, c in f.terms.items()}


def homogeneous_hilbert_oracle(gens: Sequence[HomPoly], k: int, field=QQ,
                               gb: GroebnerBasis | None = None) -> int:
    """dim (S/I)_k counted as degree-k standard monomials of a Groebner basis."""
    if gb is None:
        gb = buchberger([hompoly_to_dict(g, field) for g in gens if not g.is_zero()],
                        TermOrder(3), field, degree_bound=k)
    return sum(1 for _ in _standard_monomials_of_degree(gb.leading, 3, k))


def homogeneous_hilbert_values(gens: Sequence[HomPoly], top: int, field=QQ) -> list:
    """Oracle values dim (S/I)_k for 0 <= k <= top from a single truncated basis."""
    gb = buchberger([hompoly_to_dict(g, field) for g in gens if not g.is_zero()],
                    TermOrder(3), field, degree_bound=top)
    return [homogeneous_hilbert_oracle(gens, k, field, gb=gb) for k in range(top + 1)]
