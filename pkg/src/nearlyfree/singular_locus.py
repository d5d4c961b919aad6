"""Total Milnor number of a plane curve from a single affine chart.

In the chart z = 1 with g(x, y) = f(x, y, 1), the quotient
k[x, y] / (g_x, g_y, g^2) is supported exactly at the affine singular points of
C: away from C the unit g^2 kills it, and at a singular point g^2 already lies
in (g_x, g_y) locally (Briancon-Skoda in two variables). Its dimension is
therefore the sum of the local Milnor numbers, provided no singular point lies
on the line z = 0, which :func:`generic_chart` arranges first.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import exact_linalg as la
from . import groebner as gb
from .errors import ChartFailure, NotFinite, RobustnessFailure
from .exact_linalg import GF, QQ, PrimeSampler
from .poly import Curve, HomPoly, linear_change, partials

IDENTITY = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
CHART_ATTEMPTS = 20


@dataclass(frozen=True)
class MilnorReport:
    mu: int
    chart_matrix: tuple
    defect: int
    tau_affine: int | None = None
    field: str = "QQ"
    primes: tuple = ()
    seed: int = 0
    caveat: str = ("defect equals 2g + sum(r_i - 1) only for irreducible curves; "
                   "irreducibility is not verified")


def _binary_forms_at_infinity(f: HomPoly) -> list:
    """The partials restricted to z = 0, as dicts over (a, b) exponents."""
    out = []
    for g in partials(f):
        r = {(m[0], m[1]): c for m, c in g.terms.items() if m[2] == 0}
        out.append(r)
    return out


def has_singularity_at_infinity(c: Curve) -> bool:
    """True iff some singular point of C lies on the line z = 0.

    S/(f_x, f_y, f_z, z) is k[x, y]/(binary forms); it vanishes in some degree
    <= 3d exactly when the binary forms have no common zero.
    """
    d = c.degree
    forms = [g for g in _binary_forms_at_infinity(c.f) if g]
    if not forms:
        return True
    for D in range(d - 1, 3 * d + 1):
        e = D - (d - 1)
        rows = []
        for a in range(e + 1):
            u = (a, e - a)
            for g in forms:
                rows.append({D - (u[0] + m[0]): v for m, v in g.items()})
        # column index = exponent of y, i.e. D - exponent of x
        if la.rank_rows(rows, D + 1, QQ) == D + 1:
            return False
    return True


def _random_chart(rng: random.Random) -> tuple:
    a, b = rng.randint(-12, 12), rng.randint(-12, 12)
    return ((1, 0, 0), (0, 1, 0), (a, b, 1))


def generic_chart(c: Curve, seed=0) -> tuple:
    """Move all singular points off z = 0; returns (curve, matrix).

    The candidate changes send the line a*x + b*y + z = 0 to the line at
    infinity, for random small integers a, b. The identity is tried first.
    """
    rng = random.Random(seed)
    m = IDENTITY
    for attempt in range(CHART_ATTEMPTS):
        moved = c if m == IDENTITY else Curve(linear_change(c.f, m), c.reduced_ok,
                                               c.not_cone_ok, c.seed)
        if not has_singularity_at_infinity(moved):
            return moved, m
        m = _random_chart(rng)
    raise ChartFailure(
        f"no chart without singular points at infinity after {CHART_ATTEMPTS} attempts "
        "(non-isolated singularities?)")


def _dehomogenize(f: HomPoly, fld) -> dict:
    out = {}
    for (a, b, _), c in f.terms.items():
        v = fld.convert(c)
        key = (a, b)
        out[key] = fld.normalize(out.get(key, 0) + v)
    return {k: v for k, v in out.items() if v != 0}


def _diff(p: dict, i: int, fld) -> dict:
    out = {}
    for m, c in p.items():
        if m[i]:
            e = list(m)
            e[i] -= 1
            v = fld.normalize(c * m[i])
            if v:
                out[tuple(e)] = v
    return out


def _mul(p: dict, q: dict, fld) -> dict:
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = (m1[0] + m2[0], m1[1] + m2[1])
            out[m] = fld.normalize(out.get(m, 0) + c1 * c2)
    return {m: c for m, c in out.items() if c != 0}


def _chart_dimensions(f: HomPoly, fld) -> tuple:
    """(dim k[x,y]/(g_x,g_y,g^2), same with g^3, dim k[x,y]/(g,g_x,g_y))."""
    g = _dehomogenize(f, fld)
    gx, gy = _diff(g, 0, fld), _diff(g, 1, fld)
    g2 = _mul(g, g, fld)
    g3 = _mul(g2, g, fld)
    order = gb.TermOrder(2)
    dims = []
    for extra in (g2, g3, g):
        basis = gb.buchberger([p for p in (gx, gy, extra) if p], order, fld)
        dims.append(gb.quotient_dimension(basis))
    return tuple(dims)


def total_milnor(c: Curve, seed=0, field=None) -> MilnorReport:
    """Sum of local Milnor numbers, with the g^2 / g^3 robustness check.

    ``field=None`` works modulo two random primes that must agree (retrying
    with fresh primes, then falling back to QQ); pass ``QQ`` or ``GF(p)`` to
    force a field.
    """
    moved, m = generic_chart(c, seed)
    d = c.degree

    def run(fld):
        mu2, mu3, tau = _chart_dimensions(moved.f, fld)
        if mu2 == gb.Infinite:
            raise NotFinite("the singular locus is not zero-dimensional")
        if mu2 != mu3:
            raise RobustnessFailure(f"g^2 gives {mu2} but g^3 gives {mu3}")
        return mu2, tau

    if field is not None:
        mu, tau = run(field)
        label = repr(field)
        primes = (field.p,) if isinstance(field, la.PrimeField) else ()
    else:
        sampler = PrimeSampler(seed)
        result = None
        for _ in range(la.GUARD_RETRIES + 1):
            p, q = sampler.pair()
            try:
                rp, rq = run(GF(p)), run(GF(q))
            except ZeroDivisionError:
                continue
            if rp == rq:
                result, label, primes = rp, "GF(p)", (p, q)
                break
        if result is None:
            result, label, primes = run(QQ), "QQ", ()
        mu, tau = result
    return MilnorReport(int(mu), m, (d - 1) * (d - 2) - int(mu), int(tau), label, primes, seed)


def rationality_defect(c: Curve, seed=0, field=None) -> int:
    """(d-1)(d-2) - mu(C); equals 2g + sum(r_i - 1) when C is irreducible."""
    return total_milnor(c, seed, field).defect
