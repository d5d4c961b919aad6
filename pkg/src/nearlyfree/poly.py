"""Homogeneous polynomials in S = k[x, y, z] with rational coefficients.

Monomials are exponent triples ``(a, b, c)``. The global order is graded
reverse lexicographic with x > y > z; :func:`monomial_basis` lists monomials of
one degree in decreasing order, and every degreewise matrix in the package uses
that column order.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Mapping, Sequence

from . import exact_linalg as la
from .errors import (DegenerateLine, InvalidCurve, NotHomogeneous,
                     PolynomialSyntaxError, SingularMatrix)

VARIABLES = ("x", "y", "z")

Monomial = tuple  # (a, b, c)


def grevlex_key(m: Monomial):
    """Sort key: larger key means larger monomial in grevlex, x > y > z."""
    return (sum(m), tuple(-e for e in reversed(m)))


@lru_cache(maxsize=None)
def monomial_basis(k: int) -> tuple:
    """All degree-``k`` monomials, decreasing in grevlex."""
    if k < 0:
        return ()
    mons = [(a, b, k - a - b) for a in range(k + 1) for b in range(k - a + 1)]
    mons.sort(key=grevlex_key, reverse=True)
    return tuple(mons)


@lru_cache(maxsize=None)
def monomial_index(k: int) -> dict:
    return {m: i for i, m in enumerate(monomial_basis(k))}


def dim_s(k: int) -> int:
    """dim S_k."""
    return comb(k + 2, 2) if k >= 0 else 0


class HomPoly:
    """A homogeneous polynomial; ``terms`` maps monomials to nonzero Fractions."""

    __slots__ = ("degree", "terms")

    def __init__(self, terms: Mapping[Monomial, object], degree: int | None = None):
        clean = {}
        for m, c in terms.items():
            c = Fraction(c)
            if c:
                clean[tuple(m)] = c
        degs = {sum(m) for m in clean}
        if len(degs) > 1:
            a, b = sorted(degs)[:2]
            raise NotHomogeneous(a, b)
        if degs:
            (d,) = degs
            if degree is not None and degree != d:
                raise NotHomogeneous(degree, d)
            degree = d
        elif degree is None:
            degree = 0
        self.degree = degree
        self.terms = clean

    # construction helpers -------------------------------------------------
    @classmethod
    def var(cls, name: str) -> "HomPoly":
        e = [0, 0, 0]
        e[VARIABLES.index(name)] = 1
        return cls({tuple(e): 1})

    @classmethod
    def constant(cls, c) -> "HomPoly":
        return cls({(0, 0, 0): c}, 0)

    @classmethod
    def linear_form(cls, a, b, c) -> "HomPoly":
        return cls({(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c}, 1)

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, HomPoly):
            return other
        return HomPoly.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return HomPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return HomPoly({m: -c for m, c in self.terms.items()}, self.degree)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, HomPoly):
            c = Fraction(other)
            return HomPoly({m: c * v for m, v in self.terms.items()}, self.degree)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                out[m] = out.get(m, 0) + c1 * c2
        return HomPoly(out, self.degree + other.degree)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = HomPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, HomPoly):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    # calculus / evaluation -------------------------------------------------
    def derivative(self, i: int) -> "HomPoly":
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                e = list(m)
                e[i] -= 1
                out[tuple(e)] = c * m[i]
        return HomPoly(out, max(self.degree - 1, 0))

    def __call__(self, x, y, z):
        total = 0
        for (a, b, c), coef in self.terms.items():
            total += coef * x ** a * y ** b * z ** c
        return total

    def coefficient_vector(self) -> list:
        """Coefficients against :func:`monomial_basis` of the polynomial's degree."""
        return [self.terms.get(m, Fraction(0)) for m in monomial_basis(self.degree)]

    def support(self) -> list:
        return sorted(self.terms, key=grevlex_key, reverse=True)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"HomPoly({format_poly(self)!r})"


# ---------------------------------------------------------------------------
# Text format


def _format_monomial(m: Monomial) -> str:
    parts = []
    for name, e in zip(VARIABLES, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(f: HomPoly) -> str:
    if not f.terms:
        return "0"
    pieces = []
    for i, m in enumerate(f.support()):
        c = f.terms[m]
        sign = "-" if c < 0 else "+"
        c = abs(c)
        mon = _format_monomial(m)
        if not mon:
            body = str(c)
        elif c == 1:
            body = mon
        else:
            body = f"{c}*{mon}"
        if i == 0:
            pieces.append(body if sign == "+" else f"-{body}")
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


_NUMBER = re.compile(r"^\d+(/\d+)?$")
_POWER = re.compile(r"^([xyz])(\^(\d+))?$")


def parse(text: str) -> HomPoly:
    """Parse a sum of terms like ``"-3/2*x^2*y + z^3"`` into a HomPoly."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise PolynomialSyntaxError("empty polynomial")
    terms = []
    sign, start = 1, 0
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        start = 1
    pos = start
    for i in range(start, len(s) + 1):
        if i == len(s) or s[i] in "+-":
            body = s[pos:i]
            if not body:
                raise PolynomialSyntaxError(f"empty term at position {pos} in {text!r}")
            terms.append((sign, body))
            if i < len(s):
                sign = -1 if s[i] == "-" else 1
                pos = i + 1
    acc: dict = {}
    first_degree = None
    for sign, body in terms:
        factors = body.split("*")
        coef = Fraction(sign)
        exps = [0, 0, 0]
        for j, fac in enumerate(factors):
            if _NUMBER.match(fac):
                if j != 0:
                    raise PolynomialSyntaxError(
                        f"coefficient {fac!r} must lead its term in {body!r}")
                num, _, den = fac.partition("/")
                if den and int(den) == 0:
                    raise PolynomialSyntaxError(f"zero denominator in {fac!r}")
                coef *= Fraction(int(num), int(den) if den else 1)
                continue
            mt = _POWER.match(fac)
            if not mt:
                raise PolynomialSyntaxError(f"cannot parse factor {fac!r} in {body!r}")
            exps[VARIABLES.index(mt.group(1))] += int(mt.group(3) or 1)
        m = tuple(exps)
        deg = sum(m)
        if first_degree is None:
            first_degree = deg
        elif deg != first_degree:
            raise NotHomogeneous(first_degree, deg)
        acc[m] = acc.get(m, 0) + coef
    return HomPoly(acc, first_degree)


# ---------------------------------------------------------------------------
# Standard operations on f


def partials(f: HomPoly) -> tuple:
    return f.derivative(0), f.derivative(1), f.derivative(2)


def euler_check(f: HomPoly) -> bool:
    """``x f_x + y f_y + z f_z == d f``."""
    fx, fy, fz = partials(f)
    x, y, z = (HomPoly.var(v) for v in VARIABLES)
    lhs = x * fx + y * fy + z * fz
    rhs = f * f.degree
    return lhs == rhs


def is_cone(f: HomPoly) -> bool:
    """True iff the partials are linearly dependent (f involves only two variables
    after a linear change of coordinates)."""
    rows = [g.coefficient_vector() for g in partials(f)]
    if f.degree < 1:
        return True
    return la.rank(la.ExactMatrix.from_rows(rows)) < 3


def _inverse3(m: Sequence[Sequence]) -> list:
    a = [[Fraction(v) for v in row] for row in m]
    det = (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
           - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
           + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))
    if det == 0:
        raise SingularMatrix("linear change matrix is singular")
    cof = [[(a[(j + 1) % 3][(i + 1) % 3] * a[(j + 2) % 3][(i + 2) % 3]
             - a[(j + 1) % 3][(i + 2) % 3] * a[(j + 2) % 3][(i + 1) % 3])
            for j in range(3)] for i in range(3)]
    return [[cof[i][j] / det for j in range(3)] for i in range(3)]


def substitute_linear(f: HomPoly, forms: Sequence[HomPoly]) -> HomPoly:
    """Replace x, y, z by the three given linear forms."""
    powers = [[HomPoly.constant(1)] for _ in range(3)]
    out: HomPoly = HomPoly({}, f.degree)
    for m, c in f.terms.items():
        term = HomPoly.constant(c)
        for i in range(3):
            while len(powers[i]) <= m[i]:
                powers[i].append(powers[i][-1] * forms[i])
            term = term * powers[i][m[i]]
        out = out + term
    return HomPoly(out.terms, f.degree)


def linear_change(f: HomPoly, m: Sequence[Sequence]) -> HomPoly:
    """The equation of the image curve ``M(C)``, i.e. ``f(M^{-1} v)``.

    This is a left action: changing by M and then by N equals changing by N·M.
    """
    inv = _inverse3(m)
    forms = [HomPoly.linear_form(*inv[i]) for i in range(3)]
    return substitute_linear(f, forms)


# ---------------------------------------------------------------------------
# Univariate helpers for the reducedness test


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mod(a: list, b: list) -> list:
    a = list(a)
    lb = b[-1]
    while len(a) >= len(b):
        if a[-1] == 0:
            a.pop()
            continue
        q = a[-1] / lb
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= q * c
        a.pop()
        _trim(a)
    return _trim(a)


def _univariate_gcd_degree(a: list, b: list) -> int:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b)
    return len(a) - 1


def restrict_to_line(f: HomPoly, p: Sequence, q: Sequence) -> list:
    """Coefficients (ascending) of t -> f(p + t q)."""
    forms = []
    for i in range(3):
        forms.append((Fraction(p[i]), Fraction(q[i])))
    # expand each term as product of binomials in t
    coeffs = [Fraction(0)] * (f.degree + 1)
    for m, c in f.terms.items():
        poly = [c]
        for i in range(3):
            a0, a1 = forms[i]
            for _ in range(m[i]):
                nxt = [Fraction(0)] * (len(poly) + 1)
                for k, v in enumerate(poly):
                    nxt[k] += v * a0
                    nxt[k + 1] += v * a1
                poly = nxt
        for k, v in enumerate(poly):
            coeffs[k] += v
    return coeffs


def is_reduced_probabilistic(f: HomPoly, trials: int = 5, seed=0) -> bool:
    """Restrict f to random lines and test each restriction for squarefreeness.

    A repeated factor of f produces a repeated root on every line, so a single
    non-squarefree restriction proves f non-reduced. Lines contained in C, and
    lines whose point at infinity lies on C, are resampled; each resample uses
    up one trial.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    tested = 0
    for _ in range(trials):
        p = [rng.randint(-50, 50) for _ in range(3)]
        q = [rng.randint(-50, 50) for _ in range(3)]
        g = restrict_to_line(f, p, q)
        if all(c == 0 for c in g) or g[-1] == 0:
            continue
        dg = [k * g[k] for k in range(1, len(g))]
        if _univariate_gcd_degree(g, dg) > 0:
            return False
        tested += 1
    if tested == 0:
        raise DegenerateLine(f"all {trials} sampled lines were degenerate")
    return True


@dataclass(frozen=True)
class Curve:
    """A validated reduced plane curve ``f = 0`` that is not a cone."""

    f: HomPoly
    reduced_ok: bool
    not_cone_ok: bool
    seed: int = 0

    @property
    def degree(self) -> int:
        return self.f.degree

    @classmethod
    def from_poly(cls, f: HomPoly | str, *, trials: int = 5, seed=0,
                  strict: bool = True) -> "Curve":
        if isinstance(f, str):
            f = parse(f)
        if f.is_zero():
            raise InvalidCurve("zero polynomial does not define a curve")
        if f.degree < 2:
            raise InvalidCurve(f"degree must be at least 2, got {f.degree}")
        not_cone = not is_cone(f)
        reduced = is_reduced_probabilistic(f, trials, seed)
        curve = cls(f, reduced, not_cone, seed)
        if strict and not (reduced and not_cone):
            problems = []
            if not reduced:
                problems.append("not reduced")
            if not not_cone:
                problems.append("a cone (union of concurrent lines)")
            raise InvalidCurve(f"curve {f} is " + " and ".join(problems))
        return curve

    def __str__(self):
        return str(self.f)
