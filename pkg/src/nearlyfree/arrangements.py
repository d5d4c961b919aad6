"""Line arrangements given as explicit linear forms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from pathlib import Path
from typing import Iterable

from .errors import InvalidArrangement, NotNearlyFree
from .jacobian import Classification
from .poly import Curve, HomPoly, parse


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def _normalize_point(p) -> tuple:
    """Scale so that the first nonzero coordinate is 1."""
    lead = next(c for c in p if c != 0)
    return tuple(Fraction(c) / lead for c in p)


@dataclass(frozen=True)
class LineArrangement:
    """Coefficient vectors (a, b, c) of the lines a*x + b*y + c*z = 0."""

    lines: tuple

    def __post_init__(self):
        lines = tuple(tuple(Fraction(c) for c in l) for l in self.lines)
        if len(lines) < 3:
            raise InvalidArrangement(f"need at least 3 lines, got {len(lines)}")
        for l in lines:
            if len(l) != 3 or not any(l):
                raise InvalidArrangement(f"invalid line coefficients {l}")
        for i in range(len(lines)):
            for j in range(i):
                if not any(_cross(lines[i], lines[j])):
                    raise InvalidArrangement(f"lines {j} and {i} are proportional")
        object.__setattr__(self, "lines", lines)

    @classmethod
    def from_forms(cls, forms: Iterable[HomPoly | str]) -> "LineArrangement":
        vecs = []
        for f in forms:
            if isinstance(f, str):
                f = parse(f)
            if f.is_zero() or f.degree != 1:
                raise InvalidArrangement(f"{f} is not a nonzero linear form")
            vecs.append(tuple(f.terms.get(m, 0) for m in ((1, 0, 0), (0, 1, 0), (0, 0, 1))))
        return cls(tuple(vecs))

    @property
    def degree(self) -> int:
        return len(self.lines)

    def forms(self) -> list:
        return [HomPoly.linear_form(*l) for l in self.lines]

    def polynomial(self) -> HomPoly:
        return reduce(lambda a, b: a * b, self.forms())

    def curve(self, **kwargs) -> Curve:
        return Curve.from_poly(self.polynomial(), **kwargs)


def read_arrangement(path: str | Path) -> LineArrangement:
    """One linear form per non-empty line; ``#`` starts a comment."""
    forms = []
    for raw in Path(path).read_text().splitlines():
        text = raw.split("#", 1)[0].strip()
        if text:
            forms.append(text)
    return LineArrangement.from_forms(forms)


def intersection_points(arr: LineArrangement) -> list:
    """Sorted list of (point, multiplicity), points normalized projectively."""
    points = {}
    for i in range(arr.degree):
        for j in range(i):
            p = _normalize_point(_cross(arr.lines[i], arr.lines[j]))
            if p not in points:
                points[p] = sum(1 for l in arr.lines if sum(a * b for a, b in zip(l, p)) == 0)
    return sorted(points.items())


def arrangement_mu_tau(arr: LineArrangement) -> int:
    """Total Milnor number, which equals tau for ordinary multiple points."""
    return sum((m - 1) ** 2 for _, m in intersection_points(arr))


@dataclass(frozen=True)
class CharPoly2:
    """t^2 - b1*t + b2."""

    b1: int
    b2: int

    @property
    def coefficients(self) -> tuple:
        """(1, -b1, b2), highest degree first."""
        return (1, -self.b1, self.b2)

    def __call__(self, t):
        return t * t - self.b1 * t + self.b2

    def __str__(self):
        return f"t^2 - {self.b1}*t + {self.b2}"


def characteristic_polynomial(arr: LineArrangement) -> CharPoly2:
    d = arr.degree
    return CharPoly2(d - 1, (d - 1) ** 2 - arrangement_mu_tau(arr))


def chi_factorization_check(arr: LineArrangement, cls: Classification) -> bool:
    """chi(t) - 1 == (t - d1)(t - (d2 - 1)) for a nearly free arrangement."""
    if cls.kind != "NearlyFree":
        raise NotNearlyFree(f"arrangement is {cls.kind}, not nearly free")
    chi = characteristic_polynomial(arr)
    d1, d2 = cls.d1, cls.d2
    return chi.coefficients == (1, -(d1 + d2 - 1), d1 * (d2 - 1) + 1)
