"""Named curves and parametric families with their known invariants.

Each :class:`CatalogEntry` pairs a defining polynomial with a partial set of
expected values. ``expected`` keys are a subset of

    kind, exponents, b, tau, mu, defect, ct, st, mdr, almost, n, n_at, betti, shape

where ``n`` maps degree k to dim N(f)_k (unlisted degrees are zero), ``n_at``
pins only the listed degrees, and
``betti`` is a resolution string as printed by ``BettiTable.as_resolution``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable

from .errors import UnknownName
from .jacobian import SyzygyVector
from .poly import Curve, HomPoly, parse

RATIONAL_CUSPIDAL = "rational_cuspidal"
ARRANGEMENT = "line_arrangement"


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    polynomial: str
    expected: dict
    provenance: str
    tags: tuple = ()
    lines: tuple = ()
    syzygies: dict = field(default_factory=dict)

    def curve(self, **kwargs) -> Curve:
        return Curve.from_poly(self.polynomial, **kwargs)

    @property
    def degree(self) -> int:
        return parse(self.polynomial).degree

    @property
    def rational_cuspidal(self) -> bool:
        return RATIONAL_CUSPIDAL in self.tags

    def syzygy_vectors(self) -> dict:
        """r1, r2, r3 as SyzygyVector and R as a triple of HomPoly, when known."""
        out = {}
        for key, comps in self.syzygies.items():
            polys = tuple(_parse_any(c) for c in comps)
            out[key] = polys if key == "R" else SyzygyVector(*polys)
        return out

    def to_record(self) -> dict:
        rec = {"name": self.name, "polynomial": self.polynomial,
               "expected": _jsonable(self.expected), "provenance": self.provenance}
        if self.tags:
            rec["tags"] = list(self.tags)
        if self.lines:
            rec["lines"] = list(self.lines)
        if self.syzygies:
            rec["syzygies"] = {k: list(v) for k, v in self.syzygies.items()}
        return rec


def _parse_any(text: str) -> HomPoly:
    text = text.strip()
    return HomPoly({}) if text == "0" else parse(text)


def _jsonable(expected: dict) -> dict:
    out = {}
    for k, v in expected.items():
        if k in ("n", "n_at"):
            out[k] = {str(a): b for a, b in sorted(v.items())}
        elif isinstance(v, tuple):
            out[k] = [list(w) if isinstance(w, tuple) else w for w in v]
        else:
            out[k] = v
    return out


def _tuples(v):
    return tuple(_tuples(w) for w in v) if isinstance(v, list) else v


def _from_jsonable(expected: dict) -> dict:
    out = {}
    for k, v in expected.items():
        if k in ("n", "n_at"):
            out[k] = {int(a): b for a, b in v.items()}
        else:
            out[k] = _tuples(v)
    return out


def _window(lo: int, hi: int) -> dict:
    return {k: 1 for k in range(lo, hi + 1)}


def _product(forms) -> str:
    return "*".join(f"({f})" for f in forms)


def _expand(text: str) -> str:
    """Parse a product/power expression built by this module and print it expanded."""
    return str(_evaluate(text))


def _evaluate(text: str) -> HomPoly:
    # Recursive descent over +, -, *, ^ and parentheses; only used to expand
    # the closed forms below into the flat grammar of ``parse``.
    tokens = re.findall(r"\d+/\d+|\d+|[xyz]|[-+*^()]", text.replace(" ", ""))
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        pos += 1
        return tokens[pos - 1]

    def expr():
        sign = 1
        if peek() in ("+", "-"):
            sign = -1 if take() == "-" else 1
        acc = term() * sign
        while peek() in ("+", "-"):
            op = take()
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = factor()
        while peek() == "*":
            take()
            acc = acc * factor()
        return acc

    def factor():
        tok = take()
        if tok == "(":
            base = expr()
            if take() != ")":
                raise ValueError("unbalanced parentheses")
        elif tok in ("x", "y", "z"):
            base = HomPoly.var(tok)
        else:
            base = HomPoly.constant(Fraction(tok))
        if peek() == "^":
            take()
            base = base ** int(take())
        return base

    result = expr()
    if pos != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return result


# ---------------------------------------------------------------------------
# Fixed entries


def _fixed() -> list:
    E = CatalogEntry
    almost222 = dict(kind="NearlyFree", exponents=(2, 2), almost=True, tau=6,
                     betti="0 -> S(-6) -> S(-5)^3 -> S(-3)^3 -> S")
    cuspidal_sextic = dict(kind="NearlyFree", exponents=(3, 3), almost=True, tau=18, b=-1, ct=7, st=7)
    line_sets = {
        "lines_4_generic": (("x", "y", "z", "x+y+z"),
                            dict(kind="NearlyFree", exponents=(2, 2), almost=True, tau=6, n={3: 1},
                                 betti="0 -> S(-6) -> S(-5)^3 -> S(-3)^3 -> S"),
                            "four lines in general position"),
        "lines_5_triple": (("x", "y", "z", "x-z", "x+y+z"),
                           dict(kind="NearlyFree", exponents=(2, 3), almost=True, tau=11,
                                n={4: 1, 5: 1},
                                betti="0 -> S(-8) -> S(-6) + S(-7)^2 -> S(-4)^3 -> S"),
                           "five lines with one triple point and seven nodes"),
        "lines_6": (("x", "y", "z", "x-z", "y+2*z", "x+y+z"),
                    dict(kind="NearlyFree", exponents=(3, 3), almost=True, tau=18, n={6: 1},
                         betti="0 -> S(-9) -> S(-8)^3 -> S(-5)^3 -> S"),
                    "six lines with three triple points and six nodes"),
        "lines_5_generic": (("y-z", "y-2*z", "y-x", "y+x", "x+y+z"),
                            dict(kind="Neither", betti="0 -> S(-8)^2 -> S(-7)^4 -> S(-4)^3 -> S"),
                            "five lines in general position"),
        "lines_7_chi": (("x", "y", "x-y", "x-2*y", "x-3*y", "z", "x+5*y+7*z"),
                        dict(kind="NearlyFree", exponents=(2, 5), tau=27, mu=27),
                        "seven lines, five of them concurrent; factoring characteristic polynomial"),
        "triangle": (("x", "y", "z"), dict(kind="Free", exponents=(1, 1), tau=3),
                     "triangle of coordinate lines"),
    }
    out = [
        E("smooth_conic", "x^2+y^2+z^2",
          dict(kind="Smooth", tau=0, betti="0 -> S(-3) -> S(-2)^3 -> S(-1)^3 -> S",
               shape=("NearlyFree", (1, 1, 1), 1)),
          "smooth conic; Koszul resolution of three linear forms"),
        E("smooth_cubic", "x^3+y^3+z^3",
          dict(kind="Smooth", tau=0, betti="0 -> S(-6) -> S(-4)^3 -> S(-2)^3 -> S"),
          "smooth cubic; Koszul resolution"),
        E("conic_secant", "x^3+x*y*z",
          dict(kind="NearlyFree", exponents=(1, 2), almost=True, tau=2,
               betti="0 -> S(-5) -> S(-3) + S(-4)^2 -> S(-2)^3 -> S"),
          "conic plus secant line"),
        E("nodal_cubic", "x*y*z+x^3+y^3", dict(kind="Neither", n_at={1: 2}),
          "nodal cubic"),
        E("quartic_3cusps", "x^2*y^2+y^2*z^2+x^2*z^2-2*x^2*y*z-2*x*y^2*z-2*x*y*z^2",
          almost222, "tricuspidal quartic", (RATIONAL_CUSPIDAL,)),
        E("quartic_A2A4", "z^4-x*z^3-2*x*y*z^2+x^2*y^2", almost222,
          "quartic with A2 and A4 cusps", (RATIONAL_CUSPIDAL,)),
        E("quartic_A6", "y^4-2*x*y^2*z+y*z^3+x^2*z^2", almost222,
          "quartic with an A6 cusp", (RATIONAL_CUSPIDAL,)),
        E("zariski_sextic", _expand("(x^2+y^2)^3+(y^3+z^3)^2"),
          dict(kind="Neither", tau=12,
               betti="0 -> S(-11) + S(-12) -> S(-8) + S(-10)^3 -> S(-5)^3 -> S"),
          "Zariski sextic, six cusps on a conic"),
        E("line_plus_sextic", _expand("z*((x^2+y^2+z^2)^3-27*x^2*y^2*z^2)"),
          dict(kind="NearlyFree", exponents=(3, 4), almost=True, n={7: 1, 8: 1}, tau=26,
               betti="0 -> S(-11) -> S(-9) + S(-10)^2 -> S(-6)^3 -> S"),
          "line plus rational sextic with six cusps and four nodes"),
        E("cubic_three_lines", _expand("(x^3+y^3+z^3)*(x+y)*(x+z)*(y+z)"),
          dict(kind="NearlyFree", exponents=(2, 4), b=0, n={5: 1, 6: 1, 7: 1}, tau=18,
               betti="0 -> S(-10) -> S(-7) + S(-9)^2 -> S(-5)^3 -> S"),
          "smooth cubic plus three lines"),
        E("three_branch_11", _expand("x^11+y^11+x^2*y^6*(x+5*y)^2*z"),
          dict(kind="NearlyFree", exponents=(5, 6), almost=True, tau=74, mu=88, defect=2),
          "rational curve with one three-branch singularity, degree 11"),
        E("three_branch_13", _expand("x^13+y^13+x^2*y^8*(x+5*y)^2*z"),
          dict(kind="NearlyFree", exponents=(5, 8), tau=108, mu=130, defect=2),
          "rational curve with one three-branch singularity, degree 13"),
        E("sextic_C1a", "x^6-y^5*z",
          dict(kind="NearlyFree", exponents=(1, 5), tau=20, b=1, n=_window(4, 8)),
          "rational cuspidal sextic of class C1(a)", (RATIONAL_CUSPIDAL,)),
        E("sextic_C4a_a1", _expand("-x^4*y^2-2*x^3*y^3-x^2*y^4-y^6+2*x^4*y*z+2*x^3*y^2*z"
                                   "+3*x*y^4*z-x^4*z^2-3*x^2*y^2*z^2+x^3*z^3"),
          cuspidal_sextic, "rational cuspidal sextic of class C4(a) at a=1", (RATIONAL_CUSPIDAL,)),
    ]
    for A in (1, 2):
        out.append(E(f"sextic_C7_A{A}",
                     _expand(f"x^3*y^3-{A * A}*x^2*y^4-{2 * A}*x*y^5-y^6+{2 * A}*x^3*y^2*z"
                             "+2*x^2*y^3*z-x^4*z^2"),
                     cuspidal_sextic, f"rational cuspidal sextic of class C7 at A={A}", (RATIONAL_CUSPIDAL,)))
        out.append(E(f"sextic_C8_A{A}",
                     _expand(f"({1 - 2 * A})*x*y^5-y^6+{2 * A}*x^3*y^2*z+2*x^2*y^3*z"
                             f"-x^4*z^2-{A * A}*x^2*y^4"),
                     cuspidal_sextic, f"rational cuspidal sextic of class C8 at A={A}", (RATIONAL_CUSPIDAL,)))
    out += [
        E("septic_base", "x^7+y^5*z^2",
          dict(kind="NearlyFree", exponents=(1, 6), tau=30, n=_window(5, 10)),
          "weighted homogeneous x^7 + y^5 z^2", (RATIONAL_CUSPIDAL,)),
        E("septic_deform_x3y4", "x^7+x^3*y^4+y^5*z^2",
          dict(kind="NearlyFree", exponents=(3, 4), almost=True, tau=26),
          "deformation of x^7 + y^5 z^2 by x^3 y^4"),
        E("septic_deform_x5y2", "x^7+x^5*y^2+y^5*z^2",
          dict(kind="NearlyFree", exponents=(3, 4), almost=True, tau=26),
          "deformation of x^7 + y^5 z^2 by x^5 y^2"),
        E("septic_three_factors", _expand("x^7+y^2*z^3*(y+z)^2"),
          dict(kind="Neither", n_at={7: 4}), "x^7 + g(y, z) with three distinct factors in g"),
    ]
    for name, (forms, expected, prov) in line_sets.items():
        out.append(E(name, _expand(_product(forms)), expected, prov, (ARRANGEMENT,), forms))
    return out


# ---------------------------------------------------------------------------
# Parametric families


def st1(d: int) -> CatalogEntry:
    if d < 3:
        raise ValueError("st1 needs d >= 3")
    t = (d - 1) * (d - 2)
    return CatalogEntry(
        f"st1(d={d})", f"x^{d}+y^{d - 1}*z",
        dict(kind="NearlyFree", exponents=(1, d - 1), b=1, tau=t, mu=t, defect=0,
             n=_window(d - 2, 2 * d - 4)),
        "Sebastiani-Thom unicuspidal family x^d + y^(d-1) z", (RATIONAL_CUSPIDAL,))


def st2(d: int, k: int) -> CatalogEntry:
    if d < 4 or not 2 <= k <= d // 2:
        raise ValueError("st2 needs d >= 4 and 2 <= k <= d/2")
    t = (d - 1) * (d - 2)
    tags = (RATIONAL_CUSPIDAL,) if gcd(d, k) == 1 else ()
    return CatalogEntry(
        f"st2(d={d},k={k})", f"x^{d}-y^{d - k}*z^{k}",
        dict(kind="NearlyFree", exponents=(1, d - 1), b=1, tau=t,
             n=_window(d - 2, 2 * d - 4)),
        "Sebastiani-Thom family x^d - y^(d-k) z^k", tags)


def prop0(k: int) -> CatalogEntry:
    if k < 2:
        raise ValueError("prop0 needs k >= 2")
    m = 2 * k * k + 4 * k + 1
    a = 2 * k + 1
    syz = {
        "r1": (f"{2 * a}*y^{k}*z", f"2*x^{k}*y", f"{a}*y^{k + 1}-{2 * m}*x^{k}*z"),
        "r2": (f"-{2 * k * a}*x*y^{k - 1}*z", f"{2 * (k + 1) * a}*x^{k + 1}+{2 * m}*y^{k}*z",
               f"{(k + 1) * a * a}*x*y^{k}-{2 * k * m}*y^{k - 1}*z^2"),
        "r3": (f"-{a}*x*y^{k}", f"y^{k + 1}", f"{(k + 1) * a}*x^{k + 1}-{k}*y^{k}*z"),
        "R": (f"-{(k + 1) * a}*x", "y", f"-{2 * m}*z"),
    }
    return CatalogEntry(
        f"prop0(k={k})", _expand(f"(y^{k}*z+x^{k + 1})^2-x*y^{2 * k + 1}"),
        dict(kind="NearlyFree", exponents=(k + 1, k + 1), almost=True, b=-k + 1,
             ct=3 * k + 1, st=3 * k + 1, tau=3 * k * (k + 1)),
        "unicuspidal curves of type (d, d-2), simplest normal form", (RATIONAL_CUSPIDAL,), syzygies=syz)


def cjk(j: int, k: int) -> CatalogEntry:
    if j < 0 or k < 0 or j + k < 2:
        raise ValueError("cjk needs j, k >= 0 and j + k >= 2")
    d = 2 * (j + k) + 2
    return CatalogEntry(
        f"cjk(j={j},k={k})", _expand(f"(y^{k + j}*z+x^{k + j + 1})^2-x^{2 * j + 1}*y^{2 * k + 1}"),
        dict(kind="NearlyFree", exponents=(d // 2, d // 2), almost=True, b=-(d - 4) // 2,
             ct=(3 * d - 4) // 2, st=(3 * d - 4) // 2, tau=3 * d * (d - 2) // 4),
        "bicuspidal curves of type (d, d-2), double series C_{j,k}", (RATIONAL_CUSPIDAL,))


def nanduri(d: int, j: int, k: int, F1: str = "", F2: str = "") -> CatalogEntry:
    """Free curves x^{d-j} F1 + y^{j1} F2 + x^k y^{d-k-1} z with j1 = [d/2]+j+1.

    Defaults: F1 = x^j + y^j (or 1 when j = 0), F2 = x^{d-j1} + y^{d-j1}.
    The closed Milnor number d^2-3d+1 is listed only for k >= 1: with k = 0 the
    monomial y^{d-1} z makes the Newton polygon meet the y-axis at d-1 rather
    than d, and the singularity is unibranch with mu = (d-1)(d-2).
    """
    if d < 5 or j < 0 or k < 0 or j + k > (d + 1) // 2 - 3:
        raise ValueError("nanduri needs d >= 5 and 0 <= j+k <= [(d+1)/2]-3")
    j1 = d // 2 + j + 1
    F1 = F1 or ("1" if j == 0 else f"x^{j}+y^{j}")
    F2 = F2 or f"x^{d - j1}+y^{d - j1}"
    for label, text, deg in (("F1", F1, j), ("F2", F2, d - j1)):
        if _evaluate(text).degree != deg:
            raise ValueError(f"{label} must have degree {deg}")
    poly = _expand(f"x^{d - j}*({F1})+y^{j1}*({F2})+x^{k}*y^{d - k - 1}*z")
    v = d // 2
    if d % 2:
        expected = dict(kind="Free", exponents=(v, v), tau=3 * v * v)
    else:
        expected = dict(kind="Free", exponents=(v - 1, v), tau=3 * v * v - 3 * v + 1)
    if k >= 1:
        expected["mu"] = d * d - 3 * d + 1
        expected["defect"] = (d - 1) * (d - 2) - expected["mu"]
    return CatalogEntry(f"nanduri(d={d},j={j},k={k},F1={F1},F2={F2})", poly, expected,
                        "free curves with parameters d, j, k")


FAMILIES: dict[str, Callable[..., CatalogEntry]] = {
    "st1": st1, "st2": st2, "prop0": prop0, "cjk": cjk, "nanduri": nanduri,
}

# Parameter sweeps that make up the shipped corpus.
DEFAULT_PARAMETERS = {
    "st1": [dict(d=d) for d in range(3, 11)],
    "st2": [dict(d=d, k=k) for d in range(4, 11) for k in range(2, d // 2 + 1)],
    "prop0": [dict(k=k) for k in range(2, 6)],
    "cjk": [dict(j=j, k=s - j) for s in range(2, 6) for j in range(0, s + 1)],
    "nanduri": [dict(d=6, j=0, k=0), dict(d=7, j=0, k=0, F1="1", F2="x^3+y^3"),
                dict(d=7, j=0, k=1), dict(d=7, j=1, k=0)],
}

_FIXED = {e.name: e for e in _fixed()}


def entry(name: str, **params) -> CatalogEntry:
    """A fixed entry by name, or a family member given its parameters."""
    if name in FAMILIES:
        try:
            return FAMILIES[name](**params)
        except TypeError as exc:
            raise UnknownName(f"bad parameters for family {name!r}: {exc}") from None
    if params:
        raise UnknownName(f"{name!r} is not a parametric family")
    try:
        return _FIXED[name]
    except KeyError:
        raise UnknownName(f"unknown catalog entry {name!r}") from None


def names() -> list:
    """Names of the fixed entries followed by the family names."""
    return list(_FIXED) + list(FAMILIES)


def corpus() -> list:
    """Every fixed entry plus the default family instances."""
    out = list(_FIXED.values())
    for fam, plist in DEFAULT_PARAMETERS.items():
        out.extend(FAMILIES[fam](**p) for p in plist)
    return out


def dumps(entries=None) -> str:
    entries = corpus() if entries is None else entries
    return json.dumps([e.to_record() for e in entries], indent=2, sort_keys=True)


def loads(text: str) -> list:
    """Corpus records back into entries."""
    return [CatalogEntry(r["name"], r["polynomial"], _from_jsonable(r["expected"]),
                         r["provenance"], tuple(r.get("tags", ())), tuple(r.get("lines", ())),
                         {k: tuple(v) for k, v in r.get("syzygies", {}).items()})
            for r in json.loads(text)]
