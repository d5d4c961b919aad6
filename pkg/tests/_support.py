"""Small helpers shared by the test modules."""

import sympy

from nearlyfree.poly import Curve, HomPoly, parse

X, Y, Z = sympy.symbols("x y z")


def expand(text: str) -> HomPoly:
    """Parse a product/power expression by letting sympy expand it first."""
    return parse(str(sympy.expand(sympy.sympify(text.replace("^", "**")))).replace("**", "^"))


def curve(text: str, **kw) -> Curve:
    return Curve.from_poly(expand(text), **kw)


def to_sympy(f: HomPoly):
    return sympy.expand(sum(sympy.Rational(c.numerator, c.denominator) * X ** a * Y ** b * Z ** e
                            for (a, b, e), c in f.terms.items()))


def brute_force_triples(max_degree):
    """Realizable triples built straight from the six lists, with sympy's Fibonacci."""
    F = lambda j: int(sympy.fibonacci(j))  # noqa: E731
    out = set()
    for d in range(3, max_degree + 1):
        out.add((d - 1, d, d, 1))
        if d % 2 == 0:
            out.add((d // 2, 2 * d - 1, d, 2))
        for j in range(5, 40, 2):
            if F(j - 2) * F(j) == d:
                out.add((F(j - 2) ** 2, F(j) ** 2, d, 3))
            if F(j) == d:
                out.add((F(j - 2), F(j + 2), d, 4))
    out |= {(a, b, d, c) for (a, b, d, c) in ((3, 22, 8, 5), (6, 43, 16, 6)) if d <= max_degree}
    return out


# criterion number -> (passed, detail); filled by the acceptance suite
ACCEPTANCE_RESULTS: dict = {}
