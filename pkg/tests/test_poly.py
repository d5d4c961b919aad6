import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from nearlyfree.errors import (DegenerateLine, InvalidCurve, NotHomogeneous,
                               PolynomialSyntaxError, SingularMatrix)
from nearlyfree.poly import (Curve, HomPoly, dim_s, euler_check, format_poly, is_cone,
                             is_reduced_probabilistic, linear_change, monomial_basis, parse,
                             partials)

from _support import X, Y, Z, to_sympy
from _support import expand as _expand_product


@st.composite
def hompolys(draw, max_degree=5):
    d = draw(st.integers(0, max_degree))
    mons = monomial_basis(d)
    chosen = draw(st.lists(st.sampled_from(mons), min_size=1, max_size=6, unique=True))
    coefs = draw(st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=5),
                          min_size=len(chosen), max_size=len(chosen)))
    return HomPoly(dict(zip(chosen, coefs)), d)


def random_matrix(rng):
    while True:
        m = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)]
        if sympy.Matrix(m).det() != 0:
            return m


def test_parse_examples():
    f = parse("x^6 - y^4*z^2")
    assert f.degree == 6 and len(f.terms) == 2
    g = parse("x^2*y + y^3")
    assert g.degree == 3 and len(g.terms) == 2


def test_parse_rejects_inhomogeneous_with_degrees():
    with pytest.raises(NotHomogeneous) as exc:
        parse("x + y^2")
    assert exc.value.degrees == (1, 2)


@pytest.mark.parametrize("text", ["", "x +", "2x", "x^2*3", "w^2", "x^2 + 1/0*y^2", "x**2"])
def test_parse_syntax_errors(text):
    with pytest.raises(PolynomialSyntaxError):
        parse(text)


def test_parse_rational_coefficients_and_cancellation():
    f = parse("-3/2*x^2*y + 1/2*x^2*y + z^3")
    assert f.terms == {(2, 1, 0): Fraction(-1), (0, 0, 3): Fraction(1)}
    assert parse("x*y - y*x").is_zero()


@settings(max_examples=80, deadline=None)
@given(hompolys())
def test_format_parse_round_trip(f):
    assert parse(format_poly(f)) == f


def test_partials_examples():
    fx, fy, fz = partials(parse("x^3+x*y*z"))
    assert (fx, fy, fz) == (parse("3*x^2+y*z"), parse("x*z"), parse("x*y"))
    d = 7
    fx, fy, fz = partials(parse(f"x^{d} + y^{d - 1}*z"))
    assert fx == parse(f"{d}*x^{d - 1}")
    assert fy == parse(f"{d - 1}*y^{d - 2}*z")
    assert fz == parse(f"y^{d - 1}")
    assert all(p.is_zero() for p in partials(HomPoly.constant(5)))


@settings(max_examples=60, deadline=None)
@given(hompolys())
def test_partials_match_sympy(f):
    for i, v in enumerate((X, Y, Z)):
        assert to_sympy(partials(f)[i]) == sympy.diff(to_sympy(f), v)


@settings(max_examples=60, deadline=None)
@given(hompolys())
def test_euler_identity(f):
    assert euler_check(f)
    for p in partials(f):
        assert p.is_zero() or p.degree == f.degree - 1


def test_euler_check_detects_corruption():
    f = parse("x^3+x*y*z")
    good = f.derivative(0)
    # a "derivative" with a wrong coefficient breaks the identity
    bad = HomPoly({**good.terms, (2, 0, 0): Fraction(4)}, 2)
    x, y, z = (HomPoly.var(v) for v in "xyz")
    fx, fy, fz = partials(f)
    assert x * fx + y * fy + z * fz == f * 3
    assert x * bad + y * fy + z * fz != f * 3
    assert euler_check(HomPoly({}, 4))


def test_is_cone_examples():
    assert is_cone(parse("x^3+y^3"))
    assert not is_cone(parse("x^3+x*y*z"))
    assert not is_cone(parse("x*y*z"))
    # a cone stays a cone after a change of coordinates
    assert is_cone(linear_change(parse("x^3+y^3"), [[1, 0, 1], [0, 1, 1], [1, 1, 3]]))


def test_is_cone_invariant_under_linear_change():
    rng = random.Random(3)
    for text in ("x^3+y^3", "x^3+x*y*z", "x^4-y^2*z^2", "x*y*z*(x+y+z)"):
        f = _expand_product(text)
        g = linear_change(f, random_matrix(rng))
        assert is_cone(f) == is_cone(g)


def test_is_reduced_examples():
    assert not is_reduced_probabilistic(_expand_product("(x+y+z)^2*x"))
    assert is_reduced_probabilistic(_expand_product("x*y*z*(x+y+z)"))
    assert is_reduced_probabilistic(parse("x^6-y^5*z"))


def test_is_reduced_needs_a_trial():
    with pytest.raises(ValueError):
        is_reduced_probabilistic(parse("x^2+y^2+z^2"), trials=0)


def test_degenerate_lines_are_reported():
    # the zero polynomial vanishes on every line
    with pytest.raises(DegenerateLine):
        is_reduced_probabilistic(HomPoly({}, 3), trials=3)


def test_linear_change_examples():
    f = parse("x^5-y^3*z^2")
    assert linear_change(f, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == f
    swap = [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
    assert linear_change(f, swap) == parse("z^5-y^3*x^2")
    with pytest.raises(SingularMatrix):
        linear_change(f, [[1, 1, 0], [1, 1, 0], [0, 0, 1]])


@pytest.mark.parametrize("seed", range(5))
def test_linear_change_round_trip_and_group_action(seed):
    rng = random.Random(seed)
    f = _expand_product("x^3*y + y^3*z + z^3*x + 2*x*y*z*(x-y)")
    m, n = random_matrix(rng), random_matrix(rng)
    inv = [[Fraction(int(v.p), int(v.q)) for v in row] for row in sympy.Matrix(m).inv().tolist()]
    assert linear_change(linear_change(f, m), inv) == f
    nm = (sympy.Matrix(n) * sympy.Matrix(m)).tolist()
    assert linear_change(linear_change(f, m), n) == linear_change(f, nm)
    assert linear_change(f, m).degree == f.degree


def test_monomial_basis_sizes_and_order():
    assert monomial_basis(0) == ((0, 0, 0),)
    assert len(monomial_basis(2)) == 6
    assert len(monomial_basis(36)) == 703 == dim_s(36)
    assert list(monomial_basis(1)) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert list(monomial_basis(2)) == [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)]


def test_curve_validation():
    assert Curve.from_poly("x^3+x*y*z").not_cone_ok
    with pytest.raises(InvalidCurve):
        Curve.from_poly("x^3+y^3")
    with pytest.raises(InvalidCurve):
        Curve.from_poly(_expand_product("x^2*(y+z)"))
    with pytest.raises(InvalidCurve):
        Curve.from_poly("x+y")
    c = Curve.from_poly(_expand_product("x^2*(y+z)"), strict=False)
    assert not c.reduced_ok
