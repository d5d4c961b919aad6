from fractions import Fraction
from math import comb

import pytest

from nearlyfree import catalog
from nearlyfree.arrangements import (CharPoly2, LineArrangement, arrangement_mu_tau,
                                     characteristic_polynomial, chi_factorization_check,
                                     intersection_points, read_arrangement)
from nearlyfree.errors import InvalidArrangement, NotNearlyFree
from nearlyfree.jacobian import classify, hilbert_profile

FOUR = ("x", "y", "z", "x+y+z")
FIVE_TRIPLE = ("x", "y", "z", "x-z", "x+y+z")
SEVEN = ("x", "y", "x-y", "x-2*y", "x-3*y", "z", "x+5*y+7*z")


def arr(forms):
    return LineArrangement.from_forms(forms)


def test_triangle_points():
    pts = intersection_points(arr(("x", "y", "z")))
    assert [m for _, m in pts] == [2, 2, 2]


def test_four_generic_lines_points():
    pts = intersection_points(arr(FOUR))
    assert len(pts) == 6 and all(m == 2 for _, m in pts)


def test_triple_point_arrangement():
    pts = dict(intersection_points(arr(FIVE_TRIPLE)))
    assert pts.pop((0, 1, 0)) == 3
    assert sorted(pts.values()) == [2] * 7


@pytest.mark.parametrize("forms,mu", [(FOUR, 6), (FIVE_TRIPLE, 11), (SEVEN, 27)])
def test_mu_tau_matches_jacobian_tau(forms, mu):
    a = arr(forms)
    assert arrangement_mu_tau(a) == mu
    assert hilbert_profile(a.curve()).tau == mu


def test_characteristic_polynomials():
    chi = characteristic_polynomial(arr(FOUR))
    assert chi.coefficients == (1, -3, 3) and str(chi) == "t^2 - 3*t + 3"
    # chi - 1 = (t - 1)(t - 2)
    assert all(chi(t) - 1 == (t - 1) * (t - 2) for t in range(-5, 6))
    chi7 = characteristic_polynomial(arr(SEVEN))
    assert chi7.coefficients == (1, -6, 9)
    assert all(chi7(t) == (t - 3) ** 2 == (t - 2) * (t - 4) + 1 for t in range(-5, 6))


def test_chi_factorization():
    a4 = arr(FOUR)
    assert chi_factorization_check(a4, classify(a4.curve()))
    a7 = arr(SEVEN)
    cls = classify(a7.curve())
    assert cls.exponents == (2, 5)
    assert chi_factorization_check(a7, cls)
    tri = arr(("x", "y", "z"))
    with pytest.raises(NotNearlyFree):
        chi_factorization_check(tri, classify(tri.curve()))


def test_invalid_arrangements():
    with pytest.raises(InvalidArrangement):
        arr(("x", "y"))
    with pytest.raises(InvalidArrangement):
        arr(("x", "y", "2*x"))
    with pytest.raises(InvalidArrangement):
        arr(("x", "y", "x^2"))
    with pytest.raises(InvalidArrangement):
        LineArrangement(((0, 0, 0), (1, 0, 0), (0, 1, 0)))


def test_read_arrangement_file(tmp_path):
    p = tmp_path / "four.txt"
    p.write_text("# four lines\nx\ny  # second\n\nz\nx+y+z\n")
    a = read_arrangement(p)
    assert a.degree == 4 and a.lines[3] == (Fraction(1), Fraction(1), Fraction(1))


ARRANGEMENTS = [e for e in catalog.corpus() if e.lines]


@pytest.mark.parametrize("e", ARRANGEMENTS, ids=lambda e: e.name)
def test_corpus_arrangement_properties(e):
    a = arr(e.lines)
    pts = intersection_points(a)
    assert sum(comb(m, 2) for _, m in pts) == comb(a.degree, 2)
    assert arrangement_mu_tau(a) == hilbert_profile(a.curve()).tau
    cls = classify(a.curve())
    if cls.kind == "NearlyFree":
        assert chi_factorization_check(a, cls)
    else:
        with pytest.raises(NotNearlyFree):
            chi_factorization_check(a, cls)


def test_charpoly_value_semantics():
    assert CharPoly2(3, 3)(0) == 3
