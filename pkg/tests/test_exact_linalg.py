from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from nearlyfree import exact_linalg as la
from nearlyfree.errors import PrimeDisagreement
from nearlyfree.exact_linalg import GF, QQ, ExactMatrix, PrimeFieldElement, PrimeSampler
from nearlyfree.jacobian import MilnorAlgebra
from nearlyfree.poly import Curve, dim_s, monomial_basis

small_ints = st.integers(min_value=-4, max_value=4)


@st.composite
def int_matrices(draw, max_rows=6, max_cols=6):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(small_ints) for _ in range(c)] for _ in range(r)], c


def test_identity_rank():
    assert la.rank(ExactMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 3


def test_proportional_rows():
    assert la.rank(ExactMatrix.from_rows([[1, 2], [2, 4]])) == 1


def test_jacobian_degree3_matrix_of_conic_plus_secant():
    # nine products u*f_i against the ten cubic monomials
    A = MilnorAlgebra(Curve.from_poly("x^3+x*y*z"))
    rows = A.jacobian_rows(3)
    m = ExactMatrix.from_rows([[r.get(j, 0) for j in range(dim_s(3))] for r in rows])
    assert (m.row_count, m.col_count) == (9, 10)
    assert la.rank(m) == 8


def test_kernel_of_single_row():
    assert len(la.kernel_basis(ExactMatrix.from_rows([[1, 1, 1]]))) == 2


def test_kernel_of_invertible():
    assert la.kernel_basis(ExactMatrix.from_rows([[2, 1], [1, 1]])) == []


def test_degree_one_syzygy_of_conic_plus_secant():
    A = MilnorAlgebra(Curve.from_poly("x^3+x*y*z"))
    basis = A.ar_basis(1)
    assert len(basis) == 1
    vec = basis[0]
    mons = list(monomial_basis(1))
    s = len(mons)
    y, z = mons.index((0, 1, 0)), mons.index((0, 0, 1))
    # proportional to (0, y, -z)
    assert set(vec) == {s + y, 2 * s + z}
    assert vec[2 * s + z] == -vec[s + y]


def test_empty_matrix_rank_zero():
    m = ExactMatrix.zeros(0, 5)
    assert la.rank(m) == 0
    assert la.rank_with_guard(lambda fld: ExactMatrix.zeros(0, 500, fld)) == 0


def test_rational_field_normalizes():
    m = ExactMatrix.from_rows([[Fraction(1, 2), Fraction(2, 4)], [1, 1]])
    assert la.rank(m) == 1
    assert m.row(0)[1] == Fraction(1, 2)


def test_prime_field_element_arithmetic():
    p = 2147483647
    a = PrimeFieldElement(3, p)
    assert (a * a.inverse()).residue == 1
    assert (a - 5).residue == p - 2
    assert (a ** (p - 1)).residue == 1
    assert a / 3 == 1
    with pytest.raises(ValueError):
        a + PrimeFieldElement(1, 2147483629)
    with pytest.raises(ZeroDivisionError):
        PrimeFieldElement(0, p).inverse()


def test_prime_table_is_in_range_and_prime():
    assert len(la.PRIME_TABLE) >= 30
    for p in la.PRIME_TABLE:
        assert 2 ** 30 < p < 2 ** 31
        assert sympy.isprime(p)


def test_prime_sampler_is_reproducible():
    assert [PrimeSampler(7).draw() for _ in range(3)] == [PrimeSampler(7).draw()] * 3
    s1, s2 = PrimeSampler(11), PrimeSampler(11)
    assert [s1.pair() for _ in range(4)] == [s2.pair() for _ in range(4)]
    p, q = PrimeSampler(3).pair()
    assert p != q


def test_guard_agrees_with_rationals_on_large_matrix():
    rows = [[(i * j + i + 2 * j) % 7 - 3 for j in range(240)] for i in range(30)]
    log = []
    r = la.rank_with_guard(lambda fld: ExactMatrix.from_rows(rows, fld), seed=5, log=log)
    assert r == la.rank(ExactMatrix.from_rows(rows))
    assert log and log[-1][2] == "agree"


def test_guard_retries_after_unlucky_prime():
    seed = 4
    p, _ = PrimeSampler(seed).pair()
    cols = 3

    def builder(fld):
        return ExactMatrix.from_rows([[p, 0, 0], [0, 1, 0], [0, 0, 1]], fld)

    log = []
    r = la.rank_with_guard(builder, seed=seed, threshold=cols - 1, log=log)
    assert r == 3
    assert log[0][0] == p and log[0][2] == "PrimeDisagreement"
    assert log[-1][2] == "agree"


def test_guard_falls_back_to_rationals_when_every_pair_disagrees():
    class Always:
        def __init__(self):
            self.calls = 0

        def pair(self):
            self.calls += 1
            return la.PRIME_TABLE[0], la.PRIME_TABLE[1]

    p = la.PRIME_TABLE[0]
    builder = lambda fld: ExactMatrix.from_rows([[p, 0], [0, 1]], fld)  # noqa: E731
    log = []
    s = Always()
    assert la.rank_with_guard(builder, threshold=1, sampler=s, log=log) == 2
    assert s.calls == la.GUARD_RETRIES + 1
    assert log[-1] == (None, None, "fallback-QQ")


def test_modular_pair_rank_disagreement_raises():
    p, q = la.PRIME_TABLE[:2]
    with pytest.raises(PrimeDisagreement):
        la.modular_pair_rank(lambda fld: ExactMatrix.from_rows([[p]], fld), p, q)


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_rank_matches_sympy(data):
    rows, c = data
    m = ExactMatrix.from_rows(rows, col_count=c)
    expected = sympy.Matrix(rows).rank() if rows else 0
    assert la.rank(m) == expected
    assert la.rank(m.over(GF(2147483647))) == expected


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_rank_nullity_and_kernel_vectors(data):
    rows, c = data
    for fld in (QQ, GF(2147483629)):
        m = ExactMatrix.from_rows(rows, fld, col_count=c)
        ker = la.kernel_basis(m)
        assert la.rank(m) + len(ker) == c
        for v in ker:
            assert all(fld.normalize(x) == 0 for x in m.apply(v))


@settings(max_examples=40, deadline=None)
@given(int_matrices())
def test_row_reduce_is_reduced(data):
    rows, c = data
    ech = la.row_reduce(ExactMatrix.from_rows(rows, col_count=c))
    for piv, row in ech.rows.items():
        assert row[piv] == 1
        for other, orow in ech.rows.items():
            if other != piv:
                assert orow.get(piv, 0) == 0


def test_transpose_and_apply():
    m = ExactMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    t = m.transpose()
    assert (t.row_count, t.col_count) == (3, 2)
    assert t.row(2) == (3, 6)
    assert m.apply([1, 0, -1]) == [-2, -2]


def test_matrix_shape_is_validated():
    with pytest.raises(ValueError):
        ExactMatrix(2, 2, (1, 2, 3), QQ)
