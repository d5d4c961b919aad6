import pytest
import sympy

from _support import curve
from nearlyfree import catalog
from nearlyfree.errors import DegreeMismatch, InconsistentTable
from nearlyfree.exact_linalg import GF
from nearlyfree.jacobian import (BettiTable, MilnorAlgebra, SyzygyVector, analyze, ar_dims,
                                 betti_table, classify, ct, ct_direct, hilbert_profile,
                                 jacobian_module_dims, mdr, minimal_generator_degrees_AR,
                                 resolution_shape, smooth_reference, verify_second_syzygy,
                                 verify_syzygy)
from nearlyfree.poly import HomPoly, dim_s, monomial_basis, parse

CONIC_SECANT = "x^3+x*y*z"
QUARTIC_3CUSPS = "x^2*y^2+y^2*z^2+x^2*z^2-2*x*y*z*(x+y+z)"
ZARISKI = "(x^2+y^2)^3+(y^3+z^3)^2"


def test_hilbert_profile_conic_plus_secant():
    h = hilbert_profile(curve(CONIC_SECANT))
    assert h.values == (1, 3, 3, 2, 2, 2, 2)
    assert (h.tau, h.st, h.K) == (2, 3, 6)


def test_hilbert_profile_smooth_cubic():
    h = hilbert_profile(curve("x^3+y^3+z^3"))
    assert h.values == (1, 3, 3, 1, 0, 0, 0) and h.tau == 0


def test_hilbert_profile_tau_of_unicuspidal_quintic():
    assert hilbert_profile(curve("x^5+y^4*z")).tau == 12


def test_hilbert_profile_initial_segment_and_plateau():
    h = hilbert_profile(curve(QUARTIC_3CUSPS))
    d = 4
    assert all(h.values[k] == dim_s(k) for k in range(d - 1))
    assert h.values[-3:] == (h.tau,) * 3
    assert h.m(100) == h.tau and h.m(-1) == 0


def _series(d):
    t = sympy.symbols("t")
    poly = sympy.Poly(sympy.expand(((1 - t ** (d - 1)) / (1 - t)).cancel() ** 3), t)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


@pytest.mark.parametrize("d", range(2, 10))
def test_smooth_reference_matches_series(d):
    ref = smooth_reference(d)
    assert ref.T == 3 * (d - 2)
    assert ref.values == _series(d)
    assert ref.values == ref.values[::-1]


def test_smooth_reference_examples():
    assert smooth_reference(3).values == (1, 3, 3, 1)
    assert smooth_reference(4).values == (1, 3, 6, 7, 6, 3, 1)
    r6 = smooth_reference(6)
    assert len(r6.values) == 13 and r6.values[6] == max(r6.values) == 19


def test_jacobian_module_dims_examples():
    assert jacobian_module_dims(hilbert_profile(curve(CONIC_SECANT))).values == (0, 1, 1, 0)
    n = jacobian_module_dims(hilbert_profile(curve("x^5+y^4*z")))
    assert [k for k in range(n.T + 1) if n.n(k) == 1] == [3, 4, 5, 6] and n.total == 4
    n = jacobian_module_dims(hilbert_profile(curve("x^7+y^2*z^3*(y+z)^2")))
    assert n.T == 15 and n.n(7) == 4


def test_ar_dims_examples():
    assert ar_dims(curve(CONIC_SECANT), 1) == 1
    assert ar_dims(curve("x^4+y^4+z^4"), 1) == 0
    assert ar_dims(curve("x^6+y^5*z"), 1) == 1


def test_mdr_examples():
    assert mdr(curve(CONIC_SECANT)) == 1
    assert mdr(curve(QUARTIC_3CUSPS)) == 2
    assert mdr(catalog.prop0(2).curve()) == 3
    assert mdr(curve("x^3+y^3+z^3")) is None


def test_ct_examples():
    assert ct(catalog.prop0(2).curve()) == 7
    assert ct(curve(CONIC_SECANT)) == 2
    assert ct(curve("x^6+y^5*z")) == 5
    assert ct_direct(hilbert_profile(curve(CONIC_SECANT))) == 2
    with pytest.raises(ValueError):
        ct(curve("x^2+y^2+z^2"))


def test_minimal_generator_degrees():
    assert minimal_generator_degrees_AR(curve(CONIC_SECANT)) == [1, 2, 2]
    six = catalog.entry("lines_6").curve()
    assert minimal_generator_degrees_AR(six) == [3, 3, 3]
    assert minimal_generator_degrees_AR(curve("(x^3+y^3+z^3)*(x+y)*(x+z)*(y+z)")) == [2, 4, 4]


def test_betti_tables():
    z = betti_table(curve(ZARISKI))
    assert (z.get(3, 11), z.get(3, 12), z.get(2, 8), z.get(2, 10), z.get(1, 5)) == (1, 1, 1, 3, 3)
    five = betti_table(catalog.entry("lines_5_generic").curve())
    assert (five.get(3, 8), five.get(2, 7), five.get(1, 4)) == (2, 4, 3)
    conic = betti_table(curve("x^2+y^2+z^2"))
    assert conic.entries == ((0, 0, 1), (1, 1, 3), (2, 2, 3), (3, 3, 1))


@pytest.mark.parametrize("text", [CONIC_SECANT, QUARTIC_3CUSPS, "x^5+y^4*z",
                                  "x*y*z*(x-z)*(x+y+z)"])
def test_betti_table_invariants(text):
    c = curve(text)
    bt = betti_table(c)
    assert bt.row(0) == {0: 1}
    assert bt.get(1, c.degree - 1) == 3
    assert all(v > 0 for _, _, v in bt.entries)


def test_resolution_shapes():
    q = resolution_shape(betti_table(curve(QUARTIC_3CUSPS)), 4)
    assert (q.kind, q.exponents, q.b) == ("NearlyFree", (2, 2, 2), 0)
    assert resolution_shape(betti_table(curve(ZARISKI)), 6).kind == "Other"
    tri = resolution_shape(betti_table(curve("x*y*z")), 3)
    assert (tri.kind, tri.exponents) == ("Free", (1, 1))


def test_resolution_shape_rejects_inconsistent_rank():
    bad = BettiTable.from_dict({(0, 0): 1, (1, 2): 3, (2, 4): 1, (3, 6): 1})
    with pytest.raises(InconsistentTable):
        resolution_shape(bad, 3)


def test_classify_examples():
    nodal = classify(curve("x*y*z+x^3+y^3"))
    assert nodal.kind == "Neither" and nodal.witness == (1, 2)
    five = classify(curve("x*y*z*(x-z)*(x+y+z)"))
    assert (five.kind, five.exponents, five.almost) == ("NearlyFree", (2, 3), True)
    n = jacobian_module_dims(hilbert_profile(curve("x*y*z*(x-z)*(x+y+z)")))
    assert n.support() == [4, 5]
    assert classify(curve("x^2+y^2+z^2")).kind == "Smooth"


def test_classify_degree_eleven_three_branch_curve():
    cls = classify(curve("x^11+y^11+x^2*y^6*(x+5*y)^2*z"))
    assert (cls.kind, cls.exponents, cls.tau) == ("NearlyFree", (5, 6), 74)


def test_classify_free_and_nearly_free_identities():
    for text in ("x*y*z", "x*y*z*(x+y+z)", CONIC_SECANT, "x^6+y^5*z"):
        c = curve(text)
        d = c.degree
        cls = classify(c)
        if cls.kind == "Free":
            assert cls.d1 + cls.d2 == d - 1
            assert cls.tau == (d - 1) ** 2 - cls.d1 * cls.d2
        else:
            assert cls.d1 + cls.d2 == d and cls.b == cls.d2 - d + 2
            assert cls.tau == (d - 1) ** 2 - cls.d1 * (cls.d2 - 1) - 1
            assert cls.st == cls.d2 + d - 2 and cls.ct + cls.st == 3 * d - 4


def test_verify_syzygy_examples():
    e = catalog.prop0(2)
    r1 = e.syzygy_vectors()["r1"]
    assert verify_syzygy(e.curve(), r1)
    c = curve(CONIC_SECANT)
    y, z = parse("y"), parse("z")
    assert verify_syzygy(c, SyzygyVector(HomPoly({}, 1), y, -z))
    one = HomPoly.constant(1)
    assert not verify_syzygy(c, SyzygyVector(one, HomPoly({}, 0), HomPoly({}, 0)))
    with pytest.raises(DegreeMismatch):
        verify_syzygy(c, SyzygyVector(one, y, HomPoly({}, 0)))


@pytest.mark.parametrize("k", [2, 3, 4])
def test_verify_second_syzygy_and_sign_flip(k):
    e = catalog.prop0(k)
    s = e.syzygy_vectors()
    c = e.curve()
    for r in ("r1", "r2", "r3"):
        assert verify_syzygy(c, s[r])
    v1, v2, v3 = s["R"]
    assert verify_second_syzygy(c, s["r1"], s["r2"], s["r3"], (v1, v2, v3))
    assert not verify_second_syzygy(c, s["r1"], s["r2"], s["r3"], (v1, -v2, v3))


def test_second_syzygy_degree_mismatch():
    e = catalog.prop0(2)
    s = e.syzygy_vectors()
    with pytest.raises(DegreeMismatch):
        verify_second_syzygy(e.curve(), s["r1"], s["r2"], s["r3"],
                             (parse("x^2"), parse("y"), parse("z")))


def test_modular_and_rational_agree():
    for text in (QUARTIC_3CUSPS, "x*y*z*(x-z)*(x+y+z)"):
        c = curve(text)
        assert analyze(c, field=GF(2147483647), betti=False).classification == \
            analyze(c, betti=False).classification


def test_report_checks_all_hold():
    rep = analyze(curve(QUARTIC_3CUSPS))
    bad = [k for k, v in rep.checks.items() if not v and k != "plateau_at_boundary"]
    assert bad == []
    assert rep.shape.kind == "NearlyFree"


def test_ar_basis_vectors_are_syzygies():
    c = curve(QUARTIC_3CUSPS)
    A = MilnorAlgebra(c)
    mons = monomial_basis(2)
    s = len(mons)
    for vec in A.ar_basis(2):
        comps = [HomPoly({mons[i - blk * s]: v for i, v in vec.items()
                          if blk * s <= i < (blk + 1) * s}, 2) for blk in range(3)]
        assert verify_syzygy(c, SyzygyVector(*comps))

