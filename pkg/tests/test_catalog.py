import pytest

from nearlyfree import catalog, harness
from nearlyfree.errors import UnknownName
from nearlyfree.poly import euler_check

CORPUS = catalog.corpus()


def test_names_are_unique_and_listed():
    names = [e.name for e in CORPUS]
    assert len(names) == len(set(names))
    listed = catalog.names()
    for fam in catalog.FAMILIES:
        assert fam in listed


@pytest.mark.parametrize("e", CORPUS, ids=lambda e: e.name)
def test_every_entry_validates(e):
    c = e.curve()
    assert c.reduced_ok and c.not_cone_ok
    assert euler_check(c.f)
    assert e.provenance and e.expected


def test_family_examples():
    st1 = catalog.entry("st1", d=5)
    assert st1.expected["tau"] == 12 and st1.expected["exponents"] == (1, 4)
    assert st1.expected["n"] == {3: 1, 4: 1, 5: 1, 6: 1}
    p3 = catalog.entry("prop0", k=3)
    ex = p3.expected
    assert (ex["tau"], ex["exponents"], ex["ct"], ex["st"], ex["b"]) == (36, (4, 4), 10, 10, -2)
    c = catalog.entry("cjk", j=1, k=2)
    assert c.degree == 8 and c.expected["tau"] == 36 and c.expected["exponents"] == (4, 4)


def test_unknown_names_and_bad_parameters():
    with pytest.raises(UnknownName):
        catalog.entry("no_such_curve")
    with pytest.raises(UnknownName):
        catalog.entry("st1", e=3)
    with pytest.raises(UnknownName):
        catalog.entry("triangle", d=3)
    with pytest.raises(ValueError):
        catalog.st2(5, 4)
    with pytest.raises(ValueError):
        catalog.nanduri(7, 0, 0, F2="x^2")


def test_serialization_round_trip():
    text = catalog.dumps()
    back = catalog.loads(text)
    assert back == CORPUS
    assert catalog.dumps(back) == text


def test_mandatory_entries_present():
    names = {e.name for e in CORPUS}
    for required in ("smooth_conic", "smooth_cubic", "conic_secant", "nodal_cubic",
                     "quartic_3cusps", "quartic_A2A4", "quartic_A6", "zariski_sextic",
                     "lines_5_generic", "lines_4_generic", "lines_5_triple", "lines_6",
                     "line_plus_sextic", "cubic_three_lines", "three_branch_11",
                     "three_branch_13", "lines_7_chi", "sextic_C1a", "sextic_C4a_a1",
                     "sextic_C7_A1", "sextic_C7_A2", "sextic_C8_A1", "sextic_C8_A2",
                     "septic_base", "septic_deform_x3y4", "septic_deform_x5y2",
                     "septic_three_factors"):
        assert required in names
    families = {e.name.split("(")[0] for e in CORPUS if "(" in e.name}
    assert families == set(catalog.FAMILIES)


@pytest.mark.parametrize("e", CORPUS, ids=lambda e: e.name)
def test_entry_matches_expected(e):
    r = harness.verify_entry(e)
    assert r.error is None, r.error
    assert r.ok, r.mismatches


def test_harness_reports_mismatch_and_error():
    good = catalog.entry("conic_secant")
    bad = catalog.CatalogEntry("wrong", good.polynomial, {"tau": 3}, "deliberately wrong")
    r = harness.verify_entry(bad)
    assert not r.ok and r.mismatches == (("tau", 3, 2),)
    broken = catalog.CatalogEntry("broken", "x^2+y^2", {"tau": 0}, "a cone")
    r = harness.verify_entry(broken)
    assert not r.ok and "InvalidCurve" in r.error


def test_parallel_verification_preserves_order():
    es = [catalog.entry("conic_secant"), catalog.entry("triangle"), catalog.st1(4)]
    out = harness.verify_corpus(es, workers=2)
    assert [r.name for r in out] == [e.name for e in es] and all(r.ok for r in out)
