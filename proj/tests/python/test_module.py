import pytest

import trideriv

A = "T01*T02^3 + T11^3 + T21^2"
B = "T01*T02 + T11*T12 + T21^2"
C = "T01^2 + T11^2 + T21^2"


def test_trinomial_roundtrip():
    t = trideriv.Trinomial(A)
    assert t.exponents == [[1, 3], [3], [2]]
    assert t.n == 4
    assert t.polynomial() == A
    assert trideriv.Trinomial(t.structured()) == t
    assert t.gcds() == [1, 3, 2]
    assert t.is_factorial()
    assert not t.has_linear_term()
    assert hash(t) == hash(trideriv.Trinomial(A))


def test_parse_errors_are_value_errors():
    with pytest.raises(trideriv.ParseError):
        trideriv.Trinomial("T01 + T11")
    with pytest.raises(ValueError):
        trideriv.Trinomial("T01 ++ T11 + T21")
    assert issubclass(trideriv.ParseError, trideriv.TriderivError)


def test_grading_groups():
    assert trideriv.grading(A)["group"] == "Z^2"
    b = trideriv.grading(B)
    assert (b["free_rank"], b["torsion"]) == (3, [])
    c = trideriv.grading(C)
    assert (c["free_rank"], c["torsion"]) == (1, [2, 2])
    assert trideriv.grading(A)["degrees"]["T02"] == [0, 1]


def test_smith_normal_form():
    r = trideriv.smith_normal_form([[-2, 2, 0], [-2, 0, 2]])
    assert r["diagonal"] == [2, 2]
    assert r["rank"] == 2


def test_cone_contains():
    gens = [["1", "0"], ["1", "1"]]
    assert trideriv.cone_contains(gens, ["3/2", "1"])
    assert not trideriv.cone_contains(gens, ["0", "1"])


def test_families_and_images():
    fams = trideriv.families(A)
    assert [f["type"] for f in fams] == ["II", "II"]
    assert fams[0]["images"] == ["2*T21", "0", "0", "-T02^3"]
    assert trideriv.families(C) == []
    imgs = trideriv.elementary_derivation(B, "I", [2, 2, 1], None, ["1/2", "1/2", "-1"])
    assert imgs == ["0", "T11*T21", "0", "T01*T21", "-T01*T11"]
    assert trideriv.apply_derivation(B, imgs, "T01*T02 + T11*T12 + T21^2") == "0"


def test_normal_form_and_nilpotency():
    assert trideriv.normal_form("T21^2", C) == "-T11^2 - T01^2"
    v = trideriv.nilpotency(C, ["i*T21", "-T21", "-i*T01 + T11"])
    assert v["status"] == "nilpotent"
    assert max(v["indices"]) == 3


def test_analyze_report():
    r = trideriv.analyze(B)
    assert r["summary"] == {"type_I": 4, "type_II": 8, "all_verified": True}
    r = trideriv.analyze(A, basis=[[-3, 3], [1, 1], [0, 2], [0, 3]])
    assert r["basis_change"]["isomorphism"]
    r = trideriv.analyze(B, basis=[[2, 0, 1], [0, 2, -1], [2, 2, 1], [0, 0, -1], [1, 1, 0]])
    assert r["basis_change"]["respects_relations"]
    assert r["basis_change"]["free_index"] == 2


def test_cone_plot_data():
    d = trideriv.cone_plot_data(A, basis=[[-3, 3], [1, 1], [0, 2], [0, 3]])
    assert d["kind"] == "cone"
    assert d["dimension"] == 2
    assert len(d["derivations"]) == 2


def test_scan():
    rows, summary = trideriv.scan(1, 2, dedupe=True)
    assert summary["specs"] == len(rows)
    assert summary["consistent"]
    assert summary["failed_families"] == 0
    with pytest.raises(trideriv.TriderivError):
        trideriv.scan(2, 3, cap=3)
