import pytest

from superyangian.classify import (build_iso, hopf_class, hopf_classes,
                                   hopf_distinguisher, superalgebra_class,
                                   verify_iso)
from superyangian.rootdata import ParityDiagram, build_root_system


def test_superalgebra_class():
    assert superalgebra_class(ParityDiagram.parse("EEO")) == ["EEO", "EOE", "OEE"]
    assert len(superalgebra_class(ParityDiagram.parse("EEOO"))) == 6
    cls = superalgebra_class(ParityDiagram.parse("EOOEO"))
    assert all(text[::-1] in cls for text in cls)


def test_hopf_classes_small():
    assert hopf_classes(2, 1) == [["EEO", "OEE"], ["EOE"]]
    assert hopf_classes(2, 2) == [["EEOO", "OOEE"], ["EOEO", "OEOE"],
                                  ["EOOE"], ["OEEO"]]


def test_hopf_class_membership_symmetric():
    for length in range(2, 6):
        for ne in range(1, length):
            for cls in hopf_classes(ne, length - ne):
                for text in cls:
                    members, _ = hopf_class(ParityDiagram.parse(text))
                    assert sorted(members) == cls


def test_odd_count_invariance_up_to_length_six():
    for length in range(2, 7):
        for ne in range(1, length):
            for cls in hopf_classes(ne, length - ne):
                counts = set()
                for text in cls:
                    rs = build_root_system(ParityDiagram.parse(text))
                    counts.add(sum(rs.simple_parity(i)
                                   for i in range(1, rs.rank + 1)))
                assert len(counts) == 1
                sc = set(superalgebra_class(ParityDiagram.parse(cls[0])))
                assert set(cls) <= sc


def test_build_iso_tables():
    d1, d2 = ParityDiagram.parse("EEO"), ParityDiagram.parse("OEE")
    spec = build_iso("reversal", d1, d2)
    # the reversal sends the first simple index to the last
    assert spec.index_map == {1: 2, 2: 1}
    with pytest.raises(ValueError):
        build_iso("reversal", d1, ParityDiagram.parse("EOE"))
    d3, d4 = ParityDiagram.parse("EOEO"), ParityDiagram.parse("OEOE")
    swap = build_iso("parity-swap", d3, d4)
    assert swap.flip
    refl = build_iso("reflection", d1, d1)
    assert refl.index_map == {1: 1, 2: 2}


def test_verify_isos():
    d = ParityDiagram.parse("EEO")
    _, witnesses = hopf_class(d)
    assert witnesses, "the reversal witness must be emitted"
    for w in witnesses:
        report = verify_iso(w, cap=3, max_level=1)
        assert all(r["passed"] for r in report)
    # identity relabeling verifies trivially
    refl = build_iso("reflection", d, d)
    assert all(r["passed"] for r in verify_iso(refl, cap=2, max_level=1))


def test_verify_parity_swap_iso():
    d3, d4 = ParityDiagram.parse("EOEO"), ParityDiagram.parse("OEOE")
    swap = build_iso("parity-swap", d3, d4)
    report = verify_iso(swap, cap=3, max_level=1)
    assert all(r["passed"] for r in report)
    both = build_iso("swap-reversal", d3, ParityDiagram.parse("EOEO"))
    report = verify_iso(both, cap=3, max_level=1)
    assert all(r["passed"] for r in report)


def test_distinguisher():
    out = hopf_distinguisher(ParityDiagram.parse("EEO"), ParityDiagram.parse("EOE"))
    assert out["verdict"] == "distinct"
    out = hopf_distinguisher(ParityDiagram.parse("EEO"), ParityDiagram.parse("OEE"))
    assert out["verdict"] == "same-class"
    assert out["witnesses"]
    out = hopf_distinguisher(ParityDiagram.parse("EOOE"), ParityDiagram.parse("OEEO"))
    assert out["verdict"] == "not-connected"
