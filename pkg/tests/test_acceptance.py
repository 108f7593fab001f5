"""Acceptance suite: one test per criterion, exact equality throughout.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one line per
criterion.  Every tolerance is zero: checks compare exact rationals.
"""

import time
from fractions import Fraction

import pytest

from superyangian import suites
from superyangian.classify import hopf_class, hopf_classes, superalgebra_class, \
    verify_iso
from superyangian.exact import series_exp, series_log, series_sqrt_unit, \
    TruncSeries
from superyangian.loopmap import (G_series, G_series_bernoulli, check_ge_identity,
                                  hbar_over_q_minus_qinv, psi_direct_expansion,
                                  psi_partition_polynomial)
from superyangian.rootdata import ParityDiagram, all_diagrams, build_root_system
from superyangian.yangian import YangianAlgebra


def _report(criterion: str, passed: bool, detail: str, started: float) -> None:
    mark = "PASS" if passed else "FAIL"
    print(f"\n[{mark}] {criterion}: {detail} ({time.time() - started:.1f}s)")
    assert passed, f"{criterion}: {detail}"


def _failures(checks):
    return [c for c in checks if c["status"] == "fail"]


def test_criterion_01_lie_relations():
    t0 = time.time()
    total, bad = 0, 0
    count = 0
    for length in range(2, 7):
        for d in all_diagrams(length):
            count += 1
            checks = suites.suite_lie(d)
            total += len(checks)
            bad += len(_failures(checks))
    _report("criterion 1 (Lie relations, all diagrams length <= 6)",
            bad == 0, f"{count} diagrams, {total} relation checks, {bad} failures",
            t0)


def test_criterion_02_casimir():
    t0 = time.time()
    total, bad = 0, 0
    for length in range(2, 5):
        for d in all_diagrams(length):
            checks = suites.suite_casimir(d)
            assert all(c["status"] != "skip" for c in checks), d.text()
            total += len(checks)
            bad += len(_failures(checks))
    _report("criterion 2 (Casimir suite, all diagrams length <= 4)",
            bad == 0, f"{total} checks, {bad} failures", t0)


def test_criterion_03_half_casimir_brackets():
    t0 = time.time()
    total, bad = 0, 0
    for length in range(2, 5):
        for d in all_diagrams(length):
            checks = suites.suite_omega_plus(d)
            assert all(c["status"] != "skip" for c in checks), d.text()
            total += len(checks)
            bad += len(_failures(checks))
    _report("criterion 3 (half-Casimir bracket identities, length <= 4)",
            bad == 0, f"{total} checks, {bad} failures", t0)


def test_criterion_04_bialgebra_axioms():
    t0 = time.time()
    total, bad = 0, 0
    for length in range(2, 5):
        for d in all_diagrams(length):
            checks = suites.suite_bialgebra(d, max_power=2)
            assert all(c["status"] != "skip" for c in checks), d.text()
            total += len(checks)
            bad += len(_failures(checks))
    _report("criterion 4 (bialgebra axioms, generators x z^m, m <= 2, length <= 4)",
            bad == 0, f"{total} checks, {bad} failures", t0)


def test_criterion_05_weyl_suites():
    t0 = time.time()
    from superyangian import weyl
    ok = all(weyl.recompose(5, weyl.canonical_decompose(w)) == w
             for w in weyl.all_permutations(5))
    decompositions = {tuple(tuple(s) for s in weyl.canonical_decompose(w))
                      for w in weyl.all_permutations(5)}
    ok = ok and len(decompositions) == 120  # uniqueness
    total, bad = 0, 0
    for ne in range(1, 5):
        for nm in range(1, 6 - ne):
            checks = suites.suite_weyl(ne, nm)
            total += len(checks)
            bad += len(_failures(checks))
    d4 = ParityDiagram.parse("EEOO")
    perms = weyl.all_permutations(4)
    hom = all(weyl.act_on_basis(weyl.compose(w2, w1), d4).parities
              == weyl.act_on_basis(w2, weyl.act_on_basis(w1, d4)).parities
              for w1 in perms for w2 in perms)
    _report("criterion 5 (Weyl suites: decomposition on S5, transport on S4, "
            "Coxeter for counts <= 5)",
            ok and hom and bad == 0,
            f"{total} suite checks, {bad} failures", t0)


@pytest.mark.parametrize("text", ["EEO", "EEOO"])
def test_criterion_06_pbw_certification(text):
    t0 = time.time()
    checks = suites.suite_pbw(ParityDiagram.parse(text), cap=4, length=6,
                              words=200)
    bad = _failures(checks)
    _report(f"criterion 6 (PBW certification, {text} at caps (4,6), 200 words)",
            not bad, f"{len(checks)} checks, {len(bad)} failures", t0)


@pytest.mark.parametrize("text", ["EEO", "EEOO"])
def test_criterion_07_hopf_verification(text):
    t0 = time.time()
    d = ParityDiagram.parse(text)
    checks = suites.suite_hopf(d, cap=4)
    assert all(c["status"] != "skip" for c in checks), "constraints must admit"
    bad = _failures(checks)
    anti = suites.suite_antipode(d, cap=3)
    bad += _failures(anti)
    _report(f"criterion 7 (Hopf verification, {text}, caps (4,6), antipode (3,5))",
            not bad,
            f"{len(checks) + len(anti)} checks, {len(bad)} failures", t0)


@pytest.mark.parametrize("text", ["EEO", "EEOO"])
def test_criterion_08_quantization_consistency(text):
    t0 = time.time()
    checks = suites.suite_quantization(ParityDiagram.parse(text), cap=3)
    assert all(c["status"] != "skip" for c in checks)
    bad = _failures(checks)
    _report(f"criterion 8 (skew coproduct part vs classical cocommutator, {text})",
            not bad, f"{len(checks)} checks, {len(bad)} failures", t0)


def test_criterion_09_series_identities():
    t0 = time.time()
    ok = G_series(12) == G_series_bernoulli(12)
    for a in (Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2)):
        for plus in (True, False):
            ok = ok and check_ge_identity(a, plus, 1, 8)
    cap = 12
    u = TruncSeries.variable(("u",), cap, "u")
    one = TruncSeries.constant(("u",), cap, 1)
    ok = ok and series_exp(series_log(one + u)) == one + u
    ok = ok and series_log(series_exp(u)) == u
    unit = hbar_over_q_minus_qinv(12)
    root = series_sqrt_unit(unit)
    ok = ok and root * root == unit
    for r in range(6):
        diff = psi_partition_polynomial(r, 5, 8) - psi_direct_expansion(r, 5, 8)
        ok = ok and diff.is_zero()
    _report("criterion 9 (series identities: closed form to order 12, "
            "quotient identity to order 8, round trips, partition formulas)",
            ok, "all exact", t0)


def test_criterion_10_loop_relation_images():
    t0 = time.time()
    d = ParityDiagram.parse("EEO")
    checks = suites.suite_phi(d, cap=4)
    assert all(c["status"] != "skip" for c in checks)
    bad = _failures(checks)
    from superyangian.loopmap import check_ql_image
    Y4 = YangianAlgebra(ParityDiagram.parse("EEOO"), cap=4)
    extra = 0
    for kind in ("E", "F"):
        res = check_ql_image(Y4, "QL6",
                             {"i": 1, "j": 3, "k": 0, "l": 0, "kind": kind})
        if not Y4.is_zero(res):
            extra += 1
    _report("criterion 10 (loop relation images at caps (4,6))",
            not bad and extra == 0,
            f"{len(checks) + 2} checks, {len(bad) + extra} failures", t0)


def test_criterion_11_classification():
    t0 = time.time()
    ok = hopf_classes(2, 1) == [["EEO", "OEE"], ["EOE"]]
    ok = ok and hopf_classes(2, 2) == [["EEOO", "OOEE"], ["EOEO", "OEOE"],
                                       ["EOOE"], ["OEEO"]]
    for length in range(2, 7):
        for ne in range(1, length):
            for cls in hopf_classes(ne, length - ne):
                counts = set()
                for text in cls:
                    rs = build_root_system(ParityDiagram.parse(text))
                    counts.add(sum(rs.simple_parity(i)
                                   for i in range(1, rs.rank + 1)))
                ok = ok and len(counts) == 1
                ok = ok and set(cls) <= set(
                    superalgebra_class(ParityDiagram.parse(cls[0])))
    witness_checks, witness_bad = 0, 0
    for length in (2, 3, 4):
        for ne in range(1, length):
            for cls in hopf_classes(ne, length - ne):
                _, wits = hopf_class(ParityDiagram.parse(cls[0]))
                for w in wits:
                    report = verify_iso(w, cap=3, max_level=1)
                    witness_checks += len(report)
                    witness_bad += sum(1 for r in report if not r["passed"])
    _report("criterion 11 (classification classes, invariants to length 6, "
            "witnesses verified at caps (3,5))",
            ok and witness_bad == 0,
            f"{witness_checks} witness relation instances, {witness_bad} failures",
            t0)
