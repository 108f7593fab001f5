from fractions import Fraction

import pytest

from superyangian.currents import (casimir, check_casimir_invariance,
                                   check_casimir_supersymmetric,
                                   check_coantisymmetry, check_cocycle,
                                   check_cojacobi, cocommutator_current,
                                   cocommutator_loop, skew_root_part)
from superyangian.rootdata import (DiagramError, ParityDiagram, all_diagrams,
                                   build_root_system, distinguished_diagram,
                                   realize_matrix_algebra, root_height)


def test_parity_diagram_parsing():
    d = ParityDiagram.parse("EEO")
    assert d.parities == (0, 0, 1)
    assert ParityDiagram.parse("001").parities == (0, 0, 1)
    assert d.n_even == 2 and d.n_odd == 1
    with pytest.raises(DiagramError):
        ParityDiagram.parse("EEE")
    with pytest.raises(DiagramError):
        ParityDiagram.parse("E")
    with pytest.raises(DiagramError):
        ParityDiagram.parse("EXO")


def test_distinguished():
    assert distinguished_diagram(2, 1).text() == "EEO"
    assert distinguished_diagram(1, 1).text() == "EO"
    rs = build_root_system(distinguished_diagram(3, 2))
    odd = [i for i in range(1, rs.rank + 1) if rs.simple_parity(i)]
    assert odd == [3]


def test_cartan_matrices():
    assert build_root_system(ParityDiagram.parse("EEO")).cartan == [[2, -1], [-1, 0]]
    assert build_root_system(ParityDiagram.parse("EOE")).cartan == [[0, 1], [1, 0]]
    rs = build_root_system(ParityDiagram.parse("EEEEO"))
    for i in range(3):
        assert rs.cartan[i][i] == 2
        assert rs.cartan[i][i + 1] == -1


def test_cartan_symmetry_and_parity_rule():
    for length in range(2, 7):
        for d in all_diagrams(length):
            rs = build_root_system(d)
            for i in range(rs.rank):
                for j in range(rs.rank):
                    assert rs.cartan[i][j] == rs.cartan[j][i]
                assert (rs.cartan[i][i] == 0) == (rs.simple_parity(i + 1) == 1)
            assert len(rs.positive_roots) == rs.size * (rs.size - 1) // 2


def test_root_height():
    assert root_height((1, 1)) == 1
    assert root_height((1, 2)) == 2
    assert root_height((1, 3)) == 3


def test_matrix_realization_defining_relations():
    alg = realize_matrix_algebra(build_root_system(ParityDiagram.parse("EEO")),
                                 quotient=False)
    assert alg.bracket(alg.e[(1, 1)], alg.f[(1, 1)]) == alg.h[1]
    assert alg.bracket(alg.e[(2, 2)], alg.e[(2, 2)]) == {}


def test_nonstandard_serre_relation():
    # middle odd vertex of a length-4 diagram
    alg = realize_matrix_algebra(build_root_system(ParityDiagram.parse("EOEO")),
                                 quotient=False)
    rs = alg.rs
    j = 2
    assert rs.simple_parity(j) == 1
    m = alg.bracket(alg.bracket(alg.bracket(alg.e[(1, 1)], alg.e[(2, 2)]),
                                alg.e[(3, 3)]), alg.e[(2, 2)])
    assert m == {}


def test_casimir_shape_and_symmetries():
    alg = realize_matrix_algebra(build_root_system(ParityDiagram.parse("EEO")))
    om = casimir(alg)
    assert om.is_even()
    assert check_casimir_supersymmetric(alg, om)
    assert check_casimir_invariance(alg, om)


@pytest.mark.parametrize("text", ["EO", "OE", "EEOO", "EOEO", "EOOE"])
def test_casimir_on_balanced_diagrams(text):
    # balanced counts force the quotient realization; everything still holds
    alg = realize_matrix_algebra(build_root_system(ParityDiagram.parse(text)))
    assert alg.quotient
    om = casimir(alg)
    assert om.is_even()
    assert check_casimir_supersymmetric(alg, om)
    assert check_casimir_invariance(alg, om)


def test_plain_realization_rejects_degenerate_pairing():
    rs = build_root_system(ParityDiagram.parse("EO"))
    alg = realize_matrix_algebra(rs, quotient=False)
    with pytest.raises(DiagramError):
        alg.gram_inverse()


def test_cocommutator_basics():
    alg = realize_matrix_algebra(build_root_system(ParityDiagram.parse("EEO")))
    om = casimir(alg)
    assert cocommutator_current(alg, alg.h[1], 0, om).is_zero()
    d1 = cocommutator_current(alg, alg.h[1], 1, om)
    assert d1 == om.act(alg.h[1], 0, 0)
    w = skew_root_part(alg)
    assert w.term_count() == 6  # two entries per positive root
    # loop value at power zero keeps only the skew part
    phi0 = cocommutator_loop(alg, alg.e[(1, 1)], 0, om)
    direct = (w.act(alg.e[(1, 1)], 0, 0) + w.act(alg.e[(1, 1)], 0, 1)).scale(
        Fraction(1, 2))
    assert phi0 == direct


@pytest.mark.parametrize("text", ["EEO", "EOE", "EO"])
def test_bialgebra_axioms(text):
    alg = realize_matrix_algebra(build_root_system(ParityDiagram.parse(text)))
    om = casimir(alg)
    gens = []
    for i in range(1, alg.rs.rank + 1):
        gens += [alg.h[i], alg.e[(i, i)], alg.f[(i, i)]]
    for a in gens:
        for m in range(3):
            assert check_coantisymmetry(alg, a, m, omega=om)
            assert check_cojacobi(alg, a, m, omega=om)
    for a in gens[:3]:
        for b in gens[:3]:
            for p in range(2):
                for q in range(2):
                    assert check_cocycle(alg, a, p, b, q, omega=om)


def test_loop_bialgebra_axioms_samples():
    alg = realize_matrix_algebra(build_root_system(ParityDiagram.parse("EEO")))
    om = casimir(alg)
    assert check_cojacobi(alg, alg.h[1], 1, loop=True, omega=om)
    for m in (-2, -1, 0, 1, 2):
        assert check_coantisymmetry(alg, alg.e[(1, 1)], m, loop=True, omega=om)
    assert check_cocycle(alg, alg.e[(1, 1)], 1, alg.f[(1, 1)], -1,
                         loop=True, omega=om)
