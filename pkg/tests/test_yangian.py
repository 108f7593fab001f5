import random

import pytest

from superyangian.enveloping import EnvelopingAlgebra
from superyangian.exact import HPoly
from superyangian.rootdata import ParityDiagram
from superyangian.yangian import (MINIMALISTIC_IDS, RELATION_IDS,
                                  MinimalisticConstraintError, YangianAlgebra,
                                  antipode, antipode_letter,
                                  check_antipode_axiom, check_coassociativity,
                                  check_counit_axiom, check_delta_homomorphism,
                                  count_free_supercommutative,
                                  count_yangian_monomials, counit, delta_letter,
                                  delta_degree_parity_ok, enumerate_monomials,
                                  minimalistic_constraints,
                                  minimalistic_instances, minimalistic_residue,
                                  relation_instances, relation_residue)


@pytest.fixture(scope="module")
def Y():
    return YangianAlgebra(ParityDiagram.parse("EEO"), cap=3)


@pytest.fixture(scope="module")
def Y4():
    return YangianAlgebra(ParityDiagram.parse("EEOO"), cap=3)


def test_basic_normal_forms(Y):
    nf = Y.normal_form_word((Y.x(1, (1, 1), 0), Y.x(-1, (1, 1), 0)),
                            HPoly.const(1))
    assert nf == {(Y.h(1, 0),): HPoly.const(1),
                  (Y.x(-1, (1, 1), 0), Y.x(1, (1, 1), 0)): HPoly.const(1)}
    assert Y.bracket_elements(Y.gen("h:1:0"), Y.gen("h:2:3")) == {}
    # odd letters square to zero
    sq = Y.normal_form_word((Y.x(1, (2, 2), 0), Y.x(1, (2, 2), 0)),
                            HPoly.const(1))
    assert sq == {}


def test_composite_letter_from_simple_bracket(Y):
    br = Y.bracket_letters(Y.x(1, (1, 1), 0), Y.x(1, (2, 2), 0))
    assert br == {(Y.x(1, (1, 2), 0),): HPoly.const(1)}


@pytest.mark.parametrize("text", ["EEO", "EOE", "EO", "EEOO", "EOOE"])
def test_defining_relations(text):
    Yx = YangianAlgebra(ParityDiagram.parse(text), cap=3)
    for rel in RELATION_IDS:
        for sign in (1, -1):
            for inst in relation_instances(Yx, rel, 2):
                assert not relation_residue(Yx, rel, inst, sign), (rel, sign, inst)


def test_associativity_random(Y4):
    rng = random.Random(7)
    letters = Y4.letters(2)
    for _ in range(40):
        a, b, c = (Y4.from_letter(rng.choice(letters)) for _ in range(3))
        lhs = Y4.mul(Y4.mul(a, b), c)
        rhs = Y4.mul(a, Y4.mul(b, c))
        assert Y4.sub(lhs, rhs) == {}


def test_super_jacobi_random(Y4):
    rng = random.Random(5)
    letters = Y4.letters(1)
    for _ in range(40):
        a, b, c = (rng.choice(letters) for _ in range(3))
        ea, eb, ec = (Y4.from_letter(t) for t in (a, b, c))
        pa, pb = Y4.letter_parity(a), Y4.letter_parity(b)
        lhs = Y4.bracket_elements(ea, Y4.bracket_elements(eb, ec))
        rhs = Y4.add(
            Y4.bracket_elements(Y4.bracket_elements(ea, eb), ec),
            Y4.scale(Y4.bracket_elements(eb, Y4.bracket_elements(ea, ec)),
                     -1 if (pa and pb) else 1))
        assert Y4.sub(lhs, rhs) == {}


def test_shifted_cartan_raising(Y):
    # the level-one shifted Cartan raises any simple mode by one level
    for i in (1, 2):
        for j in (1, 2):
            for r in range(Y.cap):
                for sign in (1, -1):
                    lhs = Y.bracket_elements(Y.htilde_element(i),
                                             Y.from_letter(Y.x(sign, (j, j), r)))
                    c = Y.rs.cartan[i - 1][j - 1]
                    rhs = Y.scale(Y.from_letter(Y.x(sign, (j, j), r + 1)),
                                  sign * c)
                    assert Y.sub(lhs, rhs) == {}


def test_higher_generator_rebuild(Y):
    for i in (1, 2):
        assert Y.sub(Y.build_higher_x(1, i, 2),
                     Y.from_letter(Y.x(1, (i, i), 2))) == {}
        assert Y.sub(Y.build_higher_h(i, 2), Y.from_letter(Y.h(i, 2))) == {}


def test_minimalistic_relations(Y):
    for rel in MINIMALISTIC_IDS:
        signs = (1,) if rel in ("min-h-commute", "min-h1-h2-commute") else (1, -1)
        for sign in signs:
            for inst in minimalistic_instances(Y, rel):
                assert not minimalistic_residue(Y, rel, inst, sign), (rel, inst)


def test_constraint_detection():
    assert minimalistic_constraints(ParityDiagram.parse("EEO")) == []
    assert minimalistic_constraints(ParityDiagram.parse("EEOO")) == []
    assert minimalistic_constraints(ParityDiagram.parse("EO")) != []
    assert minimalistic_constraints(ParityDiagram.parse("EOE")) != []
    assert minimalistic_constraints(ParityDiagram.parse("OEEO")) != []
    Ybad = YangianAlgebra(ParityDiagram.parse("EOE"), cap=2)
    with pytest.raises(MinimalisticConstraintError):
        delta_letter(Ybad, Ybad.h(1, 1))


def test_coproduct_images(Y):
    d0 = delta_letter(Y, Y.h(1, 0))
    assert d0.terms == {((Y.h(1, 0),), ()): HPoly.const(1),
                        ((), (Y.h(1, 0),)): HPoly.const(1)}
    # primitive part plus the paired corrections at level one
    d1 = delta_letter(Y, Y.h(1, 1))
    assert d1.terms[((Y.h(1, 1),), ())] == HPoly.const(1)
    assert d1.terms[((Y.h(1, 0),), (Y.h(1, 0),))] == HPoly.hbar(1)
    key = ((Y.x(-1, (1, 1), 0),), (Y.x(1, (1, 1), 0),))
    assert d1.terms[key] == HPoly.hbar(1, -2)


def test_counit(Y):
    assert counit(Y, Y.one()) == HPoly.const(1)
    assert counit(Y, Y.gen("h:1:1")) == HPoly()
    rng = random.Random(1)
    letters = Y.letters(1)
    for _ in range(20):
        a = Y.from_letter(rng.choice(letters))
        b = Y.from_letter(rng.choice(letters))
        assert counit(Y, Y.mul(a, b)) == counit(Y, a) * counit(Y, b)


def test_delta_homomorphism(Y):
    for rel in MINIMALISTIC_IDS:
        signs = (1,) if rel in ("min-h-commute", "min-h1-h2-commute") else (1, -1)
        for sign in signs:
            for inst in minimalistic_instances(Y, rel):
                assert check_delta_homomorphism(Y, rel, inst, sign), (rel, inst)


def test_coassociativity_and_counit_axioms(Y):
    gens = [Y.h(1, 0), Y.h(2, 0), Y.x(1, (1, 1), 0), Y.x(-1, (2, 2), 0),
            Y.h(1, 1), Y.h(2, 1)]
    for g in gens:
        e = Y.from_letter(g)
        assert check_coassociativity(Y, e)
        assert check_counit_axiom(Y, e)
        assert delta_degree_parity_ok(Y, g)


def test_antipode(Y):
    assert antipode_letter(Y, Y.x(1, (1, 1), 0)) == \
        Y.scale(Y.from_letter(Y.x(1, (1, 1), 0)), -1)
    gens = [Y.h(1, 0), Y.h(2, 0), Y.x(1, (1, 1), 0), Y.x(-1, (1, 1), 0),
            Y.x(1, (2, 2), 0), Y.x(-1, (2, 2), 0), Y.h(1, 1), Y.h(2, 1),
            Y.x(1, (1, 1), 1), Y.x(-1, (2, 2), 1)]
    for g in gens:
        assert check_antipode_axiom(Y, Y.from_letter(g))
    # level-zero root vectors all map to their negatives
    for root in Y.rs.positive_roots:
        for sign in (1, -1):
            letter = Y.x(sign, root, 0)
            assert antipode_letter(Y, letter) == \
                Y.scale(Y.from_letter(letter), -1)


def test_antipode_antimultiplicative(Y):
    rng = random.Random(9)
    letters = [L for L in Y.letters(1)]
    for _ in range(15):
        a, b = rng.choice(letters), rng.choice(letters)
        ea, eb = Y.from_letter(a), Y.from_letter(b)
        pa, pb = Y.letter_parity(a), Y.letter_parity(b)
        lhs = antipode(Y, Y.mul(ea, eb))
        rhs = Y.scale(Y.mul(antipode(Y, eb), antipode(Y, ea)),
                      -1 if (pa and pb) else 1)
        assert Y.sub(lhs, rhs) == {}


def test_classical_limit_oracle(Y4):
    oracle = EnvelopingAlgebra(Y4.matrix, cap=3, current=True, lowering="pbw")
    rng = random.Random(13)
    for _ in range(60):
        word = []
        for _ in range(rng.randint(1, 4)):
            kind = rng.choice(["h", "x+", "x-"])
            i = rng.randint(1, Y4.rank)
            r = rng.randint(0, 1)
            word.append((kind, i, r))
        yword = tuple(Y4.h(i, r) if k == "h"
                      else Y4.x(1 if k == "x+" else -1, (i, i), r)
                      for k, i, r in word)
        uword = tuple(("h", i, r) if k == "h"
                      else ("e" if k == "x+" else "f", i, i, r)
                      for k, i, r in word)
        ynf = Y4.at_hbar_zero(Y4.normal_form_word(yword, HPoly.const(1)))
        unf = oracle.at_hbar_zero(oracle.normal_form_word(uword, HPoly.const(1)))
        conv = {}
        for mon, c in unf.items():
            key = tuple(Y4.h(L[1], L[2]) if L[0] == "h"
                        else Y4.x(1 if L[0] == "e" else -1, (L[1], L[2]), L[3])
                        for L in mon)
            conv[key] = c
        assert ynf == conv


def test_graded_dimension_counts(Y):
    enumerated = enumerate_monomials(Y, 3, 3)
    cells = {}
    for word, k in enumerated:
        key = (Y.word_degree(word) + k, len(word))
        cells[key] = cells.get(key, 0) + 1
    assert cells == count_yangian_monomials(Y, 3, 3)
    assert cells == count_free_supercommutative(Y, 3, 3)
    # scalars: one monomial per degree at length zero
    for n in range(4):
        assert cells[(n, 0)] == 1
    # the level-zero alphabet of the smallest mixed diagram has eight letters
    letters0 = [L for L in Y.letters(0) if Y.letter_degree(L) == 0]
    assert len(letters0) == 8


def test_hopf_on_other_admissible_length_four_diagram():
    # the reversed block diagram is the other rank-3 pattern admitting the
    # finite presentation (outer roots even, middle odd)
    from superyangian import suites
    d = ParityDiagram.parse("OOEE")
    assert minimalistic_constraints(d) == []
    checks = suites.suite_hopf(d, cap=3)
    assert all(c["status"] == "pass" for c in checks)
