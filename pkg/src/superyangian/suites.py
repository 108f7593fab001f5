"""Verification suites aggregating the module-level checks.

Each suite returns a list of check records {name, status, detail} with
status "pass", "fail", or "skip"; a suite passes when nothing failed.
Independent checks may be dispatched across a bounded worker pool; the
output order is the submission order regardless of completion order.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from . import classify as classify_mod
from . import currents, loopmap, weyl
from .enveloping import EnvelopingAlgebra, boxed, omega_plus
from .exact import HPoly
from .pbw import KTensor
from .rootdata import (DiagramError, Mat, ParityDiagram, build_root_system,
                       mat_scale, realize_matrix_algebra)
from .yangian import (MINIMALISTIC_IDS, RELATION_IDS, MinimalisticConstraintError,
                      YangianAlgebra, check_antipode_axiom,
                      check_coassociativity, check_counit_axiom,
                      check_delta_homomorphism, count_yangian_monomials,
                      count_free_supercommutative, delta_degree_parity_ok,
                      delta_letter, enumerate_monomials, minimalistic_constraints,
                      minimalistic_instances, relation_instances,
                      relation_residue)

Check = Dict[str, object]


def _check(name: str, fn: Callable[[], Tuple[bool, str]]) -> Check:
    try:
        ok, detail = fn()
        return {"name": name, "status": "pass" if ok else "fail", "detail": detail}
    except (DiagramError, MinimalisticConstraintError) as exc:
        return {"name": name, "status": "skip", "detail": str(exc)}


def run_checks(builders: List[Tuple[str, Callable]], jobs: int = 1) -> List[Check]:
    if jobs <= 1:
        return [_check(name, fn) for name, fn in builders]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [(name, pool.submit(_check, name, fn)) for name, fn in builders]
        return [f.result() for _, f in futures]


def suite_passed(checks: List[Check]) -> bool:
    return all(c["status"] != "fail" for c in checks)


# -- Lie superalgebra relations in the matrix realization ----------------------------


def suite_lie(diagram: ParityDiagram) -> List[Check]:
    rs = build_root_system(diagram)
    alg = realize_matrix_algebra(rs, quotient=False)
    rank = rs.rank
    checks: List[Check] = []

    def bracket_is(m, target, label):
        diff = alg.bracket if False else None
        got = m
        ok = got == target
        return ok, label

    for i in range(1, rank + 1):
        for j in range(1, rank + 1):
            hh = alg.bracket(alg.h[i], alg.h[j])
            checks.append({"name": f"cartan-commute[{i},{j}]",
                           "status": "pass" if hh == {} else "fail",
                           "detail": ""})
            he = alg.bracket(alg.h[i], alg.e[(j, j)])
            target = mat_scale(alg.e[(j, j)], rs.cartan[i - 1][j - 1])
            checks.append({"name": f"cartan-raising[{i},{j}]",
                           "status": "pass" if he == target else "fail",
                           "detail": ""})
            hf = alg.bracket(alg.h[i], alg.f[(j, j)])
            target = mat_scale(alg.f[(j, j)], -rs.cartan[i - 1][j - 1])
            checks.append({"name": f"cartan-lowering[{i},{j}]",
                           "status": "pass" if hf == target else "fail",
                           "detail": ""})
            ef = alg.bracket(alg.e[(i, i)], alg.f[(j, j)])
            target = alg.h[i] if i == j else {}
            checks.append({"name": f"pair-cartan[{i},{j}]",
                           "status": "pass" if ef == target else "fail",
                           "detail": ""})
    for i in range(1, rank + 1):
        ee = alg.bracket(alg.e[(i, i)], alg.e[(i, i)])
        ff = alg.bracket(alg.f[(i, i)], alg.f[(i, i)])
        checks.append({"name": f"self-bracket[{i}]",
                       "status": "pass" if ee == {} and ff == {} else "fail",
                       "detail": ""})
    for i in range(1, rank + 1):
        if rs.simple_parity(i):
            continue
        for j in (i - 1, i + 1):
            if not 1 <= j <= rank:
                continue
            power = 1 + abs(rs.cartan[i - 1][j - 1])
            me = alg.e[(j, j)]
            mf = alg.f[(j, j)]
            for _ in range(power):
                me = alg.bracket(alg.e[(i, i)], me)
                mf = alg.bracket(alg.f[(i, i)], mf)
            checks.append({"name": f"serre[{i},{j}]",
                           "status": "pass" if me == {} and mf == {} else "fail",
                           "detail": ""})
    for j in range(2, rank):
        if not rs.simple_parity(j):
            continue
        me = alg.bracket(alg.bracket(alg.bracket(
            alg.e[(j - 1, j - 1)], alg.e[(j, j)]), alg.e[(j + 1, j + 1)]),
            alg.e[(j, j)])
        mf = alg.bracket(alg.bracket(alg.bracket(
            alg.f[(j - 1, j - 1)], alg.f[(j, j)]), alg.f[(j + 1, j + 1)]),
            alg.f[(j, j)])
        checks.append({"name": f"serre-quartic[{j}]",
                       "status": "pass" if me == {} and mf == {} else "fail",
                       "detail": ""})
    return checks


def suite_casimir(diagram: ParityDiagram) -> List[Check]:
    rs = build_root_system(diagram)
    alg = realize_matrix_algebra(rs)
    checks: List[Check] = []
    try:
        om = currents.casimir(alg)
    except DiagramError as exc:
        return [{"name": "casimir-build", "status": "skip", "detail": str(exc)}]
    checks.append({"name": "casimir-even",
                   "status": "pass" if om.is_even() else "fail", "detail": ""})
    checks.append({"name": "casimir-supersymmetric",
                   "status": "pass"
                   if currents.check_casimir_supersymmetric(alg, om) else "fail",
                   "detail": ""})
    checks.append({"name": "casimir-invariant",
                   "status": "pass"
                   if currents.check_casimir_invariance(alg, om) else "fail",
                   "detail": ""})
    return checks


def suite_omega_plus(diagram: ParityDiagram) -> List[Check]:
    """The three bracket identities of the half Casimir, in the
    enveloping algebra."""
    rs = build_root_system(diagram)
    alg = realize_matrix_algebra(rs)
    try:
        alg.gram_inverse()
    except DiagramError as exc:
        return [{"name": "omega-plus-build", "status": "skip", "detail": str(exc)}]
    ue = EnvelopingAlgebra(alg)
    op = omega_plus(ue)
    checks: List[Check] = []
    for i in range(1, rs.rank + 1):
        h = ue.element_from_matrix(alg.h[i])
        e = ue.element_from_matrix(alg.e[(i, i)])
        f = ue.element_from_matrix(alg.f[(i, i)])
        r1 = boxed(ue, h).bracket(op)
        checks.append({"name": f"omega-plus-cartan[{i}]",
                       "status": "pass" if r1.is_zero() else "fail", "detail": ""})
        r2 = boxed(ue, e).bracket(op) + KTensor.from_elements(ue, 2, (e, h))
        checks.append({"name": f"omega-plus-raising[{i}]",
                       "status": "pass" if r2.is_zero() else "fail", "detail": ""})
        r3 = boxed(ue, f).bracket(op) - KTensor.from_elements(ue, 2, (h, f))
        checks.append({"name": f"omega-plus-lowering[{i}]",
                       "status": "pass" if r3.is_zero() else "fail", "detail": ""})
    return checks


def suite_bialgebra(diagram: ParityDiagram, max_power: int = 2) -> List[Check]:
    rs = build_root_system(diagram)
    alg = realize_matrix_algebra(rs)
    try:
        om = currents.casimir(alg)
    except DiagramError as exc:
        return [{"name": "bialgebra-build", "status": "skip", "detail": str(exc)}]
    gens: List[Tuple[str, Mat]] = []
    for i in range(1, rs.rank + 1):
        gens.append((f"h{i}", alg.h[i]))
        gens.append((f"e{i}", alg.e[(i, i)]))
        gens.append((f"f{i}", alg.f[(i, i)]))
    checks: List[Check] = []
    for name, a in gens:
        for m in range(max_power + 1):
            ok = currents.check_coantisymmetry(alg, a, m, omega=om)
            checks.append({"name": f"coantisymmetry[{name},z^{m}]",
                           "status": "pass" if ok else "fail", "detail": ""})
            ok = currents.check_cojacobi(alg, a, m, omega=om)
            checks.append({"name": f"cojacobi[{name},z^{m}]",
                           "status": "pass" if ok else "fail", "detail": ""})
    for name_a, a in gens[:3]:
        for name_b, b in gens[:3]:
            for p in range(2):
                for q in range(2):
                    ok = currents.check_cocycle(alg, a, p, b, q, omega=om)
                    checks.append({
                        "name": f"cocycle[{name_a},{name_b},{p},{q}]",
                        "status": "pass" if ok else "fail", "detail": ""})
    return checks


def suite_weyl(n_even: int, n_odd: int) -> List[Check]:
    diagram = ParityDiagram.distinguished(n_even, n_odd)
    n = len(diagram)
    checks: List[Check] = []
    perms = weyl.all_permutations(min(n, 5))
    ok = all(weyl.recompose(min(n, 5), weyl.canonical_decompose(w)) == w
             for w in perms)
    checks.append({"name": "decompose-recompose",
                   "status": "pass" if ok else "fail",
                   "detail": f"all of S{min(n, 5)}"})
    rep = weyl.check_coxeter(diagram)
    for section, results in rep.items():
        bad = [r for r in results if not r["passed"]]
        checks.append({"name": f"coxeter-{section}",
                       "status": "pass" if not bad else "fail",
                       "detail": f"{len(results)} relations"})
    if n <= 4:
        perms_n = weyl.all_permutations(n)
        ok = all(weyl.act_on_basis(weyl.compose(w2, w1), diagram).parities
                 == weyl.act_on_basis(w2, weyl.act_on_basis(w1, diagram)).parities
                 for w1 in perms_n for w2 in perms_n)
        checks.append({"name": "transport-homomorphism",
                       "status": "pass" if ok else "fail",
                       "detail": f"all pairs in S{n}"})
    member = weyl.weyl_subgroup_members(diagram)
    count = sum(1 for w in weyl.all_permutations(n) if member(w))
    checks.append({"name": "subgroup-order",
                   "status": "pass" if count == weyl.weyl_group_order(diagram)
                   else "fail", "detail": str(count)})
    ok = all(weyl.grade(w, diagram) == 0
             for w in weyl.all_permutations(n) if member(w))
    checks.append({"name": "members-even-grade",
                   "status": "pass" if ok else "fail", "detail": ""})
    return checks


def suite_pbw(diagram: ParityDiagram, cap: int, length: int,
              words: int = 200, seed: int = 20260809) -> List[Check]:
    Y = YangianAlgebra(diagram, cap)
    checks: List[Check] = []
    enumerated = enumerate_monomials(Y, cap, length)
    cells: Dict[Tuple[int, int], int] = {}
    for word, k in enumerated:
        key = (Y.word_degree(word) + k, len(word))
        cells[key] = cells.get(key, 0) + 1
    counted = count_yangian_monomials(Y, cap, length)
    free = count_free_supercommutative(Y, cap, length)
    for key in sorted(set(cells) | set(counted) | set(free)):
        a, b, c = cells.get(key, 0), counted.get(key, 0), free.get(key, 0)
        checks.append({"name": f"cell[deg={key[0]},len={key[1]}]",
                       "status": "pass" if a == b == c else "fail",
                       "detail": f"enumerated={a} counted={b} free={c}"})
    oracle = EnvelopingAlgebra(Y.matrix, cap=cap, current=True, lowering="pbw")
    rng = random.Random(seed)
    mismatches = 0
    for _ in range(words):
        word = []
        for _ in range(rng.randint(1, 4)):
            kind = rng.choice(["h", "x+", "x-"])
            i = rng.randint(1, Y.rank)
            r = rng.randint(0, max(0, cap - 2))
            word.append((kind, i, r))
        yword = tuple(Y.h(i, r) if k == "h" else Y.x(1 if k == "x+" else -1, (i, i), r)
                      for k, i, r in word)
        uword = tuple(("h", i, r) if k == "h" else ("e" if k == "x+" else "f", i, i, r)
                      for k, i, r in word)
        ynf = Y.at_hbar_zero(Y.normal_form_word(yword, HPoly.const(1)))
        unf = oracle.at_hbar_zero(oracle.normal_form_word(uword, HPoly.const(1)))
        conv = {}
        for mon, c in unf.items():
            key = tuple(Y.h(L[1], L[2]) if L[0] == "h"
                        else Y.x(1 if L[0] == "e" else -1, (L[1], L[2]), L[3])
                        for L in mon)
            conv[key] = c
        if ynf != conv:
            mismatches += 1
    checks.append({"name": "classical-limit-oracle",
                   "status": "pass" if mismatches == 0 else "fail",
                   "detail": f"{words} random words, {mismatches} mismatches"})
    return checks


def suite_yangian(diagram: ParityDiagram, cap: int, max_level: int = 2,
                  jobs: int = 1, relations: List[str] | None = None) -> List[Check]:
    Y = YangianAlgebra(diagram, cap)
    builders: List[Tuple[str, Callable]] = []
    for rel in (relations or RELATION_IDS):
        for sign in (1, -1):
            for inst in relation_instances(Y, rel, max_level):
                def fn(rel=rel, sign=sign, inst=inst):
                    residue = relation_residue(Y, rel, inst, sign)
                    return Y.is_zero(residue), ""
                tag = "+" if sign > 0 else "-"
                builders.append((f"{rel}[{tag}{inst}]", fn))
    return run_checks(builders, jobs)


def suite_hopf(diagram: ParityDiagram, cap: int, jobs: int = 1) -> List[Check]:
    problems = minimalistic_constraints(diagram)
    if problems:
        return [{"name": "hopf-structure", "status": "skip",
                 "detail": "presentation constraint: " + "; ".join(problems)}]
    Y = YangianAlgebra(diagram, cap)
    builders: List[Tuple[str, Callable]] = []
    for rel in MINIMALISTIC_IDS:
        signs = (1,) if rel in ("min-h-commute", "min-h1-h2-commute") else (1, -1)
        for sign in signs:
            for inst in minimalistic_instances(Y, rel):
                def fn(rel=rel, sign=sign, inst=inst):
                    return check_delta_homomorphism(Y, rel, inst, sign), ""
                tag = "+" if sign > 0 else "-"
                builders.append((f"delta-{rel}[{tag}{inst}]", fn))
    checks = run_checks(builders, jobs)
    gens = []
    for i in range(1, Y.rank + 1):
        gens += [Y.h(i, 0), Y.x(1, (i, i), 0), Y.x(-1, (i, i), 0), Y.h(i, 1)]
    for g in gens:
        e = Y.from_letter(g)
        checks.append({"name": f"coassociativity[{Y.render_letter(g)}]",
                       "status": "pass" if check_coassociativity(Y, e) else "fail",
                       "detail": ""})
        checks.append({"name": f"counit-axiom[{Y.render_letter(g)}]",
                       "status": "pass" if check_counit_axiom(Y, e) else "fail",
                       "detail": ""})
        checks.append({"name": f"degree-parity[{Y.render_letter(g)}]",
                       "status": "pass" if delta_degree_parity_ok(Y, g) else "fail",
                       "detail": ""})
    return checks


def suite_antipode(diagram: ParityDiagram, cap: int) -> List[Check]:
    problems = minimalistic_constraints(diagram)
    if problems:
        return [{"name": "antipode", "status": "skip",
                 "detail": "presentation constraint: " + "; ".join(problems)}]
    Y = YangianAlgebra(diagram, cap)
    checks: List[Check] = []
    for i in range(1, Y.rank + 1):
        for g in (Y.h(i, 0), Y.x(1, (i, i), 0), Y.x(-1, (i, i), 0),
                  Y.h(i, 1), Y.x(1, (i, i), 1), Y.x(-1, (i, i), 1)):
            ok = check_antipode_axiom(Y, Y.from_letter(g))
            checks.append({"name": f"antipode-axiom[{Y.render_letter(g)}]",
                           "status": "pass" if ok else "fail", "detail": ""})
    return checks


def suite_quantization(diagram: ParityDiagram, cap: int) -> List[Check]:
    """Skew part of the level-one Cartan coproduct against the classical
    cocommutator."""
    problems = minimalistic_constraints(diagram)
    if problems:
        return [{"name": "quantization", "status": "skip",
                 "detail": "presentation constraint: " + "; ".join(problems)}]
    Y = YangianAlgebra(diagram, cap)
    rs = Y.rs
    alg = realize_matrix_algebra(rs)
    om = currents.casimir(alg)
    checks: List[Check] = []
    for i in range(1, Y.rank + 1):
        d = delta_letter(Y, Y.h(i, 1))
        skew = d - d.swap(0)
        got: Dict[Tuple[tuple, tuple], Fraction] = {}
        ok = True
        for (w1, w2), c in skew.terms.items():
            if c.valuation() != 1 or len(c.coeffs) > 2:
                ok = False
                break
            if len(w1) != 1 or len(w2) != 1:
                ok = False
                break
            got[(w1[0], w2[0])] = c.coeffs[1]
        expected: Dict[Tuple[tuple, tuple], Fraction] = {}
        delta = currents.cocommutator_current(alg, alg.h[i], 1, om)
        for key, c in delta.terms.items():
            (p1, a1, b1), (p2, a2, b2) = key
            if p1 or p2:
                ok = False
                break
            l1 = _slot_letter(Y, alg, a1, b1)
            l2 = _slot_letter(Y, alg, a2, b2)
            coeff = c * l1[1] * l2[1]
            k = (l1[0], l2[0])
            expected[k] = expected.get(k, Fraction(0)) + coeff
        expected = {k: v for k, v in expected.items() if v}
        checks.append({"name": f"quantization[h{i}]",
                       "status": "pass" if ok and got == expected else "fail",
                       "detail": ""})
    return checks


def _slot_letter(Y: YangianAlgebra, alg, a: int, b: int):
    """Map one elementary matrix to a root letter with its coefficient."""
    if a < b:
        root = (a + 1, b)
        entry = alg.e[root][(a, b)]
        return Y.x(1, root, 0), Fraction(1, 1) / entry
    if a > b:
        root = (b + 1, a)
        entry = Y.matrix.f_pbw[root][(a, b)]
        return Y.x(-1, root, 0), Fraction(1, 1) / entry
    raise ValueError("diagonal slot in a root-part tensor")


def suite_phi(diagram: ParityDiagram, cap: int, jobs: int = 1) -> List[Check]:
    problems = loopmap.loop_constraints(diagram)
    if problems:
        return [{"name": "phi", "status": "skip",
                 "detail": "presentation constraint: " + "; ".join(problems)}]
    problems = minimalistic_constraints(diagram)
    if problems:
        return [{"name": "phi", "status": "skip",
                 "detail": "presentation constraint: " + "; ".join(problems)}]
    Y = YangianAlgebra(diagram, cap)
    rank = Y.rank
    builders: List[Tuple[str, Callable]] = []

    def add(relation, assignment):
        def fn(relation=relation, assignment=assignment):
            res = loopmap.check_ql_image(Y, relation, assignment)
            return Y.is_zero(res), ""
        builders.append((f"{relation}{assignment}", fn))

    add("QL1", {"i": 1, "j": min(2, rank), "r": 1, "s": -1})
    for i in range(1, rank + 1):
        for j in range(1, rank + 1):
            for kind in ("E", "F"):
                add("QL2", {"i": i, "j": j, "k": 0, "kind": kind})
    for i in range(1, rank + 1):
        for j in range(1, rank + 1):
            for r in (1, -1, 2, -2):
                add("QL3", {"i": i, "j": j, "r": r, "k": 0, "kind": "E"})
    for i in range(1, rank + 1):
        for (k, l) in ((0, 0), (1, 0), (0, 1)):
            add("QL5", {"i": i, "j": i, "k": k, "l": l})
    for i in range(1, rank + 1):
        for j in range(1, rank + 1):
            if i < j and Y.rs.cartan[i - 1][j - 1] == 0:
                add("QL6", {"i": i, "j": j, "k": 0, "l": 0, "kind": "E"})
                break
    return run_checks(builders, jobs)


def suite_classify(n_even: int, n_odd: int, cap: int = 3,
                   verify: bool = True) -> List[Check]:
    checks: List[Check] = []
    classes = classify_mod.hopf_classes(n_even, n_odd)
    for cls in classes:
        rs_counts = set()
        for text in cls:
            rs = build_root_system(ParityDiagram.parse(text))
            rs_counts.add(sum(rs.simple_parity(i) for i in range(1, rs.rank + 1)))
        checks.append({"name": f"class-invariant[{'+'.join(cls)}]",
                       "status": "pass" if len(rs_counts) == 1 else "fail",
                       "detail": ""})
        sc = set(classify_mod.superalgebra_class(ParityDiagram.parse(cls[0])))
        checks.append({"name": f"class-subset[{'+'.join(cls)}]",
                       "status": "pass" if set(cls) <= sc else "fail",
                       "detail": ""})
    if verify and n_even + n_odd <= 4:
        for cls in classes:
            _, witnesses = classify_mod.hopf_class(ParityDiagram.parse(cls[0]))
            for w in witnesses:
                rep = classify_mod.verify_iso(w, cap=cap, max_level=1)
                bad = [r for r in rep if not r["passed"]]
                checks.append({
                    "name": f"witness[{w.kind}:{w.source.text()}->{w.target.text()}]",
                    "status": "pass" if not bad else "fail",
                    "detail": f"{len(rep)} relation instances"})
    return checks


SUITES = {
    "lie": lambda cfg: suite_lie(cfg["diagram"]),
    "casimir": lambda cfg: suite_casimir(cfg["diagram"]),
    "omega-plus": lambda cfg: suite_omega_plus(cfg["diagram"]),
    "bialgebra": lambda cfg: suite_bialgebra(cfg["diagram"]),
    "weyl": lambda cfg: suite_weyl(cfg["n_even"], cfg["n_odd"]),
    "pbw": lambda cfg: suite_pbw(cfg["diagram"], cfg["cap"], cfg["length"],
                                 words=cfg.get("words", 200)),
    "yangian": lambda cfg: suite_yangian(cfg["diagram"], cfg["cap"],
                                         cfg.get("max_level", 2),
                                         cfg.get("jobs", 1)),
    "hopf": lambda cfg: suite_hopf(cfg["diagram"], cfg["cap"], cfg.get("jobs", 1)),
    "antipode": lambda cfg: suite_antipode(cfg["diagram"], min(cfg["cap"], 3)),
    "quantization": lambda cfg: suite_quantization(cfg["diagram"], cfg["cap"]),
    "phi": lambda cfg: suite_phi(cfg["diagram"], cfg["cap"], cfg.get("jobs", 1)),
    "classify": lambda cfg: suite_classify(cfg["n_even"], cfg["n_odd"]),
}


def run_suite(name: str, cfg: dict) -> List[Check]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return SUITES[name](cfg)
