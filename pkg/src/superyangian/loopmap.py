"""Quantum loop superalgebra data and its evaluation map into the Yangian.

The loop algebra itself carries no normal-form engine; its relations are
templates whose images under the evaluation map are checked inside the
truncated Yangian.  Everything scalar is a truncated series over exact
rationals with the deformation parameter expanded (the quantum parameter
is never a standalone symbol, always exp of half the deformation one).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Tuple

from .exact import (HPoly, TruncSeries, divide_by_linear, series_exp,
                    series_inverse, series_log, series_sqrt_unit,
                    series_substitute)
from .pbw import Element
from .rootdata import DiagramError, ParityDiagram, build_root_system
from .yangian import YangianAlgebra


class LoopConstraintError(DiagramError):
    """The evaluation map needs every odd vertex isolated among evens."""


def loop_constraints(diagram: ParityDiagram) -> List[str]:
    rs = build_root_system(diagram)
    problems = []
    for i in range(1, rs.rank + 1):
        if rs.simple_parity(i):
            for j in (i - 1, i + 1):
                if 1 <= j <= rs.rank and rs.simple_parity(j):
                    problems.append(f"odd vertices {min(i, j)},{max(i, j)} adjacent")
    return sorted(set(problems))


def require_loop_constraints(Y: YangianAlgebra) -> None:
    problems = loop_constraints(Y.diagram)
    if problems:
        raise LoopConstraintError("; ".join(problems))


# -- scalar series -------------------------------------------------------------------


def q_minus_qinv(cap: int) -> TruncSeries:
    """q - 1/q with q = exp(hb/2): twice the hyperbolic sine of hb/2."""
    hb = TruncSeries.variable(("hb",), cap, "hb")
    half = hb.scale(Fraction(1, 2))
    return series_exp(half) - series_exp(half.scale(-1))


def hbar_over_q_minus_qinv(cap: int) -> TruncSeries:
    """hb / (q - 1/q): a unit series with constant term 1."""
    num = q_minus_qinv(cap + 1)
    terms = {}
    for expo, c in num.terms.items():
        if expo[0] == 0:
            raise ValueError("expected no constant term")
        terms[(expo[0] - 1,)] = c
    unit = TruncSeries(("hb",), cap, terms)
    return series_inverse(unit)


def qnumber_series(n: int, cap: int) -> TruncSeries:
    """Balanced quantum integer (q^n - q^-n)/(q - q^-1) as a series."""
    if n == 0:
        return TruncSeries(("hb",), cap)
    hb = TruncSeries.variable(("hb",), cap + 1, "hb")
    num = series_exp(hb.scale(Fraction(n, 2))) - series_exp(hb.scale(Fraction(-n, 2)))
    den = q_minus_qinv(cap + 1)
    shifted_num = {}
    for expo, c in num.terms.items():
        shifted_num[(expo[0] - 1,)] = c
    shifted_den = {}
    for expo, c in den.terms.items():
        shifted_den[(expo[0] - 1,)] = c
    a = TruncSeries(("hb",), cap, shifted_num)
    b = TruncSeries(("hb",), cap, shifted_den)
    return a * series_inverse(b)


def bernoulli_numbers(count: int) -> List[Fraction]:
    """First Bernoulli numbers via the defining convolution recurrence."""
    from math import comb
    out: List[Fraction] = []
    for m in range(count):
        if m == 0:
            out.append(Fraction(1))
            continue
        total = Fraction(0)
        for j in range(m):
            total += Fraction(comb(m + 1, j)) * out[j]
        out.append(-total / (m + 1))
    return out


def G_series(cap: int) -> TruncSeries:
    """log of v over (e^{v/2} - e^{-v/2}); even, zero constant term."""
    if cap < 2:
        raise ValueError("need order at least 2")
    v = TruncSeries.variable(("v",), cap + 1, "v")
    half = v.scale(Fraction(1, 2))
    num = series_exp(half) - series_exp(half.scale(-1))
    terms = {}
    for expo, c in num.terms.items():
        terms[(expo[0] - 1,)] = c
    unit = TruncSeries(("v",), cap, terms)
    return series_log(unit).scale(-1)


def G_series_bernoulli(cap: int) -> TruncSeries:
    """Independent closed form through Bernoulli numbers."""
    from math import factorial
    bern = bernoulli_numbers(cap + 1)
    terms = {}
    for k in range(1, cap // 2 + 1):
        coeff = -bern[2 * k] / Fraction(2 * k * factorial(2 * k))
        if coeff:
            terms[(2 * k,)] = coeff
    return TruncSeries(("v",), cap, terms)


# -- Cartan generating series over the Yangian ----------------------------------------


def t_series(Y: YangianAlgebra, i: int) -> List[Element]:
    """Logarithmic Cartan modes t_{i,0..cap} as commuting-part elements.

    The deformation prefactor of the generating series is tracked as an
    implicit power and only applied at the end: every mode has exact
    degree equal to its index, so nothing is lost to the cap."""
    cap = Y.cap
    x: Dict[int, Element] = {}
    for r in range(cap + 1):
        x[r + 1] = Y.from_letter(Y.h(i, r))
    result: Dict[int, Element] = {}
    power: Dict[int, Element] = {0: Y.one()}
    max_exp = cap + 1
    for n in range(1, max_exp + 1):
        new: Dict[int, Element] = {}
        for e1, c1 in power.items():
            for e2, c2 in x.items():
                if e1 + e2 > max_exp:
                    continue
                prod = Y.mul(c1, c2)
                if prod:
                    new[e1 + e2] = Y.add(new.get(e1 + e2, {}), prod)
        power = new
        # the n-th power carries n deformation factors; one is stripped
        coeff = Fraction((-1) ** (n + 1), n)
        for e, el in power.items():
            result[e] = Y.add(result.get(e, {}),
                              Y.hbar(Y.scale(el, coeff), n - 1))
    return [result.get(r + 1, {}) for r in range(cap + 1)]


def borel_image(Y: YangianAlgebra, i: int, r: int,
                tser: List[Element] | None = None) -> Element:
    """Image of a loop Cartan mode: the exponential-series evaluation of
    the logarithmic modes, against the inverse deformation unit."""
    require_loop_constraints(Y)
    if tser is None:
        tser = t_series(Y, i)
    if r == 0:
        return tser[0]
    unit = hbar_over_q_minus_qinv(Y.cap)
    upoly = HPoly([unit.coefficient((k,)) for k in range(Y.cap + 1)])
    from math import factorial
    total: Element = {}
    for k, t in enumerate(tser):
        if not t:
            continue
        coeff = upoly.scale(Fraction(r ** k, factorial(k)))
        total = Y.add(total, Y.scale_poly(t, coeff))
    return total


def gamma_series(Y: YangianAlgebra, i: int, vcap: int,
                 tser: List[Element] | None = None) -> List[Element]:
    """Coefficients of the shift-variable series built from the even log
    series and the logarithmic Cartan modes."""
    if tser is None:
        tser = t_series(Y, i)
    from math import factorial
    g = G_series(vcap + Y.cap + 2)
    out: List[Element] = []
    for m in range(vcap + 1):
        el: Element = {}
        for r, t in enumerate(tser):
            if not t:
                continue
            k = m + r + 1
            coeff = g.coefficient((k,))
            if not coeff:
                continue
            scalar = Fraction((-1) ** (r + 1)) * coeff \
                * Fraction(factorial(k), factorial(m) * factorial(r))
            el = Y.add(el, Y.hbar(Y.scale(t, scalar), 1))
        out.append(el)
    return out


def g_series(Y: YangianAlgebra, i: int, vcap: int,
             tser: List[Element] | None = None) -> List[Element]:
    """Coefficients of the normalizing series: square root of the unit
    deformation factor times the exponential of half the shift series."""
    require_loop_constraints(Y)
    gamma = gamma_series(Y, i, vcap, tser)
    half = [Y.scale(el, Fraction(1, 2)) for el in gamma]
    # exponentiate the v-polynomial with commuting-part coefficients
    out: List[Element] = [Y.one()] + [Y.zero() for _ in range(vcap)]
    term: List[Element] = [Y.one()] + [Y.zero() for _ in range(vcap)]
    from math import factorial
    for n in range(1, Y.cap + 1):
        new = [Y.zero() for _ in range(vcap + 1)]
        for m1 in range(vcap + 1):
            if Y.is_zero(term[m1]):
                continue
            for m2 in range(vcap + 1 - m1):
                if Y.is_zero(half[m2]):
                    continue
                new[m1 + m2] = Y.add(new[m1 + m2], Y.mul(term[m1], half[m2]))
        term = new
        if all(Y.is_zero(t) for t in term):
            break
        inv = Fraction(1, factorial(n))
        for m in range(vcap + 1):
            out[m] = Y.add(out[m], Y.scale(term[m], inv))
    sqrt_unit = series_sqrt_unit(hbar_over_q_minus_qinv(Y.cap))
    spoly = HPoly([sqrt_unit.coefficient((k,)) for k in range(Y.cap + 1)])
    return [Y.scale_poly(el, spoly) for el in out]


def phi_generator(Y: YangianAlgebra, kind: str, i: int, r: int,
                  tser: List[Element] | None = None) -> Element:
    """Image of one loop generator in the truncated Yangian."""
    require_loop_constraints(Y)
    if kind == "H":
        return borel_image(Y, i, r, tser)
    if kind not in ("E", "F"):
        raise ValueError("generator kind must be E, F or H")
    sign = 1 if kind == "E" else -1
    if tser is None:
        tser = t_series(Y, i)
    gs = g_series(Y, i, Y.cap, tser)
    from math import factorial
    total: Element = {}
    for M in range(Y.cap + 1):
        coeff: Element = {}
        for k in range(M + 1):
            m = M - k
            scal = Fraction(r ** k, factorial(k))
            if scal and not Y.is_zero(gs[m]):
                coeff = Y.add(coeff, Y.scale(gs[m], scal))
        if Y.is_zero(coeff):
            continue
        letter = Y.from_letter(Y.x(sign, (i, i), M))
        total = Y.add(total, Y.mul(coeff, letter))
    return total


# -- Cartan exponential coefficients ---------------------------------------------------


def psi_partition_polynomial(i_r: int, zcap: int, hcap: int) -> TruncSeries:
    """Coefficient of z^{-r} in the plus-side Cartan exponential, without
    the zero-mode prefactor, via the partition formula with multinomial
    multiplicities."""
    from math import factorial
    variables = ("hb",) + tuple(f"H{s}" for s in range(1, zcap + 1))
    cap = hcap
    out = TruncSeries(variables, cap)
    qs = q_minus_qinv(cap)

    def qpow(m):  # (q - 1/q)^m as a series in the same variables
        terms = {}
        base = TruncSeries(variables, cap)
        for expo, c in qs.terms.items():
            terms[(expo[0],) + (0,) * (len(variables) - 1)] = c
        base = TruncSeries(variables, cap, terms)
        return base.pow(m)

    partitions = _partitions(i_r)
    for lam in partitions:
        m = len(lam)
        mult: Dict[int, int] = {}
        for part in lam:
            mult[part] = mult.get(part, 0) + 1
        denom = 1
        for v in mult.values():
            denom *= factorial(v)
        term = qpow(m).scale(Fraction(1, denom))
        for part in lam:
            term = term * TruncSeries.variable(variables, cap, f"H{part}")
        out = out + term
    return out


def psi_direct_expansion(i_r: int, zcap: int, hcap: int) -> TruncSeries:
    """Same coefficient by brute expansion of the exponential of the mode
    sum: independent oracle for the partition formula."""
    from math import factorial
    variables = ("hb",) + tuple(f"H{s}" for s in range(1, zcap + 1))
    cap = hcap
    qs = q_minus_qinv(cap)
    qterm = TruncSeries(variables, cap,
                        {(expo[0],) + (0,) * (len(variables) - 1): c
                         for expo, c in qs.terms.items()})
    # series in z^{-1}: dict power -> TruncSeries
    x: Dict[int, TruncSeries] = {}
    for s in range(1, zcap + 1):
        x[s] = qterm * TruncSeries.variable(variables, cap, f"H{s}")
    result: Dict[int, TruncSeries] = {0: TruncSeries.constant(variables, cap, 1)}
    power: Dict[int, TruncSeries] = {0: TruncSeries.constant(variables, cap, 1)}
    for n in range(1, zcap + 1):
        new: Dict[int, TruncSeries] = {}
        for e1, c1 in power.items():
            for e2, c2 in x.items():
                if e1 + e2 > zcap:
                    continue
                prod = c1 * c2
                if not prod.is_zero():
                    prev = new.get(e1 + e2)
                    new[e1 + e2] = prod if prev is None else prev + prod
        power = new
        if not power:
            break
        inv = Fraction(1, factorial(n))
        for e, ser in power.items():
            scaled = ser.scale(inv)
            prev = result.get(e)
            result[e] = scaled if prev is None else prev + scaled
    return result.get(i_r, TruncSeries(variables, cap))


def _partitions(n: int) -> List[Tuple[int, ...]]:
    if n == 0:
        return [()]
    out = []

    def recurse(remaining, maximum, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(remaining, maximum), 0, -1):
            recurse(remaining - part, part, prefix + [part])

    recurse(n, n, [])
    return out


def phi_psi_over_unit(Y: YangianAlgebra, i: int, m: int,
                      tser: List[Element] | None = None) -> Element:
    """Image of (psi_{i,m} - phi-side_{i,m}) divided by the deformation
    unit, for nonnegative total mode m (the negative side vanishes)."""
    from math import factorial
    require_loop_constraints(Y)
    if tser is None:
        tser = t_series(Y, i)
    cap = Y.cap
    h0 = borel_image(Y, i, 0, tser)

    def exp_scaled(element: Element, scalar: Fraction) -> Element:
        total = Y.one()
        term = Y.one()
        base = Y.hbar(Y.scale(element, scalar), 1)
        for n in range(1, cap + 1):
            term = Y.mul(term, base)
            if Y.is_zero(term):
                break
            total = Y.add(total, Y.scale(term, Fraction(1, factorial(n))))
        return total

    if m == 0:
        # 2 sinh of half the deformation times the zero mode, over the unit
        unit = hbar_over_q_minus_qinv(cap)
        upoly = HPoly([unit.coefficient((k,)) for k in range(cap + 1)])
        total: Element = {}
        power = Y.one()
        for n in range(cap + 2):
            if n % 2 == 1:
                contrib = Y.scale_poly(Y.hbar(power, n - 1),
                                       upoly.scale(Fraction(2, factorial(n) * 2 ** n)))
                total = Y.add(total, contrib)
            power = Y.mul(power, h0)
            if Y.is_zero(power):
                break
        return total
    # positive mode: the negative-side coefficient vanishes
    qs = q_minus_qinv(cap)
    qpoly = HPoly([qs.coefficient((k,)) for k in range(cap + 1)])
    total = Y.zero()
    for lam in _partitions(m):
        parts = len(lam)
        mult: Dict[int, int] = {}
        for p in lam:
            mult[p] = mult.get(p, 0) + 1
        denom = 1
        for v in mult.values():
            denom *= factorial(v)
        term = Y.one()
        for p in lam:
            term = Y.mul(term, borel_image(Y, i, p, tser))
        for _ in range(parts - 1):
            term = Y.scale_poly(term, qpoly)
        total = Y.add(total, Y.scale(term, Fraction(1, denom)))
    prefactor = exp_scaled(h0, Fraction(1, 2))
    return Y.mul(prefactor, total)


# -- identity checks --------------------------------------------------------------------


def check_ge_identity(a: Fraction, plus_sign: bool, parity_product: int,
                      order: int) -> bool:
    """Exponential-quotient identity behind the evaluation map, expanded
    exactly after cancelling the simple zero against the linear factor."""
    if parity_product != 1:
        raise ValueError("the admissible diagrams always give parity factor +1")
    cap = order + 1
    variables = ("u", "v", "hb")
    sgn = Fraction(1) if plus_sign else Fraction(-1)
    a = Fraction(a)
    u = TruncSeries.variable(variables, cap, "u")
    v = TruncSeries.variable(variables, cap, "v")
    hb = TruncSeries.variable(variables, cap, "hb")

    g = G_series(cap)

    def g_at(shift: TruncSeries) -> TruncSeries:
        # expand the even log series at the composed argument
        base = TruncSeries(variables, cap,
                           {(0, expo[0], 0): c for expo, c in g.terms.items()})
        return series_substitute(base, {"v": shift})

    w_plus = v - u + hb.scale(sgn * a)
    w_minus = v - u - hb.scale(sgn * a)
    exp_factor = series_exp(g_at(w_plus) - g_at(w_minus))

    left_num = series_exp(u) - series_exp(v + hb.scale(sgn * a))
    left_den = {"u": Fraction(1), "v": Fraction(-1), "hb": -sgn * a}
    left = exp_factor * divide_by_linear(left_num, left_den)

    right_num = series_exp(v) - series_exp(u + hb.scale(sgn * a))
    right_den = {"v": Fraction(1), "u": Fraction(-1), "hb": -sgn * a}
    right = divide_by_linear(right_num, right_den)

    diff = left - right
    return all(sum(expo) > order or not c for expo, c in diff.terms.items())


def check_ql_image(Y: YangianAlgebra, relation: str, assignment: dict) -> Element:
    """Residue of one loop-relation image inside the truncated Yangian."""
    require_loop_constraints(Y)
    tcache: Dict[int, List[Element]] = {}

    def ts(i):
        if i not in tcache:
            tcache[i] = t_series(Y, i)
        return tcache[i]

    def H(i, r):
        return borel_image(Y, i, r, ts(i))

    def E(i, r):
        return phi_generator(Y, "E", i, r, ts(i))

    def F(i, r):
        return phi_generator(Y, "F", i, r, ts(i))

    if relation == "QL1":
        i, j, r, s = (assignment[k] for k in ("i", "j", "r", "s"))
        return Y.bracket_elements(H(i, r), H(j, s))
    if relation == "QL2":
        i, j, k = (assignment[n] for n in ("i", "j", "k"))
        c = Y.rs.cartan[i - 1][j - 1]
        kind = assignment.get("kind", "E")
        gen = E(j, k) if kind == "E" else F(j, k)
        sign = 1 if kind == "E" else -1
        return Y.sub(Y.bracket_elements(H(i, 0), gen), Y.scale(gen, sign * c))
    if relation == "QL3":
        i, j, r, k = (assignment[n] for n in ("i", "j", "r", "k"))
        if r == 0:
            raise ValueError("nonzero loop mode required")
        c = Y.rs.cartan[i - 1][j - 1]
        kind = assignment.get("kind", "E")
        gen = E(j, k) if kind == "E" else F(j, k)
        target = E(j, r + k) if kind == "E" else F(j, r + k)
        qn = qnumber_series(r * c, Y.cap)
        qpoly = HPoly([qn.coefficient((m,)) for m in range(Y.cap + 1)]) \
            .scale(Fraction(1, r))
        sign = 1 if kind == "E" else -1
        return Y.sub(Y.bracket_elements(H(i, r), gen),
                     Y.scale(Y.scale_poly(target, qpoly), sign))
    if relation == "QL5":
        i, j, k, l = (assignment[n] for n in ("i", "j", "k", "l"))
        lhs = Y.bracket_elements(E(i, k), F(j, l))
        rhs = phi_psi_over_unit(Y, i, k + l, ts(i)) if i == j else Y.zero()
        return Y.sub(lhs, rhs)
    if relation == "QL6":
        i, j, k, l = (assignment[n] for n in ("i", "j", "k", "l"))
        if Y.rs.cartan[i - 1][j - 1] != 0:
            raise ValueError("orthogonal pair required")
        kind = assignment.get("kind", "E")
        g1 = E(i, k) if kind == "E" else F(i, k)
        g2 = E(j, l) if kind == "E" else F(j, l)
        return Y.bracket_elements(g1, g2)
    raise ValueError(f"unsupported loop relation {relation!r}")


# -- contract-surface conveniences -----------------------------------------------------

borel = borel_image
check_GE_identity = check_ge_identity
check_ql_relation_image = check_ql_image


def psi_phi_coeffs(mode: int, zcap: int = 5, hcap: int = 8):
    """Both Cartan exponential coefficient polynomials at one mode,
    with the adjudicating direct expansion alongside."""
    return {
        "partition": psi_partition_polynomial(mode, zcap, hcap),
        "direct": psi_direct_expansion(mode, zcap, hcap),
    }
