"""Shared PBW straightening engine and Koszul-graded tensor containers.

An algebra provides letters (hashable tokens) with an order key, a Z2
parity, a nonnegative degree, and a bracket table for out-of-order
adjacent pairs.  Elements are exact linear combinations of ordered
monomials with polynomial coefficients in the deformation parameter;
straightening rewrites any word into that basis.  Rewriting never grows
word length, so no length cap is needed for termination; the degree cap
is the only quotient applied (coefficients are truncated against the
remaining degree budget of their monomial).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Tuple

from .exact import HPoly

Word = Tuple  # tuple of letters
Element = Dict[Word, HPoly]


class StraighteningError(RuntimeError):
    pass


class PBWAlgebraBase:
    """Base class: subclasses define the alphabet and the bracket table."""

    cap: int | None = None

    # -- subclass API --------------------------------------------------------

    def letter_key(self, letter) -> tuple:
        raise NotImplementedError

    def letter_parity(self, letter) -> int:
        raise NotImplementedError

    def letter_degree(self, letter) -> int:
        raise NotImplementedError

    def pair_bracket(self, a, b) -> Element:
        """Normal form of [a, b] for an out-of-order pair a > b or a == b odd."""
        raise NotImplementedError

    # -- element constructors --------------------------------------------------

    def zero(self) -> Element:
        return {}

    def one(self) -> Element:
        return {(): HPoly.const(1)}

    def from_letter(self, letter, coeff=1) -> Element:
        return self.from_word((letter,), HPoly.const(coeff))

    def from_word(self, word: Iterable, coeff: HPoly | None = None) -> Element:
        if coeff is None:
            coeff = HPoly.const(1)
        return self.normal_form_word(tuple(word), coeff)

    # -- linear structure ---------------------------------------------------------

    def add(self, *elements: Element) -> Element:
        out: Element = {}
        for e in elements:
            for mon, c in e.items():
                s = out.get(mon)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(mon, None)
                else:
                    out[mon] = s
        return out

    def sub(self, a: Element, b: Element) -> Element:
        return self.add(a, self.scale(b, -1))

    def scale(self, e: Element, value) -> Element:
        v = Fraction(value)
        if not v:
            return {}
        return {mon: c.scale(v) for mon, c in e.items()}

    def scale_poly(self, e: Element, poly: HPoly) -> Element:
        out: Element = {}
        for mon, c in e.items():
            s = self._fit(mon, c * poly)
            if not s.is_zero():
                out[mon] = s
        return out

    def hbar(self, e: Element, k: int = 1) -> Element:
        out: Element = {}
        for mon, c in e.items():
            s = self._fit(mon, c.shift(k))
            if not s.is_zero():
                out[mon] = s
        return out

    def word_degree(self, word: Word) -> int:
        return sum(self.letter_degree(L) for L in word)

    def element_parity(self, e: Element) -> int:
        parity = None
        for mon in e:
            p = sum(self.letter_parity(L) for L in mon) % 2
            if parity is None:
                parity = p
            elif parity != p:
                raise StraighteningError("element is not parity homogeneous")
        return 0 if parity is None else parity

    def is_zero(self, e: Element) -> bool:
        return not e

    def _fit(self, word: Word, coeff: HPoly) -> HPoly:
        if self.cap is None:
            return coeff
        return coeff.truncate(self.cap - self.word_degree(word))

    # -- straightening ---------------------------------------------------------------

    def _violation(self, word: Word) -> int | None:
        for i in range(len(word) - 1):
            a, b = word[i], word[i + 1]
            if a == b:
                if self.letter_parity(a):
                    return i
            elif self.letter_key(a) > self.letter_key(b):
                return i
        return None

    def odd_square(self, a) -> Element:
        """a*a for an odd letter, namely half the self-bracket."""
        return self.scale(self.pair_bracket(a, a), Fraction(1, 2))

    def normal_form_word(self, word: Word, coeff: HPoly) -> Element:
        out: Element = {}
        stack: List[Tuple[Word, HPoly]] = [(tuple(word), coeff)]
        while stack:
            w, c = stack.pop()
            c = self._fit(w, c)
            if c.is_zero():
                continue
            i = self._violation(w)
            if i is None:
                s = out.get(w)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = s
                continue
            a, b = w[i], w[i + 1]
            head, tail = w[:i], w[i + 2:]
            if a == b:
                for mon, mc in self.odd_square(a).items():
                    stack.append((head + mon + tail, c * mc))
            else:
                sign = -1 if (self.letter_parity(a) and self.letter_parity(b)) else 1
                stack.append((head + (b, a) + tail, c.scale(sign)))
                for mon, mc in self.pair_bracket(a, b).items():
                    stack.append((head + mon + tail, c * mc))
        return out

    def mul(self, e1: Element, e2: Element) -> Element:
        memo = self._product_memo()
        out: Element = {}
        for m1, c1 in e1.items():
            for m2, c2 in e2.items():
                key = (m1, m2)
                prod = memo.get(key)
                if prod is None:
                    prod = self.normal_form_word(m1 + m2, HPoly.const(1))
                    memo[key] = prod
                c = c1 * c2
                for mon, mc in prod.items():
                    s = self._fit(mon, c * mc)
                    if s.is_zero():
                        continue
                    t = out.get(mon)
                    t = s if t is None else t + s
                    if t.is_zero():
                        out.pop(mon, None)
                    else:
                        out[mon] = t
        return out

    def _product_memo(self) -> dict:
        memo = getattr(self, "_mul_memo", None)
        if memo is None:
            memo = {}
            self._mul_memo = memo
        return memo

    def mul_many(self, *elements: Element) -> Element:
        out = self.one()
        for e in elements:
            out = self.mul(out, e)
        return out

    def bracket_elements(self, a: Element, b: Element) -> Element:
        """Supercommutator of parity-homogeneous elements."""
        pa, pb = self.element_parity(a), self.element_parity(b)
        sign = -1 if (pa and pb) else 1
        return self.sub(self.mul(a, b), self.scale(self.mul(b, a), sign))

    def anticommutator(self, a: Element, b: Element) -> Element:
        pa, pb = self.element_parity(a), self.element_parity(b)
        sign = -1 if (pa and pb) else 1
        return self.add(self.mul(a, b), self.scale(self.mul(b, a), sign))

    def v_commutator(self, a: Element, b: Element, v) -> Element:
        """Twisted bracket a b - (-1)^{|a||b|} v b a."""
        pa, pb = self.element_parity(a), self.element_parity(b)
        sign = Fraction(-1 if (pa and pb) else 1) * Fraction(v)
        return self.sub(self.mul(a, b), self.scale(self.mul(b, a), sign))

    # -- specialization ------------------------------------------------------------

    def at_hbar_zero(self, e: Element) -> Dict[Word, Fraction]:
        out = {}
        for mon, c in e.items():
            v = c.at_zero()
            if v:
                out[mon] = v
        return out


class KTensor:
    """Koszul-signed tensor power of a PBW algebra at a fixed arity."""

    __slots__ = ("alg", "arity", "terms")

    def __init__(self, alg: PBWAlgebraBase, arity: int,
                 terms: Dict[Tuple[Word, ...], HPoly] | None = None):
        self.alg = alg
        self.arity = arity
        self.terms: Dict[Tuple[Word, ...], HPoly] = {}
        if terms:
            for key, c in terms.items():
                if not c.is_zero():
                    self.terms[key] = c

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_elements(cls, alg: PBWAlgebraBase, arity: int,
                      slots: Tuple[Element, ...], coeff: HPoly | None = None) -> "KTensor":
        if coeff is None:
            coeff = HPoly.const(1)
        t = cls(alg, arity, {((),) * arity: coeff})
        for s, e in enumerate(slots):
            t = t.slot_mul_right(s, e)
        return t

    def _word_parity(self, word: Word) -> int:
        return sum(self.alg.letter_parity(L) for L in word) % 2

    def key_degree(self, key: Tuple[Word, ...]) -> int:
        return sum(self.alg.word_degree(w) for w in key)

    def _fit(self, key, coeff: HPoly) -> HPoly:
        if self.alg.cap is None:
            return coeff
        return coeff.truncate(self.alg.cap - self.key_degree(key))

    def _accumulate(self, out, key, coeff):
        coeff = self._fit(key, coeff)
        if coeff.is_zero():
            return
        s = out.get(key)
        s = coeff if s is None else s + coeff
        if s.is_zero():
            out.pop(key, None)
        else:
            out[key] = s

    # -- linear structure ---------------------------------------------------------

    def __add__(self, other: "KTensor") -> "KTensor":
        out = dict(self.terms)
        result = KTensor(self.alg, self.arity)
        result.terms = out
        for key, c in other.terms.items():
            result._accumulate(out, key, c)
        return result

    def __sub__(self, other: "KTensor") -> "KTensor":
        return self + other.scale(-1)

    def scale(self, value) -> "KTensor":
        v = Fraction(value)
        if not v:
            return KTensor(self.alg, self.arity)
        return KTensor(self.alg, self.arity,
                       {k: c.scale(v) for k, c in self.terms.items()})

    def scale_poly(self, poly: HPoly) -> "KTensor":
        out = KTensor(self.alg, self.arity)
        for key, c in self.terms.items():
            out._accumulate(out.terms, key, c * poly)
        return out

    def hbar(self, k: int = 1) -> "KTensor":
        out = KTensor(self.alg, self.arity)
        for key, c in self.terms.items():
            out._accumulate(out.terms, key, c.shift(k))
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, KTensor) and self.arity == other.arity
                and self.terms == other.terms)

    def parity(self) -> int:
        parity = None
        for key in self.terms:
            p = sum(self._word_parity(w) for w in key) % 2
            if parity is None:
                parity = p
            elif parity != p:
                raise StraighteningError("tensor is not parity homogeneous")
        return 0 if parity is None else parity

    # -- multiplicative structure -----------------------------------------------------

    def mul(self, other: "KTensor") -> "KTensor":
        """Graded product: crossing factors contribute Koszul signs."""
        alg = self.alg
        out = KTensor(alg, self.arity)
        for ka, ca in self.terms.items():
            pa = [self._word_parity(w) for w in ka]
            for kb, cb in other.terms.items():
                pb = [self._word_parity(w) for w in kb]
                cross = sum(pb[i] * pa[j] for i in range(self.arity)
                            for j in range(i + 1, self.arity))
                sign = -1 if cross % 2 else 1
                slot_products = [alg.normal_form_word(ka[s] + kb[s], HPoly.const(1))
                                 for s in range(self.arity)]
                base = ca * cb
                if sign < 0:
                    base = base.scale(-1)
                partial: Dict[Tuple[Word, ...], HPoly] = {(): base}
                for prod in slot_products:
                    new: Dict[Tuple[Word, ...], HPoly] = {}
                    for key, c in partial.items():
                        for mon, mc in prod.items():
                            k2 = key + (mon,)
                            s = new.get(k2)
                            add = c * mc
                            s = add if s is None else s + add
                            new[k2] = s
                    partial = new
                for key, c in partial.items():
                    out._accumulate(out.terms, key, c)
        return out

    def bracket(self, other: "KTensor") -> "KTensor":
        sign = -1 if (self.parity() and other.parity()) else 1
        return self.mul(other) - other.mul(self).scale(sign)

    def slot_mul_right(self, slot: int, e: Element) -> "KTensor":
        out = KTensor(self.alg, self.arity)
        for key, c in self.terms.items():
            for mon, mc in e.items():
                # sign: e passes the slots after `slot`
                passed = sum(self._word_parity(key[s]) for s in range(slot + 1, self.arity)) % 2
                pe = self._word_parity(mon)
                sign = -1 if (passed and pe) else 1
                prod = self.alg.normal_form_word(key[slot] + mon, HPoly.const(1))
                for mon2, mc2 in prod.items():
                    k2 = key[:slot] + (mon2,) + key[slot + 1:]
                    coeff = c * mc * mc2
                    if sign < 0:
                        coeff = coeff.scale(-1)
                    out._accumulate(out.terms, k2, coeff)
        return out

    def swap(self, slot: int) -> "KTensor":
        out = KTensor(self.alg, self.arity)
        for key, c in self.terms.items():
            sign = -1 if (self._word_parity(key[slot])
                          and self._word_parity(key[slot + 1])) else 1
            k2 = key[:slot] + (key[slot + 1], key[slot]) + key[slot + 2:]
            out._accumulate(out.terms, k2, c.scale(sign))
        return out

    def apply_slot(self, slot: int, fn, new_arity_delta: int = 0) -> "KTensor":
        """Replace slot contents through fn: word -> KTensor of arity 1+delta."""
        out = KTensor(self.alg, self.arity + new_arity_delta)
        for key, c in self.terms.items():
            image = fn(key[slot])
            for ikey, ic in image.terms.items():
                k2 = key[:slot] + ikey + key[slot + 1:]
                out._accumulate(out.terms, k2, c * ic)
        return out
