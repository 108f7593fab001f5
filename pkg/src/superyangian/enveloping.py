"""Universal enveloping superalgebra with PBW normal form.

Letters are the root vectors and Cartan basis elements of a matrix
realization, optionally decorated with a polynomial current level.  The
bracket table comes from exact matrix structure constants, so the
straightening engine terminates trivially and doubles as the oracle for
the deformed algebra at vanishing deformation parameter.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Tuple

from .exact import HPoly
from .pbw import Element, KTensor, PBWAlgebraBase, Word
from .rootdata import Root, SuperMatrixAlg

# letters: ("f", lo, hi, r) | ("h", k, r) | ("e", lo, hi, r)
BLOCKS = {"f": 0, "h": 1, "e": 2}


class EnvelopingAlgebra(PBWAlgebraBase):
    """U(g) (or the polynomial current algebra when levels are allowed)."""

    def __init__(self, alg: SuperMatrixAlg, cap: int | None = None,
                 current: bool = False, lowering: str = "standard"):
        self.alg = alg
        self.cap = cap
        self.current = current
        self.lowering = lowering
        self._bracket_memo: Dict[Tuple, Element] = {}

    # -- alphabet ----------------------------------------------------------------

    def letter_key(self, letter) -> tuple:
        kind = letter[0]
        if kind == "h":
            return (1, letter[1], 0, letter[2])
        return (BLOCKS[kind], letter[1], letter[2], letter[3])

    def letter_parity(self, letter) -> int:
        if letter[0] == "h":
            return 0
        return self.alg.rs.root_parity((letter[1], letter[2]))

    def letter_degree(self, letter) -> int:
        return letter[-1]

    def letter_matrix(self, letter):
        kind = letter[0]
        if kind == "h":
            return self.alg.cartan_basis()[letter[1] - 1]
        root: Root = (letter[1], letter[2])
        if kind == "e":
            return self.alg.e[root]
        return self.alg.f[root] if self.lowering == "standard" else self.alg.f_pbw[root]

    def letters(self, max_level: int = 0) -> List[tuple]:
        out: List[tuple] = []
        levels = range(max_level + 1) if self.current else (0,)
        for r in levels:
            for root in self.alg.rs.positive_roots:
                out.append(("f", root[0], root[1], r))
            for k in range(1, len(self.alg.cartan_basis()) + 1):
                out.append(("h", k, r))
            for root in self.alg.rs.positive_roots:
                out.append(("e", root[0], root[1], r))
        return sorted(out, key=self.letter_key)

    # -- bracket table -------------------------------------------------------------

    def element_from_matrix(self, m, level: int = 0, coeff: HPoly | None = None) -> Element:
        if coeff is None:
            coeff = HPoly.const(1)
        decomp = self.alg.decompose(m, lowering=self.lowering)
        out: Element = {}
        for key, c in decomp.items():
            parts = key.split(":")
            if parts[0] == "h":
                letter = ("h", int(parts[1]), level)
            else:
                letter = (parts[0], int(parts[1]), int(parts[2]), level)
            word = (letter,)
            s = self._fit(word, coeff.scale(c))
            if not s.is_zero():
                out[word] = s
        return out

    def pair_bracket(self, a, b) -> Element:
        key = (a, b)
        cached = self._bracket_memo.get(key)
        if cached is not None:
            return cached
        ma, mb = self.letter_matrix(a), self.letter_matrix(b)
        bracket = self.alg.bracket(ma, mb)
        value = self.element_from_matrix(bracket, a[-1] + b[-1])
        self._bracket_memo[key] = value
        return value

    # -- rendering -------------------------------------------------------------------

    def render_letter(self, letter) -> str:
        kind = letter[0]
        if kind == "h":
            if self.current:
                return f"h[{letter[1]},{letter[2]}]"
            return f"h[{letter[1]}]"
        lo, hi, r = letter[1], letter[2], letter[3]
        root = str(lo) if lo == hi else f"{lo}..{hi}"
        return f"{kind}[{root},{r}]" if self.current else f"{kind}[{root}]"

    def render(self, e: Element) -> str:
        if not e:
            return "0"
        parts = []
        for mon in sorted(e, key=lambda m: (len(m), tuple(self.letter_key(L) for L in m))):
            coeff = e[mon].render()
            body = " ".join(self.render_letter(L) for L in mon) or "1"
            if "+" in coeff or "-" in coeff[1:]:
                coeff = f"({coeff})"
            parts.append(body if coeff == "1" else f"{coeff} {body}")
        return " + ".join(parts)


def ue_normal_form(ue: EnvelopingAlgebra, word) -> Element:
    """Straighten a word of letters into the ordered PBW combination."""
    return ue.normal_form_word(tuple(word), HPoly.const(1))


def supercommutator(ue: EnvelopingAlgebra, a: Element, b: Element) -> Element:
    return ue.bracket_elements(a, b)


def anticommutator(ue: EnvelopingAlgebra, a: Element, b: Element) -> Element:
    return ue.anticommutator(a, b)


def v_bracket(ue: EnvelopingAlgebra, a: Element, b: Element, v) -> Element:
    return ue.v_commutator(a, b, v)


def tensor_mul(a: KTensor, b: KTensor) -> KTensor:
    return a.mul(b)


def boxed(ue: EnvelopingAlgebra, e: Element) -> KTensor:
    """x -> x (x) 1 + 1 (x) x inside the Koszul tensor square."""
    one = ue.one()
    return (KTensor.from_elements(ue, 2, (e, one))
            + KTensor.from_elements(ue, 2, (one, e)))


def omega_plus(ue: EnvelopingAlgebra) -> KTensor:
    """Half Casimir: dual Cartan pairs plus lowering-raising root pairs."""
    alg = ue.alg
    total = KTensor(ue, 2)
    ginv = alg.gram_inverse()
    n = len(alg.cartan_basis())
    for k in range(n):
        for l in range(n):
            if ginv[k][l]:
                t = KTensor(ue, 2, {((("h", k + 1, 0),), (("h", l + 1, 0),)):
                                    HPoly.const(ginv[k][l])})
                total = total + t
    for root in alg.rs.positive_roots:
        key = ((("f", root[0], root[1], 0),), (("e", root[0], root[1], 0),))
        total = total + KTensor(ue, 2, {key: HPoly.const(1)})
    return total


def count_pbw_monomials(ue: EnvelopingAlgebra, max_len: int,
                        max_degree: int | None = None) -> Dict[Tuple[int, int], int]:
    """Number of ordered PBW monomials per (degree, length) cell.

    Odd letters are square-free; the result must match the free
    supercommutative generating function over the same alphabet.
    """
    max_degree = max_degree if max_degree is not None else (ue.cap or 0)
    letters = ue.letters(max_level=max_degree)
    cells: Dict[Tuple[int, int], int] = {(0, 0): 1}
    for letter in letters:
        deg = ue.letter_degree(letter)
        odd = ue.letter_parity(letter)
        new = dict(cells)
        for (d, l), count in cells.items():
            power = 1
            while True:
                nd, nl = d + power * deg, l + power
                if nl > max_len or nd > max_degree:
                    break
                new[(nd, nl)] = new.get((nd, nl), 0) + count
                if odd:
                    break
                power += 1
        cells = new
    return cells


def free_supercommutative_count(ue: EnvelopingAlgebra, max_len: int,
                                max_degree: int | None = None) -> Dict[Tuple[int, int], int]:
    """Same counts from the product formula, computed independently:
    even letters contribute geometric factors, odd letters (1 + t)."""
    max_degree = max_degree if max_degree is not None else (ue.cap or 0)
    letters = ue.letters(max_level=max_degree)
    # polynomial in (degree, length) as dict
    poly: Dict[Tuple[int, int], int] = {(0, 0): 1}

    def mul(p, q):
        out: Dict[Tuple[int, int], int] = {}
        for (d1, l1), c1 in p.items():
            for (d2, l2), c2 in q.items():
                if d1 + d2 > max_degree or l1 + l2 > max_len:
                    continue
                key = (d1 + d2, l1 + l2)
                out[key] = out.get(key, 0) + c1 * c2
        return out

    for letter in letters:
        deg = ue.letter_degree(letter)
        if ue.letter_parity(letter):
            factor = {(0, 0): 1, (deg, 1): 1}
        else:
            factor = {(0, 0): 1}
            k = 1
            while deg * k <= max_degree and k <= max_len:
                factor[(deg * k, k)] = 1
                k += 1
        poly = mul(poly, factor)
    return poly


def spanning_rank(ue: EnvelopingAlgebra, max_len: int) -> Tuple[int, int]:
    """Rank of the normal forms of all words of length <= max_len against
    the PBW monomial count of the same cells (level 0 letters only)."""
    letters = ue.letters(0)
    words: List[Word] = [()]
    frontier: List[Word] = [()]
    for _ in range(max_len):
        frontier = [w + (L,) for w in frontier for L in letters]
        words.extend(frontier)
    monomials: Dict[Word, int] = {}
    rows = []
    for w in words:
        nf = ue.normal_form_word(w, HPoly.const(1))
        row = {}
        for mon, c in nf.items():
            idx = monomials.setdefault(mon, len(monomials))
            row[idx] = c.at_zero()
        rows.append(row)
    rank = _sparse_rank(rows, len(monomials))
    return rank, len(monomials)


def _sparse_rank(rows: List[Dict[int, Fraction]], width: int) -> int:
    pivots: Dict[int, Dict[int, Fraction]] = {}
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            lead = min(row)
            if lead in pivots:
                factor = row[lead]
                for k, v in pivots[lead].items():
                    s = row.get(k, Fraction(0)) - factor * v
                    if s:
                        row[k] = s
                    else:
                        row.pop(k, None)
            else:
                inv = Fraction(1, 1) / row[lead]
                pivots[lead] = {k: v * inv for k, v in row.items()}
                rank += 1
                break
    return rank
