"""Root systems and supermatrix realizations for sl(m|n) with arbitrary parity order.

A parity diagram is the sequence of Z2-grades of the weight basis; it
determines simple roots, the Cartan matrix, root parities, and an exact
matrix realization of the Lie superalgebra.  For equal numbers of even
and odd weights the invariant form degenerates on the trace part, so
form-dependent structures (Casimir tensor, cocommutators) are built on
the central quotient via a canonical trace projection.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Tuple

Root = Tuple[int, int]  # closed interval [lo, hi] of simple-root indices, 1-based

EVEN = 0
ODD = 1


class DiagramError(ValueError):
    """Raised for malformed parity diagrams or unsupported requests."""


class ParityDiagram:
    """Parities of the weight basis units; length m+n with m, n >= 1."""

    __slots__ = ("parities",)

    def __init__(self, parities: Iterable[int]):
        ps = tuple(int(p) for p in parities)
        if len(ps) < 2:
            raise DiagramError("parity diagram needs length at least 2")
        if any(p not in (0, 1) for p in ps):
            raise DiagramError("parities must be 0 (even) or 1 (odd)")
        if all(p == 0 for p in ps) or all(p == 1 for p in ps):
            raise DiagramError("need at least one even and one odd unit")
        self.parities = ps

    @classmethod
    def parse(cls, text: str) -> "ParityDiagram":
        mapping = {"E": 0, "O": 1, "0": 0, "1": 1, "e": 0, "o": 1}
        try:
            return cls(mapping[ch] for ch in text.strip())
        except KeyError as exc:
            raise DiagramError(f"bad parity character {exc.args[0]!r}") from None

    @classmethod
    def distinguished(cls, m: int, n: int) -> "ParityDiagram":
        if m < 1 or n < 1:
            raise DiagramError("need m, n >= 1")
        return cls([EVEN] * m + [ODD] * n)

    def __len__(self):
        return len(self.parities)

    def __eq__(self, other):
        return isinstance(other, ParityDiagram) and self.parities == other.parities

    def __hash__(self):
        return hash(self.parities)

    @property
    def n_even(self) -> int:
        return self.parities.count(0)

    @property
    def n_odd(self) -> int:
        return self.parities.count(1)

    def text(self) -> str:
        return "".join("EO"[p] for p in self.parities)

    def __repr__(self):
        return f"ParityDiagram({self.text()!r})"


def all_diagrams(length: int) -> List[ParityDiagram]:
    """Every parity diagram of the given length (mixed parities only)."""
    out = []
    for mask in range(1, (1 << length) - 1):
        out.append(ParityDiagram((mask >> k) & 1 for k in range(length)))
    return out


class RootSystem:
    """Roots, bilinear form and Cartan matrix derived from a parity diagram."""

    def __init__(self, diagram: ParityDiagram):
        self.diagram = diagram
        n = len(diagram)
        self.size = n
        self.rank = n - 1
        # form on weight units: (eps_i, eps_j) = delta_ij * (-1)^parity
        self.unit_signs = tuple(1 if p == 0 else -1 for p in diagram.parities)
        # positive roots as intervals [lo, hi] of simple indices, whole-order
        self.positive_roots: Tuple[Root, ...] = tuple(
            (lo, hi) for lo in range(1, n) for hi in range(lo, n))
        self.cartan = [[self._pairing_simple(i, j) for j in range(1, n)]
                       for i in range(1, n)]

    def _pairing_simple(self, i: int, j: int) -> int:
        # (alpha_i, alpha_j) with alpha_i = eps_i - eps_{i+1}
        s = self.unit_signs
        val = 0
        for a, sign_a in ((i, 1), (i + 1, -1)):
            for b, sign_b in ((j, 1), (j + 1, -1)):
                if a == b:
                    val += sign_a * sign_b * s[a - 1]
        return val

    def simple_parity(self, i: int) -> int:
        p = self.diagram.parities
        return (p[i - 1] + p[i]) % 2

    def root_parity(self, root: Root) -> int:
        lo, hi = root
        p = self.diagram.parities
        return (p[lo - 1] + p[hi]) % 2

    def root_height(self, root: Root) -> int:
        lo, hi = root
        return hi - lo + 1

    def pairing(self, r1: Root, r2: Root) -> int:
        """(beta, gamma) for positive roots given as intervals."""
        total = 0
        for i in range(r1[0], r1[1] + 1):
            for j in range(r2[0], r2[1] + 1):
                total += self.cartan[i - 1][j - 1]
        return total

    def simple_roots(self) -> List[Root]:
        return [(i, i) for i in range(1, self.size)]

    def root_order_key(self, root: Root) -> Tuple[int, int]:
        # total order: by first simple index, then by last
        return root


def build_root_system(diagram: ParityDiagram) -> RootSystem:
    return RootSystem(diagram)


def distinguished_diagram(m: int, n: int) -> ParityDiagram:
    return ParityDiagram.distinguished(m, n)


def root_height(root: Root) -> int:
    return root[1] - root[0] + 1


# -- exact sparse supermatrices ----------------------------------------------------

Mat = Dict[Tuple[int, int], Fraction]


def mat_add(a: Mat, b: Mat) -> Mat:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, Fraction(0)) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def mat_scale(a: Mat, v) -> Mat:
    v = Fraction(v)
    if not v:
        return {}
    return {k: c * v for k, c in a.items()}


def mat_mul(a: Mat, b: Mat) -> Mat:
    out: Mat = {}
    by_row: Dict[int, List[Tuple[int, Fraction]]] = {}
    for (i, j), c in b.items():
        by_row.setdefault(i, []).append((j, c))
    for (i, k), c1 in a.items():
        for j, c2 in by_row.get(k, ()):  # a[i,k] b[k,j]
            key = (i, j)
            s = out.get(key, Fraction(0)) + c1 * c2
            if s:
                out[key] = s
            else:
                del out[key]
    return out


class SuperMatrixAlg:
    """Matrix realization of the special linear superalgebra of a diagram.

    ``quotient=True`` kills the central identity direction (needed when
    the even and odd unit counts agree and the supertrace form would
    otherwise be degenerate); every product and bracket is then followed
    by the canonical trace projection.
    """

    def __init__(self, rs: RootSystem, quotient: bool = False, normalize: bool = True):
        self.rs = rs
        n = rs.size
        self.n = n
        self.quotient = quotient
        self.normalize = normalize
        p = rs.diagram.parities
        self._entry_parity = [[(p[i] + p[j]) % 2 for j in range(n)] for i in range(n)]

        self.e: Dict[Root, Mat] = {}
        self.f: Dict[Root, Mat] = {}
        self.h: Dict[int, Mat] = {}
        for i in range(1, n):
            sign = Fraction(rs.unit_signs[i - 1])
            self.h[i] = self._project({(i - 1, i - 1): sign,
                                       (i, i): -Fraction(rs.unit_signs[i])})
        self.f_pbw: Dict[Root, Mat] = {}
        for root in rs.positive_roots:
            self.e[root] = self._build_root_vector(root, positive=True)
            self.f[root] = self._build_root_vector(root, positive=False)
            self.f_pbw[root] = self._build_forward_lowering(root)
        self.f_rescale: Dict[Root, Fraction] = {}
        self._normalize_pairing()

        self._cartan_basis: List[Mat] | None = None
        self._gram_inverse: List[List[Fraction]] | None = None

    # -- construction -------------------------------------------------------------

    def _project(self, m: Mat) -> Mat:
        if not self.quotient:
            return m
        tr = sum((c for (i, j), c in m.items() if i == j), Fraction(0))
        if not tr:
            return dict(m)
        shift = tr / self.n
        out = dict(m)
        for k in range(self.n):
            s = out.get((k, k), Fraction(0)) - shift
            if s:
                out[(k, k)] = s
            else:
                out.pop((k, k), None)
        return out

    def _build_root_vector(self, root: Root, positive: bool) -> Mat:
        lo, hi = root
        if positive:
            m: Mat = {(lo - 1, lo): Fraction(1)}
            for k in range(lo + 1, hi + 1):
                m = self.bracket(m, {(k - 1, k): Fraction(1)},
                                 self.entry_parity_of(m), self._ep(k - 1, k))
            return m
        m = {(hi, hi - 1): Fraction(self.rs.unit_signs[hi - 1])}
        for k in range(hi - 1, lo - 1, -1):
            other = {(k, k - 1): Fraction(self.rs.unit_signs[k - 1])}
            m = self.bracket(m, other, self.entry_parity_of(m), self._ep(k, k - 1))
        return m

    def _build_forward_lowering(self, root: Root) -> Mat:
        """Lowering vector nested in the same order as the raising one;
        this is the convention the deformed algebra's letters follow."""
        lo, hi = root
        m: Mat = {(lo, lo - 1): Fraction(self.rs.unit_signs[lo - 1])}
        for k in range(lo + 1, hi + 1):
            other = {(k, k - 1): Fraction(self.rs.unit_signs[k - 1])}
            m = self.bracket(m, other, self.entry_parity_of(m), self._ep(k, k - 1))
        return m

    def _normalize_pairing(self):
        """Record raw pairings; rescale the lowering vectors to dual-basis
        normalization only when requested (the raw nested brackets are the
        right basis for the deformed algebra's composite letters)."""
        self.pairing_value: Dict[Root, Fraction] = {}
        self.pair_pbw: Dict[Root, Fraction] = {}
        for root in self.rs.positive_roots:
            val = self.form(self.e[root], self.f[root])
            if not val:
                raise DiagramError("degenerate pairing between paired root vectors")
            self.pair_pbw[root] = self.form(self.e[root], self.f_pbw[root])
            if self.normalize:
                self.f_rescale[root] = Fraction(1, 1) / val
                self.f[root] = mat_scale(self.f[root], self.f_rescale[root])
                self.pairing_value[root] = Fraction(1)
            else:
                self.f_rescale[root] = Fraction(1)
                self.pairing_value[root] = val

    # -- parity and bracket --------------------------------------------------------

    def _ep(self, i: int, j: int) -> int:
        return self._entry_parity[i][j]

    def entry_parity(self, i: int, j: int) -> int:
        return self._entry_parity[i][j]

    def entry_parity_of(self, m: Mat) -> int:
        """Parity of a homogeneous matrix; raises if entries disagree."""
        parity = None
        for (i, j) in m:
            p = self._ep(i, j)
            if parity is None:
                parity = p
            elif parity != p:
                raise DiagramError("matrix is not parity homogeneous")
        return 0 if parity is None else parity

    def bracket(self, a: Mat, b: Mat, pa: int | None = None, pb: int | None = None) -> Mat:
        if pa is None:
            pa = self.entry_parity_of(a)
        if pb is None:
            pb = self.entry_parity_of(b)
        sign = Fraction(-1 if (pa and pb) else 1)
        return self._project(mat_add(mat_mul(a, b), mat_scale(mat_mul(b, a), -sign)))

    def supertrace(self, m: Mat) -> Fraction:
        total = Fraction(0)
        for (i, j), c in m.items():
            if i == j:
                total += Fraction(self.rs.unit_signs[i]) * c
        return total

    def form(self, a: Mat, b: Mat) -> Fraction:
        """Invariant form normalized so paired simple root vectors give 1."""
        return self.supertrace(mat_mul(a, b))

    # -- basis bookkeeping -----------------------------------------------------------

    def cartan_basis(self) -> List[Mat]:
        """An independent spanning set of the Cartan part used by the form."""
        if self._cartan_basis is None:
            if not self.quotient:
                self._cartan_basis = [self.h[i] for i in range(1, self.n)]
            else:
                basis: List[Mat] = []
                rows: List[List[Fraction]] = []
                for i in range(1, self.n):
                    cand = self.h[i]
                    vec = [cand.get((k, k), Fraction(0)) for k in range(self.n)]
                    trial = rows + [vec]
                    if _rank(trial) == len(trial):
                        basis.append(cand)
                        rows.append(vec)
                self._cartan_basis = basis
        return self._cartan_basis

    def gram_inverse(self) -> List[List[Fraction]]:
        if self._gram_inverse is None:
            basis = self.cartan_basis()
            g = [[self.form(a, b) for b in basis] for a in basis]
            inv = _invert(g)
            if inv is None:
                raise DiagramError(
                    "degenerate pairing on the Cartan subalgebra; "
                    "use the quotient realization when even and odd counts agree")
            self._gram_inverse = inv
        return self._gram_inverse

    def decompose(self, m: Mat, lowering: str = "standard") -> Dict[str, Fraction]:
        """Coefficients of m over the basis f_roots + cartan_basis + e_roots.

        Keys are "e:lo:hi", "f:lo:hi", "h:i" (cartan basis position i).
        ``lowering`` picks the lowering family: "standard" (reverse-nested,
        possibly pairing-normalized) or "pbw" (raw forward-nested).
        """
        fam = self.f if lowering == "standard" else self.f_pbw
        out: Dict[str, Fraction] = {}
        rest: Mat = dict(m)
        for root in self.rs.positive_roots:
            lo, hi = root
            ke = (lo - 1, hi)
            if ke in rest:
                c = rest[ke] / self.e[root][ke]
                out[f"e:{lo}:{hi}"] = c
                rest = mat_add(rest, mat_scale(self.e[root], -c))
            kf = (hi, lo - 1)
            if kf in rest:
                c = rest[kf] / fam[root][kf]
                out[f"f:{lo}:{hi}"] = c
                rest = mat_add(rest, mat_scale(fam[root], -c))
        if rest:
            basis = self.cartan_basis()
            cols = [[b.get((k, k), Fraction(0)) for k in range(self.n)] for b in basis]
            target = [rest.get((k, k), Fraction(0)) for k in range(self.n)]
            coeffs = _solve(cols, target)
            if coeffs is None:
                raise DiagramError("matrix does not lie in the realized algebra")
            for idx, c in enumerate(coeffs):
                if c:
                    out[f"h:{idx + 1}"] = c
            check = dict(rest)
            for idx, c in enumerate(coeffs):
                check = mat_add(check, mat_scale(basis[idx], -c))
            if check:
                raise DiagramError("matrix does not lie in the realized algebra")
        return out


def realize_matrix_algebra(rs: RootSystem, quotient: bool | None = None,
                           normalize: bool = True) -> SuperMatrixAlg:
    """Matrix realization; by default quotients exactly when the form needs it."""
    if quotient is None:
        quotient = rs.diagram.n_even == rs.diagram.n_odd
    return SuperMatrixAlg(rs, quotient=quotient, normalize=normalize)


# -- small exact linear algebra -----------------------------------------------------


def _rank(rows: List[List[Fraction]]) -> int:
    m = [list(map(Fraction, r)) for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        pivot = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = Fraction(1, 1) / m[rank][c]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                factor = m[r][c]
                m[r] = [x - factor * y for x, y in zip(m[r], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def _invert(g: List[List[Fraction]]) -> List[List[Fraction]] | None:
    n = len(g)
    aug = [[Fraction(g[i][j]) for j in range(n)] +
           [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for c in range(n):
        pivot = next((r for r in range(c, n) if aug[r][c]), None)
        if pivot is None:
            return None
        aug[c], aug[pivot] = aug[pivot], aug[c]
        inv = Fraction(1, 1) / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                factor = aug[r][c]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def _solve(cols: List[List[Fraction]], target: List[Fraction]) -> List[Fraction] | None:
    """Solve sum_j x_j cols[j] = target exactly; None if inconsistent."""
    if not cols:
        return [] if not any(target) else None
    rows = len(cols[0])
    aug = [[cols[j][r] for j in range(len(cols))] + [target[r]] for r in range(rows)]
    n = len(cols)
    pivots = []
    rank = 0
    for c in range(n):
        pivot = next((r for r in range(rank, rows) if aug[r][c]), None)
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        inv = Fraction(1, 1) / aug[rank][c]
        aug[rank] = [x * inv for x in aug[rank]]
        for r in range(rows):
            if r != rank and aug[r][c]:
                factor = aug[r][c]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[rank])]
        pivots.append(c)
        rank += 1
    for r in range(rank, rows):
        if aug[r][n]:
            return None
    sol = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        sol[c] = aug[r][n]
    return sol
