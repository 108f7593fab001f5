"""Exact scalar and truncated formal power series arithmetic.

Everything here is computed over arbitrary-precision rationals
(``fractions.Fraction``); no floating point is used anywhere.  A series
is truncated at a fixed total-degree cap shared by all operands of an
operation, which models working in a power-series ring modulo the ideal
of terms of total degree above the cap.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

Rational = Fraction

Expo = Tuple[int, ...]


class SeriesError(ValueError):
    """Raised when series operands are incompatible or a precondition fails."""


class TruncSeries:
    """Multivariate formal power series truncated at a total-degree cap.

    Terms are stored sparsely as a map from exponent vectors to nonzero
    rational coefficients.  Instances are immutable; all arithmetic
    returns new objects and is safe to use concurrently.
    """

    __slots__ = ("variables", "cap", "terms")

    def __init__(self, variables: Iterable[str], cap: int,
                 terms: Mapping[Expo, Rational] | None = None):
        self.variables: Tuple[str, ...] = tuple(variables)
        if cap < 0:
            raise SeriesError("cap must be nonnegative")
        self.cap = int(cap)
        clean: Dict[Expo, Rational] = {}
        if terms:
            n = len(self.variables)
            for expo, coeff in terms.items():
                if len(expo) != n:
                    raise SeriesError("exponent vector has wrong arity")
                if sum(expo) > self.cap:
                    continue
                c = Fraction(coeff)
                if c:
                    clean[tuple(expo)] = c
        self.terms: Dict[Expo, Rational] = clean

    # -- construction helpers -------------------------------------------------

    @classmethod
    def constant(cls, variables: Iterable[str], cap: int, value) -> "TruncSeries":
        variables = tuple(variables)
        zero = (0,) * len(variables)
        return cls(variables, cap, {zero: Fraction(value)})

    @classmethod
    def variable(cls, variables: Iterable[str], cap: int, name: str) -> "TruncSeries":
        variables = tuple(variables)
        if name not in variables:
            raise SeriesError(f"unknown variable {name!r}")
        expo = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, cap, {expo: Fraction(1)})

    def _check_compatible(self, other: "TruncSeries") -> None:
        if self.variables != other.variables or self.cap != other.cap:
            raise SeriesError("operands disagree on variables or cap")

    # -- basic queries ---------------------------------------------------------

    @property
    def constant_term(self) -> Rational:
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, expo: Expo) -> Rational:
        return self.terms.get(tuple(expo), Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.variables == other.variables and self.cap == other.cap
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.variables, self.cap, frozenset(self.terms.items())))

    # -- ring operations --------------------------------------------------------

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check_compatible(other)
        terms = dict(self.terms)
        for expo, coeff in other.terms.items():
            c = terms.get(expo, Fraction(0)) + coeff
            if c:
                terms[expo] = c
            else:
                terms.pop(expo, None)
        return TruncSeries(self.variables, self.cap, terms)

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.variables, self.cap,
                           {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def scale(self, value) -> "TruncSeries":
        v = Fraction(value)
        if not v:
            return TruncSeries(self.variables, self.cap)
        return TruncSeries(self.variables, self.cap,
                           {e: c * v for e, c in self.terms.items()})

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        self._check_compatible(other)
        cap = self.cap
        out: Dict[Expo, Rational] = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > cap:
                    continue
                expo = tuple(a + b for a, b in zip(e1, e2))
                c = out.get(expo, Fraction(0)) + c1 * c2
                if c:
                    out[expo] = c
                else:
                    del out[expo]
        return TruncSeries(self.variables, cap, out)

    def pow(self, n: int) -> "TruncSeries":
        if n < 0:
            raise SeriesError("negative powers go through series_inverse")
        result = TruncSeries.constant(self.variables, self.cap, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- calculus ----------------------------------------------------------------

    def derivative(self, name: str) -> "TruncSeries":
        if name not in self.variables:
            raise SeriesError(f"unknown variable {name!r}")
        idx = self.variables.index(name)
        out: Dict[Expo, Rational] = {}
        for expo, coeff in self.terms.items():
            k = expo[idx]
            if k == 0:
                continue
            new = list(expo)
            new[idx] = k - 1
            out[tuple(new)] = coeff * k
        return TruncSeries(self.variables, self.cap, out)

    def valuation(self) -> int:
        """Smallest total degree carrying a nonzero term (cap+1 for zero)."""
        if not self.terms:
            return self.cap + 1
        return min(sum(e) for e in self.terms)

    # -- rendering -----------------------------------------------------------------

    def render(self) -> str:
        """Canonical text form: terms by total degree, then lexicographic."""
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda e: (sum(e), e))
        parts = []
        for expo in keys:
            coeff = self.terms[expo]
            factors = []
            for name, k in zip(self.variables, expo):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            mono = " ".join(factors)
            if not mono:
                body = str(coeff)
            elif coeff == 1:
                body = mono
            elif coeff == -1:
                body = f"-{mono}"
            else:
                body = f"{coeff} {mono}"
            parts.append(body)
        text = parts[0]
        for body in parts[1:]:
            if body.startswith("-"):
                text += " - " + body[1:]
            else:
                text += " + " + body
        return text

    def __repr__(self):
        return f"TruncSeries({self.render()!r}, cap={self.cap})"


# -- module-level operations ------------------------------------------------------


def series_add(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a + b


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a * b


def series_exp(a: TruncSeries) -> TruncSeries:
    """exp(a) = sum a^n / n! for a with zero constant term."""
    if a.constant_term:
        raise SeriesError("series_exp needs a zero constant term")
    result = TruncSeries.constant(a.variables, a.cap, 1)
    power = TruncSeries.constant(a.variables, a.cap, 1)
    fact = 1
    v = max(a.valuation(), 1)
    for n in range(1, a.cap // v + 1):
        power = power * a
        fact *= n
        result = result + power.scale(Fraction(1, fact))
    return result


def series_log(a: TruncSeries) -> TruncSeries:
    """log(a) = sum (-1)^(n+1)/n (a-1)^n for a with constant term 1."""
    if a.constant_term != 1:
        raise SeriesError("series_log needs constant term 1")
    x = a - TruncSeries.constant(a.variables, a.cap, 1)
    result = TruncSeries(a.variables, a.cap)
    power = TruncSeries.constant(a.variables, a.cap, 1)
    v = max(x.valuation(), 1)
    for n in range(1, a.cap // v + 1):
        power = power * x
        result = result + power.scale(Fraction((-1) ** (n + 1), n))
    return result


def series_inverse(a: TruncSeries) -> TruncSeries:
    """Multiplicative inverse; the constant term must be nonzero."""
    c0 = a.constant_term
    if not c0:
        raise SeriesError("series_inverse needs a nonzero constant term")
    unit = a.scale(Fraction(1, 1) / c0)
    x = TruncSeries.constant(a.variables, a.cap, 1) - unit
    result = TruncSeries.constant(a.variables, a.cap, 1)
    power = TruncSeries.constant(a.variables, a.cap, 1)
    v = max(x.valuation(), 1)
    for _ in range(a.cap // v):
        power = power * x
        result = result + power
    return result.scale(Fraction(1, 1) / c0)


def series_sqrt_unit(a: TruncSeries) -> TruncSeries:
    """Square root of a series with constant term 1, via exp(log(a)/2)."""
    if a.constant_term != 1:
        raise SeriesError("series_sqrt_unit needs constant term 1")
    return series_exp(series_log(a).scale(Fraction(1, 2)))


def series_substitute(a: TruncSeries,
                      assignments: Mapping[str, TruncSeries]) -> TruncSeries:
    """Compose: substitute series (with zero constant term) for variables.

    Variables not mentioned are substituted by themselves.  Requiring
    zero constant terms keeps the truncation order exact.
    """
    for name, value in assignments.items():
        if name not in a.variables:
            raise SeriesError(f"unknown variable {name!r}")
        if value.constant_term:
            raise SeriesError("substituted series must have zero constant term")
        if value.cap != a.cap:
            raise SeriesError("substituted series disagrees on cap")
    images = []
    for name in a.variables:
        if name in assignments:
            img = assignments[name]
            if img.variables != a.variables:
                # allow substitution series over the same variable tuple only
                raise SeriesError("substituted series must use the same variables")
            images.append(img)
        else:
            images.append(TruncSeries.variable(a.variables, a.cap, name))
    out = TruncSeries(a.variables, a.cap)
    for expo, coeff in a.terms.items():
        term = TruncSeries.constant(a.variables, a.cap, coeff)
        for img, k in zip(images, expo):
            if k:
                term = term * img.pow(k)
        out = out + term
    return out


def divide_by_linear(a: TruncSeries, coeffs: Mapping[str, Rational]) -> TruncSeries:
    """Divide ``a`` exactly by a homogeneous linear form sum(c_v * v).

    The form must actually divide ``a``.  Because ``a`` is only known up
    to the cap, the quotient is exact only up to total degree cap-1; the
    cap is kept so callers compare at one order lower.
    """
    pivot = None
    for name, c in coeffs.items():
        if Fraction(c):
            pivot = name
            break
    if pivot is None:
        raise SeriesError("division by the zero form")
    idx = a.variables.index(pivot)
    pc = Fraction(coeffs[pivot])
    # Change variables: pivot = (w - sum_{other} c_v v)/pc with w the form.
    # Equivalently substitute pivot -> (pivot - rest)/pc, divide by the new
    # pivot variable, then substitute pivot -> form back.
    rest = TruncSeries(a.variables, a.cap)
    for name, c in coeffs.items():
        if name != pivot and Fraction(c):
            rest = rest + TruncSeries.variable(a.variables, a.cap, name).scale(Fraction(c))
    forward = (TruncSeries.variable(a.variables, a.cap, pivot) - rest).scale(Fraction(1, 1) / pc)
    b = series_substitute(a, {pivot: forward})
    out: Dict[Expo, Rational] = {}
    for expo, coeff in b.terms.items():
        if expo[idx] == 0:
            raise SeriesError("linear form does not divide the series")
        new = list(expo)
        new[idx] -= 1
        out[tuple(new)] = coeff
    q = TruncSeries(a.variables, a.cap, out)
    backward = TruncSeries.variable(a.variables, a.cap, pivot).scale(pc) + rest
    return series_substitute(q, {pivot: backward})


# -- polynomials in the deformation parameter -------------------------------------


class HPoly:
    """Dense polynomial in the formal deformation parameter, rational coefficients.

    Used as the coefficient ring of PBW expansions; the degree is bounded
    by the ambient truncation cap at use sites, not here.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rational] = ()):  # coeffs[k] multiplies hbar^k
        cs = [Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: Tuple[Rational, ...] = tuple(cs)

    @classmethod
    def const(cls, value) -> "HPoly":
        return cls([Fraction(value)])

    @classmethod
    def hbar(cls, k: int = 1, value=1) -> "HPoly":
        return cls([Fraction(0)] * k + [Fraction(value)])

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def valuation(self) -> int:
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return -1

    def __add__(self, other: "HPoly") -> "HPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        for k, c in enumerate(other.coeffs):
            a[k] += c
        return HPoly(a)

    def __neg__(self) -> "HPoly":
        return HPoly([-c for c in self.coeffs])

    def __sub__(self, other: "HPoly") -> "HPoly":
        return self + (-other)

    def __mul__(self, other: "HPoly") -> "HPoly":
        if not self.coeffs or not other.coeffs:
            return HPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return HPoly(out)

    def scale(self, value) -> "HPoly":
        v = Fraction(value)
        return HPoly([c * v for c in self.coeffs])

    def shift(self, k: int) -> "HPoly":
        """Multiply by hbar^k."""
        if not self.coeffs:
            return self
        return HPoly([Fraction(0)] * k + list(self.coeffs))

    def truncate(self, max_degree: int) -> "HPoly":
        if max_degree < 0:
            return HPoly()
        return HPoly(self.coeffs[: max_degree + 1])

    def at_zero(self) -> Rational:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def render(self, symbol: str = "hb") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                power = symbol if k == 1 else f"{symbol}^{k}"
                if c == 1:
                    parts.append(power)
                elif c == -1:
                    parts.append(f"-{power}")
                else:
                    parts.append(f"{c} {power}")
        text = parts[0]
        for body in parts[1:]:
            text += " - " + body[1:] if body.startswith("-") else " + " + body
        return text

    def __repr__(self):
        return f"HPoly({self.render()!r})"


def parse_rational(text: str) -> Rational:
    """Parse "p/q" or "p" into an exact rational."""
    return Fraction(text.strip())
