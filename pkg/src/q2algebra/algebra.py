"""The *-algebra of canonical monomials of the 2-adic ring algebra Q2.

A monomial is the tuple (l, a, b, c) standing for U^l S2^a S2*^b U^c with
0 <= l < 2^a, where U is the generating unitary and S2 the generating
isometry (S2 U = U^2 S2, S2 S2* + U S2 S2* U* = 1).  Every word S_mu S_nu* U^k
in the generators has this form, the product of two monomials is again a
single monomial or zero, and at a fixed depth b = B distinct tuples are
linearly independent, which makes operator equality decidable.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple

from .scalars import DyadicCyclotomic, Fraction, ONE as SC_ONE, ZERO as SC_ZERO

__all__ = [
    "Monomial",
    "Element",
    "DepthTooSmall",
    "from_generator",
    "equals",
    "normalize_depth",
    "membership",
    "gauge_component",
    "proj_Pn",
    "proj_Qn",
    "multiindex_label",
    "multiindex_of_label",
    "monomial_of_pair",
    "pair_of_monomial",
    "GEN_U",
    "GEN_U_STAR",
    "GEN_S1",
    "GEN_S2",
    "GEN_S1_STAR",
    "GEN_S2_STAR",
    "ZERO",
    "ONE",
]


class DepthTooSmall(ValueError):
    """Requested normalization depth is below the element's depth."""


class Monomial(NamedTuple):
    """Canonical tuple (l, a, b, c) for U^l S2^a (S2*)^b U^c, 0 <= l < 2^a."""

    l: int
    a: int
    b: int
    c: int

    def validate(self) -> "Monomial":
        if self.a < 0 or self.b < 0 or not 0 <= self.l < (1 << self.a):
            raise ValueError(f"not a canonical monomial: {self}")
        return self

    def adjoint(self) -> "Monomial":
        # (U^l S2^a S2*^b U^c)* = U^-c S2^b S2*^a U^-l; renormalizing the
        # leading power with -c = 2^b q + r gives (r, b, a, 2^a q - l)
        q, r = divmod(-self.c, 1 << self.b)
        return Monomial(r, self.b, self.a, (q << self.a) - self.l)

    def degree(self) -> int:
        """Gauge degree a - b."""
        return self.a - self.b


def mono_mul(x: Monomial, y: Monomial) -> Monomial | None:
    """Product of two canonical monomials: a single monomial, or None for zero.

    The middle word (S2*)^b1 U^(c1+l2) S2^a2 is resolved through the push rule
    U^m S2^a = U^(m mod 2^a) S2^a U^(m div 2^a).
    """
    m = x.c + y.l
    if y.a >= x.b:
        # (S2*)^b1 U^m S2^a2 = [2^b1 | m] U^r S2^(a2-b1) U^q
        if m & ((1 << x.b) - 1):
            return None
        m >>= x.b
        gap = y.a - x.b
        q, r = divmod(m, 1 << gap)
        return Monomial(x.l + (r << x.a), x.a + gap, y.b, (q << y.b) + y.c)
    # (S2*)^b1 U^m S2^a2 = [2^a2 | m] (S2*)^(b1-a2) U^(m div 2^a2)
    if m & ((1 << y.a) - 1):
        return None
    m >>= y.a
    return Monomial(x.l, x.a, x.b - y.a + y.b, (m << y.b) + y.c)


_GENERATOR_TUPLES = {
    "U": Monomial(0, 0, 0, 1),
    "U*": Monomial(0, 0, 0, -1),
    "S2": Monomial(0, 1, 0, 0),
    "S1": Monomial(1, 1, 0, 0),
    "S2*": Monomial(0, 0, 1, 0),
    "S1*": Monomial(0, 0, 1, -1),
}


class Element:
    """Finite linear combination of canonical monomials with exact coefficients.

    Elements are immutable values.  Term maps are not unique below the common
    depth (the Cuntz relation refines monomials), so ``==`` is semantic: it
    decides equality of the induced operators on l2(Z).
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[Monomial, DyadicCyclotomic]] | dict = ()):
        data: dict[Monomial, DyadicCyclotomic] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for mono, coef in items:
            if not isinstance(mono, Monomial):
                mono = Monomial(*mono)
            mono.validate()
            if not isinstance(coef, DyadicCyclotomic):
                coef = DyadicCyclotomic.from_rational(coef)
            if mono in data:
                coef = data[mono] + coef
            if coef.is_zero():
                data.pop(mono, None)
            else:
                data[mono] = coef
        object.__setattr__(self, "_terms", data)

    def __setattr__(self, name, value):
        raise AttributeError("Element is immutable")

    # -- inspection ----------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, DyadicCyclotomic]:
        return dict(self._terms)

    def sorted_terms(self) -> list[tuple[Monomial, DyadicCyclotomic]]:
        """Terms in the canonical (b, a, l, c) order used for serialization."""
        return sorted(self._terms.items(), key=lambda kv: (kv[0].b, kv[0].a, kv[0].l, kv[0].c))

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def depth(self) -> int:
        """Maximal S2* power over the stored terms (0 for the zero element)."""
        return max((m.b for m in self._terms), default=0)

    def coefficient(self, mono: Monomial) -> DyadicCyclotomic:
        return self._terms.get(mono, SC_ZERO)

    def scalar_part(self) -> DyadicCyclotomic | None:
        """The constant c with self == c*1, or None if self is not scalar."""
        cand = self._terms.get(Monomial(0, 0, 0, 0), SC_ZERO)
        return cand if equals(self, scalar(cand)) else None

    # -- linear structure ------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        data = dict(self._terms)
        for mono, coef in other._terms.items():
            acc = data.get(mono, SC_ZERO) + coef
            if acc.is_zero():
                data.pop(mono, None)
            else:
                data[mono] = acc
        out = Element.__new__(Element)
        object.__setattr__(out, "_terms", data)
        return out

    def __neg__(self):
        out = Element.__new__(Element)
        object.__setattr__(out, "_terms", {m: -c for m, c in self._terms.items()})
        return out

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def scale(self, s) -> "Element":
        if not isinstance(s, DyadicCyclotomic):
            s = DyadicCyclotomic.from_rational(s)
        if s.is_zero():
            return ZERO
        data = {m: s * c for m, c in self._terms.items()}
        out = Element.__new__(Element)
        object.__setattr__(out, "_terms", data)
        return out

    def __rmul__(self, s):
        if isinstance(s, (int, Fraction, DyadicCyclotomic)):
            return self.scale(s)
        return NotImplemented

    # -- ring structure ---------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, DyadicCyclotomic)):
            return self.scale(other)
        if not isinstance(other, Element):
            return NotImplemented
        data: dict[Monomial, DyadicCyclotomic] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                prod = mono_mul(m1, m2)
                if prod is None:
                    continue
                acc = data.get(prod, SC_ZERO) + c1 * c2
                if acc.is_zero():
                    data.pop(prod, None)
                else:
                    data[prod] = acc
        out = Element.__new__(Element)
        object.__setattr__(out, "_terms", data)
        return out

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined on the span")
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def adjoint(self) -> "Element":
        data: dict[Monomial, DyadicCyclotomic] = {}
        for mono, coef in self._terms.items():
            adj = mono.adjoint()
            acc = data.get(adj, SC_ZERO) + coef.conj()
            if acc.is_zero():
                data.pop(adj, None)
            else:
                data[adj] = acc
        out = Element.__new__(Element)
        object.__setattr__(out, "_terms", data)
        return out

    # -- equality ----------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return equals(self, other)

    __hash__ = None

    def __repr__(self):
        if not self._terms:
            return "Element(0)"
        body = " + ".join(f"({c})*{tuple(m)}" for m, c in self.sorted_terms())
        return f"Element({body})"

    # -- serialization -------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "terms": [
                {"l": m.l, "a": m.a, "b": m.b, "c": m.c, "coef": coef.to_json()}
                for m, coef in self.sorted_terms()
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> "Element":
        return cls(
            (Monomial(t["l"], t["a"], t["b"], t["c"]), DyadicCyclotomic.from_json(t["coef"]))
            for t in data["terms"]
        )


def monomial(l: int, a: int, b: int, c: int, coef=1) -> Element:
    return Element([(Monomial(l, a, b, c), coef)])


def scalar(s) -> Element:
    if not isinstance(s, DyadicCyclotomic):
        s = DyadicCyclotomic.from_rational(s)
    if s.is_zero():
        return ZERO
    return Element([(Monomial(0, 0, 0, 0), s)])


ZERO = Element()
ONE = Element([(Monomial(0, 0, 0, 0), SC_ONE)])


def from_generator(symbol: str) -> Element:
    """One of U, U*, S1, S2, S1*, S2* as an Element."""
    try:
        return Element([(_GENERATOR_TUPLES[symbol], SC_ONE)])
    except KeyError:
        raise ValueError(f"unknown generator {symbol!r}") from None


GEN_U = from_generator("U")
GEN_U_STAR = from_generator("U*")
GEN_S1 = from_generator("S1")
GEN_S2 = from_generator("S2")
GEN_S1_STAR = from_generator("S1*")
GEN_S2_STAR = from_generator("S2*")


def _refined(mono: Monomial, coef: DyadicCyclotomic, B: int):
    """Yield the depth-B refinement of a single term.

    Inserting 1 = sum_t U^t S2^d (S2*)^d U^-t (d = B - b) before the S2* block
    turns (l, a, b, c) into the 2^d terms (l + 2^a t, a + d, B, c - 2^b t).
    """
    d = B - mono.b
    if d == 0:
        yield mono, coef
        return
    for t in range(1 << d):
        yield Monomial(mono.l + (t << mono.a), mono.a + d, B, mono.c - (t << mono.b)), coef


def normalize_depth(x: Element, B: int) -> Element:
    """The unique representation of x with every term at depth b = B."""
    if B < x.depth:
        raise DepthTooSmall(f"depth {B} < element depth {x.depth}")
    acc: dict[Monomial, DyadicCyclotomic] = {}
    for mono, coef in x._terms.items():
        for ref, c in _refined(mono, coef, B):
            tot = acc.get(ref, SC_ZERO) + c
            if tot.is_zero():
                acc.pop(ref, None)
            else:
                acc[ref] = tot
    out = Element.__new__(Element)
    object.__setattr__(out, "_terms", acc)
    return out


def coarsen(x: Element) -> Element:
    """Greedy inverse of refinement: merge complete sibling pairs.

    The two children (l, a, b, c) and (l + 2^(a-1), a, b, c - 2^(b-1)) of one
    refinement step carry equal coefficients exactly when they came from the
    parent (l, a-1, b-1, c); merging repeatedly shrinks the term map without
    changing the operator.  A size optimization only, never needed for
    equality.
    """
    terms = dict(x._terms)
    changed = True
    while changed:
        changed = False
        for mono in list(terms):
            coef = terms.get(mono)
            if coef is None or mono.a < 1 or mono.b < 1:
                continue
            half_l = 1 << (mono.a - 1)
            if mono.l >= half_l:
                continue
            sibling = Monomial(mono.l + half_l, mono.a, mono.b, mono.c - (1 << (mono.b - 1)))
            if terms.get(sibling) != coef:
                continue
            del terms[mono]
            del terms[sibling]
            parent = Monomial(mono.l, mono.a - 1, mono.b - 1, mono.c)
            acc = terms.get(parent, SC_ZERO) + coef
            if acc.is_zero():
                terms.pop(parent, None)
            else:
                terms[parent] = acc
            changed = True
    out = Element.__new__(Element)
    object.__setattr__(out, "_terms", terms)
    return out


def equals(x: Element, y: Element) -> bool:
    """Decide whether x and y act as the same operator on l2(Z).

    The difference is refined to the common depth B = max b, where distinct
    tuples induce distinct partial affine maps (residue class, slope,
    intercept) and are therefore linearly independent; the difference is zero
    iff every refined coefficient group cancels.
    """
    diff = x - y
    if diff.is_zero():
        return True
    B = diff.depth
    acc: dict[Monomial, DyadicCyclotomic] = {}
    for mono, coef in diff._terms.items():
        for ref, c in _refined(mono, coef, B):
            tot = acc.get(ref, SC_ZERO) + c
            if tot.is_zero():
                acc.pop(ref, None)
            else:
                acc[ref] = tot
    return not acc


# -- gauge grading and expectations (tuple rules) -------------------------------


def gauge_component(x: Element, d: int) -> Element:
    """The part of x of gauge degree d (terms with a - b = d)."""
    return Element((m, c) for m, c in x._terms.items() if m.degree() == d)


def gauge_degrees(x: Element) -> set[int]:
    return {m.degree() for m in x._terms}


def _expect_gauge(x: Element) -> Element:
    return Element((m, c) for m, c in x._terms.items() if m.a == m.b)


def _expect_cu(x: Element) -> Element:
    """Tuple rule (l,a,b,c) -> delta_{a,b} 2^-a U^(l+c) for the C*(U) expectation."""
    acc: dict[Monomial, DyadicCyclotomic] = {}
    for m, coef in x._terms.items():
        if m.a != m.b:
            continue
        key = Monomial(0, 0, 0, m.l + m.c)
        tot = acc.get(key, SC_ZERO) + coef * Fraction(1, 1 << m.a)
        if tot.is_zero():
            acc.pop(key, None)
        else:
            acc[key] = tot
    out = Element.__new__(Element)
    object.__setattr__(out, "_terms", acc)
    return out


def _expect_d2(x: Element) -> Element:
    """Diagonal rule: keep (l,a,b,c) iff a = b and c = -l."""
    return Element((m, c) for m, c in x._terms.items() if m.a == m.b and m.c == -m.l)


def membership(x: Element, sub: str) -> bool:
    """Exact membership of x in the algebraic span of a named subalgebra.

    CU, D2 and QT are the ranges of the corresponding expectations; O2 and F2
    are read off the unique depth-B form, where a tuple is S_alpha S_beta*
    (no trailing U power) iff 0 <= -c < 2^B, with a = B additionally for F2.
    """
    if sub == "QT":
        return equals(x, _expect_gauge(x))
    if sub == "CU":
        return equals(x, _expect_cu(x))
    if sub == "D2":
        return equals(x, _expect_d2(x))
    if sub not in ("O2", "F2"):
        raise ValueError(f"unknown subalgebra {sub!r}")
    if x.is_zero():
        return True
    B = x.depth
    for m in normalize_depth(x, B)._terms:
        if not 0 <= -m.c < (1 << B):
            return False
        if sub == "F2" and m.a != B:
            return False
    return True


# -- projection families ----------------------------------------------------------


def proj_Pn(n: int) -> Element:
    """P_n = S1^n S2 S2* (S1*)^n, the projection onto {i = 2^n - 1 mod 2^(n+1)}."""
    if n < 0:
        raise ValueError("n must be non-negative")
    s1n = GEN_S1**n
    return s1n * GEN_S2 * GEN_S2_STAR * s1n.adjoint()


def proj_Qn(n: int) -> Element:
    """Q_n = P_0 + ... + P_n."""
    out = ZERO
    for k in range(n + 1):
        out = out + proj_Pn(k)
    return out


# -- multi-index conversions --------------------------------------------------------


def multiindex_label(digits: Iterable[int]) -> int:
    """The integer l(alpha) = sum_j d_j 2^(j-1) with d(1) = 1, d(2) = 0."""
    label = 0
    for pos, digit in enumerate(digits):
        if digit == 1:
            label |= 1 << pos
        elif digit != 2:
            raise ValueError("multi-index digits must be 1 or 2")
    return label


def multiindex_of_label(j: int, k: int) -> tuple[int, ...]:
    """The length-k multi-index alpha with l(alpha) = j, 0 <= j < 2^k."""
    if not 0 <= j < (1 << k):
        raise ValueError(f"label {j} out of range for length {k}")
    return tuple(1 if (j >> pos) & 1 else 2 for pos in range(k))


def monomial_of_pair(mu: Iterable[int], nu: Iterable[int], h: int = 0) -> Monomial:
    """The canonical tuple of S_mu S_nu* U^h."""
    mu = tuple(mu)
    nu = tuple(nu)
    return Monomial(multiindex_label(mu), len(mu), len(nu), h - multiindex_label(nu))


def pair_of_monomial(m: Monomial) -> tuple[tuple[int, ...], tuple[int, ...], int]:
    """A multi-index pair (mu, nu, h) with S_mu S_nu* U^h equal to m.

    When 0 <= -c < 2^b the O2 form with h = 0 is returned, otherwise nu is the
    all-2 index and h = c.
    """
    mu = multiindex_of_label(m.l, m.a)
    if 0 <= -m.c < (1 << m.b):
        return mu, multiindex_of_label(-m.c, m.b), 0
    return mu, multiindex_of_label(0, m.b), m.c


def s_mu(mu: Iterable[int]) -> Element:
    """The isometry S_mu as an Element."""
    mu = tuple(mu)
    return Element([(Monomial(multiindex_label(mu), len(mu), 0, 0), SC_ONE)])
