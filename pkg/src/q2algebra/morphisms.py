"""Endomorphisms of Q2 as validated generator-image pairs.

An endomorphism is determined by where U and S2 go; the images must satisfy
the defining relations (img_U unitary, img_S2 an isometry, the commutation
rule and the range partition), which is checked at construction through the
exact equality oracle.  On top of that sit the named morphisms (gauge,
flip-flop, shift, chi, beta, inner), the (V, W) extension calculus for
endomorphisms of the Cuntz subalgebra, the Bogoljubov extensibility
classifier, and the f(U) S2 structure decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    Element,
    GEN_S1,
    GEN_S1_STAR,
    GEN_S2,
    GEN_S2_STAR,
    GEN_U,
    GEN_U_STAR,
    ONE,
    equals,
    membership,
    scalar,
)
from .scalars import DyadicCyclotomic
from .torusfunc import LaurentCircleFunction

__all__ = [
    "Endomorphism",
    "RelationViolated",
    "NotOdd",
    "NotUnitary",
    "ExtensionConditionFailed",
    "NotInS2",
    "NotUnitaryFunction",
    "make_endo",
    "apply",
    "compose",
    "gauge",
    "flipflop",
    "shift",
    "chi",
    "beta_monomial",
    "ad_unitary",
    "builtin",
    "u_of",
    "W_of",
    "is_beta",
    "ExtensionData",
    "check_extension",
    "compose_extension_data",
    "flip_theta",
    "BogoljubovMatrix",
    "Gauge",
    "FlipFlopGauge",
    "NotExtensible",
    "bogoljubov_classify",
    "decompose_S2_image",
]


class RelationViolated(ValueError):
    """Proposed generator images break a defining relation of Q2."""


class NotOdd(ValueError):
    """chi requires an odd integer."""


class NotUnitary(ValueError):
    """A unitary was required."""


class ExtensionConditionFailed(ValueError):
    """(V, W) extension data violates one of its two equations."""


class NotInS2(ValueError):
    """The element does not satisfy the S2-image relations."""


class NotUnitaryFunction(ValueError):
    """Reconstructed circle function is not T-valued."""


def _is_unitary(u: Element) -> bool:
    ustar = u.adjoint()
    return equals(ustar * u, ONE) and equals(u * ustar, ONE)


class Endomorphism:
    """Unital *-endomorphism of Q2, stored by the images of U and S2."""

    __slots__ = ("img_U", "img_S2", "label", "_pow_u", "_pow_s2", "_pow_s2_star")

    def __init__(self, img_U: Element, img_S2: Element, label: str | None = None):
        from .algebra import coarsen

        # keep images in merged form so that iterated composition stays small
        img_U = coarsen(img_U)
        img_S2 = coarsen(img_S2)
        img_U_star = img_U.adjoint()
        if not equals(img_U_star * img_U, ONE) or not equals(img_U * img_U_star, ONE):
            raise RelationViolated("image of U is not unitary")
        img_S2_star = img_S2.adjoint()
        if not equals(img_S2_star * img_S2, ONE):
            raise RelationViolated("image of S2 is not an isometry")
        if not equals(img_S2 * img_U, img_U * img_U * img_S2):
            raise RelationViolated("images break S2 U = U^2 S2")
        range_proj = img_S2 * img_S2_star
        if not equals(range_proj + img_U * range_proj * img_U_star, ONE):
            raise RelationViolated("images break S2 S2* + U S2 S2* U* = 1")
        object.__setattr__(self, "img_U", img_U)
        object.__setattr__(self, "img_S2", img_S2)
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "_pow_u", {0: ONE, 1: img_U, -1: img_U_star})
        object.__setattr__(self, "_pow_s2", {0: ONE, 1: img_S2})
        object.__setattr__(self, "_pow_s2_star", {0: ONE, 1: img_S2_star})

    def __setattr__(self, name, value):
        raise AttributeError("Endomorphism is immutable")

    def _power(self, cache: dict, n: int) -> Element:
        if n in cache:
            return cache[n]
        step = cache[1] if n > 0 else cache[-1]
        start = n
        while start not in cache:
            start += -1 if n > 0 else 1
        out = cache[start]
        while start != n:
            start += 1 if n > 0 else -1
            out = out * step
            cache[start] = out
        return out

    def __call__(self, x: Element) -> Element:
        """Homomorphic extension: substitute images in U^l S2^a (S2*)^b U^c."""
        total = None
        for mono, coef in x.terms.items():
            word = self._power(self._pow_u, mono.l) if mono.l else ONE
            if mono.a:
                word = word * self._power(self._pow_s2, mono.a)
            if mono.b:
                word = word * self._power(self._pow_s2_star, mono.b)
            if mono.c:
                word = word * self._power(self._pow_u, mono.c)
            word = word.scale(coef)
            total = word if total is None else total + word
        from .algebra import ZERO

        return ZERO if total is None else total

    def fixes_generators(self) -> bool:
        return equals(self.img_U, GEN_U) and equals(self.img_S2, GEN_S2)

    def __repr__(self):
        return f"Endomorphism({self.label or 'anonymous'})"


def make_endo(img_U: Element, img_S2: Element, label: str | None = None) -> Endomorphism:
    return Endomorphism(img_U, img_S2, label)


def apply(e: Endomorphism, x: Element) -> Element:
    return e(x)


def compose(e1: Endomorphism, e2: Endomorphism, label: str | None = None) -> Endomorphism:
    """e1 after e2, validated again on construction."""
    if label is None and e1.label and e2.label:
        label = f"{e1.label}.{e2.label}"
    return Endomorphism(e1(e2.img_U), e1(e2.img_S2), label)


def agree_on_generators(e1: Endomorphism, e2: Endomorphism) -> bool:
    return equals(e1.img_U, e2.img_U) and equals(e1.img_S2, e2.img_S2)


# -- named morphisms ---------------------------------------------------------


def gauge(z: DyadicCyclotomic) -> Endomorphism:
    """The gauge automorphism U -> U, S2 -> z S2 for an exact unimodular z."""
    if not isinstance(z, DyadicCyclotomic):
        z = DyadicCyclotomic.from_rational(z)
    if not z.is_unimodular():
        raise NotUnitary(f"gauge parameter {z} is not unimodular")
    return Endomorphism(GEN_U, GEN_S2.scale(z), label=f"gauge:{z}")


def flipflop() -> Endomorphism:
    """The order-two automorphism with U -> U*, S2 -> U S2 (swaps S1 and S2)."""
    return Endomorphism(GEN_U_STAR, GEN_S1, label="flipflop")


def _phi(x: Element) -> Element:
    return GEN_U * GEN_S2 * x * GEN_S2_STAR * GEN_U_STAR + GEN_S2 * x * GEN_S2_STAR


def shift() -> Endomorphism:
    """The canonical shift x -> U S2 x S2* U* + S2 x S2*; sends U to U^2."""
    return Endomorphism(_phi(GEN_U), _phi(GEN_S2), label="shift")


def chi(odd: int) -> Endomorphism:
    """The endomorphism fixing S2 with U -> U^odd, for odd integers only."""
    if odd % 2 == 0:
        raise NotOdd(f"chi needs an odd integer, got {odd}")
    img_U = GEN_U**odd if odd >= 0 else GEN_U_STAR ** (-odd)
    return Endomorphism(img_U, GEN_S2, label=f"chi:{odd}")


def beta_monomial(w: DyadicCyclotomic, n: int) -> Endomorphism:
    """beta^f for the circle monomial f(z) = w z^n: U -> U, S2 -> w U^n S2."""
    if not isinstance(w, DyadicCyclotomic):
        w = DyadicCyclotomic.from_rational(w)
    if not w.is_unimodular():
        raise NotUnitary(f"beta coefficient {w} is not unimodular")
    u_pow = GEN_U**n if n >= 0 else GEN_U_STAR ** (-n)
    return Endomorphism(GEN_U, (u_pow * GEN_S2).scale(w), label=f"beta:{w},{n}")


def ad_unitary(u: Element) -> Endomorphism:
    """The inner automorphism x -> u x u*."""
    if not _is_unitary(u):
        raise NotUnitary("ad requires a unitary element")
    ustar = u.adjoint()
    return Endomorphism(u * GEN_U * ustar, u * GEN_S2 * ustar, label="ad")


def builtin(name: str, *params) -> Endomorphism:
    """Named morphisms: gauge(z), flipflop, shift, chi(odd), beta(w, n), adU."""
    if name == "gauge":
        return gauge(*params)
    if name == "flipflop":
        return flipflop()
    if name == "shift":
        return shift()
    if name == "chi":
        return chi(*params)
    if name == "beta":
        return beta_monomial(*params)
    if name == "adU":
        return ad_unitary(GEN_U)
    raise ValueError(f"unknown builtin morphism {name!r}")


# -- generalized Cuntz-Takesaki data -------------------------------------------


def u_of(e: Endomorphism) -> Element:
    """The unitary u = e(S1) S1* + e(S2) S2* with e(S_i) = u S_i."""
    return e(GEN_S1) * GEN_S1_STAR + e.img_S2 * GEN_S2_STAR


def W_of(e: Endomorphism) -> Element:
    """W = U* u* e(U) u; the endomorphism is a beta^f exactly when W = 1."""
    u = u_of(e)
    return GEN_U_STAR * u.adjoint() * e.img_U * u


def is_beta(e: Endomorphism) -> bool:
    return equals(W_of(e), ONE)


# -- the (V, W) extension calculus ----------------------------------------------


@dataclass(frozen=True)
class ExtensionData:
    """Unitaries certifying that lambda_V on the Cuntz subalgebra extends:
    W S2 = S2 and S2 V U W V* = U W U S2."""

    V: Element
    W: Element


def check_extension(data: ExtensionData) -> Endomorphism:
    """Validate extension data and build the extension (U -> V U W V*, S2 -> V S2)."""
    V, W = data.V, data.W
    if not _is_unitary(V):
        raise NotUnitary("V is not unitary")
    if not membership(V, "O2"):
        raise ExtensionConditionFailed("V is not in the O2 span")
    if not _is_unitary(W):
        raise NotUnitary("W is not unitary")
    if not equals(W * GEN_S2, GEN_S2):
        raise ExtensionConditionFailed("W S2 = S2 fails")
    lhs = GEN_S2 * V * GEN_U * W * V.adjoint()
    rhs = GEN_U * W * GEN_U * GEN_S2
    if not equals(lhs, rhs):
        raise ExtensionConditionFailed("S2 V U W V* = U W U S2 fails")
    return Endomorphism(V * GEN_U * W * V.adjoint(), V * GEN_S2, label="extension")


def compose_extension_data(d1: ExtensionData, d2: ExtensionData) -> ExtensionData:
    """Extension data of the composite, (lambda_V(V') V, W V* ext1(W') V)."""
    ext1 = check_extension(d1)
    check_extension(d2)
    V = ext1(d2.V) * d1.V
    W = d1.W * d1.V.adjoint() * ext1(d2.W) * d1.V
    return ExtensionData(V, W)


def flip_theta() -> Element:
    """The self-adjoint unitary flip theta = sum_{i,j} S_i S_j S_i* S_j*."""
    gens = (GEN_S1, GEN_S2)
    out = None
    for si in gens:
        for sj in gens:
            term = si * sj * si.adjoint() * sj.adjoint()
            out = term if out is None else out + term
    return out


# -- Bogoljubov classification -----------------------------------------------------


@dataclass(frozen=True)
class Gauge:
    z: object


@dataclass(frozen=True)
class FlipFlopGauge:
    z: object


@dataclass(frozen=True)
class NotExtensible:
    pass


@dataclass(frozen=True)
class BogoljubovMatrix:
    """2x2 unitary (a b; c d) acting on the span of S1, S2: the induced Cuntz
    automorphism sends S1 -> a S1 + c S2 and S2 -> b S1 + d S2.

    Entries may be exact scalars or floating complex numbers."""

    a: object
    b: object
    c: object
    d: object

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def is_exact(self) -> bool:
        return all(isinstance(v, (int, DyadicCyclotomic)) or getattr(v, "denominator", None) is not None
                   for v in self.entries())


_TOL = 1e-12


def _as_complex(v) -> complex:
    if isinstance(v, DyadicCyclotomic):
        return v.to_complex()
    return complex(v)


def _entry_zero(v, exact: bool) -> bool:
    if exact:
        if isinstance(v, DyadicCyclotomic):
            return v.is_zero()
        return v == 0
    return abs(_as_complex(v)) <= _TOL


def _entry_eq(v, w, exact: bool) -> bool:
    if exact:
        dv = v if isinstance(v, DyadicCyclotomic) else DyadicCyclotomic.from_rational(v)
        dw = w if isinstance(w, DyadicCyclotomic) else DyadicCyclotomic.from_rational(w)
        return dv == dw
    return abs(_as_complex(v) - _as_complex(w)) <= _TOL


def bogoljubov_classify(A: BogoljubovMatrix) -> Gauge | FlipFlopGauge | NotExtensible:
    """Which Bogoljubov automorphisms of the Cuntz subalgebra extend to Q2.

    Only the gauge automorphisms (diagonal with equal entries), the flip-flop
    composed with a gauge (antidiagonal with equal entries) and nothing else.
    """
    a, b, c, d = (_as_complex(v) for v in A.entries())
    mat = ((a, b), (c, d))
    for i in range(2):
        for j in range(2):
            dot = sum(mat[i][k] * mat[j][k].conjugate() for k in range(2))
            if abs(dot - (1 if i == j else 0)) > _TOL:
                raise NotUnitary("matrix is not unitary within 1e-12")
    exact = A.is_exact()
    if _entry_zero(A.b, exact) and _entry_zero(A.c, exact):
        if _entry_eq(A.a, A.d, exact):
            return Gauge(A.a)
        return NotExtensible()
    if _entry_zero(A.a, exact) and _entry_zero(A.d, exact):
        if _entry_eq(A.b, A.c, exact):
            return FlipFlopGauge(A.b)
        return NotExtensible()
    return NotExtensible()


# -- structure of S2 images --------------------------------------------------------


def decompose_S2_image(s: Element) -> LaurentCircleFunction:
    """Recover f with s = f(U) S2 from an isometry satisfying the S2 relations.

    The relations checked are s* s = 1, s U = U^2 s and s s* + U s s* U* = 1;
    f(U) is reconstructed as s S2* + U s S2* U* and returned as an exact
    T-valued Laurent polynomial.
    """
    from .algebra import _expect_cu

    if not equals(s.adjoint() * s, ONE):
        raise NotInS2("s* s = 1 fails")
    if not equals(s * GEN_U, GEN_U * GEN_U * s):
        raise NotInS2("s U = U^2 s fails")
    range_proj = s * s.adjoint()
    if not equals(range_proj + GEN_U * range_proj * GEN_U_STAR, ONE):
        raise NotInS2("s s* + U s s* U* = 1 fails")
    g = s * GEN_S2_STAR + GEN_U * s * GEN_S2_STAR * GEN_U_STAR
    f_elem = _expect_cu(g)
    if not equals(f_elem, g):
        raise NotInS2("reconstruction is not a function of U")
    coeffs = {m.c: coef for m, coef in f_elem.terms.items()}
    f = LaurentCircleFunction(coeffs)
    if not f.is_unimodular():
        raise NotUnitaryFunction("reconstructed function is not T-valued")
    if not equals(f_elem * GEN_S2, s):
        raise NotInS2("f(U) S2 does not reproduce s")
    return f
