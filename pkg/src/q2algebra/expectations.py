"""Conditional expectations onto the gauge-invariant part, C*(U) and the
diagonal, the windowed l-infinity diagonal, the gauge-Fourier coefficient
maps, and the stabilizing S1-compression limit."""

from __future__ import annotations

from .algebra import (
    Element,
    GEN_S1,
    GEN_S1_STAR,
    _expect_cu,
    _expect_d2,
    _expect_gauge,
    equals,
    scalar,
)
from .canonical import apply_basis, fixed_points
from .scalars import DyadicCyclotomic, ZERO as SC_ZERO

__all__ = [
    "E_gauge",
    "E_CU",
    "E_D2",
    "E_diag_window",
    "F_map",
    "s1_limit",
    "NotGaugeInvariant",
    "NotStabilized",
]


class NotGaugeInvariant(ValueError):
    """Input has a term of nonzero gauge degree where invariance is required."""


class NotStabilized(RuntimeError):
    """The S1-compression iteration failed to reach a scalar within its bound.

    The stabilization lemma rules this out on valid input; seeing it means a bug.
    """


def E_gauge(x: Element) -> Element:
    """Gauge averaging: keeps exactly the terms with a = b."""
    return _expect_gauge(x)


def E_CU(x: Element) -> Element:
    """The unique expectation onto C*(U): (l,a,b,c) -> delta_{a,b} 2^-a U^(l+c)."""
    return _expect_cu(x)


def E_D2(x: Element) -> Element:
    """The diagonal expectation: keeps (l,a,b,c) iff a = b and c = -l."""
    return _expect_d2(x)


def E_diag_window(x: Element, lo: int, hi: int) -> dict[int, DyadicCyclotomic]:
    """Exact diagonal entries (e_i, x e_i) for i in [lo, hi].

    For a monomial these are the fixed points of its affine map: a full
    residue class when a = b and c = -l, at most one isolated index otherwise
    (the rank-one contributions that fall outside the exact algebra).
    """
    if lo > hi:
        raise ValueError("window requires lo <= hi")
    out: dict[int, DyadicCyclotomic] = {}
    for mono, coef in x.terms.items():
        for i in fixed_points(mono, lo, hi):
            acc = out.get(i, SC_ZERO) + coef
            if acc.is_zero():
                out.pop(i, None)
            else:
                out[i] = acc
    return out


def F_map(x: Element, i: int) -> Element:
    """Gauge-Fourier coefficient maps F_i.

    F_i(x) = E_gauge(x (S1*)^i) for i >= 0 and F_-i(x) = E_gauge(S1^i x); they
    satisfy F_i(x) = F_i(x) S1^i (S1*)^i and F_-i(x) = S1^i (S1*)^i F_-i(x).
    """
    if i >= 0:
        return E_gauge(x * GEN_S1_STAR**i)
    return E_gauge(GEN_S1 ** (-i) * x)


def s1_limit(x: Element) -> DyadicCyclotomic:
    """The scalar that the sequence (S1*)^m x S1^m stabilizes to.

    Defined for gauge-invariant x only; stabilization is guaranteed within
    depth + max|c| + 2 steps.
    """
    for mono in x.terms:
        if mono.a != mono.b:
            raise NotGaugeInvariant(f"term {tuple(mono)} has gauge degree {mono.degree()}")
    bound = x.depth + max((abs(m.c) for m in x.terms), default=0) + 2
    y = x
    for _ in range(bound + 1):
        y_next = GEN_S1_STAR * y * GEN_S1
        if equals(y_next, y):
            value = _scalar_value(y)
            if value is None:
                raise NotStabilized("iteration reached a non-scalar fixed point")
            return value
        y = y_next
    raise NotStabilized(f"no scalar fixed point within {bound + 1} compressions")


def _scalar_value(y: Element) -> DyadicCyclotomic | None:
    cand = apply_basis(y, 0).get(0, SC_ZERO)
    return cand if equals(y, scalar(cand)) else None
