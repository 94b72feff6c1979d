import cmath

import pytest

from q2algebra.algebra import (
    GEN_S2,
    GEN_U,
    Monomial,
    ONE,
    equals,
    membership,
    multiindex_label,
    s_mu,
)
from q2algebra.canonical import apply_basis
from q2algebra.dyadic import (
    Continuous,
    IndexOutOfRange,
    Obstructed,
    RootOfUnity,
    build_Sz,
    build_Uz,
    check_Uz_relations,
    lex_multiindex,
    membership_Uz,
    two_adic_continuity,
)
from q2algebra.morphisms import ad_unitary, compose
from q2algebra.scalars import cyclo, rational

U, S2 = GEN_U, GEN_S2


def test_build_Uz_base_cases():
    assert equals(build_Uz(0), ONE)
    uz1 = build_Uz(1)
    assert uz1.terms == {
        Monomial(0, 1, 1, 0): rational(1),
        Monomial(1, 1, 1, -1): rational(-1),
    }
    for k in range(-8, 9):
        assert apply_basis(uz1, k) == {k: rational(1 if k % 2 == 0 else -1)}


def test_build_Uz_window_diagonal_exact():
    for n in range(5):
        uz = build_Uz(n)
        for k in range(-64, 65):
            assert apply_basis(uz, k) == {k: cyclo(n, k)}


def test_Uz_is_projection_sum_in_lex_order():
    for n in range(1, 5):
        uz = build_Uz(n)
        total = None
        for j in range(1 << n):
            alpha = lex_multiindex(j, n)
            p = s_mu(alpha) * s_mu(alpha).adjoint()
            term = p.scale(cyclo(n, j))
            total = term if total is None else total + term
        assert equals(uz, total)


def test_build_Sz():
    assert equals(build_Sz(0), S2)
    sz1 = build_Sz(1)
    for k in range(-8, 9):
        assert apply_basis(sz1, k) == {2 * k: rational((-1) ** (k % 2))}
    for n in range(5):
        assert equals(S2.adjoint() * build_Sz(n), build_Uz(n))


def test_check_Uz_relations():
    for n in range(5):
        assert check_Uz_relations(n)


def test_Uz_is_unitary_with_dyadic_order():
    for n in range(4):
        uz = build_Uz(n)
        assert equals(uz * uz.adjoint(), ONE)
        assert equals(uz.adjoint() * uz, ONE)
        power = ONE
        for _ in range(1 << n):
            power = power * uz
        assert equals(power, ONE)
        if n:
            half = ONE
            for _ in range(1 << (n - 1)):
                half = half * uz
            assert not equals(half, ONE)


def test_ad_Uz_order():
    for n in range(4):
        endo = ad_unitary(build_Uz(n))
        power = endo
        for _ in range((1 << n) - 1):
            power = compose(endo, power)
        assert power.fixes_generators()


def test_membership_Uz():
    for order in (1, 2, 4, 8, 16):
        assert membership_Uz(RootOfUnity(order))
    for order in (3, 6, 12):
        assert not membership_Uz(RootOfUnity(order))
    assert membership_Uz(RootOfUnity(1, 0))
    assert not membership(build_Uz(2) * U, "D2")


def test_root_of_unity_reduction():
    z = RootOfUnity(8, 2)
    assert (z.order, z.exponent) == (4, 1)
    assert RootOfUnity(6, 3).order == 2
    assert RootOfUnity(5, 0).order == 1
    assert RootOfUnity(12, 5).is_dyadic is False
    assert RootOfUnity(16, 3).is_dyadic is True


def test_two_adic_continuity_on_roots():
    # z^k extends to Z_2 continuously iff z is a dyadic root; all orders <= 16
    for order in range(1, 17):
        z = cmath.exp(2j * cmath.pi / order)
        res = two_adic_continuity(lambda k, z=z: z**k, depth=5, tol=1e-6)
        if order & (order - 1) == 0:
            assert isinstance(res, Continuous), order
        else:
            assert isinstance(res, Obstructed), order
            j, k, m, gap = res.witness
            assert j % (1 << m) == k % (1 << m)
            assert abs(z**j - z**k) == pytest.approx(gap)


def test_two_adic_continuity_edges():
    assert isinstance(two_adic_continuity(lambda k: 1.0, 3), Continuous)
    res = two_adic_continuity(lambda k: cmath.exp(2j * cmath.pi * k / 3), 4)
    assert isinstance(res, Obstructed)
    assert res.oscillations[-1] == pytest.approx(abs(1 - cmath.exp(2j * cmath.pi / 3)))
    with pytest.raises(ValueError):
        two_adic_continuity(lambda k: 1.0, 1)


def test_lex_multiindex():
    assert lex_multiindex(0, 2) == (2, 2)
    assert lex_multiindex(1, 1) == (1,)
    assert lex_multiindex(3, 2) == (1, 1)
    for k in range(7):
        for j in range(1 << k):
            assert multiindex_label(lex_multiindex(j, k)) == j
    # the enumeration is genuinely lexicographic for 2 < 1 read right to left
    order = [lex_multiindex(j, 3) for j in range(8)]
    key = lambda alpha: tuple(0 if d == 2 else 1 for d in reversed(alpha))
    assert order == sorted(order, key=key)
    with pytest.raises(IndexOutOfRange):
        lex_multiindex(4, 2)
