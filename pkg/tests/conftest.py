import random
from fractions import Fraction

import pytest

from q2algebra.algebra import Element, Monomial
from q2algebra.canonical import apply_basis, window_matrix
from q2algebra.scalars import DyadicCyclotomic


def make_rng(seed=20240901):
    return random.Random(seed)


def rand_scalar(rng, max_level=3):
    level = rng.randint(0, max_level)
    n = 1 if level == 0 else 1 << (level - 1)
    coords = [Fraction(rng.randint(-3, 3), rng.choice([1, 2, 4])) for _ in range(n)]
    s = DyadicCyclotomic(level, coords)
    return s if not s.is_zero() else DyadicCyclotomic.from_rational(1)


def rand_unimodular(rng, max_level=3):
    from q2algebra.scalars import cyclo

    level = rng.randint(0, max_level)
    z = cyclo(level, rng.randrange(1 << level))
    if rng.random() < 0.2:
        # a non-root unimodular rational point, (3 + 4i)/5
        z = z * DyadicCyclotomic(2, (Fraction(3, 5), Fraction(4, 5)))
    return z


def rand_monomial(rng, max_depth=3, max_shift=4, max_a=None):
    a = rng.randint(0, max_depth if max_a is None else max_a)
    b = rng.randint(0, max_depth)
    return Monomial(rng.randrange(1 << a), a, b, rng.randint(-max_shift, max_shift))


def rand_element(rng, nterms=4, max_depth=3, max_shift=4, max_level=3, max_a=None):
    return Element(
        (rand_monomial(rng, max_depth, max_shift, max_a), rand_scalar(rng, max_level))
        for _ in range(rng.randint(1, nterms))
    )


def basis_action_agrees(x, y, lo=-256, hi=256):
    """Independent exact oracle: compare x e_i and y e_i across a range."""
    return all(apply_basis(x, i) == apply_basis(y, i) for i in range(lo, hi + 1))


def window_verdict(x, y, lo=-(1 << 10), hi=1 << 10, tol=1e-9):
    """Floating window-matrix comparison used as the acceptance oracle."""
    return window_matrix(x, lo, hi).max_abs_diff(window_matrix(y, lo, hi)) <= tol


@pytest.fixture
def rng():
    return make_rng()
