import math

import numpy as np
import pytest

from q2algebra.scalars import IMAG, ONE as SC_ONE, cyclo, rational
from q2algebra.torusfunc import (
    DyadicGridFunction,
    LaurentCircleFunction,
    NotASolution,
    NotNormalized,
    NotUnimodular,
    Undersampled,
    bump_preset,
    cascade_solve,
    char_preset,
    check_power_equation,
    flipflop_commute_obstruction,
    gauge_equiv_obstruction,
    preset,
    solve_square_equation,
    step_preset,
    winding_number,
)



def _char(n, w=SC_ONE):
    return LaurentCircleFunction({n: w})


def test_solve_square_equation():
    for n in range(-8, 9):
        assert solve_square_equation(_char(n)) == n
    with pytest.raises(NotASolution):
        solve_square_equation(_char(1, rational(-1)))  # f = -z
    with pytest.raises(NotASolution):
        solve_square_equation(_char(1, cyclo(3, 1)))  # f = w z, w != 1
    with pytest.raises(NotUnimodular):
        solve_square_equation(LaurentCircleFunction({0: 1, 1: 1}))
    with pytest.raises(NotUnimodular):
        solve_square_equation(_char(2, rational(1, 2)))


def test_check_power_equation():
    assert check_power_equation(_char(-2), 5) == -2
    assert check_power_equation(_char(0), 4) == 0
    with pytest.raises(NotASolution):
        check_power_equation(_char(1, IMAG), 3)  # fails already at n = 2


def test_winding_number():
    assert winding_number(char_preset(5, 4)) == 4
    assert winding_number(char_preset(4, 0)) == 0
    assert winding_number(char_preset(6, -3)) == -3
    with pytest.raises(Undersampled):
        winding_number(char_preset(3, 4))  # phase step is exactly pi
    with pytest.raises(Undersampled):
        winding_number(char_preset(2, 1))


def test_winding_number_additive(rng):
    for _ in range(10):
        n1, n2 = rng.randint(-4, 4), rng.randint(-4, 4)
        f = (_char(n1) * _char(n2)).sample(8)
        assert winding_number(f) == n1 + n2
        assert winding_number(char_preset(8, n1)) + winding_number(char_preset(8, n2)) == n1 + n2


def test_solve_square_agrees_with_winding(rng):
    for n in range(-6, 7):
        f = _char(n)
        assert solve_square_equation(f) == winding_number(f.sample(8))


def test_cascade_trivial_and_character():
    level = 8
    size = 1 << level
    ones = DyadicGridFunction(level, np.ones(size, dtype=complex))
    h = cascade_solve(ones)
    assert np.allclose(h.values, 1.0)

    # Psi(z) = z: the cascade reproduces the character h(z) = z
    psi = char_preset(level, 1)
    h = cascade_solve(psi)
    expected = np.exp(2j * math.pi * np.arange(size) / size)
    assert np.abs(h.values - expected).max() < 1e-9
    # closed form at a primitive root: h(zeta_{2^n}) = 1 / prod zeta^(2^k)
    n = 5
    zeta = np.exp(2j * math.pi / (1 << n))
    prod = np.prod([zeta ** (1 << k) for k in range(n)])
    assert abs(h.values[1 << (level - n)] - 1 / prod) < 1e-12
    assert abs(1 / prod - zeta ** (-((1 << n) - 1))) < 1e-12


def test_cascade_functional_equation_residual(rng):
    for f in (step_preset(10), bump_preset(10), char_preset(10, 3)):
        psi = DyadicGridFunction(10, f.values * np.conj(f.values[0]))
        h = cascade_solve(psi)
        size = 1 << 10
        idx = np.arange(size)
        residual = np.abs(h.values[(2 * idx) % size] - h.values * psi.values).max()
        assert residual < 1e-9
        assert h.max_modulus_defect() < 1e-12
        assert h.values[0] == 1.0


def test_cascade_requires_normalization():
    level = 6
    values = np.exp(1j * 0.3) * np.ones(1 << level, dtype=complex)
    with pytest.raises(NotNormalized):
        cascade_solve(DyadicGridFunction(level, values))
    with pytest.raises(NotUnimodular):
        cascade_solve(DyadicGridFunction(level, 2.0 * np.ones(1 << level, dtype=complex)))


def test_step_cascade_hits_paper_values():
    level = 12
    step = step_preset(level)
    h = cascade_solve(step)  # Psi = f since f(1) = 1
    for n in range(0, 12):
        assert h.values[1 << (level - 1 - n)] == 1.0  # h(e^(i pi / 2^n)) = 1
    for n in range(0, 10):
        idx = 5 * (1 << (level - 3 - n))
        assert abs(h.values[idx] - (-1.0)) < 1e-12  # h(e^(5 i pi / 2^(n+2))) = -1


def test_step_oscillation_is_two():
    rep = gauge_equiv_obstruction(step_preset(12))
    assert abs(rep.at_one - 2.0) < 1e-6
    assert rep.obstructed
    assert rep.max_oscillation <= 2.0 + 1e-12


def test_bump_flipflop_oscillation_is_two():
    rep = flipflop_commute_obstruction(bump_preset(12))
    assert abs(rep.at_one - 2.0) < 1e-6
    assert rep.obstructed


def test_bump_family_values():
    # the solved h is exactly -i along e^(9 pi i / 2^(n+3)) and +i along the
    # conjugate family e^(7 pi i / 2^(n+3)); their gap realizes oscillation 2
    level = 12
    bump = bump_preset(level)
    psi = DyadicGridFunction(level, bump.values * bump.conj_reflected().values)
    h = cascade_solve(psi)
    for n in range(0, 6):
        assert abs(h.values[9 * (1 << (level - 4 - n))] - (-1j)) < 1e-12
        assert abs(h.values[7 * (1 << (level - 4 - n))] - 1j) < 1e-12
        assert h.values[1 << (level - 1 - n)] == 1.0


def test_characters_have_no_obstruction():
    for level in range(5, 11):
        for n in (-2, 1, 3):
            rep = gauge_equiv_obstruction(char_preset(level, n))
            assert rep.max_oscillation < 1e-6
            rep = flipflop_commute_obstruction(char_preset(level, n))
            assert rep.max_oscillation < 1e-6
    rep = gauge_equiv_obstruction(char_preset(8, 0, cyclo(3, 1)))
    assert rep.max_oscillation < 1e-6


def test_constant_function_oscillation_zero():
    rep = flipflop_commute_obstruction(char_preset(8, 0))
    assert rep.max_oscillation == 0.0
    assert not rep.obstructed


def test_presets_by_name():
    assert preset("step:pi/4", 8).values.shape == (256,)
    assert preset("bump:i@9pi/8", 8).values.shape == (256,)
    assert np.allclose(preset("char:3", 6).values, char_preset(6, 3).values)
    with pytest.raises(ValueError):
        preset("wiggle", 8)


def test_grid_json_round_trip():
    f = bump_preset(6)
    g = DyadicGridFunction.from_json(f.to_json())
    assert g.level == 6
    assert np.allclose(g.values, f.values)


def test_laurent_unimodular_check():
    assert _char(5, cyclo(4, 3)).is_unimodular()
    assert not LaurentCircleFunction({0: 1, 1: 1}).is_unimodular()
    mixed = LaurentCircleFunction({0: rational(3, 5), 1: 0}) * _char(0, rational(5, 3))
    assert mixed.is_unimodular()
