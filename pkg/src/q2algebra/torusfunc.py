"""Functions on the unit circle: exact Laurent polynomials, dyadic-grid
samples, the doubling functional equations, and the obstruction detectors.

The central tool is the cascade: on the grid of 2^N-th roots of unity the
equation h(z^2) = h(z) Psi(z) with h(1) = 1 is solved exactly by the product
formula h(z) = 1 / prod_{k < n} Psi(z^(2^k)) for z of order 2^n.  Whether the
solved h extends continuously is probed through dyadic approach sequences:
z_m = p * exp(2*pi*i*j / 2^m) for a fixed odd j accumulates at p, and the
diameter of the stabilized limits over all such sequences is the oscillation
of h at p.  Oscillation >= 1 certifies that no continuous solution exists at
this resolution.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .scalars import DyadicCyclotomic, ONE as SC_ONE, ZERO as SC_ZERO, cyclo

__all__ = [
    "LaurentCircleFunction",
    "DyadicGridFunction",
    "NotASolution",
    "NotUnimodular",
    "NotNormalized",
    "Undersampled",
    "solve_square_equation",
    "check_power_equation",
    "winding_number",
    "cascade_solve",
    "OscillationReport",
    "oscillation_report",
    "gauge_equiv_obstruction",
    "flipflop_commute_obstruction",
    "step_preset",
    "bump_preset",
    "char_preset",
    "preset",
    "parse_angle",
]


class NotASolution(ValueError):
    """The function violates the functional equation it was tested against."""


class NotUnimodular(ValueError):
    """A T-valued function was required."""


class NotNormalized(ValueError):
    """The cascade needs Psi(1) = 1."""


class Undersampled(ValueError):
    """Grid too coarse for a stable winding number."""


class LaurentCircleFunction:
    """Exact Laurent polynomial on the circle, exponent -> coefficient."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict):
        data = {}
        for k, c in coeffs.items():
            if not isinstance(c, DyadicCyclotomic):
                c = DyadicCyclotomic.from_rational(c)
            if not c.is_zero():
                data[int(k)] = c
        object.__setattr__(self, "coeffs", data)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentCircleFunction is immutable")

    @classmethod
    def character(cls, n: int, w=SC_ONE) -> "LaurentCircleFunction":
        return cls({n: w})

    def __eq__(self, other):
        if not isinstance(other, LaurentCircleFunction):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items(), key=lambda kv: kv[0])))

    def __mul__(self, other):
        if not isinstance(other, LaurentCircleFunction):
            return NotImplemented
        out: dict[int, DyadicCyclotomic] = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                acc = out.get(k, SC_ZERO) + c1 * c2
                if acc.is_zero():
                    out.pop(k, None)
                else:
                    out[k] = acc
        return LaurentCircleFunction(out)

    def __pow__(self, n: int):
        out = LaurentCircleFunction({0: SC_ONE})
        for _ in range(n):
            out = out * self
        return out

    def conj(self) -> "LaurentCircleFunction":
        return LaurentCircleFunction({-k: c.conj() for k, c in self.coeffs.items()})

    def compose_power(self, n: int) -> "LaurentCircleFunction":
        """f(z^n)."""
        return LaurentCircleFunction({n * k: c for k, c in self.coeffs.items()})

    def is_one(self) -> bool:
        return self.coeffs == {0: SC_ONE}

    def is_unimodular(self) -> bool:
        """Exact T-valued test: f * conj(f) = 1 as Laurent polynomials."""
        return (self * self.conj()).is_one()

    def single_term(self) -> tuple[DyadicCyclotomic, int]:
        """The (w, n) with f = w z^n; a T-valued Laurent polynomial always has
        exactly one nonzero coefficient."""
        if len(self.coeffs) != 1:
            raise NotUnimodular("function is not a single circle monomial")
        ((n, w),) = self.coeffs.items()
        return w, n

    def eval_root(self, level: int, exponent: int) -> DyadicCyclotomic:
        """Exact value at zeta_{2^level}^exponent."""
        out = SC_ZERO
        for k, c in self.coeffs.items():
            out = out + c * cyclo(level, exponent * k)
        return out

    def sample(self, level: int) -> "DyadicGridFunction":
        size = 1 << level
        angles = 2.0 * math.pi * np.arange(size) / size
        values = np.zeros(size, dtype=np.complex128)
        for k, c in self.coeffs.items():
            values += c.to_complex() * np.exp(1j * k * angles)
        return DyadicGridFunction(level, values)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            mono = "1" if k == 0 else ("z" if k == 1 else f"z^{k}")
            parts.append(f"({c}) {mono}" if k != 0 else f"({c})")
        return " + ".join(parts)


@dataclass(frozen=True)
class DyadicGridFunction:
    """Samples value[j] ~ f(exp(2*pi*i*j / 2^level)) on the dyadic grid."""

    level: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.complex128)
        if values.shape != (1 << self.level,):
            raise ValueError(f"level {self.level} grid needs {1 << self.level} samples")
        object.__setattr__(self, "values", values)

    @property
    def size(self) -> int:
        return 1 << self.level

    def max_modulus_defect(self) -> float:
        return float(np.abs(np.abs(self.values) - 1.0).max())

    def require_unimodular(self, tol: float = 1e-9):
        defect = self.max_modulus_defect()
        if defect > tol:
            raise NotUnimodular(f"samples leave the circle by {defect:.3g}")

    def conj_reflected(self) -> "DyadicGridFunction":
        """Samples of z -> conj(f(conj z)): index j -> conj(value[-j])."""
        idx = (-np.arange(self.size)) % self.size
        return DyadicGridFunction(self.level, np.conj(self.values[idx]))

    def to_json(self) -> str:
        return json.dumps(
            {"level": self.level, "values": [[v.real, v.imag] for v in self.values]}
        )

    @classmethod
    def from_json(cls, text: str) -> "DyadicGridFunction":
        data = json.loads(text)
        values = np.array([complex(re, im) for re, im in data["values"]])
        return cls(int(data["level"]), values)


# -- appendix functional equations ------------------------------------------------


def solve_square_equation(f: LaurentCircleFunction) -> int:
    """Solve f(z^2) = f(z)^2 for a T-valued Laurent polynomial: f must be z^n.

    T-valued forces f = w z^n; the equation then reads w z^2n = w^2 z^2n and
    pins w = 1.
    """
    if not f.is_unimodular():
        raise NotUnimodular("f is not T-valued")
    if f.compose_power(2) != f * f:
        raise NotASolution("f(z^2) != f(z)^2")
    w, n = f.single_term()
    assert w.is_one()
    return n


def check_power_equation(f: LaurentCircleFunction, n_max: int) -> int:
    """Verify f(z^n) = f(z)^n as polynomials for 2 <= n <= n_max; return the
    exponent k with f = z^k."""
    if not f.is_unimodular():
        raise NotUnimodular("f is not T-valued")
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    for n in range(2, n_max + 1):
        if f.compose_power(n) != f**n:
            raise NotASolution(f"f(z^n) != f(z)^n at n = {n}")
    w, k = f.single_term()
    assert w.is_one()
    return k


def winding_number(f: DyadicGridFunction) -> int:
    """Total phase increment around the grid divided by 2 pi.

    Requires level >= 3 and every single-step phase jump below pi - 0.1, else
    the sampling cannot separate the winding from aliasing.
    """
    if f.level < 3:
        raise Undersampled("winding number needs grid level >= 3")
    f.require_unimodular()
    ratios = np.roll(f.values, -1) / f.values
    steps = np.angle(ratios)
    if np.abs(steps).max() >= math.pi - 0.1:
        raise Undersampled("phase step >= pi - 0.1 between adjacent samples")
    total = steps.sum() / (2.0 * math.pi)
    return int(round(total))


# -- the cascade ---------------------------------------------------------------------


def cascade_solve(psi: DyadicGridFunction) -> DyadicGridFunction:
    """Solve h(z^2) = h(z) Psi(z), h(1) = 1, exactly on the dyadic grid.

    Index doubling realizes z -> z^2; walking indices by decreasing 2-adic
    valuation gives h[j] = h[2j] / Psi[j], which reproduces the product
    formula h(z) = 1 / prod_k Psi(z^(2^k)).
    """
    psi.require_unimodular()
    values = psi.values
    if abs(values[0] - 1.0) > 1e-9:
        raise NotNormalized(f"Psi(1) = {values[0]:.6g} != 1")
    size = psi.size
    h = np.ones(size, dtype=np.complex128)
    for v in range(psi.level - 1, -1, -1):
        idx = np.arange(1 << v, size, 1 << (v + 1))  # indices of valuation exactly v
        h[idx] = h[(2 * idx) % size] / values[idx]
    return DyadicGridFunction(psi.level, h)


# -- oscillation of a grid function at its grid points ------------------------------


@dataclass(frozen=True)
class OscillationReport:
    """Diameter of the stabilized dyadic-approach limits of h at each grid point.

    For each odd |j| <= max_odd, the approach sequence h(p e^(2 pi i j / 2^m))
    contributes its deepest sample when its last three samples agree within
    stab_tol; osc[p] is the maximal pairwise distance between contributions.
    A drifting sequence (h continuous but not constant nearby) contributes
    nothing, so characters report oscillation 0.
    """

    level: int
    osc: np.ndarray = field(repr=False)
    max_odd: int
    stab_tol: float

    @property
    def max_oscillation(self) -> float:
        return float(self.osc.max())

    @property
    def at_one(self) -> float:
        """Oscillation at the grid point z = 1."""
        return float(self.osc[0])

    @property
    def obstructed(self) -> bool:
        return self.max_oscillation >= 1.0

    def to_json(self) -> str:
        return json.dumps(
            {
                "level": self.level,
                "max_odd": self.max_odd,
                "stab_tol": self.stab_tol,
                "max_oscillation": self.max_oscillation,
                "oscillation_at_one": self.at_one,
                "obstructed": self.obstructed,
            }
        )


def oscillation_report(
    h: DyadicGridFunction, max_odd: int | None = None, stab_tol: float = 1e-7
) -> OscillationReport:
    if h.level < 5:
        raise ValueError("oscillation needs grid level >= 5")
    if max_odd is None:
        max_odd = min(63, (1 << (h.level - 3)) - 1)
    if max_odd >= (1 << (h.level - 2)):
        raise ValueError("max_odd too large for the grid level")
    size = h.size
    values = h.values
    seqs = [j * sign for j in range(1, max_odd + 1, 2) for sign in (1, -1)]
    vals = np.empty((len(seqs), size), dtype=np.complex128)
    stable = np.empty((len(seqs), size), dtype=bool)
    for row, j in enumerate(seqs):
        v0 = np.roll(values, -j)        # h at p * zeta^j        (deepest, m = N)
        v1 = np.roll(values, -2 * j)    # h at p * zeta^(2 j)    (m = N - 1)
        v2 = np.roll(values, -4 * j)    # h at p * zeta^(4 j)    (m = N - 2)
        stable[row] = (np.abs(v0 - v1) <= stab_tol) & (np.abs(v1 - v2) <= stab_tol)
        vals[row] = v0
    osc = np.zeros(size)
    for row in range(len(seqs) - 1):
        diff = np.abs(vals[row + 1:] - vals[row][None, :])
        diff *= stable[row + 1:] & stable[row][None, :]
        np.maximum(osc, diff.max(axis=0), out=osc)
    return OscillationReport(level=h.level, osc=osc, max_odd=max_odd, stab_tol=stab_tol)


def gauge_equiv_obstruction(f: DyadicGridFunction, **kwargs) -> OscillationReport:
    """Obstruction to beta^f being equivalent to a gauge automorphism.

    Equivalence needs a continuous solution of conj(h(z)) h(z^2) = f(z) conj(f(1));
    the cascade solves it on the grid and the report measures how far the
    solution is from having limits along dyadic approaches.
    """
    f.require_unimodular()
    psi = DyadicGridFunction(f.level, f.values * np.conj(f.values[0]))
    return oscillation_report(cascade_solve(psi), **kwargs)


def flipflop_commute_obstruction(f: DyadicGridFunction, **kwargs) -> OscillationReport:
    """Obstruction to beta^f commuting with the flip-flop modulo inners.

    Commutation needs a continuous h with h(z) conj(h(z^2)) = f(conj z) conj(f(z)),
    i.e. h(z^2) = h(z) Psi(z) with Psi(z) = f(z) conj(f(conj z)).
    """
    f.require_unimodular()
    psi = DyadicGridFunction(f.level, f.values * f.conj_reflected().values)
    return oscillation_report(cascade_solve(psi), **kwargs)


# -- presets --------------------------------------------------------------------------


def step_preset(level: int, eps: float = math.pi / 4) -> DyadicGridFunction:
    """The two-arc step function: 1 on [0, pi], -1 on [pi + eps, 2 pi - eps],
    with T-valued interpolation through +i on the closing arcs.

    Grid points on an arc endpoint take the closed-arc value, matching the
    closed intervals in the definition; 0 < eps <= pi/4.
    """
    if not 0 < eps <= math.pi / 4:
        raise ValueError("eps must be in (0, pi/4]")
    size = 1 << level
    theta = 2.0 * math.pi * np.arange(size) / size
    values = np.ones(size, dtype=np.complex128)
    minus = (theta >= math.pi + eps) & (theta <= 2.0 * math.pi - eps)
    values[minus] = -1.0
    rise = (theta > math.pi) & (theta < math.pi + eps)
    values[rise] = np.exp(1j * math.pi * (theta[rise] - math.pi) / eps)
    fall = theta > 2.0 * math.pi - eps
    values[fall] = np.exp(1j * math.pi * (2.0 * math.pi - theta[fall]) / eps)
    return DyadicGridFunction(level, values)


def bump_preset(level: int, half_width: float = math.pi / 16) -> DyadicGridFunction:
    """A bump equal to i at exp(9 pi i / 8) and 1 outside a small arc.

    The phase interpolates linearly (a tent through the arc from 1 up to i and
    back); the default arc [9pi/8 - pi/16, 9pi/8 + pi/16] keeps all the dyadic
    points 5pi/4, pi, 3pi/2 strictly outside.
    """
    if not 0 < half_width <= math.pi / 8:
        raise ValueError("half_width must be in (0, pi/8]")
    size = 1 << level
    theta = 2.0 * math.pi * np.arange(size) / size
    center = 9.0 * math.pi / 8.0
    tent = np.maximum(0.0, 1.0 - np.abs(theta - center) / half_width)
    return DyadicGridFunction(level, np.exp(1j * (math.pi / 2.0) * tent))


def char_preset(level: int, n: int, w=SC_ONE) -> DyadicGridFunction:
    return LaurentCircleFunction.character(n, w).sample(level)


def preset(name: str, level: int) -> DyadicGridFunction:
    """Named presets: "step:<eps>", "bump:i@9pi/8", "char:<n>"."""
    head, _, arg = name.partition(":")
    if head == "step":
        return step_preset(level, parse_angle(arg) if arg else math.pi / 4)
    if head == "bump":
        if arg not in ("", "i@9pi/8"):
            raise ValueError(f"unknown bump preset {name!r}")
        return bump_preset(level)
    if head == "char":
        return char_preset(level, int(arg) if arg else 0)
    raise ValueError(f"unknown preset {name!r}")


def parse_angle(text: str) -> float:
    """Angles like "pi/4", "3pi/8", or a plain float."""
    text = text.strip()
    if "pi" in text:
        head, _, tail = text.partition("pi")
        num = Fraction(head) if head else Fraction(1)
        den = Fraction(tail.lstrip("/")) if tail else Fraction(1)
        return float(num / den) * math.pi
    return float(text)
