"""Ready-made configurations used by the tests, the benchmark and the CLI demos."""

from __future__ import annotations

from fractions import Fraction

from .enumeration import EnumConfig
from .groups import FreeAbelian, FreeGroup, Heisenberg3
from .height import make_height
from .weights import (
    ConstantLength,
    ExplicitWeight,
    NormLength,
    PowerLawWeight,
    nearest_neighbour_weight,
)


def z2_nn(m_max: int = 8, **kw) -> EnumConfig:
    g = FreeAbelian(2)
    phi = nearest_neighbour_weight(g)
    h = make_height({"coefficients": [1, 0]}, g, phi)
    return EnumConfig(g, phi, ConstantLength(), h, m_max, holder=(1, 1), **kw)


def heisenberg_nn(m_max: int = 6, **kw) -> EnumConfig:
    g = Heisenberg3()
    phi = nearest_neighbour_weight(g)
    h = make_height({"coefficients": [1, 0]}, g, phi)
    return EnumConfig(g, phi, ConstantLength(), h, m_max, holder=(1, 1), **kw)


def free_group_nn(m_max: int = 6, **kw) -> EnumConfig:
    g = FreeGroup(2)
    phi = nearest_neighbour_weight(g)
    h = make_height({"coefficients": [1, 0]}, g, phi)
    return EnumConfig(g, phi, ConstantLength(), h, m_max, holder=(1, 1), **kw)


def ex5_weight() -> PowerLawWeight:
    """phi(0, q) = 1/q^2 on the vertical axis and phi(+-1, 0) = 1."""
    g = FreeAbelian(2)
    return PowerLawWeight(g, (0, 1), 2, extra={(1, 0): 1, (-1, 0): 1})


def ex5(m_max: int = 6, eta=Fraction(1, 4), **kw) -> EnumConfig:
    g = FreeAbelian(2)
    phi = ex5_weight()
    h = make_height({"coefficients": [1, 0]}, g, phi, eta)
    return EnumConfig(g, phi, ConstantLength(), h, m_max, eta=eta, holder=(1, 1), **kw)


STANDARD = {
    "z2_nn": z2_nn,
    "heisenberg_nn": heisenberg_nn,
    "free_group_nn": free_group_nn,
    "ex5": ex5,
}


def z_nn(m_max: int = 12, value=Fraction(1, 2), **kw) -> EnumConfig:
    g = FreeAbelian(1)
    phi = ExplicitWeight(g, {(1,): value, (-1,): value})
    h = make_height({"coefficients": [1]}, g, phi)
    return EnumConfig(g, phi, ConstantLength(), h, m_max, holder=(1, 1), **kw)


def z_two_orbit(m_max: int = 8, **kw) -> EnumConfig:
    """phi(+-1) = 1/2, phi(+-2) = 1/4 with the height n written as (2k) + offset on the cosets of 2Z."""
    g = FreeAbelian(1)
    phi = ExplicitWeight(g, {(1,): Fraction(1, 2), (-1,): Fraction(1, 2), (2,): Fraction(1, 4), (-2,): Fraction(1, 4)})
    h = make_height({"kind": "coset_offset", "coefficients": [1], "moduli": [2], "offsets": [0, 1]}, g, phi)
    return EnumConfig(g, phi, ConstantLength(), h, m_max, holder=(1, 2), **kw)


def z_harmonic(m_max: int = 12, **kw) -> EnumConfig:
    """phi(n) = 1/|n| with l(n) = |n|: not summable, yet every length budget sees finitely many steps."""
    g = FreeAbelian(1)
    phi = PowerLawWeight(g, (1,), 1)
    h = make_height({"coefficients": [1]}, g)
    return EnumConfig(g, phi, NormLength(g), h, m_max, c=1, holder=(1, 1), **kw)


def z_inverse_square(m_max: int = 8, eta=None, **kw) -> EnumConfig:
    """phi(n) = 1/n^2 with l(n) = |n|."""
    g = FreeAbelian(1)
    phi = PowerLawWeight(g, (1,), 2)
    h = make_height({"coefficients": [1]}, g)
    return EnumConfig(g, phi, NormLength(g), h, m_max, eta=eta, c=1, holder=(1, 1), **kw)
