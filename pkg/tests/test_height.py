import random
from fractions import Fraction as Fr

import pytest

from weightedsaw.errors import NotAHeightFunction
from weightedsaw.groups import FreeAbelian, Heisenberg3
from weightedsaw.height import (
    WalkClass,
    classify_heights,
    classify_walk,
    heights_of,
    make_height,
    span,
    structural_constants,
)
from weightedsaw.standard import ex5_weight, z_two_orbit
from weightedsaw.walks import Walk
from weightedsaw.weights import ConstantLength, ExplicitWeight, nearest_neighbour_weight

Z = FreeAbelian(1)
Z2 = FreeAbelian(2)


def walk(group, *verts):
    return Walk(group, tuple(tuple(v) if isinstance(v, tuple) else (v,) for v in verts))


def test_abelian_heights():
    h = make_height({"coefficients": [1, 0]}, Z2)
    assert h.index == 1 and h.mode == "homomorphism"
    assert h((5, -3)) == 5
    H = Heisenberg3()
    hh = make_height({"coefficients": [1, 0]}, H)
    assert hh((2, 7, -4)) == 2


def test_two_orbit_height_is_identity_on_z():
    cfg = z_two_orbit()
    h = cfg.height
    assert h.index == 2
    assert all(h((n,)) == n for n in range(-20, 21))
    rng = random.Random(7)
    for _ in range(200):
        u, v, g = (rng.randint(-30, 30) for _ in range(3))
        g *= 2
        assert h((u + g,)) - h((v + g,)) == h((u,)) - h((v,))


def test_zero_homomorphism_rejected():
    with pytest.raises(Exception):
        make_height({"coefficients": [0, 0]}, Z2)


def test_height_flat_on_support_rejected():
    phi = ExplicitWeight(Z2, {(0, 1): 1, (0, -1): 1})
    with pytest.raises(NotAHeightFunction):
        make_height({"coefficients": [1, 0]}, Z2, phi)


def test_classify_examples():
    h1 = make_height({"coefficients": [1]}, Z)
    assert classify_walk(h1, walk(Z, 0, 1, 2)) is WalkClass.BRIDGE
    assert classify_walk(h1, walk(Z, 0, -1, -2)) is WalkClass.REVERSED_BRIDGE
    assert classify_walk(h1, walk(Z, 0)) is WalkClass.BRIDGE
    h = make_height({"coefficients": [1, 0]}, Z2)
    w = walk(Z2, (0, 0), (1, 0), (1, 1), (1, 2))
    assert heights_of(h, w) == [0, 1, 1, 1]
    assert classify_walk(h, w) is WalkClass.BRIDGE
    assert classify_walk(h, walk(Z2, (0, 0), (1, 0), (2, 0), (2, 1), (1, 1))) is WalkClass.HALF_SPACE
    assert classify_walk(h, walk(Z2, (0, 0), (-1, 0), (-1, 1), (0, 1), (1, 1))) is WalkClass.PLAIN


def test_classify_against_raw_inequalities():
    rng = random.Random(3)
    for _ in range(2000):
        hs = [0] + [rng.randint(-3, 3) for _ in range(rng.randint(0, 5))]
        cls = classify_heights(hs)
        bridge = all(hs[0] < x <= hs[-1] for x in hs[1:])
        rev = all(hs[-1] <= x < hs[0] for x in hs[1:])
        half = all(hs[0] < x for x in hs[1:])
        expect = (WalkClass.BRIDGE if bridge else WalkClass.REVERSED_BRIDGE if rev
                  else WalkClass.HALF_SPACE if half else WalkClass.PLAIN)
        assert cls is expect, hs


def test_span_examples():
    h = make_height({"coefficients": [1, 0]}, Z2)
    assert span(h, walk(Z2, (0, 0))) == 0
    assert span(h, walk(Z2, (0, 0), (1, 0), (1, 1), (0, 1))) == 1
    assert span(h, walk(Z2, (0, 0), (1, 0), (2, 0), (2, 1), (1, 1))) == 2


def test_constants_z_nearest_neighbour():
    phi = ExplicitWeight(Z, {(1,): Fr(1, 2), (-1,): Fr(1, 2)})
    h = make_height({"coefficients": [1]}, Z, phi)
    sc = structural_constants(h, phi, ConstantLength())
    assert (sc.d, sc.r, sc.theta_min, sc.psi, sc.a, sc.A, sc.J) == (1, 0, 1, Fr(1, 2), 1, 1, 1)
    assert sc.transitive


def test_constants_ex5():
    phi = ex5_weight()
    h = make_height({"coefficients": [1, 0]}, Z2, phi, Fr(1, 4))
    sc = structural_constants(h, phi, ConstantLength(), Fr(1, 4))
    assert sc.d == 1 and sc.psi == 1
    assert sc.extension[0] == (1, 0)
    # refining eta keeps the extension data
    finer = structural_constants(h, phi, ConstantLength(), Fr(1, 16))
    assert (finer.A, finer.a, finer.psi, finer.J, finer.extension) == (sc.A, sc.a, sc.psi, sc.J, sc.extension)


def test_constants_two_orbit():
    cfg = z_two_orbit()
    sc = structural_constants(cfg.height, cfg.phi, cfg.length)
    assert sc.r == 1 and not sc.transitive
    for key in ((0, 1), (1, 0)):
        c = sc.connectors[key]
        assert c.walk.n == 1 and c.theta == Fr(1, 2) and c.s == 1
    assert sc.theta_min == Fr(1, 2)
    assert sc.theta_max == 1  # the trivial walks nu_ii count, with weight 1
    for c in sc.connectors.values():
        hs = heights_of(cfg.height, c.walk)
        assert c.walk.is_self_avoiding() and c.theta > 0
        assert all(min(hs[0], hs[-1]) < x < max(hs[0], hs[-1]) for x in hs[1:-1])


def test_nearest_neighbour_heisenberg_constants():
    H = Heisenberg3()
    phi = nearest_neighbour_weight(H)
    h = make_height({"coefficients": [1, 0]}, H, phi)
    sc = structural_constants(h, phi, ConstantLength())
    assert sc.d == 1 and sc.r == 0 and sc.psi == 1
