import itertools
from fractions import Fraction as Fr

import pytest

from weightedsaw import enumeration
from weightedsaw.enumeration import (
    AggregateTable,
    EnumConfig,
    certify_truncation_exactness,
    enumerate_aggregate,
    iter_walks,
    neighbor_table,
    oracle_enumerate,
)
from weightedsaw.errors import BudgetOverflow, InfiniteStepSet, NotContinuousAtZero
from weightedsaw.groups import FreeAbelian
from weightedsaw.standard import (
    ex5,
    ex5_weight,
    free_group_nn,
    heisenberg_nn,
    z2_nn,
    z_harmonic,
    z_inverse_square,
    z_nn,
    z_two_orbit,
)
from weightedsaw.weights import ConstantLength, ExplicitWeight, NormLength, PowerLawWeight

Z = FreeAbelian(1)
Z2 = FreeAbelian(2)


def brute_force_z2(n_max):
    """Self-avoiding nearest-neighbour walks on Z^2 by brute force over all step words."""
    steps = [(1, 0), (-1, 0), (0, 1), (0, -1)]
    sigma, bridge = [], []
    for n in range(n_max + 1):
        s = b = 0
        for word in itertools.product(steps, repeat=n):
            pts = [(0, 0)]
            for dx, dy in word:
                pts.append((pts[-1][0] + dx, pts[-1][1] + dy))
            if len(set(pts)) != len(pts):
                continue
            s += 1
            xs = [p[0] for p in pts]
            if all(0 < x <= xs[-1] for x in xs[1:]):
                b += 1
        sigma.append(s)
        bridge.append(b)
    return sigma, bridge


def test_z2_counts_match_brute_force():
    sigma, bridge = brute_force_z2(6)
    t = enumerate_aggregate(z2_nn(6))
    assert [t.sigma_count(m) for m in range(7)] == sigma
    assert [t.bridge_count(m) for m in range(7)] == bridge
    assert sigma[1:6] == [4, 12, 36, 100, 284]
    assert bridge[1:3] == [1, 3]


def test_z_nearest_neighbour_closed_form():
    t = enumerate_aggregate(z_nn(12))
    for m in range(1, 13):
        assert t.sigma_count(m) == 2
        assert t.sigma_weight(m) == 2 * Fr(1, 2) ** m
        assert t.bridge_weight(m) == Fr(1, 2) ** m


@pytest.mark.parametrize("make,m", [(z2_nn, 7), (heisenberg_nn, 5), (free_group_nn, 5), (ex5, 5), (z_two_orbit, 7),
                                    (z_harmonic, 8)])
def test_oracle_agrees(make, m):
    cfg = make(m)
    fast, slow = enumerate_aggregate(cfg), oracle_enumerate(cfg)
    assert fast.rows == slow.rows
    assert fast.maxdh == slow.maxdh


@pytest.mark.parametrize("make,m", [(z2_nn, 7), (ex5, 5), (z_two_orbit, 7)])
def test_backends_agree(make, m, content):
    cfg = make(m)
    fast = enumerate_aggregate(cfg, backend=enumeration.BACKEND)
    slow = enumerate_aggregate(cfg, backend="python")
    assert content(fast) == content(slow)


def test_thread_counts_agree(content):
    cfg = z2_nn(9)
    ref = content(enumerate_aggregate(cfg, threads=1))
    for threads in (2, 8):
        assert content(enumerate_aggregate(cfg, threads=threads)) == ref


def test_iter_walks_matches_table():
    cfg = z_two_orbit(6)
    for b in range(len(cfg.base_vertices)):
        recs = list(iter_walks(cfg, b))
        t = enumerate_aggregate(cfg)
        for m in range(cfg.m_max + 1):
            inbin = [r for r in recs if m <= r.length < m + cfg.c]
            assert len(inbin) == t.sigma_count(m, b)
            assert sum((r.weight for r in inbin), Fr(0)) == t.sigma_weight(m, b)
        assert all(r.walk.is_self_avoiding() for r in recs)


def test_wide_bins_overlap():
    narrow = enumerate_aggregate(z2_nn(6))
    wide = enumerate_aggregate(z2_nn(5, c=2))
    for m in range(5):
        assert wide.sigma_count(m) == narrow.sigma_count(m) + narrow.sigma_count(m + 1)


def test_translation_invariance():
    cfg = z2_nn(6, base_vertices=((0, 0), (3, -2)))
    assert enumerate_aggregate(cfg).translation_invariant()


def test_node_cap():
    with pytest.raises(BudgetOverflow):
        enumerate_aggregate(z2_nn(10, node_cap=100))


def test_json_round_trip(content):
    t = enumerate_aggregate(ex5(4))
    back = AggregateTable.from_json(t.to_json())
    assert content(back) == content(t)
    assert back.rows == t.rows


def test_float_mode_is_a_view():
    exact = enumerate_aggregate(z2_nn(5))
    approx = enumerate_aggregate(z2_nn(5, value_mode="float"))
    for r_exact, r_float in zip(exact.to_rows(), approx.to_rows()):
        assert r_exact["count"] == r_float["count"]
        assert float(r_float["weight_float"]) == pytest.approx(float(Fr(r_exact["weight_num"], r_exact["weight_den"])))


def test_neighbor_table_examples():
    half = ExplicitWeight(Z, {(1,): Fr(1, 2), (-1,): Fr(1, 2)})
    assert set(neighbor_table(half, None, ConstantLength(), 5).steps) == {(1,), (-1,)}
    harmonic = PowerLawWeight(Z, (1,), 1)
    assert set(neighbor_table(harmonic, None, NormLength(Z), 3).steps) == {(n,) for n in (-3, -2, -1, 1, 2, 3)}
    expected = {(1, 0), (-1, 0)} | {(0, q) for q in (-3, -2, -1, 1, 2, 3)}
    assert set(neighbor_table(ex5_weight(), Fr(1, 9), ConstantLength()).steps) == expected


def test_neighbor_table_needs_a_bound():
    with pytest.raises(InfiniteStepSet):
        neighbor_table(PowerLawWeight(Z, (1,), 2), None, ConstantLength())


def test_truncation_certificates():
    cert = certify_truncation_exactness(PowerLawWeight(Z, (1,), 2), NormLength(Z), 9, 1)
    assert cert.rho == Fr(1, 100) and not cert.vacuous
    half = ExplicitWeight(Z, {(1,): Fr(1, 2), (-1,): Fr(1, 2)})
    vac = certify_truncation_exactness(half, ConstantLength(), 9, 1)
    assert vac.vacuous and vac.rho == Fr(1, 4)
    with pytest.raises(NotContinuousAtZero):
        certify_truncation_exactness(PowerLawWeight(Z, (1,), 2), ConstantLength(), 9, 1)


def test_exactness_mode_matches_untruncated(content):
    full = enumerate_aggregate(z_inverse_square(8))
    certified = enumerate_aggregate(z_inverse_square(8, exactness=True))
    assert full.same_bins(certified)


def test_config_hash_tracks_inputs():
    assert z2_nn(6).config_hash() == z2_nn(6).config_hash()
    assert z2_nn(6).config_hash() != z2_nn(7).config_hash()
    assert z2_nn(6).config_hash() != z2_nn(6, c=2).config_hash()


def test_pure_python_switch():
    import os
    import subprocess
    import sys

    env = dict(os.environ, WEIGHTEDSAW_PURE_PYTHON="1")
    code = "import weightedsaw; print(weightedsaw.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
