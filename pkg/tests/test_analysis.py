import math
from fractions import Fraction as Fr
from pathlib import Path

import pytest

from weightedsaw.analysis import (
    config_constants,
    continuity_experiment,
    count_distinct_partitions,
    estimate_constants,
    fekete_bounds,
    surgery_soundness,
    surgery_trace,
    truncation_experiment,
    verify_inequalities,
)
from weightedsaw.analysis.partitions import bound_holds, distinct_partition_bound, distinct_partitions_dp
from weightedsaw.analysis.surgery import hw_decompose, hw_surgery_step, is_half_space, preimage_census
from weightedsaw.enumeration import enumerate_aggregate, iter_walks
from weightedsaw.errors import (
    ConfigMismatch,
    DeltaTooLarge,
    InsufficientData,
    NotHalfSpace,
    SurgeryCollision,
)
from weightedsaw.groups import FreeAbelian
from weightedsaw.height import WalkClass
from weightedsaw.standard import STANDARD, z2_nn, z_inverse_square, z_nn, z_two_orbit
from weightedsaw.walks import Walk, read_walk_file
from weightedsaw.weights import ConstantLength, ExplicitWeight, weight_of_walk

Z = FreeAbelian(1)
Z2 = FreeAbelian(2)
CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def z2_walk(*verts):
    return Walk(Z2, verts)


# estimates


def test_fekete_unweighted_line():
    cfg = z_nn(10, value=1)
    rep = fekete_bounds(enumerate_aggregate(cfg), cfg)
    assert rep.best_lower <= 1 <= rep.best_upper
    assert rep.best_lower > 0.99
    assert rep.best_upper <= 2 ** (1 / 10) + 1e-9


def test_estimate_line_half():
    rep = estimate_constants(enumerate_aggregate(z_nn(10)))
    assert rep.point_estimate == pytest.approx(0.5, abs=1e-12)


def test_estimate_ratios_z2():
    rep = estimate_constants(enumerate_aggregate(z2_nn(8)))
    assert rep.ratios[:4] == pytest.approx([3, 3, 100 / 36, 284 / 100])


def test_single_bin_is_insufficient():
    cfg = z2_nn(0)
    t = enumerate_aggregate(cfg)
    with pytest.raises(InsufficientData):
        estimate_constants(t)
    with pytest.raises(InsufficientData):
        fekete_bounds(t, cfg)


def test_fekete_rejects_foreign_config():
    with pytest.raises(ConfigMismatch):
        fekete_bounds(enumerate_aggregate(z2_nn(6)), z2_nn(7))


@pytest.mark.parametrize("name", sorted(STANDARD))
def test_bounds_are_ordered(name):
    cfg = STANDARD[name](8)
    rep = fekete_bounds(enumerate_aggregate(cfg), cfg)
    assert 0 < rep.best_lower <= rep.best_upper


@pytest.mark.parametrize("name", sorted(STANDARD))
def test_verify_standard_configs(name):
    cfg = STANDARD[name](8)
    rep = verify_inequalities(enumerate_aggregate(cfg), cfg)
    failed = [c.name for c in rep.checks if not c.passed]
    assert rep.overall, failed
    assert all(c.instances > 0 for c in rep.checks if c.name != "truncation_certificate")


def test_verify_detects_broken_table():
    cfg = z2_nn(8)
    t = enumerate_aggregate(cfg)
    n, w = t.rows[(6, "bridge", 0)]
    t.rows[(6, "bridge", 0)] = (n, w / 1000)
    rep = verify_inequalities(t, cfg)
    assert not rep.get("bridge_supermultiplicativity").passed


# decomposition and surgery


def test_decompose_example():
    h = z2_nn().height
    dec = hw_decompose(h, z2_walk((0, 0), (1, 0), (2, 0), (2, 1), (1, 1)))
    assert dec.spans == (2, 1) and dec.cut_indices == (0, 3, 4) and dec.k == 2
    assert dec.classes == (WalkClass.BRIDGE, WalkClass.REVERSED_BRIDGE)


def test_decompose_bridge_and_single_step():
    h = z2_nn().height
    b = z2_walk((0, 0), (1, 0), (1, 1), (2, 1))
    dec = hw_decompose(h, b)
    assert dec.k == 1 and dec.spans == (2,) and dec.cut_indices == (0, 3)
    one = hw_decompose(h, z2_walk((0, 0), (1, 0)))
    assert one.k == 1 and one.spans == (1,)


def test_decompose_rejects_non_half_space():
    h = z2_nn().height
    with pytest.raises(NotHalfSpace):
        hw_decompose(h, z2_walk((0, 0), (0, 1), (1, 1)))
    assert not is_half_space(h, z2_walk((0, 0), (0, 1)))


def test_surgery_example():
    cfg = z2_nn()
    sc = config_constants(cfg)
    w = z2_walk((0, 0), (1, 0), (2, 0), (2, 1), (1, 1))
    out = hw_surgery_step(cfg.height, w, sc)
    assert out.vertices == ((0, 0), (1, 0), (2, 0), (3, 0), (3, -1))
    tr = surgery_trace(cfg.height, w, sc, cfg.phi, cfg.length)
    assert tr.ok and tr.result_spans == (3,)


def test_surgery_needs_two_pieces():
    cfg = z2_nn()
    with pytest.raises(NotHalfSpace):
        hw_surgery_step(cfg.height, z2_walk((0, 0), (1, 0), (2, 0)), config_constants(cfg))


def test_surgery_two_orbit_weight_factor():
    cfg = z_two_orbit()
    sc = config_constants(cfg)
    for w in read_walk_file(Z, CONFIGS / "walks" / "z_two_orbit.walks"):
        tr = surgery_trace(cfg.height, w, sc, cfg.phi, cfg.length)
        assert tr.ok
        assert tr.checks["weight"]

    # k = 2 with a nontrivial connector: the image gains exactly one factor theta = 1/2
    w = Walk(Z, ((0,), (2,), (1,)))
    tr = surgery_trace(cfg.height, w, sc, cfg.phi, cfg.length)
    assert tr.result.vertices == ((0,), (2,), (3,), (4,))
    assert tr.predicted_weight_factor == Fr(1, 2)
    assert weight_of_walk(cfg.phi, tr.result) == Fr(1, 2) * weight_of_walk(cfg.phi, w) == Fr(1, 16)


def test_surgery_collision_is_reported():
    """A shortest half-space walk whose transitive-case image is not self-avoiding."""
    cfg = z2_nn()
    sc = config_constants(cfg)
    (w,) = read_walk_file(Z2, CONFIGS / "walks" / "z2_collision.walks")
    assert w.is_self_avoiding() and w.n == 12
    with pytest.raises(SurgeryCollision):
        hw_surgery_step(cfg.height, w, sc)


def test_surgery_soundness_small():
    rep = surgery_soundness(z2_nn(8), 6)
    assert rep.overall, [c.name for c in rep.checks if not c.passed]
    assert rep.get("surgery_self_avoiding").instances > 0


def test_preimage_census_small():
    cfg = z2_nn(6)
    walks = [r.walk for r in iter_walks(cfg) if is_half_space(cfg.height, r.walk)]
    rep = preimage_census(cfg.height, walks, config_constants(cfg), cfg.phi, cfg.length)
    assert rep.ok and rep.max_preimages <= rep.bound


# partitions


def test_partition_values():
    assert [count_distinct_partitions(n) for n in range(12)] == [1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10, 12]
    assert count_distinct_partitions(100) == 444793


def test_partition_dp_cross_check():
    dp = distinct_partitions_dp(200)
    assert [count_distinct_partitions(n) for n in range(201)] == dp


def test_partition_bound():
    assert distinct_partition_bound(10) == pytest.approx(math.pi * math.sqrt(10 / 3))
    assert 10 <= math.exp(distinct_partition_bound(10)) == pytest.approx(310.0, rel=1e-3)
    assert all(bound_holds(n) for n in range(0, 2000, 7))


# experiments


def test_continuity_line_pair():
    half = ExplicitWeight(Z, {(1,): Fr(1, 2), (-1,): Fr(1, 2)})
    three_q = ExplicitWeight(Z, {(1,): Fr(3, 4), (-1,): Fr(3, 4)})
    h = z_nn().height
    rep = continuity_experiment(half, three_q, ConstantLength(), ConstantLength(), h, 8)
    assert rep.overall, [c.name for c in rep.checks if not c.passed]
    assert rep.get("aggregate_bound").instances == 9


def test_continuity_rejects_far_pairs():
    half = ExplicitWeight(Z, {(1,): Fr(1, 2), (-1,): Fr(1, 2)})
    h = z_nn().height
    far = ExplicitWeight(Z, {(1,): Fr(1, 2), (-1,): Fr(1, 2), (2,): 1, (-2,): 1})
    with pytest.raises(DeltaTooLarge):
        continuity_experiment(half, far, ConstantLength(), ConstantLength(), h, 4)


def test_truncation_inverse_square():
    cfg = z_inverse_square(6)
    rep = truncation_experiment(cfg.phi, cfg.length, cfg.height, [Fr(1, 4), Fr(1, 16), Fr(1, 64)], 6)
    assert rep.overall
    assert rep.get("stable_below_rho").instances >= 1
