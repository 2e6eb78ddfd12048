"""Acceptance criteria 1-11, one test each; outcomes are listed at the end of the pytest run."""

import time
from fractions import Fraction as Fr
from pathlib import Path

import pytest

from weightedsaw import cli
from weightedsaw.analysis import (
    continuity_experiment,
    count_distinct_partitions,
    fekete_bounds,
    surgery_soundness,
    truncation_experiment,
)
from weightedsaw.analysis.partitions import bound_holds, distinct_partitions_dp
from weightedsaw.cache import ENV_VAR
from weightedsaw.enumeration import enumerate_aggregate, iter_walks, oracle_enumerate
from weightedsaw.groups import FreeAbelian
from weightedsaw.height import heights_of
from weightedsaw.standard import (
    STANDARD,
    ex5,
    free_group_nn,
    heisenberg_nn,
    z2_nn,
    z_harmonic,
    z_inverse_square,
    z_nn,
    z_two_orbit,
)
from weightedsaw.weights import ConstantLength, nearest_neighbour_weight

from conftest import table_content

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


@pytest.mark.criterion(1)
def test_oracle_equivalence(criterion):
    t0 = time.perf_counter()
    cases = [("z2_nn", z2_nn(8)), ("heisenberg", heisenberg_nn(6)), ("free_group", free_group_nn(6)), ("ex5", ex5(6))]
    bad = []
    for name, cfg in cases:
        fast, slow = enumerate_aggregate(cfg), oracle_enumerate(cfg)
        if fast.rows != slow.rows or fast.maxdh != slow.maxdh:
            bad.append(name)
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 120
    criterion(ok, f"4 configs, mismatches={bad or 'none'}, {elapsed:.1f}s (limit 120s)")
    assert ok


@pytest.mark.criterion(2)
def test_saw_counts(criterion):
    t = enumerate_aggregate(z2_nn(5))
    sigma = [t.sigma_count(m) for m in range(1, 6)]
    bridges = [t.bridge_count(m) for m in range(1, 3)]
    ok = sigma == [4, 12, 36, 100, 284] and bridges == [1, 3]
    criterion(ok, f"sigma={sigma}, bridges={bridges}")
    assert ok


@pytest.mark.criterion(3)
def test_bridge_supermultiplicativity(criterion):
    failures, pairs = [], 0
    for name, make in sorted(STANDARD.items()):
        cfg = make(10)
        t = enumerate_aggregate(cfg)
        b = [t.bridge_weight(m) for m in range(11)]
        for m in range(1, 10):
            for n in range(1, 11 - m):
                pairs += 1
                if b[m + n] < b[m] * b[n]:
                    failures.append((name, m, n))
        # b_{2n} >= b_n^2 is the exact form of b_n^(1/n) <= b_{2n}^(1/2n)
        for n in (1, 2, 4):
            pairs += 1
            if b[2 * n] < b[n] ** 2:
                failures.append((name, "doubling", n))
    ok = not failures
    criterion(ok, f"{pairs} exact comparisons on 4 configs, failures={failures[:3] or 'none'}")
    assert ok


@pytest.mark.criterion(4)
def test_harmonic_line_below_four(criterion):
    t0 = time.perf_counter()
    cfg = z_harmonic(12)
    t = enumerate_aggregate(cfg)
    worst = max(t.sigma_weight(m) / 4 ** m for m in range(1, 13))
    elapsed = time.perf_counter() - t0
    ok = all(t.sigma_weight(m) <= 4 ** m for m in range(13)) and elapsed < 300
    criterion(ok, f"max w(sigma_m)/4^m over 1<=m<=12 = {float(worst):.4g}, {elapsed:.1f}s")
    assert ok


@pytest.mark.criterion(5)
def test_height_along_walks(criterion):
    cases = [z2_nn(8), heisenberg_nn(7), free_group_nn(7), ex5(6), z_two_orbit(10), z_harmonic(10),
             z_inverse_square(8, eta=Fr(1, 81))]
    walks = violations = 0
    for cfg in cases:
        eps, C = (Fr(x) for x in cfg.holder)
        for b in range(len(cfg.base_vertices)):
            for rec in iter_walks(cfg, b):
                walks += 1
                hs = heights_of(cfg.height, rec.walk)
                # every vertex pair along the walk; the sub-walk between them is no longer than the walk
                spread = max(hs) - min(hs)
                if spread > 0 and spread ** eps.denominator > C ** eps.denominator * rec.length ** eps.numerator:
                    violations += 1
    ok = violations == 0 and walks > 0
    criterion(ok, f"{walks} walks in {len(cases)} configs, violations={violations}")
    assert ok


@pytest.mark.criterion(6)
def test_continuity_sandwich(criterion):
    Z2 = FreeAbelian(2)
    h = z2_nn().height
    one = nearest_neighbour_weight(Z2)
    pairs = [
        ("delta=0", one, one, ConstantLength(), ConstantLength()),
        ("delta=1/20", one, one, ConstantLength(), ConstantLength(Fr(21, 19))),
        ("delta=1/5", one, nearest_neighbour_weight(Z2, Fr(3, 2)), ConstantLength(), ConstantLength()),
    ]
    walks, failed, deltas = 0, [], []
    for name, phi, psi, l1, l2 in pairs:
        rep = continuity_experiment(phi, psi, l1, l2, h, 6, walk_m_max=10)
        walks += rep.get("weight_ratio_within_Delta").instances
        deltas.append(rep.notes[0].split(",")[0])
        failed += [f"{name}:{c.name}" for c in rep.checks if not c.passed]
    line = z_nn(12)
    psi = nearest_neighbour_weight(FreeAbelian(1), Fr(3, 4))
    rep = continuity_experiment(line.phi, psi, line.length, line.length, line.height, 12)
    agg = rep.get("aggregate_bound")
    failed += [f"line:{c.name}" for c in rep.checks if not c.passed]
    ok = not failed and walks >= 10 ** 5 and agg.instances == 13
    criterion(ok, f"{walks} walks ({'; '.join(deltas)}), aggregate bins 0..12 on the line pair, failures={failed or 'none'}")
    assert ok


@pytest.mark.criterion(7)
def test_truncation_exactness(criterion):
    cfg = z_inverse_square(8)
    etas = [Fr(1, 4), Fr(1, 16), Fr(1, 64), Fr(1, 81), Fr(1, 100), Fr(1, 256), Fr(1, 1000)]
    rep = truncation_experiment(cfg.phi, cfg.length, cfg.height, etas, 8, c=1)
    rho = rep.notes[0]
    stable = rep.get("stable_below_rho")
    mono = rep.get("monotone_in_eta")
    ok = rep.overall and rho == "rho = 1/81" and stable.instances == 5
    criterion(ok, f"{rho}; identical tables at eta in {{1/81,1/100,1/256,1/1000}} and untruncated; "
                  f"monotone over {mono.instances} bin comparisons")
    assert ok


@pytest.mark.criterion(8)
def test_surgery_soundness(criterion):
    details, ok = [], True
    for name, cfg in (("z2_nn", z2_nn(8)), ("two_orbit", z_two_orbit(8))):
        rep = surgery_soundness(cfg, 8)
        ok &= rep.overall
        n = rep.get("surgery_self_avoiding").instances
        failed = [c.name for c in rep.checks if not c.passed]
        details.append(f"{name}: {n} surgeries, {rep.notes[-1]}, failures={failed or 'none'}")
    criterion(ok, "; ".join(details))
    assert ok


@pytest.mark.criterion(9)
def test_partition_bound(criterion):
    t0 = time.perf_counter()
    holds = all(bound_holds(n) for n in range(10 ** 4 + 1))
    elapsed = time.perf_counter() - t0
    dp = distinct_partitions_dp(10)
    values = (count_distinct_partitions(5), count_distinct_partitions(10), dp[5], dp[10])
    ok = holds and values == (3, 10, 3, 10) and elapsed < 5
    criterion(ok, f"bound for n<=10^4: {holds} in {elapsed:.2f}s; Q(5), Q(10) = {values[0]}, {values[1]}")
    assert ok


@pytest.mark.criterion(10)
def test_bridge_below_connective(criterion):
    rows, ok = [], True
    for name, make in sorted(STANDARD.items()):
        cfg = make(10)
        rep = fekete_bounds(enumerate_aggregate(cfg), cfg)
        ok &= rep.best_lower <= rep.best_upper
        rows.append(f"{name} {rep.best_lower:.4f}<={rep.best_upper:.4f}")
    criterion(ok, "; ".join(rows))
    assert ok


@pytest.mark.criterion(11)
def test_determinism(criterion, tmp_path, monkeypatch):
    monkeypatch.delenv(ENV_VAR, raising=False)
    thread_ok = True
    for cfg in (z2_nn(10), ex5(7), z_two_orbit(10)):
        ref = table_content(enumerate_aggregate(cfg, threads=1))
        thread_ok &= all(table_content(enumerate_aggregate(cfg, threads=t)) == ref for t in (2, 8))
    cache_ok = True
    cache = tmp_path / "cache"
    for command, artifact in (("enumerate", "aggregates.json"), ("verify", "verify.json"), ("estimate", "estimate.json")):
        for run in ("cold", "warm"):
            cli.main([command, "--config", str(CONFIGS / "z2_nn.yaml"), "--cache", str(cache),
                      "--out", str(tmp_path / run)])
        cache_ok &= (tmp_path / "cold" / artifact).read_bytes() == (tmp_path / "warm" / artifact).read_bytes()
    ok = thread_ok and cache_ok
    criterion(ok, f"threads 1/2/8 identical: {thread_ok}; warm-cache artifacts byte-identical: {cache_ok}")
    assert ok
