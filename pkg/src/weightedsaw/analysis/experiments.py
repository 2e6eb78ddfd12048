"""Experiment suites: weight continuity, truncation, and surgery soundness."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence

from ..enumeration import (
    CLASSES,
    EnumConfig,
    certify_truncation_exactness,
    enumerate_aggregate,
    iter_walks,
)
from ..errors import DeltaTooLarge, SurgeryCollision
from ..height import HeightStructure, WalkClass
from ..weights import (
    LengthFunction,
    WeightFunction,
    as_fraction,
    length_of_walk,
    pair_distance,
    sup_distance,
    weight_of_walk,
)
from .estimates import PropertyReport, config_constants
from .surgery import hw_decompose, surgery_trace


def _rational_power_le(lhs: Fraction, base: Fraction, exponent: Fraction, factor: Fraction) -> bool:
    """Exact test of lhs <= base**exponent * factor for base >= 1 and rational exponent >= 0."""
    p, q = exponent.numerator, exponent.denominator
    if lhs <= 0:
        return True
    if factor <= 0:
        return False
    return lhs ** q <= base ** p * factor ** q


def continuity_experiment(phi: WeightFunction, psi: WeightFunction, l1: LengthFunction, l2: LengthFunction,
                          h: HeightStructure, m_max: int, walk_m_max: Optional[int] = None,
                          threads: int = 1) -> PropertyReport:
    """Compare two nearby (weight, length) pairs walk by walk and bin by bin.

    ``walk_m_max`` bounds the per-walk sweep (default ``m_max``); the
    aggregate comparison runs for every bin up to ``m_max``.
    """
    group = h.group
    delta = pair_distance((phi, l1), (psi, l2))
    if delta >= 1:
        raise DeltaTooLarge(f"pair distance {delta} is not below 1")
    Delta = (1 + delta) / (1 - delta)
    rep = PropertyReport()
    rep.notes.append(f"delta = {delta}, Delta = {Delta}")

    d_sup = sup_distance(phi, psi)
    phi_min = min(phi.support().values())
    up, down = 1 + d_sup / phi_min, max(Fraction(0), 1 - d_sup / phi_min)

    walk_m = m_max if walk_m_max is None else walk_m_max
    base_cfg = EnumConfig(group, phi, l1, h, walk_m)
    sandwich = rep.add("sup_distance_sandwich", "(1 - d/phi_min)^n <= w_psi(pi)/w_phi(pi) <= (1 + d/phi_min)^n")
    ratio = rep.add("weight_ratio_within_Delta", "Delta^-n <= w_psi(pi)/w_phi(pi) <= Delta^n")
    lengths = rep.add("length_ratio_within_Delta", "1/Delta <= l2(pi)/l1(pi) <= Delta for walks with a step")
    for b in range(len(base_cfg.base_vertices)):
        for rec in iter_walks(base_cfg, b):
            walk, n = rec.walk, rec.walk.n
            wpsi = weight_of_walk(psi, walk)
            r = wpsi / rec.weight
            sandwich.record(down ** n <= r <= up ** n, float(min(r - down ** n, up ** n - r)), walk)
            ratio.record(Delta ** -n <= r <= Delta ** n, float(min(r - Delta ** -n, Delta ** n - r)), walk)
            if n:
                lr = length_of_walk(l2, walk) / rec.length
                lengths.record(1 / Delta <= lr <= Delta, float(min(lr - 1 / Delta, Delta - lr)), walk)

    psi_cfg = EnumConfig(group, psi, l2, h, m_max)
    A = psi_cfg.A
    l1_min = min(l1.value(g) for g in phi.support())
    R_top = (m_max + A) * Delta
    phi_cfg = EnumConfig(group, phi, l1, h, max(0, math.ceil(R_top) - 1), c=1)
    t_psi = enumerate_aggregate(psi_cfg, threads=threads)
    t_phi = enumerate_aggregate(phi_cfg, threads=threads)
    agg = rep.add("aggregate_bound", "w_psi(sigma_m) <= exp(R log(Delta)/l1_min) * sum of w_phi over L <= l1 < R, L = m/Delta, R = (m+A)Delta")
    for m in range(m_max + 1):
        L, R = m / Delta, (m + A) * Delta
        for b in range(len(psi_cfg.base_vertices)):
            lhs = t_psi.sigma_weight(m, b)
            S = t_phi.query(L, R - L, b)["sigma"][1]
            ok = _rational_power_le(lhs, Delta, R / l1_min, S)
            rhs = float(S) * math.exp(float(R / l1_min) * math.log(float(Delta)))
            agg.record(ok, rhs - float(lhs), (m, b))
    return rep


def truncation_experiment(phi: WeightFunction, length: LengthFunction, h: HeightStructure,
                          eta_list: Sequence, m: int, c=None, threads: int = 1) -> PropertyReport:
    """Monotonicity in the truncation level and exact stabilisation below the certified rho."""
    etas = sorted((as_fraction(e) for e in eta_list), reverse=True)
    group = h.group
    if c is None:
        c = EnumConfig(group, phi, length, h, m, eta=etas[0]).A
    cert = certify_truncation_exactness(phi, length, m, c)
    rep = PropertyReport()
    rep.notes.append(f"rho = {cert.rho}")
    tables = [enumerate_aggregate(EnumConfig(group, phi, length, h, m, eta=e, c=c), threads=threads) for e in etas]

    mono = rep.add("monotone_in_eta", "every bin aggregate is non-decreasing as eta decreases")
    for (e1, t1), (e2, t2) in zip(zip(etas, tables), zip(etas[1:], tables[1:])):
        for key, (n1, w1) in t1.rows.items():
            n2, w2 = t2.rows[key]
            mono.record(n1 <= n2 and w1 <= w2, float(w2 - w1), (str(e1), str(e2), key))

    stable = rep.add("stable_below_rho", "aggregates on bins <= m coincide for every eta <= rho")
    ref = enumerate_aggregate(EnumConfig(group, phi, length, h, m, eta=cert.rho, c=c), threads=threads)
    for e, t in zip(etas, tables):
        if e <= cert.rho:
            stable.record(t.same_bins(ref), None, str(e))
    if not phi.finite_support:
        try:
            full = enumerate_aggregate(EnumConfig(group, phi, length, h, m, c=c), threads=threads)
        except Exception as exc:  # weight not locally finite by length: no untruncated reference
            rep.notes.append(f"no untruncated reference: {exc}")
        else:
            stable.record(full.same_bins(ref), None, "untruncated")
    return rep


def _population(cfg: EnumConfig, max_length) -> list:
    """Half-space walks from every base vertex with length below ``max_length``."""
    out = []
    for b in range(len(cfg.base_vertices)):
        for rec in iter_walks(cfg, b, max_length=max_length):
            hs = rec.heights
            if all(x > hs[0] for x in hs[1:]):
                out.append(rec)
    return out


def surgery_soundness(cfg: EnumConfig, max_length) -> PropertyReport:
    """Surger every half-space walk with length <= max_length and audit the bookkeeping.

    Preimages are counted over all half-space walks whose length can reach
    the image; buckets are keyed by (image, original span list).
    """
    max_length = as_fraction(max_length)
    sc = config_constants(cfg)
    h = cfg.height
    extra = 2 * max((c.s for c in sc.connectors.values()), default=Fraction(0))
    pop_cap = max_length + extra
    population = _population(cfg, pop_cap + Fraction(1, 10**9))
    rep = PropertyReport()
    rep.notes.append(f"population: {len(population)} half-space walks with length <= {pop_cap}")

    dec_check = rep.add("decomposition", "pieces reassemble the walk, spans strictly decrease, classes alternate from bridge")
    sa = rep.add("surgery_self_avoiding", "the surgered walk is self-avoiding")
    sp = rep.add("surgery_spans", "span list of the output is (a1+a2+a3+2 delta, a4, ...) or (a1+a2+delta)")
    wt = rep.add("surgery_weight", "w(out) = theta^2 w(in) or theta w(in), exactly")
    ln = rep.add("surgery_length", "l(out) = l(in) + 2s or + s, exactly")
    pre = rep.add("preimages", f"each (output, span list) has at most r+1 = {sc.r + 1} preimages")

    buckets: dict = {}
    for rec in population:
        walk = rec.walk
        dec = hw_decompose(h, walk)
        if rec.length <= max_length:
            expect = [WalkClass.BRIDGE if i % 2 == 0 else WalkClass.REVERSED_BRIDGE for i in range(dec.k)]
            ok = (
                dec.reconstruct().vertices == walk.vertices
                and all(x > y for x, y in zip(dec.spans, dec.spans[1:]))
                and list(dec.classes) == expect
                and all(s > 0 for s in dec.spans[:1] if walk.n)
            )
            dec_check.record(ok, None, walk)
        if dec.k < 2:
            continue
        try:
            tr = surgery_trace(h, walk, sc, cfg.phi, cfg.length)
        except SurgeryCollision as exc:
            if rec.length <= max_length:
                sa.record(False, None, str(exc))
            continue
        if rec.length <= max_length:
            sa.record(True)
            sp.record(tr.checks["spans"], None, walk)
            wt.record(tr.checks["weight"], None, walk)
            ln.record(tr.checks["length"], None, walk)
        if length_of_walk(cfg.length, tr.result) <= pop_cap:
            buckets.setdefault((tr.result.vertices, dec.spans), set()).add(walk.vertices)
    for key, pres in buckets.items():
        pre.record(len(pres) <= sc.r + 1, float(sc.r + 1 - len(pres)), key)
    rep.notes.append(f"max preimages per bucket: {max((len(p) for p in buckets.values()), default=0)}")
    return rep
