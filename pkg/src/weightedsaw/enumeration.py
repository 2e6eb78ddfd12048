"""Exhaustive weighted SAW enumeration with an l-length budget.

``enumerate_aggregate`` drives the depth-first kernel (compiled when the
extension is importable, pure Python otherwise) and rebuilds exact rational
aggregates from per-monomial walk counts. ``oracle_enumerate`` is a separate,
deliberately naive recursion used to cross-check it.

Bins: a walk of l-length L contributes to bin m (integer, ``0 <= m <= m_max``)
whenever ``m <= L < m + c``; with ``c > 1`` bins overlap.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from . import _fallback
from .errors import (
    BudgetOverflow,
    InfiniteStepSet,
    NotContinuousAtZero,
    SchemaError,
    WordOverflow,
)
from .groups import FreeAbelian, FreeGroup, Group, Heisenberg3
from .height import HeightStructure, WalkClass, classify_heights
from .walks import Walk
from .weights import (
    ConstantLength,
    LengthFunction,
    PowerLawWeight,
    WeightFunction,
    as_fraction,
    fraction_text,
)

try:
    if os.environ.get("WEIGHTEDSAW_PURE_PYTHON"):
        raise ImportError("pure Python backend requested")
    from ._core import enumerate_counts as _compiled_counts

    BACKEND = "compiled"
except ImportError:  # pragma: no cover - depends on the build
    _compiled_counts = None
    BACKEND = "python"

CODE_VERSION = "weightedsaw-enum-1"
CLASSES = ("sigma", "halfspace", "bridge")
DEFAULT_NODE_CAP = 2_000_000_000


# ---------------------------------------------------------------------------
# step tables


@dataclass(frozen=True)
class StepTable:
    group: Group
    steps: tuple
    weights: tuple
    lengths: tuple

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)


def neighbor_table(phi: WeightFunction, eta, length: LengthFunction, budget=None) -> StepTable:
    """Steps with positive truncated weight and ``length <= budget``, sorted by length then group order."""
    group = phi.group
    if eta is not None:
        cand = phi.at_least(as_fraction(eta))
        if budget is not None:
            cand = {g: v for g, v in cand.items() if length.value(g) <= as_fraction(budget)}
    elif phi.finite_support:
        cand = phi.within_length(length, budget)
    else:
        if budget is None:
            raise InfiniteStepSet("infinite support without truncation level or length budget")
        cand = phi.within_length(length, budget)
    order = sorted(cand, key=lambda g: (length.value(g), group.sort_key(g)))
    return StepTable(group, tuple(order), tuple(cand[g] for g in order), tuple(length.value(g) for g in order))


def _extension_A(h: HeightStructure, table: StepTable) -> int:
    A = 0
    for i in range(h.index):
        up = next((k for k, g in enumerate(table.steps) if h.increment(i, g) > 0), None)
        if up is None:
            raise SchemaError([f"height: orbit {i} has no upward step in the truncated support"])
        A = max(A, math.ceil(table.lengths[up]))
    return A


# ---------------------------------------------------------------------------
# configuration


@dataclass
class EnumConfig:
    group: Group
    phi: WeightFunction
    length: LengthFunction
    height: HeightStructure
    m_max: int
    eta: Optional[Fraction] = None
    c: Optional[Fraction] = None
    base_vertices: Optional[tuple] = None
    exactness: bool = False
    value_mode: str = "rational"
    node_cap: int = DEFAULT_NODE_CAP
    holder: Optional[tuple] = None  # (epsilon, C) certificate carried by the config
    A: int = field(init=False, default=1)
    certificate: Optional["TruncationCertificate"] = field(init=False, default=None)

    def __post_init__(self):
        if self.m_max < 0:
            raise SchemaError([f"run.m_max: must be >= 0, got {self.m_max}"])
        if self.value_mode not in ("rational", "float"):
            raise SchemaError([f"run.value_mode: unknown mode {self.value_mode!r}"])
        if self.eta is not None:
            self.eta = as_fraction(self.eta)
        if self.exactness and not self.phi.finite_support:
            cert = certify_truncation_exactness(self.phi, self.length, self.m_max, self.c or 1)
            self.certificate = cert
            if self.eta is None:
                self.eta = cert.rho
        probe_budget = self.m_max + (as_fraction(self.c) if self.c is not None else 1)
        self.A = _extension_A(self.height, neighbor_table(self.phi, self.eta, self.length, probe_budget))
        if self.c is None:
            self.c = Fraction(self.A)
        self.c = as_fraction(self.c)
        if self.c < self.A:
            raise SchemaError([f"run.c: bin width c={self.c} must satisfy c >= A={self.A}"])
        if self.exactness and self.certificate is not None and self.certificate.c != self.c:
            self.certificate = certify_truncation_exactness(self.phi, self.length, self.m_max, self.c)
        if self.base_vertices is None:
            self.base_vertices = tuple(self.height.coset_reps)
        else:
            self.base_vertices = tuple(self.group.validate(v) for v in self.base_vertices)

    @property
    def budget(self) -> Fraction:
        return self.m_max + self.c

    def step_table(self) -> StepTable:
        t = neighbor_table(self.phi, self.eta, self.length, self.budget)
        keep = [i for i, l in enumerate(t.lengths) if l < self.budget]
        return StepTable(
            t.group,
            tuple(t.steps[i] for i in keep),
            tuple(t.weights[i] for i in keep),
            tuple(t.lengths[i] for i in keep),
        )

    def canonical(self) -> dict:
        g = self.group
        return {
            "version": CODE_VERSION,
            "group": g.spec(),
            "weight": self.phi.spec(),
            "length": self.length.spec(),
            "height": self.height.spec(),
            "eta": None if self.eta is None else fraction_text(self.eta),
            "m_max": self.m_max,
            "c": fraction_text(self.c),
            "base_vertices": [g.format(v) for v in self.base_vertices],
            "exactness": self.exactness,
            "value_mode": self.value_mode,
        }

    def config_hash(self) -> str:
        blob = json.dumps(self.canonical(), sort_keys=True, separators=(",", ":")).encode()
        return hashlib.sha256(blob).hexdigest()


# ---------------------------------------------------------------------------
# truncation certificate


@dataclass(frozen=True)
class TruncationCertificate:
    rho: Fraction
    m: int
    c: Fraction
    vacuous: bool
    note: str

    def covers(self, eta) -> bool:
        return self.vacuous or as_fraction(eta) <= self.rho

    def to_json(self) -> dict:
        return {"rho": fraction_text(self.rho), "m": self.m, "c": fraction_text(self.c), "vacuous": self.vacuous, "note": self.note}


def certify_truncation_exactness(phi: WeightFunction, length: LengthFunction, m, c) -> TruncationCertificate:
    """Find rho such that every step with weight in (0, rho) has length > m + c."""
    c = as_fraction(c)
    top = m + c
    if phi.finite_support:
        rho = min(phi.support().values()) / 2
        return TruncationCertificate(rho, m, c, True, "finite support: truncation below the minimum is the identity")
    if not isinstance(phi, PowerLawWeight):
        raise NotContinuousAtZero("no certificate available for this weight family")
    n = length.max_power_within(phi.group, phi.generator, top)
    if n is None:
        raise NotContinuousAtZero("length stays bounded along the support; small weights occur at short lengths")
    rho = phi.power_value(n) if n > 0 else phi.scale * 2
    if phi.extra is not None:
        for g, v in phi.extra.support().items():
            if v < rho and length.value(g) <= top:
                rho = v
    return TruncationCertificate(rho, m, c, False, f"steps with weight below rho have length > {top}")


# ---------------------------------------------------------------------------
# encoding for the kernel


@dataclass
class _Plan:
    kind: int
    steps: np.ndarray
    step_class: np.ndarray
    step_len: np.ndarray
    h_delta: np.ndarray
    coset_next: np.ndarray
    stride: np.ndarray
    radix: list
    stride_list: list
    class_weight: list
    class_length: list
    budget: int
    scale: int
    bits: int
    max_letters: int
    max_depth: int
    compiled_ok: bool
    encode: object


def _encoder(group: Group):
    if isinstance(group, FreeAbelian):
        return 0, 0, 0, (lambda x: tuple(x))
    if isinstance(group, Heisenberg3):
        return 1, 0, 0, (lambda x: tuple(x))
    if isinstance(group, FreeGroup):
        bits = (2 * group.k - 1).bit_length()

        def enc(word):
            packed = 0
            for i, x in enumerate(word):
                packed |= (2 * (abs(x) - 1) + (x < 0)) << (bits * i)
            return (len(word), packed)

        return 2, bits, min(62 // bits, group.max_word_length), enc
    raise NotImplementedError(group)


def _plan(cfg: EnumConfig, table: StepTable) -> _Plan:
    group, h = cfg.group, cfg.height
    kind, bits, max_letters, enc = _encoder(group)
    denom = math.lcm(*(l.denominator for l in table.lengths), cfg.budget.denominator) if table.steps else 1
    scaled = [int(l * denom) for l in table.lengths]
    budget = int(cfg.budget * denom)

    classes: dict = {}
    step_class = []
    for w, l in zip(table.weights, table.lengths):
        step_class.append(classes.setdefault((w, l), len(classes)))
    class_weight = [w for (w, _l) in classes]
    class_length = [l for (_w, l) in classes]
    radix = [int((budget - 1) // int(l * denom)) + 1 for l in class_length]
    stride, acc = [], 1
    for r in radix:
        stride.append(acc)
        acc *= r
    key_fits = acc * 3 < 2**62

    min_len = min(scaled) if scaled else budget
    max_depth = (budget - 1) // min_len if scaled else 0

    rows = [enc(g) for g in table.steps]
    width = len(rows[0]) if rows else len(enc(group.identity()))
    compiled_ok = key_fits and width <= 8
    if kind == 1 and rows:
        big = max(abs(v) for r in rows for v in r) * (max_depth + 1)
        compiled_ok &= big * big * 4 < 2**62
    if kind == 2 and rows:
        compiled_ok &= max(r[0] for r in rows) * max_depth <= max_letters
    h_delta = [[h.increment(i, g) for g in table.steps] for i in range(h.index)]
    c_next = [[h.next_coset(i, g) for g in table.steps] for i in range(h.index)]
    as_arr = lambda x, shape=None: np.ascontiguousarray(np.array(x, dtype=np.int64).reshape(shape) if shape else np.array(x, dtype=np.int64))
    return _Plan(
        kind=kind,
        steps=as_arr(rows, (len(rows), width)) if compiled_ok else rows,
        step_class=as_arr(step_class) if compiled_ok else step_class,
        step_len=as_arr(scaled) if compiled_ok else scaled,
        h_delta=as_arr(h_delta, (h.index, len(rows))) if compiled_ok else h_delta,
        coset_next=as_arr(c_next, (h.index, len(rows))) if compiled_ok else c_next,
        stride=as_arr(stride) if compiled_ok else stride,
        radix=radix,
        stride_list=stride,
        class_weight=class_weight,
        class_length=class_length,
        budget=budget,
        scale=denom,
        bits=bits,
        max_letters=max_letters,
        max_depth=max_depth,
        compiled_ok=compiled_ok,
        encode=enc,
    )


def _partition(n_first: int, parts: int) -> list:
    return [list(range(p, n_first, parts)) for p in range(parts)]


def _count_walks(cfg: EnumConfig, plan: _Plan, base, base_coset: int, threads: int, backend: str):
    use_compiled = backend == "compiled" and _compiled_counts is not None and plan.compiled_ok
    fn = _compiled_counts if use_compiled else _fallback.enumerate_counts
    max_letters = plan.max_letters if use_compiled else getattr(cfg.group, "max_word_length", 0)
    parts = _partition(len(plan.step_len), max(1, threads))
    enc_base = plan.encode(base)
    jobs = []
    for p, first in enumerate(parts):
        if not first and p != 0:
            continue
        base_arr = np.array(enc_base, dtype=np.int64) if use_compiled else enc_base
        first_arr = np.array(first, dtype=np.int64) if use_compiled else first
        jobs.append((
            plan.kind, plan.steps, plan.step_class, plan.step_len, plan.h_delta, plan.coset_next,
            plan.stride, base_arr, base_coset, plan.budget, plan.bits, max_letters, first_arr,
            p == 0, cfg.node_cap, plan.max_depth,
        ))
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda a: fn(*a), jobs))
    else:
        results = [fn(*a) for a in jobs]
    counts: dict = defaultdict(int)
    maxdh: dict = {}
    nodes = 0
    for status, cnt, mdh, n in results:
        nodes += n
        if status == 1:
            raise BudgetOverflow(f"node cap {cfg.node_cap} exceeded")
        if status == 2:
            raise WordOverflow("free-group word exceeded the kernel limit")
        for k, v in cnt.items():
            counts[k] += v
        for k, v in mdh.items():
            if maxdh.get(k, -1) < v:
                maxdh[k] = v
    return counts, maxdh, nodes, ("compiled" if use_compiled else "python")


def _decode(plan: _Plan, key: int) -> list:
    return [(key // s) % r for s, r in zip(plan.stride_list, plan.radix)]


# ---------------------------------------------------------------------------
# aggregate table


class AggregateTable:
    """Binned aggregates per base vertex, plus the length histogram they come from.

    ``rows[(m, cls, b)] = (count, weight)`` with ``cls`` in ``sigma``,
    ``halfspace`` or ``bridge`` and ``b`` the index of the base vertex.
    """

    def __init__(self, group: Group, m_max: int, c: Fraction, base_vertices, rows: dict,
                 hist: Optional[list] = None, maxdh: Optional[dict] = None, config_hash: str = "",
                 value_mode: str = "rational", meta: Optional[dict] = None):
        self.group = group
        self.m_max = m_max
        self.c = as_fraction(c)
        self.base_vertices = tuple(base_vertices)
        self.rows = rows
        self.hist = hist
        self.maxdh = maxdh or {}
        self.config_hash = config_hash
        self.value_mode = value_mode
        self.meta = meta or {}

    # building

    @classmethod
    def from_histograms(cls, group, m_max, c, bases, hist, maxdh, **kw) -> "AggregateTable":
        rows = {}
        for b, hb in enumerate(hist):
            for m in range(m_max + 1):
                acc = {k: [0, Fraction(0)] for k in CLASSES}
                for (ell, cat), (n, w) in hb.items():
                    if m <= ell < m + c:
                        _accumulate(acc, cat, n, w)
                for k in CLASSES:
                    rows[(m, k, b)] = (acc[k][0], acc[k][1])
        return cls(group, m_max, c, bases, rows, hist, maxdh, **kw)

    # queries

    def _get(self, m, cls, base):
        return self.rows[(m, cls, base)]

    def sigma_count(self, m, base=0) -> int:
        return self._get(m, "sigma", base)[0]

    def sigma_weight(self, m, base=0):
        return self._get(m, "sigma", base)[1]

    def halfspace_count(self, m, base=0) -> int:
        return self._get(m, "halfspace", base)[0]

    def halfspace_weight(self, m, base=0):
        return self._get(m, "halfspace", base)[1]

    def bridge_count(self, m, base=0) -> int:
        return self._get(m, "bridge", base)[0]

    def bridge_weight(self, m, base=None):
        """Bridge weight at base ``base``; with ``base=None`` the minimum over orbit representatives."""
        if base is not None:
            return self._get(m, "bridge", base)[1]
        return min(self._get(m, "bridge", b)[1] for b in range(len(self.base_vertices)))

    def series(self, cls: str, base=None) -> list:
        if cls == "bridge":
            return [self.bridge_weight(m, base) for m in range(self.m_max + 1)]
        return [self._get(m, cls, base or 0)[1] for m in range(self.m_max + 1)]

    def query(self, m, width=None, base=0) -> dict:
        """Aggregates over ``m <= length < m + width`` for arbitrary rational m (needs the histogram)."""
        if self.hist is None:
            raise ValueError("this table carries no length histogram")
        m = as_fraction(m)
        width = self.c if width is None else as_fraction(width)
        if m + width > self.m_max + self.c:
            raise ValueError("query exceeds the enumerated length budget")
        acc = {k: [0, Fraction(0)] for k in CLASSES}
        for (ell, cat), (n, w) in self.hist[base].items():
            if m <= ell < m + width:
                _accumulate(acc, cat, n, w)
        return {k: (v[0], v[1]) for k, v in acc.items()}

    def translation_invariant(self) -> bool:
        return all(
            self.rows[(m, "sigma", b)] == self.rows[(m, "sigma", 0)]
            for m in range(self.m_max + 1)
            for b in range(len(self.base_vertices))
        )

    def same_bins(self, other: "AggregateTable", bins=None) -> bool:
        bins = range(self.m_max + 1) if bins is None else bins
        return all(
            self.rows[(m, k, b)] == other.rows[(m, k, b)]
            for m in bins
            for k in CLASSES
            for b in range(len(self.base_vertices))
        )

    # serialization

    def weight_view(self, w):
        return float(w) if self.value_mode == "float" else w

    def to_rows(self) -> list:
        out = []
        for (m, k, b), (n, w) in sorted(self.rows.items(), key=lambda kv: (kv[0][0], CLASSES.index(kv[0][1]), kv[0][2])):
            w = as_fraction(w)
            out.append({
                "bin": m,
                "class": k,
                "base_vertex": self.group.format(self.base_vertices[b]),
                "count": n,
                "weight_num": w.numerator,
                "weight_den": w.denominator,
                "weight_float": repr(float(w)),
            })
        return out

    def to_json(self) -> dict:
        hist = None
        if self.hist is not None:
            hist = [
                [[fraction_text(ell), cat, n, fraction_text(w)] for (ell, cat), (n, w) in sorted(hb.items())]
                for hb in self.hist
            ]
        return {
            "schema": "weightedsaw.aggregate/1",
            "config_hash": self.config_hash,
            "group": self.group.spec(),
            "m_max": self.m_max,
            "c": fraction_text(self.c),
            "value_mode": self.value_mode,
            "base_vertices": [self.group.format(v) for v in self.base_vertices],
            "rows": self.to_rows(),
            "histogram": hist,
            "max_height_change": [[fraction_text(k), v] for k, v in sorted(self.maxdh.items())],
            "meta": self.meta,
        }

    @classmethod
    def from_json(cls, data: dict) -> "AggregateTable":
        from .groups import make_group

        group = make_group(data["group"])
        bases = [group.parse(v) for v in data["base_vertices"]]
        index = {group.format(v): i for i, v in enumerate(bases)}
        rows = {}
        for r in data["rows"]:
            rows[(r["bin"], r["class"], index[r["base_vertex"]])] = (r["count"], Fraction(r["weight_num"], r["weight_den"]))
        hist = None
        if data.get("histogram") is not None:
            hist = [{(Fraction(e), cat): (n, Fraction(w)) for e, cat, n, w in hb} for hb in data["histogram"]]
        maxdh = {Fraction(k): v for k, v in data.get("max_height_change", [])}
        return cls(group, data["m_max"], Fraction(data["c"]), bases, rows, hist, maxdh,
                   data.get("config_hash", ""), data.get("value_mode", "rational"), data.get("meta", {}))


def _accumulate(acc, cat, n, w):
    acc["sigma"][0] += n
    acc["sigma"][1] += w
    if cat >= 1:
        acc["halfspace"][0] += n
        acc["halfspace"][1] += w
    if cat == 2:
        acc["bridge"][0] += n
        acc["bridge"][1] += w


# ---------------------------------------------------------------------------
# main entry points


def enumerate_aggregate(cfg: EnumConfig, threads: int = 1, backend: Optional[str] = None) -> AggregateTable:
    """Enumerate every positive-weight SAW with length below ``m_max + c`` from each base vertex."""
    backend = backend or BACKEND
    table = cfg.step_table()
    plan = _plan(cfg, table)
    hist, maxdh = [], {}
    total_nodes, used = 0, set()
    weight_cache: dict = {}
    for v in cfg.base_vertices:
        counts, mdh, nodes, which = _count_walks(cfg, plan, v, cfg.height.coset(v), threads, backend)
        total_nodes += nodes
        used.add(which)
        hb: dict = {}
        for slot in sorted(counts):
            key, cat = divmod(int(slot), 3)
            if key not in weight_cache:
                ns = _decode(plan, key)
                w = Fraction(1)
                ell = Fraction(0)
                for n, cw, cl in zip(ns, plan.class_weight, plan.class_length):
                    if n:
                        w *= cw ** n
                        ell += n * cl
                weight_cache[key] = (ell, w)
            ell, w = weight_cache[key]
            n = counts[slot]
            prev = hb.get((ell, cat), (0, Fraction(0)))
            hb[(ell, cat)] = (prev[0] + n, prev[1] + n * w)
        hist.append(hb)
        for key, d in mdh.items():
            ell = weight_cache[key][0] if key in weight_cache else _key_length(plan, key)
            if maxdh.get(ell, -1) < d:
                maxdh[ell] = d
    meta = {
        "backend": sorted(used),
        "nodes": total_nodes,
        "steps": len(table),
        "A": cfg.A,
        "eta": None if cfg.eta is None else fraction_text(cfg.eta),
        "certificate": None if cfg.certificate is None else cfg.certificate.to_json(),
    }
    return AggregateTable.from_histograms(
        cfg.group, cfg.m_max, cfg.c, cfg.base_vertices, hist, maxdh,
        config_hash=cfg.config_hash(), value_mode=cfg.value_mode, meta=meta,
    )


def _key_length(plan: _Plan, key: int) -> Fraction:
    return sum((n * cl for n, cl in zip(_decode(plan, key), plan.class_length)), Fraction(0))


def _oracle_steps(cfg: EnumConfig) -> list:
    phi = cfg.phi
    if cfg.eta is not None:
        support = {g: v for g, v in phi.at_least(cfg.eta).items()}
    elif phi.finite_support:
        support = phi.support()
    else:
        support = phi.within_length(cfg.length, cfg.budget)
    return [(g, w, cfg.length.value(g)) for g, w in support.items()]


def oracle_enumerate(cfg: EnumConfig, node_cap: int = 10**7) -> AggregateTable:
    """Reference enumeration: plain recursion on vertex lists, full height evaluation, exact rationals."""
    group, h = cfg.group, cfg.height
    steps = _oracle_steps(cfg)
    budget = cfg.budget
    rows = {}
    maxdh: dict = {}
    visited_nodes = [0]
    for b, v in enumerate(cfg.base_vertices):
        bins = {(m, k): [0, Fraction(0)] for m in range(cfg.m_max + 1) for k in CLASSES}

        def visit(path, weight, ell):
            heights = [h(x) for x in path]
            kind = classify_heights(heights)
            dh = abs(heights[-1] - heights[0])
            if maxdh.get(ell, -1) < dh:
                maxdh[ell] = dh
            for m in range(cfg.m_max + 1):
                if m <= ell < m + cfg.c:
                    names = ["sigma"]
                    if kind in (WalkClass.BRIDGE, WalkClass.HALF_SPACE):
                        names.append("halfspace")
                    if kind is WalkClass.BRIDGE:
                        names.append("bridge")
                    for k in names:
                        bins[(m, k)][0] += 1
                        bins[(m, k)][1] += weight
            for g, w, l in steps:
                if ell + l >= budget:
                    continue
                y = group.multiply(path[-1], g)
                if y in path:
                    continue
                visited_nodes[0] += 1
                if visited_nodes[0] > node_cap:
                    raise BudgetOverflow(f"oracle node cap {node_cap} exceeded")
                visit(path + [y], weight * w, ell + l)

        visit([v], Fraction(1), Fraction(0))
        for (m, k), (n, w) in bins.items():
            rows[(m, k, b)] = (n, w)
    return AggregateTable(cfg.group, cfg.m_max, cfg.c, cfg.base_vertices, rows, None, maxdh,
                          cfg.config_hash(), cfg.value_mode, {"backend": ["oracle"], "nodes": visited_nodes[0]})


@dataclass(frozen=True)
class WalkRecord:
    walk: Walk
    weight: Fraction
    length: Fraction
    heights: tuple


def iter_walks(cfg: EnumConfig, base_index: int = 0, max_length=None) -> Iterator[WalkRecord]:
    """Stream every positive-weight SAW from one base vertex (length below the budget), depth first."""
    table = cfg.step_table()
    group, h = cfg.group, cfg.height
    budget = cfg.budget if max_length is None else as_fraction(max_length)
    start = cfg.base_vertices[base_index]
    path = [start]
    heights = [h(start)]
    seen = {start}

    def rec(weight, ell):
        yield WalkRecord(Walk(group, tuple(path)), weight, ell, tuple(heights))
        for g, w, l in zip(table.steps, table.weights, table.lengths):
            if ell + l >= budget:
                break
            y = group.multiply(path[-1], g)
            if y in seen:
                continue
            seen.add(y)
            path.append(y)
            heights.append(h(y))
            yield from rec(weight * w, ell + l)
            heights.pop()
            path.pop()
            seen.discard(y)

    yield from rec(Fraction(1), Fraction(0))


def nearest_neighbour_config(group: Group, height: HeightStructure, m_max: int, **kw) -> EnumConfig:
    from .weights import nearest_neighbour_weight

    return EnumConfig(group, nearest_neighbour_weight(group), ConstantLength(), height, m_max, **kw)
