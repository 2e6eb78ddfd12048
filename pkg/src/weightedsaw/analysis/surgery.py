"""Half-space walk decomposition into alternating bridges, and the span-merging surgery."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from ..errors import NotHalfSpace, SurgeryCollision
from ..height import HeightStructure, StructuralConstants, classify_heights
from ..walks import Walk
from ..weights import LengthFunction, WeightFunction, length_of_walk, weight_of_walk


@dataclass(frozen=True)
class HWDecomposition:
    walk: Walk
    spans: tuple
    cut_indices: tuple
    subwalks: tuple
    classes: tuple

    @property
    def k(self) -> int:
        return len(self.spans)

    def reconstruct(self) -> Walk:
        verts = [self.walk.start]
        for piece in self.subwalks:
            verts.extend(piece.vertices[1:])
        return Walk(self.walk.group, tuple(verts))

    def to_json(self) -> dict:
        g = self.walk.group
        return {
            "spans": list(self.spans),
            "cut_indices": list(self.cut_indices),
            "classes": [c.value for c in self.classes],
            "subwalks": [[g.format(v) for v in w.vertices] for w in self.subwalks],
        }


def _relative_heights(h: HeightStructure, walk: Walk) -> list:
    h0 = h(walk.start)
    return [h(v) - h0 for v in walk.vertices]


def is_half_space(h: HeightStructure, walk: Walk) -> bool:
    hs = _relative_heights(h, walk)
    return all(x > 0 for x in hs[1:])


def hw_decompose(h: HeightStructure, walk: Walk) -> HWDecomposition:
    if not walk.is_self_avoiding():
        raise ValueError("walk is not self-avoiding")
    hs = _relative_heights(h, walk)
    if any(x <= 0 for x in hs[1:]):
        raise NotHalfSpace("walk leaves the half-space above its first vertex")
    n = walk.n
    spans, cuts = [], [0]
    j = 1
    while cuts[-1] < n:
        start = cuts[-1]
        sign = 1 if j % 2 else -1
        best, arg = None, start
        for t in range(start, n + 1):
            val = sign * (hs[t] - hs[start])
            if best is None or val >= best:
                best, arg = val, t
        spans.append(best)
        cuts.append(arg)
        j += 1
    pieces = tuple(Walk(walk.group, walk.vertices[u : v + 1]) for u, v in zip(cuts, cuts[1:]))
    classes = tuple(classify_heights(hs[u : v + 1]) for u, v in zip(cuts, cuts[1:]))
    return HWDecomposition(walk, tuple(spans), tuple(cuts), pieces, classes)


@dataclass
class SurgeryTrace:
    walk: Walk
    decomposition: HWDecomposition
    t: int
    i: int
    j: int
    gamma: tuple
    alpha1: tuple
    alpha2: Optional[tuple]
    result: Walk
    predicted_spans: tuple
    predicted_weight_factor: Fraction
    predicted_length_gain: Fraction
    result_spans: tuple = ()
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        g = self.walk.group
        return {
            "input": [g.format(v) for v in self.walk.vertices],
            "decomposition": self.decomposition.to_json(),
            "t": self.t,
            "orbits": [self.i, self.j],
            "gamma": g.format(self.gamma),
            "alpha1": g.format(self.alpha1),
            "alpha2": None if self.alpha2 is None else g.format(self.alpha2),
            "output": [g.format(v) for v in self.result.vertices],
            "predicted_spans": list(self.predicted_spans),
            "output_spans": list(self.result_spans),
            "weight_factor": str(self.predicted_weight_factor),
            "length_gain": str(self.predicted_length_gain),
            "checks": dict(self.checks),
        }


def _construct(h: HeightStructure, walk: Walk, dec: HWDecomposition, constants: StructuralConstants):
    g = h.group
    mul, inv = g.multiply, g.inverse
    k = dec.k
    a1 = dec.spans[0]
    hs = _relative_heights(h, walk)
    t = next(u for u, x in enumerate(hs) if x == a1)
    n2 = dec.cut_indices[2]
    pt, pn2 = walk.vertices[t], walk.vertices[n2]
    i, j = h.coset(pt), h.coset(pn2)
    nu = constants.connectors[(i, j)]
    o_i, v_j = nu.walk.start, nu.walk.end
    gamma = mul(pt, inv(o_i))
    alpha1 = mul(mul(gamma, v_j), inv(pn2))

    verts = list(walk.vertices[: t + 1])
    verts += [mul(gamma, x) for x in nu.walk.vertices[1:]]
    sigma = walk.vertices[t : n2 + 1]
    verts += [mul(alpha1, x) for x in reversed(sigma[:-1])]
    alpha2 = None
    if k >= 3:
        ag = mul(alpha1, gamma)
        verts += [mul(ag, x) for x in nu.walk.vertices[1:]]
        alpha2 = mul(mul(ag, v_j), inv(pn2))
        verts += [mul(alpha2, x) for x in walk.vertices[n2 + 1 :]]
    return t, i, j, nu, gamma, alpha1, alpha2, verts


def _first_repeat(verts) -> Optional[tuple]:
    seen = set()
    for x in verts:
        if x in seen:
            return x
        seen.add(x)
    return None


def surgery_trace(h: HeightStructure, walk: Walk, constants: StructuralConstants,
                  phi: Optional[WeightFunction] = None, length: Optional[LengthFunction] = None) -> SurgeryTrace:
    """Run one surgery step and check every bookkeeping identity that can be checked."""
    dec = hw_decompose(h, walk)
    if dec.k < 2:
        raise NotHalfSpace("surgery needs at least two pieces in the decomposition")
    t, i, j, nu, gamma, alpha1, alpha2, verts = _construct(h, walk, dec, constants)
    rep = _first_repeat(verts)
    if rep is not None:
        raise SurgeryCollision(
            f"surgered walk revisits {h.group.format(rep)} (input {walk.format()})", vertex=rep
        )
    out = Walk(h.group, tuple(verts))
    a = dec.spans
    if dec.k >= 3:
        spans = (a[0] + a[1] + a[2] + 2 * nu.delta,) + tuple(a[3:])
        factor, gain = nu.theta ** 2, 2 * nu.s
    else:
        spans = (a[0] + a[1] + nu.delta,)
        factor, gain = nu.theta, nu.s
    res = SurgeryTrace(walk, dec, t, i, j, gamma, alpha1, alpha2, out, spans, factor, gain)
    out_dec = hw_decompose(h, out)
    res.result_spans = out_dec.spans
    res.checks["self_avoiding"] = True
    res.checks["spans"] = out_dec.spans == spans
    if phi is not None:
        res.checks["weight"] = weight_of_walk(phi, out) == factor * weight_of_walk(phi, walk)
    if length is not None:
        res.checks["length"] = length_of_walk(length, out) == length_of_walk(length, walk) + gain
    return res


def hw_surgery_step(h: HeightStructure, walk: Walk, constants: StructuralConstants) -> Walk:
    return surgery_trace(h, walk, constants).result


@dataclass
class PreimageReport:
    walks: int = 0
    surgered: int = 0
    collisions: list = field(default_factory=list)
    failed_checks: list = field(default_factory=list)
    max_preimages: int = 0
    bound: int = 1
    buckets: int = 0

    @property
    def ok(self) -> bool:
        return not self.collisions and not self.failed_checks and self.max_preimages <= self.bound

    def to_json(self) -> dict:
        return {
            "walks": self.walks,
            "surgered": self.surgered,
            "collisions": [w.format() for w in self.collisions[:20]],
            "failed_checks": [w.format() for w in self.failed_checks[:20]],
            "max_preimages": self.max_preimages,
            "bound": self.bound,
            "buckets": self.buckets,
            "ok": self.ok,
        }


def preimage_census(h: HeightStructure, walks: Iterable[Walk], constants: StructuralConstants,
                    phi=None, length=None, image_filter=None) -> PreimageReport:
    """Surger every walk with k >= 2 and count preimages of each (image, span list) pair.

    The walk population must be closed under taking preimages of the images
    that are counted (``image_filter`` selects those), otherwise counts are
    lower bounds only.
    """
    rep = PreimageReport(bound=constants.r + 1)
    buckets = defaultdict(set)
    for w in walks:
        rep.walks += 1
        dec = hw_decompose(h, w)
        if dec.k < 2:
            continue
        try:
            tr = surgery_trace(h, w, constants, phi, length)
        except SurgeryCollision:
            rep.collisions.append(w)
            continue
        rep.surgered += 1
        if not tr.ok:
            rep.failed_checks.append(w)
        if image_filter is None or image_filter(tr, w):
            buckets[(tr.result.vertices, dec.spans)].add(w.vertices)
    rep.buckets = len(buckets)
    rep.max_preimages = max((len(v) for v in buckets.values()), default=0)
    return rep
