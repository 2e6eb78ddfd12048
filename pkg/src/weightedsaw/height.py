"""Height structures on Cayley graphs, walk classification and structural constants.

A height is stored as ``h(x) = scale * F(ab(x) - r(x)) + offset[r(x)]`` where
``ab`` is the abelianization, ``F`` an integer homomorphism and
``r(x) = ab(x) mod moduli`` the residue class of ``x``. The acting subgroup
is the preimage of the diagonal lattice ``moduli * Z^k``; its orbits are the
residue classes. With all moduli equal to 1 this is the plain homomorphism
height ``scale * F``.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Optional

from .errors import NotAHeightFunction, SearchExhausted
from .groups import Element, FreeGroup, Group, Heisenberg3, Homomorphism
from .walks import Walk
from .weights import LengthFunction, WeightFunction, as_fraction


class WalkClass(str, Enum):
    BRIDGE = "bridge"
    REVERSED_BRIDGE = "reversed_bridge"
    HALF_SPACE = "half_space"
    PLAIN = "plain"


@dataclass(frozen=True)
class HeightStructure:
    group: Group
    F: Homomorphism
    scale: int = 1
    moduli: tuple = ()
    offsets: tuple = ()

    def __post_init__(self):
        k = self.group.rank_ab
        moduli = tuple(int(m) for m in self.moduli) or (1,) * k
        if len(moduli) != k or any(m < 1 for m in moduli):
            raise ValueError(f"moduli must be {k} positive integers")
        object.__setattr__(self, "moduli", moduli)
        index = math.prod(moduli)
        offsets = tuple(int(o) for o in self.offsets) or (0,) * index
        if len(offsets) != index:
            raise ValueError(f"need one offset per residue class ({index}), got {len(offsets)}")
        object.__setattr__(self, "offsets", offsets)
        if int(self.scale) < 1:
            raise ValueError("scale must be a positive integer")
        object.__setattr__(self, "scale", int(self.scale))

    @property
    def mode(self) -> str:
        return "homomorphism" if self.index == 1 else "coset_offset"

    @property
    def index(self) -> int:
        return math.prod(self.moduli)

    @cached_property
    def residues(self) -> list:
        return list(itertools.product(*(range(m) for m in self.moduli)))

    @cached_property
    def _residue_index(self) -> dict:
        return {r: i for i, r in enumerate(self.residues)}

    @cached_property
    def coset_reps(self) -> list:
        """One representative per orbit; the identity represents residue 0."""
        return [self.group.element_with_abelianization(r) for r in self.residues]

    def _residue(self, ab) -> tuple:
        return tuple(x % m for x, m in zip(ab, self.moduli))

    def coset(self, x: Element) -> int:
        return self._residue_index[self._residue(self.group.abelianize(x))]

    def _value_from_ab(self, ab) -> int:
        r = self._residue(ab)
        lifted = tuple(x - y for x, y in zip(ab, r))
        return self.scale * sum(c * v for c, v in zip(self.F.coefficients, lifted)) + self.offsets[self._residue_index[r]]

    def __call__(self, x: Element) -> int:
        return self._value_from_ab(self.group.abelianize(x))

    def increment(self, coset: int, step: Element) -> int:
        """h(u step) - h(u) for any u in the given residue class."""
        r = self.residues[coset]
        ab = self.group.abelianize(step)
        return self._value_from_ab(tuple(a + b for a, b in zip(r, ab))) - self.offsets[coset]

    def next_coset(self, coset: int, step: Element) -> int:
        r = self.residues[coset]
        ab = self.group.abelianize(step)
        return self._residue_index[self._residue(tuple(a + b for a, b in zip(r, ab)))]

    def increments(self, step: Element) -> list:
        return [self.increment(i, step) for i in range(self.index)]

    def in_subgroup(self, x: Element) -> bool:
        return self.coset(x) == 0

    def spec(self) -> dict:
        d = {"kind": self.mode, "coefficients": list(self.F.coefficients)}
        if self.scale != 1:
            d["scale"] = self.scale
        if self.mode == "coset_offset":
            d["moduli"] = list(self.moduli)
            d["offsets"] = list(self.offsets)
        return d


def heights_of(h: HeightStructure, walk: Walk) -> list:
    return [h(v) for v in walk.vertices]


def classify_heights(hs) -> WalkClass:
    h0, rest = hs[0], hs[1:]
    if not rest:
        return WalkClass.BRIDGE
    hn = rest[-1]
    if all(h0 < x <= hn for x in rest):
        return WalkClass.BRIDGE
    if all(hn <= x < h0 for x in rest):
        return WalkClass.REVERSED_BRIDGE
    if all(h0 < x for x in rest):
        return WalkClass.HALF_SPACE
    return WalkClass.PLAIN


def classify_walk(h: HeightStructure, walk: Walk) -> WalkClass:
    """Strongest class among bridge, reversed bridge, half-space; the zero-step walk is a bridge."""
    return classify_heights(heights_of(h, walk))


def span(h: HeightStructure, walk: Walk) -> int:
    hs = heights_of(h, walk)
    return max(hs) - min(hs)


# ---------------------------------------------------------------------------
# construction and validation


def _check_set(phi: WeightFunction, eta) -> dict:
    if eta is None:
        return phi.support()
    return phi.at_least(as_fraction(eta))


def _sample_element(group: Group, rng: random.Random, size: int = 3) -> Element:
    x = group.identity()
    gens = group.generators()
    for _ in range(rng.randint(0, size)):
        x = group.multiply(x, rng.choice(gens))
    return x


def make_height(spec, group: Group, phi: Optional[WeightFunction] = None, eta=None, samples: int = 200) -> HeightStructure:
    """Build and validate a height structure; raises NotAHeightFunction naming the failed clause."""
    if isinstance(spec, HeightStructure):
        h = spec
    else:
        kind = spec.get("kind", "homomorphism")
        F = Homomorphism(group, tuple(spec["coefficients"]))
        if kind == "homomorphism":
            h = HeightStructure(group, F, spec.get("scale", 1))
        elif kind == "coset_offset":
            h = HeightStructure(group, F, spec.get("scale", 1), tuple(spec["moduli"]), tuple(spec["offsets"]))
        else:
            raise ValueError(f"unknown height kind {kind!r}")

    if h(group.identity()) != 0:
        raise NotAHeightFunction("a", "h(identity) must be 0; the offset of the trivial residue class must vanish")

    # (b) difference invariance under the acting subgroup, on deterministic samples
    rng = random.Random(0x5A1)
    for _ in range(samples):
        shift = tuple(m * rng.randint(-2, 2) for m in h.moduli)
        alpha = group.multiply(group.element_with_abelianization(shift), _commutator_noise(group, rng))
        u, v = _sample_element(group, rng), _sample_element(group, rng)
        if not h.in_subgroup(alpha):
            raise AssertionError("sampled element outside the acting subgroup")
        if h(group.multiply(alpha, v)) - h(group.multiply(alpha, u)) != h(v) - h(u):
            raise NotAHeightFunction("b", f"difference invariance fails for alpha={group.format(alpha)}")

    # (c) an up-neighbour and a down-neighbour at each orbit representative
    if phi is not None:
        steps = _check_set(phi, eta)
        for i, rep in enumerate(h.coset_reps):
            incs = [h.increment(i, g) for g in steps]
            if not any(x > 0 for x in incs) or not any(x < 0 for x in incs):
                raise NotAHeightFunction(
                    "c", f"vertex {group.format(rep)} lacks a neighbour strictly above and one strictly below"
                )
    return h


def _commutator_noise(group: Group, rng: random.Random) -> Element:
    """An element with trivial abelianization, to exercise non-abelian groups."""
    if isinstance(group, (Heisenberg3, FreeGroup)):
        x, y = _sample_element(group, rng, 2), _sample_element(group, rng, 2)
        return group.multiply(group.multiply(x, y), group.multiply(group.inverse(x), group.inverse(y)))
    return group.identity()


# ---------------------------------------------------------------------------
# structural constants


@dataclass
class Connector:
    source: int
    target: int
    walk: Walk
    theta: Fraction
    s: Fraction
    delta: int

    def to_json(self, group: Group) -> dict:
        return {
            "from": self.source,
            "to": self.target,
            "walk": [group.format(v) for v in self.walk.vertices],
            "theta": str(self.theta),
            "ell_length": str(self.s),
            "height_gain": self.delta,
        }


@dataclass
class StructuralConstants:
    d: int
    r: int
    connectors: dict
    theta_min: Fraction
    theta_max: Fraction
    phi_nu: Fraction
    s: int
    psi: Fraction
    a: Fraction
    A: int
    J: int
    extension: dict = field(default_factory=dict)
    downward: dict = field(default_factory=dict)
    transitive: bool = True
    r_search_bound: int = 0

    @property
    def delta_max(self) -> int:
        return max((c.delta for c in self.connectors.values()), default=0)

    def to_json(self, group: Group) -> dict:
        return {
            "d": self.d,
            "r": self.r,
            "r_semantics": "exact (transitive)" if self.transitive else f"<= search bound {self.r_search_bound}",
            "theta_min": str(self.theta_min),
            "theta_max": str(self.theta_max),
            "phi_nu": str(self.phi_nu),
            "s": self.s,
            "psi": str(self.psi),
            "a": str(self.a),
            "A": self.A,
            "J": self.J,
            "extension": {str(k): group.format(v) for k, v in self.extension.items()},
            "downward": {str(k): group.format(v) for k, v in self.downward.items()},
            "connectors": [c.to_json(group) for c in self.connectors.values()],
        }


def ordered_steps(group: Group, phi: WeightFunction, length: LengthFunction, eta=None) -> list:
    """Support of the truncated weight, sorted by length then group order."""
    steps = _check_set(phi, eta)
    return sorted(steps, key=lambda g: (length.value(g), group.sort_key(g)))


def _find_connector(h: HeightStructure, steps: list, phi, length, i: int, j: int, bound: int) -> Optional[Connector]:
    group = h.group
    o = h.coset_reps[i]
    h0 = h(o)
    index = {g: k for k, g in enumerate(steps)}
    for L in range(1, bound + 1):
        best = None
        path = [o]
        seen = {o}

        def dfs(x, depth, coset):
            nonlocal best
            if depth == L:
                if coset != j:
                    return
                top = h(x)
                if any(not h0 < h(y) < top for y in path[1:-1]):
                    return
                walk = Walk(group, tuple(path))
                key = (sum((length.value(g) for g in walk.steps), Fraction(0)), tuple(index[g] for g in walk.steps))
                if best is None or key < best[0]:
                    best = (key, walk)
                return
            for g in steps:
                y = group.multiply(x, g)
                if y in seen or h(y) <= h0:
                    continue
                seen.add(y)
                path.append(y)
                dfs(y, depth + 1, h.next_coset(coset, g))
                path.pop()
                seen.discard(y)

        dfs(o, 0, i)
        if best is not None:
            walk = best[1]
            theta = Fraction(1)
            for g in walk.steps:
                theta *= phi.value(g)
            return Connector(i, j, walk, theta, best[0][0], h(walk.end) - h0)
    return None


def structural_constants(
    h: HeightStructure,
    phi: WeightFunction,
    length: LengthFunction,
    eta=None,
    r_search_bound: int = 6,
) -> StructuralConstants:
    group = h.group
    steps = ordered_steps(group, phi, length, eta)
    if not steps:
        raise SearchExhausted("empty step set")
    d = max(abs(x) for g in steps for x in h.increments(g))

    extension, downward = {}, {}
    for i in range(h.index):
        up = next((g for g in steps if h.increment(i, g) > 0), None)
        down = next((g for g in steps if h.increment(i, g) < 0), None)
        if up is None or down is None:
            raise NotAHeightFunction("c", f"orbit {i} has no upward or downward step")
        extension[i], downward[i] = up, down
    psi = min(phi.value(g) for g in extension.values())
    a = min(length.value(g) for g in extension.values())
    A = max(math.ceil(length.value(g)) for g in extension.values())
    J = math.ceil(max(length.value(g) for g in downward.values()))

    if h.index == 1:
        trivial = Connector(0, 0, Walk(group, (group.identity(),)), Fraction(1), Fraction(0), 0)
        return StructuralConstants(
            d, 0, {(0, 0): trivial}, Fraction(1), Fraction(1), Fraction(1), 0, psi, a, A, J,
            extension, downward, transitive=True,
        )

    connectors = {}
    for i in range(h.index):
        connectors[(i, i)] = Connector(i, i, Walk(group, (h.coset_reps[i],)), Fraction(1), Fraction(0), 0)
        for j in range(h.index):
            if i == j:
                continue
            c = _find_connector(h, steps, phi, length, i, j, r_search_bound)
            if c is None:
                raise SearchExhausted(f"no connector from orbit {i} to orbit {j} within graph length {r_search_bound}")
            connectors[(i, j)] = c
    thetas = [c.theta for c in connectors.values()]
    edges = [phi.value(g) for c in connectors.values() for g in c.walk.steps]
    r = max(c.walk.n for c in connectors.values())
    s = math.ceil(max(c.s for c in connectors.values()))
    return StructuralConstants(
        d, r, connectors, min(thetas), max(thetas), min(edges), s, psi, a, A, J,
        extension, downward, transitive=False, r_search_bound=r_search_bound,
    )
