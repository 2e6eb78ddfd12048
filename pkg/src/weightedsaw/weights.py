"""Weight functions, length functions and the checks built on them.

Weights and lengths are exact :class:`fractions.Fraction` values whenever the
inputs are rational; floats only appear as a view (``float(x)``) or inside
rigorous tail bounds of infinite series.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .errors import AsymmetricWeight, EmptySupport, InfiniteStepSet, UnboundedComparison
from .groups import FreeAbelian, FreeGroup, Group, Heisenberg3


def as_fraction(x) -> Fraction:
    """Exact conversion; floats are read through their decimal repr."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not weights")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(str(x).strip())


def fraction_text(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# weight functions


class WeightFunction:
    group: Group
    finite_support: bool = True

    def value(self, g) -> Fraction:
        raise NotImplementedError

    def __call__(self, g) -> Fraction:
        return self.value(g)

    def support(self) -> dict:
        """Finite support as ``{element: value}``."""
        raise UnboundedComparison("weight has infinite support; truncate it first")

    def max_value(self) -> Fraction:
        raise NotImplementedError

    def at_least(self, eta: Fraction) -> dict:
        """All elements with value >= eta (finite for summable weights)."""
        raise NotImplementedError

    def within_length(self, length: "LengthFunction", budget) -> dict:
        """Support elements with ``length <= budget``; raises if not certifiably finite."""
        raise NotImplementedError

    def truncate(self, eta) -> "ExplicitWeight":
        return truncate(self, eta)

    def spec(self) -> dict:
        raise NotImplementedError


class ExplicitWeight(WeightFunction):
    """Finitely supported weight given by an explicit table."""

    finite_support = True

    def __init__(self, group: Group, values: Mapping, symmetrize: bool = False, check_symmetry: bool = True):
        self.group = group
        table = {}
        for g, v in values.items():
            g = group.validate(g) if not isinstance(g, str) else group.parse(g)
            v = as_fraction(v)
            if v <= 0:
                raise ValueError(f"explicit weight values must be positive, got {v} at {g}")
            if group.is_identity(g):
                raise ValueError("the identity can never be in the support")
            table[g] = v
        if symmetrize:
            for g, v in list(table.items()):
                gi = group.inverse(g)
                if gi in table and table[gi] != v:
                    raise AsymmetricWeight(f"phi({group.format(g)})={v} but phi(inverse)={table[gi]}")
                table[gi] = v
        elif check_symmetry:
            bad = asymmetric_pairs(group, table)
            if bad:
                g = bad[0]
                raise AsymmetricWeight(f"phi({group.format(g)}) != phi({group.format(group.inverse(g))})")
        self._values = dict(sorted(table.items(), key=lambda kv: group.sort_key(kv[0])))

    def value(self, g):
        return self._values.get(tuple(g), Fraction(0))

    def support(self):
        return dict(self._values)

    def max_value(self):
        return max(self._values.values(), default=Fraction(0))

    def min_value(self):
        return min(self._values.values(), default=Fraction(0))

    def at_least(self, eta):
        eta = as_fraction(eta)
        return {g: v for g, v in self._values.items() if v >= eta}

    def within_length(self, length, budget):
        if budget is None:
            return dict(self._values)
        budget = as_fraction(budget)
        return {g: v for g, v in self._values.items() if length.value(g) <= budget}

    def spec(self):
        return {
            "kind": "explicit",
            "values": [[self.group.format(g), fraction_text(v)] for g, v in self._values.items()],
        }

    def __repr__(self):
        return f"ExplicitWeight({self.group.tag}, {len(self._values)} elements)"


class PowerLawWeight(WeightFunction):
    """``phi(g^n) = scale * |n|^(-exponent)`` on the cyclic subgroup of ``g``.

    ``extra`` adds finitely many further support elements (it must avoid the
    powers of ``g``); the axis weight of the classic two-dimensional example
    is ``PowerLawWeight(Z2, (0, 1), 2, extra={(1, 0): 1, (-1, 0): 1})``.
    """

    finite_support = False

    def __init__(self, group: Group, generator, exponent: int, scale=1, extra: Optional[Mapping] = None):
        self.group = group
        self.generator = group.validate(generator) if not isinstance(generator, str) else group.parse(generator)
        if group.is_identity(self.generator):
            raise ValueError("power-law generator must not be the identity")
        if int(exponent) != exponent or exponent <= 0:
            raise ValueError("power-law exponent must be a positive integer")
        self.exponent = int(exponent)
        self.scale = as_fraction(scale)
        if self.scale <= 0:
            raise ValueError("power-law scale must be positive")
        self.extra = ExplicitWeight(group, extra or {}, symmetrize=False) if extra else None
        if self.extra is not None:
            for g in self.extra.support():
                if group.log_base(self.generator, g) is not None:
                    raise ValueError(f"extra element {group.format(g)} is a power of the generator")

    def power_value(self, n: int) -> Fraction:
        return self.scale / Fraction(abs(n)) ** self.exponent

    def value(self, g):
        g = tuple(g)
        if self.extra is not None:
            v = self.extra.value(g)
            if v:
                return v
        n = self.group.log_base(self.generator, g)
        if not n:
            return Fraction(0)
        return self.power_value(n)

    def max_value(self):
        m = self.scale
        if self.extra is not None:
            m = max(m, self.extra.max_value())
        return m

    def max_power(self, eta: Fraction) -> int:
        """Largest n >= 0 with ``scale * n^-s >= eta``."""
        eta = as_fraction(eta)
        if eta <= 0:
            raise ValueError("eta must be positive")
        n = int(math.floor(float(self.scale / eta) ** (1.0 / self.exponent))) + 2
        while n > 0 and self.scale < eta * Fraction(n) ** self.exponent:
            n -= 1
        return n

    def powers(self, n_max: int) -> dict:
        out = {}
        for n in range(1, n_max + 1):
            v = self.power_value(n)
            out[self.group.power(self.generator, n)] = v
            out[self.group.power(self.generator, -n)] = v
        return out

    def at_least(self, eta):
        eta = as_fraction(eta)
        out = self.powers(self.max_power(eta))
        if self.extra is not None:
            out.update(self.extra.at_least(eta))
        return out

    def within_length(self, length, budget):
        n_max = None if budget is None else length.max_power_within(self.group, self.generator, as_fraction(budget))
        if n_max is None:
            raise InfiniteStepSet(
                "cannot certify a finite step set: lengths stay bounded along the infinite support; "
                "truncate the weight (set eta)"
            )
        out = {g: v for g, v in self.powers(n_max).items() if length.value(g) <= budget}
        if self.extra is not None:
            out.update(self.extra.within_length(length, budget))
        return out

    def spec(self):
        d = {
            "kind": "power_law",
            "generator": self.group.format(self.generator),
            "exponent": self.exponent,
            "scale": fraction_text(self.scale),
        }
        if self.extra is not None:
            d["extra"] = self.extra.spec()["values"]
        return d

    def __repr__(self):
        return f"PowerLawWeight({self.group.tag}, g={self.group.format(self.generator)}, s={self.exponent})"


def nearest_neighbour_weight(group: Group, value=1) -> ExplicitWeight:
    return ExplicitWeight(group, {g: value for g in group.generators()})


def asymmetric_pairs(group: Group, table: Mapping) -> list:
    return [g for g, v in table.items() if table.get(group.inverse(g), Fraction(0)) != v]


# ---------------------------------------------------------------------------
# length functions


class LengthFunction:
    def value(self, g) -> Fraction:
        raise NotImplementedError

    def __call__(self, g) -> Fraction:
        return self.value(g)

    @property
    def len_min(self) -> Fraction:
        raise NotImplementedError

    def max_power_within(self, group: Group, g, budget: Fraction) -> Optional[int]:
        """Largest n with ``length(g^n) <= budget`` assuming growth along powers; None if unbounded."""
        return None

    def spec(self) -> dict:
        raise NotImplementedError


class ConstantLength(LengthFunction):
    def __init__(self, value=1):
        self.constant = as_fraction(value)
        if self.constant <= 0:
            raise ValueError("length must be positive")

    def value(self, g):
        return self.constant

    @property
    def len_min(self):
        return self.constant

    def spec(self):
        if self.constant == 1:
            return {"kind": "constant_one"}
        return {"kind": "constant", "value": fraction_text(self.constant)}


class InverseWeightLength(LengthFunction):
    """``length = 1 / phi`` on the support; ``off_support`` elsewhere (immaterial for walks)."""

    def __init__(self, weight: WeightFunction, off_support=1):
        self.weight = weight
        self.off_support = as_fraction(off_support)

    def value(self, g):
        w = self.weight.value(g)
        return 1 / w if w else self.off_support

    @property
    def len_min(self):
        return min(1 / self.weight.max_value(), self.off_support)

    def max_power_within(self, group, g, budget):
        w = self.weight
        if isinstance(w, PowerLawWeight) and w.generator == tuple(g):
            # length(g^n) = n^s / scale
            return w.max_power(1 / budget) if budget > 0 else 0
        return None

    def spec(self):
        return {"kind": "inverse_weight"}


class NormLength(LengthFunction):
    """Word-type norm: l1 on Z^d, reduced word length in F_k, |a|+|b|+|2c-ab| on H3."""

    def __init__(self, group: Group, scale=1):
        self.group = group
        self.scale = as_fraction(scale)

    def value(self, g):
        return self.scale * self.group.norm(g)

    @property
    def len_min(self):
        return self.scale

    def max_power_within(self, group, g, budget):
        # the norm of g^n is nondecreasing in |n| for all three families
        n, base = 0, self.value(g)
        if base <= 0:
            return None
        while self.value(group.power(g, n + 1)) <= budget:
            n += 1
        return n

    def spec(self):
        d = {"kind": "norm"}
        if self.scale != 1:
            d["scale"] = fraction_text(self.scale)
        return d


class ExplicitLength(LengthFunction):
    def __init__(self, group: Group, values: Mapping, default: LengthFunction):
        self.group = group
        self.default = default
        self._values = {}
        for g, v in values.items():
            g = group.parse(g) if isinstance(g, str) else group.validate(g)
            v = as_fraction(v)
            if v <= 0:
                raise ValueError("length values must be positive")
            self._values[g] = v

    def value(self, g):
        return self._values.get(tuple(g), None) or self.default.value(g)

    @property
    def len_min(self):
        return min([self.default.len_min, *self._values.values()])

    def max_power_within(self, group, g, budget):
        n = self.default.max_power_within(group, g, budget)
        if n is None:
            return None
        for x, v in self._values.items():
            k = group.log_base(g, x)
            if k is not None and v <= budget:
                n = max(n, abs(k))
        return n

    def spec(self):
        return {
            "kind": "explicit",
            "values": [[self.group.format(g), fraction_text(v)] for g, v in self._values.items()],
            "default": self.default.spec(),
        }


def length_max_on(length: LengthFunction, support: Iterable) -> Fraction:
    return max((length.value(g) for g in support), default=Fraction(0))


def length_min_on(length: LengthFunction, support: Iterable) -> Fraction:
    return min(length.value(g) for g in support)


# ---------------------------------------------------------------------------
# validation


@dataclass
class TotalWeight:
    value: object  # Fraction when exact, float otherwise, math.inf when divergent
    lower: object
    upper: object
    exact: bool
    infinite: bool = False

    @property
    def error(self):
        if self.exact or self.infinite:
            return 0.0
        return float(self.upper) - float(self.lower)


def total_weight(phi: WeightFunction, tail_terms: int = 10_000) -> TotalWeight:
    """Sum of phi over the group: exact for finite tables, bracketed for power laws."""
    if phi.finite_support:
        s = sum(phi.support().values(), Fraction(0))
        return TotalWeight(s, s, s, exact=True)
    assert isinstance(phi, PowerLawWeight)
    extra = sum(phi.extra.support().values(), Fraction(0)) if phi.extra is not None else Fraction(0)
    s = phi.exponent
    if s <= 1:
        return TotalWeight(math.inf, math.inf, math.inf, exact=False, infinite=True)
    N = tail_terms
    partial = math.fsum(float(n) ** -s for n in range(1, N + 1))
    tail_lo = (N + 1) ** (1 - s) / (s - 1)
    tail_hi = N ** (1 - s) / (s - 1)
    sc = float(phi.scale)
    pad = 1e-12
    lo = 2 * sc * (partial + tail_lo) * (1 - pad) + float(extra)
    hi = 2 * sc * (partial + tail_hi) * (1 + pad) + float(extra)
    return TotalWeight((lo + hi) / 2, lo, hi, exact=False)


def truncate(phi: WeightFunction, eta) -> ExplicitWeight:
    """Keep values >= eta, zero the rest."""
    eta = as_fraction(eta)
    if eta <= 0:
        raise ValueError("eta must be positive")
    kept = phi.at_least(eta)
    if not kept:
        raise EmptySupport(f"no element has weight >= {eta}")
    return ExplicitWeight(phi.group, kept)


def _hermite_spans_lattice(vectors: list, d: int) -> bool:
    """Whether integer vectors generate all of Z^d (row-reduce to echelon form)."""
    rows = [list(v) for v in vectors if any(v)]
    pivots = []
    for col in range(d):
        while True:
            nz = [r for r in rows if r[col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            for r in nz[1:]:
                q = r[col] // p[col]
                for j in range(d):
                    r[j] -= q * p[j]
            rows = [r for r in rows if any(r)]
        nz = [r for r in rows if r[col] != 0]
        if not nz:
            return False
        p = nz[0]
        pivots.append(abs(p[col]))
        rows = [r for r in rows if r is not p]
    return all(x == 1 for x in pivots)


def _free_subgroup_is_everything(words: list, k: int) -> bool:
    """Stallings folding: the subgroup generated by ``words`` equals F_k."""
    edges = set()
    fresh = 1
    for w in words:
        cur = 0
        for i, letter in enumerate(w):
            if i == len(w) - 1:
                nxt = 0
            else:
                nxt, fresh = fresh, fresh + 1
            edges.add((cur, letter, nxt) if letter > 0 else (nxt, -letter, cur))
            cur = nxt
    while True:
        seen, merge = {}, None
        for u, a, v in edges:
            for key, t in (((u, a), v), ((v, -a), u)):
                s = seen.setdefault(key, t)
                if s != t:
                    merge = (s, t)
                    break
            if merge:
                break
        if merge is None:
            break
        keep, drop = min(merge), max(merge)
        edges = {(keep if u == drop else u, a, keep if v == drop else v) for u, a, v in edges}
    vertices = {0} | {x for u, _, v in edges for x in (u, v)}
    return vertices == {0} and {a for _, a, _ in edges} == set(range(1, k + 1))


def generates_group(group: Group, elements: Iterable) -> bool:
    elements = [tuple(e) for e in elements]
    if isinstance(group, FreeAbelian):
        return _hermite_spans_lattice(elements, group.d)
    if isinstance(group, Heisenberg3):
        # a subgroup of a nilpotent group is everything iff its abelianization image is
        return _hermite_spans_lattice([group.abelianize(e) for e in elements], 2)
    if isinstance(group, FreeGroup):
        return _free_subgroup_is_everything([e for e in elements if e], group.k)
    raise NotImplementedError(group)


def bfs_witness(group: Group, support: Iterable, targets: Iterable, max_depth: int = 8, node_cap: int = 50_000) -> dict:
    """Express each target as a product of support elements by breadth-first search."""
    support = sorted(set(tuple(s) for s in support), key=group.sort_key)
    targets = [tuple(t) for t in targets]
    ident = group.identity()
    parent = {ident: None}
    frontier = deque([(ident, 0)])
    found = {}
    remaining = set(targets)
    if ident in remaining:
        found[ident] = []
        remaining.discard(ident)
    while frontier and remaining and len(parent) < node_cap:
        x, depth = frontier.popleft()
        if depth >= max_depth:
            continue
        for s in support:
            y = group.multiply(x, s)
            if y in parent:
                continue
            parent[y] = (x, s)
            if y in remaining:
                word, z = [], y
                while parent[z] is not None:
                    z, step = parent[z]
                    word.append(step)
                found[y] = word[::-1]
                remaining.discard(y)
            frontier.append((y, depth + 1))
    return found


@dataclass
class ValidationReport:
    symmetric: bool
    summable: str  # "proved" | "disproved" | "unknown"
    total_weight: TotalWeight
    spans: bool
    witness: dict
    messages: list = field(default_factory=list)

    def to_json(self, group: Group) -> dict:
        tw = self.total_weight
        return {
            "symmetric": self.symmetric,
            "summable": self.summable,
            "total_weight": None if tw.infinite else float(tw.value),
            "total_weight_bounds": [None if tw.infinite else float(tw.lower), None if tw.infinite else float(tw.upper)],
            "spans": self.spans,
            "witness": {group.format(k): [group.format(s) for s in v] for k, v in self.witness.items()},
            "messages": list(self.messages),
        }


def validate_weight(phi: WeightFunction, group: Group, gen_set: Optional[Iterable] = None) -> ValidationReport:
    gen_set = list(gen_set) if gen_set is not None else group.generators()
    messages = []
    if phi.finite_support:
        table = phi.support()
        bad = asymmetric_pairs(group, table)
        symmetric = not bad
        if bad:
            messages.append(f"asymmetric at {group.format(bad[0])}")
    else:
        symmetric = True
        if phi.extra is not None and asymmetric_pairs(group, phi.extra.support()):
            symmetric = False
            messages.append("extra part is asymmetric")
    tw = total_weight(phi)
    summable = "disproved" if tw.infinite else "proved"
    span_set = _spanning_support(phi, group)
    spans = span_set is not None
    span_set = span_set or []
    witness = bfs_witness(group, span_set, gen_set) if spans else {}
    missing = [g for g in gen_set if tuple(g) not in witness]
    if spans and missing:
        messages.append(f"{len(missing)} generator witnesses beyond the BFS bound")
    if not spans:
        messages.append("support does not generate the group")
    return ValidationReport(symmetric, summable, tw, spans, witness, messages)


def _spanning_support(phi: WeightFunction, group: Group) -> Optional[list]:
    # smallest spanning truncation on the grid, so infinite supports stay cheap
    if phi.finite_support:
        sup = list(phi.support())
        return sup if generates_group(group, sup) else None
    try:
        return list(phi.at_least(spanning_threshold(phi, group, max_k=20)))
    except EmptySupport:
        return None


def spans(phi: WeightFunction, group: Group) -> bool:
    return _spanning_support(phi, group) is not None


def spanning_threshold(phi: WeightFunction, group: Group, gen_set=None, max_k: int = 40) -> Fraction:
    """Largest grid value ``eta = phi_max * 2^-k`` (k <= 40) whose truncation still spans."""
    eta0 = phi.max_value()
    for k in range(max_k + 1):
        eta = eta0 / 2**k
        if generates_group(group, phi.at_least(eta)):
            return eta
    raise EmptySupport("no truncation on the grid spans the group")


# ---------------------------------------------------------------------------
# walks


def weight_of_walk(phi: WeightFunction, walk) -> Fraction:
    w = Fraction(1)
    for s in walk.steps:
        v = phi.value(s)
        if not v:
            return Fraction(0)
        w *= v
    return w


def length_of_walk(length: LengthFunction, walk) -> Fraction:
    return sum((length.value(s) for s in walk.steps), Fraction(0))


# ---------------------------------------------------------------------------
# distances


def _finite_support(phi: WeightFunction) -> dict:
    if not phi.finite_support:
        raise UnboundedComparison(f"{phi!r} has infinite support; compare truncations instead")
    return phi.support()


def sup_distance(phi: WeightFunction, psi: WeightFunction) -> Fraction:
    union = set(_finite_support(phi)) | set(_finite_support(psi))
    return max((abs(phi.value(g) - psi.value(g)) for g in union), default=Fraction(0))


def pair_distance(p1, p2) -> Fraction:
    """Sum of the two relative-difference suprema over the union of supports; lies in [0, 2]."""
    (phi, l1), (psi, l2) = p1, p2
    union = set(_finite_support(phi)) | set(_finite_support(psi))
    dw = Fraction(0)
    dl = Fraction(0)
    for g in union:
        a, b = phi.value(g), psi.value(g)
        dw = max(dw, abs(a - b) / (a + b))
        x, y = l1.value(g), l2.value(g)
        dl = max(dl, abs(x - y) / (x + y))
    return dw + dl


# ---------------------------------------------------------------------------
# Hölder condition


@dataclass
class HolderReport:
    epsilon: float
    C: float
    holds_on_checked_set: bool
    worst_ratio: float
    counterexample: Optional[tuple] = None
    checked: int = 0
    analytic: Optional[str] = None  # "holds" | "fails" | None
    analytic_sup: Optional[float] = None
    scope: str = "checked subset"

    @property
    def holds(self) -> bool:
        if self.analytic is not None:
            return self.analytic == "holds" and self.holds_on_checked_set
        return self.holds_on_checked_set

    def to_json(self, group: Group) -> dict:
        return {
            "epsilon": self.epsilon,
            "C": self.C,
            "holds_on_checked_set": self.holds_on_checked_set,
            "worst_ratio": self.worst_ratio,
            "counterexample": None if self.counterexample is None else group.format(self.counterexample),
            "checked": self.checked,
            "analytic": self.analytic,
            "analytic_sup": self.analytic_sup,
            "scope": self.scope,
        }


def _holder_ratio(dh: int, ell: Fraction, eps: float) -> float:
    if dh == 0:
        return 0.0
    return abs(dh) / float(ell) ** eps


def _analytic_power_sup(phi: PowerLawWeight, length: LengthFunction, unit_dh: int, eps: float):
    """Supremum over n of |n * unit_dh| / length(g^n)^eps, or None when no closed form applies."""
    if unit_dh == 0:
        return 0.0
    g, group = phi.generator, phi.group
    if isinstance(length, ConstantLength):
        return math.inf
    if isinstance(length, InverseWeightLength) and length.weight is phi:
        if phi.exponent * eps < 1:
            return math.inf
        return abs(unit_dh) * float(phi.scale) ** eps
    if isinstance(length, NormLength):
        if isinstance(group, FreeGroup):
            core = len(group.power(g, 2)) - len(g)
            prefix = (len(g) - core) // 2
            q = core * float(length.scale)
            p = 2 * prefix * float(length.scale)
            best = max(abs(unit_dh) * n / (p + n * q) ** eps for n in range(1, 10_001))
            if eps == 1:
                best = max(best, abs(unit_dh) / q)
            return best
        # l1 and the H3 norm are linear along powers
        return abs(unit_dh) / float(length.value(g)) ** eps
    return None


def check_holder(phi: WeightFunction, length: LengthFunction, height, epsilon, C, eta=None) -> HolderReport:
    """Check |h(u) - h(u g)| <= C * length(g)^epsilon on supp(phi^eta), for every coset of u."""
    eps = float(epsilon)
    C = float(C)
    if not 1 <= eps < 2:
        raise ValueError("epsilon must lie in [1, 2)")
    if C <= 0:
        raise ValueError("C must be positive")
    if phi.finite_support and eta is None:
        checked = phi.support()
    else:
        if eta is None:
            raise ValueError("eta is required to pick a finite check set for an infinite support")
        checked = phi.at_least(eta)
        if not phi.finite_support and phi.extra is not None:
            checked.update(phi.extra.support())
    worst, counter = 0.0, None
    for g in sorted(checked, key=lambda x: (phi.group.norm(x), phi.group.sort_key(x))):
        r = max(_holder_ratio(dh, length.value(g), eps) for dh in height.increments(g))
        if r > worst:
            worst = r
        if r > C * (1 + 1e-12) and counter is None:
            counter = g
    report = HolderReport(eps, C, counter is None, worst, counter, len(checked))
    if not phi.finite_support and height.index == 1:
        unit = height.increments(phi.generator)[0]
        sup = _analytic_power_sup(phi, length, unit, eps)
        if sup is not None:
            report.analytic_sup = sup
            extra_ok = True
            if phi.extra is not None:
                extra_ok = all(
                    max(_holder_ratio(dh, length.value(g), eps) for dh in height.increments(g)) <= C * (1 + 1e-12)
                    for g in phi.extra.support()
                )
            report.analytic = "holds" if sup <= C * (1 + 1e-12) and extra_ok else "fails"
            report.scope = "whole support (closed form)"
    elif phi.finite_support:
        report.scope = "whole support (finite)"
    return report


def holder_constant_from_growth(d: int, C1, epsilon) -> float:
    """Constant C = d * C1^-eps obtained when length(v) >= C1 * dist(v)^(1/eps) and heights move <= d per edge."""
    return d * float(C1) ** (-float(epsilon))
