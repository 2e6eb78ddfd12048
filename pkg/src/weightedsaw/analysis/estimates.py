"""Certified bounds and point estimates for the connective and bridge constants."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..enumeration import AggregateTable, EnumConfig, certify_truncation_exactness
from ..errors import ConfigMismatch, InsufficientData
from ..height import StructuralConstants
from ..weights import ConstantLength, as_fraction, total_weight

ROUND = 1e-12  # outward rounding applied to every floating root


def root_lower(x: Fraction, n) -> float:
    if x <= 0:
        return 0.0
    return math.exp(_log(x) / float(n)) * (1 - ROUND)


def root_upper(x: Fraction, n) -> float:
    if x <= 0:
        return 0.0
    return math.exp(_log(x) / float(n)) * (1 + ROUND)


def _log(x: Fraction) -> float:
    # logs of huge rationals without float overflow
    return math.log(x.numerator) - math.log(x.denominator)


@dataclass
class Bound:
    m: int
    value: float
    method: str


@dataclass
class EstimateReport:
    sequence: list  # (m, w(sigma_m)^(1/m))
    bridge_sequence: list  # (m, w(beta_m)^(1/m))
    lower_bounds: list  # Bound objects for the bridge constant
    upper_bounds: list  # Bound objects for the connective constant
    point_estimate: Optional[float] = None
    method: str = ""
    caveats: list = field(default_factory=list)

    @property
    def best_lower(self) -> Optional[float]:
        return max((b.value for b in self.lower_bounds), default=None)

    @property
    def best_upper(self) -> Optional[float]:
        return min((b.value for b in self.upper_bounds), default=None)

    def to_json(self) -> dict:
        return {
            "sequence": [[m, v] for m, v in self.sequence],
            "bridge_sequence": [[m, v] for m, v in self.bridge_sequence],
            "lower_bounds": [{"m": b.m, "value": b.value, "method": b.method} for b in self.lower_bounds],
            "upper_bounds": [{"m": b.m, "value": b.value, "method": b.method} for b in self.upper_bounds],
            "best_lower": self.best_lower,
            "best_upper": self.best_upper,
            "point_estimate": self.point_estimate,
            "method": self.method,
            "caveats": list(self.caveats),
        }


# ---------------------------------------------------------------------------
# applicability of the two supermultiplicative forms


def integer_lengths(cfg: EnumConfig) -> bool:
    return all(l.denominator == 1 for l in cfg.step_table().lengths)


def plain_form_applies(cfg: EnumConfig, table: AggregateTable) -> bool:
    """Exact supermultiplicativity needs a transitive height, integral step lengths and unit bins."""
    return cfg.height.index == 1 and table.c == 1 and integer_lengths(cfg)


def concatenation_constant(psi, a, A, c=None, q=None) -> Fraction:
    """C1 = ceil(c/a) * min(1, psi)^(-ceil(q/a)); the defaults (c = 2A, q = A) give the constant for bridge pairs."""
    psi, a = as_fraction(psi), as_fraction(a)
    c = 2 * A if c is None else as_fraction(c)
    q = A if q is None else as_fraction(q)
    return math.ceil(as_fraction(c) / a) * min(Fraction(1), psi) ** (-math.ceil(as_fraction(q) / a))


def config_constants(cfg: EnumConfig) -> StructuralConstants:
    """Structural constants for the steps the enumeration actually uses."""
    from ..height import structural_constants

    eta = cfg.eta
    if eta is None and not cfg.phi.finite_support:
        eta = min(cfg.step_table().weights)
    return structural_constants(cfg.height, cfg.phi, cfg.length, eta)


def total_step_weight(cfg: EnumConfig) -> Fraction:
    return sum(cfg.step_table().weights, Fraction(0))


def _length_min(cfg: EnumConfig) -> Fraction:
    return min(cfg.step_table().lengths)


# ---------------------------------------------------------------------------
# bounds


def fekete_bounds(table: AggregateTable, cfg: EnumConfig, constants: Optional[StructuralConstants] = None) -> EstimateReport:
    """Certified lower bounds on the bridge constant and upper bounds on the connective constant."""
    if table.m_max < 3:
        raise InsufficientData("need at least three nonzero bins")
    if table.config_hash and table.config_hash != cfg.config_hash():
        raise ConfigMismatch("table was produced by a different configuration")
    lower, upper, caveats = [], [], []
    bridges = [table.bridge_weight(m) for m in range(table.m_max + 1)]
    if plain_form_applies(cfg, table):
        for m in range(1, table.m_max + 1):
            lower.append(Bound(m, root_lower(bridges[m], m), "supermultiplicative"))
    if table.c == cfg.A:
        psi = constants.psi if constants else None
        a = constants.a if constants else None
        if psi is None:
            sc = config_constants(cfg)
            psi, a = sc.psi, sc.a
        C = concatenation_constant(psi, a, cfg.A)
        for m in range(0, table.m_max + 1):
            lower.append(Bound(m, root_lower(bridges[m] / C, m + cfg.A), "shifted supermultiplicative"))
    else:
        caveats.append("bin width exceeds A: the shifted bridge bound is not available")

    sigmas = [table.sigma_weight(m) for m in range(table.m_max + 1)]
    constant_one = isinstance(cfg.length, ConstantLength) and cfg.length.constant == 1 and table.c == 1
    if constant_one:
        for m in range(1, table.m_max + 1):
            upper.append(Bound(m, root_upper(sigmas[m], m), "submultiplicative"))
    lmin = _length_min(cfg)
    if cfg.phi.finite_support or cfg.eta is not None:
        W = total_step_weight(cfg)
        upper.append(Bound(0, max(1.0, root_upper(W, lmin)), "total weight"))
        if not cfg.phi.finite_support:
            caveats.append("bounds refer to the truncated weight")
    else:
        tw = total_weight(cfg.phi)
        if tw.infinite:
            caveats.append("total weight is infinite: no total-weight upper bound")
        else:
            upper.append(Bound(0, max(1.0, math.exp(math.log(tw.upper) / float(lmin)) * (1 + ROUND)), "total weight"))

    seq = [(m, root_lower(sigmas[m], m)) for m in range(1, table.m_max + 1) if sigmas[m] > 0]
    bseq = [(m, root_lower(bridges[m], m)) for m in range(1, table.m_max + 1) if bridges[m] > 0]
    return EstimateReport(seq, bseq, lower, upper, caveats=caveats)


def estimate_constants(table: AggregateTable, cfg: Optional[EnumConfig] = None) -> EstimateReport:
    """Consecutive-ratio point estimate (mean of the last three ratios); not a certified value."""
    if table.m_max < 4:
        raise InsufficientData("need at least four bins")
    sig = [table.sigma_weight(m) for m in range(table.m_max + 1)]
    bri = [table.bridge_weight(m) for m in range(table.m_max + 1)]
    ratios = [float(sig[m + 1] / sig[m]) for m in range(1, table.m_max) if sig[m] > 0]
    if len(ratios) < 3:
        raise InsufficientData("too few positive bins for a ratio estimate")
    est = sum(ratios[-3:]) / 3
    caveats = []
    if cfg is None or cfg.holder is None:
        caveats.append("no height certificate: the sequence defines a limsup only")
    seq = [(m, root_lower(sig[m], m)) for m in range(1, table.m_max + 1) if sig[m] > 0]
    bseq = [(m, root_lower(bri[m], m)) for m in range(1, table.m_max + 1) if bri[m] > 0]
    rep = EstimateReport(seq, bseq, [], [], est, "mean of last three consecutive ratios", caveats)
    rep.ratios = ratios
    return rep


# ---------------------------------------------------------------------------
# property reports


@dataclass
class Check:
    name: str
    statement: str
    instances: int = 0
    passed: bool = True
    worst_slack: Optional[float] = None
    skipped: int = 0
    failures: list = field(default_factory=list)

    def record(self, ok: bool, slack: Optional[float] = None, detail=None):
        self.instances += 1
        if slack is not None and (self.worst_slack is None or slack < self.worst_slack):
            self.worst_slack = slack
        if not ok:
            self.passed = False
            if len(self.failures) < 10:
                self.failures.append(detail)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "statement": self.statement,
            "instances": self.instances,
            "passed": self.passed,
            "worst_slack": self.worst_slack,
            "skipped": self.skipped,
            "failures": [str(f) for f in self.failures],
        }


@dataclass
class PropertyReport:
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, statement: str) -> Check:
        c = Check(name, statement)
        self.checks.append(c)
        return c

    def get(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def to_json(self) -> dict:
        return {"overall": self.overall, "checks": [c.to_json() for c in self.checks], "notes": list(self.notes)}


def _slack(lhs, rhs) -> float:
    return float(rhs) - float(lhs)


def holder_violations(table: AggregateTable, epsilon, C) -> list:
    """Lengths at which some enumerated walk moves further in height than C * length^epsilon."""
    eps, C = as_fraction(epsilon), as_fraction(C)
    bad = []
    for ell, dh in table.maxdh.items():
        if ell == 0:
            if dh != 0:
                bad.append((ell, dh))
            continue
        if eps == 1:
            ok = dh <= C * ell
        else:
            ok = dh <= float(C) * float(ell) ** float(eps) * (1 + 1e-12)
        if not ok:
            bad.append((ell, dh))
    return bad


def verify_inequalities(table: AggregateTable, cfg: EnumConfig, constants: Optional[StructuralConstants] = None) -> PropertyReport:
    """Run every finite-scale inequality that the table and configuration allow."""
    if table.config_hash and table.config_hash != cfg.config_hash():
        raise ConfigMismatch("table was produced by a different configuration")
    sc = constants or config_constants(cfg)
    rep = PropertyReport()
    M = table.m_max
    bases = range(len(table.base_vertices))

    chain = rep.add("inclusion_chain", "bridge weight <= half-space weight <= SAW weight, per bin and base vertex")
    for m in range(M + 1):
        for b in bases:
            bw, hw, sw = table.bridge_weight(m, b), table.halfspace_weight(m, b), table.sigma_weight(m, b)
            bc, hc, scount = table.bridge_count(m, b), table.halfspace_count(m, b), table.sigma_count(m, b)
            chain.record(bw <= hw <= sw and bc <= hc <= scount, _slack(bw, sw), (m, b))

    inv = rep.add("translation_invariance", "SAW aggregates do not depend on the base vertex")
    inv.record(table.translation_invariant())

    if plain_form_applies(cfg, table):
        sup = rep.add("bridge_supermultiplicativity", "w(beta_{m+n}) >= w(beta_m) w(beta_n)")
        for m in range(1, M + 1):
            for n in range(1, M + 1 - m):
                lhs, rhs = table.bridge_weight(m + n), table.bridge_weight(m) * table.bridge_weight(n)
                sup.record(lhs >= rhs, _slack(rhs, lhs), (m, n))
        dbl = rep.add("doubling_monotone", "w(beta_n)^(1/n) is non-decreasing along n, 2n, 4n, ...")
        for start in range(1, M + 1):
            n = start
            while 2 * n <= M:
                a, b2 = table.bridge_weight(n), table.bridge_weight(2 * n)
                dbl.record(b2 >= a * a, _slack(a * a, b2), (n, 2 * n))
                n *= 2
    else:
        rep.notes.append("plain supermultiplicativity not applicable (orbits, fractional lengths or wide bins)")

    if table.c == cfg.A:
        C = concatenation_constant(sc.psi, sc.a, cfg.A)
        shifted = rep.add("shifted_supermultiplicativity", "w(beta_m) w(beta_n) <= C w(beta_{m+n+A}) with the interval-lemma constant")
        for m in range(M + 1):
            for n in range(M + 1 - m - cfg.A):
                lhs = table.bridge_weight(m) * table.bridge_weight(n)
                rhs = C * table.bridge_weight(m + n + cfg.A)
                shifted.record(lhs <= rhs, _slack(lhs, rhs), (m, n))

        inter = rep.add("interval_lemma", "w(beta_{p,c}(v)) <= C1 w(beta_{p+q,A}(v)) for q >= c - A")
        if table.hist is not None:
            for c_mult in (1, 2):
                c = c_mult * cfg.A
                q = c - cfg.A
                C1 = concatenation_constant(sc.psi, sc.a, cfg.A, c=c, q=q)
                for p in range(M + 1):
                    if p + c > M + table.c or p + q > M:
                        continue
                    for b in bases:
                        lhs = table.query(p, c, b)["bridge"][1]
                        rhs = C1 * table.bridge_weight(p + q, b)
                        inter.record(lhs <= rhs, _slack(lhs, rhs), (p, c, b))

        incl = rep.add("bin_width_inclusion", "beta_{m,A}(v) <= beta_{m,c}(v) <= sum_i beta_{m+i,A}(v), 0 <= i <= ceil(c - A)")
        if table.hist is not None:
            for c in (Fraction(cfg.A), Fraction(2 * cfg.A + 1, 2), Fraction(cfg.A + 1), Fraction(2 * cfg.A)):
                k = math.ceil(c - cfg.A)
                for m in range(M + 1):
                    if m + c > M + table.c or m + k > M:
                        continue
                    for b in bases:
                        mid = table.query(m, c, b)["bridge"][1]
                        low = table.bridge_weight(m, b)
                        high = sum((table.bridge_weight(m + i, b) for i in range(k + 1)), Fraction(0))
                        incl.record(low <= mid <= high, _slack(mid, high), (m, c, b))

    W = total_step_weight(cfg)
    lmin = _length_min(cfg)
    tot = rep.add("total_weight_bound", "w(sigma_{m,c}) <= sum over step counts n < (m+c)/l_min of w(Gamma)^n")
    for m in range(M + 1):
        nmax = math.ceil((m + table.c) / lmin) - 1
        rhs = sum((W ** i for i in range(nmax + 1)), Fraction(0))
        lhs = table.sigma_weight(m)
        tot.record(lhs <= rhs, _slack(lhs, rhs), m)

    est = fekete_bounds(table, cfg, sc)
    order = rep.add("bridge_below_connective", "best certified bridge lower bound <= best certified connective upper bound")
    if est.best_lower is not None and est.best_upper is not None:
        order.record(est.best_lower <= est.best_upper, est.best_upper - est.best_lower)
    else:
        order.skipped += 1
    cap = rep.add("connective_below_total_weight", "bridge lower bound <= max(1, w(Gamma)^(1/l_min))")
    if est.best_lower is not None and (cfg.phi.finite_support or cfg.eta is not None):
        top = max(1.0, root_upper(W, lmin))
        cap.record(est.best_lower <= top, top - est.best_lower)

    if isinstance(cfg.length, ConstantLength) and cfg.length.constant == 1 and table.c == 1 and est.best_lower:
        L = est.best_lower
        above = rep.add("bridge_upper_bound", "w(beta_n(v)) <= beta^n (beta/phi_nu)^r, with beta replaced by its certified lower bound")
        for n in range(1, M + 1):
            for b in bases:
                lhs = float(table.bridge_weight(n, b))
                rhs = L ** n * (L / float(sc.phi_nu)) ** sc.r
                if lhs <= rhs * (1 + 1e-9):
                    above.record(True, rhs - lhs)
                else:
                    above.skipped += 1  # inconclusive: the surrogate is too small, not a failure

    if cfg.holder is not None:
        eps, C = cfg.holder
        hol = rep.add("height_along_walks", "|h(pi_n) - h(pi_0)| <= C l(pi)^eps for every enumerated walk")
        bad = holder_violations(table, eps, C)
        for ell in table.maxdh:
            hol.record(not any(b[0] == ell for b in bad), None, ell)

    if cfg.certificate is not None:
        cert = rep.add("truncation_certificate", "the truncation level is at or below the certified rho")
        cert.record(cfg.certificate.covers(cfg.eta), None, cfg.certificate.to_json())
    return rep
