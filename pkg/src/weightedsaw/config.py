"""YAML run configurations.

Sections: ``group``, ``weight``, ``length``, ``height`` and ``run``, plus the
optional command sections ``continuity``, ``truncation`` and ``surgery``.
Every problem is reported with its YAML line and dotted field path, and
unknown keys are rejected. See README.md for the full schema.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

import yaml

from .enumeration import EnumConfig, neighbor_table
from .errors import ConfigError, ParseError, SchemaError, WeightedSAWError
from .groups import Group, make_group
from .height import HeightStructure, make_height
from .weights import (
    ConstantLength,
    ExplicitLength,
    ExplicitWeight,
    InverseWeightLength,
    LengthFunction,
    NormLength,
    PowerLawWeight,
    WeightFunction,
    as_fraction,
    nearest_neighbour_weight,
    spanning_threshold,
)

SECTIONS = {
    "group": {"kind", "rank", "max_word_length"},
    "weight": {"kind", "value", "values", "symmetrize", "generator", "exponent", "scale", "extra"},
    "length": {"kind", "value", "off_support", "scale", "values", "default"},
    "height": {"kind", "coefficients", "scale", "moduli", "offsets"},
    "run": {"m_max", "c", "eta", "exactness", "value_mode", "base_vertices", "holder", "node_cap",
            "threads", "r_search_bound"},
    "continuity": {"weight", "length", "m_max", "walk_m_max"},
    "truncation": {"etas", "m"},
    "surgery": {"walks", "max_length"},
    "output": {"dir", "format"},
}
REQUIRED = ("group", "weight", "length", "height", "run")
HOLDER_KEYS = {"epsilon", "C"}


@dataclass
class RunConfig:
    group: Group
    phi: WeightFunction
    length: LengthFunction
    height: HeightStructure
    enum: EnumConfig
    threads: int = 1
    r_search_bound: int = 6
    continuity: Optional[dict] = None
    truncation: Optional[dict] = None
    surgery: Optional[dict] = None
    output: dict = field(default_factory=dict)
    source: Optional[Path] = None
    raw: dict = field(default_factory=dict)


class _Locator:
    """Maps dotted field paths to 1-based YAML line numbers."""

    def __init__(self, text: str):
        self.lines: dict = {}
        try:
            node = yaml.compose(text, Loader=yaml.SafeLoader)
        except yaml.YAMLError:
            node = None
        if node is not None:
            self._walk(node, "")

    def _walk(self, node, path):
        self.lines.setdefault(path, node.start_mark.line + 1)
        if isinstance(node, yaml.MappingNode):
            for k, v in node.value:
                sub = f"{path}.{k.value}" if path else str(k.value)
                self.lines[sub] = k.start_mark.line + 1
                self._walk(v, sub)
        elif isinstance(node, yaml.SequenceNode):
            for i, v in enumerate(node.value):
                self._walk(v, f"{path}[{i}]")

    def where(self, path: str) -> str:
        p = path
        while p and p not in self.lines:
            p = p.rsplit(".", 1)[0] if "." in p else ""
        line = self.lines.get(p)
        return f"line {line}: {path}" if line else path


class _Errors:
    def __init__(self, loc: _Locator):
        self.loc = loc
        self.items: list = []

    def add(self, path: str, msg: str):
        self.items.append(f"{self.loc.where(path)}: {msg}")


def _number(value, path, errs: _Errors, positive=False) -> Optional[Fraction]:
    try:
        f = as_fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        errs.add(path, f"expected a number or fraction string, got {value!r}")
        return None
    if positive and f <= 0:
        errs.add(path, f"must be positive, got {value!r}")
        return None
    return f


def _check_keys(section: dict, allowed: set, path: str, errs: _Errors):
    if not isinstance(section, dict):
        errs.add(path, "expected a mapping")
        return False
    for k in section:
        if k not in allowed:
            errs.add(f"{path}.{k}", f"unknown key (allowed: {', '.join(sorted(allowed))})")
    return True


def _pairs(group: Group, values, path, errs: _Errors) -> dict:
    """Accept {element: value} or [[element, value], ...]."""
    items = values.items() if isinstance(values, dict) else values
    out = {}
    try:
        for i, item in enumerate(items):
            g, v = item
            try:
                el = group.parse(g)
            except ValueError as exc:
                errs.add(f"{path}[{i}]", str(exc))
                continue
            num = _number(v, f"{path}[{i}]", errs)
            if num is not None:
                out[el] = num
    except (TypeError, ValueError):
        errs.add(path, "expected a mapping or a list of [element, value] pairs")
    return out


def _build_weight(group: Group, sec: dict, path: str, errs: _Errors) -> Optional[WeightFunction]:
    if not _check_keys(sec, SECTIONS["weight"], path, errs):
        return None
    kind = sec.get("kind", "nearest_neighbour")
    try:
        if kind == "nearest_neighbour":
            value = _number(sec.get("value", 1), f"{path}.value", errs, positive=True)
            return nearest_neighbour_weight(group, value) if value is not None else None
        if kind == "explicit":
            if "values" not in sec:
                errs.add(path, "explicit weight needs 'values'")
                return None
            table = _pairs(group, sec["values"], f"{path}.values", errs)
            return ExplicitWeight(group, table, symmetrize=bool(sec.get("symmetrize", False)))
        if kind == "power_law":
            if "generator" not in sec or "exponent" not in sec:
                errs.add(path, "power_law weight needs 'generator' and 'exponent'")
                return None
            gen = group.parse(sec["generator"])
            exponent = sec["exponent"]
            if not isinstance(exponent, int) or exponent < 1:
                errs.add(f"{path}.exponent", "must be a positive integer")
                return None
            scale = _number(sec.get("scale", 1), f"{path}.scale", errs, positive=True)
            extra = _pairs(group, sec["extra"], f"{path}.extra", errs) if "extra" in sec else None
            return PowerLawWeight(group, gen, exponent, scale=scale or 1, extra=extra)
    except WeightedSAWError as exc:
        msg = str(exc)
        if "symmetr" in msg.lower() or type(exc).__name__ == "AsymmetricWeight":
            msg = f"weight must be symmetric, phi(g) = phi(g^-1): {msg}"
        errs.add(path, msg)
        return None
    except ValueError as exc:
        errs.add(path, str(exc))
        return None
    errs.add(f"{path}.kind", f"unknown weight kind {kind!r}")
    return None


def _build_length(group: Group, phi: Optional[WeightFunction], sec: dict, path: str, errs: _Errors):
    if not _check_keys(sec, SECTIONS["length"], path, errs):
        return None
    kind = sec.get("kind", "constant_one")
    try:
        if kind == "constant_one":
            return ConstantLength()
        if kind == "constant":
            v = _number(sec.get("value", 1), f"{path}.value", errs, positive=True)
            return ConstantLength(v) if v is not None else None
        if kind == "inverse_weight":
            if phi is None:
                return None
            off = _number(sec.get("off_support", 1), f"{path}.off_support", errs, positive=True)
            return InverseWeightLength(phi, off or 1)
        if kind == "norm":
            v = _number(sec.get("scale", 1), f"{path}.scale", errs, positive=True)
            return NormLength(group, v or 1)
        if kind == "explicit":
            table = _pairs(group, sec.get("values", {}), f"{path}.values", errs)
            default = _build_length(group, phi, sec.get("default", {"kind": "constant_one"}), f"{path}.default", errs)
            return ExplicitLength(group, table, default) if default is not None else None
    except (WeightedSAWError, ValueError) as exc:
        errs.add(path, str(exc))
        return None
    errs.add(f"{path}.kind", f"unknown length kind {kind!r}")
    return None


def _default_eta(phi: WeightFunction, length: LengthFunction, group: Group, budget) -> Optional[Fraction]:
    """No truncation when the length budget already sees finitely many steps; else the spanning threshold."""
    if phi.finite_support:
        return None
    if length.max_power_within(group, phi.generator, budget) is not None:
        return None
    return spanning_threshold(phi, group)


def load_yaml(text: str) -> dict:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"line {mark.line + 1}, column {mark.column + 1}: " if mark else ""
        raise ParseError([f"{where}{getattr(exc, 'problem', None) or exc}"]) from None
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ParseError(["line 1: top level must be a mapping"])
    return data


def parse_config(text: str, source: Optional[Path] = None) -> RunConfig:
    data = load_yaml(text)
    loc = _Locator(text)
    errs = _Errors(loc)
    for k in data:
        if k not in SECTIONS:
            errs.add(str(k), f"unknown section (allowed: {', '.join(sorted(SECTIONS))})")
    for k in REQUIRED:
        if k not in data:
            errs.add(k, "missing required section")
    if errs.items:
        raise SchemaError(errs.items)

    gsec = data["group"]
    group = None
    if _check_keys(gsec, SECTIONS["group"], "group", errs):
        try:
            group = make_group(gsec)
        except (ValueError, TypeError) as exc:
            errs.add("group.kind", str(exc))
    if group is None:
        raise SchemaError(errs.items)

    phi = _build_weight(group, data["weight"], "weight", errs)
    length = _build_length(group, phi, data["length"], "length", errs)
    run = data["run"]
    _check_keys(run, SECTIONS["run"], "run", errs)
    if "m_max" not in run:
        errs.add("run", "missing 'm_max'")
    hsec = data["height"]
    _check_keys(hsec, SECTIONS["height"], "height", errs)
    for name in ("continuity", "truncation", "surgery", "output"):
        if name in data:
            _check_keys(data[name], SECTIONS[name], name, errs)
    if errs.items or phi is None or length is None:
        raise SchemaError(errs.items or ["weight/length could not be built"])

    m_max = run["m_max"]
    if not isinstance(m_max, int) or m_max < 0:
        errs.add("run.m_max", "must be a non-negative integer")
        raise SchemaError(errs.items)
    c = _number(run["c"], "run.c", errs, positive=True) if run.get("c") is not None else None
    eta = _number(run["eta"], "run.eta", errs, positive=True) if run.get("eta") is not None else None
    holder = None
    if "holder" in run:
        hol = run["holder"]
        if _check_keys(hol, HOLDER_KEYS, "run.holder", errs):
            eps = _number(hol.get("epsilon"), "run.holder.epsilon", errs, positive=True)
            C = _number(hol.get("C"), "run.holder.C", errs, positive=True)
            if eps is not None and not 1 <= eps < 2:
                errs.add("run.holder.epsilon", "must lie in [1, 2)")
            holder = (eps, C)
    if errs.items:
        raise SchemaError(errs.items)

    exactness = bool(run.get("exactness", False))
    if eta is None and not exactness:
        try:
            eta = _default_eta(phi, length, group, m_max + (c or 1))
        except WeightedSAWError as exc:
            errs.add("run.eta", f"no default truncation: {exc}")
            raise SchemaError(errs.items)
    check_eta = eta
    if eta is None and not phi.finite_support:
        # locally finite by length: validate against the steps inside the budget
        check_eta = min(neighbor_table(phi, None, length, m_max + (c or 1)).weights)
    try:
        height = make_height(dict(hsec), group, phi, check_eta)
    except WeightedSAWError as exc:
        clause = getattr(exc, "clause", None)
        errs.add("height", f"not a height function{f' (clause {clause})' if clause else ''}: {exc}")
        raise SchemaError(errs.items)
    except (ValueError, TypeError, KeyError) as exc:
        errs.add("height", str(exc))
        raise SchemaError(errs.items)

    bases = None
    if "base_vertices" in run:
        try:
            bases = tuple(group.parse(v) for v in run["base_vertices"])
        except (ValueError, TypeError) as exc:
            errs.add("run.base_vertices", str(exc))
            raise SchemaError(errs.items)
    try:
        enum = EnumConfig(
            group, phi, length, height, m_max, eta=eta, c=c, base_vertices=bases,
            exactness=exactness, value_mode=run.get("value_mode", "rational"),
            node_cap=int(run.get("node_cap", 2_000_000_000)), holder=holder,
        )
    except SchemaError as exc:
        for e in exc.errors:
            path, _, msg = e.partition(": ")
            errs.add(path if path.startswith(("run", "height")) else "run", msg or e)
        raise SchemaError(errs.items)
    except WeightedSAWError as exc:
        errs.add("run", str(exc))
        raise SchemaError(errs.items)

    cfg = RunConfig(
        group, phi, length, height, enum,
        threads=int(run.get("threads", 1)),
        r_search_bound=int(run.get("r_search_bound", 6)),
        output=dict(data.get("output", {})),
        source=source,
        raw=data,
    )
    if "continuity" in data:
        sec = data["continuity"]
        psi = _build_weight(group, sec.get("weight", {}), "continuity.weight", errs)
        l2 = _build_length(group, psi, sec.get("length", {"kind": "constant_one"}), "continuity.length", errs)
        cfg.continuity = {"psi": psi, "length": l2, "m_max": int(sec.get("m_max", m_max)),
                          "walk_m_max": sec.get("walk_m_max")}
    if "truncation" in data:
        sec = data["truncation"]
        etas = [_number(e, f"truncation.etas[{i}]", errs, positive=True) for i, e in enumerate(sec.get("etas", []))]
        if not etas:
            errs.add("truncation.etas", "need at least one truncation level")
        cfg.truncation = {"etas": etas, "m": int(sec.get("m", m_max))}
    if "surgery" in data:
        sec = data["surgery"]
        walks = sec.get("walks")
        if walks is not None and source is not None:
            walks = str((Path(source).parent / walks).resolve())
        cfg.surgery = {"walks": walks, "max_length": sec.get("max_length")}
    if errs.items:
        raise SchemaError(errs.items)
    return cfg


def read_config(path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError([f"{path}: {exc.strerror}"]) from None
    try:
        return parse_config(text, source=path)
    except ConfigError as exc:
        raise type(exc)([f"{path}: {e}" for e in exc.errors]) from None
