"""Command-line front end: ``weightedsaw <command> --config run.yaml``.

Exit status: 0 when every requested check passes, 1 when a check fails,
2 for configuration or usage errors, 3 for other runtime errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path
from typing import Optional

from . import enumeration
from .analysis import (
    PropertyReport,
    config_constants,
    continuity_experiment,
    estimate_constants,
    fekete_bounds,
    surgery_soundness,
    surgery_trace,
    truncation_experiment,
    verify_inequalities,
)
from .analysis.surgery import hw_decompose
from .cache import TableCache, dumps, resolve_cache_dir
from .config import RunConfig, read_config
from .errors import CacheCorruption, ConfigError, InsufficientData, WeightedSAWError
from .walks import read_walk_file

COMMANDS = ("enumerate", "estimate", "verify", "continuity", "truncation", "surgery-demo")
EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_ERROR = 0, 1, 2, 3


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="weightedsaw", description="Weighted self-avoiding walks on Cayley graphs.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--config", required=True, help="YAML run configuration")
        s.add_argument("--threads", type=int, default=None, help="worker threads for enumeration")
        s.add_argument("--cache", default=None, help="cache directory (default: $WEIGHTEDSAW_CACHE, else no cache)")
        s.add_argument("--format", choices=("csv", "json"), default=None)
        s.add_argument("--seed-audit", type=float, nargs="?", const=1.0, default=0.0, metavar="FRACTION",
                       help="recompute this fraction of cache hits and compare (bare flag: all)")
        s.add_argument("--out", default=None, help="artifact directory (default: output.dir or ./weightedsaw-out)")
        s.add_argument("--backend", choices=("compiled", "python"), default=None)
        if name == "surgery-demo":
            s.add_argument("--walks", default=None, help="walk file (overrides surgery.walks)")
    return p


class Runner:
    def __init__(self, cfg: RunConfig, args):
        self.cfg = cfg
        self.args = args
        self.threads = args.threads or cfg.threads
        self.fmt = args.format or cfg.output.get("format", "json")
        out = args.out or cfg.output.get("dir") or "weightedsaw-out"
        self.out = Path(out)
        cache_dir = resolve_cache_dir(args.cache)
        self.cache = TableCache(cache_dir, args.seed_audit) if cache_dir else None

    def table(self, ecfg=None) -> enumeration.AggregateTable:
        ecfg = ecfg or self.cfg.enum

        def compute(c):
            return enumeration.enumerate_aggregate(c, threads=self.threads, backend=self.args.backend)

        if self.cache is None:
            return compute(ecfg)
        return self.cache.get_or_compute(ecfg, compute)

    def write(self, name: str, obj=None, rows: Optional[list] = None) -> Path:
        self.out.mkdir(parents=True, exist_ok=True)
        if self.fmt == "csv" and rows is not None:
            path = self.out / f"{name}.csv"
            buf = io.StringIO()
            if rows:
                w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
                w.writeheader()
                w.writerows(rows)
            path.write_text(buf.getvalue())
        else:
            path = self.out / f"{name}.json"
            path.write_text(dumps(obj) + "\n")
        return path

    # commands

    def enumerate(self) -> int:
        t = self.table()
        path = self.write("aggregates", t.to_json(), t.to_rows())
        print(f"enumerated bins 0..{t.m_max} -> {path}")
        return EXIT_OK

    def estimate(self) -> int:
        t = self.table()
        sc = config_constants(self.cfg.enum)
        rep = fekete_bounds(t, self.cfg.enum, sc)
        data = rep.to_json()
        try:
            pt = estimate_constants(t, self.cfg.enum)
            data["point_estimate"] = pt.point_estimate
            data["method"] = pt.method
            data["caveats"] += pt.caveats
        except InsufficientData as exc:
            data["caveats"].append(f"no point estimate: {exc}")
        bridges = dict(rep.bridge_sequence)
        rows = [{"m": m, "sigma_root": v, "bridge_root": bridges.get(m, "")} for m, v in rep.sequence]
        path = self.write("estimate", data, rows)
        print(f"bridge constant >= {rep.best_lower}; connective constant <= {rep.best_upper} -> {path}")
        return EXIT_OK

    def _report(self, name: str, rep: PropertyReport) -> int:
        rows = [
            {"check": c.name, "statement": c.statement, "instances": c.instances, "passed": c.passed,
             "skipped": c.skipped, "worst_slack": c.worst_slack}
            for c in rep.checks
        ]
        path = self.write(name, rep.to_json(), rows)
        for c in rep.checks:
            print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}  ({c.instances} instances, {c.skipped} skipped)")
        print(f"{'all checks passed' if rep.overall else 'some checks FAILED'} -> {path}")
        return EXIT_OK if rep.overall else EXIT_FAIL

    def verify(self) -> int:
        rep = PropertyReport()
        integrity = rep.add("cache_integrity", "cached tables load intact and match audits")
        try:
            t = self.table()
        except CacheCorruption as exc:
            integrity.record(False, None, str(exc))
            return self._report("verify", rep)
        integrity.record(True)
        sc = config_constants(self.cfg.enum)
        full = verify_inequalities(t, self.cfg.enum, sc)
        rep.checks.extend(full.checks)
        rep.notes.extend(full.notes)
        return self._report("verify", rep)

    def continuity(self) -> int:
        sec = self.cfg.continuity
        if not sec:
            raise ConfigError(["continuity: section required for this command"])
        rep = continuity_experiment(self.cfg.phi, sec["psi"], self.cfg.length, sec["length"], self.cfg.height,
                                    sec["m_max"], sec.get("walk_m_max"), threads=self.threads)
        return self._report("continuity", rep)

    def truncation(self) -> int:
        sec = self.cfg.truncation
        if not sec:
            raise ConfigError(["truncation: section required for this command"])
        rep = truncation_experiment(self.cfg.phi, self.cfg.length, self.cfg.height, sec["etas"], sec["m"],
                                    c=self.cfg.raw["run"].get("c"), threads=self.threads)
        return self._report("truncation", rep)

    def surgery_demo(self) -> int:
        sec = self.cfg.surgery or {}
        path = self.args.walks or sec.get("walks")
        sweep = sec.get("max_length")
        if not path and sweep is None:
            raise ConfigError(["surgery.walks: a walk file or surgery.max_length is required (or pass --walks)"])
        walks = read_walk_file(self.cfg.group, path) if path else []
        sc = config_constants(self.cfg.enum)
        traces, rows, ok = [], [], True
        for w in walks:
            entry = {"input": [self.cfg.group.format(v) for v in w.vertices]}
            try:
                dec = hw_decompose(self.cfg.height, w)
                entry["decomposition"] = dec.to_json()
                if dec.k >= 2:
                    tr = surgery_trace(self.cfg.height, w, sc, self.cfg.phi, self.cfg.length)
                    entry["surgery"] = tr.to_json()
                    ok &= tr.ok
                else:
                    entry["surgery"] = None
            except (WeightedSAWError, ValueError) as exc:
                entry["error"] = f"{type(exc).__name__}: {exc}"
                ok = False
            traces.append(entry)
            rows.append({
                "input": w.format(),
                "spans": " ".join(map(str, entry.get("decomposition", {}).get("spans", []))),
                "output": " -> ".join(entry["surgery"]["output"]) if entry.get("surgery") else "",
                "error": entry.get("error", ""),
            })
        data = {"walks": traces, "constants": sc.to_json(self.cfg.group)}
        if sweep is not None:
            # exhaustive audit of every half-space walk up to the given length
            rep = surgery_soundness(self.cfg.enum, sweep)
            data["soundness"] = rep.to_json()
            ok &= rep.overall
            for c in rep.checks:
                print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}  ({c.instances} instances)")
        out = self.write("surgery", data, rows)
        print(f"{len(walks)} walks, {'all traces consistent' if ok else 'some traces FAILED'} -> {out}")
        return EXIT_OK if ok else EXIT_FAIL


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = read_config(args.config)
    except ConfigError as exc:
        for e in exc.errors:
            print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    runner = Runner(cfg, args)
    handler = getattr(runner, args.command.replace("-", "_"))
    try:
        return handler()
    except ConfigError as exc:
        for e in exc.errors:
            print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except CacheCorruption as exc:
        print(f"cache error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except WeightedSAWError as exc:
        print(f"{args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
