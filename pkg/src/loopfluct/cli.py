"""Batch driver: sample loops, run conditioned chains, scaling studies, checks.

Subcommands: sample, chain, study, verify. Configuration comes from a JSON
file plus flag overrides; LOOPFLUCT_THREADS caps the study worker pool.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from .mcmc import ChainConfig, run_chain
from .observables import measure, save_records_csv, scaling_fit
from .sampler import RngStream, TimeGrid, sample_loop, save_loop_binary, save_loop_csv
from .svg import render_loglog
from .verify import run_suite

FIT_OBSERVABLES = ("ann_width", "mlr", "longest_facet", "area_excess")


@dataclass
class StudyConfig:
    T_list: list = field(default_factory=lambda: [16.0, 32.0, 64.0, 128.0])
    n_rule: str = "n = 32*T"
    h_rule: str = "h = T/256"
    chains_per_T: int = 8
    sweeps: int = 52
    burn_in: int = 40
    thin: int = 2
    seed: int = 20240801
    out_dir: str = "study_out"

    def derived(self, T: float) -> tuple[int, float, int]:
        """(n, h, m) for one T: n from n_rule rounded up to a multiple of the
        polygon preset m = round(T^(1/3)); h from h_rule."""
        c = _parse_rule(self.n_rule, "n", "*")
        d = _parse_rule(self.h_rule, "h", "/")
        m = max(3, round(T ** (1.0 / 3.0)))
        n = int(math.ceil(c * T))
        if n % m:
            n += m - n % m
        return n, T / d, m

    def to_dict(self) -> dict:
        return {"T_list": self.T_list, "n_rule": self.n_rule, "h_rule": self.h_rule,
                "chains_per_T": self.chains_per_T, "sweeps": self.sweeps,
                "burn_in": self.burn_in, "thin": self.thin, "seed": self.seed,
                "out_dir": self.out_dir}


def _parse_rule(rule: str, var: str, op: str) -> float:
    """Parse 'n = c*T' or 'h = T/d' style rules."""
    text = rule.replace(" ", "")
    prefix = f"{var}="
    if not text.startswith(prefix):
        raise ValueError(f"rule {rule!r} must look like '{var} = ...'")
    expr = text[len(prefix):]
    if op == "*":
        if not expr.endswith("*T"):
            raise ValueError(f"rule {rule!r} must look like '{var} = c*T'")
        return float(expr[:-2])
    if not expr.startswith("T/"):
        raise ValueError(f"rule {rule!r} must look like '{var} = T/d'")
    return float(expr[2:])


def _pool_size(jobs: int) -> int:
    cap = os.environ.get("LOOPFLUCT_THREADS")
    limit = int(cap) if cap else (os.cpu_count() or 1)
    return max(1, min(jobs, limit))


def cmd_sample(args) -> int:
    os.makedirs(args.out, exist_ok=True)
    grid = TimeGrid(T=args.T, n=args.n)
    for i in range(args.count):
        stream = RngStream(args.seed, i)
        loop = sample_loop(grid, stream)
        stem = os.path.join(args.out, f"loop_{i:04d}")
        save_loop_binary(loop, stem + ".bin", seed=args.seed)
        save_loop_csv(loop, stem + ".csv")
    print(f"wrote {args.count} loops to {args.out}")
    return 0


def _load_json_config(path) -> dict:
    if not path:
        return {}
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def cmd_chain(args) -> int:
    cfg = _load_json_config(args.config)
    T = args.T if args.T is not None else cfg.get("T", 8.0)
    n = args.n if args.n is not None else cfg.get("n", 256)
    h = cfg.get("h", T / 64.0)  # smoke default; studies use T/256
    sweeps = args.sweeps if args.sweeps is not None else cfg.get("sweeps", 200)
    burn_in = cfg.get("burn_in", 50)
    thin = cfg.get("thin", 2)
    seed = args.seed if args.seed is not None else cfg.get("seed", 1)
    stream_id = cfg.get("stream_id", 0)
    chain_cfg = ChainConfig(
        T=T, n=n, h=h,
        area_target=cfg.get("area_target"),
        safety_margin=cfg.get("safety_margin"),
        init_inflation=cfg.get("init_inflation", 0.05))
    os.makedirs(args.out, exist_ok=True)
    records = []

    def sink(loop, sweep, area):
        if sweep <= burn_in:
            return
        if not args.no_dump_loops:
            save_loop_binary(loop, os.path.join(args.out, f"loop_{sweep:06d}.bin"),
                             seed=seed)
        records.append(measure(loop, h, seed=seed, stream_id=stream_id, sweep=sweep))

    summary = run_chain(chain_cfg, sweeps=burn_in + sweeps, thin=thin,
                        rng=RngStream(seed, stream_id), sink=sink)
    save_records_csv(records, os.path.join(args.out, "records.csv"))
    doc = summary.to_json_dict()
    doc.update({"version": __version__, "burn_in": burn_in, "thin": thin,
                "emitted_records": len(records)})
    with open(os.path.join(args.out, "summary.json"), "w", encoding="utf-8") as f:
        json.dump(doc, f, indent=2)
        f.write("\n")
    print(f"chain done: acceptance {summary.acceptance_rate:.3f}, "
          f"iact(area) {summary.iact_area:.2f} sweeps, "
          f"{len(records)} records -> {args.out}")
    recommended = math.ceil(50 * summary.iact_area)
    if burn_in < recommended:
        print(f"note: burn_in {burn_in} is below 50 sweeps per iact unit "
              f"({recommended}); consider rerunning with a larger burn_in")
    return 0


def _study_chain_job(job: tuple) -> tuple[list, dict]:
    T, n, h, sweeps, burn_in, thin, seed, stream_id = job
    cfg = ChainConfig(T=T, n=n, h=h)
    records = []

    def sink(loop, sweep, area):
        if sweep > burn_in:
            records.append(measure(loop, h, seed=seed, stream_id=stream_id,
                                   sweep=sweep))

    summary = run_chain(cfg, sweeps=burn_in + sweeps, thin=thin,
                        rng=RngStream(seed, stream_id), sink=sink)
    return records, summary.to_json_dict()


def run_study(study: StudyConfig) -> dict:
    """Run every chain of the study, merge records, fit the exponents.

    Returns {records, summaries, fits}; refuses to fit with fewer than three
    T values but still produces the records.
    """
    jobs = []
    stream_id = 0
    for T in study.T_list:
        n, h, _m = study.derived(T)
        for _c in range(study.chains_per_T):
            jobs.append((T, n, h, study.sweeps, study.burn_in, study.thin,
                         study.seed, stream_id))
            stream_id += 1  # never reused across chains within one study
    workers = _pool_size(len(jobs))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_study_chain_job, jobs))
    else:
        results = [_study_chain_job(j) for j in jobs]
    records = [r for recs, _s in results for r in recs]
    records.sort(key=lambda r: (r.T, r.stream_id, r.sweep))
    summaries = [s for _r, s in results]

    fits = {}
    if len(set(study.T_list)) >= 3:
        for name in FIT_OBSERVABLES:
            groups = {}
            for (T, n, h, *_rest, sid) in jobs:
                vals = [getattr(r, name) for r in records
                        if r.T == T and r.stream_id == sid]
                if vals:
                    groups.setdefault(T, []).append(sum(vals) / len(vals))
            fits[name] = scaling_fit(groups, rng=RngStream(study.seed, 999_000))
    return {"records": records, "summaries": summaries, "fits": fits}


def cmd_study(args) -> int:
    cfg = _load_json_config(args.config)
    study = StudyConfig(**{**cfg, **{k: v for k, v in {
        "seed": args.seed, "sweeps": args.sweeps,
        "out_dir": args.out}.items() if v is not None}})
    if args.T is not None:
        study.T_list = [args.T]
    os.makedirs(study.out_dir, exist_ok=True)
    result = run_study(study)
    save_records_csv(result["records"], os.path.join(study.out_dir, "records.csv"))
    manifest = {"version": __version__, "config": study.to_dict(),
                "seed": study.seed,
                "fits": {k: f.to_json_dict() for k, f in result["fits"].items()},
                "chain_summaries": result["summaries"]}
    with open(os.path.join(study.out_dir, "scaling.json"), "w", encoding="utf-8") as f:
        json.dump(manifest, f, indent=2)
        f.write("\n")
    if result["fits"]:
        series = []
        for name, fit in result["fits"].items():
            pts = [(math.exp(x), math.exp(y)) for x, y in fit.points]
            series.append({"label": name, "points": pts,
                           "slope": fit.exponent, "intercept": fit.intercept})
        meta = f"loopfluct {__version__} seed={study.seed} config={json.dumps(study.to_dict())}"
        with open(os.path.join(study.out_dir, "scaling.svg"), "w", encoding="utf-8") as f:
            f.write(render_loglog(series, title="observable scaling", metadata=meta))
        for name, fit in result["fits"].items():
            print(f"{name}: exponent {fit.exponent:.4f} "
                  f"[{fit.ci_low:.4f}, {fit.ci_high:.4f}]")
    else:
        print("fit refused: need >= 3 distinct T values (records still written)")
    print(f"{len(result['records'])} records -> {study.out_dir}")
    return 0


def cmd_verify(args) -> int:
    try:
        reports = run_suite(args.suite, args.seed if args.seed is not None else 7)
    except KeyError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        for rep in reports:
            print(rep.to_json_line(), file=out)
    finally:
        if args.out:
            out.close()
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="loopfluct",
                                description="area-conditioned Brownian loop simulations")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("sample", help="write unconditioned loops")
    ps.add_argument("--T", type=float, default=1.0)
    ps.add_argument("--n", type=int, default=1024)
    ps.add_argument("--count", type=int, default=1)
    ps.add_argument("--seed", type=int, default=1)
    ps.add_argument("--out", default="loops_out")
    ps.set_defaults(fn=cmd_sample)

    pc = sub.add_parser("chain", help="run one conditioned chain")
    pc.add_argument("--config", help="JSON config file")
    pc.add_argument("--T", type=float)
    pc.add_argument("--n", type=int)
    pc.add_argument("--sweeps", type=int)
    pc.add_argument("--seed", type=int)
    pc.add_argument("--out", default="chain_out")
    pc.add_argument("--no-dump-loops", action="store_true",
                    help="skip the thinned binary loop dumps")
    pc.set_defaults(fn=cmd_chain)

    pt = sub.add_parser("study", help="scaling study across T")
    pt.add_argument("--config", help="JSON config file")
    pt.add_argument("--T", type=float, help="restrict to a single T")
    pt.add_argument("--sweeps", type=int)
    pt.add_argument("--seed", type=int)
    pt.add_argument("--out")
    pt.set_defaults(fn=cmd_study)

    pv = sub.add_parser("verify", help="run law and inequality checks")
    pv.add_argument("--suite", default="all")
    pv.add_argument("--seed", type=int)
    pv.add_argument("--out", help="write JSON lines here instead of stdout")
    pv.set_defaults(fn=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
