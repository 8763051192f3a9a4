"""``xint`` command line.

Exit codes: 0 ok / pass, 1 verification failed, 2 bad input, 3 search budget
exceeded, 4 notable counterexample candidate.  Machine output goes to stdout
(or ``--out``); logs go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import chordal as ch
from . import compression as cp
from . import search as se
from . import theorems as th
from .families import enumerate_independent, family_from_json, mu, star
from .graph import Graph, parse_spec

log = logging.getLogger("xint")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET, EXIT_NOTABLE = 0, 1, 2, 3, 4


class InputError(ValueError):
    pass


def _load_graph(args) -> Graph:
    if bool(args.graph) == bool(getattr(args, "graph_json", None)):
        raise InputError("give exactly one of --graph or --graph-json")
    if args.graph:
        return parse_spec(args.graph)
    return Graph.from_json(Path(args.graph_json).read_text())


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text + ("" if text.endswith("\n") else "\n"))
    else:
        sys.stdout.write(text + ("" if text.endswith("\n") else "\n"))


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def cmd_enumerate(args) -> int:
    g = _load_graph(args)
    if args.star is not None:
        fam = star(g, args.r, args.star - 1)
    else:
        fam = enumerate_independent(g, args.r)
    if args.count_only:
        _emit(args, str(len(fam)))
    else:
        _emit(args, _dump({"graph": g.to_json(), "r": args.r, "count": len(fam), "family": fam.as_lists()}))
    return EXIT_OK


def cmd_mu(args) -> int:
    g = _load_graph(args)
    res = mu(g)
    _emit(args, _dump({"mu": res.mu, "witness": [v + 1 for v in range(g.n) if res.witness >> v & 1]}))
    return EXIT_OK


def cmd_search(args) -> int:
    g = _load_graph(args)
    fam = enumerate_independent(g, args.r)
    if args.intersecting:
        res = se.max_intersecting(fam, budget=args.budget)
        out = res.to_json(fam)
        if args.enumerate_optima:
            opts = se.enumerate_max_intersecting(fam, budget=args.budget)
            out["optima"] = [o.as_lists() for o in opts[: args.limit]]
            out["count"] = len(opts)
            out["truncated"] = len(opts) > args.limit
    else:
        res = se.max_cross_sum(fam, args.k, engine=args.engine, budget=args.budget)
        out = res.to_json(fam)
        if args.enumerate_optima:
            opt = se.enumerate_optima(fam, args.k, limit=args.limit, engine=args.engine, budget=args.budget)
            out["optima"] = [lab.to_json(fam) for lab in opt.labelings]
            out["count"] = len(opt.labelings)
            out["truncated"] = opt.truncated
    if not args.stable:
        out["nodes"] = res.nodes
    _emit(args, _dump(out))
    return EXIT_OK


def _sizes(text: str | None) -> list[int]:
    if not text:
        raise InputError("--sizes is required")
    return [int(x) for x in text.split(",") if x.strip()]


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise InputError(f"--{name.replace('_', '-')} is required for this theorem")


def run_theorem(args) -> th.TheoremReport:
    name, b = args.theorem, args.budget
    if name == "hilton":
        _need(args, "n", "r", "k")
        return th.verify_hilton(args.n, args.r, args.k, budget=b)
    if name == "borg-leader":
        _need(args, "n", "r", "k")
        return th.verify_borg_leader(args.n, args.r, args.k, budget=b)
    if name == "union-cliques":
        _need(args, "r", "k")
        return th.verify_union_cliques(_sizes(args.sizes), args.r, args.k, budget=b)
    if name == "chordal":
        _need(args, "r")
        if args.graph or args.graph_json:
            g = _load_graph(args)
        else:
            _need(args, "n")
            g = ch.random_chordal(args.n, args.density, args.seed)
        return th.verify_chordal(g, args.r, budget=b)
    if name == "cycle":
        _need(args, "n", "r")
        return th.verify_cycle(args.n, args.r, budget=b)
    if name == "hst":
        _need(args, "r")
        return th.verify_hst(_sizes(args.sizes), args.r, budget=b)
    if name == "ekr":
        _need(args, "n", "r")
        return th.verify_ekr(args.n, args.r, budget=b)
    if name == "bollobas-leader":
        _need(args, "n", "r")
        return th.verify_bollobas_leader(args.n, args.r, budget=b)
    if name == "mu-lemma":
        return th.verify_mu_lemma(args.seeds, n_max=args.n_max or 10, start=args.seed)
    if name == "conjecture":
        return th.probe_conjecture(args.n_max or 8, args.seeds, r_rule=args.r_rule, budget=b, start=args.seed)
    raise InputError(f"unknown theorem {name!r}")


def cmd_verify(args) -> int:
    rep = run_theorem(args)
    if args.format == "csv":
        _emit(args, _csv_text([rep]))
    else:
        _emit(args, _dump(rep.to_dict(stable=args.stable)))
    if not rep.passed:
        return EXIT_FAIL
    return EXIT_NOTABLE if rep.notable else EXIT_OK


def _csv_text(reports) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=th.CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for rep in reports:
        writer.writerow(rep.csv_row())
    return buf.getvalue()


def _grid_jobs(name: str, opts: dict, seed: int, budget: int) -> list:
    if name in th.GRIDS:
        opts = {k: tuple(v) if isinstance(v, list) and k != "pairs" else v for k, v in opts.items()}
        if "pairs" in opts:
            opts["pairs"] = [tuple(p) for p in opts["pairs"]]
        return [(fn, a + (budget,)) for fn, a in th.GRIDS[name](**opts)]
    extra = set(opts) - {"seeds", "n_max"}
    if extra:
        raise InputError(f"unknown option(s) for grid {name!r}: {sorted(extra)}")
    seeds = int(opts.get("seeds", 300))
    if name == "mu-lemma":
        n_max = int(opts.get("n_max", 10))
        return [(th.verify_mu_lemma, (1, n_max, s)) for s in range(seed, seed + seeds)]
    if name == "conjecture":
        n_max = int(opts.get("n_max", 8))
        return [(th.probe_conjecture, (n_max, 1, "all", budget, s)) for s in range(seed, seed + seeds)]
    raise InputError(f"unknown grid {name!r}")


def _run_job(job):
    fn, a = job
    return fn(*a)


def _grid_options(args) -> dict:
    opts: dict = {}
    if args.config:
        try:
            import tomllib
        except ModuleNotFoundError:  # Python < 3.11
            import tomli as tomllib
        with open(args.config, "rb") as fh:
            opts.update(tomllib.load(fh))
    for key in ("n_max", "k_max", "seeds"):
        val = getattr(args, key)
        if val is not None:
            opts[key] = val
    return opts


def cmd_grid(args) -> int:
    opts = _grid_options(args)
    if args.jobs < 1:
        raise InputError("--jobs must be >= 1")
    try:
        jobs = _grid_jobs(args.name, opts, args.seed, args.budget)
    except TypeError as exc:
        raise InputError(f"bad option for grid {args.name!r}: {exc}") from None
    reports: list[th.TheoremReport] = []
    code = EXIT_OK
    try:
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                for rep in pool.map(_run_job, jobs):
                    reports.append(rep)
                    code = _worse(code, rep)
        else:
            for job in jobs:
                rep = _run_job(job)
                reports.append(rep)
                code = _worse(code, rep)
    finally:
        # partial rows are flushed even when a job aborts on its budget
        if args.format == "json":
            _emit(args, _dump([r.to_dict(stable=args.stable) for r in reports]))
        else:
            _emit(args, _csv_text(reports))
        log.info("%d grid rows written", len(reports))
    return code


def _worse(code: int, rep: th.TheoremReport) -> int:
    if not rep.passed:
        return EXIT_FAIL
    if rep.notable and code == EXIT_OK:
        return EXIT_NOTABLE
    return code


def cmd_chordal_check(args) -> int:
    g = _load_graph(args)
    order = ch.find_elimination_ordering(g)
    if order is not None:
        _emit(args, _dump({"chordal": True, "ordering": [v + 1 for v in order]}))
        return EXIT_OK
    out = {"chordal": False}
    if g.n <= 10:
        cyc = ch.find_induced_long_cycle(g)
        out["induced_cycle"] = [v + 1 for v in cyc]
    _emit(args, _dump(out))
    return EXIT_FAIL


def cmd_compress_demo(args) -> int:
    g = _load_graph(args)
    a = family_from_json(g, args.r, args.a)
    b = family_from_json(g, args.r, args.b)
    if args.v1 is not None:
        if args.vi is None:
            raise InputError("--vi is required with --v1")
        trace = cp.chordal_pipeline(g, a, b, args.v1 - 1, args.vi - 1)
    else:
        trace = cp.cycle_pipeline(a, b)
    _emit(args, _dump(trace))
    return EXIT_OK if trace.get("claims_hold", True) else EXIT_FAIL


def _graph_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--graph", help="builder spec, e.g. cycle:7, matching:4, cliques:2,3,3, empty:5, path:6")
    p.add_argument("--graph-json", help="path to {\"n\": .., \"edges\": [[u,v],..]} (1-based)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xint", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--budget", type=int, default=se.DEFAULT_BUDGET, help="search node budget")
    common.add_argument("--stable", action="store_true", help="omit run-dependent fields")
    common.add_argument("--seed", type=int, default=0, help="first seed for randomized runs")
    common.add_argument("--format", choices=["json", "csv"], default=None,
                        help="report format (verify defaults to json, grid to csv)")

    p = sub.add_parser("enumerate", parents=[common], help="list J^r(G) or a star")
    _graph_args(p)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--star", type=int, help="only sets containing this (1-based) vertex")
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("mu", parents=[common], help="minimum maximal independent set size")
    _graph_args(p)
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("search", parents=[common], help="exact extremal search")
    _graph_args(p)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--engine", choices=["reduced", "naive"], default="reduced")
    p.add_argument("--intersecting", action="store_true", help="largest intersecting subfamily instead")
    p.add_argument("--enumerate-optima", action="store_true")
    p.add_argument("--limit", type=int, default=1000)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", parents=[common], help="check one theorem instance")
    p.add_argument("theorem", choices=["hilton", "borg-leader", "union-cliques", "chordal", "cycle", "hst",
                                       "ekr", "bollobas-leader", "mu-lemma", "conjecture"])
    _graph_args(p)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--sizes", help="clique sizes, e.g. 2,3,3")
    p.add_argument("--n-max", type=int)
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument("--r-rule", choices=["all", "max"], default="all")
    p.add_argument("--density", type=float, default=0.5, help="random chordal density (chordal without --graph)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("grid", parents=[common], help="CSV sweep over a parameter range")
    p.add_argument("name", choices=sorted(th.GRIDS) + ["mu-lemma", "conjecture"])
    p.add_argument("--n-max", type=int)
    p.add_argument("--k-max", type=int)
    p.add_argument("--seeds", type=int)
    p.add_argument("--config", help="TOML file with grid options")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("chordal-check", parents=[common], help="elimination ordering or induced cycle")
    _graph_args(p)
    p.set_defaults(func=cmd_chordal_check)

    p = sub.add_parser("compress-demo", parents=[common], help="trace a compression pipeline")
    _graph_args(p)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--a", required=True, help="family A as JSON, e.g. [[1,3],[2,4]]")
    p.add_argument("--b", required=True, help="family B as JSON")
    p.add_argument("--v1", type=int, help="simplicial vertex (chordal mode)")
    p.add_argument("--vi", type=int, help="neighbour of v1 to shift from (chordal mode)")
    p.set_defaults(func=cmd_compress_demo)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
    log.handlers[:] = [handler]
    log.propagate = False
    log.setLevel(logging.INFO if args.verbose else logging.WARNING)
    try:
        if args.budget < 1:
            raise InputError("--budget must be positive")
        return args.func(args)
    except se.BudgetExceeded as exc:
        log.error("%s", exc)
        return EXIT_BUDGET
    except (InputError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
