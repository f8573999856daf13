"""Command-line front end.

Subcommands mirror the pipeline stages: ``stats`` (ground truth),
``sample`` (walks to trace files), ``estimate`` (traces to reports),
``evaluate`` (reports to an error table), and ``run`` (all of the above).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .estimate import EstimateReport
from .experiment import (PROPERTIES, ExperimentConfig, cmd_estimate,
                         cmd_evaluate, cmd_sample, cmd_stats, load_graph,
                         run_experiment)

logger = logging.getLogger(__name__)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.handler(args)
    except (ValueError, KeyError, OSError, RuntimeError) as exc:
        logger.error("%s", exc)
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="walksample",
        description="Random-walk sampling of directed graphs with "
                    "bias-corrected property estimators.")
    sub = parser.add_subparsers(dest="command", required=True)

    stats = sub.add_parser("stats", help="exact graph properties")
    _add_graph_args(stats)
    stats.add_argument("--out", default="walksample-run",
                       help="output directory (default: %(default)s)")
    stats.set_defaults(handler=_run_stats)

    sample = sub.add_parser("sample", help="run walkers, write trace files")
    _add_graph_args(sample)
    _add_sampler_args(sample)
    sample.add_argument("--out", default="walksample-run",
                        help="output directory (default: %(default)s)")
    sample.set_defaults(handler=_run_sample)

    estimate = sub.add_parser("estimate",
                              help="estimate properties from trace files")
    _add_graph_args(estimate)
    estimate.add_argument("--traces", required=True, nargs="+",
                          help="trace files, or one directory of *.trace")
    estimate.add_argument("--props", default="all",
                          help="comma-separated property names or 'all'")
    estimate.add_argument("--out", default="walksample-run",
                          help="output directory (default: %(default)s)")
    estimate.set_defaults(handler=_run_estimate)

    evaluate = sub.add_parser("evaluate",
                              help="aggregate reports into an error table")
    evaluate.add_argument("--reports", required=True,
                          help="directory of report *.json files")
    evaluate.add_argument("--out", default=None,
                          help="output csv (default: evaluation.csv next "
                               "to the reports)")
    evaluate.set_defaults(handler=_run_evaluate)

    run = sub.add_parser("run", help="full pipeline in one call")
    _add_graph_args(run, required=False)
    _add_sampler_args(run)
    run.add_argument("--props", default=None,
                     help="comma-separated property names or 'all'")
    run.add_argument("--config", default=None,
                     help="JSON config file; explicit flags override it")
    run.add_argument("--out", default=None,
                     help="output directory (default: walksample-run)")
    run.set_defaults(handler=_run_full)

    return parser


def _add_graph_args(parser, required: bool = True):
    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument("--graph", default=None,
                       help="edge-list file (optionally gzipped)")
    group.add_argument("--gen", default=None,
                       help="generator spec, e.g. "
                            "'erdos_renyi_directed:n=100,p=0.05,seed=7'")


def _add_sampler_args(parser):
    parser.add_argument("--method", choices=("mhrw", "rwwj", "both"),
                        default=None,
                        help="sampler(s) to run (default: both)")
    budget = parser.add_mutually_exclusive_group()
    budget.add_argument("--budget", type=int, default=None,
                        help="absolute step budget per walk")
    budget.add_argument("--budget-frac", type=float, default=None,
                        help="budget as a fraction of the node count, "
                             "floored (default: 0.15)")
    parser.add_argument("--walk-prob", type=float, default=None,
                        help="mhrw walk-proposal probability (default: 0.85)")
    parser.add_argument("--jump-weight", type=float, default=None,
                        help="rwwj virtual jump mass (default: 10)")
    parser.add_argument("--reps", type=int, default=None,
                        help="replications per method (default: 1)")
    parser.add_argument("--seed", type=int, default=None,
                        help="master seed (default: 0)")


def _methods_from_flag(flag: str | None) -> tuple[str, ...] | None:
    if flag is None:
        return None
    return ("mhrw", "rwwj") if flag == "both" else (flag,)


def _props_from_flag(flag: str | None) -> tuple[str, ...] | None:
    if flag is None:
        return None
    if flag.strip() == "all":
        return PROPERTIES
    return tuple(p.strip() for p in flag.split(",") if p.strip())


def _config_from_args(args, out_default="walksample-run") -> ExperimentConfig:
    base: dict = {}
    if getattr(args, "config", None):
        base = json.loads(Path(args.config).read_text(encoding="ascii"))
        if not isinstance(base, dict):
            raise ValueError("config file must hold a JSON object")
    overrides = {
        "graph": args.graph,
        "gen": args.gen,
        "methods": _methods_from_flag(getattr(args, "method", None)),
        "properties": _props_from_flag(getattr(args, "props", None)),
        "budget": getattr(args, "budget", None),
        "budget_fraction": getattr(args, "budget_frac", None),
        "walk_prob": getattr(args, "walk_prob", None),
        "jump_weight": getattr(args, "jump_weight", None),
        "replications": getattr(args, "reps", None),
        "master_seed": getattr(args, "seed", None),
        "output_dir": getattr(args, "out", None),
    }
    merged = dict(base)
    for key, value in overrides.items():
        if value is not None:
            merged[key] = list(value) if isinstance(value, tuple) else value
    # An explicit budget flag displaces a config-file fraction and vice versa.
    if overrides["budget"] is not None:
        merged["budget_fraction"] = None
    if overrides["budget_fraction"] is not None:
        merged["budget"] = None
    merged.setdefault("output_dir", out_default)
    return ExperimentConfig.from_json_dict(merged)


def _run_stats(args) -> int:
    graph = _load_graph_args(args)
    stats = cmd_stats(graph, args.out)
    print(json.dumps(stats, indent=2, sort_keys=True))
    return 0


def _run_sample(args) -> int:
    config = _config_from_args(args, out_default=args.out)
    graph = load_graph(config)
    paths = cmd_sample(graph, config, args.out)
    for path in paths:
        print(path)
    return 0


def _run_estimate(args) -> int:
    graph = _load_graph_args(args)
    trace_paths = _expand_traces(args.traces)
    props = _props_from_flag(args.props) or PROPERTIES
    reports = cmd_estimate(graph, trace_paths, props, args.out)
    print(f"wrote {len(reports)} report(s) to "
          f"{Path(args.out) / 'reports'}")
    return 0


def _run_evaluate(args) -> int:
    report_dir = Path(args.reports)
    paths = sorted(report_dir.glob("*.json"))
    if not paths:
        raise ValueError(f"no report files in {report_dir}")
    reports = [EstimateReport.from_json_dict(
        json.loads(p.read_text(encoding="ascii"))) for p in paths]
    out = Path(args.out) if args.out else report_dir.parent / "evaluation.csv"
    rows = cmd_evaluate(reports, out)
    _print_rows(rows)
    return 0


def _run_full(args) -> int:
    config = _config_from_args(args)
    summary = run_experiment(config)
    _print_rows(summary["evaluation"])
    print(f"artifacts in {summary['output_dir']}")
    return 0


def _load_graph_args(args):
    if (args.graph is None) == (args.gen is None):
        raise ValueError("exactly one of --graph and --gen is required")
    if args.gen is not None:
        from .generate import parse_gen_spec, generate
        return generate(parse_gen_spec(args.gen))
    from .graph import load_edge_list
    return load_edge_list(args.graph)


def _expand_traces(items) -> list[Path]:
    if len(items) == 1 and Path(items[0]).is_dir():
        paths = sorted(Path(items[0]).glob("*.trace"))
        if not paths:
            raise ValueError(f"no *.trace files in {items[0]}")
        return paths
    return [Path(i) for i in items]


def _print_rows(rows) -> None:
    if not rows:
        print("no evaluation rows")
        return
    columns = list(rows[0])
    widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) for c in columns}
    print("  ".join(c.ljust(widths[c]) for c in columns))
    for row in rows:
        print("  ".join(str(row[c]).ljust(widths[c]) for c in columns))


if __name__ == "__main__":
    sys.exit(main())
