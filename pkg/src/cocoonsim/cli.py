"""Command-line entry point: ``cocoonsim <verb> [options]``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .config import ExperimentConfig, load_config
from .dynamics import run
from .experiments import (
    adaptability_suite,
    compare_to_empirical,
    format_report,
    ingest_empirical,
    ra_sweep,
    run_ensemble,
)
from .metrics import comment_network_summary, emotion_range


def _ra_list(text):
    return [float(x) for x in text.split(",") if x.strip()]


def _config(args) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    changes = {}
    if args.seed is not None:
        changes["seed"] = args.seed
    if args.runs is not None:
        changes["runs"] = args.runs
    if args.ra and args.command not in ("ra-sweep",):
        changes["ra"] = args.ra[0]
    return cfg.replace(**changes) if changes else cfg


def _summary(ens) -> dict:
    return {
        "runs": len(ens.ranges),
        "final_i": ens.i_mean[-1],
        "mean_difference": ens.mean_difference,
        "initial_m": ens.m_mean[0],
        "min_m": ens.m_mean.min(),
        "max_m": ens.m_mean.max(),
    }


def cmd_run(cfg, args, out):
    graph = cfg.make_graph(cfg.seed)
    traj = run(graph, cfg.spread_params(), cfg.seed)
    io.write_trajectory(traj, out / "trajectory.csv")
    er = emotion_range(traj)
    comments = comment_network_summary(graph, drop_silent=True)
    io.write_summary(
        {
            "steps": len(traj) - 1,
            "final_i": traj.i[-1],
            "initial_m": er.initial,
            "min_m": er.minimum,
            "max_m": er.maximum,
            "difference": er.difference,
            "comment_nodes": comments.node_count,
            "comment_edges": comments.edge_count,
            "comment_mean_degree": comments.mean_degree,
        },
        out / "summary.csv",
    )
    io.write_histogram(comments.log_histogram, out / "histogram.csv")


def cmd_ensemble(cfg, args, out):
    ens = run_ensemble(cfg, workers=args.workers)
    io.write_trajectory(ens.mean_trajectory(), out / "trajectory.csv")
    io.write_summary(_summary(ens), out / "summary.csv")


def cmd_sweep(cfg, args, out):
    values = args.ra or [0.0, 0.2, 0.5, 0.85, 1.0]
    rows, _ = ra_sweep(cfg, values, workers=args.workers)
    io.write_rows(
        out / "sweep.csv",
        ("ra", "mean_difference", "min_m", "max_m"),
        ((r.ra, r.mean_difference, r.min_m, r.max_m) for r in rows),
    )


def cmd_adapt(cfg, args, out):
    curves, checks = adaptability_suite(cfg, workers=args.workers)
    for name, items in curves.items():
        for label, ens in items:
            io.write_trajectory(ens.mean_trajectory(), out / f"{name}_{label}.csv")
    (out / "report.txt").write_text(format_report(checks), encoding="utf-8")


def cmd_compare(cfg, args, out):
    if not args.empirical:
        raise ValueError("compare needs --empirical <t,count csv>")
    ens = run_ensemble(cfg, workers=args.workers)
    summary = _summary(ens)
    for path in args.empirical:
        emp = ingest_empirical(path)
        summary[f"rmse[{Path(path).name}]"] = compare_to_empirical(ens, emp)
    io.write_trajectory(ens.mean_trajectory(), out / "trajectory.csv")
    io.write_summary(summary, out / "summary.csv")


def cmd_export(cfg, args, out):
    graph = cfg.make_graph(cfg.seed)
    if args.simulate:
        run(graph, cfg.spread_params(), cfg.seed)
    io.export_graph(graph, out)


COMMANDS = {
    "run": cmd_run,
    "ensemble": cmd_ensemble,
    "ra-sweep": cmd_sweep,
    "adapt": cmd_adapt,
    "compare": cmd_compare,
    "export": cmd_export,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cocoonsim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="key = value config file")
        p.add_argument("--seed", type=int, help="master seed")
        p.add_argument("--out", default="out", help="output directory")
        p.add_argument("--runs", type=int, help="ensemble size")
        p.add_argument("--ra", type=_ra_list, help="recommendation accuracy (comma list for ra-sweep)")
        p.add_argument("--workers", type=int, default=None, help="worker processes")
        if name == "compare":
            p.add_argument("--empirical", action="append", help="t,count CSV (repeatable)")
        if name == "export":
            p.add_argument("--simulate", action="store_true", help="export the graph after a run")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "ra-sweep" and cfg.ra is None:
            cfg = cfg.replace(ra=0.0)  # per-row values come from --ra
        out = io.ensure_dir(args.out)
        COMMANDS[args.command](cfg, args, out)
    except (ValueError, OSError) as exc:
        print(f"cocoonsim {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
