"""CSV readers and writers for trajectories, summaries, histograms and graphs.

Floats are written with ``repr`` so that a write/read round trip is exact and
repeated runs with the same seed produce byte-identical files.
"""

from __future__ import annotations

import csv
import math
import os
from pathlib import Path

import numpy as np

from .graph import SocialGraph

TRAJECTORY_COLUMNS = ("t", "i", "mean_m", "delta_m", "new_comments", "rewired")
NODE_COLUMNS = ("id", "p", "m", "f", "state")
EDGE_COLUMNS = ("source", "target", "layer")


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    v = float(v)
    if math.isnan(v):
        return ""
    return repr(v)


def _open(path, mode="w"):
    path = Path(path)
    if mode == "w":
        path.parent.mkdir(parents=True, exist_ok=True)
    return open(path, mode, newline="", encoding="utf-8")


def write_rows(path, header, rows) -> None:
    with _open(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) if not isinstance(v, str) else v for v in row])


def write_trajectory(traj, path) -> None:
    """Write ``t,i,mean_m,delta_m,new_comments,rewired``; undefined ``delta_m`` is blank."""
    rows = zip(traj.t, traj.i, traj.mean_m, traj.delta_m, traj.new_comments, traj.rewired)
    write_rows(path, TRAJECTORY_COLUMNS, rows)


def read_trajectory(path) -> dict[str, np.ndarray]:
    with _open(path, "r") as fh:
        rows = list(csv.DictReader(fh))
    return {
        col: np.array([float(r[col]) if r[col] != "" else math.nan for r in rows])
        for col in TRAJECTORY_COLUMNS
    }


def write_summary(summary: dict, path) -> None:
    write_rows(path, ("metric", "value"), summary.items())


def write_histogram(bins, path) -> None:
    write_rows(path, ("degree_bin_low", "degree_bin_high", "count"), bins)


def export_graph(graph: SocialGraph, path) -> None:
    """Write ``edges.csv`` (``source,target,layer`` with layer R or C) and ``nodes.csv`` into ``path``."""
    path = Path(path)
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot write graph to {path}: {exc}") from exc
    edges = [(s, t, "R") for s, t in graph.relationship_edges()]
    edges += [(c, j, "C") for c, j in graph.comment_edges()]
    write_rows(path / "edges.csv", EDGE_COLUMNS, edges)
    nodes = (
        (i, graph.viewpoint[i], graph.emotion[i], graph.faith[i], "I" if graph.published[i] else "S")
        for i in range(graph.n)
    )
    write_rows(path / "nodes.csv", NODE_COLUMNS, nodes)


def import_graph(path) -> SocialGraph:
    path = Path(path)
    with _open(path / "nodes.csv", "r") as fh:
        nodes = list(csv.DictReader(fh))
    n = len(nodes)
    p = np.empty(n)
    m = np.empty(n)
    f = np.empty(n)
    published = np.zeros(n, dtype=bool)
    for row in nodes:
        i = int(row["id"])
        p[i], m[i], f[i] = float(row["p"]), float(row["m"]), float(row["f"])
        published[i] = row["state"] == "I"
    r_src, r_dst = [], []
    comment_in = [[] for _ in range(n)]
    with _open(path / "edges.csv", "r") as fh:
        for row in csv.DictReader(fh):
            s, t = int(row["source"]), int(row["target"])
            if row["layer"] == "R":
                r_src.append(s)
                r_dst.append(t)
            elif row["layer"] == "C":
                comment_in[t].append(s)
            else:
                raise ValueError(f"unknown edge layer {row['layer']!r}")
    return SocialGraph(p, m, f, np.array(r_src, dtype=np.int64), np.array(r_dst, dtype=np.int64),
                       published=published, comment_in=comment_in)


def ensure_dir(path) -> Path:
    path = Path(path)
    os.makedirs(path, exist_ok=True)
    return path
