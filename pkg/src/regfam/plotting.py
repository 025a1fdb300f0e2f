"""Figures for reports: marked graphs and grids of family members."""
from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import networkx as nx  # noqa: E402

from .codec import Graph  # noqa: E402
from .family import MarkedGraph  # noqa: E402

MARK = "#c0392b"
PLAIN = "#34495e"


def _nx(vertices, edges) -> nx.DiGraph:
    h = nx.DiGraph()
    h.add_nodes_from(vertices)
    h.add_edges_from(edges)
    return h


def _draw(ax, h: nx.DiGraph, vcolors=None, ecolors=None, labels=True):
    pos = nx.circular_layout(h) if h.number_of_nodes() > 1 else {v: (0.0, 0.0) for v in h.nodes}
    nx.draw_networkx_nodes(h, pos, ax=ax, node_color=vcolors or PLAIN, node_size=260)
    if labels:
        nx.draw_networkx_labels(h, pos, ax=ax, font_color="white", font_size=8)
    nx.draw_networkx_edges(
        h, pos, ax=ax, edge_color=ecolors or PLAIN, arrows=True, arrowsize=10,
        connectionstyle="arc3,rad=0.1", node_size=260,
    )
    ax.set_axis_off()
    ax.margins(0.25)


def plot_marked_graph(mg: MarkedGraph, path: str | Path, title: str = "") -> Path:
    h = _nx(mg.vertices, mg.edges)
    vcol = [MARK if v in mg.marked_vertices else PLAIN for v in h.nodes]
    ecol = [MARK if e in mg.marked_edges else PLAIN for e in h.edges]
    fig, ax = plt.subplots(figsize=(3.2, 3.2))
    _draw(ax, h, vcol, ecol)
    if title:
        ax.set_title(title, fontsize=9)
    path = Path(path)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_graphs(graphs: list[Graph], path: str | Path, title: str = "", per_row: int = 6) -> Path:
    count = max(len(graphs), 1)
    cols = min(per_row, count)
    rows = math.ceil(count / cols)
    fig, axes = plt.subplots(rows, cols, figsize=(1.9 * cols, 1.9 * rows), squeeze=False)
    for ax in axes.flat:
        ax.set_axis_off()
    for ax, g in zip(axes.flat, graphs):
        _draw(ax, _nx(sorted(g.vertices), sorted(g.edges)), labels=g.n <= 6)
    if title:
        fig.suptitle(title, fontsize=10)
    path = Path(path)
    fig.savefig(path, dpi=110, bbox_inches="tight")
    plt.close(fig)
    return path
