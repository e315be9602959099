"""Figures for reports: relation matrices and suite timings."""
from __future__ import annotations

import re
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .rel import Relation  # noqa: E402


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", text).strip("_") or "figure"


def relation_matrix(R: Relation):
    grid = [[0] * R.cod.size for _ in range(R.dom.size)]
    for a, b in R.graph:
        grid[a][b] = 1
    return grid


def plot_relation(R: Relation, path: str | Path, title: str = "") -> Path:
    """Boolean matrix of R, domain down the rows and codomain across."""
    path = Path(path)
    rows, cols = R.dom.size, R.cod.size
    scale = 0.35
    fig, ax = plt.subplots(figsize=(max(2.5, cols * scale + 1.5), max(2.0, rows * scale + 1.2)))
    ax.imshow(relation_matrix(R) if rows and cols else [[0]], cmap="Greys", vmin=0, vmax=1,
              interpolation="nearest", aspect="equal")
    ax.set_xlabel(f"codomain {R.cod!r}")
    ax.set_ylabel(f"domain {R.dom!r}")
    if cols <= 32:
        ax.set_xticks(range(cols))
    if rows <= 32:
        ax.set_yticks(range(rows))
    ax.tick_params(labelsize=6)
    ax.set_title(title or f"{len(R)} pairs", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_suite(results, path: str | Path, limits: dict[int, float] | None = None) -> Path:
    """Elapsed time per criterion against its budget, on a log scale."""
    path = Path(path)
    limits = limits or {}
    labels = [f"C{r.number}" for r in results]
    elapsed = [max(r.elapsed, 1e-3) for r in results]
    colors = ["tab:green" if r.ok else "tab:red" for r in results]
    fig, ax = plt.subplots(figsize=(max(3.0, 0.7 * len(results) + 1.5), 3.2))
    ax.bar(labels, elapsed, color=colors)
    for k, r in enumerate(results):
        if r.number in limits:
            ax.hlines(limits[r.number], k - 0.4, k + 0.4, colors="black", linestyles="dashed")
    ax.set_yscale("log")
    ax.set_ylabel("seconds")
    ax.set_title("criterion runtime (dashed: limit)", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_payload(payload, directory: str | Path, prefix: str) -> list[Path]:
    """One matrix figure per relation found at the top level or one level down."""
    out_dir = Path(directory)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []

    def visit(key, value, depth):
        if isinstance(value, Relation):
            written.append(plot_relation(value, out_dir / f"{_slug(prefix + '-' + key)}.png", key))
        elif isinstance(value, dict) and depth < 2:
            for k, v in value.items():
                visit(f"{key}.{k}" if key else str(k), v, depth + 1)

    visit("", payload, 0)
    return written
