"""Figure rendering for the CLI report paths (matplotlib, Agg backend).

Each delimited output the CLI writes can be accompanied by a chart:
bounds tables get a log-scale bound-vs-n plot, orbit censuses a bar
chart of the orbit-size decomposition, and frontiers a projection of
the statistics vectors.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def bounds_figure(rows: list[dict], kind: str, path: Path, meta: dict | None = None):
    """Render bound-vs-n, log scale; rows need 'n' and 'bound' keys."""
    ns = [r["n"] for r in rows]
    bounds = [r["bound"] for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ns, bounds, marker="o", color="#1f6f8b")
    exact = [r for r in rows if r.get("exact", True)]
    if len(exact) != len(rows):
        ax.plot(
            [r["n"] for r in rows if not r.get("exact", True)],
            [r["bound"] for r in rows if not r.get("exact", True)],
            marker="s", linestyle="none", color="#c65146", label="best known",
        )
        ax.legend()
    ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("bound")
    ax.set_title(f"{kind} lower bounds")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_png_meta(meta))
    plt.close(fig)


def census_figure(histogram: dict[int, int], path: Path, meta: dict | None = None):
    sizes = sorted(histogram)
    counts = [histogram[s] for s in sizes]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar([str(s) for s in sizes], counts, color="#1f6f8b")
    ax.set_yscale("log")
    ax.set_xlabel("orbit size")
    ax.set_ylabel("number of classes")
    ax.set_title("orbit-size decomposition")
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_png_meta(meta))
    plt.close(fig)


def frontier_figure(vectors: list[tuple[int, ...]], path: Path,
                    meta: dict | None = None):
    sizes = [sum(v) for v in vectors]
    corners = [v[0] for v in vectors]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.scatter(corners, sizes, color="#1f6f8b")
    ax.set_xlabel("corner count a0")
    ax.set_ylabel("total size")
    ax.set_title("Pareto-optimal statistics")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_png_meta(meta))
    plt.close(fig)


def _png_meta(meta: dict | None) -> dict:
    out = {"Software": "hjm"}
    if meta:
        out.update({str(k): str(v) for k, v in meta.items()})
    return out
