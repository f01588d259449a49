"""Timing runs and figures written next to the JSON reports."""

from __future__ import annotations

import math
import statistics
import time
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .colourful import shortest_colourful_cycle  # noqa: E402
from .graph import ColouredGraph  # noqa: E402


def time_scaling(g: ColouredGraph, ks, t: int, trials: int, reps: int, seed: int) -> list[dict]:
    """Median wall time of the colourful solver for each ``k`` in ``ks``.

    One untimed warm-up call compiles the kernels first.
    """
    shortest_colourful_cycle(g, min(ks), min(t, min(ks)), trials=1, seed=seed)
    rows = []
    for k in ks:
        times, lengths = [], []
        for rep in range(reps):
            start = time.perf_counter()
            res = shortest_colourful_cycle(g, k, t, trials=trials, seed=seed, stream=(rep,))
            times.append(time.perf_counter() - start)
            lengths.append(res.length)
        rows.append({"k": k, "times": times, "median": statistics.median(times), "lengths": lengths})
    return rows


def growth_factors(rows: list[dict]) -> list[float]:
    med = [r["median"] for r in rows]
    return [b / a for a, b in zip(med, med[1:])]


def fitted_base(rows: list[dict]) -> float:
    """Least-squares base ``c`` of ``median ~ C * c^k``."""
    ks = [r["k"] for r in rows]
    ys = [math.log(r["median"]) for r in rows]
    kbar = statistics.fmean(ks)
    ybar = statistics.fmean(ys)
    slope = sum((k - kbar) * (y - ybar) for k, y in zip(ks, ys)) / sum((k - kbar) ** 2 for k in ks)
    return math.exp(slope)


def plot_scaling(rows: list[dict], path) -> Path:
    path = Path(path)
    ks = [r["k"] for r in rows]
    med = [r["median"] for r in rows]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    for r in rows:
        ax.scatter([r["k"]] * len(r["times"]), r["times"], s=8, color="0.6", zorder=1)
    ax.plot(ks, med, "o-", color="C0", label="median", zorder=2)
    ref = [med[0] * 2 ** (k - ks[0]) for k in ks]
    ax.plot(ks, ref, "--", color="C3", label=r"$2^k$ reference")
    ax.set_yscale("log")
    ax.set_xlabel("k")
    ax.set_ylabel("wall time [s]")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_trial_lengths(lengths, k: int, n: int, path) -> Path:
    """Histogram of per-trial answers, with ``inf`` as its own bar."""
    path = Path(path)
    labels = [str(i) for i in range(k, n + 1)] + ["inf"]
    counts = [sum(1 for x in lengths if x == i) for i in range(k, n + 1)]
    counts.append(sum(1 for x in lengths if not math.isfinite(x)))
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.bar(labels, counts, color=["C0"] * (len(labels) - 1) + ["0.6"])
    ax.set_xlabel("answer of a single trial")
    ax.set_ylabel("trials")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
