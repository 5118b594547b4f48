"""Figure rendering for bound tables."""

from __future__ import annotations

import math
from pathlib import Path

from .bounds import BoundReport, prior_lower_bound_log2


def save_bounds_figure(
    reports: list[BoundReport],
    path: Path | str,
    exact: dict[int, int] | None = None,
) -> Path:
    """Render the bound curves of a table to an image file.

    Everything is plotted as log2(bound) on a linear axis, which keeps the
    figure meaningful far past double range. Exact values, where known, are
    drawn as points.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ks = [r.k for r in reports]
    construction = [math.log2(r.construction_bound) for r in reports]
    closed = [r.closed_form_log2 for r in reports]
    upper = [math.log2(r.upper_bound) for r in reports]
    prior_pts = [
        (r.k, prior_lower_bound_log2(r.k))
        for r in reports
        if math.isfinite(prior_lower_bound_log2(r.k))
    ]

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(ks, upper, label="upper bound 2^k - 1", color="0.4", linestyle=":")
    ax.plot(ks, construction, label="construction bound", color="tab:blue")
    ax.plot(ks, closed, label="closed-form lower bound", color="tab:orange")
    if prior_pts:
        ax.plot(
            [k for k, _ in prior_pts],
            [v for _, v in prior_pts],
            label="prior lower bound",
            color="tab:green",
            linestyle="--",
        )
    exact = exact or {}
    pts = [(k, math.log2(v)) for k, v in sorted(exact.items()) if v > 0 and k in set(ks)]
    if pts:
        ax.scatter(
            [k for k, _ in pts],
            [v for _, v in pts],
            label="exact threshold",
            color="tab:red",
            zorder=5,
            s=18,
        )
    ax.set_xlabel("target length k")
    ax.set_ylabel("log2(bound)")
    ax.legend(frameon=False, fontsize=9)
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
