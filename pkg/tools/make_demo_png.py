#!/usr/bin/env python3
"""Render the stacked-bar demo raster from the fixture's own geometry.

The demo overlays engine focus outlines on this image, so every bar is
drawn at exactly the pixel rects the graph fixture carries.
"""

import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
from matplotlib.patches import Rectangle

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from navgraph.fixtures import (  # noqa: E402
    CHART_H,
    CHART_W,
    CONTESTS,
    PLOT_BOTTOM,
    PLOT_LEFT,
    PLOT_RIGHT,
    TEAMS,
    TROPHIES,
    _bar_layout,
)

COLORS = {"BPL": "#2f7ed8", "FA Cup": "#8bbc21", "CL": "#910000"}
OUT = Path(__file__).resolve().parent.parent / "frontend" / "public" / "chart.png"


def main() -> None:
    rects = _bar_layout()
    fig = plt.figure(figsize=(CHART_W / 100, CHART_H / 100), dpi=100)
    ax = fig.add_axes([0, 0, 1, 1])
    ax.set_xlim(0, CHART_W)
    ax.set_ylim(CHART_H, 0)
    ax.axis("off")

    for (contest, team), (x, y, w, h) in rects.items():
        if h <= 0:
            continue
        ax.add_patch(Rectangle((x, y), w, h, facecolor=COLORS[contest],
                               edgecolor="white", linewidth=1))
        value = TROPHIES[contest][team]
        if h >= 14:
            ax.text(x + w / 2, y + h / 2, str(value), ha="center", va="center",
                    color="white", fontsize=9)

    ax.text(CHART_W / 2, 14, "Club trophies by contest", ha="center", va="center",
            fontsize=13)
    for j, team in enumerate(TEAMS):
        x = rects[(CONTESTS[0], team)][0] + 39
        ax.text(x, PLOT_BOTTOM + 14, team, ha="center", va="center", fontsize=9)
    legend_x = 200
    for contest in CONTESTS:
        ax.add_patch(Rectangle((legend_x, 4), 12, 12, facecolor=COLORS[contest]))
        ax.text(legend_x + 18, 10, contest, ha="left", va="center", fontsize=9)
        legend_x += 80
    ax.plot([PLOT_LEFT, PLOT_RIGHT], [PLOT_BOTTOM, PLOT_BOTTOM],
            color="#666666", linewidth=1)

    OUT.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(OUT)
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
