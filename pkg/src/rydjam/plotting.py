"""Static SVG figures (complexity curves, equilibrium vs jamming densities)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = ["Series", "PlotSpec", "render_svg"]


@dataclass
class Series:
    x: list[float]
    y: list[float]
    label: str = ""
    style: str = "-"


@dataclass
class PlotSpec:
    series: list[Series]
    xlabel: str = ""
    ylabel: str = ""
    title: str = ""
    vlines: list[tuple[float, str]] = field(default_factory=list)
    hlines: list[tuple[float, str]] = field(default_factory=list)
    width: float = 6.4
    height: float = 4.0

    def validate(self):
        for s in self.series:
            if len(s.x) != len(s.y):
                raise ValueError(f"series {s.label!r}: x and y lengths differ")
            if not all(math.isfinite(v) for v in (*s.x, *s.y)):
                raise ValueError(f"series {s.label!r} has non-finite values")
        xs = [v for s in self.series for v in s.x]
        if xs:
            lo, hi = min(xs), max(xs)
            for x, label in self.vlines:
                if not lo <= x <= hi:
                    raise ValueError(f"marker {label!r} at {x} outside the x range [{lo}, {hi}]")


def render_svg(spec: PlotSpec, path) -> None:
    """Write the plot as a self-contained SVG; identical inputs give identical bytes."""
    spec.validate()
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    with matplotlib.rc_context({"svg.hashsalt": "rydjam", "svg.fonttype": "path"}):
        fig, ax = plt.subplots(figsize=(spec.width, spec.height))
        for s in spec.series:
            ax.plot(s.x, s.y, s.style, label=s.label or None, lw=1.2, ms=3)
        for x, label in spec.vlines:
            ax.axvline(x, color="0.4", ls="--", lw=0.8, label=label or None)
        for y, label in spec.hlines:
            ax.axhline(y, color="0.6", ls=":", lw=0.8, label=label or None)
        ax.set_xlabel(spec.xlabel)
        ax.set_ylabel(spec.ylabel)
        if spec.title:
            ax.set_title(spec.title)
        if any(s.label for s in spec.series) or spec.vlines or spec.hlines:
            ax.legend(fontsize="small", frameon=False)
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
