"""Self-contained SVG of normalized poles against the unit circle and the pole-free annuli."""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from ..graphs import Graph
from ..gtrh.domains import domains_for
from ..gtrh.poles import normalized_pole_set

SIZE = 600
MARGIN = 40


def _f(x: float) -> str:
    return f"{x:.4f}"


def _annulus_path(cx: float, cy: float, r0: float, r1: float) -> str:
    def circle(r):
        return (
            f"M {_f(cx + r)} {_f(cy)} "
            f"A {_f(r)} {_f(r)} 0 1 0 {_f(cx - r)} {_f(cy)} "
            f"A {_f(r)} {_f(r)} 0 1 0 {_f(cx + r)} {_f(cy)} Z"
        )

    return circle(r1) + " " + circle(r0)


def spectrum_svg(g: Graph, rho: float, chi: float | None = None, kappa: float = 0.5, h_hat: float = 4.0) -> str:
    """SVG text; identical input gives identical bytes."""
    if chi is None:
        chi = rho / math.log(g.n) if g.n > 1 else 1.0
    ps = normalized_pole_set(g, rho)
    v = ps.all_v()
    unit = np.concatenate([np.zeros(ps.poles_v.shape[0], bool), np.ones(ps.unit_poles_v.shape[0], bool)])
    doms = domains_for(chi, rho, kappa, h_hat)

    extent = max(1.2, float(np.max(np.abs(v))) * 1.1 if v.size else 1.2)
    for k in ("D1", "D2"):
        if not doms[k].empty:
            extent = max(extent, doms[k].bounds[1] * 1.05)
    scale = (SIZE / 2 - MARGIN) / extent
    c = SIZE / 2

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
        f'<line x1="{MARGIN}" y1="{_f(c)}" x2="{SIZE - MARGIN}" y2="{_f(c)}" stroke="#bbbbbb" stroke-width="1"/>',
        f'<line x1="{_f(c)}" y1="{MARGIN}" x2="{_f(c)}" y2="{SIZE - MARGIN}" stroke="#bbbbbb" stroke-width="1"/>',
    ]
    legend = []
    colors = {"D1": "#3b75af", "D2": "#c44e52"}
    for k in ("D1", "D2"):
        d = doms[k]
        if d.empty:
            legend.append(f"{k}: empty domain")
            continue
        lo, hi = d.bounds
        out.append(
            f'<path class="domain-{k}" d="{_annulus_path(c, c, lo * scale, hi * scale)}" '
            f'fill="{colors[k]}" fill-opacity="0.18" fill-rule="evenodd" stroke="none"/>'
        )
        legend.append(f"{k}: {lo:.6g} < |v| < {hi:.6g}")
    out.append(
        f'<circle class="unit-circle" cx="{_f(c)}" cy="{_f(c)}" r="{_f(scale)}" '
        'fill="none" stroke="black" stroke-width="1.2"/>'
    )
    order = np.lexsort((v.imag, v.real)) if v.size else []
    for i in order:
        z = v[i]
        cls = "pole unit-pole" if unit[i] else "pole"
        out.append(
            f'<circle class="{cls}" cx="{_f(c + z.real * scale)}" cy="{_f(c - z.imag * scale)}" r="3" '
            f'fill="{"#555555" if unit[i] else "black"}"/>'
        )
    legend.insert(0, f"n={g.n} m={g.m} rho={rho:.6g} poles={v.size}")
    for j, line in enumerate(legend):
        out.append(f'<text x="10" y="{18 + 16 * j}" font-family="monospace" font-size="12">{line}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def plot_spectrum(g: Graph, rho: float, out: str | Path, **kw) -> Path:
    out = Path(out)
    out.write_text(spectrum_svg(g, rho, **kw))
    return out
