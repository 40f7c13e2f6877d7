"""Minimal SVG emitter for log-log scatter plots with fitted lines."""

from __future__ import annotations

import math

_COLORS = ("#1f6fb2", "#c23b22", "#2e8540", "#8d5fb0", "#b08b00", "#4a4a4a")


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def render_loglog(series: list[dict], title: str = "",
                  xlabel: str = "log10 T", ylabel: str = "log10 mean",
                  metadata: str = "") -> str:
    """series: dicts with keys label, points [(T, mean), ...] and optionally
    slope/intercept of a natural-log OLS fit to draw as a line. metadata is
    embedded as a comment so the file records its own provenance."""
    width, height = 640, 480
    ml, mr, mt, mb = 70, 20, 40, 50
    pts_log = []
    for s in series:
        for t, v in s["points"]:
            pts_log.append((math.log10(t), math.log10(v)))
    if not pts_log:
        raise ValueError("nothing to plot")
    xs = [p[0] for p in pts_log]
    ys = [p[1] for p in pts_log]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    xpad = 0.05 * (x1 - x0 or 1.0)
    ypad = 0.08 * (y1 - y0 or 1.0)
    x0, x1 = x0 - xpad, x1 + xpad
    y0, y1 = y0 - ypad, y1 + ypad

    def px(x):
        return ml + (x - x0) / (x1 - x0) * (width - ml - mr)

    def py(y):
        return height - mb - (y - y0) / (y1 - y0) * (height - mt - mb)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">']
    if metadata:
        out.append(f"<!-- {metadata} -->")
    out.append(f'<rect width="{width}" height="{height}" fill="white"/>')
    out.append(f'<text x="{width/2:.0f}" y="24" text-anchor="middle" font-size="16">{title}</text>')
    # axes
    out.append(f'<line x1="{ml}" y1="{height-mb}" x2="{width-mr}" y2="{height-mb}" '
               'stroke="black" stroke-width="1"/>')
    out.append(f'<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{height-mb}" '
               'stroke="black" stroke-width="1"/>')
    for t in _ticks(x0, x1):
        out.append(f'<line x1="{px(t):.1f}" y1="{height-mb}" x2="{px(t):.1f}" '
                   f'y2="{height-mb+5}" stroke="black"/>')
        out.append(f'<text x="{px(t):.1f}" y="{height-mb+18}" text-anchor="middle" '
                   f'font-size="11">{t:.2f}</text>')
    for t in _ticks(y0, y1):
        out.append(f'<line x1="{ml-5}" y1="{py(t):.1f}" x2="{ml}" y2="{py(t):.1f}" stroke="black"/>')
        out.append(f'<text x="{ml-8}" y="{py(t)+4:.1f}" text-anchor="end" '
                   f'font-size="11">{t:.2f}</text>')
    out.append(f'<text x="{(ml+width-mr)/2:.0f}" y="{height-12}" text-anchor="middle" '
               f'font-size="13">{xlabel}</text>')
    out.append(f'<text x="16" y="{(mt+height-mb)/2:.0f}" text-anchor="middle" font-size="13" '
               f'transform="rotate(-90 16 {(mt+height-mb)/2:.0f})">{ylabel}</text>')

    for k, s in enumerate(series):
        color = _COLORS[k % len(_COLORS)]
        if "slope" in s:
            ln10 = math.log(10.0)
            ya = s["intercept"] / ln10 + s["slope"] * x0
            yb = s["intercept"] / ln10 + s["slope"] * x1
            out.append(f'<line x1="{px(x0):.1f}" y1="{py(ya):.1f}" x2="{px(x1):.1f}" '
                       f'y2="{py(yb):.1f}" stroke="{color}" stroke-width="1.2" '
                       'stroke-dasharray="5,3"/>')
        for t, v in s["points"]:
            out.append(f'<circle cx="{px(math.log10(t)):.1f}" cy="{py(math.log10(v)):.1f}" '
                       f'r="3" fill="{color}" fill-opacity="0.7"/>')
        label = s["label"]
        if "slope" in s:
            label += f" (slope {s['slope']:.3f})"
        out.append(f'<text x="{width-mr-8}" y="{mt + 16*(k+1)}" text-anchor="end" '
                   f'font-size="12" fill="{color}">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
