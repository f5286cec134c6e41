"""Self-contained SVG convergence charts.

Hand-rolled rather than delegated to a plotting stack so that a fixed input
renders to byte-identical SVG: archivable artifacts with no font caches,
timestamps or external assets. The y axis is log10; envelope curves are
dashed.
"""

import math

__all__ = ["render_convergence_svg", "write_convergence_svg"]

_WIDTH, _HEIGHT = 800, 520
_ML, _MR, _MT, _MB = 70, 24, 44, 52
_PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
)
_MAX_POINTS = 1500


def _subsample(points):
    if len(points) <= _MAX_POINTS:
        return points
    stride = -(-len(points) // _MAX_POINTS)
    kept = points[::stride]
    if kept[-1] != points[-1]:
        kept.append(points[-1])
    return kept


def _nice_x_ticks(t_max):
    if t_max <= 0:
        return [0]
    raw = t_max / 6.0
    mag = 10 ** math.floor(math.log10(raw)) if raw >= 1 else 1
    for mult in (1, 2, 5, 10):
        if raw <= mult * mag:
            step = mult * mag
            break
    ticks = list(range(0, int(t_max) + 1, int(step)))
    if ticks[-1] != int(t_max):
        ticks.append(int(t_max))
    return ticks


def render_convergence_svg(observed, envelopes=(), title="", ylabel="value", xlabel="iteration t"):
    """Render solid observed curves and dashed envelope curves to an SVG string.

    Parameters
    ----------
    observed, envelopes : sequence of (label, points)
        ``points`` is a sequence of (t, value) pairs; nonpositive values are
        skipped (the y axis is logarithmic).
    """
    series = [(label, _subsample([(t, v) for t, v in pts if v > 0.0]), False)
              for label, pts in observed]
    series += [(label, _subsample([(t, v) for t, v in pts if v > 0.0]), True)
               for label, pts in envelopes]
    drawable = [s for s in series if s[1]]

    if drawable:
        t_max = max(pt[0] for _, pts, _ in drawable for pt in pts)
        vals = [pt[1] for _, pts, _ in drawable for pt in pts]
        lo = math.floor(math.log10(min(vals)))
        hi = math.ceil(math.log10(max(vals)))
        if lo == hi:
            hi = lo + 1
    else:
        t_max, lo, hi = 1, 0, 1

    pw = _WIDTH - _ML - _MR
    ph = _HEIGHT - _MT - _MB

    def sx(t):
        return _ML + (t / t_max if t_max else 0.0) * pw

    def sy(v):
        return _MT + (hi - math.log10(v)) / (hi - lo) * ph

    out = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">'
    )
    out.append(f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>')
    if title:
        out.append(
            f'<text x="{_WIDTH / 2:.1f}" y="24" text-anchor="middle" '
            f'font-family="sans-serif" font-size="15">{title}</text>'
        )

    # axes box
    out.append(
        f'<rect x="{_ML}" y="{_MT}" width="{pw}" height="{ph}" fill="none" '
        f'stroke="#333333" stroke-width="1"/>'
    )

    # y ticks: one per decade, thinned to at most 12 labels
    decades = list(range(lo, hi + 1))
    step = -(-len(decades) // 12)
    for d in decades[::step]:
        y = sy(10.0**d)
        out.append(
            f'<line x1="{_ML}" y1="{y:.2f}" x2="{_ML + pw}" y2="{y:.2f}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{_ML - 8}" y="{y + 4:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">1e{d}</text>'
        )

    for t in _nice_x_ticks(t_max):
        x = sx(t)
        out.append(
            f'<line x1="{x:.2f}" y1="{_MT + ph}" x2="{x:.2f}" y2="{_MT + ph + 5}" '
            f'stroke="#333333" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{x:.2f}" y="{_MT + ph + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{t}</text>'
        )

    out.append(
        f'<text x="{_ML + pw / 2:.1f}" y="{_HEIGHT - 14}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{xlabel}</text>'
    )
    out.append(
        f'<text x="18" y="{_MT + ph / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 18 {_MT + ph / 2:.1f})">{ylabel}</text>'
    )

    legend_y = _MT + 14
    for k, (label, pts, dashed) in enumerate(series):
        color = _PALETTE[k % len(_PALETTE)]
        if pts:
            coords = " ".join(f"{sx(t):.2f},{sy(v):.2f}" for t, v in pts)
            dash = ' stroke-dasharray="6,4"' if dashed else ""
            out.append(
                f'<polyline points="{coords}" fill="none" stroke="{color}" '
                f'stroke-width="1.5"{dash}/>'
            )
        if label:
            x0 = _ML + pw - 170
            dash = ' stroke-dasharray="6,4"' if dashed else ""
            out.append(
                f'<line x1="{x0}" y1="{legend_y}" x2="{x0 + 22}" y2="{legend_y}" '
                f'stroke="{color}" stroke-width="1.5"{dash}/>'
            )
            out.append(
                f'<text x="{x0 + 28}" y="{legend_y + 4}" font-family="sans-serif" '
                f'font-size="11">{label}</text>'
            )
            legend_y += 16

    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_convergence_svg(path, observed, envelopes=(), **kwargs):
    svg = render_convergence_svg(observed, envelopes, **kwargs)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(svg)
