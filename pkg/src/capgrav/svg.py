"""Standalone SVG rendering of a single trajectory in the (x, z) plane.

The document's viewBox is in data units (z flipped to point up) and covers
the finite samples with a 5% margin.  Breaks in the trajectory, i.e.
z-asymptotes or non-finite samples, split the curve into separate
polylines so no segment is drawn across a divergence.
"""

import math
from xml.sax.saxutils import escape

import numpy as np

from .errors import DomainError

MARGIN = 0.05


def segments(trajectory):
    """Index arrays of the continuous pieces of ``trajectory``."""
    t, x, z = trajectory.t, trajectory.x, trajectory.z
    finite = np.isfinite(x) & np.isfinite(z)
    cut = np.zeros(len(t), dtype=bool)
    for tb in trajectory.breaks:
        # first sample after each break starts a new piece
        i = int(np.searchsorted(t, tb, side="right"))
        if 0 < i < len(t):
            cut[i] = True
    pieces, cur = [], []
    for i in range(len(t)):
        if not finite[i]:
            if cur:
                pieces.append(cur)
            cur = []
            continue
        if cut[i] and cur:
            pieces.append(cur)
            cur = []
        cur.append(i)
    if cur:
        pieces.append(cur)
    return [np.array(p) for p in pieces]


def nice_ticks(lo, hi, target=5):
    span = hi - lo
    if not span > 0:
        return [lo]
    raw = span / target
    mag = 10.0 ** math.floor(math.log10(raw))
    step = next(s * mag for s in (1, 2, 2.5, 5, 10) if s * mag >= raw)
    first = math.ceil(lo / step) * step
    ticks = []
    v = first
    while v <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(v) < 1e-12 * step else v)
        v += step
    return ticks


def _fmt(v):
    return format(v, ".8g")


def svg_text(trajectory, width=800, height=500, margin=MARGIN, asymptote_x=(), title=None,
             stroke="#1f4e9c"):
    """SVG document for the trajectory, and the number of polylines in it."""
    x, z = trajectory.x, trajectory.z
    finite = np.isfinite(x) & np.isfinite(z)
    if finite.sum() < 2:
        raise DomainError("need at least two finite samples to draw", module="svg")
    xmin, xmax = float(x[finite].min()), float(x[finite].max())
    zmin, zmax = float(z[finite].min()), float(z[finite].max())
    if xmax == xmin:
        xmin, xmax = xmin - 0.5, xmax + 0.5
    if zmax == zmin:
        zmin, zmax = zmin - 0.5, zmax + 0.5
    mx, mz = margin * (xmax - xmin), margin * (zmax - zmin)
    vx0, vx1 = xmin - mx, xmax + mx
    vz0, vz1 = zmin - mz, zmax + mz
    vw, vh = vx1 - vx0, vz1 - vz0

    # text is drawn in data units; undo the anisotropic stretch of the viewBox
    font = 0.03 * vh
    squash = (vw / vh) * (height / width)
    tick = 0.012 * vh

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="{_fmt(vx0)} {_fmt(-vz1)} {_fmt(vw)} {_fmt(vh)}" preserveAspectRatio="none">',
    ]
    if title:
        out.append(f"<title>{escape(title)}</title>")
    out.append(f'<rect x="{_fmt(vx0)}" y="{_fmt(-vz1)}" width="{_fmt(vw)}" height="{_fmt(vh)}" '
               'fill="white"/>')

    axis = 'stroke="black" stroke-width="1" vector-effect="non-scaling-stroke"'
    out.append('<g class="axes">')
    base_z = zmin - 0.5 * mz
    base_x = xmin - 0.5 * mx
    out.append(f'<line x1="{_fmt(vx0)}" y1="{_fmt(-base_z)}" x2="{_fmt(vx1)}" y2="{_fmt(-base_z)}" {axis}/>')
    out.append(f'<line x1="{_fmt(base_x)}" y1="{_fmt(-vz0)}" x2="{_fmt(base_x)}" y2="{_fmt(-vz1)}" {axis}/>')
    for v in nice_ticks(xmin, xmax):
        out.append(f'<line class="tick" x1="{_fmt(v)}" y1="{_fmt(-base_z)}" x2="{_fmt(v)}" '
                   f'y2="{_fmt(-base_z - tick)}" {axis}/>')
        out.append(f'<text transform="translate({_fmt(v)},{_fmt(-base_z + 1.2 * font)}) '
                   f'scale({_fmt(squash)},1)" font-size="{_fmt(font)}" text-anchor="middle">'
                   f'{_fmt(v)}</text>')
    for v in nice_ticks(zmin, zmax):
        out.append(f'<line class="tick" x1="{_fmt(base_x)}" y1="{_fmt(-v)}" '
                   f'x2="{_fmt(base_x + tick * squash)}" y2="{_fmt(-v)}" {axis}/>')
        out.append(f'<text transform="translate({_fmt(base_x + 1.5 * tick * squash)},{_fmt(-v)}) '
                   f'scale({_fmt(squash)},1)" font-size="{_fmt(font)}">{_fmt(v)}</text>')
    out.append("</g>")

    for xa in asymptote_x:
        if vx0 <= xa <= vx1:
            out.append(f'<line class="asymptote" x1="{_fmt(xa)}" y1="{_fmt(-vz0)}" x2="{_fmt(xa)}" '
                       f'y2="{_fmt(-vz1)}" stroke="#999999" stroke-dasharray="4 3" stroke-width="1" '
                       'vector-effect="non-scaling-stroke"/>')

    pieces = segments(trajectory)
    for idx in pieces:
        pts = " ".join(f"{_fmt(x[i])},{_fmt(-z[i])}" for i in idx)
        out.append(f'<polyline fill="none" stroke="{stroke}" stroke-width="1.5" '
                   f'vector-effect="non-scaling-stroke" points="{pts}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n", len(pieces)


def emit_svg(trajectory, path, **options):
    """Write the trajectory as an SVG file; returns the number of polylines drawn.

    ``options`` are passed to ``svg_text`` (width, height, margin,
    asymptote_x, title, stroke).
    """
    text, count = svg_text(trajectory, **options)
    with open(path, "w", newline="\n") as fh:
        fh.write(text)
    return count
