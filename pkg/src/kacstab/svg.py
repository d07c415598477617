"""Phase-circle diagram: occupied phases as ticks, cone components as arcs, the gap shaded."""

from __future__ import annotations

import math

from .cone import GapCertificate

SIZE = 320
R = 120


def _point(phi: float, r: float = R) -> tuple[float, float]:
    # phases live on a circle of period 1 after folding antipodes
    ang = 2 * math.pi * phi
    return SIZE / 2 + r * math.cos(ang), SIZE / 2 - r * math.sin(ang)


def _arc(a: float, b: float, r: float) -> str:
    x0, y0 = _point(a, r)
    x1, y1 = _point(b, r)
    large = 1 if (b - a) % 1 > 0.5 else 0
    return f"M {x0:.3f} {y0:.3f} A {r} {r} 0 {large} 0 {x1:.3f} {y1:.3f}"


def phase_circle_svg(gap: GapCertificate) -> str:
    lo, hi = gap.theta.value, gap.theta_prime.value
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
             f'viewBox="0 0 {SIZE} {SIZE}">',
             f'<circle cx="{SIZE / 2}" cy="{SIZE / 2}" r="{R}" fill="none" stroke="#888"/>']
    if hi - lo >= 1:
        parts.append(f'<circle cx="{SIZE / 2}" cy="{SIZE / 2}" r="{R}" fill="#cde" stroke="none"/>')
    else:
        x0, y0 = _point(lo)
        parts.append(f'<path d="M {SIZE / 2} {SIZE / 2} L {x0:.3f} {y0:.3f} '
                     f'{_arc(lo, hi, R)[_arc(lo, hi, R).index("A"):]} Z" fill="#cde" stroke="none"/>')
    for c in gap.components:
        if c.sign > 0:
            a, b = c.lo.folded().value, c.hi.folded().value
            if a == b:
                x, y = _point(a, R + 8)
                parts.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="4" fill="#c33"/>')
            else:
                parts.append(f'<path d="{_arc(a, b, R + 8)}" fill="none" stroke="#c33" stroke-width="4"/>')
    for p in gap.occupied:
        x0, y0 = _point(p.value, R - 6)
        x1, y1 = _point(p.value, R + 6)
        parts.append(f'<line x1="{x0:.3f}" y1="{y0:.3f}" x2="{x1:.3f}" y2="{y1:.3f}" stroke="#000"/>')
    parts.append(f'<text x="8" y="{SIZE - 8}" font-family="monospace" font-size="11">'
                 f'gap ({lo:.4f}, {hi:.4f})</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
