"""Static SVG drawings of two-dimensional subdivisions."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .errors import CutOperadError
from .geometry import to_geom

PALETTE = ["#1f4e9c", "#c0392b", "#27ae60", "#8e44ad", "#d35400", "#16a085"]
DASHES = ["", "6,3", "2,3", "8,3,2,3"]


def _styles(sig):
    out = {}
    for i, g in enumerate(sig.all_generators()):
        out[g.name] = (PALETTE[i % len(PALETTE)], DASHES[(i // len(PALETTE)) % len(DASHES)])
    return out


def render2d(e, sig, size=320, margin=20) -> str:
    """SVG of a numbered 2-d subdivision.

    Direction 1 is horizontal (left to right), direction 2 vertical (bottom
    to top).  Boxes show their numbers; cuts are stroked per generator and
    listed in a legend.
    """
    if sig.d != 2:
        raise CutOperadError(f"rendering needs d = 2, got d = {sig.d}")
    tree = getattr(e, "tree", e)
    g = to_geom(tree, 2)
    styles = _styles(sig)

    def X(x):
        return margin + float(x) * size

    def Y(y):
        return margin + (1 - float(y)) * size

    segments = {}
    for box, _, faces in g.cells:
        (x0, x1), (y0, y1) = box
        sides = [((x0, y0), (x0, y1), faces[0]), ((x1, y0), (x1, y1), faces[1]),
                 ((x0, y0), (x1, y0), faces[2]), ((x0, y1), (x1, y1), faces[3])]
        for a, b, label in sides:
            if label is not None:
                segments[(a, b)] = label

    used = sorted(set(segments.values()), key=lambda n: list(styles).index(n))
    legend_h = 18 * len(used)
    width, height = size + 2 * margin, size + 2 * margin + legend_h + (8 if used else 0)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">',
           f'<rect x="{margin}" y="{margin}" width="{size}" height="{size}" '
           'fill="white" stroke="black" stroke-width="2"/>']
    for (a, b), label in sorted(segments.items()):
        color, dash = styles[label]
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(f'<line x1="{X(a[0]):.3f}" y1="{Y(a[1]):.3f}" x2="{X(b[0]):.3f}" '
                   f'y2="{Y(b[1]):.3f}" stroke="{color}" stroke-width="2"{dash_attr}/>')
    for box, payload, _ in g.cells:
        (x0, x1), (y0, y1) = box
        cx, cy = X((x0 + x1) / 2), Y((y0 + y1) / 2)
        fs = max(8, min(18, int(min(float(x1 - x0), float(y1 - y0)) * size / 2.5)))
        out.append(f'<text x="{cx:.3f}" y="{cy:.3f}" font-family="sans-serif" '
                   f'font-size="{fs}" text-anchor="middle" dominant-baseline="middle">'
                   f'{escape(str(payload))}</text>')
    for i, name in enumerate(used):
        color, dash = styles[name]
        y = size + 2 * margin + 8 + 18 * i
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(f'<line x1="{margin}" y1="{y}" x2="{margin + 30}" y2="{y}" '
                   f'stroke="{color}" stroke-width="2"{dash_attr}/>')
        out.append(f'<text x="{margin + 38}" y="{y}" font-family="sans-serif" font-size="12" '
                   f'dominant-baseline="middle">{escape(name)} '
                   f'(direction {sig.direction(name)}, arity {sig.arity(name)})</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
