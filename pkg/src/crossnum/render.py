"""SVG rendering: straight-line layout of a drawing's planarization.

Coordinates are a barycentric (Tutte-style) relaxation with the largest
face pinned to a circle; purely a visualization aid, the combinatorial
drawing file remains the canonical artifact.  Output bytes are
deterministic for a fixed input.
"""

from __future__ import annotations

import math

from .drawing import CombinatorialDrawing, UnrealizableDrawing, validate_good


def _layout(emb):
    nodes = sorted(emb.rot)
    faces = emb.faces()
    pos = {}
    if not faces:
        for i, n in enumerate(nodes):
            pos[n] = (math.cos(i), math.sin(i))
        return pos
    outer = max(faces, key=lambda f: (len(f), f))
    boundary = []
    for dart in outer:
        n = emb.tail(dart)
        if n not in boundary:
            boundary.append(n)
    m = len(boundary)
    for i, n in enumerate(boundary):
        ang = 2 * math.pi * i / m
        pos[n] = (math.cos(ang), math.sin(ang))
    inner = [n for n in nodes if n not in pos]
    for n in inner:
        pos[n] = (0.0, 0.0)
    neighbors = {n: [] for n in nodes}
    for a, b, _ in emb.segs.values():
        neighbors[a].append(b)
        neighbors[b].append(a)
    for _ in range(220):
        for n in inner:
            ns = neighbors[n]
            if not ns:
                continue
            x = sum(pos[w][0] for w in ns) / len(ns)
            y = sum(pos[w][1] for w in ns) / len(ns)
            pos[n] = (x, y)
    # deterministic nudge for any coincident points (cut vertices etc.)
    seen = {}
    for i, n in enumerate(nodes):
        key = (round(pos[n][0], 9), round(pos[n][1], 9))
        if key in seen:
            bump = 0.03 * (seen[key])
            pos[n] = (pos[n][0] + bump, pos[n][1] + bump * 0.618)
            seen[key] += 1
        else:
            seen[key] = 1
    return pos


def render_svg(d: CombinatorialDrawing, path=None, size=420) -> str:
    """Render the drawing; crossings appear at their dummy coordinates."""
    rep = validate_good(d)
    if not rep.ok:
        raise UnrealizableDrawing(rep.violation)
    emb = d.with_orientations().emb()
    pos = _layout(emb)

    def sx(p):
        return (p[0] * 0.42 + 0.5) * size

    def sy(p):
        return (p[1] * 0.42 + 0.5) * size

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" '
        f'height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for sid in sorted(emb.segs):
        a, b, _ = emb.segs[sid]
        lines.append(
            '<line x1="%.2f" y1="%.2f" x2="%.2f" y2="%.2f" '
            'stroke="black" stroke-width="1.2"/>'
            % (sx(pos[a]), sy(pos[a]), sx(pos[b]), sy(pos[b]))
        )
    for n in sorted(emb.rot):
        x, y = sx(pos[n]), sy(pos[n])
        if n[0] == "v":
            lines.append(
                '<circle cx="%.2f" cy="%.2f" r="5" fill="black" '
                'class="vertex"/>' % (x, y)
            )
            lines.append(
                '<text x="%.2f" y="%.2f" font-size="10" fill="red">%s</text>'
                % (x + 6, y - 6, n[1])
            )
        else:
            lines.append(
                '<rect x="%.2f" y="%.2f" width="6" height="6" '
                'fill="none" stroke="blue" class="crossing"/>'
                % (x - 3, y - 3)
            )
    lines.append("</svg>")
    out = "\n".join(lines) + "\n"
    if path is not None:
        with open(path, "w") as fh:
            fh.write(out)
    return out
