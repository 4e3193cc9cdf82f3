"""Static SVG figures for certificates; never affects verdicts.

Pair and distance certificates are drawn triangle by triangle: each
triangle of the base becomes one equilateral cell, its sides carry the edge
labels, and the arcs appear as chords through the cells at their exact
strand positions from the minimal-position realization.  Level reports get
one band per level with the tube columns drawn between bands.
"""

from __future__ import annotations

import math
from pathlib import Path

from .arc import ArcWord
from .overlay import Realization
from .surface import Corner, edge_of

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


def _tri_geometry(cx, cy, r):
    pts = []
    for k in range(3):
        ang = math.pi / 2 + 2 * math.pi * k / 3
        pts.append((cx + r * math.cos(ang), cy - r * math.sin(ang)))
    return pts


def _side_point(corners, pos, frac):
    (x1, y1), (x2, y2) = corners[pos], corners[(pos + 1) % 3]
    return (x1 + (x2 - x1) * frac, y1 + (y2 - y1) * frac)


def _coord_point(corners, coord, counts):
    pos, rank = coord
    if rank < 0:
        return corners[pos]
    m = counts.get(pos, 0)
    return _side_point(corners, pos, (rank + 1) / (m + 1))


def render_arcs_svg(arcs: list[ArcWord], labels: list[str] | None = None) -> str:
    """One cell per triangle; arcs drawn as chords at their strand slots."""
    if not arcs:
        raise ValueError("nothing to draw")
    base = arcs[0].base
    labels = labels or [f"arc {i}" for i in range(len(arcs))]

    # strand slots: realize pairwise against the first arc to place points
    # consistently; single-arc case uses its own self order
    reference = arcs[0]
    placements = []
    for a in arcs:
        real = Realization(reference, a) if a != reference else Realization(a, a)
        placements.append(real)

    cols = min(4, base.n_triangles)
    rows = (base.n_triangles + cols - 1) // cols
    cell, r = 180, 72
    width, height = cols * cell, rows * cell + 30 * len(arcs) + 20
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">'
    ]
    centers = {}
    for t in range(base.n_triangles):
        cx = (t % cols) * cell + cell / 2
        cy = (t // cols) * cell + cell / 2
        corners = _tri_geometry(cx, cy, r)
        centers[t] = corners
        pts = " ".join(f"{x:.1f},{y:.1f}" for x, y in corners)
        out.append(f'<polygon points="{pts}" fill="#f8f8f8" stroke="#444"/>')
        out.append(f'<text x="{cx:.1f}" y="{cy - r - 6:.1f}" text-anchor="middle" fill="#444">t{t}</text>')
        for k in range(3):
            s = base.side(Corner(t, k))
            mx, my = _side_point(corners, k, 0.5)
            out.append(
                f'<text x="{mx:.1f}" y="{my:.1f}" text-anchor="middle" fill="#888">'
                f"e{edge_of(s)}{'+' if s > 0 else '-'}</text>"
            )

    for ai, (arc, real) in enumerate(zip(arcs, placements)):
        color = _COLORS[ai % len(_COLORS)]
        owner = 0 if arc == reference else 1
        segs = real.segments[owner]
        counts_per_tri = {}
        for seg in segs:
            for coord in (seg.a, seg.b):
                if coord[1] >= 0:
                    key = (seg.tri, coord[0])
                    counts_per_tri[key] = max(counts_per_tri.get(key, 0), coord[1] + 1)
        for seg in segs:
            corners = centers[seg.tri]
            counts = {pos: n for (t, pos), n in counts_per_tri.items() if t == seg.tri}
            x1, y1 = _coord_point(corners, seg.a, counts)
            x2, y2 = _coord_point(corners, seg.b, counts)
            out.append(
                f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" '
                f'stroke="{color}" stroke-width="1.8"/>'
            )
        ly = rows * cell + 20 + 24 * ai
        out.append(f'<line x1="12" y1="{ly}" x2="40" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="48" y="{ly + 4}" fill="#222">{labels[ai]}</text>')
    out.append("</svg>")
    return "\n".join(out)


def render_levels_svg(level_certificate: dict) -> str:
    """Schematic of an n-level position: one band per level, tubes between."""
    pos = level_certificate["level_position"]
    n = pos["n_levels"]
    band_h, band_w, gap = 70, 480, 46
    width = band_w + 60
    height = n * band_h + (n - 1) * gap + 60
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">'
    ]
    tops = {}
    for j in range(1, n + 1):
        # level n drawn at the top
        y = 30 + (n - j) * (band_h + gap)
        tops[j] = y
        out.append(
            f'<rect x="30" y="{y}" width="{band_w}" height="{band_h}" rx="10" '
            'fill="#eef4fb" stroke="#446"/>'
        )
        out.append(f'<text x="36" y="{y + 16}" fill="#446">level {j} (genus {pos["surface_genus"]})</text>')
        entries = pos["levels"][j - 1]
        names = []
        for entry in entries:
            kind, label, _ = entry
            if kind == "arc":
                names.append(f"s{label}")
            elif kind == "stub_alpha":
                names.append(f"a{label}")
            else:
                names.append(f"b{label}")
        out.append(f'<text x="36" y="{y + band_h - 12}" fill="#222">strands: {", ".join(names)}</text>')
        px, qx = 120, band_w - 60
        py = y + band_h / 2
        out.append(f'<circle cx="{px}" cy="{py}" r="3.5" fill="#d62728"/>')
        out.append(f'<circle cx="{qx}" cy="{py}" r="3.5" fill="#1f77b4"/>')
        out.append(f'<text x="{px - 16}" y="{py + 4}" fill="#d62728">p</text>')
        out.append(f'<text x="{qx + 8}" y="{py + 4}" fill="#1f77b4">q</text>')
        if any(e[0] == "arc" for e in entries):
            out.append(
                f'<path d="M {px} {py} C {px + 80} {py - 24}, {qx - 80} {py + 24}, {qx} {py}" '
                'fill="none" stroke="#222" stroke-width="1.6"/>'
            )
    for tube in pos["tubes"]:
        j = tube["index"]
        y_low, y_high = tops[j], tops[j + 1] + band_h
        cx = 150 + 40 * (j - 1)
        out.append(
            f'<rect x="{cx - 14}" y="{y_high - 6}" width="28" height="{y_low - y_high + 12}" rx="9" '
            'fill="none" stroke="#888" stroke-dasharray="4 3"/>'
        )
        for dx, lab in ((-6, tube["p_strand"]), (6, tube["q_strand"])):
            out.append(
                f'<line x1="{cx + dx}" y1="{y_high - 6}" x2="{cx + dx}" y2="{y_low + 6}" '
                'stroke="#555" stroke-width="1.4"/>'
            )
        out.append(f'<text x="{cx + 18}" y="{(y_low + y_high) / 2}" fill="#555">T{j}</text>')
    out.append("</svg>")
    return "\n".join(out)


def render_document(doc: dict, out_dir) -> list[str]:
    """Write figures for a certificate-bearing document; returns file names."""
    from .serialize import load_distance_certificate, load_pair, load_sequence

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    tag = doc.get("format")
    if tag == "arcdist.distance_certificate/1":
        cert = load_distance_certificate(doc)
        arcs = [cert.v, cert.w]
        labels = ["v", "w"]
        if cert.witness is not None:
            arcs.append(cert.witness)
            labels.append("witness")
        (out_dir / "pair.svg").write_text(render_arcs_svg(arcs, labels))
        written.append("pair.svg")
    elif tag == "arcdist.pair/1":
        v, w = load_pair(doc)
        (out_dir / "pair.svg").write_text(render_arcs_svg([v, w], ["v", "w"]))
        written.append("pair.svg")
    elif tag == "arcdist.arc_sequence/1":
        seq = load_sequence(doc)
        (out_dir / "sequence.svg").write_text(
            render_arcs_svg(list(seq.arcs), [f"s{i}" for i in range(len(seq.arcs))])
        )
        written.append("sequence.svg")
    elif tag == "arcdist.level_report/1":
        if "level_certificate" in doc:
            (out_dir / "levels.svg").write_text(render_levels_svg(doc["level_certificate"]))
            written.append("levels.svg")
    elif tag == "arcdist.level_certificate/1":
        (out_dir / "levels.svg").write_text(render_levels_svg(doc))
        written.append("levels.svg")
    else:
        raise ValueError(f"no renderer for format {tag!r}")
    return written
