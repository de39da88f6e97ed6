"""SVG line drawings of the cut-locus diagrams.

All geometry is computed from the cutlocus/surface modules; only chart
constants (the triangle corners and their unfoldings) appear literally.
Output is deterministic: same figure and parameters, byte-identical SVG.
"""

from __future__ import annotations

import numpy as np

from . import cutlocus
from . import surface as sf
from .errors import BadParams, UnknownFigure

SCALE = 100.0  # SVG user units per length unit
MARGIN = 0.10

FIGURES = (
    "expanded_cut_locus",
    "cut_locus",
    "p_on_edge",
    "p_on_line_x0",
    "p_at_centroid",
    "p_on_CM",
    "p_domains",
    "q_max",
    "e5_star",
)

_RED = "#cc0000"
_BLACK = "#000000"


def _fmt(v: float) -> str:
    s = f"{v:.9f}"
    return s


class _Canvas:
    def __init__(self):
        self.elems: list[str] = []
        self.pts: list[tuple[float, float]] = []

    def _xy(self, p):
        x, y = float(p[0]), float(p[1])
        self.pts.append((x, y))
        return SCALE * x, -SCALE * y

    def line(self, a, b, color=_BLACK, dashed=False, width=1.5):
        (x1, y1), (x2, y2) = self._xy(a), self._xy(b)
        dash = ' stroke-dasharray="6,5"' if dashed else ""
        self.elems.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            f'stroke="{color}" stroke-width="{width}"{dash} />'
        )

    def polyline(self, pts, color=_BLACK, close=False, width=1.5):
        coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in (self._xy(p) for p in pts))
        tag = "polygon" if close else "polyline"
        self.elems.append(
            f'<{tag} points="{coords}" fill="none" stroke="{color}" stroke-width="{width}" />'
        )

    def dot(self, p, color=_BLACK, r=4.0, hollow=False):
        x, y = self._xy(p)
        fill = "white" if hollow else color
        self.elems.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{r}" fill="{fill}" '
            f'stroke="{color}" stroke-width="1.5" />'
        )

    def text(self, p, label, color=_BLACK, dx=8.0, dy=-8.0):
        x, y = self._xy(p)
        self.elems.append(
            f'<text x="{_fmt(x + dx)}" y="{_fmt(y + dy)}" font-size="26" '
            f'font-family="serif" fill="{color}">{label}</text>'
        )

    def svg(self) -> str:
        xs = [x for x, _ in self.pts]
        ys = [y for _, y in self.pts]
        w = max(xs) - min(xs)
        h = max(ys) - min(ys)
        mx, my = MARGIN * w, MARGIN * h
        x0 = SCALE * (min(xs) - mx)
        y0 = -SCALE * (max(ys) + my)
        vw = SCALE * (w + 2 * mx)
        vh = SCALE * (h + 2 * my)
        head = (
            '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(vw)} {_fmt(vh)}">'
        )
        return "\n".join([head, *self.elems, "</svg>"]) + "\n"


def _require_stratum(stratum: str, x, alpha) -> tuple[float, float]:
    """Validate and complete figure parameters for the given stratum."""
    if stratum == "S0_interior":
        if x is None or alpha is None:
            raise BadParams("expanded_cut_locus needs x and alpha")
        if not (0.0 < x < 0.5) or not (1 / 3 + x / 3 < alpha < 1.0 - x):
            raise BadParams(f"(x, alpha)=({x}, {alpha}) outside the interior stratum")
        return float(x), float(alpha)
    if stratum == "S1_edge_aM":
        x = 0.25 if x is None else float(x)
        if not (0.0 < x <= 0.5):
            raise BadParams(f"x={x} not in (0, 1/2]")
        if alpha is not None and abs(alpha - (1.0 - x)) > 1e-12:
            raise BadParams("alpha must be 1-x on the edge")
        return x, 1.0 - x
    if stratum == "S2_segment_aC":
        alpha = 2.0 / 3.0 if alpha is None else float(alpha)
        if not (1 / 3 < alpha < 1.0):
            raise BadParams(f"alpha={alpha} not in (1/3, 1)")
        if x not in (None, 0, 0.0):
            raise BadParams("x must be 0 on segment aC")
        return 0.0, alpha
    if stratum == "S3_centroid":
        if x not in (None, 0, 0.0) or alpha not in (None, 1 / 3):
            raise BadParams("the centroid figure takes no parameters")
        return 0.0, 1.0 / 3.0
    if stratum == "S4_segment_CM":
        x = 0.25 if x is None else float(x)
        if not (0.0 < x < 0.5):
            raise BadParams(f"x={x} not in (0, 1/2)")
        if alpha is not None and abs(alpha - (1.0 + x) / 3.0) > 1e-12:
            raise BadParams("alpha must be (1+x)/3 on segment CM")
        return x, (1.0 + x) / 3.0
    raise BadParams(f"no parameter rule for {stratum}")


_A = (0.0, sf.SQRT3)
_B = (-1.0, 0.0)
_C_PT = (1.0, 0.0)
_CEN = (0.0, sf.SQRT3 / 3.0)


def _draw_diagram(cv: _Canvas, diagram: cutlocus.CanonicalDiagram):
    """The flat-model figure: base face, red polygon, source point, labels."""
    cv.polyline([_A, _B, _C_PT], close=True)
    cv.polyline([v.xy for v in diagram.polygon], color=_RED, close=True)
    cv.dot(diagram.source_xy, r=3.0)
    cv.text(diagram.source_xy, "P")
    seen = set()
    for v in diagram.polygon:
        label = v.label.replace("+", "&#x2b;").replace("-", "&#x2212;")
        cv.text(v.xy, label, color=_RED)
    for name, xy in diagram.passthrough:
        if name not in seen:
            cv.text(xy, name, dx=-20.0)
            seen.add(name)


def _figure_diagram(stratum: str, x, alpha) -> str:
    x, alpha = _require_stratum(stratum, x, alpha)
    diagram = cutlocus.canonical_diagram(stratum, x, alpha)
    cv = _Canvas()
    _draw_diagram(cv, diagram)
    return cv.svg()


def _net_position(p: sf.SurfacePoint) -> np.ndarray:
    """Position in the 4-face net: abc central, neighbors unfolded outward."""
    xy = sf.chart_xy(p.face, p.bary)
    if p.face == sf.FACE_ABC:
        return xy
    return sf.apply_placement(sf.transition(sf.FACE_ABC, p.face), xy)


def _figure_cut_locus(x, alpha) -> str:
    x, alpha = _require_stratum("S0_interior", x, alpha)
    p = sf.make_point(sf.FACE_ABC, sf.bary_from_xy((x, alpha * sf.SQRT3)))
    graph = cutlocus.cut_locus_graph(p)
    cv = _Canvas()
    # net boundary: the three unfolded copies of d around abc
    d_ab = (-2.0, sf.SQRT3)
    d_ac = (2.0, sf.SQRT3)
    d_bc = (0.0, -sf.SQRT3)
    cv.polyline([d_ab, d_ac, d_bc], close=True)
    cv.polyline([_A, _B, _C_PT], close=True)
    for label, xy in (("a", _A), ("b", _B), ("c", _C_PT), ("d", d_bc)):
        cv.text(xy, label, dx=-22.0)
    cv.dot((x, alpha * sf.SQRT3), r=3.0)
    cv.text((x, alpha * sf.SQRT3), "P")
    for arc in graph.arcs:
        pts = [_net_position(q) for q in arc.points]
        run = [pts[0]]
        for prev, cur in zip(pts, pts[1:]):
            if np.hypot(*(np.asarray(cur) - prev)) > 0.5:
                if len(run) > 1:
                    cv.polyline(run, color=_RED)
                run = [cur]
            else:
                run.append(cur)
        if len(run) > 1:
            cv.polyline(run, color=_RED)
    for label, node, _mult in graph.nodes:
        if label in ("U", "L", "B"):
            cv.text(_net_position(node), label, color=_RED)
    return cv.svg()


def _figure_p_domains() -> str:
    cv = _Canvas()
    d_ab = (-2.0, sf.SQRT3)
    d_ac = (2.0, sf.SQRT3)
    d_bc = (0.0, -sf.SQRT3)
    cv.polyline([d_ab, d_ac, d_bc], close=True)
    cv.polyline([_A, _B, _C_PT], close=True)
    for v in (_A, _B, _C_PT):
        cv.line(_CEN, v, dashed=True)
    cv.text(_CEN, "C", dx=-10.0, dy=24.0)
    cv.text(_A, "a", dy=-4.0)
    cv.text(_B, "b", dx=-24.0)
    cv.text(_C_PT, "c")
    for d_pt in (d_ab, d_ac, d_bc):
        cv.text(d_pt, "d")
    return cv.svg()


def _figure_q_max() -> str:
    """Source regions in the quadrilateral aCcd and the matching farthest targets."""
    cv = _Canvas()
    c_pt, a, b, cen = _C_PT, _A, _B, _CEN
    d_ac = (2.0, sf.SQRT3)
    m_ac = (0.5, sf.SQRT3 / 2.0)
    cv.polyline([a, b, c_pt], close=True)
    cv.polyline([a, d_ac, c_pt])
    cv.line(c_pt, (1.0, sf.SQRT3))
    cv.line(c_pt, cen, dashed=True)
    cv.line(cen, a, dashed=True)
    cv.line(cen, d_ac)
    cv.line(a, (1.5, sf.SQRT3 / 2.0))
    # output panel, offset to the right as in the source figure
    o = np.array([2.0, -sf.SQRT3 / 3.0])
    for seg in (
        ((0, 0), (2.0, 2.0 / 3.0 * sf.SQRT3)),
        ((1.0, sf.SQRT3 / 3.0), (1.0, sf.SQRT3)),
        ((1.0, sf.SQRT3 / 3.0), (0.0, sf.SQRT3 / 3.0 + sf.SQRT3 / 3.0)),
        ((0.0, 2.0 / 3.0 * sf.SQRT3), (1.0, sf.SQRT3 / 3.0)),
        ((0.0, sf.SQRT3 / 3.0), (1.0, sf.SQRT3 / 3.0)),
        ((1.0, sf.SQRT3 / 3.0), (1.5, sf.SQRT3 * 5.0 / 6.0)),
    ):
        cv.line(o + seg[0], o + seg[1])
    cv.line(o + np.array([0.0, 0.0]), o + np.array([2.0, 2.0 / 3.0 * sf.SQRT3]), dashed=True)
    for label, pos in (
        ("1", (0.5, sf.SQRT3 / 3.0)),
        ("2", (0.23, 0.6 * sf.SQRT3)),
        ("3", (0.66, 0.7 * sf.SQRT3)),
        ("4", (0.7, 0.87 * sf.SQRT3)),
        ("5", (1.3, 0.87 * sf.SQRT3)),
        ("6", (1.34, 0.7 * sf.SQRT3)),
        ("7", (1.2, 0.4 * sf.SQRT3)),
        ("8", (0.8, 0.4 * sf.SQRT3)),
    ):
        cv.text(pos, label, dx=0.0, dy=0.0)
    cv.text((1.0, 1.12 * sf.SQRT3), "Input P", dx=-30.0)
    cv.text(tuple(o + (2.0, 0.0)), "Output Q_max")
    cv.text(a, "a", dy=-4.0)
    cv.text(b, "b", dx=-24.0)
    cv.text(c_pt, "c")
    cv.text(d_ac, "d")
    cv.text(m_ac, "")
    return cv.svg()


def _figure_e5_star() -> str:
    """One star set: an open edge plus the two whiskers to adjacent centroids."""
    cv = _Canvas()
    half = 1.0  # half edge length
    whisker = float(np.hypot(0.5, sf.SQRT3 / 2.0 - sf.SQRT3 / 3.0))  # |MC| = 1/sqrt(3)
    reach = sf.SQRT3  # |Mb| along the median
    a = (0.0, half)
    c = (0.0, -half)
    b = (-reach, 0.0)
    d = (reach, 0.0)
    cv.line(a, c, color=_RED, width=2.5)
    cv.line((-whisker, 0.0), (whisker, 0.0), color=_RED, width=2.5)
    cv.line((-reach, 0.0), (-whisker, 0.0))
    cv.line((whisker, 0.0), (reach, 0.0))
    for p, label in ((a, "a"), (c, "c"), (b, "b"), (d, "d")):
        cv.dot(p, hollow=True)
        cv.text(p, label)
    for s in (-1.0, 1.0):
        cv.dot((s * whisker, 0.0), hollow=True)
        cv.text((s * whisker, 0.0), "C", dy=20.0)
    cv.dot((0.0, 0.0), r=3.0)
    cv.text((0.0, 0.0), "M")
    for sx in (-1.0, 1.0):
        for sy in (-1.0, 1.0):
            bpt = (sx * 0.8 * reach, sy * half * 1.2)
            cv.text(bpt, "B", color=_RED, dx=0.0, dy=0.0)
    return cv.svg()


def render_figure(name: str, x: float | None = None, alpha: float | None = None) -> str:
    if name == "expanded_cut_locus":
        return _figure_diagram("S0_interior", x, alpha)
    if name == "cut_locus":
        return _figure_cut_locus(x, alpha)
    if name == "p_on_edge":
        return _figure_diagram("S1_edge_aM", x, alpha)
    if name == "p_on_line_x0":
        return _figure_diagram("S2_segment_aC", x, alpha)
    if name == "p_at_centroid":
        return _figure_diagram("S3_centroid", x, alpha)
    if name == "p_on_CM":
        return _figure_diagram("S4_segment_CM", x, alpha)
    if name in ("p_domains", "q_max", "e5_star"):
        if x is not None or alpha is not None:
            raise BadParams(f"{name} takes no parameters")
        if name == "p_domains":
            return _figure_p_domains()
        if name == "q_max":
            return _figure_q_max()
        return _figure_e5_star()
    raise UnknownFigure(f"unknown figure {name!r}; choose from {', '.join(FIGURES)}")


def render_point_diagram(p: sf.SurfacePoint) -> str:
    """Expanded cut locus figure for an arbitrary point, in its canonical frame."""
    ecl = cutlocus.expanded_cut_locus(p)
    cv = _Canvas()
    _draw_diagram(cv, ecl.canonical)
    return cv.svg()
