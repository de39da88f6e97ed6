"""Closed-form expanded cut locus, its boundary strata, and the on-surface tree.

The generic (interior) case evaluates the closed-form corner coordinates
    U+- = (+-2+x, sqrt3*(1 - x(2-x)/(3(1-alpha))))
    U0  = (2-x,   sqrt3*(1 + x(2-x)/(3(1-alpha))))
    L+- = (+-2+x, sqrt3*(1-x^2)/(3 alpha))
    L0  = (-x,    sqrt3*(x^2-1)/(3 alpha))
in the chart of face abc for a source P = (x, alpha*sqrt3) inside the
subtriangle aCM.  All boundary strata are limits of these formulas, so one
evaluation plus merging of coincident corners produces every case; each
construction is cross-checked against the brute-force oracle in the tests
rather than trusted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels_numpy, oracle
from . import surface as sf
from . import tables

SQRT3 = sf.SQRT3

#: planar copies of the tetrahedron vertices that the generic polygon passes
#: through (midpoints of its sides)
_PASS_A = np.array([0.0, SQRT3])
_PASS_B = np.array([-1.0, 0.0])
_PASS_C = np.array([1.0, 0.0])
_PASS_D = np.array([2.0, SQRT3])


@dataclass(frozen=True)
class PolygonVertex:
    label: str  # e.g. "U0", "U-", "B", "d=U"
    xy: tuple[float, float]


@dataclass(frozen=True)
class DiagArc:
    """One cut-locus arc drawn in the canonical chart.

    kind "varc": open arc from a tetrahedron vertex copy to a U/L/B node.
    kind "UL": the closed segment joining the U and L nodes (or d and L in
    the degenerate strata); its two planar copies are identified on the
    surface, ``side`` distinguishes them.
    """

    kind: str  # "varc" | "UL"
    vertex: str | None  # tetrahedron vertex for "varc"
    side: str | None  # "+" / "-" for "UL"
    a: tuple[float, float]
    b: tuple[float, float]


@dataclass(frozen=True)
class GluedPair:
    seg1: tuple[tuple[float, float], tuple[float, float]]
    seg2: tuple[tuple[float, float], tuple[float, float]]
    label: str


@dataclass(frozen=True)
class Feature:
    kind: str  # "U" | "L" | "B" | "corner_d" | "vertex" | "UL" | "varc"
    label: str | None  # vertex letter, or UL side
    anchor: tuple[float, float] | None  # vertex copy position for "varc"


def _pt(p) -> tuple[float, float]:
    return (float(p[0]), float(p[1]))


@dataclass(frozen=True)
class CanonicalDiagram:
    """Expanded cut locus of the canonical point (x, alpha*sqrt3) on face abc."""

    stratum: str
    x: float
    alpha: float
    polygon: tuple[PolygonVertex, ...]
    passthrough: tuple[tuple[str, tuple[float, float]], ...]
    arcs: tuple[DiagArc, ...]
    u_copies: tuple[tuple[float, float], ...]
    l_copies: tuple[tuple[float, float], ...]
    b_copies: tuple[tuple[float, float], ...]
    glued: tuple[GluedPair, ...]

    @property
    def source_xy(self) -> tuple[float, float]:
        return (self.x, self.alpha * SQRT3)

    def area(self) -> float:
        pts = np.array([v.xy for v in self.polygon])
        x, y = pts[:, 0], pts[:, 1]
        return 0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))

    def classify_endpoint(self, xy, tol: float = 1e-6) -> Feature | None:
        """Which cut-locus feature a planar point (a geodesic endpoint) lies on."""
        xy = np.asarray(xy, float)
        for copies, kind in (
            (self.b_copies, "B"),
            (self.u_copies, "U"),
            (self.l_copies, "L"),
        ):
            for c in copies:
                if np.hypot(xy[0] - c[0], xy[1] - c[1]) <= tol:
                    return Feature(kind, None, None)
        for v, c in self.passthrough:
            if np.hypot(xy[0] - c[0], xy[1] - c[1]) <= tol:
                return Feature("vertex", v, c)
        for arc in self.arcs:
            if arc.kind == "UL" and _seg_dist(xy, arc.a, arc.b) <= tol:
                return Feature("UL", arc.side, None)
        for arc in self.arcs:
            if arc.kind == "varc" and _seg_dist(xy, arc.a, arc.b) <= tol:
                return Feature("varc", arc.vertex, arc.a)
        return None


def _seg_dist(p, a, b) -> float:
    a = np.asarray(a, float)
    b = np.asarray(b, float)
    d = b - a
    L2 = float(d @ d)
    t = 0.0 if L2 == 0 else float(np.clip((p - a) @ d / L2, 0.0, 1.0))
    c = a + t * d
    return float(np.hypot(p[0] - c[0], p[1] - c[1]))


_MERGE_TOL = 1e-9


def corner_formulas(x: float, alpha: float) -> dict[str, np.ndarray]:
    """The six closed-form corners; valid for 0 <= x <= 1/2, 0 < alpha < 1."""
    # at the apex (x=0, alpha=1) the bump term is 0/0; its limit along x=0 is 0
    bump = 0.0 if x == 0.0 else x * (2.0 - x) / (3.0 * (1.0 - alpha))
    u_pm = SQRT3 * (1.0 - bump)
    return {
        "U+": np.array([2.0 + x, u_pm]),
        "U-": np.array([-2.0 + x, u_pm]),
        "U0": np.array([2.0 - x, SQRT3 * (1.0 + bump)]),
        "L+": np.array([2.0 + x, SQRT3 * (1.0 - x * x) / (3.0 * alpha)]),
        "L-": np.array([-2.0 + x, SQRT3 * (1.0 - x * x) / (3.0 * alpha)]),
        "L0": np.array([-x, SQRT3 * (x * x - 1.0) / (3.0 * alpha)]),
    }


def canonical_diagram(stratum: str, x: float, alpha: float) -> CanonicalDiagram:
    c = corner_formulas(x, alpha)
    order = ["U0", "U-", "L-", "L0", "L+", "U+"]
    # merge consecutive coincident corners (the degenerate strata)
    groups: list[list[str]] = []
    for name in order:
        if groups and np.allclose(c[groups[-1][-1]], c[name], atol=_MERGE_TOL):
            groups[-1].append(name)
        else:
            groups.append([name])
    if len(groups) > 1 and np.allclose(c[groups[-1][-1]], c[groups[0][0]], atol=_MERGE_TOL):
        groups[0] = groups.pop() + groups[0]

    merged_b = stratum in ("S1_edge_aM", "S4_segment_CM")
    merged_d = stratum in ("S2_segment_aC", "S3_centroid", "S5_vertex_a")

    def label_of(group: list[str]) -> str:
        if len(group) == 1:
            return group[0]
        if merged_b:
            return "B"
        if stratum == "S3_centroid":
            return "U=L"
        return "d=U"

    polygon = tuple(PolygonVertex(label_of(g), _pt(c[g[0]])) for g in groups)

    passthrough = (
        ("a", _pt(_PASS_A)),
        ("b", _pt(_PASS_B)),
        ("c", _pt(_PASS_C)),
        ("d", _pt(_PASS_D)),
    )

    u_copies: tuple = ()
    l_copies: tuple = ()
    b_copies: tuple = ()
    arcs: list[DiagArc] = []
    glued: list[GluedPair] = []

    def varc(v: str, anchor, end) -> DiagArc:
        return DiagArc("varc", v, None, _pt(anchor), _pt(end))

    if stratum == "S0_interior":
        u_copies = (_pt(c["U0"]), _pt(c["U-"]), _pt(c["U+"]))
        l_copies = (_pt(c["L0"]), _pt(c["L-"]), _pt(c["L+"]))
        arcs = [
            varc("a", _PASS_A, c["U0"]),
            varc("a", _PASS_A, c["U-"]),
            varc("d", _PASS_D, c["U0"]),
            varc("d", _PASS_D, c["U+"]),
            varc("b", _PASS_B, c["L0"]),
            varc("b", _PASS_B, c["L-"]),
            varc("c", _PASS_C, c["L0"]),
            varc("c", _PASS_C, c["L+"]),
            DiagArc("UL", None, "+", _pt(c["U+"]), _pt(c["L+"])),
            DiagArc("UL", None, "-", _pt(c["U-"]), _pt(c["L-"])),
        ]
        glued = [
            GluedPair((_pt(_PASS_A), _pt(c["U0"])), (_pt(_PASS_A), _pt(c["U-"])), "aU"),
            GluedPair((_pt(_PASS_D), _pt(c["U0"])), (_pt(_PASS_D), _pt(c["U+"])), "dU"),
            GluedPair((_pt(_PASS_B), _pt(c["L0"])), (_pt(_PASS_B), _pt(c["L-"])), "bL"),
            GluedPair((_pt(_PASS_C), _pt(c["L0"])), (_pt(_PASS_C), _pt(c["L+"])), "cL"),
            GluedPair((_pt(c["U-"]), _pt(c["L-"])), (_pt(c["U+"]), _pt(c["L+"])), "UL"),
        ]
    elif merged_b:
        b_copies = (_pt(c["U0"]), _pt(c["U-"]), _pt(c["L0"]), _pt(c["U+"]))
        arcs = [
            varc("a", _PASS_A, c["U0"]),
            varc("a", _PASS_A, c["U-"]),
            varc("d", _PASS_D, c["U0"]),
            varc("d", _PASS_D, c["U+"]),
            varc("b", _PASS_B, c["L0"]),
            varc("b", _PASS_B, c["U-"]),
            varc("c", _PASS_C, c["L0"]),
            varc("c", _PASS_C, c["U+"]),
        ]
        glued = [
            GluedPair((_pt(_PASS_A), _pt(c["U0"])), (_pt(_PASS_A), _pt(c["U-"])), "aB"),
            GluedPair((_pt(_PASS_D), _pt(c["U0"])), (_pt(_PASS_D), _pt(c["U+"])), "dB"),
            GluedPair((_pt(_PASS_B), _pt(c["L0"])), (_pt(_PASS_B), _pt(c["U-"])), "bB"),
            GluedPair((_pt(_PASS_C), _pt(c["L0"])), (_pt(_PASS_C), _pt(c["U+"])), "cB"),
        ]
    elif stratum == "S3_centroid":
        u_copies = (_pt(c["U0"]), _pt(c["U-"]), _pt(c["L0"]))
        l_copies = u_copies
        arcs = [
            varc("a", _PASS_A, c["U0"]),
            varc("a", _PASS_A, c["U-"]),
            varc("b", _PASS_B, c["L0"]),
            varc("b", _PASS_B, c["U-"]),
            varc("c", _PASS_C, c["L0"]),
            varc("c", _PASS_C, c["U0"]),
        ]
        glued = [
            GluedPair((_pt(_PASS_A), _pt(c["U0"])), (_pt(_PASS_A), _pt(c["U-"])), "ad"),
            GluedPair((_pt(_PASS_B), _pt(c["L0"])), (_pt(_PASS_B), _pt(c["U-"])), "bd"),
            GluedPair((_pt(_PASS_C), _pt(c["L0"])), (_pt(_PASS_C), _pt(c["U0"])), "cd"),
        ]
    else:  # S2_segment_aC and S5_vertex_a: U-points sit at the two d copies
        u_copies = (_pt(c["U-"]), _pt(c["U+"]))
        l_copies = (_pt(c["L0"]), _pt(c["L-"]), _pt(c["L+"]))
        arcs = [
            DiagArc("UL", None, "+", _pt(c["U+"]), _pt(c["L+"])),
            DiagArc("UL", None, "-", _pt(c["U-"]), _pt(c["L-"])),
            varc("b", _PASS_B, c["L0"]),
            varc("b", _PASS_B, c["L-"]),
            varc("c", _PASS_C, c["L0"]),
            varc("c", _PASS_C, c["L+"]),
        ]
        if stratum == "S2_segment_aC":
            # the top side through a is the surface edge ad
            arcs += [varc("a", _PASS_A, c["U0"]), varc("a", _PASS_A, c["U-"])]
        glued = [
            GluedPair((_pt(c["U-"]), _pt(c["L-"])), (_pt(c["U+"]), _pt(c["L+"])), "dL"),
            GluedPair((_pt(_PASS_B), _pt(c["L0"])), (_pt(_PASS_B), _pt(c["L-"])), "bL"),
            GluedPair((_pt(_PASS_C), _pt(c["L0"])), (_pt(_PASS_C), _pt(c["L+"])), "cL"),
        ]
        if stratum == "S2_segment_aC":
            glued.append(
                GluedPair((_pt(_PASS_A), _pt(c["U0"])), (_pt(_PASS_A), _pt(c["U-"])), "ad")
            )

    return CanonicalDiagram(
        stratum,
        x,
        alpha,
        polygon,
        passthrough,
        tuple(arcs),
        u_copies,
        l_copies,
        b_copies,
        tuple(glued),
    )


# ---------------------------------------------------------------------------
# Planar-to-surface tracing


def trace_planar(
    p: sf.SurfacePoint, target_xy, depth: int = oracle.DEFAULT_DEPTH
) -> sf.SurfacePoint:
    """Surface point reached by the straight flat-model segment from p.

    ``target_xy`` is given in the chart of p's canonical face.  The segment
    must be realizable as a geodesic (it is, for every point of the expanded
    cut locus polygon and its interior).
    """
    tx, ty = float(target_xy[0]), float(target_xy[1])
    f0 = p.face
    for fb in sf.faces_containing(p.support()):
        bary_p = sf.on_face_bary(p, fb)
        pxy = sf.chart_xy(fb, bary_p)
        if fb == f0:
            t_local = np.array([tx, ty])
        else:
            t_local = sf.apply_placement(sf.transition(fb, f0), (tx, ty))
        tab = tables.chain_table(fb, depth)
        ok, _len, _tp, _sp, local = kernels_numpy.eval_chains_planar(
            pxy[0],
            pxy[1],
            t_local[0],
            t_local[1],
            tab.ncross,
            tab.edge_a,
            tab.edge_b,
            tab.place_last_inv,
        )
        for i in np.nonzero(ok)[0]:
            bary = sf.bary_from_xy(local[int(i)])
            if min(bary) >= -1e-9:
                w = [max(b, 0.0) for b in bary]
                return sf.make_point(int(tab.last_face[int(i)]), w)
    raise ValueError(f"planar point {target_xy} not reachable from {p} at depth {depth}")


# ---------------------------------------------------------------------------
# Public constructions


@dataclass(frozen=True)
class ExpandedCutLocus:
    source: sf.SurfacePoint
    stratum: str
    isometry: sf.Isometry  # maps source into the canonical subtriangle
    canonical: CanonicalDiagram
    polygon: tuple[PolygonVertex, ...]  # in the source's own face chart
    passthrough: tuple[tuple[str, tuple[float, float]], ...]  # relabeled by g^-1
    glued_pairs: tuple[GluedPair, ...]  # in the source's own face chart

    def area(self) -> float:
        return self.canonical.area()


def canonical_to_source_map(p: sf.SurfacePoint, g: sf.Isometry) -> np.ndarray:
    """Planar isometry taking canonical abc-chart coordinates to p's face chart."""
    ginv = g.inverse()
    face_to, m = sf.chart_map(ginv, sf.FACE_ABC)
    if face_to == p.face:
        return m
    return sf.compose_placements(sf.transition(p.face, face_to), m)


def expanded_cut_locus(p: sf.SurfacePoint) -> ExpandedCutLocus:
    cp = sf.reduce_to_canonical(p)
    diagram = canonical_diagram(cp.stratum, cp.x, cp.alpha)
    back = canonical_to_source_map(p, cp.g)
    ginv = cp.g.inverse()

    def mapped(xy):
        return _pt(sf.apply_placement(back, xy))

    polygon = tuple(PolygonVertex(v.label, mapped(v.xy)) for v in diagram.polygon)
    passthrough = tuple((ginv(v), mapped(xy)) for v, xy in diagram.passthrough)
    glued = tuple(
        GluedPair((mapped(gp.seg1[0]), mapped(gp.seg1[1])),
                  (mapped(gp.seg2[0]), mapped(gp.seg2[1])), gp.label)
        for gp in diagram.glued
    )
    return ExpandedCutLocus(p, cp.stratum, cp.g, diagram, polygon, passthrough, glued)


@dataclass(frozen=True)
class SpecialPoints:
    u: tuple[sf.SurfacePoint, int] | None
    l: tuple[sf.SurfacePoint, int] | None
    b_point: tuple[sf.SurfacePoint, int] | None


def _canonical_point(x: float, alpha: float) -> sf.SurfacePoint:
    return sf.make_point(sf.FACE_ABC, sf.bary_from_xy((x, alpha * SQRT3)))


def special_points(p: sf.SurfacePoint, depth: int = oracle.DEFAULT_DEPTH) -> SpecialPoints:
    cp = sf.reduce_to_canonical(p)
    diagram = canonical_diagram(cp.stratum, cp.x, cp.alpha)
    pc = _canonical_point(cp.x, cp.alpha)
    ginv = cp.g.inverse()

    def locate(xy) -> sf.SurfacePoint:
        return sf.apply_isometry(ginv, trace_planar(pc, xy, depth))

    u = l = b = None
    if diagram.b_copies:
        bp = locate(diagram.b_copies[0])
        b = (bp, oracle.multiplicity(p, bp, depth))
    else:
        if cp.stratum in ("S2_segment_aC", "S3_centroid"):
            up = sf.apply_isometry(ginv, sf.vertex_point("d"))
            u = (up, oracle.multiplicity(p, up, depth))
        elif cp.stratum == "S0_interior":
            up = locate(diagram.u_copies[0])
            u = (up, oracle.multiplicity(p, up, depth))
        # S5: no U point (the source is the vertex itself)
        if diagram.l_copies:
            lp = locate(diagram.l_copies[0])
            if cp.stratum == "S3_centroid":
                l = u
            else:
                l = (lp, oracle.multiplicity(p, lp, depth))
    return SpecialPoints(u, l, b)


@dataclass(frozen=True)
class CutLocusArc:
    ends: tuple[str, str]  # node labels, e.g. ("a", "U"), ("U", "L"), ("b", "B")
    points: tuple[sf.SurfacePoint, ...]
    interior_multiplicity: int


@dataclass(frozen=True)
class CutLocusGraph:
    source: sf.SurfacePoint
    arcs: tuple[CutLocusArc, ...]
    nodes: tuple[tuple[str, sf.SurfacePoint, int], ...]


ARC_SAMPLES = 128


def cut_locus_graph(p: sf.SurfacePoint, depth: int = oracle.DEFAULT_DEPTH) -> CutLocusGraph:
    """The on-surface cut locus as a tree of sampled arcs.

    Each glued pair of the flat diagram is one surface arc; only one copy of
    each pair is traced.  Arc endpoints at excluded tetrahedron vertices are
    mapped exactly.
    """
    cp = sf.reduce_to_canonical(p)
    diagram = canonical_diagram(cp.stratum, cp.x, cp.alpha)
    pc = _canonical_point(cp.x, cp.alpha)
    ginv = cp.g.inverse()

    vertex_planar = dict(diagram.passthrough)

    def surface_of(xy, label: str | None) -> sf.SurfacePoint:
        if label in vertex_planar and np.allclose(xy, vertex_planar[label], atol=1e-12):
            return sf.apply_isometry(ginv, sf.vertex_point(label))
        return sf.apply_isometry(ginv, trace_planar(pc, xy, depth))

    def node_label(stratum: str, kind: str) -> str:
        if stratum in ("S1_edge_aM", "S4_segment_CM"):
            return "B"
        if stratum in ("S2_segment_aC", "S3_centroid", "S5_vertex_a"):
            return {"U": "d", "L": "L"}[kind]
        return kind

    arcs: list[CutLocusArc] = []
    nodes: dict[str, tuple[sf.SurfacePoint, int]] = {}

    def add_node(label: str, xy, kind: str):
        if label not in nodes:
            sp = surface_of(np.asarray(xy), label if len(label) == 1 else None)
            mult = oracle.multiplicity(p, sp, depth)
            nodes[label] = (sp, mult)

    def trace_arc(a_xy, b_xy, end_a: str, end_b: str):
        ts = np.linspace(0.0, 1.0, ARC_SAMPLES)
        a_xy = np.asarray(a_xy, float)
        b_xy = np.asarray(b_xy, float)
        pts = []
        for j, t in enumerate(ts):
            xy = a_xy + t * (b_xy - a_xy)
            label = end_a if j == 0 else (end_b if j == ARC_SAMPLES - 1 else None)
            pts.append(surface_of(xy, label if label in vertex_planar else None))
        arcs.append(CutLocusArc((end_a, end_b), tuple(pts), 2))

    stratum = cp.stratum
    if stratum == "S0_interior":
        c = {v.label: v.xy for v in diagram.polygon}
        add_node("U", c["U0"], "U")
        add_node("L", c["L0"], "L")
        trace_arc(vertex_planar["a"], c["U0"], "a", "U")
        trace_arc(vertex_planar["d"], c["U0"], "d", "U")
        trace_arc(vertex_planar["b"], c["L0"], "b", "L")
        trace_arc(vertex_planar["c"], c["L0"], "c", "L")
        trace_arc(c["U+"], c["L+"], "U", "L")
    elif stratum in ("S1_edge_aM", "S4_segment_CM"):
        b0 = diagram.b_copies[0]
        add_node("B", b0, "B")
        trace_arc(vertex_planar["a"], diagram.b_copies[0], "a", "B")
        trace_arc(vertex_planar["d"], diagram.b_copies[0], "d", "B")
        trace_arc(vertex_planar["b"], diagram.b_copies[2], "b", "B")
        trace_arc(vertex_planar["c"], diagram.b_copies[2], "c", "B")
    elif stratum == "S3_centroid":
        add_node("d", diagram.u_copies[0], "U")
        trace_arc(vertex_planar["a"], diagram.u_copies[0], "a", "d")
        trace_arc(vertex_planar["b"], diagram.u_copies[2], "b", "d")
        trace_arc(vertex_planar["c"], diagram.u_copies[2], "c", "d")
    else:  # S2_segment_aC, S5_vertex_a
        add_node("L", diagram.l_copies[0], "L")
        add_node("d", diagram.u_copies[1], "U")
        trace_arc(diagram.u_copies[1], np.array(diagram.arcs[0].b), "d", "L")
        trace_arc(vertex_planar["b"], diagram.l_copies[0], "b", "L")
        trace_arc(vertex_planar["c"], diagram.l_copies[0], "c", "L")
        if stratum == "S2_segment_aC":
            trace_arc(vertex_planar["a"], diagram.u_copies[1], "a", "d")

    # leaf nodes at tetrahedron vertices (excluded points unless the vertex
    # rule puts them in the cut locus)
    node_list = []
    for label, (sp, mult) in nodes.items():
        node_list.append((label, sp, mult))
    seen = set(nodes)
    for arc in arcs:
        for end in arc.ends:
            if end in ("a", "b", "c", "d") and end not in seen:
                v = sf.apply_isometry(ginv, sf.vertex_point(end))
                node_list.append((end, v, oracle.multiplicity(p, v, depth)))
                seen.add(end)
    return CutLocusGraph(p, tuple(arcs), tuple(node_list))


def is_on_cut_locus(
    p: sf.SurfacePoint,
    q: sf.SurfacePoint,
    tol: float = oracle.DEFAULT_TOL,
    depth: int = oracle.DEFAULT_DEPTH,
) -> bool:
    if oracle.same_point(p, q):
        return False
    return oracle.multiplicity(p, q, depth, tol) >= 2
