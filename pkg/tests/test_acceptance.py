"""Acceptance gate: the nine closed-form/property criteria for the package.

Criteria 1-3 share one pool of 1000 seeded interior source points; the audits
(criteria 5, 6, 8) are the heavyweight end-to-end checks.
"""

import re
import time

import numpy as np
import pytest

import tetracut.surface as sf
from tetracut import cutlocus, oracle, planner, render

SQRT3 = sf.SQRT3
N_POOL = 1000

_A = np.array([0.0, SQRT3])
_B = np.array([-1.0, 0.0])
_C = np.array([1.0, 0.0])
_D = np.array([2.0, SQRT3])


def _interior_params(rng):
    while True:
        x = rng.uniform(0.01, 0.49)
        lo, hi = (1.0 + x) / 3.0 + 0.01, 1.0 - x - 0.01
        if lo < hi:
            return x, rng.uniform(lo, hi)


@pytest.fixture(scope="module")
def pool():
    rng = np.random.default_rng(2026)
    out = []
    for _ in range(N_POOL):
        x, alpha = _interior_params(rng)
        out.append((x, alpha, cutlocus.corner_formulas(x, alpha)))
    return out


def _source(x, alpha):
    return sf.make_point(sf.FACE_ABC, sf.bary_from_xy((x, alpha * SQRT3)))


def test_criterion_1_corner_oracle_equivalence(pool):
    start = time.monotonic()
    for x, alpha, corners in pool:
        p = _source(x, alpha)
        src = np.array([x, alpha * SQRT3])
        for name in ("U0", "U-", "U+", "L0", "L-", "L+"):
            closed = float(np.linalg.norm(corners[name] - src))
            q = cutlocus.trace_planar(p, corners[name])
            gs = oracle.min_geodesics(p, q)
            assert abs(closed - gs.distance) <= 1e-9, (x, alpha, name)
            assert gs.multiplicity == 3, (x, alpha, name, gs.multiplicity)
    assert time.monotonic() - start <= 60.0


def test_criterion_2_proof_identities(pool):
    for x, alpha, c in pool:
        p = np.array([x, alpha * SQRT3])
        for v, corner in ((_A, c["U0"]), (_B, c["L-"]), (_C, c["L+"]), (_D, c["U+"])):
            assert abs(np.dot(p - v, corner - v)) <= 1e-12
        for v, m1, m2 in (
            (_A, c["U0"], c["U-"]),
            (_B, c["L-"], c["L0"]),
            (_C, c["L+"], c["L0"]),
            (_D, c["U0"], c["U+"]),
        ):
            assert np.abs(0.5 * (m1 + m2) - v).max() <= 1e-12


def test_criterion_3_area_identity(pool):
    for x, alpha, _ in pool:
        diag = cutlocus.canonical_diagram("S0_interior", x, alpha)
        assert abs(diag.area() - 4.0 * SQRT3) <= 1e-9


def test_criterion_4i_edge_midpoint_single_b():
    m = sf.edge_midpoint("a", "c")
    spec = cutlocus.special_points(m)
    assert spec.u is None and spec.l is None
    b, mult = spec.b_point
    assert b.close_to(sf.edge_midpoint("b", "d"), tol=1e-9)
    assert mult == 4
    assert abs(oracle.distance(m, b) - 2.0) <= 1e-9


def _dist_to_segment_3d(p, a, b):
    d = b - a
    t = np.clip(np.dot(p - a, d) / np.dot(d, d), 0.0, 1.0)
    return float(np.linalg.norm(p - (a + t * d)))


def test_criterion_4ii_centroid_cut_locus_is_three_edges():
    c = sf.centroid(0)
    d_vert = sf.vertex_point("d")
    assert abs(oracle.distance(c, d_vert) - 2.309401077) <= 1e-9
    graph = cutlocus.cut_locus_graph(c)
    arc_pts = [np.array([q.to_3d() for q in arc.points]) for arc in graph.arcs]
    edges = [
        (sf.vertex_point(v).to_3d(), d_vert.to_3d()) for v in ("a", "b", "c")
    ]
    # every arc point lies on some edge to d
    for pts in arc_pts:
        for p3 in pts:
            assert min(_dist_to_segment_3d(p3, a, b) for a, b in edges) <= 1e-6
    # every edge point lies on some arc polyline
    for a, b in edges:
        for t in np.linspace(0.0, 1.0, 200):
            p3 = a + t * (b - a)
            best = np.inf
            for pts in arc_pts:
                for u, v in zip(pts, pts[1:]):
                    best = min(best, _dist_to_segment_3d(p3, u, v))
            assert best <= 1e-6


def test_criterion_4iii_l_height_on_aC():
    alpha = 2.0 / 3.0
    diag = cutlocus.canonical_diagram("S2_segment_aC", 0.0, alpha)
    l0 = next(v for v in diag.polygon if v.label.startswith("L0"))
    assert abs(abs(l0.xy[1]) - SQRT3 / 2.0) <= 1e-9
    p = _source(0.0, alpha)
    q = cutlocus.trace_planar(p, l0.xy)
    closed = np.linalg.norm(np.asarray(l0.xy) - np.array([0.0, alpha * SQRT3]))
    assert abs(closed - oracle.distance(p, q)) <= 1e-9


def test_criterion_5_partition_audit_100k():
    start = time.monotonic()
    report = planner.partition_audit(100_000, seed=0)
    elapsed = time.monotonic() - start
    assert report.ok, report.violations[:5]
    assert report.samples >= 100_000
    assert report.stats["forced"] > 0
    assert elapsed <= 300.0, f"partition audit took {elapsed:.1f}s"


@pytest.mark.parametrize("cell", ["E1", "E2", "E3", "E5"])
def test_criterion_6_continuity_contraction(cell):
    report = planner.continuity_audit(cell, 6, seed=0)
    assert report.ok, (cell, report.violations[:5])


def test_criterion_7_four_directions_at_midpoint_pair():
    dirs = oracle.initial_directions(sf.edge_midpoint("a", "c"), sf.edge_midpoint("b", "d"))
    assert len(dirs) == 4
    angles = sorted(np.arctan2(d[1], d[0]) % (2 * np.pi) for d in dirs)
    expected = np.radians([0.0, 60.0, 180.0, 240.0])
    assert np.abs(np.asarray(angles) - expected).max() <= 1e-6


def test_criterion_8_oracle_self_checks():
    report = planner.oracle_audit(10_000, seed=0)
    assert report.ok, report.violations[:5]
    assert report.stats["deep_checked"] >= 1000


def _red_polygons(svg):
    out = []
    for m in re.finditer(r'<polygon points="([^"]+)"[^>]*stroke="#cc0000"', svg):
        pts = []
        for pair in m.group(1).split():
            xs, ys = pair.split(",")
            # undo the SVG transform: 100 units per length unit, y flipped
            pts.append((float(xs) / 100.0, -float(ys) / 100.0))
        out.append(pts)
    return out


def test_criterion_9_figure_regression():
    svg = render.render_figure("p_at_centroid")
    (tri,) = _red_polygons(svg)
    expect = {(-2.0, SQRT3), (0.0, -SQRT3), (2.0, SQRT3)}
    assert len(tri) == 3
    for want in expect:
        assert min(np.hypot(px - want[0], py - want[1]) for px, py in tri) <= 1e-9

    svg = render.render_figure("expanded_cut_locus", x=0.25, alpha=0.5)
    (hexagon,) = _red_polygons(svg)
    corners = cutlocus.corner_formulas(0.25, 0.5)
    assert len(hexagon) == 6
    for name in ("U0", "U-", "U+", "L0", "L-", "L+"):
        want = corners[name]
        assert min(np.hypot(px - want[0], py - want[1]) for px, py in hexagon) <= 1e-9
