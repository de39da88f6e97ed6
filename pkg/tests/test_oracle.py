import numpy as np
import pytest

import tetracut.surface as sf
from tetracut import oracle
from tetracut.errors import NoPathFound, SamePoint


def test_vertex_to_vertex_distance():
    assert abs(oracle.distance(sf.vertex_point("a"), sf.vertex_point("b")) - 2.0) < 1e-12


def test_centroid_to_opposite_vertex():
    d = oracle.distance(sf.centroid(0), sf.vertex_point("d"))
    assert abs(d - 4.0 / np.sqrt(3.0)) < 1e-9
    assert oracle.multiplicity(sf.centroid(0), sf.vertex_point("d")) == 3


def test_midpoint_pair_multiplicity_four():
    m, b = sf.edge_midpoint("a", "c"), sf.edge_midpoint("b", "d")
    assert abs(oracle.distance(m, b) - 2.0) < 1e-12
    assert oracle.multiplicity(m, b) == 4
    dirs = oracle.initial_directions(m, b)
    angles = sorted(np.degrees(np.arctan2(d[1], d[0])) % 360.0 for d in dirs)
    assert np.allclose(angles, [0.0, 60.0, 180.0, 240.0], atol=1e-6)


def test_same_point_handling():
    p = sf.make_point(0, (0.2, 0.3, 0.5))
    gs = oracle.min_geodesics(p, p)
    assert gs.distance == 0.0 and gs.multiplicity == 1
    assert gs.geodesics[0].initial_direction is None
    with pytest.raises(SamePoint):
        oracle.initial_directions(p, p)


def test_depth_guard():
    with pytest.raises(NoPathFound):
        oracle.distance(sf.vertex_point("a"), sf.vertex_point("b"), depth=1)


def test_symmetry_and_isometry_invariance():
    rng = np.random.default_rng(11)
    for _ in range(25):
        p = sf.make_point(int(rng.integers(4)), rng.dirichlet((1, 1, 1)))
        q = sf.make_point(int(rng.integers(4)), rng.dirichlet((1, 1, 1)))
        d = oracle.distance(p, q)
        assert abs(d - oracle.distance(q, p)) < 1e-9
        g = sf.ALL_ISOMETRIES[int(rng.integers(24))]
        dg = oracle.distance(sf.apply_isometry(g, p), sf.apply_isometry(g, q))
        assert abs(d - dg) < 1e-9


def test_geodesic_validation_and_samples():
    rng = np.random.default_rng(12)
    for _ in range(20):
        p = sf.make_point(int(rng.integers(4)), rng.dirichlet((1, 1, 1)))
        q = sf.make_point(int(rng.integers(4)), rng.dirichlet((1, 1, 1)))
        for g in oracle.min_geodesics(p, q).geodesics:
            assert oracle.validate_geodesic(g)
            pts = g.samples_3d()
            # constant intrinsic speed: every 3D chord equals the uniform step
            # except the few straddling a fold, which can only be shorter
            steps = np.linalg.norm(np.diff(pts, axis=0), axis=1)
            uniform = g.length / (len(pts) - 1)
            assert steps.max() <= uniform + 1e-9
            off = int((steps < uniform - 1e-9).sum())
            assert off <= len(g.crossings)
            assert np.linalg.norm(pts[0] - p.to_3d()) < 1e-9
            assert np.linalg.norm(pts[-1] - q.to_3d()) < 1e-9


def test_crossings_strictly_interior():
    rng = np.random.default_rng(13)
    for _ in range(30):
        p = sf.make_point(int(rng.integers(4)), rng.dirichlet((1, 1, 1)))
        q = sf.make_point(int(rng.integers(4)), rng.dirichlet((1, 1, 1)))
        for g in oracle.min_geodesics(p, q).geodesics:
            for c in g.crossings:
                assert 1e-9 <= c.t <= 1.0 - 1e-9


def test_edge_point_no_spurious_duplicates():
    # source on an edge appears on two faces; dedup must keep one copy
    p = sf.edge_midpoint("a", "b")
    q = sf.make_point(3, (0.4, 0.3, 0.3))
    gs = oracle.min_geodesics(p, q)
    polys = [g.samples_3d() for g in gs.geodesics]
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            assert np.abs(polys[i] - polys[j]).max() > oracle.DEDUP_TOL


def test_triangle_inequality():
    rng = np.random.default_rng(14)
    for _ in range(15):
        pts = [
            sf.make_point(int(rng.integers(4)), rng.dirichlet((1, 1, 1)))
            for _ in range(3)
        ]
        dab = oracle.distance(pts[0], pts[1])
        dbc = oracle.distance(pts[1], pts[2])
        dac = oracle.distance(pts[0], pts[2])
        assert dac <= dab + dbc + 1e-9
