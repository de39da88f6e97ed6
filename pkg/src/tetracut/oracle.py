"""Brute-force geodesic oracle: exhaustive unfolding enumeration.

Every chain of faces up to the requested depth is laid flat; a candidate
geodesic is the straight planar segment from the source to the target's
image, kept when it crosses the chain's shared edges in order and strictly
inside each.  Minimal candidates are deduplicated by comparing their
constant-speed sample polylines, which collapses the mirror copies that
appear when the source sits on an edge or vertex.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from . import surface as sf
from . import tables
from .errors import NoPathFound, SamePoint

DEFAULT_DEPTH = 4
DEFAULT_TOL = 1e-9
DEDUP_TOL = 1e-7
N_SAMPLES = backend.N_SAMPLES

_FACE_VIDX = np.array([[sf.VERTICES.index(v) for v in f] for f in sf.FACES])


@dataclass(frozen=True)
class Crossing:
    """One edge crossing; t parameterizes the edge from its smaller vertex."""

    edge: str
    t: float


@dataclass(frozen=True, eq=False)
class Geodesic:
    source: sf.SurfacePoint
    target: sf.SurfacePoint
    length: float
    crossings: tuple[Crossing, ...]
    #: unit vector in the source's canonical face chart; None when length is 0
    initial_direction: np.ndarray | None
    samples_face: np.ndarray  # [64] face index per constant-speed sample
    samples_bary: np.ndarray  # [64, 3]
    base_face: int  # face whose chart holds source_xy / target_xy
    chain_faces: tuple[int, ...]
    source_xy: np.ndarray
    target_xy: np.ndarray
    seg_params: tuple[float, ...]  # segment parameter of each crossing

    def sample_points(self) -> list[sf.SurfacePoint]:
        return [
            sf.make_point(int(f), b)
            for f, b in zip(self.samples_face, self.samples_bary)
        ]

    def samples_3d(self) -> np.ndarray:
        return _polyline_3d(self.samples_face, self.samples_bary)

    def target_xy_in(self, face: int) -> np.ndarray:
        """Planar endpoint re-expressed in another face's chart (adjacent or same)."""
        if face == self.base_face:
            return self.target_xy
        return sf.apply_placement(sf.transition(face, self.base_face), self.target_xy)


@dataclass(frozen=True)
class GeodesicSet:
    distance: float
    geodesics: tuple[Geodesic, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.geodesics)


def _polyline_3d(faces: np.ndarray, bary: np.ndarray) -> np.ndarray:
    corners = sf._TET3D[_FACE_VIDX[faces]]  # [n, 3, 3]
    return np.einsum("nk,nkj->nj", bary, corners)


def same_point(p: sf.SurfacePoint, q: sf.SurfacePoint) -> bool:
    return bool(np.linalg.norm(p.to_3d() - q.to_3d()) <= 1e-15)


class _Candidate:
    __slots__ = (
        "length",
        "edges",
        "spars",
        "tpars",
        "table",
        "idx",
        "pxy",
        "qxy",
        "sxy0",
        "qxy0",
        "faces_arr",
        "bary_arr",
        "poly3",
    )

    def __init__(self, length, edges, spars, tpars, table, idx, pxy, qxy, sxy0, qxy0):
        self.length = length
        self.edges = edges
        self.spars = spars
        self.tpars = tpars
        self.table = table
        self.idx = idx
        self.pxy = pxy  # source planar, base-face chart
        self.qxy = qxy  # target planar, base-face chart
        self.sxy0 = sxy0  # source planar in the source's canonical face chart
        self.qxy0 = qxy0
        self.faces_arr = None
        self.bary_arr = None
        self.poly3 = None

    def sort_key(self):
        return (round(self.length, 12), self.edges, tuple(round(s, 12) for s in self.spars))

    def materialize_samples(self):
        if self.poly3 is None:
            tpar_row = np.zeros(self.table.depth)
            tpar_row[: len(self.tpars)] = self.tpars
            faces, bary = backend.map_samples(
                self.pxy[0],
                self.pxy[1],
                self.qxy[0],
                self.qxy[1],
                int(self.table.ncross[self.idx]),
                tpar_row,
                self.table.face_seq[self.idx],
                self.table.place_step[self.idx],
                N_SAMPLES,
            )
            self.faces_arr = faces
            self.bary_arr = bary
            self.poly3 = _polyline_3d(faces, bary)
        return self.poly3


def _solve(
    p: sf.SurfacePoint,
    q: sf.SurfacePoint,
    depth: int = DEFAULT_DEPTH,
    tol: float = DEFAULT_TOL,
) -> list[_Candidate]:
    """Minimal, deduplicated candidate list, sorted deterministically."""
    if depth < 2:
        raise NoPathFound(f"depth {depth} < 2 cannot certify minimality")
    f0 = p.face
    cands: list[_Candidate] = []
    for fb in sf.faces_containing(p.support()):
        bary_p = sf.on_face_bary(p, fb)
        pxy = sf.chart_xy(fb, bary_p)
        if fb == f0:
            to_f0 = None
        else:
            to_f0 = sf.transition(f0, fb)
        tab = tables.chain_table(fb, depth)
        for fq in sf.faces_containing(q.support()):
            bary_q = sf.on_face_bary(q, fq)
            qxy_local = sf.chart_xy(fq, bary_q)
            ok, length, tpar, spar, qpx, qpy = backend.eval_chains(
                pxy[0],
                pxy[1],
                qxy_local[0],
                qxy_local[1],
                fq,
                tab.last_face,
                tab.ncross,
                tab.edge_a,
                tab.edge_b,
                tab.place_last,
            )
            for i in np.nonzero(ok)[0]:
                i = int(i)
                k = int(tab.ncross[i])
                qxy = np.array([qpx[i], qpy[i]])
                sxy0 = pxy if to_f0 is None else sf.apply_placement(to_f0, pxy)
                qxy0 = qxy if to_f0 is None else sf.apply_placement(to_f0, qxy)
                cands.append(
                    _Candidate(
                        float(length[i]),
                        tuple(sf.EDGE_NAMES[e] for e in tab.edge_id[i, :k]),
                        tuple(float(s) for s in spar[i, :k]),
                        tuple(float(t) for t in tpar[i, :k]),
                        tab,
                        i,
                        pxy,
                        qxy,
                        sxy0,
                        qxy0,
                    )
                )
    if not cands:
        raise NoPathFound(f"no path from {p} to {q} at depth {depth}")
    lmin = min(c.length for c in cands)
    kept = sorted((c for c in cands if c.length <= lmin + tol), key=_Candidate.sort_key)
    out: list[_Candidate] = []
    for c in kept:
        poly = c.materialize_samples()
        if all(np.abs(poly - o.poly3).max() > DEDUP_TOL for o in out):
            out.append(c)
    return out


def _build_geodesic(p: sf.SurfacePoint, q: sf.SurfacePoint, c: _Candidate) -> Geodesic:
    c.materialize_samples()
    direction = None
    if c.length > 0:
        direction = (c.qxy0 - c.sxy0) / c.length
    return Geodesic(
        source=p,
        target=q,
        length=c.length,
        crossings=tuple(Crossing(e, s) for e, s in zip(c.edges, c.spars)),
        initial_direction=direction,
        samples_face=c.faces_arr,
        samples_bary=c.bary_arr,
        base_face=c.table.base,
        chain_faces=c.table.chains[c.idx].faces,
        source_xy=c.pxy,
        target_xy=c.qxy,
        seg_params=c.tpars,
    )


def _degenerate(p: sf.SurfacePoint) -> Geodesic:
    faces = np.full(N_SAMPLES, p.face, np.int64)
    bary = np.tile(np.asarray(p.bary), (N_SAMPLES, 1))
    xy = p.xy()
    return Geodesic(p, p, 0.0, (), None, faces, bary, p.face, (p.face,), xy, xy, ())


def min_geodesics(
    p: sf.SurfacePoint,
    q: sf.SurfacePoint,
    depth: int = DEFAULT_DEPTH,
    tol: float = DEFAULT_TOL,
) -> GeodesicSet:
    """All minimal geodesics from p to q."""
    if same_point(p, q):
        return GeodesicSet(0.0, (_degenerate(p),))
    cands = _solve(p, q, depth, tol)
    geos = tuple(_build_geodesic(p, q, c) for c in cands)
    return GeodesicSet(geos[0].length, geos)


def distance(
    p: sf.SurfacePoint,
    q: sf.SurfacePoint,
    depth: int = DEFAULT_DEPTH,
    tol: float = DEFAULT_TOL,
) -> float:
    if same_point(p, q):
        return 0.0
    return _solve(p, q, depth, tol)[0].length


def multiplicity(
    p: sf.SurfacePoint,
    q: sf.SurfacePoint,
    depth: int = DEFAULT_DEPTH,
    tol: float = DEFAULT_TOL,
) -> int:
    if same_point(p, q):
        return 1
    return len(_solve(p, q, depth, tol))


def initial_directions(
    p: sf.SurfacePoint,
    q: sf.SurfacePoint,
    depth: int = DEFAULT_DEPTH,
    tol: float = DEFAULT_TOL,
) -> list[np.ndarray]:
    """Unit start vectors of every minimal geodesic, in p's canonical face chart."""
    if same_point(p, q):
        raise SamePoint(f"{p} equals {q}")
    return [(c.qxy0 - c.sxy0) / c.length for c in _solve(p, q, depth, tol)]


def validate_geodesic(g: Geodesic, tol: float = DEFAULT_TOL) -> bool:
    """Recheck a geodesic's planar reconstruction from its own fields."""
    try:
        bary = sf.on_face_bary(g.source, g.base_face)
        if bary is None:
            return False
        pxy = sf.chart_xy(g.base_face, bary)
        if np.abs(pxy - g.source_xy).max() > tol:
            return False
        # rebuild the chain from the crossing list
        faces = [g.base_face]
        placements = [sf.IDENTITY_PLACEMENT]
        for cr in g.crossings:
            u, v = cr.edge
            fa, fb = sf.EDGE_FACES[sf.edge_index(u, v)]
            last = faces[-1]
            if last not in (fa, fb):
                return False
            nxt = fb if last == fa else fa
            placements.append(
                sf.compose_placements(placements[-1], sf.transition(last, nxt))
            )
            faces.append(nxt)
        if tuple(faces) != g.chain_faces:
            return False
        bary_t = sf.on_face_bary(g.target, faces[-1])
        if bary_t is None:
            return False
        qxy = sf.apply_placement(placements[-1], sf.chart_xy(faces[-1], bary_t))
        if np.abs(qxy - g.target_xy).max() > tol:
            return False
        d = qxy - pxy
        seglen = float(np.hypot(d[0], d[1]))
        if abs(seglen - g.length) > tol:
            return False
        tprev = -1.0
        for j, cr in enumerate(g.crossings):
            u, v = cr.edge
            face = faces[j]
            ea = sf.apply_placement(placements[j], sf._vertex_chart(face, u))
            eb = sf.apply_placement(placements[j], sf._vertex_chart(face, v))
            e = eb - ea
            r = ea - pxy
            det = e[0] * d[1] - e[1] * d[0]
            if abs(det) < 1e-300:
                return False
            t = (e[0] * r[1] - e[1] * r[0]) / det
            s = (d[0] * r[1] - d[1] * r[0]) / det
            if not (0.0 < t < 1.0 and 0.0 < s < 1.0 and t > tprev):
                return False
            if abs(s - cr.t) > tol:
                return False
            tprev = t
        return True
    except (ValueError, IndexError):
        return False
