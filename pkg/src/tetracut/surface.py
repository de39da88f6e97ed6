"""Regular tetrahedron surface model: faces, surface points, symmetries, unfoldings.

The tetrahedron has edge length 2 throughout.  Each face gets a fixed planar
chart placing its alphabetically ordered vertices (v0, v1, v2) at
(0, sqrt3), (-1, 0) and (1, 0); for face abc this is the chart used in the
source diagrams (a top, b left, c right).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BadSum, DepthTooLarge, FaceMismatch, NegativeWeight

SQRT3 = math.sqrt(3.0)

VERTICES = ("a", "b", "c", "d")

#: Faces indexed in alphabetical order of their vertex triple.
FACES = (("a", "b", "c"), ("a", "b", "d"), ("a", "c", "d"), ("b", "c", "d"))
FACE_NAMES = tuple("".join(f) for f in FACES)
FACE_ABC, FACE_ABD, FACE_ACD, FACE_BCD = 0, 1, 2, 3

#: Vertex each face omits (the face's name in the source's convention).
OPPOSITE_VERTEX = ("d", "c", "b", "a")

EDGES = (("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d"))
EDGE_NAMES = tuple("".join(e) for e in EDGES)

#: Chart corners for (v0, v1, v2) of any face.
CHART_CORNERS = np.array([[0.0, SQRT3], [-1.0, 0.0], [1.0, 0.0]])

#: 3D embedding of the vertices (edge length 2), used only as an internal
#: metric for comparing nearby surface points.
_TET3D = np.array(
    [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]]
) / math.sqrt(2.0)


def face_index(vertices) -> int:
    return FACES.index(tuple(sorted(vertices)))


def faces_containing(vertices) -> tuple[int, ...]:
    vs = set(vertices)
    return tuple(i for i, f in enumerate(FACES) if vs <= set(f))


def edge_index(u: str, v: str) -> int:
    return EDGES.index(tuple(sorted((u, v))))


#: The two faces adjacent across each edge, in face-index order.
EDGE_FACES = tuple(faces_containing(e) for e in EDGES)


def chart_xy(face: int, bary) -> np.ndarray:
    """Planar chart coordinates of barycentric weights on a face."""
    w0, w1, w2 = bary
    return np.array([w2 - w1, w0 * SQRT3])


def bary_from_xy(xy) -> tuple[float, float, float]:
    """Inverse of chart_xy; weights may fall outside [0,1] for points off the face."""
    x, y = float(xy[0]), float(xy[1])
    w0 = y / SQRT3
    w1 = (1.0 - w0 - x) / 2.0
    w2 = (1.0 - w0 + x) / 2.0
    return (w0, w1, w2)


_ZERO_SNAP = 1e-12


@dataclass(frozen=True)
class SurfacePoint:
    """A point on the tetrahedron surface in canonical form.

    ``face`` is a face index and ``bary`` the weights on that face's
    alphabetically ordered vertices.  Edge and vertex points are always
    stored on the alphabetically smallest containing face (by vertex
    triple), so equal surface points compare equal.
    """

    face: int
    bary: tuple[float, float, float]

    @property
    def face_name(self) -> str:
        return FACE_NAMES[self.face]

    def weight_of(self, vertex: str) -> float:
        verts = FACES[self.face]
        return self.bary[verts.index(vertex)] if vertex in verts else 0.0

    def support(self) -> tuple[str, ...]:
        """Vertices with nonzero weight."""
        return tuple(v for v, w in zip(FACES[self.face], self.bary) if w != 0.0)

    def xy(self) -> np.ndarray:
        return chart_xy(self.face, self.bary)

    def to_3d(self) -> np.ndarray:
        p = np.zeros(3)
        for v, w in zip(FACES[self.face], self.bary):
            p += w * _TET3D[VERTICES.index(v)]
        return p

    def close_to(self, other: "SurfacePoint", tol: float = 1e-9) -> bool:
        return bool(np.linalg.norm(self.to_3d() - other.to_3d()) <= tol)

    def __str__(self) -> str:
        return f"{self.face_name}:{self.bary[0]:.12g},{self.bary[1]:.12g},{self.bary[2]:.12g}"


def make_point(face: int, bary) -> SurfacePoint:
    """Validate, renormalize and canonicalize barycentric weights on a face."""
    w = [float(x) for x in bary]
    if not all(math.isfinite(x) for x in w):
        raise BadSum(f"non-finite weights {bary}")
    if any(x < -_ZERO_SNAP for x in w):
        raise NegativeWeight(f"negative weight in {bary}")
    s = sum(w)
    if abs(s - 1.0) > 1e-9:
        raise BadSum(f"weights {bary} sum to {s}")
    w = [x / s for x in w]
    return canonicalize(SurfacePoint(face, tuple(w)))


def canonicalize(p: SurfacePoint) -> SurfacePoint:
    """Snap near-zero weights and move edge/vertex points to their canonical face."""
    w = [0.0 if abs(x) <= _ZERO_SNAP else x for x in p.bary]
    s = sum(w)
    w = [x / s for x in w]
    support = [v for v, x in zip(FACES[p.face], w) if x != 0.0]
    if len(support) == 3:
        return SurfacePoint(p.face, tuple(w))
    target = faces_containing(support)[0]
    weights = {v: x for v, x in zip(FACES[p.face], w)}
    return SurfacePoint(target, tuple(weights.get(v, 0.0) for v in FACES[target]))


def on_face_bary(p: SurfacePoint, face: int) -> tuple[float, float, float] | None:
    """Weights of p on ``face`` if p lies on it, else None.  Exact transfer."""
    if p.face == face:
        return p.bary
    if not set(p.support()) <= set(FACES[face]):
        return None
    weights = {v: w for v, w in zip(FACES[p.face], p.bary)}
    return tuple(weights.get(v, 0.0) for v in FACES[face])


def vertex_point(v: str) -> SurfacePoint:
    face = faces_containing([v])[0]
    return SurfacePoint(face, tuple(1.0 if u == v else 0.0 for u in FACES[face]))


def edge_midpoint(u: str, v: str) -> SurfacePoint:
    face = faces_containing([u, v])[0]
    return SurfacePoint(
        face, tuple(0.5 if w in (u, v) else 0.0 for w in FACES[face])
    )


def centroid(face: int | str) -> SurfacePoint:
    if isinstance(face, str):
        face = face_index(face)
    return SurfacePoint(face, (1 / 3, 1 / 3, 1 / 3))


# ---------------------------------------------------------------------------
# Symmetry group


@dataclass(frozen=True)
class Isometry:
    """A symmetry of the tetrahedron as a permutation of the vertices.

    ``perm`` lists the images of (a, b, c, d).
    """

    perm: tuple[str, str, str, str]

    def __call__(self, vertex: str) -> str:
        return self.perm[VERTICES.index(vertex)]

    def compose(self, other: "Isometry") -> "Isometry":
        """self after other."""
        return Isometry(tuple(self(other(v)) for v in VERTICES))

    def inverse(self) -> "Isometry":
        inv = [None] * 4
        for v, img in zip(VERTICES, self.perm):
            inv[VERTICES.index(img)] = v
        return Isometry(tuple(inv))

    @property
    def is_even(self) -> bool:
        inversions = sum(
            1
            for i, j in itertools.combinations(range(4), 2)
            if self.perm[i] > self.perm[j]
        )
        return inversions % 2 == 0


IDENTITY = Isometry(VERTICES)

#: All 24 symmetries in lexicographic order of their permutation tuple.
#: This is the fixed total order used for canonicalization tie-breaks.
ALL_ISOMETRIES = tuple(Isometry(p) for p in itertools.permutations(VERTICES))


def apply_isometry(g: Isometry, p: SurfacePoint) -> SurfacePoint:
    """Group action on surface points; pure relabeling, no arithmetic."""
    weights = {g(v): w for v, w in zip(FACES[p.face], p.bary)}
    target = face_index(weights.keys())
    return canonicalize(SurfacePoint(target, tuple(weights[v] for v in FACES[target])))


# ---------------------------------------------------------------------------
# Planar transitions and unfolding chains


def _perp(v):
    return np.array([-v[1], v[0]])


def cross2(u, v) -> float:
    """z component of the cross product of two planar vectors."""
    return float(u[0] * v[1] - u[1] * v[0])


def _isometry_from_pairs(src, dst, reflect: bool) -> np.ndarray:
    """2x3 planar isometry mapping segment src to dst as a [R|t] matrix."""
    ds = src[1] - src[0]
    dd = dst[1] - dst[0]
    ds = ds / np.linalg.norm(ds)
    dd = dd / np.linalg.norm(dd)
    mb = np.column_stack([ds, _perp(ds)])
    ma = np.column_stack([dd, -_perp(dd) if reflect else _perp(dd)])
    rot = ma @ mb.T
    t = dst[0] - rot @ src[0]
    return np.column_stack([rot, t])


def apply_placement(pl: np.ndarray, xy) -> np.ndarray:
    return pl[:, :2] @ np.asarray(xy, float) + pl[:, 2]


def invert_placement(pl: np.ndarray) -> np.ndarray:
    rot = pl[:, :2].T
    return np.column_stack([rot, -rot @ pl[:, 2]])


def compose_placements(outer: np.ndarray, inner: np.ndarray) -> np.ndarray:
    rot = outer[:, :2] @ inner[:, :2]
    t = outer[:, :2] @ inner[:, 2] + outer[:, 2]
    return np.column_stack([rot, t])


def _vertex_chart(face: int, v: str) -> np.ndarray:
    return CHART_CORNERS[FACES[face].index(v)]


@lru_cache(maxsize=None)
def transition(f: int, g: int) -> np.ndarray:
    """Placement of face g's chart into face f's chart across their shared edge."""
    shared = sorted(set(FACES[f]) & set(FACES[g]))
    if len(shared) != 2:
        raise ValueError(f"faces {f} and {g} are not adjacent")
    u, v = shared
    src = np.array([_vertex_chart(g, u), _vertex_chart(g, v)])
    dst = np.array([_vertex_chart(f, u), _vertex_chart(f, v)])
    third_f = _vertex_chart(f, (set(FACES[f]) - {u, v}).pop())
    third_g = _vertex_chart(g, (set(FACES[g]) - {u, v}).pop())
    edge_dir = dst[1] - dst[0]
    side_f = cross2(edge_dir, third_f - dst[0])
    for reflect in (False, True):
        pl = _isometry_from_pairs(src, dst, reflect)
        side_g = cross2(edge_dir, apply_placement(pl, third_g) - dst[0])
        if side_f * side_g < 0:
            return pl
    raise AssertionError("no valid transition found")


@lru_cache(maxsize=None)
def orientation_sign(face: int) -> int:
    """Per-face sign making chart cross products consistent on the surface.

    Propagated from face abc (+1) along transitions: a transition whose
    linear part has negative determinant flips the sign.
    """
    if face == FACE_ABC:
        return 1
    sign = {FACE_ABC: 1}
    frontier = [FACE_ABC]
    while frontier:
        f = frontier.pop()
        for g in range(4):
            if g == f or g in sign or len(set(FACES[f]) & set(FACES[g])) != 2:
                continue
            det = np.linalg.det(transition(f, g)[:, :2])
            sign[g] = sign[f] * (1 if det > 0 else -1)
            frontier.append(g)
    return sign[face]


IDENTITY_PLACEMENT = np.column_stack([np.eye(2), np.zeros(2)])


@dataclass(frozen=True)
class UnfoldChain:
    """A sequence of faces glued isometrically into the chart of faces[0]."""

    faces: tuple[int, ...]
    crossed_edges: tuple[tuple[str, str], ...]
    placements: tuple  # per-face 2x3 placement into the base chart

    def __len__(self) -> int:
        return len(self.faces)


def _extend(chain: UnfoldChain, edge: tuple[str, str]) -> UnfoldChain:
    last = chain.faces[-1]
    fa, fb = EDGE_FACES[edge_index(*edge)]
    nxt = fb if fa == last else fa
    pl = compose_placements(chain.placements[-1], transition(last, nxt))
    return UnfoldChain(
        chain.faces + (nxt,), chain.crossed_edges + (edge,), chain.placements + (pl,)
    )


def enumerate_unfoldings(base: int, depth: int) -> list[UnfoldChain]:
    """All chains of up to ``depth`` crossings from ``base``, no backtracking."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if depth > 12:
        raise DepthTooLarge(f"depth {depth} > 12")
    root = UnfoldChain((base,), (), (IDENTITY_PLACEMENT,))
    chains = [root]
    frontier = [root]
    for _ in range(depth):
        nxt = []
        for ch in frontier:
            last = ch.faces[-1]
            for edge in itertools.combinations(sorted(FACES[last]), 2):
                if ch.crossed_edges and ch.crossed_edges[-1] == edge:
                    continue
                nxt.append(_extend(ch, edge))
        chains.extend(nxt)
        frontier = nxt
    return chains


def flatten(p: SurfacePoint, chain: UnfoldChain) -> np.ndarray:
    """Planar image of p under the chain's final placement."""
    bary = on_face_bary(p, chain.faces[-1])
    if bary is None:
        raise FaceMismatch(f"{p} is not on face {FACE_NAMES[chain.faces[-1]]}")
    return apply_placement(chain.placements[-1], chart_xy(chain.faces[-1], bary))


def chart_map(g: Isometry, face_from: int) -> tuple[int, np.ndarray]:
    """Planar isometry induced by g between face charts.

    Returns (face_to, sigma) with sigma a 2x3 matrix mapping chart(face_from)
    coordinates to chart(face_to) coordinates, where face_to is the image of
    face_from under g.  Because unfolding commutes with the symmetry, sigma
    maps any unfolded diagram based at face_from to the one based at face_to.
    """
    verts = FACES[face_from]
    face_to = face_index([g(v) for v in verts])
    src = np.array([_vertex_chart(face_from, v) for v in verts[:2]])
    dst = np.array([_vertex_chart(face_to, g(v)) for v in verts[:2]])
    third_src = _vertex_chart(face_from, verts[2])
    third_dst = _vertex_chart(face_to, g(verts[2]))
    for reflect in (False, True):
        pl = _isometry_from_pairs(src, dst, reflect)
        if np.linalg.norm(apply_placement(pl, third_src) - third_dst) < 1e-9:
            return face_to, pl
    raise AssertionError("no chart map found")


# ---------------------------------------------------------------------------
# Canonical reduction to the subtriangle aCM


STRATA = (
    "S0_interior",
    "S1_edge_aM",
    "S2_segment_aC",
    "S3_centroid",
    "S4_segment_CM",
    "S5_vertex_a",
)


@dataclass(frozen=True)
class CanonicalPosition:
    """Image of a surface point in the closed subtriangle aCM of face abc."""

    g: Isometry
    stratum: str
    x: float
    alpha: float


_REGION_TOL = 1e-9


def _in_subtriangle(x: float, alpha: float) -> bool:
    return (
        x >= -_REGION_TOL
        and x <= 0.5 + _REGION_TOL
        and alpha >= 1 / 3 + x / 3 - _REGION_TOL
        and alpha <= 1 - x + _REGION_TOL
    )


def _stratum_of(x: float, alpha: float) -> str:
    if abs(x) <= _REGION_TOL:
        if abs(alpha - 1.0) <= _REGION_TOL:
            return "S5_vertex_a"
        if abs(alpha - 1 / 3) <= _REGION_TOL:
            return "S3_centroid"
        return "S2_segment_aC"
    if abs(alpha - (1 - x)) <= _REGION_TOL:
        return "S1_edge_aM"
    if abs(alpha - (1 / 3 + x / 3)) <= _REGION_TOL:
        return "S4_segment_CM"
    return "S0_interior"


def reduce_to_canonical(p: SurfacePoint) -> CanonicalPosition:
    """Smallest symmetry (in the fixed group order) mapping p into aCM."""
    for g in ALL_ISOMETRIES:
        q = apply_isometry(g, p)
        bary = on_face_bary(q, FACE_ABC)
        if bary is None:
            continue
        x, y = chart_xy(FACE_ABC, bary)
        alpha = y / SQRT3
        if _in_subtriangle(x, alpha):
            return CanonicalPosition(g, _stratum_of(x, alpha), float(x), float(alpha))
    raise AssertionError(f"no symmetry reduces {p} to aCM")


# ---------------------------------------------------------------------------
# Point literals


def parse_point(text: str) -> SurfacePoint:
    """Parse `a|b|c|d`, `centroid:<face>`, `mid:<edge>` or `<face>:<w1>,<w2>,<w3>`."""
    s = text.strip()
    if s in VERTICES:
        return vertex_point(s)
    if ":" not in s:
        raise ValueError(f"bad point literal {text!r}")
    head, _, tail = s.partition(":")
    if head == "centroid":
        if tail not in FACE_NAMES:
            raise ValueError(f"bad face {tail!r}")
        return centroid(FACE_NAMES.index(tail))
    if head == "mid":
        if tail not in EDGE_NAMES:
            raise ValueError(f"bad edge {tail!r}")
        return edge_midpoint(*tail)
    if head in FACE_NAMES:
        parts = tail.split(",")
        if len(parts) != 3:
            raise ValueError(f"need three weights in {text!r}")
        return make_point(FACE_NAMES.index(head), [float(x) for x in parts])
    raise ValueError(f"bad point literal {text!r}")
