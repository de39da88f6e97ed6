"""Five-cell partition of source-target pairs with a geodesic planning rule per cell.

Cells:
  E1 — target not in the source's cut locus (unique minimal geodesic);
  E2 — target interior to a cut-locus arc from a tetrahedron vertex;
  E3 — target on the closed segment joining the U and L nodes (type 1), or the
       source on a vertex-to-centroid segment with the target on the closed
       d-to-L segment (type 2);
  E4 — the eight exact vertex/opposite-centroid pairs;
  E5 — source in the star of an edge midpoint, target its multiplicity-4 B point.

Every rule returns a genuinely minimal geodesic (checked against the
brute-force solver); selection among equal-length candidates is made in the
canonical frame and mapped back, so it is consistent across the whole orbit
of a configuration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import cutlocus, oracle
from . import surface as sf
from .errors import BadCell

DEPTH = oracle.DEFAULT_DEPTH

CELLS = ("E1", "E2", "E3", "E4", "E5")

_D = sf.vertex_point("d")

#: the eight discrete pairs of E4: (vertex, centroid of opposite face) both ways
E4_PAIRS = tuple(
    pair
    for f in range(4)
    for pair in (
        (sf.vertex_point(sf.OPPOSITE_VERTEX[f]), sf.centroid(f)),
        (sf.centroid(f), sf.vertex_point(sf.OPPOSITE_VERTEX[f])),
    )
)


@dataclass(frozen=True)
class PartitionLabel:
    cell: str
    detail: tuple = ()

    def as_dict(self) -> dict:
        out = {"cell": self.cell}
        if self.cell == "E2":
            out["vertex"] = self.detail[0]
            out["domain"] = self.detail[1]
        elif self.cell == "E3":
            out["type"] = self.detail[0]
            out["vertex"] = self.detail[1]
        elif self.cell == "E5":
            out["star_edge"] = self.detail[0]
        return out


@dataclass(frozen=True)
class PlanResult:
    label: PartitionLabel
    path: oracle.Geodesic


@dataclass(frozen=True)
class AuditReport:
    kind: str
    samples: int
    seed: int
    violations: tuple[str, ...]
    stats: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations


# ---------------------------------------------------------------------------
# Pair context: everything the predicates and rules share


class _PairContext:
    __slots__ = ("p", "q", "same", "e4", "cp", "pc", "qc", "diagram", "cands", "feats")

    def __init__(self, p: sf.SurfacePoint, q: sf.SurfacePoint, depth: int = DEPTH):
        self.p = p
        self.q = q
        self.same = oracle.same_point(p, q)
        self.e4 = any(
            oracle.same_point(p, a) and oracle.same_point(q, b) for a, b in E4_PAIRS
        )
        self.cp = sf.reduce_to_canonical(p)
        self.pc = sf.apply_isometry(self.cp.g, p)
        self.qc = sf.apply_isometry(self.cp.g, q)
        self.diagram = cutlocus.canonical_diagram(self.cp.stratum, self.cp.x, self.cp.alpha)
        if self.same:
            self.cands = []
            self.feats = []
        else:
            self.cands = oracle._solve(self.pc, self.qc, depth)
            self.feats = [self.diagram.classify_endpoint(c.qxy0) for c in self.cands]

    @property
    def mult(self) -> int:
        return 1 if self.same else len(self.cands)

    @property
    def sign(self) -> float:
        return 1.0 if self.cp.g.is_even else -1.0

    def feat_kinds(self) -> set:
        return {f.kind for f in self.feats if f is not None}


def _memberships(ctx: _PairContext) -> list[str]:
    """Independently evaluated cell predicates; the audit checks exactly one holds."""
    s = ctx.cp.stratum
    kinds = ctx.feat_kinds()
    qc_is_d = (not ctx.same) and oracle.same_point(ctx.qc, _D)
    node_kinds = kinds & {"UL", "U", "L"}

    in_e4 = ctx.e4
    in_e5 = False
    if not ctx.same and s in ("S1_edge_aM", "S4_segment_CM"):
        b_surf = cutlocus.trace_planar(ctx.pc, ctx.diagram.b_copies[0])
        in_e5 = bool(np.linalg.norm(ctx.qc.to_3d() - b_surf.to_3d()) <= 1e-9)
    in_e3 = (s == "S0_interior" and ctx.mult >= 2 and bool(node_kinds)) or (
        s in ("S2_segment_aC", "S5_vertex_a")
        and not in_e4
        and ((ctx.mult >= 2 and bool(node_kinds)) or qc_is_d)
    )
    in_e2 = (not ctx.same) and ctx.mult >= 2 and "varc" in kinds and not in_e5
    in_e1 = ctx.same or (
        ctx.mult == 1
        and not in_e4
        and not (s in ("S2_segment_aC", "S5_vertex_a") and qc_is_d)
    )
    out = []
    for name, flag in (
        ("E1", in_e1),
        ("E2", in_e2),
        ("E3", in_e3),
        ("E4", in_e4),
        ("E5", in_e5),
    ):
        if flag:
            out.append(name)
    return out


def _domain_id(p: sf.SurfacePoint, v: str) -> str:
    """Which of the three source domains for cut-locus arcs through vertex v holds p.

    Each domain is a quadrilateral w1-C-w2-v: the triangle w1-C-w2 of the face
    opposite v glued to the face w1 w2 v.
    """
    f_opp = sf.face_index(tuple(u for u in sf.VERTICES if u != v))
    verts = sf.FACES[f_opp]
    sup = set(p.support())
    if sup <= set(verts):
        wts = sf.on_face_bary(p, f_opp)
        order = sorted(zip(verts, wts), key=lambda t: (-t[1], t[0]))
        pair = sorted(u for u, _ in order[:2])
    else:
        rest = sorted(sup - {v})
        if len(rest) >= 2:
            pair = rest[:2]
        else:
            other = min(u for u in verts if u not in rest)
            pair = sorted([rest[0], other])
    return f"{pair[0]}C{pair[1]}{v}"


def _label_from_ctx(ctx: _PairContext) -> PartitionLabel:
    cells = _memberships(ctx)
    # precedence: the discrete cell first, then the special-point cells
    for cell in ("E4", "E5", "E3", "E2", "E1"):
        if cell not in cells:
            continue
        ginv = ctx.cp.g.inverse()
        if cell == "E2":
            vc = next(f.label for f in ctx.feats if f is not None and f.kind == "varc")
            v = ginv(vc)
            return PartitionLabel("E2", (v, _domain_id(ctx.p, v)))
        if cell == "E3":
            typ = 2 if ctx.cp.stratum in ("S2_segment_aC", "S5_vertex_a") else 1
            return PartitionLabel("E3", (typ, ginv("a")))
        if cell == "E5":
            edge = "".join(sorted((ginv("a"), ginv("c"))))
            return PartitionLabel("E5", (edge,))
        return PartitionLabel(cell)
    # tolerance fallback: an endpoint just missed every feature; treat as E1/E2
    return PartitionLabel("E1" if ctx.mult == 1 else "E2", ())


def classify(p: sf.SurfacePoint, q: sf.SurfacePoint, depth: int = DEPTH) -> PartitionLabel:
    return _label_from_ctx(_PairContext(p, q, depth))


# ---------------------------------------------------------------------------
# Candidate selection and frame transport


@lru_cache(maxsize=None)
def _sample_maps(h: sf.Isometry):
    img = np.empty(4, np.int64)
    perm = np.empty((4, 3), np.int64)
    hinv = h.inverse()
    for f in range(4):
        verts = sf.FACES[f]
        tgt = tuple(sorted(h(v) for v in verts))
        img[f] = sf.face_index(tgt)
        perm[f] = [verts.index(hinv(w)) for w in tgt]
    return img, perm


def _transform_poly3(h: sf.Isometry, faces: np.ndarray, bary: np.ndarray) -> np.ndarray:
    img, perm = _sample_maps(h)
    nb = np.take_along_axis(bary, perm[faces], axis=1)
    return oracle._polyline_3d(img[faces], nb)


def _select_canonical(ctx: _PairContext, cell: str) -> int:
    """Index of the canonical-frame candidate the cell's rule picks."""
    pxy = np.asarray(ctx.pc.xy())
    sign = ctx.sign
    if cell == "E2":
        # the copy on the right of the ray source -> vertex, measured with the
        # surface orientation (reflected reductions flip the chart's sense)
        anchor = next(
            np.asarray(f.anchor) for f in ctx.feats if f is not None and f.kind == "varc"
        )
        scores = [
            sign * sf.cross2(anchor - pxy, np.asarray(c.qxy0) - pxy) for c in ctx.cands
        ]
        return int(np.argmin(scores))
    if cell == "E3":
        side = "+" if sign > 0 else "-"
        seg = next(a for a in ctx.diagram.arcs if a.kind == "UL" and a.side == side)
        scores = [cutlocus._seg_dist(np.asarray(c.qxy0), seg.a, seg.b) for c in ctx.cands]
        return int(np.argmin(scores))
    raise BadCell(f"no selection rule for {cell}")


_E5_STEPS = 16


def _b_point_of(pt: sf.SurfacePoint, depth: int) -> sf.SurfacePoint:
    cp = sf.reduce_to_canonical(pt)
    diagram = cutlocus.canonical_diagram(cp.stratum, cp.x, cp.alpha)
    pc = sf.apply_isometry(cp.g, pt)
    b = cutlocus.trace_planar(pc, diagram.b_copies[0], depth)
    return sf.apply_isometry(cp.g.inverse(), b)


def _track_e5(ctx: _PairContext, cands_o: list, depth: int) -> int:
    """Continuous selection for E5: anchor at the star's midpoint, track outward.

    At the midpoint M of the star's edge the geodesic with chart angle 0 in
    M's canonical frame is chosen; the choice is then continued step by step
    along the branch containing the source, each step keeping the candidate
    closest (in sample sup-distance) to the previous one.  This is continuous
    across the whole star and independent of which branch the source is on.
    """
    g = ctx.cp.g
    ginv = g.inverse()
    on_edge = ctx.cp.stratum == "S1_edge_aM"
    va, vb, vc = ginv("a"), ginv("b"), ginv("c")

    def real_point(x: float) -> sf.SurfacePoint:
        if on_edge or x == 0.5:
            face = sf.faces_containing((va, vc))[0]
            w = {va: 1.0 - x, vc: x}
        else:
            face = sf.face_index((va, vb, vc))
            w = {va: (1.0 + x) / 3.0, vb: (1.0 - 2.0 * x) / 3.0, vc: (1.0 + x) / 3.0}
        bary = tuple(w.get(v, 0.0) for v in sf.FACES[face])
        return sf.make_point(face, bary)

    xs = np.linspace(0.5, ctx.cp.x, _E5_STEPS + 1)
    prev_poly = None
    sel = 0
    for k, xk in enumerate(xs):
        if k == len(xs) - 1:
            cands = cands_o
        else:
            pt = real_point(float(xk))
            cands = oracle._solve(pt, _b_point_of(pt, depth), depth)
        if prev_poly is None:
            # anchor: the chart-angle-0 geodesic at M, picked in M's canonical frame
            m = real_point(0.5)
            cpm = sf.reduce_to_canonical(m)
            mc = sf.apply_isometry(cpm.g, m)
            bc = sf.apply_isometry(cpm.g, _b_point_of(m, depth))
            canon = oracle._solve(mc, bc, depth)
            angles = [
                abs(math.atan2(c.qxy0[1] - c.sxy0[1], c.qxy0[0] - c.sxy0[0]))
                for c in canon
            ]
            ci = int(np.argmin(angles))
            cc = canon[ci]
            cc.materialize_samples()
            prev_poly = _transform_poly3(cpm.g.inverse(), cc.faces_arr, cc.bary_arr)
        gaps = [np.abs(prev_poly - c.materialize_samples()).max() for c in cands]
        sel = int(np.argmin(gaps))
        prev_poly = cands[sel].materialize_samples()
    return sel


def _plan_from_ctx(ctx: _PairContext, depth: int = DEPTH) -> PlanResult:
    label = _label_from_ctx(ctx)
    if ctx.same:
        return PlanResult(label, oracle._degenerate(ctx.p))
    if ctx.cp.g == sf.IDENTITY:
        cands_o = ctx.cands
    else:
        cands_o = oracle._solve(ctx.p, ctx.q, depth)
    if label.cell == "E5":
        idx = _track_e5(ctx, cands_o, depth)
    elif label.cell in ("E1", "E4") or len(cands_o) == 1:
        idx = 0
    else:
        ci = _select_canonical(ctx, label.cell)
        if ctx.cp.g == sf.IDENTITY:
            idx = ci
        else:
            cc = ctx.cands[ci]
            cc.materialize_samples()
            want = _transform_poly3(ctx.cp.g.inverse(), cc.faces_arr, cc.bary_arr)
            gaps = [
                np.abs(want - c.materialize_samples()).max() for c in cands_o
            ]
            idx = int(np.argmin(gaps))
            if gaps[idx] > 1e-6:
                raise RuntimeError(
                    f"selected candidate not found in source frame (gap {gaps[idx]:.2e})"
                )
    return PlanResult(label, oracle._build_geodesic(ctx.p, ctx.q, cands_o[idx]))


def phi(p: sf.SurfacePoint, q: sf.SurfacePoint, depth: int = DEPTH) -> PlanResult:
    """The motion planner: classify the pair and apply that cell's rule."""
    return _plan_from_ctx(_PairContext(p, q, depth), depth)


# ---------------------------------------------------------------------------
# Audits


def _random_point(rng: np.random.Generator) -> sf.SurfacePoint:
    face = int(rng.integers(4))
    r1, r2 = rng.random(2)
    s = math.sqrt(r1)
    return sf.make_point(face, (1.0 - s, s * (1.0 - r2), s * r2))


def _canonical_rep(stratum: str, x: float, alpha: float) -> sf.SurfacePoint:
    return sf.make_point(sf.FACE_ABC, sf.bary_from_xy((x, alpha * sf.SQRT3)))


_STRATUM_REPS = (
    ("S1_edge_aM", 0.3, 0.7),
    ("S2_segment_aC", 0.0, 0.6),
    ("S3_centroid", 0.0, 1.0 / 3.0),
    ("S4_segment_CM", 0.3, 1.3 / 3.0),
    ("S5_vertex_a", 0.0, 1.0),
)


def _forced_pairs() -> list[tuple[sf.SurfacePoint, sf.SurfacePoint, str]]:
    """Degenerate-stratum and E4 pairs included in every partition audit."""
    pairs = []
    for a, b in E4_PAIRS:
        pairs.append((a, b, f"E4 {a}->{b}"))
    m = sf.edge_midpoint("a", "c")
    b_of_m = sf.edge_midpoint("b", "d")
    pairs.append((m, b_of_m, "M->B"))
    for stratum, x, alpha in _STRATUM_REPS:
        pc = _canonical_rep(stratum, x, alpha)
        sp = cutlocus.special_points(pc)
        targets = [t for t in (sp.u, sp.l, sp.b_point) if t is not None]
        diagram = cutlocus.canonical_diagram(stratum, x, alpha)
        arc_targets = []
        for kind in ("varc", "UL"):
            arc = next((a for a in diagram.arcs if a.kind == kind), None)
            if arc is not None:
                mid = 0.63 * np.asarray(arc.a) + 0.37 * np.asarray(arc.b)
                arc_targets.append(cutlocus.trace_planar(pc, mid))
        for h in sf.ALL_ISOMETRIES:
            p = sf.apply_isometry(h, pc)
            for t, _mult in targets:
                pairs.append((p, sf.apply_isometry(h, t), f"{stratum} {h.perm} special"))
            for t in arc_targets:
                pairs.append((p, sf.apply_isometry(h, t), f"{stratum} {h.perm} arc"))
            pairs.append((p, sf.apply_isometry(h, _D), f"{stratum} {h.perm} vertex d"))
    return pairs


def partition_audit(n: int, seed: int = 0, depth: int = DEPTH) -> AuditReport:
    """Sample n pairs (plus forced ones); check the cells partition and phi is minimal."""
    violations = []
    counts = {c: 0 for c in CELLS}

    def check(p, q, tag):
        ctx = _PairContext(p, q, depth)
        cells = _memberships(ctx)
        if len(cells) != 1:
            violations.append(f"{tag}: cells {cells} for ({p}, {q})")
        plan = _plan_from_ctx(ctx, depth)
        counts[plan.label.cell] += 1
        dist = 0.0 if ctx.same else ctx.cands[0].length
        if plan.path.length > dist + 1e-9:
            violations.append(
                f"{tag}: phi length {plan.path.length} exceeds distance {dist}"
            )

    for i in range(n):
        rng = np.random.default_rng([seed, i])
        check(_random_point(rng), _random_point(rng), f"sample {i}")
    forced = _forced_pairs()
    for p, q, tag in forced:
        check(p, q, tag)
    return AuditReport(
        "partition",
        n + len(forced),
        seed,
        tuple(violations),
        {"cell_counts": counts, "forced": len(forced)},
    )


# -- continuity ---------------------------------------------------------------

_N_DELTAS = 10


def _margin_bary(rng, margin=0.05):
    while True:
        r1, r2 = rng.random(2)
        s = math.sqrt(r1)
        b = (1.0 - s, s * (1.0 - r2), s * r2)
        if min(b) > margin:
            return b


def _shift_in_face(p: sf.SurfacePoint, d_bary, delta: float) -> sf.SurfacePoint:
    b = np.asarray(p.bary) + delta * np.asarray(d_bary)
    b = np.clip(b, 0.0, None)
    return sf.make_point(p.face, b / b.sum())


def _bary_dir(rng):
    v = rng.normal(size=3)
    v -= v.mean()
    n = np.linalg.norm(v)
    return v / n if n > 0 else np.array([1.0, -0.5, -0.5]) / np.linalg.norm([1, -0.5, -0.5])


def _s0_params(rng, margin=0.04):
    while True:
        x = rng.uniform(margin, 0.5 - 3.0 * margin)
        lo, hi = 1 / 3 + x / 3 + margin, 1 - x - margin
        if hi > lo:
            return x, rng.uniform(lo, hi)


def _arc_point(diagram: cutlocus.CanonicalDiagram, arc_idx: int, t: float):
    arc = diagram.arcs[arc_idx]
    a = np.asarray(arc.a)
    b = np.asarray(arc.b)
    return a + t * (b - a)


def _pair_family(cell: str, rng: np.random.Generator, depth: int):
    """A convergent family delta -> (p, q) staying inside one component of the cell."""
    h = sf.ALL_ISOMETRIES[int(rng.integers(len(sf.ALL_ISOMETRIES)))]

    if cell == "E1":
        while True:
            p0 = sf.make_point(int(rng.integers(4)), _margin_bary(rng))
            q0 = sf.make_point(int(rng.integers(4)), _margin_bary(rng))
            if oracle.same_point(p0, q0) or classify(p0, q0, depth).cell != "E1":
                continue
            dp, dq = _bary_dir(rng), _bary_dir(rng)

            def make(delta):
                return _shift_in_face(p0, dp, delta), _shift_in_face(q0, dq, delta)

            # the whole family must stay off the cut locus
            if all(classify(*make(d), depth).cell == "E1" for d in (1e-2, 5e-3)):
                return make

    if cell in ("E2", "E3"):
        if cell == "E2":
            x0, a0 = _s0_params(rng)
            diagram0 = cutlocus.canonical_diagram("S0_interior", x0, a0)
            varcs = [i for i, a in enumerate(diagram0.arcs) if a.kind == "varc"]
            arc_idx = varcs[int(rng.integers(len(varcs)))]
            t = rng.uniform(0.1, 0.9)
            dx, da = rng.normal(size=2)
            nrm = math.hypot(dx, da)
            dx, da = dx / nrm, da / nrm

            def make(delta):
                x, alpha = x0 + delta * dx, a0 + delta * da
                d = cutlocus.canonical_diagram("S0_interior", x, alpha)
                pc = _canonical_rep("S0_interior", x, alpha)
                qc = cutlocus.trace_planar(pc, _arc_point(d, arc_idx, t), depth)
                return sf.apply_isometry(h, pc), sf.apply_isometry(h, qc)

            return make
        # E3: type 1 on the closed UL segment, or type 2 along aC
        if rng.random() < 0.5:
            x0, a0 = _s0_params(rng)
            t = rng.uniform(0.0, 1.0)
            dx, da = rng.normal(size=2)
            nrm = math.hypot(dx, da)
            dx, da = dx / nrm, da / nrm

            def make(delta):
                x, alpha = x0 + delta * dx, a0 + delta * da
                d = cutlocus.canonical_diagram("S0_interior", x, alpha)
                arc_idx = next(
                    i for i, a in enumerate(d.arcs) if a.kind == "UL" and a.side == "+"
                )
                pc = _canonical_rep("S0_interior", x, alpha)
                qc = cutlocus.trace_planar(pc, _arc_point(d, arc_idx, t), depth)
                return sf.apply_isometry(h, pc), sf.apply_isometry(h, qc)

            return make
        a0 = rng.uniform(0.45, 0.9)
        t = rng.uniform(0.0, 1.0)
        da = 1.0 if rng.random() < 0.5 else -1.0

        def make(delta):
            alpha = a0 + delta * da
            d = cutlocus.canonical_diagram("S2_segment_aC", 0.0, alpha)
            arc_idx = next(
                i for i, a in enumerate(d.arcs) if a.kind == "UL" and a.side == "+"
            )
            pc = _canonical_rep("S2_segment_aC", 0.0, alpha)
            qc = cutlocus.trace_planar(pc, _arc_point(d, arc_idx, t), depth)
            return sf.apply_isometry(h, pc), sf.apply_isometry(h, qc)

        return make

    if cell == "E5":
        # approach along one branch of the star, including families limiting at M
        branch = int(rng.integers(3))
        to_m = rng.random() < 0.5

        def make(delta):
            if branch == 0:  # along the edge
                x = 0.5 - delta if to_m else 0.3 - delta
                stratum = "S1_edge_aM"
                alpha = 1.0 - x
            else:  # along the median whisker
                x = 0.5 - delta if to_m else 0.3 - delta
                stratum = "S4_segment_CM"
                alpha = (1.0 + x) / 3.0
            pc = _canonical_rep(stratum, x, alpha)
            d = cutlocus.canonical_diagram(stratum, x, alpha)
            qc = cutlocus.trace_planar(pc, d.b_copies[0], depth)
            return sf.apply_isometry(h, pc), sf.apply_isometry(h, qc)

        return make

    raise BadCell(f"cannot build families for {cell}")


def continuity_audit(cell: str, n: int, seed: int = 0, depth: int = DEPTH) -> AuditReport:
    """Check phi paths contract along convergent in-cell pair families.

    For each family, pairs at gaps delta = 1e-2/2^k (k=0..9) are planned and
    compared with the limit pair's path by 3D sup-distance over the sample
    polylines; the distances must decrease monotonically to ~0.
    """
    if cell == "E4":
        raise BadCell("E4 is discrete; continuity is vacuous")
    if cell not in CELLS:
        raise BadCell(f"unknown cell {cell}")
    deltas = [1e-2 / 2**k for k in range(_N_DELTAS)]
    violations = []
    worst_final = 0.0
    for fam in range(n):
        rng = np.random.default_rng([seed, fam])
        make = _pair_family(cell, rng, depth)
        p_lim, q_lim = make(0.0)
        base = _plan_from_ctx(_PairContext(p_lim, q_lim, depth), depth)
        base_poly = base.path.samples_3d()
        dists = []
        for delta in deltas:
            p, q = make(delta)
            plan = _plan_from_ctx(_PairContext(p, q, depth), depth)
            if plan.label.cell != cell:
                violations.append(
                    f"family {fam}: pair at delta={delta:g} left {cell} "
                    f"(got {plan.label.cell})"
                )
                break
            dists.append(float(np.abs(plan.path.samples_3d() - base_poly).max()))
        else:
            for k in range(1, len(dists)):
                if dists[k] > dists[k - 1] * 1.01 + 1e-12:
                    violations.append(
                        f"family {fam}: sup-distance not contracting at "
                        f"delta={deltas[k]:g} ({dists[k - 1]:.3e} -> {dists[k]:.3e})"
                    )
                    break
            worst_final = max(worst_final, dists[-1])
            if dists[-1] > 1e-3:
                violations.append(
                    f"family {fam}: final sup-distance {dists[-1]:.3e} not near 0"
                )
    stats: dict = {"worst_final_supdist": worst_final}
    if cell == "E5":
        stats["direction_probe"] = _direction_probe(violations, depth)
    return AuditReport("continuity/" + cell, n, seed, tuple(violations), stats)


def _direction_probe(violations: list, depth: int) -> dict:
    """Multiplicity-4 evidence at (edge midpoint, opposite B point).

    The four minimal geodesics leave at chart angles 0, 60, 180, 240 degrees;
    any single-cell rule on a punctured neighborhood must jump by >= 60 degrees.
    """
    m = sf.edge_midpoint("a", "c")
    b = sf.edge_midpoint("b", "d")
    dirs = oracle.initial_directions(m, b, depth)
    angles = sorted(math.degrees(math.atan2(d[1], d[0])) % 360.0 for d in dirs)
    expected = [0.0, 60.0, 180.0, 240.0]
    tol = math.degrees(1e-6)
    if len(angles) != 4 or any(abs(a - e) > tol for a, e in zip(angles, expected)):
        violations.append(f"direction probe: angles {angles} != {expected}")
    gaps = [angles[(i + 1) % 4] - angles[i] for i in range(3)] + [
        360.0 - angles[3] + angles[0]
    ]
    if min(gaps) < 60.0 - tol:
        violations.append(f"direction probe: minimum gap {min(gaps)} < 60")
    return {"angles_deg": angles, "min_gap_deg": min(gaps)}


# -- oracle self-checks -------------------------------------------------------


def oracle_audit(n: int, seed: int = 0, depth: int = DEPTH) -> AuditReport:
    """Symmetry, triangle inequality, depth stability, crossing-parameter bounds."""
    violations = []
    n_deep = max(1, n // 10)
    for i in range(n):
        rng = np.random.default_rng([seed, i])
        p, q, r = (_random_point(rng) for _ in range(3))
        dpq = oracle.distance(p, q, depth)
        dqp = oracle.distance(q, p, depth)
        if abs(dpq - dqp) > 1e-9:
            violations.append(f"sample {i}: asymmetry |{dpq} - {dqp}|")
        dpr = oracle.distance(p, r, depth)
        drq = oracle.distance(r, q, depth)
        if dpq > dpr + drq + 1e-9:
            violations.append(f"sample {i}: triangle inequality {dpq} > {dpr}+{drq}")
        gs = oracle.min_geodesics(p, q, depth)
        for g in gs.geodesics:
            for c in g.crossings:
                if not (1e-9 <= c.t <= 1.0 - 1e-9):
                    violations.append(f"sample {i}: crossing parameter {c.t}")
        if i < n_deep:
            deep = oracle.min_geodesics(p, q, depth + 2)
            if deep.multiplicity != gs.multiplicity or abs(deep.distance - gs.distance) > 1e-12:
                violations.append(f"sample {i}: depth instability")
            else:
                for g4, g6 in zip(gs.geodesics, deep.geodesics):
                    if [c.edge for c in g4.crossings] != [c.edge for c in g6.crossings]:
                        violations.append(f"sample {i}: depth changed crossing lists")
    return AuditReport("oracle", n, seed, tuple(violations), {"deep_checked": n_deep})
