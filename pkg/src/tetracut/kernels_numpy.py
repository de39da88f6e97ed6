"""Reference numpy implementations of the geodesic enumeration kernels.

Semantics must match kernels_numba exactly; the backend test suite checks
bit-level agreement on random queries.
"""

from __future__ import annotations

import numpy as np

SEPS = 1e-12  # open-interval guard for edge-crossing parameters
TEPS = 1e-12  # open-interval guard for segment parameters
N_SAMPLES = 64


def eval_chains(px, py, qx, qy, qface, last_face, ncross, edge_a, edge_b, place_last):
    """Straight-segment test of every chain against a target on face ``qface``.

    Returns (ok, length, tpar, spar, qpx, qpy): validity flag, planar segment
    length, per-crossing segment and edge parameters, and the target's planar
    image, all in the base chart.
    """
    n = edge_a.shape[0]
    q2 = np.empty((n, 2))
    q2[:, 0] = place_last[:, 0, 0] * qx + place_last[:, 0, 1] * qy + place_last[:, 0, 2]
    q2[:, 1] = place_last[:, 1, 0] * qx + place_last[:, 1, 1] * qy + place_last[:, 1, 2]
    dx = q2[:, 0] - px
    dy = q2[:, 1] - py
    length = np.hypot(dx, dy)
    ok, tpar, spar = _crossing_test(px, py, dx, dy, ncross, edge_a, edge_b)
    ok &= last_face == qface
    return ok, length, tpar, spar, q2[:, 0].copy(), q2[:, 1].copy()


def _crossing_test(px, py, dx, dy, ncross, edge_a, edge_b):
    n, d = edge_a.shape[0], edge_a.shape[1]
    tpar = np.zeros((n, d))
    spar = np.zeros((n, d))
    if d == 0:
        return np.ones(n, bool), tpar, spar
    kmask = np.arange(d)[None, :] < ncross[:, None]
    ex = edge_b[:, :, 0] - edge_a[:, :, 0]
    ey = edge_b[:, :, 1] - edge_a[:, :, 1]
    rx = edge_a[:, :, 0] - px
    ry = edge_a[:, :, 1] - py
    det = ex * dy[:, None] - ey * dx[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        t = (ex * ry - ey * rx) / det
        s = (dx[:, None] * ry - dy[:, None] * rx) / det
    good = (
        (np.abs(det) >= 1e-300)
        & (t > TEPS)
        & (t < 1.0 - TEPS)
        & (s > SEPS)
        & (s < 1.0 - SEPS)
    )
    t_masked = np.where(kmask & good, t, np.nan)
    increasing = np.ones(n, bool)
    if d > 1:
        both = kmask[:, 1:] & kmask[:, :-1]
        with np.errstate(invalid="ignore"):
            increasing = ~np.any(both & ~(t_masked[:, 1:] > t_masked[:, :-1]), axis=1)
    ok = np.all(good | ~kmask, axis=1) & increasing
    tpar[kmask] = np.where(good, t, 0.0)[kmask]
    spar[kmask] = np.where(good, s, 0.0)[kmask]
    return ok, tpar, spar


def eval_chains_planar(px, py, tx, ty, ncross, edge_a, edge_b, place_last_inv):
    """Like eval_chains, but the target is a fixed planar point of the base chart.

    Returns (ok, length, tpar, spar, local): crossing validity of the straight
    segment and the target's chart coordinates in each chain's last face.
    The caller decides which last faces actually contain the target.
    """
    dx = tx - px
    dy = ty - py
    n = edge_a.shape[0]
    ok, tpar, spar = _crossing_test(px, py, np.full(n, dx), np.full(n, dy), ncross, edge_a, edge_b)
    local = np.empty((n, 2))
    local[:, 0] = (
        place_last_inv[:, 0, 0] * tx + place_last_inv[:, 0, 1] * ty + place_last_inv[:, 0, 2]
    )
    local[:, 1] = (
        place_last_inv[:, 1, 0] * tx + place_last_inv[:, 1, 1] * ty + place_last_inv[:, 1, 2]
    )
    length = np.full(n, np.hypot(dx, dy))
    return ok, length, tpar, spar, local


def map_samples(px, py, qpx, qpy, ncross_i, tpar_i, face_seq_i, place_step_i, nsamp):
    """Constant-speed samples of one validated chain segment.

    Returns (faces[nsamp], bary[nsamp, 3]) giving each sample's face and
    barycentric weights (w0 on the face's first alphabetical vertex).
    """
    t = np.linspace(0.0, 1.0, nsamp)
    slots = np.searchsorted(tpar_i[:ncross_i], t, side="left")
    x = px + t * (qpx - px)
    y = py + t * (qpy - py)
    pl = place_step_i[slots]  # [nsamp, 2, 3]
    ux = x - pl[:, 0, 2]
    uy = y - pl[:, 1, 2]
    # placements are orthogonal, so the inverse linear part is the transpose
    lx = pl[:, 0, 0] * ux + pl[:, 1, 0] * uy
    ly = pl[:, 0, 1] * ux + pl[:, 1, 1] * uy
    w0 = ly / np.sqrt(3.0)
    w1 = (1.0 - w0 - lx) / 2.0
    w2 = (1.0 - w0 + lx) / 2.0
    bary = np.stack([w0, w1, w2], axis=1)
    return face_seq_i[slots].copy(), bary
