"""Numba-compiled versions of the hot kernels.

Same contracts as kernels_numpy; importing this module fails cleanly when
numba is unavailable, and the backend module falls back to numpy.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

SEPS = 1e-12
TEPS = 1e-12


@njit(cache=True)
def eval_chains(px, py, qx, qy, qface, last_face, ncross, edge_a, edge_b, place_last):
    n = edge_a.shape[0]
    d = edge_a.shape[1]
    ok = np.zeros(n, np.bool_)
    length = np.zeros(n)
    tpar = np.zeros((n, d))
    spar = np.zeros((n, d))
    qpx = np.zeros(n)
    qpy = np.zeros(n)
    for i in range(n):
        qx2 = place_last[i, 0, 0] * qx + place_last[i, 0, 1] * qy + place_last[i, 0, 2]
        qy2 = place_last[i, 1, 0] * qx + place_last[i, 1, 1] * qy + place_last[i, 1, 2]
        qpx[i] = qx2
        qpy[i] = qy2
        dx = qx2 - px
        dy = qy2 - py
        length[i] = math.hypot(dx, dy)
        if last_face[i] != qface:
            continue
        valid = True
        tprev = -1.0
        for k in range(ncross[i]):
            ex = edge_b[i, k, 0] - edge_a[i, k, 0]
            ey = edge_b[i, k, 1] - edge_a[i, k, 1]
            rx = edge_a[i, k, 0] - px
            ry = edge_a[i, k, 1] - py
            det = ex * dy - ey * dx
            if abs(det) < 1e-300:
                valid = False
                break
            t = (ex * ry - ey * rx) / det
            s = (dx * ry - dy * rx) / det
            if not (TEPS < t < 1.0 - TEPS and SEPS < s < 1.0 - SEPS and t > tprev):
                valid = False
                break
            tpar[i, k] = t
            spar[i, k] = s
            tprev = t
        ok[i] = valid
    return ok, length, tpar, spar, qpx, qpy


@njit(cache=True)
def map_samples(px, py, qpx, qpy, ncross_i, tpar_i, face_seq_i, place_step_i, nsamp):
    faces = np.empty(nsamp, np.int64)
    bary = np.empty((nsamp, 3))
    sqrt3 = math.sqrt(3.0)
    for m in range(nsamp):
        t = m / (nsamp - 1.0)
        j = 0
        while j < ncross_i and tpar_i[j] < t:
            j += 1
        x = px + t * (qpx - px)
        y = py + t * (qpy - py)
        ux = x - place_step_i[j, 0, 2]
        uy = y - place_step_i[j, 1, 2]
        lx = place_step_i[j, 0, 0] * ux + place_step_i[j, 1, 0] * uy
        ly = place_step_i[j, 0, 1] * ux + place_step_i[j, 1, 1] * uy
        w0 = ly / sqrt3
        w1 = (1.0 - w0 - lx) / 2.0
        w2 = (1.0 - w0 + lx) / 2.0
        faces[m] = face_seq_i[j]
        bary[m, 0] = w0
        bary[m, 1] = w1
        bary[m, 2] = w2
    return faces, bary
