"""Flat array tables of unfolding chains, consumed by the numeric kernels."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import surface as sf


@dataclass(frozen=True)
class ChainTable:
    """All unfolding chains from one base face, as padded arrays.

    Planar data lives in the base face's chart.  ``edge_a`` holds the planar
    position of the alphabetically smaller endpoint of each crossed edge, so
    the kernel's edge parameter runs from the smaller to the larger vertex.
    """

    base: int
    depth: int
    chains: tuple[sf.UnfoldChain, ...]
    last_face: np.ndarray  # [n] int64
    ncross: np.ndarray  # [n] int64
    edge_a: np.ndarray  # [n, depth, 2]
    edge_b: np.ndarray  # [n, depth, 2]
    edge_id: np.ndarray  # [n, depth] int64
    face_seq: np.ndarray  # [n, depth+1] int64
    place_step: np.ndarray  # [n, depth+1, 2, 3]
    place_last: np.ndarray  # [n, 2, 3]
    place_last_inv: np.ndarray  # [n, 2, 3]

    @property
    def n(self) -> int:
        return len(self.chains)


@lru_cache(maxsize=32)
def chain_table(base: int, depth: int) -> ChainTable:
    chains = tuple(sf.enumerate_unfoldings(base, depth))
    n = len(chains)
    d = depth
    last_face = np.empty(n, np.int64)
    ncross = np.empty(n, np.int64)
    edge_a = np.zeros((n, d, 2))
    edge_b = np.zeros((n, d, 2))
    edge_id = np.full((n, d), -1, np.int64)
    face_seq = np.full((n, d + 1), -1, np.int64)
    place_step = np.zeros((n, d + 1, 2, 3))
    place_last = np.empty((n, 2, 3))
    place_last_inv = np.empty((n, 2, 3))
    for i, ch in enumerate(chains):
        k = len(ch.crossed_edges)
        last_face[i] = ch.faces[-1]
        ncross[i] = k
        for j, (edge, face, pl) in enumerate(
            zip(ch.crossed_edges, ch.faces, ch.placements)
        ):
            u, v = edge
            edge_a[i, j] = sf.apply_placement(pl, sf._vertex_chart(face, u))
            edge_b[i, j] = sf.apply_placement(pl, sf._vertex_chart(face, v))
            edge_id[i, j] = sf.edge_index(u, v)
        for j, (face, pl) in enumerate(zip(ch.faces, ch.placements)):
            face_seq[i, j] = face
            place_step[i, j] = pl
        # pad trailing steps with the last placement so sample mapping is safe
        for j in range(k + 1, d + 1):
            face_seq[i, j] = ch.faces[-1]
            place_step[i, j] = ch.placements[-1]
        place_last[i] = ch.placements[-1]
        place_last_inv[i] = sf.invert_placement(ch.placements[-1])
    return ChainTable(
        base,
        depth,
        chains,
        last_face,
        ncross,
        edge_a,
        edge_b,
        edge_id,
        face_seq,
        place_step,
        place_last,
        place_last_inv,
    )
