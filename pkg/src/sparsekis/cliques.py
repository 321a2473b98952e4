"""Exact k-clique and k-independent-set counting in plain graphs.

The k ≥ 3 counter splits k into three near-equal parts, materializes all
cliques of each part size, and counts triangles in the tripartite
compatibility structure; every unordered k-clique shows up once per
ordered partition into the three block sizes, so the triangle count is
divided by that exact factor.

All arithmetic is exact.  Matrix products run in float64 blocks, which
is lossless here: entries are 0/1, so every intermediate value is an
integer bounded by the inner dimension, far below 2^53.  Totals are
accumulated in Python integers.
"""

from __future__ import annotations

from math import factorial
from typing import Sequence

import numpy as np

from .errors import ResourceLimit
from .hypergraph import Graph, closed_neighborhood, complement, induced_graph

#: Cliques materialized per part before giving up; three boolean
#: matrices of this side length must fit in memory.
DEFAULT_NODE_CAP = 12_000

_ROW_BLOCK = 1024


def count_triangles_tripartite(ab, bc, ac) -> int:
    """Number of triples (a, b, c) related under all three 0/1 matrices.

    Computes sum over (a, c) of AC[a, c] * (AB @ BC)[a, c] exactly.
    """
    ab = np.asarray(ab)
    bc = np.asarray(bc)
    ac = np.asarray(ac)
    if ab.ndim != 2 or bc.ndim != 2 or ac.ndim != 2:
        raise ValueError("inputs must be matrices")
    na, nb = ab.shape
    nb2, nc = bc.shape
    if (na, nc) != ac.shape or nb != nb2:
        raise ValueError(
            f"incompatible shapes {ab.shape}, {bc.shape}, {ac.shape}"
        )
    if 0 in (na, nb, nc):
        return 0
    # float32 products are lossless for 0/1 inputs while the inner
    # dimension stays below 2^24; per-block totals go through float64.
    assert nb < (1 << 24), "inner dimension too large for exact float32 products"
    bc_f = bc.astype(np.float32)
    total = 0
    for lo in range(0, na, _ROW_BLOCK):
        hi = min(lo + _ROW_BLOCK, na)
        prod = ab[lo:hi].astype(np.float32) @ bc_f
        prod *= ac[lo:hi]
        total += int(prod.sum(dtype=np.float64))
    return total


def _cliques_of_size(G: Graph, size: int, node_cap: int) -> tuple[list[int], list[int]]:
    """Vertex bitmasks of all size-cliques, with their common-neighbor masks."""
    adj = G.adjacency
    masks: list[int] = []
    commons: list[int] = []

    def found(mask: int, common: int) -> None:
        masks.append(mask)
        commons.append(common)
        if len(masks) > node_cap:
            raise ResourceLimit("clique part nodes", f"> {node_cap}", node_cap)

    def rec(mask: int, common: int, last: int, depth: int) -> None:
        if depth == size:
            found(mask, common)
            return
        cand = common & ~((1 << last) - 1)
        while cand:
            bit = cand & -cand
            cand ^= bit
            v = bit.bit_length()
            rec(mask | bit, common & adj[v - 1], v, depth + 1)

    if size == 0:
        found(0, (1 << G.n) - 1)
    else:
        for v in range(1, G.n + 1):
            rec(1 << (v - 1), adj[v - 1], v, 1)
    return masks, commons


def _pack(masks: Sequence[int], n: int) -> np.ndarray:
    words = max(1, (n + 63) // 64)
    out = np.zeros((len(masks), words), dtype=np.uint64)
    low = (1 << 64) - 1
    for i, m in enumerate(masks):
        for w in range(words):
            out[i, w] = (m >> (64 * w)) & low
    return out


def _compat(commons_x: np.ndarray, masks_y: np.ndarray) -> np.ndarray:
    """0/1 matrix: entry (i, j) set iff y-clique j lies inside x-clique i's common neighbors.

    That containment makes the union of the two cliques a clique: every
    cross pair is adjacent, and no vertex neighbors itself, so the parts
    are disjoint too.
    """
    bad = np.zeros((commons_x.shape[0], masks_y.shape[0]), dtype=bool)
    for w in range(commons_x.shape[1]):
        notc = ~commons_x[:, w]
        bad |= (notc[:, None] & masks_y[None, :, w]) != 0
    return (~bad).astype(np.uint8)


def count_k_cliques(G: Graph, k: int, node_cap: int = DEFAULT_NODE_CAP) -> int:
    """Exact number of k-vertex cliques."""
    if k < 0:
        raise ValueError(f"negative k {k}")
    if k > G.n:
        return 0
    if k == 0:
        return 1
    if k == 1:
        return G.n
    if k == 2:
        return G.m
    a = k // 3
    c = -(-k // 3)
    b = k - a - c
    parts: dict[int, tuple[np.ndarray, np.ndarray]] = {}
    for size in {a, b, c}:
        masks, commons = _cliques_of_size(G, size, node_cap)
        parts[size] = (_pack(masks, G.n), _pack(commons, G.n))
    mats: dict[tuple[int, int], np.ndarray] = {}
    for sx, sy in {(a, b), (b, c), (a, c)}:
        mats[(sx, sy)] = _compat(parts[sx][1], parts[sy][0])
    total = count_triangles_tripartite(mats[(a, b)], mats[(b, c)], mats[(a, c)])
    denom = factorial(k) // (factorial(a) * factorial(b) * factorial(c))
    assert total % denom == 0, f"triple count {total} not divisible by {denom}"
    return total // denom


def count_k_is(G: Graph, k: int, node_cap: int = DEFAULT_NODE_CAP) -> int:
    """Exact number of independent k-sets: clique count in the complement."""
    return count_k_cliques(complement(G), k, node_cap)


def count_k_is_containing(
    G: Graph, k: int, W, node_cap: int = DEFAULT_NODE_CAP
) -> int:
    """Exact number of independent k-sets that contain all of W."""
    W = frozenset(W)
    if len(W) > k:
        return 0
    if not G.is_independent(W):
        return 0
    sub, _ = induced_graph(
        G, set(range(1, G.n + 1)) - closed_neighborhood(G, W)
    )
    return count_k_is(sub, k - len(W), node_cap)
