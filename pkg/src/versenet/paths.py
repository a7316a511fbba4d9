"""Single-source shortest paths over adjacency maps.

Adjacency maps are ``{node: {neighbor: weight}}``. In weighted mode an edge
of weight w has length 1/w, kept as an exact Fraction so that equal-length
paths compare equal.
"""

from __future__ import annotations

import heapq
from collections import deque
from fractions import Fraction

import numpy as np

Adjacency = dict[str, dict[str, int]]


def shortest_path_dag(adj: Adjacency, source: str, weighted: bool = False):
    """Return ``(order, dist, sigma, preds)`` for one source.

    ``order`` lists reached nodes by non-decreasing distance, ``sigma`` counts
    shortest paths and ``preds`` holds shortest-path predecessors.
    """
    if weighted:
        return _dijkstra(adj, source)
    dist = {source: 0}
    sigma = {source: 1}
    preds: dict[str, list[str]] = {source: []}
    order = []
    queue = deque([source])
    while queue:
        v = queue.popleft()
        order.append(v)
        dv = dist[v]
        for w in adj[v]:
            if w not in dist:
                dist[w] = dv + 1
                sigma[w] = 0
                preds[w] = []
                queue.append(w)
            if dist[w] == dv + 1:
                sigma[w] += sigma[v]
                preds[w].append(v)
    return order, dist, sigma, preds


def _dijkstra(adj: Adjacency, source: str):
    dist: dict[str, Fraction] = {}
    seen = {source: Fraction(0)}
    sigma = {source: 1}
    preds: dict[str, list[str]] = {source: []}
    order = []
    heap = [(Fraction(0), source)]
    while heap:
        d, v = heapq.heappop(heap)
        if v in dist:
            continue
        dist[v] = d
        order.append(v)
        for w, wt in adj[v].items():
            nd = d + Fraction(1, wt)
            if w in dist:
                continue
            old = seen.get(w)
            if old is None or nd < old:
                seen[w] = nd
                sigma[w] = sigma[v]
                preds[w] = [v]
                heapq.heappush(heap, (nd, w))
            elif nd == old:
                sigma[w] += sigma[v]
                preds[w].append(v)
    return order, dist, sigma, preds


def distances_from(adj: Adjacency, source: str, weighted: bool = False) -> dict:
    return shortest_path_dag(adj, source, weighted)[1]


def adjacency_matrix(adj: Adjacency) -> tuple[list[str], np.ndarray]:
    names = list(adj)
    pos = {v: i for i, v in enumerate(names)}
    a = np.zeros((len(names), len(names)), dtype=np.float32)
    for v, nbrs in adj.items():
        for w in nbrs:
            a[pos[v], pos[w]] = 1.0
    return names, a


def hop_distances(a: np.ndarray) -> np.ndarray:
    """All-pairs hop counts from a 0/1 adjacency matrix by frontier expansion
    over all sources at once; unreachable pairs are ``inf``."""
    n = a.shape[0]
    dist = np.full((n, n), np.inf)
    if n == 0:
        return dist
    reached = np.eye(n, dtype=bool)
    frontier = reached.copy()
    np.fill_diagonal(dist, 0.0)
    hops = 0
    while frontier.any():
        hops += 1
        nxt = (frontier.astype(np.float32) @ a) > 0
        nxt &= ~reached
        dist[nxt] = hops
        reached |= nxt
        frontier = nxt
    return dist


def distance_matrix(adj: Adjacency) -> tuple[list[str], np.ndarray]:
    """Unweighted all-pairs distances; returns the node order used for the rows."""
    names, a = adjacency_matrix(adj)
    return names, hop_distances(a)
