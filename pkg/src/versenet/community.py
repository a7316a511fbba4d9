"""Louvain community detection and modularity."""

from __future__ import annotations

import json
import math
import random
import warnings
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .graph import CoocGraph

__all__ = [
    "Partition",
    "UndefinedModularityError",
    "CommunityReport",
    "modularity",
    "louvain",
    "best_of_seeds",
    "cluster_weight",
    "community_report",
    "partition_to_json",
]

TOLERANCE = 1e-7
_GAIN_EPS = 1e-10


class UndefinedModularityError(ValueError):
    pass


@dataclass(frozen=True)
class Partition:
    assignment: Mapping[str, int]
    modularity: float
    n_clusters: int
    seed: int | None = None
    # modularity of the flattened partition after each accepted level,
    # starting from the all-singletons partition
    history: tuple[float, ...] = field(default=(), compare=False)

    def members(self, community: int) -> list[str]:
        return sorted(v for v, c in self.assignment.items() if c == community)

    def sizes(self) -> Counter:
        return Counter(self.assignment.values())


def modularity(g: CoocGraph, assignment: Mapping[str, int]) -> float:
    """Weighted Newman modularity at resolution 1."""
    if g.is_empty():
        raise UndefinedModularityError("modularity is undefined for a graph without edges")
    missing = [v for v in g.nodes if v not in assignment]
    if missing:
        raise ValueError(f"assignment misses {len(missing)} node(s), e.g. {missing[0]!r}")
    m = g.total_weight
    internal: dict[int, int] = defaultdict(int)
    strength: dict[int, int] = defaultdict(int)
    for (a, b), w in g.edges.items():
        ca, cb = assignment[a], assignment[b]
        strength[ca] += w
        strength[cb] += w
        if ca == cb:
            internal[ca] += w
    return math.fsum(internal[c] / m - (strength[c] / (2.0 * m)) ** 2 for c in sorted(strength))


def _level_modularity(comm, adj, loops, k, m):
    internal: dict[int, float] = defaultdict(float)
    tot: dict[int, float] = defaultdict(float)
    for i, nbrs in enumerate(adj):
        ci = comm[i]
        tot[ci] += k[i]
        internal[ci] += loops[i]
        for j, w in nbrs.items():
            if j > i and comm[j] == ci:
                internal[ci] += w
    return math.fsum(internal[c] / m - (tot[c] / (2.0 * m)) ** 2 for c in sorted(tot))


def _one_level(adj, loops, m, rng, tol):
    """Local moving phase. Returns the community of each (super)node."""
    n = len(adj)
    k = [2 * loops[i] + sum(adj[i].values()) for i in range(n)]
    comm = list(range(n))
    tot = list(k)
    order = list(range(n))
    rng.shuffle(order)
    q = _level_modularity(comm, adj, loops, k, m)
    while True:
        moved = False
        for i in order:
            ci = comm[i]
            links: dict[int, float] = defaultdict(float)
            for j, w in adj[i].items():
                links[comm[j]] += w
            tot[ci] -= k[i]
            scale = k[i] / (2.0 * m)
            best_c = ci
            best_gain = links.get(ci, 0.0) - tot[ci] * scale
            for c in sorted(links):
                gain = links[c] - tot[c] * scale
                if gain > best_gain + _GAIN_EPS or (abs(gain - best_gain) <= _GAIN_EPS and c < best_c):
                    best_c, best_gain = c, gain
            tot[best_c] += k[i]
            if best_c != ci:
                comm[i] = best_c
                moved = True
        new_q = _level_modularity(comm, adj, loops, k, m)
        if not moved or new_q - q < tol:
            return comm
        q = new_q


def _renumber(labels: Sequence[int]) -> list[int]:
    ids: dict[int, int] = {}
    return [ids.setdefault(c, len(ids)) for c in labels]


def _aggregate(adj, loops, comm):
    size = max(comm) + 1
    new_adj: list[dict[int, float]] = [defaultdict(float) for _ in range(size)]
    new_loops = [0.0] * size
    for i, nbrs in enumerate(adj):
        ci = comm[i]
        new_loops[ci] += loops[i]
        for j, w in nbrs.items():
            if j < i:
                continue
            cj = comm[j]
            if ci == cj:
                new_loops[ci] += w
            else:
                new_adj[ci][cj] += w
                new_adj[cj][ci] += w
    return [dict(sorted(d.items())) for d in new_adj], new_loops


def _final_ids(nodes: Sequence[str], labels: Sequence[int]) -> dict[str, int]:
    groups: dict[int, list[str]] = defaultdict(list)
    for v, c in zip(nodes, labels):
        groups[c].append(v)
    ranked = sorted(groups.values(), key=lambda members: (-len(members), min(members)))
    return {v: new for new, members in enumerate(ranked) for v in sorted(members)}


def louvain(g: CoocGraph, seed: int = 0, tol: float = TOLERANCE) -> Partition:
    """Two-phase Louvain: local moves, then aggregation, until the gain drops below ``tol``.

    Node visiting order is shuffled with ``random.Random(seed)``; equal gains go
    to the smallest community id.
    """
    if g.is_empty():
        raise UndefinedModularityError("louvain needs a graph with at least one edge")
    nodes = list(g.nodes)
    pos = {v: i for i, v in enumerate(nodes)}
    adj = [{pos[w]: float(x) for w, x in g.neighbors(v).items()} for v in nodes]
    loops = [0.0] * len(nodes)
    m = float(g.total_weight)
    rng = random.Random(seed)

    labels = list(range(len(nodes)))
    q = modularity(g, dict(zip(nodes, labels)))
    history = [q]
    while True:
        comm = _renumber(_one_level(adj, loops, m, rng, tol))
        candidate = [comm[c] for c in labels]
        new_q = modularity(g, dict(zip(nodes, candidate)))
        if new_q - q < tol:
            break
        labels, q = candidate, new_q
        history.append(q)
        if max(comm) + 1 == len(adj):
            break
        adj, loops = _aggregate(adj, loops, comm)

    assignment = _final_ids(nodes, labels)
    assignment = dict(sorted(assignment.items()))
    q = modularity(g, assignment)
    return Partition(assignment, q, len(set(assignment.values())), seed, tuple(history))


def best_of_seeds(g: CoocGraph, seeds: Iterable[int], tol: float = TOLERANCE) -> tuple[Partition, list[Partition]]:
    """Run one Louvain per seed; the best is the highest modularity, earliest seed on ties."""
    runs = [louvain(g, s, tol) for s in seeds]
    if not runs:
        raise ValueError("at least one seed is required")
    best = runs[0]
    for p in runs[1:]:
        if p.modularity > best.modularity:
            best = p
    return best, runs


def cluster_weight(p: Partition, name: str) -> float:
    """Share of all nodes in ``name``'s community; 0 when ``name`` is not a node."""
    if name not in p.assignment:
        return 0.0
    c = p.assignment[name]
    return sum(1 for x in p.assignment.values() if x == c) / len(p.assignment)


@dataclass(frozen=True)
class CommunityReport:
    rows: list[dict]
    highlighted: frozenset[int]
    node_attributes: dict[str, dict]


def community_report(g: CoocGraph, p: Partition, focus_names: Iterable[str] = ()) -> CommunityReport:
    """Membership rows plus per-node attributes for annotated exports.

    Every community holding a focus name is highlighted; unknown focus names
    only raise a warning.
    """
    highlighted = set()
    for name in focus_names:
        if name in p.assignment:
            highlighted.add(p.assignment[name])
        else:
            warnings.warn(f"focus name {name!r} is not a node of the graph", UserWarning, stacklevel=2)
    sizes = p.sizes()
    n = len(p.assignment)
    rows = []
    attrs: dict[str, dict] = {}
    for v in g.nodes:
        c = p.assignment[v]
        rows.append({"name": v, "community": c, "community_size": sizes[c], "weight": sizes[c] / n})
        attrs[v] = {"community": c}
        if highlighted:
            attrs[v]["highlight"] = c in highlighted
    return CommunityReport(rows, frozenset(highlighted), attrs)


def partition_to_json(p: Partition) -> str:
    return json.dumps({"seed": p.seed, "modularity": p.modularity, "n_clusters": p.n_clusters,
                       "assignment": dict(p.assignment)}, indent=1)
