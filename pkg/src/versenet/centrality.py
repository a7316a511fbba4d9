"""Degree, weighted degree, betweenness and closeness, with rank tables."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .graph import CoocGraph
from .paths import Adjacency, distances_from, shortest_path_dag

__all__ = [
    "MEASURES",
    "CentralityTable",
    "rank_scores",
    "ranked_order",
    "degree",
    "weighted_degree",
    "betweenness",
    "closeness",
    "top_k",
    "betweenness_scores",
]

MEASURES = ("degree", "weighted_degree", "betweenness", "closeness")

# scores closer than this (relative) are treated as ties when ranking
TIE_TOL = 1e-9


def _same(a: float, b: float) -> bool:
    return abs(a - b) <= TIE_TOL * max(1.0, abs(a), abs(b))


def ranked_order(scores: Mapping[str, float]) -> list[str]:
    """Names by decreasing score, ties broken lexicographically."""
    by_name = sorted(scores)
    order = sorted(by_name, key=lambda v: -scores[v])
    # float noise can split a tie group out of name order; regroup
    out: list[str] = []
    group: list[str] = []
    for v in order:
        if group and not _same(scores[group[0]], scores[v]):
            out.extend(sorted(group))
            group = []
        group.append(v)
    out.extend(sorted(group))
    return out


def rank_scores(scores: Mapping[str, float]) -> dict[str, int]:
    """Competition ranks: 1 is the highest score, ties share the smaller rank."""
    ranks: dict[str, int] = {}
    prev = None
    for i, v in enumerate(ranked_order(scores), start=1):
        if prev is not None and _same(scores[prev], scores[v]):
            ranks[v] = ranks[prev]
        else:
            ranks[v] = i
        prev = v
    return ranks


@dataclass(frozen=True)
class CentralityTable:
    measure: str
    scores: Mapping[str, float]
    ranks: Mapping[str, int]

    @classmethod
    def from_scores(cls, measure: str, scores: Mapping[str, float]) -> "CentralityTable":
        scores = dict(sorted(scores.items()))
        return cls(measure, scores, rank_scores(scores))

    def order(self) -> list[str]:
        return ranked_order(self.scores)


def degree(g: CoocGraph) -> CentralityTable:
    return CentralityTable.from_scores("degree", {v: len(g.neighbors(v)) for v in g.nodes})


def weighted_degree(g: CoocGraph) -> CentralityTable:
    return CentralityTable.from_scores(
        "weighted_degree", {v: sum(g.neighbors(v).values()) for v in g.nodes})


def betweenness_scores(adj: Adjacency, weighted: bool = False) -> dict[str, float]:
    """Unnormalized betweenness by per-source dependency accumulation.

    Each unordered pair is counted once. Sources are processed in sorted order
    so the float sums are reproducible.
    """
    total = {v: 0.0 for v in adj}
    for s in sorted(adj):
        order, _, sigma, preds = shortest_path_dag(adj, s, weighted)
        delta = dict.fromkeys(order, 0.0)
        for w in reversed(order):
            coeff = (1.0 + delta[w]) / sigma[w]
            for v in preds[w]:
                delta[v] += sigma[v] * coeff
            if w != s:
                total[w] += delta[w]
    return {v: x / 2.0 for v, x in total.items()}


def betweenness(g: CoocGraph, use_weights: bool = False) -> CentralityTable:
    return CentralityTable.from_scores("betweenness", betweenness_scores(g.adjacency(), use_weights))


def closeness_scores(adj: Adjacency, variant: str = "harmonic", weighted: bool = False) -> dict[str, float]:
    if variant not in ("harmonic", "classic"):
        raise ValueError(f"unknown closeness variant {variant!r}")
    scores = {}
    for v in adj:
        dist = distances_from(adj, v, weighted)
        if variant == "harmonic":
            # iterate in sorted order for reproducible sums
            scores[v] = math.fsum(1.0 / float(dist[u]) for u in sorted(dist) if u != v)
        else:
            reach = len(dist) - 1
            total = sum(dist.values())
            scores[v] = reach / float(total) if reach else 0.0
    return scores


def closeness(g: CoocGraph, variant: str = "harmonic", use_weights: bool = False) -> CentralityTable:
    """Harmonic closeness (default) or classic closeness within each node's component."""
    return CentralityTable.from_scores("closeness", closeness_scores(g.adjacency(), variant, use_weights))


def top_k(table: CentralityTable, k: int) -> list[tuple[str, float, int]]:
    if k < 1:
        raise ValueError("k must be >= 1")
    return [(v, table.scores[v], table.ranks[v]) for v in table.order()[:k]]
