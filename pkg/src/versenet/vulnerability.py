"""Node-deletion losses and sequential node-removal curves.

Per-node losses:

* ``connectivity_sum_distances``: increase of the summed hop distances over
  pairs still connected after the deletion (pairs the deletion disconnects are
  counted separately in ``disconnected``).
* ``closeness_sum_inverse_distances``: drop in the sum of inverse distances,
  ``TIC(g) - TIC(g - v)``; pairs involving ``v`` count as lost.

Removal curves record ``1 - TIC(g_k) / TIC(g_0)`` after each removal, where
removed nodes stay in the pair count with contribution zero.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .centrality import betweenness_scores, ranked_order, rank_scores
from .graph import CoocGraph
from .paths import Adjacency, adjacency_matrix, distance_matrix, hop_distances

__all__ = [
    "NODE_METRICS",
    "STRATEGIES",
    "DegenerateGraphError",
    "NodeLossTable",
    "RemovalCurve",
    "total_inverse_connectivity",
    "node_deletion_loss",
    "node_deletion_losses",
    "removal_order",
    "removal_curve",
    "loss_at",
    "mean_loss_at",
    "curve_report",
    "curves_to_json",
]

NODE_METRICS = ("connectivity_sum_distances", "closeness_sum_inverse_distances")
STRATEGIES = ("betweenness_static", "degree_static", "betweenness_cascading", "random")


class DegenerateGraphError(ValueError):
    pass


@dataclass(frozen=True)
class NodeLossTable:
    metric: str
    loss: Mapping[str, float]
    # change restricted to pairs not involving the deleted node
    loss_other_pairs: Mapping[str, float] = field(default_factory=dict)
    # pairs connected before the deletion and disconnected after it
    disconnected: Mapping[str, int] = field(default_factory=dict)

    def ranks(self) -> dict[str, int]:
        return rank_scores(self.loss)


@dataclass(frozen=True)
class RemovalCurve:
    strategy: str
    points: tuple[tuple[float, float], ...]
    seed: int | None = None
    order: tuple[str, ...] = ()


def _without(adj: Adjacency, removed) -> Adjacency:
    return {v: {w: x for w, x in nb.items() if w not in removed}
            for v, nb in adj.items() if v not in removed}


def _tic_from_matrix(dist: np.ndarray) -> float:
    iu = np.triu_indices(dist.shape[0], k=1)
    return float(np.sum(1.0 / dist[iu]))


def _tic(adj: Adjacency) -> float:
    return _tic_from_matrix(distance_matrix(adj)[1])


def total_inverse_connectivity(g: CoocGraph | Adjacency) -> float:
    """Sum over unordered node pairs of 1/distance (0 when unreachable)."""
    adj = g.adjacency() if isinstance(g, CoocGraph) else g
    return _tic(adj)


def node_deletion_losses(g: CoocGraph) -> dict[str, NodeLossTable]:
    """Both per-node deletion metrics from one pass of all-pairs distances."""
    if g.n < 3:
        raise DegenerateGraphError(f"node deletion loss needs at least 3 nodes, graph has {g.n}")
    adj = g.adjacency()
    names, base = distance_matrix(adj)
    base_tic = _tic_from_matrix(base)
    dist_loss, inv_loss, inv_other, cut = {}, {}, {}, {}
    for idx, v in enumerate(names):
        keep = [i for i in range(len(names)) if i != idx]
        # rows of `after` follow adjacency order, which is `names` without v
        _, after = distance_matrix(_without(adj, {v}))
        iu = np.triu_indices(len(keep), k=1)
        b, a = base[np.ix_(keep, keep)][iu], after[iu]
        connected_before = np.isfinite(b)
        connected_after = np.isfinite(a)
        cut[v] = int(np.sum(connected_before & ~connected_after))
        both = connected_before & connected_after
        dist_loss[v] = float(np.sum(a[both] - b[both]))
        after_tic = float(np.sum(1.0 / a))
        inv_loss[v] = base_tic - after_tic
        inv_other[v] = float(np.sum(1.0 / b)) - after_tic
    return {
        "connectivity_sum_distances": NodeLossTable("connectivity_sum_distances", dist_loss, dist_loss, cut),
        "closeness_sum_inverse_distances": NodeLossTable("closeness_sum_inverse_distances", inv_loss, inv_other, cut),
    }


def node_deletion_loss(g: CoocGraph, metric: str) -> NodeLossTable:
    if metric not in NODE_METRICS:
        raise ValueError(f"unknown metric {metric!r}; choose from {', '.join(NODE_METRICS)}")
    return node_deletion_losses(g)[metric]


def removal_order(g: CoocGraph, strategy: str, seed: int | None = None,
                  use_weights: bool = False) -> list[str]:
    """Full node removal sequence for a strategy."""
    adj = g.adjacency()
    if strategy == "degree_static":
        return ranked_order({v: len(nb) for v, nb in adj.items()})
    if strategy == "betweenness_static":
        return ranked_order(betweenness_scores(adj, use_weights))
    if strategy == "random":
        if seed is None:
            raise ValueError("random strategy needs a seed")
        order = sorted(adj)
        random.Random(seed).shuffle(order)
        return order
    if strategy == "betweenness_cascading":
        order = []
        current = adj
        while current:
            if not any(current.values()):
                # no edges left: every score is zero, fall back to name order
                order.extend(sorted(current))
                break
            scores = betweenness_scores(current, use_weights)
            target = ranked_order(scores)[0]
            order.append(target)
            current = _without(current, {target})
        return order
    raise ValueError(f"unknown strategy {strategy!r}; choose from {', '.join(STRATEGIES)}")


def removal_curve(g: CoocGraph, strategy: str, seed: int | None = None,
                  use_weights: bool = False) -> RemovalCurve:
    if g.n < 3:
        raise DegenerateGraphError(f"removal curve needs at least 3 nodes, graph has {g.n}")
    if (strategy == "random") != (seed is not None):
        raise ValueError("a seed is required for the random strategy and only for it")
    order = removal_order(g, strategy, seed, use_weights)
    names, a = adjacency_matrix(g.adjacency())
    pos = {v: i for i, v in enumerate(names)}
    n = len(order)
    tic0 = _tic_from_matrix(hop_distances(a))
    alive = np.ones(n, dtype=bool)
    points = [(0.0, 0.0)]
    for k, v in enumerate(order, start=1):
        alive[pos[v]] = False
        if k == n:
            loss = 1.0
        else:
            idx = np.flatnonzero(alive)
            loss = 1.0 - _tic_from_matrix(hop_distances(a[np.ix_(idx, idx)])) / tic0
        points.append((k / n, min(1.0, max(0.0, loss))))
    return RemovalCurve(strategy, tuple(points), seed, tuple(order))


def loss_at(curve: RemovalCurve, fraction: float) -> float:
    """Loss at the first recorded point with at least ``fraction`` removed."""
    for x, y in curve.points:
        if x >= fraction - 1e-12:
            return y
    return curve.points[-1][1]


def curve_report(curves: Iterable[RemovalCurve]) -> list[dict]:
    """Long-format rows ``strategy, fraction_removed, loss, seed``."""
    rows = []
    for c in curves:
        for x, y in c.points:
            rows.append({"strategy": c.strategy, "fraction_removed": x, "loss": y,
                         "seed": "" if c.seed is None else c.seed})
    return rows


def curves_to_json(curves: Sequence[RemovalCurve]) -> str:
    payload = [{"strategy": c.strategy, "seed": c.seed, "order": list(c.order),
                "points": [[x, y] for x, y in c.points]} for c in curves]
    return json.dumps(payload, indent=1)


def mean_loss_at(curves: Iterable[RemovalCurve], fraction: float) -> float:
    values = [loss_at(c, fraction) for c in curves]
    return math.fsum(values) / len(values)
