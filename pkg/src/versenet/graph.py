"""Weighted undirected co-occurrence graph."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .corpus import Lexicon, Verse, match_names

__all__ = [
    "CoocGraph",
    "GraphError",
    "UndefinedDensityError",
    "UnknownBookError",
    "build_graph",
    "density",
    "subgraph_by_book",
    "books_in",
    "name_frequencies",
    "pair_key",
]


class GraphError(ValueError):
    pass


class UndefinedDensityError(GraphError):
    pass


class UnknownBookError(LookupError):
    pass


def pair_key(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class CoocGraph:
    """Immutable weighted graph; ``edges`` maps sorted name pairs to verse counts.

    Nodes are exactly the endpoints of the edges, sorted, so isolated names
    never appear.
    """

    edges: Mapping[tuple[str, str], int]
    nodes: tuple[str, ...] = field(init=False)

    def __post_init__(self):
        clean = {}
        for (a, b), w in self.edges.items():
            if a == b:
                raise GraphError(f"self-loop on {a!r}")
            if not isinstance(w, int) or isinstance(w, bool) or w < 1:
                raise GraphError(f"edge {a!r}-{b!r} has invalid weight {w!r}")
            key = pair_key(a, b)
            if key in clean:
                raise GraphError(f"edge {key} given twice")
            clean[key] = w
        ordered = dict(sorted(clean.items()))
        object.__setattr__(self, "edges", MappingProxyType(ordered))
        object.__setattr__(self, "nodes", tuple(sorted({n for e in ordered for n in e})))
        adj: dict[str, dict[str, int]] = {n: {} for n in self.nodes}
        for (a, b), w in ordered.items():
            adj[a][b] = w
            adj[b][a] = w
        object.__setattr__(self, "_adj", {n: dict(sorted(nb.items())) for n, nb in adj.items()})

    @classmethod
    def from_edges(cls, triples: Iterable[tuple[str, str] | tuple[str, str, int]]) -> "CoocGraph":
        """Aggregate ``(a, b[, w])`` tuples; repeated pairs add up."""
        acc: Counter = Counter()
        for t in triples:
            a, b = t[0], t[1]
            w = t[2] if len(t) > 2 else 1
            acc[pair_key(a, b)] += w
        return cls(dict(acc))

    @classmethod
    def empty(cls) -> "CoocGraph":
        return cls({})

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def total_weight(self) -> int:
        return sum(self.edges.values())

    def is_empty(self) -> bool:
        return not self.nodes

    def __contains__(self, name) -> bool:
        return name in self._adj

    def weight(self, a: str, b: str) -> int:
        """Edge weight, 0 when the pair is not linked."""
        return self.edges.get(pair_key(a, b), 0)

    def neighbors(self, v: str) -> Mapping[str, int]:
        return MappingProxyType(self._adj[v])

    def adjacency(self) -> dict[str, dict[str, int]]:
        """A fresh mutable copy of the adjacency map (sorted keys)."""
        return {n: dict(nb) for n, nb in self._adj.items()}


def _cooccurring_pairs(verses: Iterable[Verse], lexicon: Lexicon) -> Counter:
    pairs: Counter = Counter()
    for v in verses:
        names = sorted(match_names(v, lexicon))
        pairs.update(combinations(names, 2))
    return pairs


def build_graph(verses: Iterable[Verse], lexicon: Lexicon) -> CoocGraph:
    """Link every pair of distinct names sharing a verse, weight = number of verses."""
    return CoocGraph(dict(_cooccurring_pairs(verses, lexicon)))


def name_frequencies(verses: Iterable[Verse], lexicon: Lexicon) -> Counter:
    """Number of verses each name occurs in, isolated names included."""
    freq: Counter = Counter()
    for v in verses:
        freq.update(match_names(v, lexicon))
    return freq


def density(g: CoocGraph) -> float:
    if g.n < 2:
        raise UndefinedDensityError(f"density needs at least 2 nodes, graph has {g.n}")
    return g.n_edges / (g.n * (g.n - 1) / 2)


def books_in(verses: Iterable[Verse]) -> list[str]:
    """Book identifiers in order of first appearance."""
    return list(dict.fromkeys(v.book for v in verses))


def subgraph_by_book(verses: Sequence[Verse], lexicon: Lexicon, book: str) -> CoocGraph:
    selected = [v for v in verses if v.book == book]
    if not selected:
        raise UnknownBookError(f"book {book!r} not in corpus (have: {', '.join(books_in(verses))})")
    return build_graph(selected, lexicon)
