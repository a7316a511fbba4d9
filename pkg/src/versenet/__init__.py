"""Name co-occurrence networks from verse-structured texts."""

from importlib import resources
from pathlib import Path

from .corpus import Lexicon, Verse, load_lexicon, match_names, parse_corpus
from .graph import CoocGraph, build_graph, density, subgraph_by_book

__version__ = "0.1.0"

BUNDLED_CORPUS = "web_5books.tsv"
BUNDLED_LEXICON = "biblical_names.txt"
UNION = "all"


def data_path(name: str) -> Path:
    return Path(str(resources.files(__package__) / "data" / name))


def bundled_corpus() -> list[Verse]:
    path = data_path(BUNDLED_CORPUS)
    with open(path, "rb") as fh:
        return parse_corpus(fh, source=str(path))


def bundled_lexicon() -> Lexicon:
    path = data_path(BUNDLED_LEXICON)
    with open(path, "rb") as fh:
        return load_lexicon(fh, source=str(path))


__all__ = [
    "CoocGraph",
    "Lexicon",
    "Verse",
    "build_graph",
    "bundled_corpus",
    "bundled_lexicon",
    "data_path",
    "density",
    "load_lexicon",
    "match_names",
    "parse_corpus",
    "subgraph_by_book",
]
