"""Command-line front end.

Exit codes: 0 success, 1 validation error, 2 runtime or data error.
"""

from __future__ import annotations

import argparse
import logging
import sys
import warnings
from pathlib import Path

from . import BUNDLED_CORPUS, BUNDLED_LEXICON, UNION, data_path
from .centrality import betweenness, closeness, degree, top_k, weighted_degree, CentralityTable
from .community import best_of_seeds, community_report, partition_to_json
from .config import (DEFAULT_COMMUNITY_SEEDS, DEFAULT_RANDOM_SEEDS, MEASURES, ConfigError,
                     DataError, RunConfig, load_config)
from .corpus import CorpusParseError, LexiconError, load_lexicon, parse_corpus
from .export import (GRAPH_FORMATS, GRAPH_SUFFIX, csv_text, graph_from_json, render_graph,
                     write_atomic)
from .graph import CoocGraph, UndefinedDensityError, books_in, build_graph, density
from .vulnerability import curve_report, curves_to_json, node_deletion_losses, removal_curve

log = logging.getLogger("versenet")

COMMANDS = ("build", "centrality", "vulnerability", "communities", "export", "report")


# ---------------------------------------------------------------- inputs

def _load_inputs(cfg: RunConfig):
    with open(cfg.corpus, "rb") as fh:
        verses = parse_corpus(fh, source=str(cfg.corpus))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        with open(cfg.lexicon, "rb") as fh:
            lexicon = load_lexicon(fh, source=str(cfg.lexicon))
    for w in caught:
        log.warning("%s: %s", cfg.lexicon, w.message)
    return verses, lexicon


def _corpus_books(cfg: RunConfig) -> list[str]:
    with open(cfg.corpus, "rb") as fh:
        return books_in(parse_corpus(fh, source=str(cfg.corpus)))


def _selected(cfg: RunConfig, available: list[str]) -> list[str]:
    """Graph names to process: each selected book, plus the union when all books are selected."""
    if cfg.books == "all":
        return available + [UNION]
    unknown = [b for b in cfg.books if b not in available and b != UNION]
    if unknown:
        raise ConfigError(f"--books: unknown book(s) {', '.join(unknown)}; corpus has {', '.join(available)}")
    return list(cfg.books)


def _graph_path(cfg: RunConfig, name: str) -> Path:
    return cfg.out / "graphs" / f"{name}.json"


def _load_graphs(cfg: RunConfig) -> dict[str, CoocGraph]:
    graphs = {}
    for name in _selected(cfg, _corpus_books(cfg)):
        path = _graph_path(cfg, name)
        if not path.is_file():
            raise DataError(f"missing graph file {path}; run `versenet build` with the same --out and --books first")
        graphs[name] = graph_from_json(path.read_text(encoding="utf-8"))
    return graphs


# ---------------------------------------------------------------- commands

def cmd_build(cfg: RunConfig) -> dict[str, CoocGraph]:
    verses, lexicon = _load_inputs(cfg)
    graphs = {}
    for name in _selected(cfg, books_in(verses)):
        subset = verses if name == UNION else [v for v in verses if v.book == name]
        graphs[name] = build_graph(subset, lexicon)
    rows = []
    for name, g in graphs.items():
        write_atomic(_graph_path(cfg, name), render_graph(g, "json", name=name))
        if cfg.format and cfg.format != "json":
            write_atomic(cfg.out / "graphs" / f"{name}{GRAPH_SUFFIX[cfg.format]}",
                         render_graph(g, cfg.format, name=name))
        try:
            dens = density(g)
        except UndefinedDensityError:
            dens = ""
        rows.append((name, g.n, g.n_edges, dens))
        log.info("%s: %d nodes, %d edges", name, g.n, g.n_edges)
    write_atomic(cfg.out / "stats.csv", csv_text(["book", "nodes", "edges", "density"], rows))
    return graphs


def _tables(g: CoocGraph, cfg: RunConfig) -> dict[str, CentralityTable]:
    tables = {}
    losses = None
    for m in cfg.measures:
        if m == "degree":
            tables[m] = degree(g)
        elif m == "weighted_degree":
            tables[m] = weighted_degree(g)
        elif m == "betweenness":
            tables[m] = betweenness(g, cfg.weighted)
        elif m == "closeness":
            tables[m] = closeness(g, cfg.closeness_variant, cfg.weighted)
        else:
            metric = "connectivity_sum_distances" if m == "loss_connectivity" else "closeness_sum_inverse_distances"
            if g.n < 3:
                log.warning("graph too small for %s, skipped", m)
                continue
            if losses is None:
                losses = node_deletion_losses(g)
            tables[m] = CentralityTable.from_scores(m, losses[metric].loss)
    return tables


def cmd_centrality(cfg: RunConfig) -> None:
    graphs = _load_graphs(cfg)
    columns = []
    cells: dict[str, dict[str, int]] = {}
    for name, g in graphs.items():
        if g.is_empty():
            log.warning("%s: empty graph, no centrality written", name)
            continue
        tables = _tables(g, cfg)
        for m, table in tables.items():
            rows = [(m, v, table.scores[v], table.ranks[v]) for v in table.order()]
            write_atomic(cfg.out / "centrality" / f"{name}_{m}.csv",
                         csv_text(["measure", "name", "score", "rank"], rows))
        for m in cfg.measures:
            col = f"{name}:{m}"
            columns.append(col)
            if m in tables:
                for v, _, rank in top_k(tables[m], cfg.top):
                    cells.setdefault(v, {})[col] = rank
    rows = [[v] + [cells[v].get(c, "") for c in columns] for v in sorted(cells)]
    write_atomic(cfg.out / "centrality" / "rank_matrix.csv", csv_text(["name"] + columns, rows))


def cmd_vulnerability(cfg: RunConfig) -> None:
    graphs = _load_graphs(cfg)
    seeds = cfg.seed_list(DEFAULT_RANDOM_SEEDS)
    for name, g in graphs.items():
        if g.n < 3:
            log.warning("%s: fewer than 3 nodes, skipped", name)
            continue
        curves = []
        for strategy in cfg.strategies:
            if strategy == "random":
                curves.extend(removal_curve(g, "random", s, cfg.weighted) for s in seeds)
            else:
                curves.append(removal_curve(g, strategy, None, cfg.weighted))
        write_atomic(cfg.out / "vulnerability" / f"{name}_curves.csv",
                     csv_text(["strategy", "fraction_removed", "loss", "seed"], curve_report(curves)))
        if cfg.format == "json":
            write_atomic(cfg.out / "vulnerability" / f"{name}_curves.json", curves_to_json(curves) + "\n")
        rows = []
        for metric, table in node_deletion_losses(g).items():
            ranks = table.ranks()
            for v in sorted(table.loss, key=lambda x: (ranks[x], x)):
                rows.append((metric, v, table.loss[v], table.loss_other_pairs[v], table.disconnected[v], ranks[v]))
        write_atomic(cfg.out / "vulnerability" / f"{name}_node_loss.csv",
                     csv_text(["metric", "name", "loss", "loss_other_pairs", "disconnected_pairs", "rank"], rows))


def _partitions(cfg: RunConfig, graphs):
    seeds = cfg.seed_list(DEFAULT_COMMUNITY_SEEDS)
    return {name: best_of_seeds(g, seeds) for name, g in graphs.items() if not g.is_empty()}


def cmd_communities(cfg: RunConfig) -> None:
    graphs = _load_graphs(cfg)
    summary = []
    for name, (best, runs) in _partitions(cfg, graphs).items():
        g = graphs[name]
        summary.append((name, best.modularity, g.n, best.n_clusters))
        write_atomic(cfg.out / "communities" / f"{name}_seeds.csv",
                     csv_text(["seed", "modularity", "n_clusters"],
                              ((p.seed, p.modularity, p.n_clusters) for p in runs)))
        write_atomic(cfg.out / "communities" / f"{name}_partition.json", partition_to_json(best) + "\n")
        report = community_report(g, best, ())
        write_atomic(cfg.out / "communities" / f"{name}_members.csv",
                     csv_text(["name", "community", "community_size", "weight"], report.rows))
    write_atomic(cfg.out / "communities" / "summary.csv",
                 csv_text(["book", "modularity", "n_nodes", "n_clusters"], summary))


def cmd_export(cfg: RunConfig) -> None:
    graphs = _load_graphs(cfg)
    fmt = cfg.format or "graphml"
    partitions = _partitions(cfg, graphs)
    for name, g in graphs.items():
        attrs = None
        if name in partitions:
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always")
                attrs = community_report(g, partitions[name][0], cfg.focus).node_attributes
            for w in caught:
                log.warning("%s: %s", name, w.message)
        write_atomic(cfg.out / "exports" / f"{name}{GRAPH_SUFFIX[fmt]}", render_graph(g, fmt, attrs, name=name))


def cmd_report(cfg: RunConfig) -> None:
    cmd_build(cfg)
    cmd_centrality(cfg)
    cmd_vulnerability(cfg)
    cmd_communities(cfg)
    cmd_export(cfg)


HANDLERS = {
    "build": cmd_build,
    "centrality": cmd_centrality,
    "vulnerability": cmd_vulnerability,
    "communities": cmd_communities,
    "export": cmd_export,
    "report": cmd_report,
}


# ---------------------------------------------------------------- argument parsing

def _list_arg(values):
    if values is None:
        return None
    return [x for v in values for x in v.replace(",", " ").split()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="INI file; [run] and [<command>] sections")
    common.add_argument("--corpus", type=Path, help="TSV corpus (default: bundled WEB snapshot)")
    common.add_argument("--lexicon", type=Path, help="name lexicon (default: bundled list)")
    common.add_argument("--books", nargs="+", help="book ids, or 'all' for every book plus the union")
    common.add_argument("--out", type=Path, help="output directory (default: out)")
    common.add_argument("--format", choices=GRAPH_FORMATS)
    common.add_argument("--seed", type=int, help="first seed (default 0)")
    common.add_argument("--seeds", type=int, metavar="N",
                        help=f"number of seeds (default {DEFAULT_RANDOM_SEEDS} random curves, "
                             f"{DEFAULT_COMMUNITY_SEEDS} Louvain runs)")
    common.add_argument("--weighted", action="store_true", default=None,
                        help="paths use distance 1/weight")
    common.add_argument("--closeness-variant", choices=("harmonic", "classic"))
    common.add_argument("--focus", nargs="+", metavar="NAME", help="names whose communities get highlighted")
    common.add_argument("--measures", nargs="+", help=f"subset of {', '.join(MEASURES)}")
    common.add_argument("--strategies", nargs="+")
    common.add_argument("--top", type=int, help="rank-matrix cutoff (default 10)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="versenet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "build": "build per-book and union graphs plus stats.csv",
        "centrality": "centrality CSVs and the cross-book rank matrix",
        "vulnerability": "node-removal curves and per-node deletion losses",
        "communities": "Louvain partitions and modularity summary",
        "export": "graph exports annotated with communities",
        "report": "run every step above",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    values = load_config(args.config, args.command) if args.config else {}
    flags = {
        "corpus": args.corpus,
        "lexicon": args.lexicon,
        "out": args.out,
        "format": args.format,
        "seed": args.seed,
        "seeds": args.seeds,
        "weighted": args.weighted,
        "closeness_variant": args.closeness_variant,
        "top": args.top,
        "measures": _list_arg(args.measures),
        "strategies": _list_arg(args.strategies),
        "focus": args.focus,
    }
    if args.books is not None:
        books = _list_arg(args.books)
        flags["books"] = "all" if books == ["all"] else books
    values.update({k: v for k, v in flags.items() if v is not None})
    values.setdefault("corpus", data_path(BUNDLED_CORPUS))
    values.setdefault("lexicon", data_path(BUNDLED_LEXICON))
    return RunConfig(**values).validate(args.command)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = resolve_config(args)
        HANDLERS[args.command](cfg)
    except ConfigError as exc:
        print(f"versenet {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except (DataError, CorpusParseError, LexiconError, OSError, ValueError) as exc:
        print(f"versenet {args.command}: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
