import csv
import json

import pytest

from versenet.cli import main


def rows(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


@pytest.fixture(scope="module")
def built(tmp_path_factory):
    out = tmp_path_factory.mktemp("out")
    assert main(["build", "--out", str(out)]) == 0
    return out


def test_build_all(built):
    names = sorted(p.name for p in (built / "graphs").iterdir())
    assert names == ["Acts.json", "John.json", "Luke.json", "Mark.json", "Matthew.json", "all.json"]
    stats = rows(built / "stats.csv")
    assert [r["book"] for r in stats] == ["Matthew", "Mark", "Luke", "John", "Acts", "all"]
    assert all(0 < float(r["density"]) <= 1 for r in stats)


def test_build_one_book_with_format(tmp_path):
    assert main(["build", "--books", "Mark", "--format", "graphml", "--out", str(tmp_path)]) == 0
    assert sorted(p.name for p in (tmp_path / "graphs").iterdir()) == ["Mark.graphml", "Mark.json"]
    assert len(rows(tmp_path / "stats.csv")) == 1


def test_unknown_book(tmp_path, capsys):
    assert main(["build", "--books", "Ruth", "--out", str(tmp_path)]) == 1
    assert "--books" in capsys.readouterr().err


@pytest.mark.parametrize("measures", [[","], ["pagerank"]])
def test_bad_measures(built, measures, capsys):
    assert main(["centrality", "--out", str(built), "--measures", *measures]) == 1
    assert "--measures" in capsys.readouterr().err


def test_bad_top(built, capsys):
    assert main(["centrality", "--out", str(built), "--top", "0"]) == 1
    assert "--top" in capsys.readouterr().err


def test_missing_graph(tmp_path, capsys):
    assert main(["centrality", "--out", str(tmp_path)]) == 2
    err = capsys.readouterr().err
    assert "missing graph file" in err and "Matthew.json" in err


def test_missing_corpus(tmp_path, capsys):
    assert main(["build", "--corpus", str(tmp_path / "nope.tsv"), "--out", str(tmp_path)]) == 2
    assert "nope.tsv" in capsys.readouterr().err


def test_bad_corpus_line(tmp_path, capsys):
    corpus = tmp_path / "c.tsv"
    corpus.write_text("Mark\t1\t1\tJesus and Peter\nMark\t1\n", encoding="utf-8")
    assert main(["build", "--corpus", str(corpus), "--out", str(tmp_path)]) == 2
    assert "c.tsv:2" in capsys.readouterr().err


def test_centrality(built):
    assert main(["centrality", "--out", str(built), "--books", "Mark", "John",
                 "--measures", "degree,betweenness"]) == 0
    deg = rows(built / "centrality" / "Mark_degree.csv")
    assert deg[0]["name"] == "Jesus" and deg[0]["rank"] == "1"
    matrix = rows(built / "centrality" / "rank_matrix.csv")
    assert list(matrix[0]) == ["name", "Mark:degree", "Mark:betweenness", "John:degree", "John:betweenness"]
    jesus = next(r for r in matrix if r["name"] == "Jesus")
    assert jesus["Mark:degree"] == "1"


def test_config_file_and_override(built, tmp_path):
    cfg = tmp_path / "run.ini"
    cfg.write_text(f"[run]\nout = {built}\nbooks = Mark\n\n[centrality]\nmeasures = closeness\ntop = 3\n")
    assert main(["centrality", "--config", str(cfg)]) == 0
    assert list(rows(built / "centrality" / "rank_matrix.csv")[0]) == ["name", "Mark:closeness"]
    assert main(["centrality", "--config", str(cfg), "--measures", "weighted_degree"]) == 0
    matrix = rows(built / "centrality" / "rank_matrix.csv")
    assert list(matrix[0]) == ["name", "Mark:weighted_degree"]


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "run.ini"
    cfg.write_text("[run]\ncolour = red\n")
    assert main(["build", "--config", str(cfg)]) == 1
    assert "colour" in capsys.readouterr().err


def test_vulnerability(built):
    assert main(["vulnerability", "--out", str(built), "--books", "Mark", "--format", "json"]) == 0
    curves = rows(built / "vulnerability" / "Mark_curves.csv")
    strategies = {(r["strategy"], r["seed"]) for r in curves}
    assert len(strategies) == 3 + 20
    assert {s for s, _ in strategies} == {"betweenness_static", "degree_static", "betweenness_cascading", "random"}
    payload = json.loads((built / "vulnerability" / "Mark_curves.json").read_text())
    assert len(payload) == 23
    loss = rows(built / "vulnerability" / "Mark_node_loss.csv")
    assert {r["metric"] for r in loss} == {"connectivity_sum_distances", "closeness_sum_inverse_distances"}
    before = (built / "vulnerability" / "Mark_curves.csv").read_bytes()
    assert main(["vulnerability", "--out", str(built), "--books", "Mark"]) == 0
    assert (built / "vulnerability" / "Mark_curves.csv").read_bytes() == before


def test_vulnerability_bad_strategy(built, capsys):
    assert main(["vulnerability", "--out", str(built), "--strategies", "fire"]) == 1
    assert "--strategies" in capsys.readouterr().err


def test_communities_and_export(built):
    assert main(["communities", "--out", str(built), "--books", "Mark", "John", "--seeds", "3"]) == 0
    summary = rows(built / "communities" / "summary.csv")
    assert [r["book"] for r in summary] == ["Mark", "John"]
    assert len(rows(built / "communities" / "Mark_seeds.csv")) == 3
    assert main(["export", "--out", str(built), "--books", "Mark", "--format", "dot", "--focus", "Jesus"]) == 0
    dot = (built / "exports" / "Mark.dot").read_text()
    assert '"Jesus" [community=' in dot and "highlight=true" in dot


def test_help_exit_code():
    assert main(["--help"]) == 0
    assert main(["frobnicate"]) == 1
