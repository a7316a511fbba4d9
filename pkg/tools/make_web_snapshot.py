"""Convert the Kaggle-layout WEB table (t_web.csv) into the bundled TSV snapshot.

Usage: python tools/make_web_snapshot.py path/to/t_web.csv.gz > src/versenet/data/web_5books.tsv

The t_web.csv.gz used for the bundled file ships inside the freebible 0.1a8
sdist (freebible/data/web/). Translator footnotes in braces are dropped.
"""
import csv
import gzip
import re
import sys

BOOKS = {40: "Matthew", 41: "Mark", 42: "Luke", 43: "John", 44: "Acts"}
FOOTNOTE = re.compile(r"\{[^}]*\}")


def main(path):
    out = sys.stdout
    out.write("# World English Bible (public domain): Matthew, Mark, Luke, John, Acts\n")
    out.write("# book\tchapter\tverse\ttext\n")
    with gzip.open(path, "rt", encoding="utf-8") as fh:
        rows = csv.reader(fh)
        next(rows)
        for _id, b, c, v, text in rows:
            book = BOOKS.get(int(b))
            if book is None:
                continue
            text = " ".join(FOOTNOTE.sub("", text).split())
            if text:
                out.write(f"{book}\t{int(c)}\t{int(v)}\t{text}\n")


if __name__ == "__main__":
    main(sys.argv[1])
