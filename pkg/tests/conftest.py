import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from versenet import bundled_corpus, bundled_lexicon, build_graph, subgraph_by_book  # noqa: E402
from versenet.graph import books_in  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"

# John 12:1-3 as worded in a newer WEB revision ("Jesus’s feet"); the micro example graph
BETHANY_PASSAGE = [
    ("John", 12, 1, "Then six days before the Passover, Jesus came to Bethany, where Lazarus was, "
                    "who had been dead, whom he raised from the dead."),
    ("John", 12, 2, "So they made him a supper there. Martha served, but Lazarus was one of those "
                    "who sat at the table with him."),
    ("John", 12, 3, "Therefore Mary took a pound of ointment of pure nard, very precious, and anointed "
                    "Jesus’s feet and wiped his feet with her hair. The house was filled with the "
                    "fragrance of the ointment."),
]


def fixture_json(name):
    return json.loads((FIXTURES / name).read_text())


@pytest.fixture(scope="session")
def verses():
    return bundled_corpus()


@pytest.fixture(scope="session")
def lexicon():
    return bundled_lexicon()


@pytest.fixture(scope="session")
def book_graphs(verses, lexicon):
    graphs = {b: subgraph_by_book(verses, lexicon, b) for b in books_in(verses)}
    graphs["all"] = build_graph(verses, lexicon)
    return graphs


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, str] = {}


def record(criterion, ok, detail):
    ACCEPTANCE[criterion] = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(ACCEPTANCE[criterion])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
