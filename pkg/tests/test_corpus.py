import io
import subprocess

import pytest
from hypothesis import given, settings, strategies as st

from conftest import fixture_json
from versenet import data_path
from versenet.corpus import (CorpusParseError, DuplicateVerseError, Lexicon, LexiconError,
                             LexiconWarning, Verse, load_lexicon, match_names, match_spans,
                             occurrences, parse_corpus, tokenize)


def lex(*names, excluded=()):
    return Lexicon.from_names(names, excluded)


class TestParseCorpus:
    def test_single_record(self):
        verses = parse_corpus(b"John\t1\t1\tIn the beginning was the Word\n")
        assert verses == [Verse("John", 1, 1, "In the beginning was the Word")]

    def test_three_fields_is_error_with_line(self):
        data = b"# header\nJohn\t1\t1\tok\nJohn\t1\tmissing\n"
        with pytest.raises(CorpusParseError) as exc:
            parse_corpus(data)
        assert exc.value.line == 3
        assert "line 3" in str(exc.value)

    def test_duplicate_key(self):
        data = b"Mark\t1\t1\ta\nMark\t1\t1\tb\n"
        with pytest.raises(DuplicateVerseError) as exc:
            parse_corpus(data, source="x.tsv")
        assert exc.value.line == 2
        assert "x.tsv:2" in str(exc.value)

    @pytest.mark.parametrize("line", [b"Mark\tone\t1\ttext", b"Mark\t0\t1\ttext", b"Mark\t1\t1\t   ",
                                      b"\t1\t1\ttext"])
    def test_bad_records(self, line):
        with pytest.raises(CorpusParseError):
            parse_corpus(line + b"\n")

    def test_invalid_utf8(self):
        with pytest.raises(CorpusParseError) as exc:
            parse_corpus(b"Mark\t1\t1\tok\nMark\t1\t2\t\xff\xfe\n")
        assert exc.value.line == 2

    def test_comments_blank_lines_and_order(self):
        data = io.BytesIO(b"# c\n\nMark\t2\t1\tb\nMark\t1\t1\ta\n")
        verses = parse_corpus(data)
        assert [v.location for v in verses] == [("Mark", 2, 1), ("Mark", 1, 1)]

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            parse_corpus(b"", fmt="sql")

    def test_bundled_counts_match_line_count(self, verses):
        manifest = fixture_json("bundled_manifest.json")["corpus"]
        assert len(verses) == manifest["verses"]
        per_book = {}
        for v in verses:
            per_book[v.book] = per_book.get(v.book, 0) + 1
        assert per_book == manifest["verses_per_book"]

    def test_bundled_counts_match_grep(self, verses):
        path = data_path("web_5books.tsv")
        out = subprocess.run(["grep", "-vc", "^#", str(path)], capture_output=True, text=True)
        assert len(verses) == int(out.stdout)


class TestLoadLexicon:
    def test_exclusion_line(self):
        lx = load_lexicon(b"Jesus\nPaul\n!So\n")
        assert lx.entries == {"Jesus", "Paul"}
        assert lx.excluded == {"So"}

    def test_dedup(self):
        assert load_lexicon(b"Jesus\nJesus\n").entries == {"Jesus"}

    def test_exclusion_wins_with_warning(self):
        with pytest.warns(LexiconWarning):
            lx = load_lexicon(b"So\nPaul\n!So\n")
        assert lx.entries == {"Paul"}
        assert lx.excluded == {"So"}

    def test_comments_and_whitespace(self):
        lx = load_lexicon("# names\n  Jesus   Christ \n\nMary\n".encode())
        assert lx.entries == {"Jesus Christ", "Mary"}

    def test_too_many_words(self):
        with pytest.raises(LexiconError):
            load_lexicon(b"a b c d e\n")

    def test_overlapping_sets_rejected(self):
        with pytest.raises(LexiconError):
            Lexicon(frozenset({"So"}), frozenset({"So"}))

    def test_bundled(self, lexicon):
        manifest = fixture_json("bundled_manifest.json")["lexicon"]
        assert len(lexicon.entries) == manifest["entries"]
        assert sorted(lexicon.excluded) == manifest["excluded"]
        assert "Jesus Christ" in lexicon.entries
        assert not lexicon.entries & lexicon.excluded


class TestTokenize:
    @pytest.mark.parametrize("text,expected", [
        ("Jesus’s feet", ["Jesus", "feet"]),
        ("Moses' law", ["Moses", "law"]),
        ("Simon's house", ["Simon", "house"]),
        ("'Abraham, Isaac!'", ["Abraham", "Isaac"]),
        ("Beth-el", ["Beth", "el"]),
        ("don't", ["don't"]),
        ("a__b", ["a", "b"]),
    ])
    def test_cases(self, text, expected):
        assert tokenize(text) == expected


class TestMatchNames:
    def test_possessive_from_bethany_passage(self):
        text = ("Therefore Mary took a pound of ointment of pure nard, very precious, and anointed "
                "Jesus’s feet and wiped his feet with her hair.")
        assert match_names(text, lex("Jesus", "Mary")) == {"Jesus", "Mary"}

    def test_longest_match_consumes_both_words(self):
        lx = lex("Jesus", "Christ", "Jesus Christ")
        assert match_names("Jesus Christ is Lord", lx) == {"Jesus Christ"}

    def test_stop_name_excluded(self):
        assert match_names("so he went", lex("Paul", excluded=["So"])) == frozenset()
        assert match_names("So he went", lex("Paul", excluded=["So"])) == frozenset()

    def test_case_sensitive(self):
        assert match_names("mark the words", lex("Mark")) == frozenset()

    def test_set_semantics(self):
        assert match_names("Paul and Paul", lex("Paul")) == {"Paul"}

    def test_hyphenated_entry(self):
        assert match_names("came to Beth-el at night", lex("Beth-el")) == {"Beth-el"}

    def test_spans(self):
        lx = lex("Jesus", "Christ", "Jesus Christ", "Paul")
        assert match_spans("Paul said Jesus Christ and Christ", lx) == [
            (0, 1, "Paul"), (2, 4, "Jesus Christ"), (5, 6, "Christ")]

    def test_occurrences(self):
        v = Verse("Acts", 9, 1, "Saul went to Damascus")
        occ = list(occurrences([v], lex("Saul", "Damascus")))
        assert [(o.name, o.location) for o in occ] == [("Damascus", ("Acts", 9, 1)), ("Saul", ("Acts", 9, 1))]


NAMES = ["Jesus", "Christ", "Jesus Christ", "Mary", "Mary Magdalene", "Paul", "Simon", "Simon Peter",
         "Peter", "Beth-el", "So"]
WORDS = ["Jesus", "Christ", "Mary", "Magdalene", "Paul", "Simon", "Peter", "Beth", "el", "so", "So",
         "and", "the", "went", "’s", "'s"]


@st.composite
def verse_and_lexicon(draw):
    entries = draw(st.sets(st.sampled_from(NAMES), min_size=1))
    excluded = {"So"} if draw(st.booleans()) else set()
    words = draw(st.lists(st.sampled_from(WORDS), max_size=15))
    seps = draw(st.lists(st.sampled_from([" ", ", ", "-", ". ", "; "]), min_size=len(words), max_size=len(words)))
    text = "".join(w + s for w, s in zip(words, seps)).strip() or "x"
    return text, Lexicon.from_names(entries, excluded)


@settings(max_examples=300, deadline=None)
@given(verse_and_lexicon())
def test_result_within_lexicon(case):
    text, lx = case
    found = match_names(text, lx)
    assert found <= lx.entries
    assert not found & lx.excluded
    assert match_names(text, lx) == found


@settings(max_examples=300, deadline=None)
@given(verse_and_lexicon())
def test_spans_do_not_overlap(case):
    text, lx = case
    used = set()
    for start, end, _ in match_spans(text, lx):
        span = set(range(start, end))
        assert not span & used
        used |= span


@settings(max_examples=300, deadline=None)
@given(verse_and_lexicon())
def test_lowercasing_only_removes(case):
    text, lx = case
    assert match_names(text.lower(), lx) <= match_names(text, lx)
