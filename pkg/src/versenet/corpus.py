"""Verse corpus parsing and lexicon name matching."""

from __future__ import annotations

import io
import re
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import BinaryIO, Iterable, Iterator

__all__ = [
    "Verse",
    "Lexicon",
    "NameOccurrence",
    "CorpusParseError",
    "DuplicateVerseError",
    "LexiconError",
    "LexiconWarning",
    "parse_corpus",
    "load_lexicon",
    "tokenize",
    "match_spans",
    "match_names",
    "occurrences",
]

MAX_ENTRY_WORDS = 4
APOSTROPHES = "'’"

# separators: anything that is not a letter, digit or apostrophe
_SPLIT = re.compile(r"(?:[^\w'’]|_)+")
_TRAILING = re.compile(r"(?:['’]s|['’])+$")


class CorpusParseError(ValueError):
    """A corpus record could not be parsed."""

    def __init__(self, message: str, line: int, source: str | None = None):
        self.line = line
        self.source = source
        where = f"{source}:{line}" if source else f"line {line}"
        super().__init__(f"{where}: {message}")


class DuplicateVerseError(CorpusParseError):
    pass


class LexiconError(ValueError):
    pass


class LexiconWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Verse:
    book: str
    chapter: int
    verse: int
    text: str

    @property
    def location(self) -> tuple[str, int, int]:
        return (self.book, self.chapter, self.verse)


@dataclass(frozen=True)
class NameOccurrence:
    name: str
    location: tuple[str, int, int]


def _as_lines(data) -> Iterator[bytes]:
    if isinstance(data, (bytes, bytearray)):
        data = io.BytesIO(data)
    for raw in data:
        if isinstance(raw, str):
            raw = raw.encode("utf-8")
        yield raw


def parse_corpus(data: BinaryIO | bytes | Iterable[bytes], fmt: str = "tsv",
                 source: str | None = None) -> list[Verse]:
    """Parse a ``book<TAB>chapter<TAB>verse<TAB>text`` corpus.

    ``data`` is a binary stream (or bytes). Lines starting with ``#`` and
    blank lines are skipped. Verses come back in file order.
    """
    if fmt != "tsv":
        raise ValueError(f"unsupported corpus format: {fmt!r}")
    verses = []
    seen: dict[tuple[str, int, int], int] = {}
    for lineno, raw in enumerate(_as_lines(data), start=1):
        try:
            line = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CorpusParseError(f"invalid UTF-8 ({exc.reason})", lineno, source) from None
        line = line.rstrip("\r\n")
        if lineno == 1:
            line = line.lstrip("﻿")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            raise CorpusParseError(f"expected 4 tab-separated fields, got {len(fields)}", lineno, source)
        book, chapter, number, text = fields
        book = book.strip()
        if not book:
            raise CorpusParseError("empty book identifier", lineno, source)
        try:
            chapter_i, number_i = int(chapter), int(number)
        except ValueError:
            raise CorpusParseError(f"chapter and verse must be integers: {chapter!r}, {number!r}",
                                   lineno, source) from None
        if chapter_i < 1 or number_i < 1:
            raise CorpusParseError("chapter and verse must be positive", lineno, source)
        text = text.strip()
        if not text:
            raise CorpusParseError("empty verse text", lineno, source)
        key = (book, chapter_i, number_i)
        if key in seen:
            raise DuplicateVerseError(
                f"duplicate verse {book} {chapter_i}:{number_i} (first seen on line {seen[key]})",
                lineno, source)
        seen[key] = lineno
        verses.append(Verse(book, chapter_i, number_i, text))
    return verses


def tokenize(text: str) -> list[str]:
    """Split on non letter/digit/apostrophe runs and strip possessive endings.

    Leading apostrophes (quotation marks in the WEB text) are dropped too.
    """
    tokens = []
    for tok in _SPLIT.split(text):
        tok = _TRAILING.sub("", tok.lstrip(APOSTROPHES))
        if tok:
            tokens.append(tok)
    return tokens


@dataclass(frozen=True)
class Lexicon:
    entries: frozenset[str]
    excluded: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "entries", frozenset(self.entries))
        object.__setattr__(self, "excluded", frozenset(self.excluded))
        if self.entries & self.excluded:
            raise LexiconError(f"entries and exclusions overlap: {sorted(self.entries & self.excluded)}")
        for name in self.entries:
            words = name.split()
            if not words or len(words) > MAX_ENTRY_WORDS:
                raise LexiconError(f"entry must have 1..{MAX_ENTRY_WORDS} words: {name!r}")

    @classmethod
    def from_names(cls, names: Iterable[str], excluded: Iterable[str] = ()) -> "Lexicon":
        excluded = frozenset(excluded)
        return cls(frozenset(names) - excluded, excluded)

    @cached_property
    def _index(self) -> dict[tuple[str, ...], str]:
        # token sequence -> canonical entry; hyphenated entries match their parts
        index: dict[tuple[str, ...], str] = {}
        for name in sorted(self.entries):
            key = tuple(tokenize(name))
            if not key:
                continue
            if key in index:
                warnings.warn(f"lexicon entries {index[key]!r} and {name!r} tokenize identically; "
                              f"keeping {index[key]!r}", LexiconWarning, stacklevel=3)
                continue
            index[key] = name
        return index

    @cached_property
    def max_tokens(self) -> int:
        return max((len(k) for k in self._index), default=0)

    def __len__(self) -> int:
        return len(self.entries)


def load_lexicon(data: BinaryIO | bytes | Iterable[bytes], source: str | None = None) -> Lexicon:
    """Read a lexicon: one name per line, ``#`` comments, ``!`` marks a stop-name."""
    names: set[str] = set()
    excluded: set[str] = set()
    for lineno, raw in enumerate(_as_lines(data), start=1):
        try:
            line = raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            where = f"{source}:{lineno}" if source else f"line {lineno}"
            raise LexiconError(f"{where}: invalid UTF-8 ({exc.reason})") from None
        line = line.strip().lstrip("﻿")
        if not line or line.startswith("#"):
            continue
        target = names
        if line.startswith("!"):
            target, line = excluded, line[1:].strip()
        name = " ".join(line.split())
        if not name:
            continue
        if len(name.split()) > MAX_ENTRY_WORDS:
            where = f"{source}:{lineno}" if source else f"line {lineno}"
            raise LexiconError(f"{where}: entry has more than {MAX_ENTRY_WORDS} words: {name!r}")
        target.add(name)
    clash = names & excluded
    if clash:
        warnings.warn(f"names listed both as entries and exclusions, excluding: {sorted(clash)}",
                      LexiconWarning, stacklevel=2)
    return Lexicon(frozenset(names - excluded), frozenset(excluded))


def match_spans(text: str | Verse, lexicon: Lexicon) -> list[tuple[int, int, str]]:
    """Greedy longest-match over tokens, left to right, non-overlapping.

    Returns ``(start, end, name)`` token spans, end exclusive.
    """
    if isinstance(text, Verse):
        text = text.text
    tokens = tokenize(text)
    index = lexicon._index
    longest = lexicon.max_tokens
    spans = []
    i = 0
    while i < len(tokens):
        for n in range(min(longest, len(tokens) - i), 0, -1):
            name = index.get(tuple(tokens[i:i + n]))
            if name is not None:
                spans.append((i, i + n, name))
                i += n
                break
        else:
            i += 1
    return spans


def match_names(verse: str | Verse, lexicon: Lexicon) -> frozenset[str]:
    return frozenset(name for _, _, name in match_spans(verse, lexicon))


def occurrences(verses: Iterable[Verse], lexicon: Lexicon) -> Iterator[NameOccurrence]:
    for v in verses:
        for name in sorted(match_names(v, lexicon)):
            yield NameOccurrence(name, v.location)
