"""Run configuration: INI file sections per subcommand, CLI flags on top."""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field, fields
from pathlib import Path

from .centrality import MEASURES as CENTRALITY_MEASURES
from .export import GRAPH_FORMATS
from .vulnerability import STRATEGIES

MEASURES = CENTRALITY_MEASURES + ("loss_connectivity", "loss_closeness")
DEFAULT_RANDOM_SEEDS = 20
DEFAULT_COMMUNITY_SEEDS = 10


class DataError(RuntimeError):
    """Input data missing or unusable; exit code 2."""


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending key or flag."""


@dataclass
class RunConfig:
    corpus: Path | None = None
    lexicon: Path | None = None
    books: list[str] | str = "all"
    measures: list[str] = field(default_factory=lambda: list(MEASURES))
    strategies: list[str] = field(default_factory=lambda: list(STRATEGIES))
    seed: int = 0
    seeds: int | None = None
    out: Path = Path("out")
    format: str | None = None
    weighted: bool = False
    closeness_variant: str = "harmonic"
    focus: list[str] = field(default_factory=lambda: ["Jesus"])
    top: int = 10

    def seed_list(self, default_count: int) -> list[int]:
        count = self.seeds if self.seeds is not None else default_count
        return [self.seed + i for i in range(count)]

    def validate(self, command: str) -> "RunConfig":
        for key in ("corpus", "lexicon"):
            path = getattr(self, key)
            if path is None:
                raise ConfigError(f"--{key}: no path given")
            # a missing or unreadable input is a data problem, not a bad option
            if not Path(path).is_file():
                raise DataError(f"--{key}: file not found: {path}")
            try:
                with open(path, "rb"):
                    pass
            except OSError as exc:
                raise DataError(f"--{key}: cannot read {path}: {exc.strerror}") from None
        if command in ("centrality", "report"):
            if not self.measures:
                raise ConfigError("--measures: at least one measure must be selected")
            bad = [m for m in self.measures if m not in MEASURES]
            if bad:
                raise ConfigError(f"--measures: unknown measure(s) {', '.join(bad)}; "
                                  f"choose from {', '.join(MEASURES)}")
        if command in ("vulnerability", "report"):
            if not self.strategies:
                raise ConfigError("--strategies: at least one strategy must be selected")
            bad = [s for s in self.strategies if s not in STRATEGIES]
            if bad:
                raise ConfigError(f"--strategies: unknown strategy(ies) {', '.join(bad)}; "
                                  f"choose from {', '.join(STRATEGIES)}")
        if self.seeds is not None and self.seeds < 1:
            raise ConfigError("--seeds: must be at least 1")
        if self.format is not None and self.format not in GRAPH_FORMATS:
            raise ConfigError(f"--format: unknown format {self.format!r}")
        if self.closeness_variant not in ("harmonic", "classic"):
            raise ConfigError(f"--closeness-variant: unknown variant {self.closeness_variant!r}")
        if self.top < 1:
            raise ConfigError("--top: must be at least 1")
        if self.books != "all" and not self.books:
            raise ConfigError("--books: empty book selection")
        return self


def _split(value: str) -> list[str]:
    return [x for chunk in value.replace(",", " ").split() for x in [chunk.strip()] if x]


_CONVERT = {
    "corpus": Path,
    "lexicon": Path,
    "out": Path,
    "books": lambda v: "all" if v.strip() == "all" else _split(v),
    "measures": _split,
    "strategies": _split,
    "focus": lambda v: [x.strip() for x in v.split(",") if x.strip()],
    "seed": int,
    "seeds": int,
    "top": int,
    "format": str.strip,
    "closeness_variant": str.strip,
}


def load_config(path: str | Path, command: str) -> dict:
    """Read ``[run]`` then ``[<command>]`` from an INI file into RunConfig field values."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"--config: file not found: {path}")
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read(path, encoding="utf-8")
    except configparser.Error as exc:
        raise ConfigError(f"--config: {path}: {exc}") from None
    known = {f.name for f in fields(RunConfig)}
    values: dict = {}
    for section in ("run", command):
        if not parser.has_section(section):
            continue
        for key, raw in parser.items(section):
            name = key.replace("-", "_")
            if name not in known:
                raise ConfigError(f"{path}: [{section}] unknown key {key!r}")
            try:
                if name == "weighted":
                    value = parser.getboolean(section, key)
                else:
                    value = _CONVERT[name](raw)
            except ValueError:
                raise ConfigError(f"{path}: [{section}] bad value for {key!r}: {raw!r}") from None
            if name in ("corpus", "lexicon", "out") and not value.is_absolute():
                value = path.parent / value
            values[name] = value
    return values
