"""Post corpora: file loading, validation, and date/keyword filtering.

Input formats
-------------
delimited : UTF-8 CSV (RFC 4180 quoting) with header
            ``id,author,followers,retweets,favorites,timestamp,text``
            and RFC 3339 timestamps. An optional ``language_hint`` column
            is accepted.
jsonl     : one JSON object per line with the same field names.

Keyword configuration files group keywords under ``[Theme]`` section
headers, one keyword per line; ``#`` starts a comment. Multi-word
keywords ("digital transformation") are kept verbatim and matched as a
contiguous token sequence.

Corpora are immutable; every filter returns a new Corpus and appends a
lineage entry recording before/after counts.
"""

from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterator, Sequence

from .errors import ParseError, ValidationError
from .nlp import fold_text
from .resources import data_path

CSV_COLUMNS = ("id", "author", "followers", "retweets", "favorites", "timestamp", "text")
INPUT_FORMATS = ("delimited", "jsonl")

# Tokens for keyword matching: maximal runs of word characters minus '_'.
_WORD_RE = re.compile(r"[^\W_]+", re.UNICODE)


@dataclass(frozen=True)
class Post:
    """One social-media message plus its engagement metadata."""

    id: str
    author: str
    followers: int
    retweets: int
    favorites: int
    text: str
    timestamp: datetime  # timezone-aware, UTC
    language_hint: str | None = None


@dataclass(frozen=True)
class FilterStep:
    """One lineage entry: a named filter with before/after post counts."""

    name: str
    detail: str
    before: int
    after: int


@dataclass(frozen=True)
class KeywordSet:
    """A themed group of lowercase keywords (single- or multi-word)."""

    theme: str
    keywords: frozenset[str]

    def __post_init__(self):
        if not self.keywords:
            raise ValidationError(f"keyword set '{self.theme}' is empty")
        for kw in self.keywords:
            if not kw or kw != kw.strip() or kw != kw.lower():
                raise ValidationError(
                    f"keyword set '{self.theme}': entry {kw!r} must be lowercase "
                    "with no surrounding whitespace"
                )


@dataclass(frozen=True)
class Corpus:
    """An ordered, immutable collection of posts with filter lineage."""

    posts: tuple[Post, ...]
    source_label: str = ""
    lineage: tuple[FilterStep, ...] = ()

    def __post_init__(self):
        seen: set[str] = set()
        for p in self.posts:
            if p.id in seen:
                raise ValidationError(f"duplicate post id {p.id!r}")
            seen.add(p.id)
        prev_after: int | None = None
        for step in self.lineage:
            if step.after > step.before:
                raise ValidationError(
                    f"lineage step '{step.name}' grows the corpus ({step.before} -> {step.after})"
                )
            if prev_after is not None and step.before != prev_after:
                raise ValidationError(
                    f"lineage step '{step.name}' does not chain (expected before={prev_after})"
                )
            prev_after = step.after

    def __len__(self) -> int:
        return len(self.posts)

    def __iter__(self) -> Iterator[Post]:
        return iter(self.posts)

    def ids(self) -> list[str]:
        return [p.id for p in self.posts]

    def _filtered(self, name: str, detail: str, keep: Sequence[Post]) -> "Corpus":
        step = FilterStep(name, detail, before=len(self.posts), after=len(keep))
        return replace(self, posts=tuple(keep), lineage=self.lineage + (step,))


def _validate_counts(line: int | None, **counts: int) -> None:
    for fieldname, value in counts.items():
        if value < 0:
            raise ValidationError(
                f"{'line ' + str(line) + ': ' if line else ''}negative {fieldname} ({value})"
            )


def parse_rfc3339(value: str, line: int | None = None) -> datetime:
    """Parse an RFC 3339 timestamp into an aware UTC datetime."""
    s = value.strip()
    if s.endswith(("Z", "z")):
        s = s[:-1] + "+00:00"
    try:
        dt = datetime.fromisoformat(s)
    except ValueError:
        raise ParseError(f"bad timestamp {value!r}", line) from None
    if dt.tzinfo is None:
        raise ParseError(f"timestamp {value!r} has no UTC offset", line)
    return dt.astimezone(timezone.utc)


def _build_post(rec: dict, line: int | None) -> Post:
    # absent fields are a parse problem; empty id/text a validation problem
    absent = [c for c in CSV_COLUMNS if c not in rec or rec[c] is None]
    if absent:
        raise ParseError(f"missing field(s): {', '.join(absent)}", line)
    try:
        followers = int(rec["followers"])
        retweets = int(rec["retweets"])
        favorites = int(rec["favorites"])
    except (TypeError, ValueError):
        raise ParseError("engagement counts must be integers", line) from None
    _validate_counts(line, followers=followers, retweets=retweets, favorites=favorites)
    post_id = str(rec["id"]).strip()
    if not post_id:
        raise ValidationError(f"{'line ' + str(line) + ': ' if line else ''}empty post id")
    text = str(rec["text"])
    if not text.strip():
        raise ValidationError(f"{'line ' + str(line) + ': ' if line else ''}empty text for post {post_id!r}")
    hint = rec.get("language_hint") or None
    return Post(
        id=post_id,
        author=str(rec["author"]).strip(),
        followers=followers,
        retweets=retweets,
        favorites=favorites,
        text=text,
        timestamp=parse_rfc3339(str(rec["timestamp"]), line),
        language_hint=hint,
    )


def _iter_delimited(path: Path) -> Iterator[tuple[dict, int]]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            return
        header = [h.strip() for h in reader.fieldnames]
        missing = [c for c in CSV_COLUMNS if c not in header]
        if missing:
            raise ParseError(f"header is missing column(s): {', '.join(missing)}", 1)
        extra = [c for c in header if c not in CSV_COLUMNS + ("language_hint",)]
        if extra:
            raise ParseError(f"unexpected column(s): {', '.join(extra)}", 1)
        for row in reader:
            if row.get(None):
                raise ParseError("row has more fields than the header", reader.line_num)
            yield row, reader.line_num


def _iter_jsonl(path: Path) -> Iterator[tuple[dict, int]]:
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            if not raw.strip():
                continue
            try:
                rec = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad JSON record: {exc.msg}", line_no) from None
            if not isinstance(rec, dict):
                raise ParseError("record is not a JSON object", line_no)
            yield rec, line_no


def load_corpus(path: str | Path, format: str = "delimited", source_label: str = "") -> Corpus:
    """Load a corpus file, validating every record.

    Raises ParseError for malformed records (with line numbers) and
    ValidationError for duplicate ids / negative counts / empty text.
    """
    path = Path(path)
    if format not in INPUT_FORMATS:
        raise ValueError(f"unknown input format {format!r}; expected one of {INPUT_FORMATS}")
    rows = _iter_delimited(path) if format == "delimited" else _iter_jsonl(path)
    posts = [_build_post(rec, line) for rec, line in rows]
    if not posts:
        raise ParseError("no records", None)
    n = len(posts)
    return Corpus(
        posts=tuple(posts),
        source_label=source_label or path.name,
        lineage=(FilterStep("load", path.name, n, n),),
    )


def filter_by_date(c: Corpus, start: datetime | None, end: datetime | None) -> Corpus:
    """Keep posts with start <= timestamp <= end (both ends inclusive).
    A missing bound leaves that side open."""
    for bound in (start, end):
        if bound is not None and bound.tzinfo is None:
            raise ValueError("date range bounds must be timezone-aware")
    if start is not None and end is not None and start > end:
        raise ValueError(f"start {start.isoformat()} is after end {end.isoformat()}")
    keep = [
        p
        for p in c.posts
        if (start is None or start <= p.timestamp) and (end is None or p.timestamp <= end)
    ]
    left = start.isoformat() if start else "*"
    right = end.isoformat() if end else "*"
    return c._filtered("date", f"{left}..{right}", keep)


def _compile_sets(sets: Sequence[KeywordSet]) -> tuple[set[str], list[tuple[str, ...]]]:
    singles: set[str] = set()
    multis: set[tuple[str, ...]] = set()
    for ks in sets:
        for kw in ks.keywords:
            folded = fold_text(kw)
            parts = tuple(_WORD_RE.findall(folded))
            if not parts:
                continue
            if len(parts) == 1:
                singles.add(parts[0])
            else:
                multis.add(parts)
    return singles, sorted(multis)


def text_matches_keywords(text: str, singles: set[str], multis: Sequence[tuple[str, ...]]) -> bool:
    """Token-boundary keyword test on folded (lowercase, accent-stripped) text."""
    tokens = _WORD_RE.findall(fold_text(text))
    if singles and any(t in singles for t in tokens):
        return True
    for parts in multis:
        k = len(parts)
        for i in range(len(tokens) - k + 1):
            if tuple(tokens[i : i + k]) == parts:
                return True
    return False


def filter_by_keywords(c: Corpus, sets: Sequence[KeywordSet]) -> Corpus:
    """Keep posts whose text contains any keyword of any set.

    Matching is case- and diacritic-insensitive. Single-word keywords
    must match a whole token; multi-word keywords must appear as a
    contiguous token sequence.
    """
    sets = list(sets)
    if not sets:
        raise ValueError("at least one keyword set is required")
    singles, multis = _compile_sets(sets)
    if not singles and not multis:
        raise ValueError("keyword sets contain no usable keywords")
    keep = [p for p in c.posts if text_matches_keywords(p.text, singles, multis)]
    detail = "themes=" + "+".join(ks.theme for ks in sets)
    return c._filtered("keywords", detail, keep)


def load_keyword_sets(path: str | Path) -> list[KeywordSet]:
    """Parse a themed keyword configuration file (see module docstring)."""
    sets: list[KeywordSet] = []
    theme: str | None = None
    entries: list[str] = []

    def flush():
        nonlocal entries
        if theme is not None:
            if not entries:
                raise ParseError(f"theme '{theme}' has no keywords")
            sets.append(KeywordSet(theme, frozenset(entries)))
        entries = []

    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("[") and line.endswith("]"):
                flush()
                theme = line[1:-1].strip()
                if not theme:
                    raise ParseError("empty theme name", line_no)
                continue
            if theme is None:
                raise ParseError(f"keyword {line!r} appears before any [theme] header", line_no)
            entries.append(fold_text(line))
    flush()
    if not sets:
        raise ParseError("no keyword sets found")
    return sets


def default_keyword_sets() -> list[KeywordSet]:
    """The bundled default keyword configuration."""
    return load_keyword_sets(data_path("keywords.txt"))


def format_rfc3339(ts: datetime) -> str:
    """UTC instant rendered with a trailing 'Z'."""
    return ts.astimezone(timezone.utc).isoformat().replace("+00:00", "Z")


def write_corpus(path: str | Path, c: Corpus) -> None:
    """Dump posts in the canonical delimited layout; the result is
    loadable by load_corpus. language_hint is not preserved."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for p in c.posts:
            w.writerow(
                [
                    p.id,
                    p.author,
                    p.followers,
                    p.retweets,
                    p.favorites,
                    format_rfc3339(p.timestamp),
                    p.text,
                ]
            )


def write_lineage(path: str | Path, c: Corpus) -> None:
    """Filter history: stage,detail,before,after, one row per step."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["stage", "detail", "before", "after"])
        for step in c.lineage:
            w.writerow([step.name, step.detail, step.before, step.after])
