"""Lexicon-based polarity scoring of token streams.

A post's score is (positive hits - negative hits), counting token
occurrences with multiplicity; the sign gives the label. There is no
negation handling: "not good" still counts "good" as a positive hit.

Lexicon files: UTF-8, one word per line, lines starting with ';' are
comments. Entries are normalized like corpus tokens so that folded text
matches them. The bundled lists hold 2005 positive and 4782 negative
words and are disjoint.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ValidationError
from .nlp import TokenStream, normalize_token
from .resources import data_path

LABELS = ("positive", "negative", "neutral")


@dataclass(frozen=True)
class SentimentLexicon:
    positive: frozenset[str]
    negative: frozenset[str]

    def __post_init__(self):
        overlap = self.positive & self.negative
        if overlap:
            listed = ", ".join(sorted(overlap))
            raise ValidationError(f"words in both lexicon sets: {listed}")

    def __len__(self) -> int:
        return len(self.positive) + len(self.negative)


@dataclass(frozen=True)
class PolarityResult:
    post_id: str
    positive_hits: int
    negative_hits: int

    @property
    def score(self) -> int:
        return self.positive_hits - self.negative_hits

    @property
    def label(self) -> str:
        if self.score > 0:
            return "positive"
        if self.score < 0:
            return "negative"
        return "neutral"


def _read_words(path: str | Path) -> frozenset[str]:
    words = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith(";"):
                continue
            word = normalize_token(line)
            if word:
                words.add(word)
    return frozenset(words)


def load_lexicon(pos_path: str | Path, neg_path: str | Path) -> SentimentLexicon:
    """Load positive and negative word files; overlap is a validation
    error naming the offending words."""
    return SentimentLexicon(positive=_read_words(pos_path), negative=_read_words(neg_path))


def default_lexicon() -> SentimentLexicon:
    return load_lexicon(
        data_path("lexicon", "positive-words.txt"),
        data_path("lexicon", "negative-words.txt"),
    )


def polarity(tokens: TokenStream, lex: SentimentLexicon) -> PolarityResult:
    """Tally positive and negative occurrences (multiplicity counted)."""
    pos = sum(1 for t in tokens.tokens if t in lex.positive)
    neg = sum(1 for t in tokens.tokens if t in lex.negative)
    return PolarityResult(post_id=tokens.post_id, positive_hits=pos, negative_hits=neg)


def corpus_polarity(
    streams: Iterable[TokenStream], lex: SentimentLexicon
) -> tuple[list[PolarityResult], dict[str, int]]:
    """Per-document results plus a label distribution tally."""
    results = [polarity(s, lex) for s in streams]
    distribution = {label: 0 for label in LABELS}
    for r in results:
        distribution[r.label] += 1
    return results, distribution


def write_polarity(path: str | Path, results: Sequence[PolarityResult]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["post_id", "pos_hits", "neg_hits", "score", "label"])
        for r in results:
            w.writerow([r.post_id, r.positive_hits, r.negative_hits, r.score, r.label])


def read_polarity(path: str | Path) -> list[PolarityResult]:
    """Load a polarity report written by write_polarity, cross-checking
    the derived columns."""
    from .errors import ParseError

    results = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        expected = ["post_id", "pos_hits", "neg_hits", "score", "label"]
        if reader.fieldnames != expected:
            raise ParseError(f"polarity report must have columns {','.join(expected)}", 1)
        for row in reader:
            try:
                r = PolarityResult(
                    post_id=row["post_id"],
                    positive_hits=int(row["pos_hits"]),
                    negative_hits=int(row["neg_hits"]),
                )
            except (TypeError, ValueError):
                raise ParseError("hit counts must be integers", reader.line_num) from None
            if str(r.score) != row["score"] or r.label != row["label"]:
                raise ParseError(
                    f"inconsistent score/label for post {r.post_id!r}", reader.line_num
                )
            results.append(r)
    return results


def write_distribution(path: str | Path, distribution: dict[str, int]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["label", "count"])
        for label in LABELS:
            w.writerow([label, distribution.get(label, 0)])
