"""Engagement weighting, influence indicator, and influencer ranking.

weighting = favorites + 2 * retweets        (integer)
indicator = weighting / followers           (exact rational, followers > 0)

All arithmetic stays exact (int / Fraction); decimal rendering happens
only when tables are written, with 8 fixed places.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .corpus import Corpus, Post
from .errors import UndefinedIndicatorError

AGGREGATIONS = ("mean", "max", "sum")


@dataclass(frozen=True)
class InfluenceRecord:
    post_id: str
    author: str
    weighting: int
    indicator: Fraction


@dataclass(frozen=True)
class AuthorScore:
    author: str
    score: Fraction
    post_count: int
    aggregation: str


def weighting(p: Post) -> int:
    return p.favorites + 2 * p.retweets


def indicator(p: Post) -> Fraction:
    if p.followers == 0:
        raise UndefinedIndicatorError(
            f"post {p.id!r}: indicator undefined for followers=0"
        )
    return Fraction(weighting(p), p.followers)


def influence_records(c: Corpus) -> tuple[list[InfluenceRecord], list[Post]]:
    """Per-post records for all posts with followers > 0, plus the skipped
    zero-follower posts (reported, never ranked)."""
    records: list[InfluenceRecord] = []
    skipped: list[Post] = []
    for p in c.posts:
        if p.followers == 0:
            skipped.append(p)
        else:
            records.append(InfluenceRecord(p.id, p.author, weighting(p), indicator(p)))
    return records, skipped


def _aggregate(values: Sequence[Fraction], how: str) -> Fraction:
    if how == "mean":
        return sum(values, Fraction(0)) / len(values)
    if how == "max":
        return max(values)
    if how == "sum":
        return sum(values, Fraction(0))
    raise ValueError(f"unknown aggregation {how!r}; expected one of {AGGREGATIONS}")


def rank_influencers(c: Corpus, n: int, aggregation: str = "mean") -> list[AuthorScore]:
    """Top-n authors by aggregated per-post indicator, descending.

    Ties break by ascending author handle. Zero-follower posts are
    excluded from aggregation; authors with no rankable post are dropped.
    """
    if n <= 0:
        raise ValueError("n must be a positive integer")
    if aggregation not in AGGREGATIONS:
        raise ValueError(f"unknown aggregation {aggregation!r}; expected one of {AGGREGATIONS}")
    if len(c) == 0:
        raise ValueError("corpus is empty")
    records, _ = influence_records(c)
    per_author: dict[str, list[Fraction]] = {}
    for rec in records:
        per_author.setdefault(rec.author, []).append(rec.indicator)
    scores = [
        AuthorScore(author, _aggregate(vals, aggregation), len(vals), aggregation)
        for author, vals in per_author.items()
    ]
    scores.sort(key=lambda s: s.author)
    scores.sort(key=lambda s: s.score, reverse=True)
    return scores[:n]


def format_fixed(value: Fraction | int, places: int = 8) -> str:
    """Exact fixed-point rendering of a rational, round-half-to-even."""
    scaled = Fraction(value) * 10**places
    quantized = round(scaled)  # Fraction.__round__ is half-to-even
    sign = "-" if quantized < 0 else ""
    whole, frac = divmod(abs(quantized), 10**places)
    return f"{sign}{whole}.{frac:0{places}d}" if places else f"{sign}{whole}"


def write_ranking(path: str | Path, scores: Sequence[AuthorScore]) -> None:
    """Delimited ranking table: rank,author,score,post_count,aggregation."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["rank", "author", "score", "post_count", "aggregation"])
        for rank, s in enumerate(scores, start=1):
            w.writerow([rank, s.author, format_fixed(s.score, 8), s.post_count, s.aggregation])


def write_skipped(path: str | Path, skipped: Sequence[Post]) -> None:
    """Report of posts excluded from ranking (followers = 0)."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["post_id", "author", "reason"])
        for p in skipped:
            w.writerow([p.id, p.author, "followers=0"])
