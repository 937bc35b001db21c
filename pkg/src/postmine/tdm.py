"""Sparse term-document matrix with raw term-frequency counts, plus
frequency, association (Pearson), and sparsity-reduction analyses.

Storage is sparse at the contract level: only strictly positive counts
are kept, so total stored mass always equals the total token count of
the input streams. The vocabulary is sorted lexicographically.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .errors import InsufficientDataError, ValidationError
from .nlp import TokenStream


@dataclass(frozen=True)
class TermDocumentMatrix:
    """Terms x documents raw-frequency counts, sparsely stored."""

    vocabulary: tuple[str, ...]          # unique, sorted
    doc_ids: tuple[str, ...]
    counts: Mapping[tuple[int, int], int]  # (term index, doc index) -> count > 0

    def __post_init__(self):
        if list(self.vocabulary) != sorted(set(self.vocabulary)):
            raise ValidationError("vocabulary must be unique and sorted")
        for (t, d), v in self.counts.items():
            if v <= 0:
                raise ValidationError(f"stored count must be positive, got {v} at ({t},{d})")
            if not (0 <= t < len(self.vocabulary) and 0 <= d < len(self.doc_ids)):
                raise ValidationError(f"count index ({t},{d}) out of range")

    @cached_property
    def term_index(self) -> dict[str, int]:
        return {t: i for i, t in enumerate(self.vocabulary)}

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.vocabulary), len(self.doc_ids)

    @property
    def total_mass(self) -> int:
        return sum(self.counts.values())

    def term_vector(self, term: str) -> np.ndarray:
        """Dense count vector of one term across all documents."""
        if term not in self.term_index:
            raise KeyError(f"term {term!r} not in vocabulary")
        t = self.term_index[term]
        vec = np.zeros(len(self.doc_ids), dtype=np.int64)
        for (ti, di), v in self.counts.items():
            if ti == t:
                vec[di] = v
        return vec

    def dense(self) -> np.ndarray:
        """Dense (terms x docs) int64 matrix; fine at toolkit scales."""
        mat = np.zeros(self.shape, dtype=np.int64)
        for (t, d), v in self.counts.items():
            mat[t, d] = v
        return mat

    def term_totals(self) -> dict[str, int]:
        totals = {t: 0 for t in self.vocabulary}
        for (t, _), v in self.counts.items():
            totals[self.vocabulary[t]] += v
        return totals

    def document_frequencies(self) -> dict[str, int]:
        df = {t: 0 for t in self.vocabulary}
        for (t, _) in self.counts:
            df[self.vocabulary[t]] += 1
        return df


@dataclass(frozen=True)
class AssociationList:
    """Terms correlated with an anchor term, strongest first."""

    anchor: str
    entries: tuple[tuple[str, float], ...]


def build_tdm(streams: Sequence[TokenStream]) -> TermDocumentMatrix:
    """Count unigram occurrences per document. Empty streams contribute an
    all-zero document column."""
    doc_ids = [s.post_id for s in streams]
    if len(set(doc_ids)) != len(doc_ids):
        dupes = sorted({d for d in doc_ids if doc_ids.count(d) > 1})
        raise ValidationError(f"duplicate document id(s): {', '.join(dupes)}")
    vocabulary = tuple(sorted({tok for s in streams for tok in s.tokens}))
    index = {t: i for i, t in enumerate(vocabulary)}
    counts: dict[tuple[int, int], int] = {}
    for d, stream in enumerate(streams):
        for tok in stream.tokens:
            key = (index[tok], d)
            counts[key] = counts.get(key, 0) + 1
    return TermDocumentMatrix(vocabulary=vocabulary, doc_ids=tuple(doc_ids), counts=counts)


def term_frequencies(m: TermDocumentMatrix, n: int) -> list[tuple[str, int]]:
    """Top-n terms by corpus-wide count, descending; ties lexicographic."""
    if n <= 0:
        raise ValueError("n must be a positive integer")
    totals = m.term_totals()
    ranked = sorted(totals.items(), key=lambda kv: (-kv[1], kv[0]))
    return ranked[:n]


def associations(m: TermDocumentMatrix, anchor: str, min_corr: float = 0.25) -> AssociationList:
    """Pearson correlation of the anchor's document-count vector against
    every other term's vector, keeping entries with correlation >= min_corr.

    Terms whose vectors have zero variance are skipped. Exact (anti-)
    proportionality reports exactly +/-1.0.
    """
    if not 0.0 <= min_corr <= 1.0:
        raise ValueError("min_corr must lie in [0, 1]")
    if anchor not in m.term_index:
        raise KeyError(f"anchor term {anchor!r} not in vocabulary")
    if len(m.doc_ids) < 2:
        raise InsufficientDataError("associations need at least 2 documents")

    dense = m.dense().astype(np.float64)
    centered = dense - dense.mean(axis=1, keepdims=True)
    ss = np.einsum("ij,ij->i", centered, centered)
    a = m.term_index[anchor]
    if ss[a] == 0.0:
        return AssociationList(anchor=anchor, entries=())

    entries: list[tuple[str, float]] = []
    ca = centered[a]
    for t, term in enumerate(m.vocabulary):
        if t == a or ss[t] == 0.0:
            continue
        num = float(np.dot(ca, centered[t]))
        den_sq = ss[a] * ss[t]
        if num * num == den_sq:
            # Cauchy-Schwarz equality: exactly proportional vectors
            corr = 1.0 if num > 0 else -1.0
        else:
            corr = num / math.sqrt(den_sq)
            corr = max(-1.0, min(1.0, corr))
        if corr >= min_corr:
            entries.append((term, corr))
    entries.sort(key=lambda e: e[0])
    entries.sort(key=lambda e: e[1], reverse=True)
    return AssociationList(anchor=anchor, entries=tuple(entries))


def remove_sparse_terms(m: TermDocumentMatrix, max_sparsity: float) -> TermDocumentMatrix:
    """Drop terms absent from more than max_sparsity of the documents.

    A term with document frequency df survives iff df/D >= 1 - max_sparsity
    (evaluated with a 1e-12 slack in favour of keeping). Document columns
    are unchanged; surviving counts are untouched.
    """
    if not 0.0 < max_sparsity <= 1.0:
        raise ValueError("max_sparsity must lie in (0, 1]")
    n_docs = len(m.doc_ids)
    if n_docs == 0 or max_sparsity == 1.0:
        return m
    df = m.document_frequencies()
    threshold = (1.0 - max_sparsity) - 1e-12
    keep = [t for t in m.vocabulary if df[t] / n_docs >= threshold]
    keep_idx = {m.term_index[t]: i for i, t in enumerate(keep)}
    counts = {
        (keep_idx[t], d): v for (t, d), v in m.counts.items() if t in keep_idx
    }
    return TermDocumentMatrix(vocabulary=tuple(keep), doc_ids=m.doc_ids, counts=counts)


def write_tdm(path: str | Path, m: TermDocumentMatrix) -> None:
    """Coordinate export: term,doc_id,count sorted by (term, doc_id)."""
    rows = sorted(
        (m.vocabulary[t], m.doc_ids[d], v) for (t, d), v in m.counts.items()
    )
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["term", "doc_id", "count"])
        w.writerows(rows)


def write_frequencies(path: str | Path, freqs: Sequence[tuple[str, int]]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["term", "count"])
        w.writerows(freqs)


def write_associations(path: str | Path, lists: Sequence[AssociationList]) -> None:
    """Association report: anchor,term,correlation with 6-decimal values."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["anchor", "term", "correlation"])
        for al in lists:
            for term, corr in al.entries:
                w.writerow([al.anchor, term, f"{corr:.6f}"])
