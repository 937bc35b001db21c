"""Render the pipeline's figures to PNG files.

Everything here is presentation over data that is already exported in
delimited form; the analysis modules stay plot-free. Rendering uses the
Agg backend so runs are headless and repeatable.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from scipy.cluster import hierarchy

from .cluster import Dendrogram
from .sentiment import LABELS
from .topics import TopicPolarity

DPI = 100

_POS_COLOR = "#2a9d4e"
_NEG_COLOR = "#c23b3b"
_NEUTRAL_COLOR = "#8d8d8d"


def _save(fig, path: str | Path) -> None:
    fig.savefig(path, dpi=DPI)
    plt.close(fig)


def save_frequency_chart(path: str | Path, freqs: Sequence[tuple[str, int]]) -> None:
    """Horizontal bars, most frequent term on top."""
    terms = [t for t, _ in freqs]
    counts = [c for _, c in freqs]
    height = max(2.5, 0.28 * len(terms) + 1.2)
    fig, ax = plt.subplots(figsize=(7.0, height))
    ax.barh(range(len(terms)), counts, color="#3b6ea5")
    ax.set_yticks(range(len(terms)))
    ax.set_yticklabels(terms, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("occurrences")
    ax.set_title("Most frequent terms")
    fig.tight_layout()
    _save(fig, path)


def save_dendrogram_chart(path: str | Path, t: Dendrogram) -> None:
    """Draw the merge tree; node ids already follow the linkage-matrix
    convention, so only cluster sizes need recovering."""
    n = t.n_leaves
    sizes = {i: 1 for i in range(n)}
    rows = []
    for s, (left, right, h) in enumerate(t.merges):
        sizes[n + s] = sizes[left] + sizes[right]
        rows.append([float(left), float(right), float(h), float(sizes[n + s])])
    width = max(6.0, 0.22 * n + 2.0)
    fig, ax = plt.subplots(figsize=(width, 5.0))
    hierarchy.dendrogram(
        rows,
        labels=list(t.labels),
        leaf_rotation=90,
        leaf_font_size=7,
        color_threshold=0.0,
        above_threshold_color="#3b6ea5",
        ax=ax,
    )
    ax.set_ylabel(f"{t.linkage} linkage height")
    ax.set_title("Term clustering")
    fig.tight_layout()
    _save(fig, path)


def save_polarity_chart(path: str | Path, distribution: dict[str, int]) -> None:
    fig, ax = plt.subplots(figsize=(4.5, 3.5))
    counts = [distribution.get(label, 0) for label in LABELS]
    ax.bar(LABELS, counts, color=[_POS_COLOR, _NEG_COLOR, _NEUTRAL_COLOR])
    ax.set_ylabel("posts")
    ax.set_title("Polarity distribution")
    fig.tight_layout()
    _save(fig, path)


def save_topic_polarity_chart(path: str | Path, tp: TopicPolarity) -> None:
    """Mean polarity per topic, bar sign colored, doc counts annotated."""
    topics = [r.topic for r in tp.rows]
    means = [r.mean_score for r in tp.rows]
    colors = [
        _POS_COLOR if m > 0 else _NEG_COLOR if m < 0 else _NEUTRAL_COLOR for m in means
    ]
    fig, ax = plt.subplots(figsize=(max(4.5, 1.1 * len(topics) + 2.0), 3.8))
    ax.bar(range(len(topics)), means, color=colors)
    ax.set_xticks(range(len(topics)))
    ax.set_xticklabels([str(t) for t in topics])
    for i, r in enumerate(tp.rows):
        ax.annotate(
            f"n={r.doc_count}",
            (i, r.mean_score),
            textcoords="offset points",
            xytext=(0, 4 if r.mean_score >= 0 else -12),
            ha="center",
            fontsize=8,
        )
    ax.axhline(0.0, color="black", linewidth=0.8)
    ax.set_xlabel("topic")
    ax.set_ylabel("mean polarity score")
    ax.set_title("Topic polarity")
    fig.tight_layout()
    _save(fig, path)
