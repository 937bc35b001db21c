from __future__ import annotations

import csv
import logging
from pathlib import Path

import pytest

from postmine.corpus import Post, Corpus, FilterStep, parse_rfc3339


def make_post(
    post_id: str,
    text: str = "hello world",
    author: str = "ann",
    followers: int = 100,
    retweets: int = 1,
    favorites: int = 2,
    ts: str = "2016-06-15T12:00:00Z",
    hint: str | None = None,
) -> Post:
    return Post(
        id=post_id,
        author=author,
        followers=followers,
        retweets=retweets,
        favorites=favorites,
        text=text,
        timestamp=parse_rfc3339(ts),
        language_hint=hint,
    )


def make_corpus(posts) -> Corpus:
    posts = tuple(posts)
    n = len(posts)
    return Corpus(posts=posts, source_label="test", lineage=(FilterStep("load", "test", n, n),))


def write_posts_csv(path: Path, rows, header=None) -> Path:
    header = header or ["id", "author", "followers", "retweets", "favorites", "timestamp", "text"]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    return path


@pytest.fixture(autouse=True)
def _reset_logging():
    # the CLI calls logging.basicConfig; keep tests independent
    yield
    root = logging.getLogger()
    for h in list(root.handlers):
        root.removeHandler(h)
    root.setLevel(logging.WARNING)


# --- a small but complete pipeline fixture -------------------------------

TINY_POSTS = [
    # 8 posts inside the window that carry a keyword
    ["t01", "ann", 100, 2, 4, "2020-02-01T09:00:00Z", "alpha quark photon glad shiny"],
    ["t02", "bob", 200, 0, 0, "2020-03-05T10:00:00Z", "beta gamma quark lepton gloom"],
    ["t03", "ann", 100, 5, 1, "2020-04-09T11:00:00Z", "alpha photon boson glad"],
    ["t04", "zed", 0, 3, 3, "2020-05-13T12:00:00Z", "alpha lepton quark rust gloom"],
    ["t05", "bob", 200, 1, 2, "2020-06-17T13:00:00Z", "beta gamma boson gluon shiny glad"],
    ["t06", "ann", 100, 0, 7, "2020-07-21T14:00:00Z", "alpha quark gluon"],
    ["t07", "zed", 0, 2, 0, "2020-08-25T15:00:00Z", "beta gamma photon hadron rust"],
    ["t08", "bob", 200, 4, 4, "2020-09-29T16:00:00Z", "alpha hadron boson quark gloom rust"],
    # 2 posts inside the window without any keyword
    ["t09", "ann", 100, 1, 1, "2020-10-03T17:00:00Z", "photon lepton only"],
    ["t10", "bob", 200, 2, 2, "2020-11-07T18:00:00Z", "boson gluon hadron"],
    # 2 posts outside the window (keyword present, date removes them)
    ["t11", "ann", 100, 1, 1, "2019-12-31T23:59:59Z", "alpha quark photon"],
    ["t12", "bob", 200, 1, 1, "2021-01-01T00:00:00Z", "beta gamma lepton"],
]

TINY_CONFIG = """\
# pipeline settings for the tiny test corpus
input = posts.csv
output_dir = out
date_start = 2020-01-01
date_end = 2020-12-31
keywords = keywords.txt
lexicon_positive = pos.txt
lexicon_negative = neg.txt
max_sparsity = 1.0
distance_metric = euclidean
linkage = complete
association_anchors = quark
min_correlation = 0.0
freq_top_n = 10
rank_top_n = 5
rank_aggregation = mean
lda_topics = 2
lda_iterations = 15
lda_burn_in = 3
seed = 42
figures = false
"""


@pytest.fixture
def tiny_tree(tmp_path: Path) -> Path:
    """A directory holding posts.csv, keywords.txt, lexicon files, and a
    config.txt wired together with relative paths."""
    write_posts_csv(tmp_path / "posts.csv", TINY_POSTS)
    (tmp_path / "keywords.txt").write_text("[Theme]\nalpha\nbeta gamma\n", encoding="utf-8")
    (tmp_path / "pos.txt").write_text("; positives\nglad\nshiny\n", encoding="utf-8")
    (tmp_path / "neg.txt").write_text("; negatives\ngloom\nrust\n", encoding="utf-8")
    (tmp_path / "config.txt").write_text(TINY_CONFIG, encoding="utf-8")
    return tmp_path
