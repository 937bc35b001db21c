"""Text preprocessing: cleaning, tokenization, normalization, stopwords.

The pipeline for a post is

    clean_text -> tokenize -> normalize -> remove_stopwords

and yields a TokenStream of lowercase, accent-stripped, letters-only
unigrams. Cleaning removes URLs, digit runs, emoticons and symbol
codepoints, strips '#'/'@' markers while keeping the marked word, and
turns remaining punctuation into spaces. Case is preserved until
normalization so that cleaning alone is inspectable.

Stopword list files: UTF-8, one word per line, '#' starts a comment.
Bundled lists: en (English), es (Spanish), it (Italian). Entries are
normalized on load so that accented stopwords match folded corpus text.
"""

from __future__ import annotations

import csv
import re
import unicodedata
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

from .resources import data_path

if TYPE_CHECKING:  # pragma: no cover
    from .corpus import Post

BUNDLED_LANGUAGES = ("en", "es", "it")

_URL_RE = re.compile(r"(?:[A-Za-z][A-Za-z0-9+.-]*://\S+|www\.\S+)")
# The ASCII emoticons handled explicitly; other emoticons fall under the
# symbol-codepoint rule. Matched only as standalone tokens.
_EMOTICONS = (":)", ":(", ";)", ":D", ":P")
_EMOTICON_RE = re.compile(
    r"(?:(?<=\s)|^)(?:" + "|".join(re.escape(e) for e in _EMOTICONS) + r")(?=\s|$)"
)
_DIGITS_RE = re.compile(r"\d+")
_SPACE_RE = re.compile(r"\s+")


def fold_text(s: str) -> str:
    """Lowercase and strip diacritics: 'Innovación' -> 'innovacion'."""
    s = unicodedata.normalize("NFC", s).lower()
    s = unicodedata.normalize("NFD", s)
    s = "".join(ch for ch in s if unicodedata.category(ch) != "Mn")
    return unicodedata.normalize("NFC", s)


@dataclass(frozen=True)
class TokenStream:
    """Normalized unigram tokens of one post, in original order."""

    post_id: str
    tokens: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.tokens)


@dataclass(frozen=True)
class StopwordLists:
    """Per-language stopword sets, keyed by ISO 639-1 code."""

    languages: Mapping[str, frozenset[str]]

    def union(self, codes: Iterable[str]) -> frozenset[str]:
        merged: set[str] = set()
        for code in codes:
            if code not in self.languages:
                raise ValueError(
                    f"unknown stopword language {code!r}; have {sorted(self.languages)}"
                )
            merged |= self.languages[code]
        return frozenset(merged)

    @classmethod
    def load(cls, paths: Mapping[str, str | Path]) -> "StopwordLists":
        langs = {}
        for code, path in paths.items():
            words: set[str] = set()
            with open(path, encoding="utf-8") as fh:
                for raw in fh:
                    word = raw.split("#", 1)[0].strip()
                    if word:
                        words.add(normalize_token(word) or word.lower())
            langs[code] = frozenset(words)
        return cls(languages=langs)

    @classmethod
    def default(cls) -> "StopwordLists":
        return cls.load({code: data_path("stopwords", f"{code}.txt") for code in BUNDLED_LANGUAGES})


def clean_text(raw: str) -> str:
    """Delete URLs, digit runs, emoticons and symbol codepoints; strip
    '#'/'@' markers but keep the following word; map other punctuation to
    spaces. Case is left intact; whitespace is collapsed."""
    s = _URL_RE.sub("", raw)
    s = _EMOTICON_RE.sub("", s)
    s = s.replace("#", "").replace("@", "")
    s = _DIGITS_RE.sub("", s)
    out = []
    for ch in s:
        if ch.isspace():
            out.append(" ")
            continue
        cat = unicodedata.category(ch)
        if cat[0] in ("L", "M"):
            out.append(ch)
        elif cat[0] == "S":
            # symbols and pictographs vanish without splitting the word
            continue
        else:
            out.append(" ")
    return _SPACE_RE.sub(" ", "".join(out)).strip()


def tokenize(cleaned: str) -> list[str]:
    """Split cleaned text on whitespace; never yields empty tokens."""
    return cleaned.split()


def normalize_token(token: str) -> str:
    """Canonical-compose, lowercase, strip diacritics, drop non-letters."""
    t = fold_text(token)
    return "".join(ch for ch in t if unicodedata.category(ch).startswith("L"))


def normalize(tokens: Sequence[str]) -> list[str]:
    """Normalize each token, dropping any that reduce to the empty string."""
    out = []
    for tok in tokens:
        t = normalize_token(tok)
        if t:
            out.append(t)
    return out


def remove_stopwords(
    tokens: Sequence[str], lists: StopwordLists, languages: Iterable[str]
) -> list[str]:
    """Drop tokens found in the union of the selected language lists."""
    stop = lists.union(languages)
    return [t for t in tokens if t not in stop]


def preprocess(
    post: "Post",
    stopwords: StopwordLists | None = None,
    languages: Sequence[str] = BUNDLED_LANGUAGES,
) -> TokenStream:
    """Full pipeline for one post: clean, tokenize, normalize, de-stopword."""
    lists = stopwords if stopwords is not None else StopwordLists.default()
    tokens = remove_stopwords(normalize(tokenize(clean_text(post.text))), lists, languages)
    return TokenStream(post_id=post.id, tokens=tuple(tokens))


def preprocess_corpus(
    posts: Iterable["Post"],
    stopwords: StopwordLists | None = None,
    languages: Sequence[str] = BUNDLED_LANGUAGES,
) -> list[TokenStream]:
    """Preprocess every post, preserving corpus order (empty streams kept)."""
    lists = stopwords if stopwords is not None else StopwordLists.default()
    return [preprocess(p, lists, languages) for p in posts]


def write_token_streams(path, streams: Iterable[TokenStream]) -> None:
    """Token dump: post_id,position,token, documents in corpus order."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["post_id", "position", "token"])
        for s in streams:
            for pos, tok in enumerate(s.tokens):
                w.writerow([s.post_id, pos, tok])
