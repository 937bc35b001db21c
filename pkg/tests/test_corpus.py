from __future__ import annotations

import json
import random
from datetime import datetime, timezone

import pytest

from postmine.corpus import (
    Corpus,
    FilterStep,
    KeywordSet,
    default_keyword_sets,
    filter_by_date,
    filter_by_keywords,
    format_rfc3339,
    load_corpus,
    load_keyword_sets,
    parse_rfc3339,
    text_matches_keywords,
    write_corpus,
    write_lineage,
)
from postmine.errors import ParseError, ValidationError

from conftest import make_corpus, make_post, write_posts_csv

UTC = timezone.utc


# --- parsing -------------------------------------------------------------

def test_parse_rfc3339_variants():
    assert parse_rfc3339("2016-03-01T00:00:00Z") == datetime(2016, 3, 1, tzinfo=UTC)
    assert parse_rfc3339("2016-03-01T00:00:00z") == datetime(2016, 3, 1, tzinfo=UTC)
    # offsets convert to UTC
    assert parse_rfc3339("2016-03-01T02:00:00+02:00") == datetime(2016, 3, 1, tzinfo=UTC)
    assert parse_rfc3339("2016-06-15T12:30:45.123456Z").microsecond == 123456


def test_parse_rfc3339_rejects_bad_input():
    with pytest.raises(ParseError):
        parse_rfc3339("not a date")
    with pytest.raises(ParseError, match="no UTC offset"):
        parse_rfc3339("2016-03-01T00:00:00")
    with pytest.raises(ParseError, match="line 7"):
        parse_rfc3339("nope", line=7)


def test_load_delimited_with_quoting_hazards(tmp_path):
    path = write_posts_csv(
        tmp_path / "posts.csv",
        [
            ["a1", "ann", 10, 1, 2, "2016-06-01T00:00:00Z", 'comma, quote " and\nnewline'],
            ["a2", "bob", 20, 3, 4, "2016-06-02T00:00:00Z", "plain"],
        ],
    )
    c = load_corpus(path)
    assert len(c) == 2
    assert c.posts[0].text == 'comma, quote " and\nnewline'
    assert c.posts[1].followers == 20
    assert c.posts[0].timestamp == datetime(2016, 6, 1, tzinfo=UTC)
    assert c.source_label == "posts.csv"
    assert c.lineage == (FilterStep("load", "posts.csv", 2, 2),)


def test_load_accepts_optional_language_hint(tmp_path):
    path = write_posts_csv(
        tmp_path / "posts.csv",
        [
            ["a1", "ann", 10, 1, 2, "2016-06-01T00:00:00Z", "hola", "es"],
            ["a2", "bob", 20, 3, 4, "2016-06-02T00:00:00Z", "hi", ""],
        ],
        header=["id", "author", "followers", "retweets", "favorites", "timestamp", "text", "language_hint"],
    )
    c = load_corpus(path)
    assert c.posts[0].language_hint == "es"
    assert c.posts[1].language_hint is None


def test_load_jsonl(tmp_path):
    path = tmp_path / "posts.jsonl"
    rec = {
        "id": "j1", "author": "ann", "followers": 5, "retweets": 1,
        "favorites": 0, "timestamp": "2016-06-01T00:00:00Z", "text": "hello",
    }
    path.write_text(json.dumps(rec) + "\n\n" + json.dumps({**rec, "id": "j2"}) + "\n")
    c = load_corpus(path, format="jsonl")
    assert c.ids() == ["j1", "j2"]


def test_load_jsonl_rejects_bad_lines(tmp_path):
    path = tmp_path / "posts.jsonl"
    path.write_text('{"id": "x"\n')
    with pytest.raises(ParseError, match="line 1"):
        load_corpus(path, format="jsonl")
    path.write_text('[1, 2]\n')
    with pytest.raises(ParseError, match="not a JSON object"):
        load_corpus(path, format="jsonl")


def test_load_unknown_format(tmp_path):
    with pytest.raises(ValueError, match="unknown input format"):
        load_corpus(tmp_path / "x.csv", format="xml")


def test_load_missing_column(tmp_path):
    path = tmp_path / "posts.csv"
    path.write_text("id,author,followers\n1,ann,10\n")
    with pytest.raises(ParseError, match="missing column"):
        load_corpus(path)


def test_load_unexpected_column(tmp_path):
    path = write_posts_csv(
        tmp_path / "posts.csv",
        [["a1", "ann", 10, 1, 2, "2016-06-01T00:00:00Z", "hi", "x"]],
        header=["id", "author", "followers", "retweets", "favorites", "timestamp", "text", "mystery"],
    )
    with pytest.raises(ParseError, match="unexpected column"):
        load_corpus(path)


def test_load_row_with_extra_fields(tmp_path):
    path = tmp_path / "posts.csv"
    path.write_text(
        "id,author,followers,retweets,favorites,timestamp,text\n"
        "a1,ann,10,1,2,2016-06-01T00:00:00Z,hi,EXTRA\n"
    )
    with pytest.raises(ParseError, match="more fields"):
        load_corpus(path)


def test_load_non_integer_counts(tmp_path):
    path = write_posts_csv(
        tmp_path / "posts.csv", [["a1", "ann", "ten", 1, 2, "2016-06-01T00:00:00Z", "hi"]]
    )
    with pytest.raises(ParseError, match="integers"):
        load_corpus(path)


def test_load_negative_counts(tmp_path):
    path = write_posts_csv(
        tmp_path / "posts.csv", [["a1", "ann", 10, -1, 2, "2016-06-01T00:00:00Z", "hi"]]
    )
    with pytest.raises(ValidationError, match="negative retweets"):
        load_corpus(path)


def test_load_duplicate_ids(tmp_path):
    rows = [
        ["dup", "ann", 10, 1, 2, "2016-06-01T00:00:00Z", "one"],
        ["dup", "bob", 20, 1, 2, "2016-06-02T00:00:00Z", "two"],
    ]
    with pytest.raises(ValidationError, match="duplicate post id"):
        load_corpus(write_posts_csv(tmp_path / "posts.csv", rows))


def test_load_empty_text_and_empty_id(tmp_path):
    path = write_posts_csv(
        tmp_path / "posts.csv", [["a1", "ann", 10, 1, 2, "2016-06-01T00:00:00Z", "   "]]
    )
    with pytest.raises(ValidationError, match="empty text"):
        load_corpus(path)
    path = write_posts_csv(
        tmp_path / "posts2.csv", [["  ", "ann", 10, 1, 2, "2016-06-01T00:00:00Z", "hi"]]
    )
    with pytest.raises(ValidationError, match="empty post id"):
        load_corpus(path)


def test_load_empty_file_and_header_only(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("")
    with pytest.raises(ParseError, match="no records"):
        load_corpus(path)
    path.write_text("id,author,followers,retweets,favorites,timestamp,text\n")
    with pytest.raises(ParseError, match="no records"):
        load_corpus(path)


# --- corpus invariants ---------------------------------------------------

def test_corpus_rejects_duplicate_posts():
    with pytest.raises(ValidationError, match="duplicate"):
        make_corpus([make_post("x"), make_post("x")])


def test_lineage_must_chain():
    posts = (make_post("a"),)
    with pytest.raises(ValidationError, match="does not chain"):
        Corpus(posts=posts, lineage=(FilterStep("load", "", 5, 3), FilterStep("date", "", 4, 1)))
    with pytest.raises(ValidationError, match="grows"):
        Corpus(posts=posts, lineage=(FilterStep("load", "", 2, 3),))


# --- date filter ---------------------------------------------------------

def test_filter_by_date_bounds_inclusive():
    start = datetime(2016, 3, 1, tzinfo=UTC)
    end = datetime(2017, 2, 28, 23, 59, 59, tzinfo=UTC)
    c = make_corpus(
        [
            make_post("before", ts="2016-02-29T23:59:59Z"),
            make_post("at-start", ts="2016-03-01T00:00:00Z"),
            make_post("inside", ts="2016-08-01T00:00:00Z"),
            make_post("at-end", ts="2017-02-28T23:59:59Z"),
            make_post("after", ts="2017-03-01T00:00:00Z"),
        ]
    )
    got = filter_by_date(c, start, end)
    assert got.ids() == ["at-start", "inside", "at-end"]
    assert got.lineage[-1].name == "date"
    assert got.lineage[-1].before == 5 and got.lineage[-1].after == 3


def test_filter_by_date_open_bounds():
    c = make_corpus(
        [make_post("a", ts="2015-01-01T00:00:00Z"), make_post("b", ts="2018-01-01T00:00:00Z")]
    )
    assert filter_by_date(c, None, None).ids() == ["a", "b"]
    only_late = filter_by_date(c, datetime(2016, 1, 1, tzinfo=UTC), None)
    assert only_late.ids() == ["b"]
    assert only_late.lineage[-1].detail.endswith("..*")
    only_early = filter_by_date(c, None, datetime(2016, 1, 1, tzinfo=UTC))
    assert only_early.ids() == ["a"]
    assert only_early.lineage[-1].detail.startswith("*..")


def test_filter_by_date_rejects_bad_bounds():
    c = make_corpus([make_post("a")])
    with pytest.raises(ValueError, match="timezone-aware"):
        filter_by_date(c, datetime(2016, 1, 1), None)
    with pytest.raises(ValueError, match="after end"):
        filter_by_date(c, datetime(2017, 1, 1, tzinfo=UTC), datetime(2016, 1, 1, tzinfo=UTC))


# --- keyword filter ------------------------------------------------------

def _sets(*keywords: str) -> list[KeywordSet]:
    return [KeywordSet("t", frozenset(keywords))]


def test_keyword_whole_token_only():
    sets = _sets("iot")
    c = make_corpus(
        [
            make_post("hit", text="the IoT rollout"),
            make_post("punct", text="loving #IoT!"),
            make_post("sub", text="iotics is different"),
            make_post("none", text="nothing here"),
        ]
    )
    assert filter_by_keywords(c, sets).ids() == ["hit", "punct"]


def test_keyword_case_and_accent_folding():
    c = make_corpus(
        [
            make_post("acc", text="gran INNOVACIÓN aquí"),
            make_post("plain", text="sin cambios"),
        ]
    )
    assert filter_by_keywords(c, _sets("innovacion")).ids() == ["acc"]


def test_multiword_keyword_needs_contiguous_sequence():
    sets = _sets("digital transformation")
    c = make_corpus(
        [
            make_post("yes", text="the Digital Transformation agenda"),
            make_post("punct", text="digital, transformation"),
            make_post("gap", text="digital slow transformation"),
            make_post("rev", text="transformation digital"),
        ]
    )
    # punctuation between tokens still leaves adjacent tokens
    assert filter_by_keywords(c, sets).ids() == ["yes", "punct"]


def test_filter_by_keywords_lineage_and_errors():
    c = make_corpus([make_post("a", text="alpha")])
    got = filter_by_keywords(c, [KeywordSet("One", frozenset(["alpha"])), KeywordSet("Two", frozenset(["beta"]))])
    assert got.lineage[-1].detail == "themes=One+Two"
    with pytest.raises(ValueError, match="at least one keyword set"):
        filter_by_keywords(c, [])


def test_keyword_filter_matches_designed_expectations():
    """Posts are built with known keyword placement; the retained set must
    match the construction exactly."""
    rng = random.Random(4321)
    sets = [KeywordSet("t", frozenset(["innovacion", "big data"]))]
    decoys = ["orbit", "granite", "velvet", "mosaic", "lantern", "innovaciones"]
    posts, expected = [], set()
    for i in range(300):
        words = rng.sample(decoys, 3)
        kind = rng.randrange(5)
        if kind == 0:
            words.insert(rng.randrange(len(words)), "Innovación")
            expected.add(str(i))
        elif kind == 1:
            words.insert(rng.randrange(len(words)), "BIG Data")
            expected.add(str(i))
        elif kind == 2:
            words.insert(rng.randrange(len(words)), "big mosaic data")  # interrupted
        elif kind == 3:
            words.insert(rng.randrange(len(words)), "innovacionismo")  # longer token
        posts.append(make_post(str(i), text=" ".join(words)))
    got = filter_by_keywords(make_corpus(posts), sets)
    assert set(got.ids()) == expected


def test_text_matches_keywords_direct():
    singles = {"iot"}
    multis = [("big", "data")]
    assert text_matches_keywords("IoT here", singles, multis)
    assert text_matches_keywords("we do Big  Data now", singles, multis)
    assert not text_matches_keywords("big and data", singles, multis)
    assert not text_matches_keywords("nothing", singles, multis)


# --- keyword files -------------------------------------------------------

def test_load_keyword_sets(tmp_path):
    path = tmp_path / "kw.txt"
    path.write_text(
        "# leading comment\n"
        "[Growth]\n"
        "startup  # trailing comment\n"
        "Innovación\n"
        "\n"
        "[Tech]\n"
        "big data\n",
        encoding="utf-8",
    )
    sets = load_keyword_sets(path)
    assert [s.theme for s in sets] == ["Growth", "Tech"]
    assert sets[0].keywords == frozenset(["startup", "innovación".replace("ó", "o")])
    assert sets[1].keywords == frozenset(["big data"])


def test_load_keyword_sets_errors(tmp_path):
    path = tmp_path / "kw.txt"
    path.write_text("loose\n[T]\nx\n")
    with pytest.raises(ParseError, match="before any"):
        load_keyword_sets(path)
    path.write_text("[Empty]\n[Full]\nx\n")
    with pytest.raises(ParseError, match="no keywords"):
        load_keyword_sets(path)
    path.write_text("# only comments\n")
    with pytest.raises(ParseError, match="no keyword sets"):
        load_keyword_sets(path)


def test_keyword_set_validation():
    with pytest.raises(ValidationError, match="empty"):
        KeywordSet("t", frozenset())
    with pytest.raises(ValidationError, match="lowercase"):
        KeywordSet("t", frozenset(["Upper"]))


def test_default_keyword_sets_cover_three_themes():
    sets = default_keyword_sets()
    themes = {s.theme for s in sets}
    assert themes == {"Innovation", "Entrepreneurship", "Others"}
    allkw = {kw for s in sets for kw in s.keywords}
    assert "innovation" in allkw
    assert "internet of things" in allkw


# --- writers -------------------------------------------------------------

def test_write_corpus_roundtrip(tmp_path):
    c = make_corpus(
        [
            make_post("a", text='tricky, "text"\nhere', ts="2016-06-01T05:06:07Z", hint="es"),
            make_post("b", text="plain", ts="2016-07-01T00:00:00+02:00"),
        ]
    )
    path = tmp_path / "out.csv"
    write_corpus(path, c)
    back = load_corpus(path)
    assert back.ids() == ["a", "b"]
    assert back.posts[0].text == 'tricky, "text"\nhere'
    assert back.posts[0].language_hint is None  # not preserved
    # offsets are normalized to UTC on write
    assert back.posts[1].timestamp == c.posts[1].timestamp


def test_format_rfc3339_uses_z():
    assert format_rfc3339(datetime(2016, 3, 1, 12, 0, 0, tzinfo=UTC)) == "2016-03-01T12:00:00Z"


def test_write_lineage(tmp_path):
    c = make_corpus([make_post("a", text="alpha"), make_post("b", text="beta")])
    c = filter_by_keywords(c, _sets("alpha"))
    path = tmp_path / "lineage.csv"
    write_lineage(path, c)
    lines = path.read_text().splitlines()
    assert lines[0] == "stage,detail,before,after"
    assert lines[1] == "load,test,2,2"
    assert lines[2] == "keywords,themes=t,2,1"
