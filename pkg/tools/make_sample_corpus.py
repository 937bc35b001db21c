#!/usr/bin/env python3
"""Generate the bundled demonstration corpus and its pipeline config.

200 posts: 10 outside the configured date window, 20 inside it without
any theme keyword, and 170 topical posts split over four subject areas
(payments, connected devices, data analysis, startup funding). Topical
posts carry a designed sentiment load drawn from the bundled lexicon so
every pipeline stage has meaningful work. Texts include quoting
hazards (commas, double quotes, embedded newlines), URLs, mentions,
hashtags, digits, emoticons, and emoji.

Deterministic: a fixed RNG seed drives every choice. Run from the
repository root:

    python tools/make_sample_corpus.py
"""

from __future__ import annotations

import csv
import random
import re
from datetime import datetime, timedelta, timezone
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "src" / "postmine" / "data"
OUT_DIR = DATA / "sample"

WINDOW_START = datetime(2016, 3, 1, tzinfo=timezone.utc)
WINDOW_END = datetime(2017, 2, 28, 23, 59, 59, tzinfo=timezone.utc)

AUTHORS = [
    ("FinSightLab", 18200), ("DataPulseHQ", 15400), ("IoTWireDaily", 12600),
    ("VentureScopeES", 9800), ("CloudMindLab", 8700), ("PagosDigitalES", 7600),
    ("RoboticaMilano", 6900), ("InsightForgeUK", 6100), ("LedgerWatch", 5400),
    ("SensorStreamIO", 4800), ("StartupFaroES", 4100), ("Analitica24", 3500),
    ("BancaFuturaIT", 2900), ("MakerDenBCN", 2300), ("GrowthTinker", 1700),
    ("PilotStageVC", 1100), ("CampusDataIT", 640), ("NodeGarage", 280),
    ("GhostFeed", 0), ("EchoDrafts", 0),
]

# anchor is mandatory in every post of the topic so the association
# stage always finds it in the vocabulary
TOPICS = {
    "fintech": {
        "anchor": "blockchain",
        "pool": ["payments", "banking", "ledger", "currency", "settlement",
                 "wallets", "lending", "fintech", "clearing"],
        "keywords": ["technology", "digital transformation", "digitization"],
        "count": 45, "pos": 18, "neg": 12,
    },
    "devices": {
        "anchor": "sensors",
        "pool": ["devices", "connectivity", "automation", "firmware",
                 "gateway", "telemetry", "embedded", "machines", "robots"],
        "keywords": ["iot", "internet of things", "#IoT"],
        "count": 43, "pos": 17, "neg": 11,
    },
    "data": {
        "anchor": "analytics",
        "pool": ["algorithms", "datasets", "models", "prediction",
                 "computing", "cloud", "neural", "pipelines", "dashboards"],
        "keywords": ["big data", "cognitive systems", "big data"],
        "count": 42, "pos": 16, "neg": 11,
    },
    "startup": {
        "anchor": "funding",
        "pool": ["founders", "venture", "accelerator", "investors",
                 "customers", "revenue", "scaling", "incubator", "prototype"],
        "keywords": ["startup", "entrepreneurship", "projects"],
        "count": 40, "pos": 14, "neg": 11,
    },
}

POSITIVE_WORDS = ["great", "excellent", "amazing", "love", "success", "brilliant",
                  "fantastic", "perfect", "enjoy", "proud", "inspiring", "happy",
                  "good", "win", "innovative"]
NEGATIVE_WORDS = ["terrible", "awful", "fail", "crisis", "risk", "problem",
                  "worst", "delay", "disappointing", "broken", "worried",
                  "poor", "bad", "sad", "failure"]

LEADS = ["Now published:", "New pilot:", "Field notes:", "Morning take:",
         "From today's session:", "Recap:", "Streaming now:", "Thread:",
         "Weekend read:", "ICYMI:"]
TAILS = ["More soon.", "Details inside.", "Thoughts below.", "Slides attached.",
         "Full story on the blog.", "Join us next week.", ""]

URLS = ["https://t.co/averylongid1", "http://blog.example.com/post?id=42",
        "https://example.org/reports/q3", "https://t.co/zx9YQ"]
MENTIONS = ["@kpmg", "@accenture", "@meetup_bcn", "@uni_milano", "@devrel_team"]
EMOTICONS = [":)", ":(", ";)", ":D", ":P"]
EMOJI = ["\U0001F680", "\U0001F4C8", "\U0001F525", "\U0001F4A1"]

ES_GLUE = [
    "Ya tenemos {words} para el {kw} en Barcelona",
    "Hoy hablamos de {words} y del {kw} con el equipo",
    "Nuestro plan de {kw} usa {words} desde marzo",
]
IT_GLUE = [
    "Oggi parliamo di {words} e del {kw} a Milano",
    "Il nostro progetto {kw} usa {words} da marzo",
    "Abbiamo presentato {words} per il {kw} al politecnico",
]

NOKW_TEXTS = [
    "Coffee, croissants, and a long roadmap review at the office today",
    "Our team offsite moved to Thursday, same venue as last year",
    "Reminder: the parking garage closes early on Friday",
    "Welcome aboard to our three new colleagues this month",
    "The cafeteria menu finally has a vegetarian option",
    "Back from holidays, inbox at five hundred and counting",
    "Office plants survived the summer, small victories",
    "New desks arrived, the third floor smells of cardboard",
    "Quarterly accounts review scheduled for next Monday morning",
    "The elevator is out of order again, take the stairs",
    "Season tickets for the local football club are on sale",
    "We repainted the meeting rooms over the weekend",
    "Lost and found: one umbrella, one scarf, three mugs",
    "The annual picnic is confirmed for the riverside park",
    "Printer toner arrived, the queue on floor two is clear",
    "Our podcast episode on team rituals is out",
    "Friday lunch will be catered, sign the sheet by Wednesday",
    "The library corner has new chairs and a kettle",
    "Badge readers get replaced at the main entrance tomorrow",
    "Heating maintenance tonight, bring a sweater tomorrow",
]


def load_wordfile(path: Path, comment: str) -> set[str]:
    words = set()
    for raw in path.read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith(comment):
            continue
        words.add(line.lower())
    return words


def sanity_check() -> tuple[set[str], set[str]]:
    pos = load_wordfile(DATA / "lexicon" / "positive-words.txt", ";")
    neg = load_wordfile(DATA / "lexicon" / "negative-words.txt", ";")
    stop = set()
    for lang in ("en", "es", "it"):
        stop |= load_wordfile(DATA / "stopwords" / f"{lang}.txt", "#")
    lexicon = pos | neg
    for t in TOPICS.values():
        for w in [t["anchor"], *t["pool"]]:
            assert w not in lexicon, f"topic word {w!r} is in the lexicon"
            assert w not in stop, f"topic word {w!r} is a stopword"
    for w in POSITIVE_WORDS:
        assert w in pos, f"{w!r} missing from positive lexicon"
    for w in NEGATIVE_WORDS:
        assert w in neg, f"{w!r} missing from negative lexicon"
    return pos, neg


def tokens_of(text: str) -> set[str]:
    return {t.lower() for t in re.findall(r"[A-Za-z]+", text)}


def topical_text(rng: random.Random, topic: dict, mood: str, lang: str) -> str:
    words = [topic["anchor"]] + rng.sample(topic["pool"], rng.randint(3, 5))
    rng.shuffle(words)
    kw = rng.choice(topic["keywords"])
    if lang == "es":
        base = rng.choice(ES_GLUE).format(words=" ".join(words), kw=kw)
    elif lang == "it":
        base = rng.choice(IT_GLUE).format(words=" ".join(words), kw=kw)
    else:
        mid = " ".join(words[:3]) + " for " + kw + " with " + " and ".join(words[3:])
        base = rng.choice(LEADS) + " " + mid
    if mood == "pos":
        picks = rng.sample(POSITIVE_WORDS, rng.choice([1, 2, 2, 3]))
        base += " " + " ".join(picks) + " results"
    elif mood == "neg":
        picks = rng.sample(NEGATIVE_WORDS, rng.choice([1, 2, 2, 3]))
        base += " " + " ".join(picks) + " ahead"
    tail = rng.choice(TAILS)
    if tail:
        base += " " + tail
    if rng.random() < 0.35:
        base += " " + rng.choice(URLS)
    if rng.random() < 0.40:
        base += " " + rng.choice(MENTIONS)
    if rng.random() < 0.50:
        base += " " + rng.choice(["2016", "2017", "50", "1000"])
    if rng.random() < 0.20 and lang == "en":
        base += " " + rng.choice(EMOTICONS)
    if rng.random() < 0.15:
        base += " " + rng.choice(EMOJI)
    return base


def ts_in_window(rng: random.Random) -> datetime:
    span = int((WINDOW_END - WINDOW_START).total_seconds())
    return WINDOW_START + timedelta(seconds=rng.randrange(span + 1))


def main() -> None:
    pos_lex, neg_lex = sanity_check()
    rng = random.Random(977003)

    slots: list[dict] = []
    for name, topic in TOPICS.items():
        moods = ["pos"] * topic["pos"] + ["neg"] * topic["neg"]
        moods += ["neu"] * (topic["count"] - len(moods))
        rng.shuffle(moods)
        for mood in moods:
            slots.append({"kind": "topical", "topic": name, "mood": mood})
    for _ in range(20):
        slots.append({"kind": "nokw"})
    for _ in range(6):
        slots.append({"kind": "out_before"})
    for _ in range(4):
        slots.append({"kind": "out_after"})
    rng.shuffle(slots)
    assert len(slots) == 200

    # spread the non-English posts over topical slots
    topical_idx = [i for i, s in enumerate(slots) if s["kind"] == "topical"]
    foreign = rng.sample(topical_idx, 25)
    for j, i in enumerate(foreign):
        slots[i]["lang"] = "es" if j < 15 else "it"

    nokw_iter = iter(NOKW_TEXTS)
    rows = []
    quote_posts = rng.sample(range(200), 6)
    newline_posts = rng.sample([i for i in range(200) if i not in quote_posts], 3)
    for i, slot in enumerate(slots):
        author, followers = rng.choice(AUTHORS)
        lang = slot.get("lang", "en")
        if slot["kind"] == "topical":
            topic = TOPICS[slot["topic"]]
            text = topical_text(rng, topic, slot["mood"], lang)
            ts = ts_in_window(rng)
            if slot["mood"] == "neu":
                bad = tokens_of(text) & (pos_lex | neg_lex)
                assert not bad, f"neutral post {i} contains lexicon words {bad}"
        elif slot["kind"] == "nokw":
            text = next(nokw_iter)
            ts = ts_in_window(rng)
        else:
            topic = TOPICS[rng.choice(list(TOPICS))]
            text = topical_text(rng, topic, rng.choice(["pos", "neg", "neu"]), "en")
            if slot["kind"] == "out_before":
                ts = WINDOW_START - timedelta(days=rng.randint(1, 120), hours=rng.randint(0, 23))
            else:
                ts = WINDOW_END + timedelta(seconds=1) + timedelta(days=rng.randint(0, 90))
        if i in quote_posts:
            text += ' as "beta" users put it'
        if i in newline_posts:
            text += "\nSecond line with the venue address"
        retweets = rng.choice([0, rng.randint(0, 40), rng.randint(0, 350)])
        favorites = rng.choice([0, rng.randint(0, 60), rng.randint(0, 500)])
        rows.append({
            "id": f"p{i + 1:03d}",
            "author": author,
            "followers": followers,
            "retweets": retweets,
            "favorites": favorites,
            "timestamp": ts.isoformat().replace("+00:00", "Z"),
            "text": text,
            "language_hint": lang if lang != "en" else "",
        })

    # pin the window edges: first topical post lands exactly on each bound
    edge = [r for r in rows if not r["timestamp"].startswith(("2015", "2016-01", "2016-02", "2017-03", "2017-04", "2017-05"))]
    edge[0]["timestamp"] = "2016-03-01T00:00:00Z"
    edge[1]["timestamp"] = "2017-02-28T23:59:59Z"

    OUT_DIR.mkdir(parents=True, exist_ok=True)
    with open(OUT_DIR / "posts.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(
            fh,
            fieldnames=["id", "author", "followers", "retweets", "favorites",
                        "timestamp", "text", "language_hint"],
            lineterminator="\n",
        )
        w.writeheader()
        w.writerows(rows)

    config = """\
# Demonstration pipeline configuration for the bundled sample corpus.
# Pass --output-dir on the command line (or copy this file and set
# output_dir here) before running.
input = posts.csv
date_start = 2016-03-01
date_end = 2017-02-28
max_sparsity = 0.95
association_anchors = blockchain, sensors, analytics, funding
min_correlation = 0.25
freq_top_n = 25
rank_top_n = 10
rank_aggregation = mean
lda_topics = 4
lda_iterations = 400
lda_burn_in = 100
seed = 20160301
"""
    (OUT_DIR / "config.txt").write_text(config, encoding="utf-8")

    kinds = {}
    for s in slots:
        kinds[s["kind"]] = kinds.get(s["kind"], 0) + 1
    print(f"wrote {len(rows)} posts to {OUT_DIR / 'posts.csv'}; slot mix {kinds}")


if __name__ == "__main__":
    main()
