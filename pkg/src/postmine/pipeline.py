"""End-to-end pipeline: configuration, stage sequencing, run manifest.

The pipeline executes eleven stages in a fixed order:

    load, date_filter, keyword_filter, influence, preprocess, tdm,
    term_reports, sentiment, clustering, lda, topic_polarity

writing each module's export files into one output directory. A failing
stage removes everything written so far and surfaces as a StageError
carrying the stage name and original cause.

Configuration is a flat UTF-8 key=value file; '#' starts a comment (a
whole line, or trailing when preceded by whitespace). Relative paths are
resolved against the config file's directory. All randomness derives
from the single `seed` key: each stage that needs randomness gets its
own generator seeded with the first 8 bytes of sha256("<seed>:<stage>"),
so stages can be re-run in isolation and still reproduce.

manifest.json holds the config snapshot, per-stage counts and artifact
names, and the retained ratio (kept/loaded as an exact rational,
rendered to 4 decimals). Wall-clock numbers go to timings.json, which is
the single file that varies between otherwise identical runs.
"""

from __future__ import annotations

import hashlib
import json
import logging
import time
from dataclasses import dataclass, fields
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Callable

from . import __version__
from .cluster import (
    LINKAGES,
    METRICS,
    agglomerate,
    distance_matrix,
    write_merges,
    write_newick,
)
from .corpus import (
    INPUT_FORMATS,
    default_keyword_sets,
    filter_by_date,
    filter_by_keywords,
    load_corpus,
    load_keyword_sets,
    parse_rfc3339,
    write_corpus,
    write_lineage,
)
from .errors import ConfigError, StageError
from .metrics import (
    AGGREGATIONS,
    influence_records,
    format_fixed,
    rank_influencers,
    write_ranking,
    write_skipped,
)
from .nlp import BUNDLED_LANGUAGES, StopwordLists, normalize_token, preprocess_corpus, write_token_streams
from .sentiment import corpus_polarity, default_lexicon, load_lexicon, write_distribution, write_polarity
from .tdm import (
    associations,
    build_tdm,
    remove_sparse_terms,
    term_frequencies,
    write_associations,
    write_frequencies,
    write_tdm,
)
from .topics import (
    LdaConfig,
    fit_lda,
    topic_polarity,
    write_assignments,
    write_phi,
    write_theta,
    write_topic_polarity,
    write_topic_terms,
)

log = logging.getLogger(__name__)

STAGES = (
    "load",
    "date_filter",
    "keyword_filter",
    "influence",
    "preprocess",
    "tdm",
    "term_reports",
    "sentiment",
    "clustering",
    "lda",
    "topic_polarity",
)

# artifact file names inside the output directory
LOADED_CSV = "corpus_loaded.csv"
FILTERED_CSV = "corpus_filtered.csv"
LINEAGE_CSV = "lineage.csv"
RANKING_CSV = "ranking.csv"
SKIPPED_CSV = "ranking_skipped.csv"
TOKENS_CSV = "tokens.csv"
TDM_CSV = "tdm.csv"
FREQUENCIES_CSV = "frequencies.csv"
ASSOCIATIONS_CSV = "associations.csv"
POLARITY_CSV = "polarity.csv"
POLARITY_SUMMARY_CSV = "polarity_summary.csv"
MERGES_CSV = "dendrogram_merges.csv"
NEWICK_FILE = "dendrogram.nwk"
PHI_CSV = "phi.csv"
THETA_CSV = "theta.csv"
ASSIGNMENTS_CSV = "assignments.csv"
TOPIC_TERMS_CSV = "topic_terms.csv"
TOPIC_POLARITY_CSV = "topic_polarity.csv"
MANIFEST_JSON = "manifest.json"
TIMINGS_JSON = "timings.json"
FIGURES_DIR = "figures"

TOPIC_TERMS_PER_TOPIC = 10


@dataclass(frozen=True)
class PipelineConfig:
    input: Path
    output_dir: Path
    input_format: str = "delimited"
    date_start: datetime | None = None
    date_end: datetime | None = None
    keywords: Path | None = None          # None -> bundled default sets
    stopword_languages: tuple[str, ...] = BUNDLED_LANGUAGES
    lexicon_positive: Path | None = None  # None -> bundled lexicon
    lexicon_negative: Path | None = None
    max_sparsity: float = 0.99
    distance_metric: str = "euclidean"
    linkage: str = "complete"
    association_anchors: tuple[str, ...] = ()
    min_correlation: float = 0.25
    freq_top_n: int = 25
    rank_top_n: int = 10
    rank_aggregation: str = "mean"
    lda_topics: int = 4
    lda_alpha: float | None = None
    lda_beta: float = 0.01
    lda_iterations: int = 1000
    lda_burn_in: int = 200
    seed: int = 0
    figures: bool = True


@dataclass(frozen=True)
class StageRecord:
    name: str
    counts: dict[str, int]
    outputs: tuple[str, ...]


@dataclass(frozen=True)
class RunManifest:
    version: str
    seed: int
    config: dict[str, str]
    stages: tuple[StageRecord, ...]
    loaded: int
    filtered: int
    retained_ratio: str            # filtered/loaded to 4 decimals
    timings: dict[str, float]


_PATH_KEYS = ("input", "output_dir", "keywords", "lexicon_positive", "lexicon_negative")
_LIST_KEYS = ("stopword_languages", "association_anchors")
_INT_KEYS = ("freq_top_n", "rank_top_n", "lda_topics", "lda_iterations", "lda_burn_in", "seed")
_FLOAT_KEYS = ("max_sparsity", "min_correlation", "lda_alpha", "lda_beta")
_DATE_KEYS = ("date_start", "date_end")
_BOOL_VALUES = {
    "true": True, "yes": True, "on": True, "1": True,
    "false": False, "no": False, "off": False, "0": False,
}

CONFIG_KEYS = tuple(f.name for f in fields(PipelineConfig))


def _parse_config_date(key: str, value: str, line_no: int) -> datetime:
    # a bare date means the whole day: midnight for starts, end of day for ends
    try:
        if len(value) == 10:
            d = datetime.strptime(value, "%Y-%m-%d").replace(tzinfo=timezone.utc)
            if key == "date_end":
                d = d.replace(hour=23, minute=59, second=59, microsecond=999999)
            return d
        return parse_rfc3339(value)
    except Exception:
        raise ConfigError(f"line {line_no}: bad {key} value {value!r}") from None


def _strip_comment(raw: str) -> str:
    if raw.lstrip().startswith("#"):
        return ""
    for i, ch in enumerate(raw):
        if ch == "#" and i > 0 and raw[i - 1].isspace():
            return raw[:i]
    return raw


def load_config(
    path: str | Path, seed: int | None = None, output_dir: str | Path | None = None
) -> PipelineConfig:
    """Parse a key=value config file; optional arguments override the
    file's seed and output_dir (the flags-beat-file rule)."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    base = path.parent
    raw: dict[str, tuple[str, int]] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = _strip_comment(line).strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {line_no}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if key not in CONFIG_KEYS:
                raise ConfigError(f"line {line_no}: unknown key {key!r}")
            if key in raw:
                raise ConfigError(f"line {line_no}: duplicate key {key!r}")
            raw[key] = (value, line_no)

    kwargs: dict = {}
    for key, (value, line_no) in raw.items():
        if not value:
            continue  # empty value keeps the default
        if key in _PATH_KEYS:
            p = Path(value)
            kwargs[key] = p if p.is_absolute() else (base / p)
        elif key in _DATE_KEYS:
            kwargs[key] = _parse_config_date(key, value, line_no)
        elif key in _INT_KEYS:
            try:
                kwargs[key] = int(value)
            except ValueError:
                raise ConfigError(f"line {line_no}: {key} must be an integer, got {value!r}") from None
        elif key in _FLOAT_KEYS:
            try:
                kwargs[key] = float(value)
            except ValueError:
                raise ConfigError(f"line {line_no}: {key} must be a number, got {value!r}") from None
        elif key == "figures":
            flag = _BOOL_VALUES.get(value.lower())
            if flag is None:
                raise ConfigError(f"line {line_no}: figures must be true or false, got {value!r}")
            kwargs[key] = flag
        elif key == "stopword_languages":
            kwargs[key] = tuple(v.strip().lower() for v in value.split(",") if v.strip())
        elif key == "association_anchors":
            anchors = tuple(normalize_token(v.strip()) for v in value.split(",") if v.strip())
            if any(not a for a in anchors):
                raise ConfigError(f"line {line_no}: association anchor reduces to nothing")
            kwargs[key] = anchors
        else:
            kwargs[key] = value

    if seed is not None:
        kwargs["seed"] = seed
    if output_dir is not None:
        kwargs["output_dir"] = Path(output_dir)
    for required in ("input", "output_dir"):
        if required not in kwargs:
            raise ConfigError(f"missing required key {required!r}")
    return PipelineConfig(**kwargs)


def validate_config(cfg: PipelineConfig) -> None:
    """Full fail-fast validation; nothing is computed before this passes."""
    if not Path(cfg.input).is_file():
        raise ConfigError(f"input file not found: {cfg.input}")
    if cfg.input_format not in INPUT_FORMATS:
        raise ConfigError(f"input_format must be one of {INPUT_FORMATS}, got {cfg.input_format!r}")
    for key in ("keywords", "lexicon_positive", "lexicon_negative"):
        p = getattr(cfg, key)
        if p is not None and not Path(p).is_file():
            raise ConfigError(f"{key} file not found: {p}")
    if (cfg.lexicon_positive is None) != (cfg.lexicon_negative is None):
        raise ConfigError("lexicon_positive and lexicon_negative must be given together")
    if cfg.date_start and cfg.date_end and cfg.date_start > cfg.date_end:
        raise ConfigError("date_start is after date_end")
    if not cfg.stopword_languages:
        raise ConfigError("stopword_languages must name at least one language")
    unknown = [c for c in cfg.stopword_languages if c not in BUNDLED_LANGUAGES]
    if unknown:
        raise ConfigError(f"unknown stopword language(s): {', '.join(unknown)}")
    if not 0.0 < cfg.max_sparsity <= 1.0:
        raise ConfigError("max_sparsity must lie in (0, 1]")
    if cfg.distance_metric not in METRICS:
        raise ConfigError(f"distance_metric must be one of {METRICS}, got {cfg.distance_metric!r}")
    if cfg.linkage not in LINKAGES:
        raise ConfigError(f"linkage must be one of {LINKAGES}, got {cfg.linkage!r}")
    if cfg.linkage == "ward" and cfg.distance_metric != "euclidean":
        raise ConfigError("ward linkage requires distance_metric=euclidean")
    if not 0.0 <= cfg.min_correlation <= 1.0:
        raise ConfigError("min_correlation must lie in [0, 1]")
    if cfg.freq_top_n < 1 or cfg.rank_top_n < 1:
        raise ConfigError("freq_top_n and rank_top_n must be positive")
    if cfg.rank_aggregation not in AGGREGATIONS:
        raise ConfigError(f"rank_aggregation must be one of {AGGREGATIONS}, got {cfg.rank_aggregation!r}")
    try:
        LdaConfig(
            k=cfg.lda_topics,
            alpha=cfg.lda_alpha,
            beta=cfg.lda_beta,
            iterations=cfg.lda_iterations,
            burn_in=cfg.lda_burn_in,
            seed=abs(cfg.seed) % 2**64,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if not 0 <= cfg.seed < 2**64:
        raise ConfigError("seed must be an unsigned 64-bit integer")
    try:
        Path(cfg.output_dir).mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory {cfg.output_dir}: {exc}") from None


def stage_seed(seed: int, stage: str) -> int:
    """Derive a stage-local 64-bit seed from the run seed."""
    digest = hashlib.sha256(f"{seed}:{stage}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def config_snapshot(cfg: PipelineConfig) -> dict[str, str]:
    """Stringly-typed view of every config field, for the manifest."""
    snap: dict[str, str] = {}
    for f in fields(cfg):
        value = getattr(cfg, f.name)
        if value is None:
            snap[f.name] = ""
        elif isinstance(value, bool):
            snap[f.name] = "true" if value else "false"
        elif isinstance(value, tuple):
            snap[f.name] = ",".join(str(v) for v in value)
        elif isinstance(value, datetime):
            snap[f.name] = value.isoformat()
        else:
            snap[f.name] = str(value)
    return snap


def write_manifest(path: str | Path, m: RunManifest) -> None:
    doc = {
        "version": m.version,
        "seed": m.seed,
        "config": m.config,
        "stages": [
            {"name": s.name, "counts": s.counts, "outputs": list(s.outputs)} for s in m.stages
        ],
        "retained": {
            "loaded": m.loaded,
            "filtered": m.filtered,
            "ratio": m.retained_ratio,
        },
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_timings(path: str | Path, m: RunManifest) -> None:
    doc = {"stages": m.timings, "total": sum(m.timings.values())}
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


class _Tracker:
    """Remembers written artifacts so a failed run can clean up."""

    def __init__(self, out_dir: Path):
        self.out_dir = out_dir
        self.written: list[Path] = []

    def path(self, name: str) -> Path:
        p = self.out_dir / name
        self.written.append(p)
        return p

    def cleanup(self) -> None:
        for p in reversed(self.written):
            try:
                if p.is_file():
                    p.unlink()
            except OSError:  # pragma: no cover - best effort
                pass


def run_pipeline(cfg: PipelineConfig) -> RunManifest:
    """Execute all stages; returns the manifest (also written to disk)."""
    validate_config(cfg)
    out_dir = Path(cfg.output_dir)
    figures_dir = out_dir / FIGURES_DIR
    if cfg.figures:
        figures_dir.mkdir(parents=True, exist_ok=True)

    tracker = _Tracker(out_dir)
    timings: dict[str, float] = {}
    records: list[StageRecord] = []
    state: dict = {}

    def run_stage(name: str, fn: Callable[[], tuple[dict[str, int], list[str]]]) -> None:
        log.info("stage %s", name)
        t0 = time.perf_counter()
        try:
            counts, outputs = fn()
        except Exception as exc:
            tracker.cleanup()
            raise StageError(name, exc) from exc
        timings[name] = time.perf_counter() - t0
        records.append(StageRecord(name=name, counts=counts, outputs=tuple(outputs)))

    def fig_path(name: str) -> Path:
        return tracker.path(f"{FIGURES_DIR}/{name}")

    def stage_load():
        corpus = load_corpus(cfg.input, cfg.input_format)
        state["corpus"] = corpus
        state["loaded"] = len(corpus)
        write_corpus(tracker.path(LOADED_CSV), corpus)
        return {"posts": len(corpus)}, [LOADED_CSV]

    def stage_date_filter():
        corpus = filter_by_date(state["corpus"], cfg.date_start, cfg.date_end)
        before = len(state["corpus"])
        state["corpus"] = corpus
        return {"before": before, "after": len(corpus)}, []

    def stage_keyword_filter():
        sets = load_keyword_sets(cfg.keywords) if cfg.keywords else default_keyword_sets()
        corpus = filter_by_keywords(state["corpus"], sets)
        before = len(state["corpus"])
        state["corpus"] = corpus
        write_corpus(tracker.path(FILTERED_CSV), corpus)
        write_lineage(tracker.path(LINEAGE_CSV), corpus)
        return {"before": before, "after": len(corpus)}, [FILTERED_CSV, LINEAGE_CSV]

    def stage_influence():
        corpus = state["corpus"]
        _, skipped = influence_records(corpus)
        scores = rank_influencers(corpus, cfg.rank_top_n, cfg.rank_aggregation)
        write_ranking(tracker.path(RANKING_CSV), scores)
        write_skipped(tracker.path(SKIPPED_CSV), skipped)
        return (
            {"authors_ranked": len(scores), "skipped_posts": len(skipped)},
            [RANKING_CSV, SKIPPED_CSV],
        )

    def stage_preprocess():
        stopwords = StopwordLists.default()
        streams = preprocess_corpus(state["corpus"], stopwords, cfg.stopword_languages)
        state["streams"] = streams
        write_token_streams(tracker.path(TOKENS_CSV), streams)
        return (
            {"documents": len(streams), "tokens": sum(len(s) for s in streams)},
            [TOKENS_CSV],
        )

    def stage_tdm():
        m = build_tdm(state["streams"])
        state["tdm"] = m
        write_tdm(tracker.path(TDM_CSV), m)
        return (
            {"terms": len(m.vocabulary), "documents": len(m.doc_ids), "mass": m.total_mass},
            [TDM_CSV],
        )

    def stage_term_reports():
        m = state["tdm"]
        freqs = term_frequencies(m, cfg.freq_top_n)
        write_frequencies(tracker.path(FREQUENCIES_CSV), freqs)
        lists = [associations(m, a, cfg.min_correlation) for a in cfg.association_anchors]
        write_associations(tracker.path(ASSOCIATIONS_CSV), lists)
        outputs = [FREQUENCIES_CSV, ASSOCIATIONS_CSV]
        if cfg.figures:
            from . import report

            report.save_frequency_chart(fig_path("term_frequencies.png"), freqs)
            outputs.append(f"{FIGURES_DIR}/term_frequencies.png")
        return {"terms_reported": len(freqs), "anchors": len(lists)}, outputs

    def stage_sentiment():
        if cfg.lexicon_positive:
            lexicon = load_lexicon(cfg.lexicon_positive, cfg.lexicon_negative)
        else:
            lexicon = default_lexicon()
        results, distribution = corpus_polarity(state["streams"], lexicon)
        state["polarities"] = results
        write_polarity(tracker.path(POLARITY_CSV), results)
        write_distribution(tracker.path(POLARITY_SUMMARY_CSV), distribution)
        outputs = [POLARITY_CSV, POLARITY_SUMMARY_CSV]
        if cfg.figures:
            from . import report

            report.save_polarity_chart(fig_path("polarity_distribution.png"), distribution)
            outputs.append(f"{FIGURES_DIR}/polarity_distribution.png")
        return dict(distribution), outputs

    def stage_clustering():
        reduced = remove_sparse_terms(state["tdm"], cfg.max_sparsity)
        dm = distance_matrix(reduced, cfg.distance_metric)
        dendro = agglomerate(dm, cfg.linkage)
        write_merges(tracker.path(MERGES_CSV), dendro)
        write_newick(tracker.path(NEWICK_FILE), dendro)
        outputs = [MERGES_CSV, NEWICK_FILE]
        if cfg.figures:
            from . import report

            report.save_dendrogram_chart(fig_path("dendrogram.png"), dendro)
            outputs.append(f"{FIGURES_DIR}/dendrogram.png")
        return {"terms_clustered": len(dendro.labels)}, outputs

    def stage_lda():
        lda_cfg = LdaConfig(
            k=cfg.lda_topics,
            alpha=cfg.lda_alpha,
            beta=cfg.lda_beta,
            iterations=cfg.lda_iterations,
            burn_in=cfg.lda_burn_in,
            seed=stage_seed(cfg.seed, "lda"),
        )
        model = fit_lda(state["streams"], lda_cfg)
        state["model"] = model
        write_phi(tracker.path(PHI_CSV), model)
        write_theta(tracker.path(THETA_CSV), model)
        write_assignments(tracker.path(ASSIGNMENTS_CSV), state["streams"], model)
        write_topic_terms(tracker.path(TOPIC_TERMS_CSV), model, TOPIC_TERMS_PER_TOPIC)
        return (
            {"topics": model.k, "tokens": sum(len(s) for s in state["streams"])},
            [PHI_CSV, THETA_CSV, ASSIGNMENTS_CSV, TOPIC_TERMS_CSV],
        )

    def stage_topic_polarity():
        tp = topic_polarity(state["model"], state["polarities"])
        write_topic_polarity(tracker.path(TOPIC_POLARITY_CSV), tp)
        outputs = [TOPIC_POLARITY_CSV]
        if cfg.figures:
            from . import report

            report.save_topic_polarity_chart(fig_path("topic_polarity.png"), tp)
            outputs.append(f"{FIGURES_DIR}/topic_polarity.png")
        return {"documents": len(state["model"].doc_ids)}, outputs

    bodies = {
        "load": stage_load,
        "date_filter": stage_date_filter,
        "keyword_filter": stage_keyword_filter,
        "influence": stage_influence,
        "preprocess": stage_preprocess,
        "tdm": stage_tdm,
        "term_reports": stage_term_reports,
        "sentiment": stage_sentiment,
        "clustering": stage_clustering,
        "lda": stage_lda,
        "topic_polarity": stage_topic_polarity,
    }
    for name in STAGES:
        run_stage(name, bodies[name])

    loaded = state["loaded"]
    filtered = len(state["corpus"])
    manifest = RunManifest(
        version=__version__,
        seed=cfg.seed,
        config=config_snapshot(cfg),
        stages=tuple(records),
        loaded=loaded,
        filtered=filtered,
        retained_ratio=format_fixed(Fraction(filtered, loaded), 4),
        timings=timings,
    )
    write_manifest(out_dir / MANIFEST_JSON, manifest)
    write_timings(out_dir / TIMINGS_JSON, manifest)
    return manifest
