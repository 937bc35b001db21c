"""Command-line front end.

    postmine run       full pipeline (all eleven stages)
    postmine ingest    load + validate the input corpus
    postmine filter    date and keyword filters over the ingested corpus
    postmine rank      author influence ranking
    postmine freq      term-document matrix + term frequencies
    postmine assoc     term associations for the configured anchors
    postmine sentiment polarity per post + distribution
    postmine cluster   term dendrogram
    postmine topics    LDA + topic-polarity overlay (needs `sentiment`)

Every subcommand takes --config and the shared overrides --seed,
--output-dir, --verbose; flags beat file values. Subcommands after
`ingest`/`filter` read the artifacts earlier stages left in the output
directory and fail with a dependency error naming the missing file.

Exit codes: 0 success, 1 configuration/validation error, 2 stage error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .corpus import (
    default_keyword_sets,
    filter_by_date,
    filter_by_keywords,
    load_corpus,
    load_keyword_sets,
    write_corpus,
    write_lineage,
)
from .errors import ConfigError, DependencyError, PostmineError, StageError
from .metrics import influence_records, rank_influencers, write_ranking, write_skipped
from .nlp import StopwordLists, preprocess_corpus, write_token_streams
from .pipeline import (
    ASSIGNMENTS_CSV,
    ASSOCIATIONS_CSV,
    FIGURES_DIR,
    FILTERED_CSV,
    FREQUENCIES_CSV,
    LINEAGE_CSV,
    LOADED_CSV,
    MERGES_CSV,
    NEWICK_FILE,
    PHI_CSV,
    POLARITY_CSV,
    POLARITY_SUMMARY_CSV,
    RANKING_CSV,
    SKIPPED_CSV,
    TDM_CSV,
    THETA_CSV,
    TOKENS_CSV,
    TOPIC_POLARITY_CSV,
    TOPIC_TERMS_CSV,
    TOPIC_TERMS_PER_TOPIC,
    PipelineConfig,
    load_config,
    run_pipeline,
    stage_seed,
    validate_config,
)
from .sentiment import corpus_polarity, default_lexicon, load_lexicon, read_polarity, write_distribution, write_polarity
from .tdm import associations, build_tdm, remove_sparse_terms, term_frequencies, write_associations, write_frequencies, write_tdm
from .cluster import agglomerate, distance_matrix, write_merges, write_newick
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


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems as ConfigError (exit 1)."""

    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="postmine", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("run", "run the full pipeline"),
        ("ingest", "load and validate the input corpus"),
        ("filter", "apply date and keyword filters"),
        ("rank", "rank authors by influence indicator"),
        ("freq", "term-document matrix and term frequencies"),
        ("assoc", "term associations for configured anchors"),
        ("sentiment", "lexicon polarity per post"),
        ("cluster", "hierarchical term clustering"),
        ("topics", "LDA topics and topic-polarity overlay"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="path to the key=value config file")
        p.add_argument("--seed", type=int, default=None, help="override the config seed")
        p.add_argument("--output-dir", default=None, help="override the config output directory")
        p.add_argument("-v", "--verbose", action="store_true", help="log stage progress")
    return parser


def _require(cfg: PipelineConfig, artifact: str):
    path = cfg.output_dir / artifact
    if not path.is_file():
        raise DependencyError(artifact, hint=f"not found in {cfg.output_dir}, run earlier stages first")
    return path


def _load_filtered(cfg: PipelineConfig):
    return load_corpus(_require(cfg, FILTERED_CSV), "delimited")


def _streams_for(cfg: PipelineConfig, corpus):
    return preprocess_corpus(corpus, StopwordLists.default(), cfg.stopword_languages)


def _figures_dir(cfg: PipelineConfig):
    d = cfg.output_dir / FIGURES_DIR
    d.mkdir(parents=True, exist_ok=True)
    return d


def _cmd_run(cfg: PipelineConfig) -> None:
    manifest = run_pipeline(cfg)
    log.info("retained %s of %s posts (ratio %s)", manifest.filtered, manifest.loaded, manifest.retained_ratio)


def _cmd_ingest(cfg: PipelineConfig) -> None:
    corpus = load_corpus(cfg.input, cfg.input_format)
    write_corpus(cfg.output_dir / LOADED_CSV, corpus)
    write_lineage(cfg.output_dir / LINEAGE_CSV, corpus)
    log.info("ingested %d posts", len(corpus))


def _cmd_filter(cfg: PipelineConfig) -> None:
    corpus = load_corpus(_require(cfg, LOADED_CSV), "delimited")
    corpus = filter_by_date(corpus, cfg.date_start, cfg.date_end)
    sets = load_keyword_sets(cfg.keywords) if cfg.keywords else default_keyword_sets()
    corpus = filter_by_keywords(corpus, sets)
    write_corpus(cfg.output_dir / FILTERED_CSV, corpus)
    write_lineage(cfg.output_dir / LINEAGE_CSV, corpus)
    log.info("retained %d posts", len(corpus))


def _cmd_rank(cfg: PipelineConfig) -> None:
    corpus = _load_filtered(cfg)
    _, skipped = influence_records(corpus)
    scores = rank_influencers(corpus, cfg.rank_top_n, cfg.rank_aggregation)
    write_ranking(cfg.output_dir / RANKING_CSV, scores)
    write_skipped(cfg.output_dir / SKIPPED_CSV, skipped)
    log.info("ranked %d authors (%d posts skipped)", len(scores), len(skipped))


def _cmd_freq(cfg: PipelineConfig) -> None:
    streams = _streams_for(cfg, _load_filtered(cfg))
    write_token_streams(cfg.output_dir / TOKENS_CSV, streams)
    m = build_tdm(streams)
    write_tdm(cfg.output_dir / TDM_CSV, m)
    freqs = term_frequencies(m, cfg.freq_top_n)
    write_frequencies(cfg.output_dir / FREQUENCIES_CSV, freqs)
    if cfg.figures:
        from . import report

        report.save_frequency_chart(_figures_dir(cfg) / "term_frequencies.png", freqs)
    log.info("matrix %d terms x %d documents", len(m.vocabulary), len(m.doc_ids))


def _cmd_assoc(cfg: PipelineConfig) -> None:
    m = build_tdm(_streams_for(cfg, _load_filtered(cfg)))
    lists = [associations(m, a, cfg.min_correlation) for a in cfg.association_anchors]
    write_associations(cfg.output_dir / ASSOCIATIONS_CSV, lists)
    log.info("wrote associations for %d anchors", len(lists))


def _cmd_sentiment(cfg: PipelineConfig) -> None:
    streams = _streams_for(cfg, _load_filtered(cfg))
    if cfg.lexicon_positive:
        lexicon = load_lexicon(cfg.lexicon_positive, cfg.lexicon_negative)
    else:
        lexicon = default_lexicon()
    results, distribution = corpus_polarity(streams, lexicon)
    write_polarity(cfg.output_dir / POLARITY_CSV, results)
    write_distribution(cfg.output_dir / POLARITY_SUMMARY_CSV, distribution)
    if cfg.figures:
        from . import report

        report.save_polarity_chart(_figures_dir(cfg) / "polarity_distribution.png", distribution)
    log.info("polarity distribution: %s", distribution)


def _cmd_cluster(cfg: PipelineConfig) -> None:
    m = remove_sparse_terms(build_tdm(_streams_for(cfg, _load_filtered(cfg))), cfg.max_sparsity)
    dendro = agglomerate(distance_matrix(m, cfg.distance_metric), cfg.linkage)
    write_merges(cfg.output_dir / MERGES_CSV, dendro)
    write_newick(cfg.output_dir / NEWICK_FILE, dendro)
    if cfg.figures:
        from . import report

        report.save_dendrogram_chart(_figures_dir(cfg) / "dendrogram.png", dendro)
    log.info("clustered %d terms", len(dendro.labels))


def _cmd_topics(cfg: PipelineConfig) -> None:
    corpus = _load_filtered(cfg)
    polarity_path = _require(cfg, POLARITY_CSV)
    streams = _streams_for(cfg, corpus)
    lda_cfg = LdaConfig(
        k=cfg.lda_topics,
        alpha=cfg.lda_alpha,
        beta=cfg.lda_beta,
        iterations=cfg.lda_iterations,
        burn_in=cfg.lda_burn_in,
        seed=stage_seed(cfg.seed, "lda"),
    )
    model = fit_lda(streams, lda_cfg)
    write_phi(cfg.output_dir / PHI_CSV, model)
    write_theta(cfg.output_dir / THETA_CSV, model)
    write_assignments(cfg.output_dir / ASSIGNMENTS_CSV, streams, model)
    write_topic_terms(cfg.output_dir / TOPIC_TERMS_CSV, model, TOPIC_TERMS_PER_TOPIC)
    tp = topic_polarity(model, read_polarity(polarity_path))
    write_topic_polarity(cfg.output_dir / TOPIC_POLARITY_CSV, tp)
    if cfg.figures:
        from . import report

        report.save_topic_polarity_chart(_figures_dir(cfg) / "topic_polarity.png", tp)
    log.info("fitted %d topics over %d documents", model.k, len(model.doc_ids))


_COMMANDS = {
    "run": _cmd_run,
    "ingest": _cmd_ingest,
    "filter": _cmd_filter,
    "rank": _cmd_rank,
    "freq": _cmd_freq,
    "assoc": _cmd_assoc,
    "sentiment": _cmd_sentiment,
    "cluster": _cmd_cluster,
    "topics": _cmd_topics,
}


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(
            level=logging.INFO if args.verbose else logging.WARNING,
            format="%(levelname)s %(message)s",
            stream=sys.stderr,
        )
        cfg = load_config(args.config, seed=args.seed, output_dir=args.output_dir)
        validate_config(cfg)
        handler = _COMMANDS[args.command]
        try:
            handler(cfg)
        except PostmineError:
            raise
        except Exception as exc:
            raise StageError(args.command, exc) from exc
    except ConfigError as exc:
        print(f"postmine: configuration error: {exc}", file=sys.stderr)
        return 1
    except PostmineError as exc:
        print(f"postmine: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
