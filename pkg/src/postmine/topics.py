"""LDA by collapsed Gibbs sampling, plus the topic-polarity overlay.

Per sweep every token's topic is resampled from the collapsed
conditional, proportional to

    (n_dk + alpha) * (n_kw + beta) / (n_k + V*beta)

with the token's own assignment removed from the counts. phi and theta
are the prior-smoothed estimates from the final state; averaging over
post-burn-in sweeps exists behind a config flag but is off by default
since label switching makes naive averaging across sweeps misleading.

All randomness comes from one seeded generator: the initial assignment
draw, then one uniform array per sweep. The sweep kernel itself draws
nothing, so the jitted and plain-Python engines walk identical random
streams and produce identical models bit for bit.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .errors import DependencyError, InsufficientDataError, ValidationError
from .nlp import TokenStream
from .sentiment import PolarityResult

ENGINES = ("auto", "jit", "python")


@dataclass(frozen=True)
class LdaConfig:
    k: int
    alpha: float | None = None   # None -> 50/k
    beta: float = 0.01
    iterations: int = 1000
    burn_in: int = 200
    seed: int = 0
    average_samples: bool = False
    check_counts: bool = False

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.alpha is None:
            object.__setattr__(self, "alpha", 50.0 / self.k)
        if self.alpha <= 0 or self.beta <= 0:
            raise ValueError("alpha and beta must be positive")
        if self.iterations < 1:
            raise ValueError("iterations must be positive")
        if not 0 <= self.burn_in < self.iterations:
            raise ValueError("burn_in must satisfy 0 <= burn_in < iterations")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True, eq=False)
class TopicModel:
    phi: np.ndarray                      # K x V, rows sum to 1
    theta: np.ndarray                    # D x K, rows sum to 1
    assignments: tuple[tuple[int, ...], ...]   # final-sweep topic per token, per doc
    config: LdaConfig
    vocabulary: tuple[str, ...]
    doc_ids: tuple[str, ...]

    @property
    def k(self) -> int:
        return self.phi.shape[0]


@dataclass(frozen=True)
class TopicPolarityRow:
    topic: int
    doc_count: int
    mean_score: float
    positive: int
    negative: int
    neutral: int


@dataclass(frozen=True)
class TopicPolarity:
    rows: tuple[TopicPolarityRow, ...]


def _sweep(z, doc_of, word_of, n_dk, n_kw, n_k, probs, alpha, beta, vbeta, uniforms):
    n_tokens = z.shape[0]
    k_topics = n_k.shape[0]
    for t in range(n_tokens):
        d = doc_of[t]
        w = word_of[t]
        k = z[t]
        n_dk[d, k] -= 1
        n_kw[k, w] -= 1
        n_k[k] -= 1
        total = 0.0
        for j in range(k_topics):
            p = (n_dk[d, j] + alpha) * (n_kw[j, w] + beta) / (n_k[j] + vbeta)
            probs[j] = p
            total += p
        u = uniforms[t] * total
        acc = 0.0
        new_k = k_topics - 1
        for j in range(k_topics):
            acc += probs[j]
            if acc > u:
                new_k = j
                break
        n_dk[d, new_k] += 1
        n_kw[new_k, w] += 1
        n_k[new_k] += 1
        z[t] = new_k


try:
    import numba

    _sweep_jit = numba.njit(cache=True)(_sweep)
except ImportError:  # pragma: no cover - numba is a declared dependency
    _sweep_jit = None


def _pick_sweep(engine: str):
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}, expected one of {ENGINES}")
    if engine == "python":
        return _sweep
    if _sweep_jit is None:
        if engine == "jit":
            raise DependencyError("numba", hint="install numba or use engine='python'")
        return _sweep
    return _sweep_jit


def fit_lda(streams: Sequence[TokenStream], cfg: LdaConfig, engine: str = "auto") -> TopicModel:
    """Run the collapsed Gibbs sampler. Deterministic given cfg.seed."""
    run = _pick_sweep(engine)
    vocabulary = tuple(sorted({tok for s in streams for tok in s.tokens}))
    index = {t: i for i, t in enumerate(vocabulary)}
    doc_ids = tuple(s.post_id for s in streams)
    lengths = [len(s) for s in streams]
    n_tokens = sum(lengths)
    if n_tokens == 0:
        raise InsufficientDataError("every document is empty, nothing to model")
    if cfg.k > n_tokens:
        raise ValueError(f"k={cfg.k} exceeds the total token count {n_tokens}")

    n_docs = len(streams)
    n_vocab = len(vocabulary)
    doc_of = np.empty(n_tokens, dtype=np.int64)
    word_of = np.empty(n_tokens, dtype=np.int64)
    pos = 0
    for d, s in enumerate(streams):
        for tok in s.tokens:
            doc_of[pos] = d
            word_of[pos] = index[tok]
            pos += 1

    rng = np.random.default_rng(cfg.seed)
    z = rng.integers(0, cfg.k, size=n_tokens, dtype=np.int64)
    n_dk = np.zeros((n_docs, cfg.k), dtype=np.int64)
    n_kw = np.zeros((cfg.k, n_vocab), dtype=np.int64)
    n_k = np.zeros(cfg.k, dtype=np.int64)
    for t in range(n_tokens):
        n_dk[doc_of[t], z[t]] += 1
        n_kw[z[t], word_of[t]] += 1
        n_k[z[t]] += 1

    probs = np.empty(cfg.k, dtype=np.float64)
    alpha = float(cfg.alpha)
    beta = float(cfg.beta)
    vbeta = n_vocab * beta
    length_col = np.asarray(lengths, dtype=np.float64)[:, None]
    phi_acc = theta_acc = None
    kept = 0
    for it in range(cfg.iterations):
        uniforms = rng.random(n_tokens)
        run(z, doc_of, word_of, n_dk, n_kw, n_k, probs, alpha, beta, vbeta, uniforms)
        if cfg.check_counts:
            _check_counts(n_dk, n_kw, n_k, lengths, it)
        if cfg.average_samples and it >= cfg.burn_in:
            phi_s = (n_kw + beta) / (n_k[:, None] + vbeta)
            theta_s = (n_dk + alpha) / (length_col + cfg.k * alpha)
            if phi_acc is None:
                phi_acc, theta_acc = phi_s, theta_s
            else:
                phi_acc = phi_acc + phi_s
                theta_acc = theta_acc + theta_s
            kept += 1

    if cfg.average_samples:
        phi = phi_acc / kept
        theta = theta_acc / kept
    else:
        phi = (n_kw + beta) / (n_k[:, None] + vbeta)
        theta = (n_dk + alpha) / (length_col + cfg.k * alpha)
    phi.setflags(write=False)
    theta.setflags(write=False)

    assignments = []
    pos = 0
    for length in lengths:
        assignments.append(tuple(int(t) for t in z[pos:pos + length]))
        pos += length
    return TopicModel(
        phi=phi,
        theta=theta,
        assignments=tuple(assignments),
        config=cfg,
        vocabulary=vocabulary,
        doc_ids=doc_ids,
    )


def _check_counts(n_dk, n_kw, n_k, lengths, sweep: int) -> None:
    if not np.array_equal(n_dk.sum(axis=1), np.asarray(lengths, dtype=np.int64)):
        raise ValidationError(f"sweep {sweep}: document-topic counts lost tokens")
    if not np.array_equal(n_kw.sum(axis=1), n_k):
        raise ValidationError(f"sweep {sweep}: topic-term counts disagree with topic totals")
    if np.any(n_dk < 0) or np.any(n_kw < 0) or np.any(n_k < 0):
        raise ValidationError(f"sweep {sweep}: negative count")


def top_terms(m: TopicModel, topic: int, n: int) -> list[tuple[str, float]]:
    """Top-n terms of one topic, by descending probability then term."""
    if not 0 <= topic < m.k:
        raise ValueError(f"topic index {topic} out of range for k={m.k}")
    if n < 1:
        raise ValueError("n must be a positive integer")
    row = m.phi[topic]
    ranked = sorted(zip(m.vocabulary, row), key=lambda e: (-e[1], e[0]))
    return [(term, float(p)) for term, p in ranked[:n]]


def dominant_topic(m: TopicModel, doc: int) -> int:
    """argmax of the document's theta row; ties go to the lowest index."""
    return int(np.argmax(m.theta[doc]))


def topic_polarity(
    m: TopicModel,
    polarities: Sequence[PolarityResult] | Mapping[str, PolarityResult],
) -> TopicPolarity:
    """Group documents by dominant topic and aggregate their polarity."""
    if isinstance(polarities, Mapping):
        by_id = dict(polarities)
    else:
        by_id = {r.post_id: r for r in polarities}
    missing = [d for d in m.doc_ids if d not in by_id]
    if missing:
        raise ValidationError(f"no polarity result for document(s): {', '.join(missing)}")

    counts = [0] * m.k
    score_sums = [0] * m.k
    labels = [{"positive": 0, "negative": 0, "neutral": 0} for _ in range(m.k)]
    for d, doc_id in enumerate(m.doc_ids):
        topic = dominant_topic(m, d)
        r = by_id[doc_id]
        counts[topic] += 1
        score_sums[topic] += r.score
        labels[topic][r.label] += 1
    rows = tuple(
        TopicPolarityRow(
            topic=k,
            doc_count=counts[k],
            mean_score=score_sums[k] / counts[k] if counts[k] else 0.0,
            positive=labels[k]["positive"],
            negative=labels[k]["negative"],
            neutral=labels[k]["neutral"],
        )
        for k in range(m.k)
    )
    return TopicPolarity(rows=rows)


def write_phi(path: str | Path, m: TopicModel) -> None:
    """K x V matrix, one row per topic, full-precision probabilities."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["topic", *m.vocabulary])
        for k in range(m.k):
            w.writerow([k, *(repr(float(p)) for p in m.phi[k])])


def write_theta(path: str | Path, m: TopicModel) -> None:
    """D x K matrix, one row per document, full-precision probabilities."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["doc_id", *(f"topic_{k}" for k in range(m.k))])
        for d, doc_id in enumerate(m.doc_ids):
            w.writerow([doc_id, *(repr(float(p)) for p in m.theta[d])])


def write_topic_terms(path: str | Path, m: TopicModel, n: int) -> None:
    """Report topic,term,probability (6 decimals) for each topic's top n."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["topic", "term", "probability"])
        for k in range(m.k):
            for term, p in top_terms(m, k, n):
                w.writerow([k, term, f"{p:.6f}"])


def write_topic_polarity(path: str | Path, tp: TopicPolarity) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["topic", "doc_count", "mean_score", "pos", "neg", "neutral"])
        for r in tp.rows:
            w.writerow(
                [r.topic, r.doc_count, f"{r.mean_score:.6f}", r.positive, r.negative, r.neutral]
            )


def write_assignments(path: str | Path, streams: Sequence[TokenStream], m: TopicModel) -> None:
    """Final-sweep token assignments: doc_id,position,term,topic."""
    if tuple(s.post_id for s in streams) != m.doc_ids:
        raise ValidationError("streams do not match the model's documents")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["doc_id", "position", "term", "topic"])
        for s, doc_topics in zip(streams, m.assignments):
            for pos, (term, topic) in enumerate(zip(s.tokens, doc_topics)):
                w.writerow([s.post_id, pos, term, topic])
