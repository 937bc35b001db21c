"""postmine: a deterministic text-mining toolkit for social-media post
corpora.

The library covers corpus loading and filtering, author influence
ranking, multilingual text preprocessing, term-document matrices with
frequency and association analyses, lexicon polarity scoring,
hierarchical term clustering, and LDA topic modeling with a
topic-polarity overlay. The `postmine` command composes everything into
a seeded, reproducible pipeline.
"""

__version__ = "0.1.0"

from .corpus import (
    Corpus,
    KeywordSet,
    Post,
    default_keyword_sets,
    filter_by_date,
    filter_by_keywords,
    load_corpus,
    load_keyword_sets,
)
from .errors import (
    ConfigError,
    DependencyError,
    InsufficientDataError,
    ParseError,
    PostmineError,
    StageError,
    UndefinedIndicatorError,
    ValidationError,
)
from .metrics import indicator, rank_influencers, weighting
from .nlp import StopwordLists, TokenStream, clean_text, normalize, preprocess, tokenize
from .sentiment import SentimentLexicon, default_lexicon, load_lexicon, polarity
from .tdm import TermDocumentMatrix, associations, build_tdm, term_frequencies
from .cluster import Dendrogram, DistanceMatrix, agglomerate, cut, distance_matrix
from .topics import LdaConfig, TopicModel, fit_lda, top_terms, topic_polarity

__all__ = [
    "__version__",
    "Corpus",
    "KeywordSet",
    "Post",
    "default_keyword_sets",
    "filter_by_date",
    "filter_by_keywords",
    "load_corpus",
    "load_keyword_sets",
    "ConfigError",
    "DependencyError",
    "InsufficientDataError",
    "ParseError",
    "PostmineError",
    "StageError",
    "UndefinedIndicatorError",
    "ValidationError",
    "indicator",
    "rank_influencers",
    "weighting",
    "StopwordLists",
    "TokenStream",
    "clean_text",
    "normalize",
    "preprocess",
    "tokenize",
    "SentimentLexicon",
    "default_lexicon",
    "load_lexicon",
    "polarity",
    "TermDocumentMatrix",
    "associations",
    "build_tdm",
    "term_frequencies",
    "Dendrogram",
    "DistanceMatrix",
    "agglomerate",
    "cut",
    "distance_matrix",
    "LdaConfig",
    "TopicModel",
    "fit_lda",
    "top_terms",
    "topic_polarity",
]
