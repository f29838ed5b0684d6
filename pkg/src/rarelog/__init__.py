"""Rare error event classification for semi-structured machine logs.

Bernoulli naive Bayes over token-presence features, with a share of the
feature budget preallocated to tokens of the rare error class.
"""

__version__ = "0.1.0"

from .labels import CLASSES, ERROR, NON_ERROR
from .parser import LabeledEvent, LogEvent, Timestamp, label_event, parse_line, parse_stream
from .tokens import TokenizerConfig, tokenize
from .features import FrequencyTable, Vocabulary, count_frequencies, select_vocabulary, vectorize
from .bayes import NBModel, classify, classify_many, most_informative, posterior_scores, train
from .evaluate import ConfusionMatrix, MetricsReport, confusion, metrics, render_report, split_time_consecutive
from .synth import GeneratorSpec, generate
from .pipeline import LogClassifier, evaluate_files, train_from_files

__all__ = [
    "CLASSES", "ERROR", "NON_ERROR",
    "LabeledEvent", "LogEvent", "Timestamp", "label_event", "parse_line", "parse_stream",
    "TokenizerConfig", "tokenize",
    "FrequencyTable", "Vocabulary", "count_frequencies", "select_vocabulary", "vectorize",
    "NBModel", "classify", "classify_many", "most_informative", "posterior_scores", "train",
    "ConfusionMatrix", "MetricsReport", "confusion", "metrics", "render_report",
    "split_time_consecutive", "GeneratorSpec", "generate",
    "LogClassifier", "evaluate_files", "train_from_files",
]
