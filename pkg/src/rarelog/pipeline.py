"""End-to-end flow over log files, plus model persistence.

Training makes two streaming passes over the first ``n`` events: one to count
document frequencies and pick the vocabulary, one to accumulate the
per-class presence counts. Evaluation streams every event, skipping the
training prefix. Nothing proportional to corpus length is kept in memory.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence

import numpy as np

from .bayes import DEFAULT_ALPHA, NBModel, most_informative, posterior_scores, train_counts
from .evaluate import ConfusionMatrix, MetricsReport
from .features import FrequencyTable, select_vocabulary, vectorize_many
from .labels import ERROR, NON_ERROR, label_of
from .parser import LabeledEvent, read_events
from .tokens import TokenizerConfig, tokenize

__all__ = ["FORMAT_VERSION", "ModelFormatError", "LogClassifier",
           "train_from_files", "evaluate_files", "iter_predictions"]

FORMAT_NAME = "rarelog-bernoulli-nb"
FORMAT_VERSION = 1
CHUNK = 4096


class ModelFormatError(ValueError):
    pass


@dataclass(frozen=True)
class LogClassifier:
    """A trained model together with the tokenizer it was trained with."""

    model: NBModel
    tokenizer: TokenizerConfig = TokenizerConfig()

    def to_json(self) -> str:
        tok = self.tokenizer
        doc = {
            "format": FORMAT_NAME,
            "format_version": FORMAT_VERSION,
            "tokenizer": {
                "stop_words": sorted(tok.stop_words),
                "extra_token_chars": tok.extra_token_chars,
                "exclude_numbers": tok.exclude_numbers,
            },
            **self.model.to_dict(),
        }
        return json.dumps(doc, indent=1, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "LogClassifier":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ModelFormatError(f"model file is not valid JSON: {exc}") from exc
        if not isinstance(doc, dict) or doc.get("format") != FORMAT_NAME:
            raise ModelFormatError("not a rarelog model file")
        if doc.get("format_version") != FORMAT_VERSION:
            raise ModelFormatError(
                f"unsupported model format_version {doc.get('format_version')!r}, "
                f"expected {FORMAT_VERSION}")
        try:
            t = doc["tokenizer"]
            tok = TokenizerConfig(frozenset(t["stop_words"]), t["extra_token_chars"],
                                  t["exclude_numbers"])
            return cls(NBModel.from_dict(doc), tok)
        except (KeyError, TypeError, ValueError) as exc:
            raise ModelFormatError(f"corrupt model file: {exc!r}") from exc

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.to_json())

    @classmethod
    def load(cls, path) -> "LogClassifier":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(fh.read())

    def bag(self, ev: LabeledEvent):
        return tokenize(ev.event.content, self.tokenizer)

    def scores(self, events: Sequence[LabeledEvent]) -> np.ndarray:
        X = vectorize_many([self.bag(ev) for ev in events], self.model.vocabulary)
        return posterior_scores(self.model, X)


def _chunks(it, size=CHUNK):
    it = iter(it)
    while True:
        block = list(itertools.islice(it, size))
        if not block:
            return
        yield block


def _training_prefix(paths, n) -> Iterator[LabeledEvent]:
    seen = 0
    for _, ev in itertools.islice(read_events(paths), n):
        seen += 1
        yield ev
    if seen < n:
        raise ValueError(f"train size {n} exceeds the {seen} events in the input")


def train_from_files(paths: Sequence, n: int, p: int, q: float = 0.5,
                     alpha: float = DEFAULT_ALPHA,
                     tokenizer: TokenizerConfig = TokenizerConfig()) -> LogClassifier:
    """Train on the first ``n`` events of ``paths`` (read in the given order).

    The vocabulary is chosen from the training events only.
    """
    if n < 1:
        raise ValueError(f"train size must be >= 1, got {n}")
    if p < 1:
        raise ValueError(f"feature count must be >= 1, got {p}")
    if not 0 <= q <= 1:
        raise ValueError(f"prealloc fraction must be in [0, 1], got {q}")
    if not alpha > 0:
        raise ValueError(f"alpha must be > 0, got {alpha}")

    freqs = FrequencyTable()
    for ev in _training_prefix(paths, n):
        freqs.add(tokenize(ev.event.content, tokenizer), label_of(ev.is_error))
    vocab = select_vocabulary(freqs, p, q)

    present = np.zeros((len(vocab), 2), dtype=np.int64)
    counts = [0, 0]
    for block in _chunks(_training_prefix(paths, n)):
        X = vectorize_many([tokenize(ev.event.content, tokenizer) for ev in block], vocab)
        y = np.array([ev.is_error for ev in block])
        present[:, 0] += X[y].sum(axis=0)
        present[:, 1] += X[~y].sum(axis=0)
        counts[0] += int(y.sum())
        counts[1] += int((~y).sum())
    return LogClassifier(train_counts(vocab, present, counts, alpha), tokenizer)


def evaluate_files(clf: LogClassifier, paths: Sequence, top_k: int = 5,
                   test_cap: Optional[int] = None) -> MetricsReport:
    """Classify every event after the model's training prefix and score it.

    ``test_cap`` truncates the test set to its first ``test_cap`` events.
    """
    n = clf.model.train_size
    total = errors = 0
    cm = ConfusionMatrix()
    pending: List[LabeledEvent] = []

    def flush():
        nonlocal cm
        s = clf.scores(pending)
        pred = s[:, 0] > s[:, 1]
        act = np.array([ev.is_error for ev in pending])
        cm += ConfusionMatrix(int((act & pred).sum()), int((act & ~pred).sum()),
                              int((~act & pred).sum()), int((~act & ~pred).sum()))
        pending.clear()

    for _, ev in read_events(paths):
        total += 1
        errors += ev.is_error
        if total <= n or (test_cap is not None and total - n > test_cap):
            continue
        pending.append(ev)
        if len(pending) >= CHUNK:
            flush()
    if pending:
        flush()
    if cm.m == 0:
        raise ValueError(f"train size {n} leaves no test events "
                         f"(input has {total} events)")
    return MetricsReport(
        n_documents=total,
        p_features=len(clf.model.vocabulary),
        n_train=n,
        m_test=cm.m,
        n_errors_total=errors,
        matrix=cm,
        top_features=most_informative(clf.model, top_k),
    )


def iter_predictions(clf: LogClassifier, paths: Sequence) -> Iterator[str]:
    """One tab-separated line per event: file, line, label, log scores."""
    for block in _chunks(read_events(paths)):
        s = clf.scores([ev for _, ev in block])
        for (path, ev), (se, so) in zip(block, s):
            label = ERROR if se > so else NON_ERROR
            yield f"{path}\t{ev.event.source_line}\t{label}\t{float(se)!r}\t{float(so)!r}\n"
