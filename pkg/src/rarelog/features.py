"""Vocabulary selection with rare-class preallocation, and vectorization.

When one class is rare, a plain top-``p`` frequency cut fills every slot with
tokens of the majority class. :func:`select_vocabulary` first reserves up to
``ceil(q * p)`` slots for the most frequent tokens of error messages, then
fills the rest by overall frequency.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, Sequence, Tuple

import numpy as np

from .labels import CLASSES, ERROR

__all__ = [
    "FrequencyTable",
    "Vocabulary",
    "count_frequencies",
    "select_vocabulary",
    "vectorize",
    "vectorize_many",
]


@dataclass
class FrequencyTable:
    """Document frequencies, overall and per class."""

    overall: Counter = field(default_factory=Counter)
    per_class: Dict[str, Counter] = field(
        default_factory=lambda: {c: Counter() for c in CLASSES})
    documents: int = 0

    def add(self, bag: Iterable[str], label: str) -> None:
        bag = set(bag)
        self.overall.update(bag)
        self.per_class[label].update(bag)
        self.documents += 1

    def merge(self, other: "FrequencyTable") -> "FrequencyTable":
        out = FrequencyTable()
        for t in (self, other):
            out.overall.update(t.overall)
            for c in CLASSES:
                out.per_class[c].update(t.per_class[c])
            out.documents += t.documents
        return out


def count_frequencies(labeled_bags: Iterable[Tuple[Iterable[str], str]]) -> FrequencyTable:
    """Count, for every token, how many messages contain it."""
    table = FrequencyTable()
    for bag, label in labeled_bags:
        table.add(bag, label)
    if table.documents == 0:
        raise ValueError("no training data")
    return table


@dataclass(frozen=True)
class Vocabulary:
    tokens: Tuple[str, ...]
    prealloc_count: int = 0
    p: int = 0
    q: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        if len(set(self.tokens)) != len(self.tokens):
            raise ValueError("duplicate vocabulary tokens")
        object.__setattr__(self, "_index",
                           {t: i for i, t in enumerate(self.tokens)})

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def index(self) -> Dict[str, int]:
        return self._index

    @property
    def short(self) -> bool:
        """True when fewer than ``p`` distinct tokens were available."""
        return len(self.tokens) < self.p


def _ranked(counts: Counter):
    return sorted((t for t, n in counts.items() if n > 0),
                  key=lambda t: (-counts[t], t))


def quota(p: int, q: float) -> int:
    # guard against q * p landing a hair above an integer, e.g. 0.07 * 100
    return min(p, math.ceil(q * p - 1e-9))


def select_vocabulary(freqs: FrequencyTable, p: int, q: float = 0.5) -> Vocabulary:
    """Pick at most ``p`` tokens, reserving ``ceil(q * p)`` for the error class.

    Ties in frequency are broken by ascending token so the result never
    depends on dictionary iteration order.
    """
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    if not 0 <= q <= 1:
        raise ValueError(f"q must be in [0, 1], got {q}")
    chosen = _ranked(freqs.per_class[ERROR])[:quota(p, q)]
    prealloc = len(chosen)
    seen = set(chosen)
    for tok in _ranked(freqs.overall):
        if len(chosen) >= p:
            break
        if tok not in seen:
            chosen.append(tok)
            seen.add(tok)
    return Vocabulary(tuple(chosen), prealloc, p, q)


def vectorize(bag: Iterable[str], vocab: Vocabulary) -> np.ndarray:
    """Boolean presence vector over the vocabulary; unknown tokens ignored."""
    vec = np.zeros(len(vocab), dtype=bool)
    index = vocab.index
    for tok in bag:
        k = index.get(tok)
        if k is not None:
            vec[k] = True
    return vec


def vectorize_many(bags: Sequence[Iterable[str]], vocab: Vocabulary) -> np.ndarray:
    mat = np.zeros((len(bags), len(vocab)), dtype=bool)
    index = vocab.index
    for i, bag in enumerate(bags):
        cols = [index[t] for t in bag if t in index]
        mat[i, cols] = True
    return mat
