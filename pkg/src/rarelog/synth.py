"""Seeded synthetic log corpora with ground-truth labels.

Randomness comes exclusively from NumPy's ``PCG64`` bit generator
(``numpy.random.Generator(PCG64(seed))``), whose stream is fixed across
platforms, so a seed reproduces a corpus byte for byte.

The default token pools are laid out so that feature preallocation matters:

* error messages carry 20 error-only tokens, each present with probability
  0.9, so the classes are separable;
* every message draws 4-5 tokens uniformly from 300 shared noise tokens, and
  non-error messages carry 200 moderately common non-error tokens plus a
  long tail of rare ones.

With a 1% error rate the shared and non-error tokens are all more frequent
than any error token, so a plain top-500 cut never selects an error token.
"""

from __future__ import annotations

import datetime as _dt
import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple

import numpy as np

from .labels import ERROR, NON_ERROR
from .tokens import DEFAULT_STOP_WORDS

__all__ = ["GeneratorSpec", "GroundTruth", "default_pools", "iter_messages",
           "generate", "write_corpus"]

ERROR_WORDS = (
    "timeout", "circuit", "failure", "exception", "refused", "aborted",
    "dialogic", "overflow", "deadlock", "rejected", "unreachable", "corrupt",
    "denied", "crashed", "fatal", "stalled", "dropped", "invalid", "missing",
    "hangup",
)
NON_ERROR_TYPES = ("Info", "Debug", "Warning")
START_TIME = _dt.datetime(2014, 6, 4, 8, 0, 0)

_CONSONANTS = "gklmnprstvz"  # none are hex digits
_VOWELS = "aeiou"


def _pseudo_words() -> Iterator[str]:
    syl = [c + v for c in _CONSONANTS for v in _VOWELS]
    for a, b, c in itertools.product(syl, repeat=3):
        word = a + b + c
        if word not in DEFAULT_STOP_WORDS:
            yield word


def default_pools(n_noise=300, n_common=200, p_common=0.015,
                  n_tail=1000, p_tail=0.003, p_error=0.9):
    """Return ``(signal_tokens, noise_tokens)`` for :class:`GeneratorSpec`."""
    words = _pseudo_words()
    # stride through the enumeration so neighbouring pools look different
    words = itertools.islice(words, 0, None, 7)
    noise = tuple(itertools.islice(words, n_noise))
    common = tuple(itertools.islice(words, n_common))
    tail = tuple(itertools.islice(words, n_tail))
    signal = {
        ERROR: tuple((w, p_error) for w in ERROR_WORDS),
        NON_ERROR: tuple((w, p_common) for w in common)
        + tuple((w, p_tail) for w in tail),
    }
    return signal, noise


_SIGNAL, _NOISE = default_pools()


@dataclass(frozen=True)
class GeneratorSpec:
    count: int
    error_rate: float = 0.01
    seed: int = 0
    format_mix: float = 0.3
    signal_tokens: Mapping[str, Sequence[Tuple[str, float]]] = field(
        default_factory=lambda: _SIGNAL)
    noise_tokens: Sequence[str] = _NOISE
    noise_token_count_range: Tuple[int, int] = (4, 5)

    def validate(self) -> None:
        problems = []
        if not isinstance(self.count, int) or self.count < 1:
            problems.append("count must be an integer >= 1")
        if not 0 <= self.error_rate <= 1:
            problems.append("error_rate must be in [0, 1]")
        if not 0 <= self.format_mix <= 1:
            problems.append("format_mix must be in [0, 1]")
        pools = {c: [t for t, _ in self.signal_tokens.get(c, ())]
                 for c in (ERROR, NON_ERROR)}
        for c, toks in pools.items():
            if not toks:
                problems.append(f"signal_tokens[{c}] must be non-empty")
        if set(pools[ERROR]) & set(pools[NON_ERROR]):
            problems.append("signal_tokens pools must be disjoint across classes")
        for c in (ERROR, NON_ERROR):
            if any(not 0 <= pr <= 1 for _, pr in self.signal_tokens.get(c, ())):
                problems.append(f"signal_tokens[{c}] probabilities must be in [0, 1]")
        if not self.noise_tokens:
            problems.append("noise_tokens must be non-empty")
        lo, hi = self.noise_token_count_range
        if not 0 <= lo <= hi <= len(self.noise_tokens):
            problems.append("noise_token_count_range must satisfy "
                            "0 <= min <= max <= len(noise_tokens)")
        if problems:
            raise ValueError("invalid generator spec: " + "; ".join(problems))


@dataclass
class GroundTruth:
    classes: List[str] = field(default_factory=list)
    lines: List[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.classes)

    def render(self) -> str:
        return "".join(f"{i}\t{c}\n" for i, c in enumerate(self.classes))


def _format_a(t: _dt.datetime, typ: str, content: str) -> str:
    return f"{t:%Y%m%d %H%M%S}.{t.microsecond // 1000:03d} {typ}: {content}"


def _format_b(t: _dt.datetime, seq: int, typ: str, content: str) -> str:
    return (f"{t:%m/%d %H%M%S}.{t.microsecond // 1000:03d}"
            f"|{seq % 100000:05d}|{typ.lower()} |{content}")


def iter_messages(spec: GeneratorSpec) -> Iterator[Tuple[str, str]]:
    """Yield ``(line, class)`` for each generated message, in time order."""
    spec.validate()
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    pools = {}
    for c in (ERROR, NON_ERROR):
        toks, probs = zip(*spec.signal_tokens[c])
        pools[c] = (np.array(toks, dtype=object), np.array(probs, dtype=float))
    noise = np.array(spec.noise_tokens, dtype=object)
    lo, hi = spec.noise_token_count_range
    t = START_TIME
    for i in range(spec.count):
        cls = ERROR if rng.random() < spec.error_rate else NON_ERROR
        typ = "Error" if cls == ERROR else NON_ERROR_TYPES[rng.integers(3)]
        toks, probs = pools[cls]
        words = list(toks[rng.random(len(probs)) < probs])
        k = int(rng.integers(lo, hi + 1))
        words.extend(noise[rng.choice(len(noise), size=k, replace=False)])
        words.append(str(rng.integers(1, 100000)))
        content = " ".join(words)
        t += _dt.timedelta(milliseconds=int(rng.integers(1, 50)))
        if rng.random() < spec.format_mix:
            line = _format_b(t, i, typ, content)
        else:
            line = _format_a(t, typ, content)
        yield line, cls


def generate(spec: GeneratorSpec) -> Tuple[str, GroundTruth]:
    """Generate a whole corpus as text plus its ground truth."""
    truth = GroundTruth()
    for line, cls in iter_messages(spec):
        truth.lines.append(line)
        truth.classes.append(cls)
    text = "".join(line + "\n" for line in truth.lines)
    return text, truth


def write_corpus(spec: GeneratorSpec, log_path, truth_path=None) -> Dict[str, int]:
    """Stream a corpus to ``log_path`` and an ``index<TAB>class`` sidecar."""
    counts = {ERROR: 0, NON_ERROR: 0}
    with open(log_path, "w", encoding="utf-8", newline="\n") as log:
        truth = open(truth_path, "w", encoding="utf-8", newline="\n") if truth_path else None
        try:
            for i, (line, cls) in enumerate(iter_messages(spec)):
                log.write(line + "\n")
                if truth is not None:
                    truth.write(f"{i}\t{cls}\n")
                counts[cls] += 1
        finally:
            if truth is not None:
                truth.close()
    return counts
