"""Reduction of message content to a set of feature-eligible tokens."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import FrozenSet

__all__ = ["DEFAULT_STOP_WORDS", "TokenizerConfig", "tokenize", "load_stop_words"]

DEFAULT_STOP_WORDS = frozenset("""
a about above after again against all am an and any are as at be because been
before being below between both but by can could did do does doing down during
each few for from further had has have having he her here hers herself him
himself his how i if in into is it its itself just me more most my myself no
nor not now of off on once only or other our ours ourselves out over own same
she should so some such than that the their theirs them themselves then there
these they this those through to too under until up very was we were what when
where which while who whom why will with would you your yours yourself
yourselves also may might must shall us let via per yet upon within without
""".split())

_HEX_LITERAL = re.compile(r"[0-9a-f]+h?")


@dataclass(frozen=True)
class TokenizerConfig:
    stop_words: FrozenSet[str] = DEFAULT_STOP_WORDS
    extra_token_chars: str = "_*"
    exclude_numbers: bool = True

    def __post_init__(self):
        words = frozenset(self.stop_words)
        if any(not w or w != w.lower() for w in words):
            raise ValueError("stop words must be non-empty and lowercase")
        object.__setattr__(self, "stop_words", words)
        extras = "".join(sorted(set(self.extra_token_chars)))
        object.__setattr__(self, "extra_token_chars", extras)
        if extras:
            pat = r"(?:[^\W_]|[" + re.escape(extras) + r"])+"
        else:
            pat = r"[^\W_]+"
        object.__setattr__(self, "_pattern", re.compile(pat))


def _is_numeric(token: str) -> bool:
    if not any(ch.isalpha() for ch in token):
        return True
    return len(token) >= 4 and _HEX_LITERAL.fullmatch(token) is not None


def tokenize(content: str, config: TokenizerConfig = TokenizerConfig()) -> FrozenSet[str]:
    """Return the set of distinct lowercase tokens of ``content``.

    Tokens are maximal runs of letters, digits and the configured extra
    characters. Stop words are dropped, and with ``exclude_numbers`` so are
    tokens without any letter and hexadecimal literals such as ``11de6b80``
    or ``802h``.

    >>> sorted(tokenize("Duration 8453ms Timeout 502ms StackSize 90"))
    ['502ms', '8453ms', 'duration', 'stacksize', 'timeout']
    """
    out = set()
    stop = config.stop_words
    for tok in config._pattern.findall(content):
        tok = tok.lower()
        if tok in stop or tok in out:
            continue
        if config.exclude_numbers and _is_numeric(tok):
            continue
        out.add(tok)
    return frozenset(out)


def load_stop_words(path) -> FrozenSet[str]:
    """Read a stop-word file: one token per line, ``#`` starts a comment."""
    words = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            word = line.split("#", 1)[0].strip().lower()
            if word:
                words.add(word)
    return frozenset(words)
