"""Binary Bernoulli naive Bayes over token-presence features.

Each vocabulary token is a present/absent feature, assumed conditionally
independent given the class. Probabilities are estimated as::

    P(C_j)               = count_j / n
    P(X_k = present|C_j) = (m_kj + alpha) / (count_j + 2 alpha)

and all scoring happens in log space, since products of ~2000 factors
underflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from .features import Vocabulary
from .labels import CLASSES, ERROR, NON_ERROR

__all__ = [
    "DegenerateTrainingSet",
    "NBModel",
    "InformativeFeature",
    "train",
    "train_counts",
    "posterior_scores",
    "classify",
    "classify_many",
    "most_informative",
    "render_feature",
]

DEFAULT_ALPHA = 0.5


class DegenerateTrainingSet(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class NBModel:
    vocabulary: Vocabulary
    class_counts: Tuple[int, int]
    present_prob: np.ndarray  # shape (p, 2), columns ordered as CLASSES
    alpha: float = DEFAULT_ALPHA

    def __post_init__(self):
        pp = np.asarray(self.present_prob, dtype=np.float64).reshape(-1, 2)
        pp.setflags(write=False)
        object.__setattr__(self, "present_prob", pp)
        object.__setattr__(self, "class_counts", tuple(int(c) for c in self.class_counts))
        n = self.train_size
        prior = np.array([c / n for c in self.class_counts])
        object.__setattr__(self, "class_log_prior", np.log(prior))
        object.__setattr__(self, "log_present", np.log(pp))
        object.__setattr__(self, "log_absent", np.log1p(-pp))

    @property
    def train_size(self) -> int:
        return sum(self.class_counts)

    @property
    def absent_prob(self) -> np.ndarray:
        return 1.0 - self.present_prob

    def cond_log_prob(self, k: int, label: str, present: bool) -> float:
        j = CLASSES.index(label)
        return float(self.log_present[k, j] if present else self.log_absent[k, j])

    def to_dict(self) -> dict:
        voc = self.vocabulary
        return {
            "alpha": self.alpha,
            "n": self.train_size,
            "class_counts": dict(zip(CLASSES, self.class_counts)),
            "vocabulary": {"p": voc.p, "q": voc.q,
                           "prealloc_count": voc.prealloc_count,
                           "tokens": list(voc.tokens)},
            "present_prob": {c: self.present_prob[:, j].tolist()
                             for j, c in enumerate(CLASSES)},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "NBModel":
        v = data["vocabulary"]
        vocab = Vocabulary(tuple(v["tokens"]), v["prealloc_count"], v["p"], v["q"])
        counts = tuple(data["class_counts"][c] for c in CLASSES)
        if sum(counts) != data["n"]:
            raise ValueError("class counts do not add up to n")
        pp = np.column_stack([np.asarray(data["present_prob"][c], dtype=np.float64)
                              for c in CLASSES]) if len(vocab) else np.zeros((0, 2))
        if pp.shape != (len(vocab), 2):
            raise ValueError("present_prob does not match vocabulary length")
        return cls(vocab, counts, pp, data["alpha"])


def train_counts(vocabulary: Vocabulary, present_counts: np.ndarray,
                 class_counts: Sequence[int], alpha: float = DEFAULT_ALPHA) -> NBModel:
    """Build a model from sufficient statistics.

    ``present_counts[k, j]`` is the number of class-``j`` training examples
    with token ``k`` present.
    """
    if not alpha > 0:
        raise ValueError(f"alpha must be > 0, got {alpha}")
    counts = np.asarray(class_counts, dtype=np.int64)
    if (counts == 0).any():
        raise DegenerateTrainingSet(
            "degenerate training set: both error and non-error examples are required")
    m = np.asarray(present_counts, dtype=np.float64).reshape(len(vocabulary), 2)
    pp = (m + alpha) / (counts + 2.0 * alpha)
    return NBModel(vocabulary, tuple(counts), pp, float(alpha))


def train(examples: Iterable[Tuple[np.ndarray, str]], vocabulary: Vocabulary,
          alpha: float = DEFAULT_ALPHA) -> NBModel:
    """Estimate a model in one pass over ``(feature_vector, label)`` pairs."""
    if not alpha > 0:
        raise ValueError(f"alpha must be > 0, got {alpha}")
    p = len(vocabulary)
    present = np.zeros((p, 2), dtype=np.int64)
    counts = [0, 0]
    for fv, label in examples:
        fv = np.asarray(fv, dtype=bool)
        if fv.shape != (p,):
            raise ValueError(f"feature vector of length {fv.size}, vocabulary has {p}")
        j = CLASSES.index(label)
        counts[j] += 1
        present[:, j] += fv
    if sum(counts) == 0:
        raise ValueError("no training data")
    return train_counts(vocabulary, present, counts, alpha)


def posterior_scores(model: NBModel, fv: np.ndarray) -> np.ndarray:
    """Unnormalized log posteriors, ``[..., j]`` in ``CLASSES`` order.

    Accepts one vector of shape ``(p,)`` or a batch ``(N, p)``; each row is
    reduced the same way in both cases so results agree bit for bit.
    """
    fv = np.asarray(fv, dtype=bool)
    p = len(model.vocabulary)
    if fv.shape[-1:] != (p,):
        raise ValueError(f"feature vector of length {fv.shape[-1:]}, model has {p}")
    cols = []
    for j in range(2):
        terms = np.where(fv, model.log_present[:, j], model.log_absent[:, j])
        cols.append(model.class_log_prior[j] + terms.sum(axis=-1))
    return np.stack(cols, axis=-1)


def classify(model: NBModel, fv: np.ndarray) -> str:
    """Argmax class; an exact tie goes to non-error."""
    s = posterior_scores(model, fv)
    return ERROR if s[0] > s[1] else NON_ERROR


def classify_many(model: NBModel, fvs) -> List[str]:
    fvs = np.asarray(fvs, dtype=bool).reshape(-1, len(model.vocabulary))
    s = posterior_scores(model, fvs)
    return [ERROR if e > o else NON_ERROR for e, o in s]


@dataclass(frozen=True)
class InformativeFeature:
    token: str
    present: bool
    favored: str
    ratio: float


def most_informative(model: NBModel, k: int = 5) -> List[InformativeFeature]:
    """Top ``k`` (token, value) pairs by cross-class likelihood ratio."""
    if k < 1:
        raise ValueError("k must be >= 1")
    out = []
    for present, probs in ((True, model.present_prob), (False, model.absent_prob)):
        for tok, (pe, po) in zip(model.vocabulary.tokens, probs):
            if pe > po:
                out.append(InformativeFeature(tok, present, ERROR, float(pe / po)))
            else:
                out.append(InformativeFeature(tok, present, NON_ERROR, float(po / pe)))
    out.sort(key=lambda f: (-f.ratio, f.token, not f.present))
    return out[:k]


def render_feature(f: InformativeFeature) -> str:
    """One line in the classic ``token = True  True : False = R : 1.0`` shape.

    Class names are shown as the ``isError`` outcome they stand for.
    """
    num = "True" if f.favored == ERROR else "False"
    den = "False" if f.favored == ERROR else "True"
    return f"{f.token:>24} = {str(f.present):<12}{num:>6} : {den:<6} = {f.ratio:8.1f} : 1.0"
