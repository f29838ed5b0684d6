"""Time-consecutive evaluation: split, confusion matrix, metrics and report.

The confusion matrix follows the layout ``[a b; c d]`` with rows for the
actual class (error first) and columns for the prediction::

    a = actual error,     predicted error
    b = actual error,     predicted non-error
    c = actual non-error, predicted error
    d = actual non-error, predicted non-error

"Precision" in the report is ``a / (a + b)``, which under this layout is the
error-class recall. The conventional precision ``a / (a + c)`` is reported
separately as ``standard_precision``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .bayes import InformativeFeature, render_feature
from .labels import ERROR

__all__ = [
    "ConfusionMatrix",
    "MetricsReport",
    "split_time_consecutive",
    "confusion",
    "metrics",
    "format2",
    "render_report",
]


def split_time_consecutive(events: Sequence, n: int) -> Tuple[list, list]:
    """First ``n`` events train, the rest test. Order is never changed."""
    total = len(events)
    if not 1 <= n < total:
        raise ValueError(f"train size must satisfy 1 <= n < {total}, got {n}")
    return list(events[:n]), list(events[n:])


@dataclass(frozen=True)
class ConfusionMatrix:
    a: int = 0
    b: int = 0
    c: int = 0
    d: int = 0

    def __post_init__(self):
        if min(self.a, self.b, self.c, self.d) < 0:
            raise ValueError("confusion counts must be non-negative")

    @property
    def m(self) -> int:
        return self.a + self.b + self.c + self.d

    def __add__(self, other: "ConfusionMatrix") -> "ConfusionMatrix":
        return ConfusionMatrix(self.a + other.a, self.b + other.b,
                               self.c + other.c, self.d + other.d)

    def accuracy(self) -> Fraction:
        return Fraction(self.a + self.d, self.m)

    def precision(self) -> Optional[Fraction]:
        """``a / (a + b)``; ``None`` when no error event was in the test set."""
        if self.a + self.b == 0:
            return None
        return Fraction(self.a, self.a + self.b)

    error_recall = precision

    def standard_precision(self) -> Optional[Fraction]:
        if self.a + self.c == 0:
            return None
        return Fraction(self.a, self.a + self.c)

    def rows(self) -> List[List[int]]:
        return [[self.a, self.b], [self.c, self.d]]


def confusion(predicted: Sequence[str], actual: Sequence[str]) -> ConfusionMatrix:
    if len(predicted) != len(actual):
        raise ValueError(f"{len(predicted)} predictions for {len(actual)} labels")
    a = b = c = d = 0
    for pred, act in zip(predicted, actual):
        if act == ERROR:
            if pred == ERROR:
                a += 1
            else:
                b += 1
        elif pred == ERROR:
            c += 1
        else:
            d += 1
    return ConfusionMatrix(a, b, c, d)


def metrics(cm: ConfusionMatrix) -> Tuple[float, Optional[float]]:
    """``(accuracy, precision)`` as floats; precision may be ``None``."""
    if cm.m == 0:
        raise ValueError("empty confusion matrix")
    prec = cm.precision()
    return float(cm.accuracy()), None if prec is None else float(prec)


def format2(x) -> str:
    """Two-decimal display of an exact quantity, rounding half to even."""
    if x is None:
        return "n/a"
    x = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = 60
        dec = Decimal(x.numerator) / Decimal(x.denominator)
        return str(dec.quantize(Decimal("0.01"), rounding=ROUND_HALF_EVEN))


@dataclass
class MetricsReport:
    n_documents: int
    p_features: int
    n_train: int
    m_test: int
    n_errors_total: int
    matrix: ConfusionMatrix
    top_features: List[InformativeFeature] = field(default_factory=list)

    @property
    def error_percentage(self) -> Fraction:
        return Fraction(100 * self.n_errors_total, self.n_documents)

    @property
    def accuracy(self) -> Fraction:
        return self.matrix.accuracy()

    @property
    def precision(self) -> Optional[Fraction]:
        return self.matrix.precision()

    def to_dict(self) -> dict:
        cm = self.matrix

        def num(x):
            return None if x is None else float(x)

        return {
            "n_documents": self.n_documents,
            "p_features": self.p_features,
            "n_train": self.n_train,
            "m_test": self.m_test,
            "n_errors_total": self.n_errors_total,
            "error_percentage": num(self.error_percentage),
            "confusion_matrix": cm.rows(),
            "accuracy": num(self.accuracy),
            "precision": num(self.precision),
            "error_recall": num(cm.error_recall()),
            "standard_precision": num(cm.standard_precision()),
            "top_features": [asdict(f) for f in self.top_features],
        }


def _matrix_lines(cm: ConfusionMatrix) -> List[str]:
    width = max(len(str(v)) for row in cm.rows() for v in row)
    return ["[" + " ".join(f"{v:>{width}}" for v in row) + "]" for row in cm.rows()]


def render_report(report: MetricsReport) -> str:
    cm = report.matrix
    lines = [
        f"len(documents) = {report.n_documents}",
        f"len(features) = {report.p_features}",
        f"len(train_set) = {report.n_train}",
        f"len(test_set) = {report.m_test}",
        f"n_errs = {report.n_errors_total}, "
        f"percentage = {format2(report.error_percentage)}",
        "",
        "Confusion matrix =",
        *_matrix_lines(cm),
        f"Accuracy [0-1] = {format2(report.accuracy)}. "
        f"Precision [0-1] = {format2(report.precision)}",
        f"Error recall [0-1] = {format2(cm.error_recall())}. "
        f"Standard precision [0-1] = {format2(cm.standard_precision())}",
        "Most Informative Features",
        *(render_feature(f) for f in report.top_features),
    ]
    return "\n".join(lines) + "\n"
