"""Training, scoring and inspecting a tiny model by hand.

Four training messages over a one-word vocabulary, small enough to check
every number with pencil and paper.
"""

import math

import numpy as np

from rarelog.bayes import most_informative, posterior_scores, render_feature, train
from rarelog.evaluate import ConfusionMatrix, format2, metrics
from rarelog.features import Vocabulary

vocab = Vocabulary(("w",))
examples = [([True], "error"), ([True], "error"), ([False], "non_error"), ([True], "non_error")]
model = train(examples, vocab, alpha=0.5)

# P(w present | error) = (2 + 0.5) / (2 + 1) = 5/6, P(w present | non_error) = 1/2
print("P(present | class):", model.present_prob[0])
scores = posterior_scores(model, np.array([True]))
print("log scores:", scores, "expected:", [math.log(0.5 * 5 / 6), math.log(0.25)])
for f in most_informative(model, 2):
    print(render_feature(f))

# Accuracy (a + d) / m and "precision" a / (a + b) on two printed matrices.
for cm in (ConfusionMatrix(109, 1, 2340, 48760), ConfusionMatrix(100, 2, 243, 9438)):
    acc, prec = metrics(cm)
    print(cm.rows(), f"accuracy={acc:.5f} ({format2(cm.accuracy())})",
          f"precision={prec:.5f} ({format2(cm.precision())})")
