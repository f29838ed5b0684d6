import math
import random

import pytest
from hypothesis import given, strategies as st

from rarelog.features import (
    FrequencyTable, Vocabulary, count_frequencies, quota, select_vocabulary, vectorize, vectorize_many,
)
from rarelog.labels import ERROR, NON_ERROR


def table(err, ok):
    t = FrequencyTable()
    t.per_class[ERROR].update(err)
    t.per_class[NON_ERROR].update(ok)
    t.overall.update(err)
    t.overall.update(ok)
    return t


def test_count_small():
    t = count_frequencies([({"a", "b"}, ERROR), ({"a"}, NON_ERROR)])
    assert t.overall == {"a": 2, "b": 1}
    assert t.per_class[ERROR] == {"a": 1, "b": 1}
    assert t.per_class[NON_ERROR] == {"a": 1}


def test_count_single_message():
    t = count_frequencies([({"a", "b"}, NON_ERROR)])
    assert t.overall == t.per_class[NON_ERROR]


def test_count_empty():
    with pytest.raises(ValueError, match="no training data"):
        count_frequencies([])


def test_count_matches_recount():
    rng = random.Random(3)
    words = [f"w{i}" for i in range(60)]
    data = [(set(rng.sample(words, rng.randint(0, 8))), rng.choice([ERROR, NON_ERROR]))
            for _ in range(1000)]
    t = count_frequencies(data)
    for w in words:
        per = {c: sum(1 for bag, lab in data if lab == c and w in bag) for c in (ERROR, NON_ERROR)}
        assert t.per_class[ERROR][w] == per[ERROR]
        assert t.per_class[NON_ERROR][w] == per[NON_ERROR]
        assert t.overall[w] == per[ERROR] + per[NON_ERROR]
    half = len(data) // 2
    merged = count_frequencies(data[:half]).merge(count_frequencies(data[half:]))
    assert merged.overall == t.overall and merged.per_class == t.per_class


def test_select_two_phase():
    t = table(err={"x": 3, "y": 2, "z": 1},
              ok={"a": 90, "b": 80, "x": 67, "c": 60})
    v = select_vocabulary(t, 4, 0.5)
    assert v.tokens == ("x", "y", "a", "b")
    assert v.prealloc_count == 2


def test_select_q0_is_plain_top_p():
    t = table(err={"x": 3, "y": 2}, ok={"a": 90, "b": 80, "x": 67, "c": 60})
    v = select_vocabulary(t, 3, 0)
    assert v.tokens == ("a", "b", "x") and v.prealloc_count == 0


def test_select_q1_single_error_token():
    t = table(err={"x": 5}, ok={"a": 90, "b": 80, "c": 60})
    v = select_vocabulary(t, 3, 1)
    assert v.tokens == ("x", "a", "b") and v.prealloc_count == 1


def test_short_vocabulary_and_ties():
    t = table(err={}, ok={"b": 1, "a": 1, "c": 2})
    v = select_vocabulary(t, 10, 0.5)
    assert v.tokens == ("c", "a", "b")
    assert v.short


def test_quota_rounding():
    t = table(err={f"e{i}": 1 for i in range(20)}, ok={f"o{i}": 5 for i in range(200)})
    assert select_vocabulary(t, 100, 0.07).prealloc_count == 7
    assert select_vocabulary(t, 3, 0.5).prealloc_count == 2


@pytest.mark.parametrize("p,q", [(0, 0.5), (5, -0.1), (5, 1.5)])
def test_select_bad_args(p, q):
    with pytest.raises(ValueError):
        select_vocabulary(table({}, {"a": 1}), p, q)


freq_st = st.dictionaries(st.sampled_from([f"t{i}" for i in range(30)]), st.integers(1, 50), max_size=30)


@given(freq_st, freq_st, st.integers(1, 40), st.floats(0, 1))
def test_vocabulary_properties(err, ok, p, q):
    t = table(err, ok)
    v = select_vocabulary(t, p, q)
    assert len(v) <= p and len(set(v.tokens)) == len(v)
    assert v.prealloc_count == min(len(err), quota(p, q))
    assert v.prealloc_count <= math.ceil(q * p)
    # quota soundness: the error-class top-r always gets a slot
    ranked = sorted(err, key=lambda w: (-err[w], w))
    assert v.tokens[:v.prealloc_count] == tuple(ranked[:v.prealloc_count])
    # order independence
    t2 = table(dict(reversed(list(err.items()))), dict(reversed(list(ok.items()))))
    assert select_vocabulary(t2, p, q) == v


def test_vectorize():
    v = Vocabulary(("x", "y", "a", "b"))
    assert vectorize({"a", "x", "zzz"}, v).tolist() == [True, False, True, False]
    assert not vectorize(set(), v).any()
    assert vectorize({"x", "y", "a", "b", "c"}, v).all()
    mat = vectorize_many([{"a"}, set(), {"b", "y"}], v)
    assert mat.tolist() == [[False, False, True, False], [False] * 4, [False, True, False, True]]


def test_vocabulary_rejects_duplicates():
    with pytest.raises(ValueError):
        Vocabulary(("a", "a"))
