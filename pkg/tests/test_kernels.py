import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from reident import kernels
from reident import _fallback

BACKENDS = kernels.available_backends()


def naive_groups(keys):
    first: dict[tuple, int] = {}
    ids = []
    for row in map(tuple, keys):
        ids.append(first.setdefault(row, len(first)))
    counts = np.bincount(ids, minlength=len(first)) if ids else np.empty(0, np.int64)
    return np.array(ids, np.int64), counts


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_group_rows_small(name):
    keys = np.array([[1, 2], [3, 4], [1, 2], [-5, 2**40], [3, 4], [1, 2]])
    ids, counts = BACKENDS[name].group_rows(keys)
    assert ids.tolist() == [0, 1, 0, 2, 1, 0]
    assert counts.tolist() == [3, 2, 1]


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_group_rows_edges(name):
    g = BACKENDS[name].group_rows
    ids, counts = g(np.empty((0, 3), np.int64))
    assert len(ids) == 0 and len(counts) == 0
    ids, counts = g(np.empty((4, 0), np.int64))
    assert ids.tolist() == [0, 0, 0, 0] and counts.tolist() == [4]


key_arrays = st.integers(1, 4).flatmap(
    lambda w: arrays(np.int64, st.tuples(st.integers(0, 60), st.just(w)),
                     elements=st.integers(-3, 3) | st.integers(-2**62, 2**62))
)


@settings(max_examples=300, deadline=None)
@given(key_arrays)
def test_group_rows_matches_naive(keys):
    want_ids, want_counts = naive_groups(keys)
    for backend in BACKENDS.values():
        ids, counts = backend.group_rows(keys)
        assert np.array_equal(ids, want_ids)
        assert np.array_equal(counts, want_counts)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 5), min_size=0, max_size=40), st.data())
def test_coresident_pairs_backends_agree(groups, data):
    n = len(groups)
    gender = np.array(data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n)), np.uint8)
    ids, counts = _fallback.group_rows(np.array(groups, np.int64).reshape(n, 1))
    order = np.argsort(ids, kind="stable")
    offsets = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
    want = {(m, f) for m in range(n) for f in range(n)
            if groups[m] == groups[f] and gender[m] == 0 and gender[f] == 1}
    results = [b.coresident_pairs(order, offsets, gender) for b in BACKENDS.values()]
    for males, females in results:
        assert set(zip(males.tolist(), females.tolist())) == want
        assert np.array_equal(males, results[0][0]) and np.array_equal(females, results[0][1])


def test_backend_flag():
    assert kernels.BACKEND in BACKENDS
    assert kernels.group_rows is BACKENDS[kernels.BACKEND].group_rows
