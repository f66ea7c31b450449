from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from oracles import rank_mod_p
from semifields import linalg


def mats(p, rows, cols):
    return arrays(np.int64, (rows, cols), elements=st.integers(0, p - 1))


@settings(max_examples=80, deadline=None)
@given(mats(3, 5, 7))
def test_rank_matches_oracle(A):
    assert linalg.rank(A, 3) == rank_mod_p(A.tolist(), 3)


@settings(max_examples=60, deadline=None)
@given(mats(5, 6, 6))
def test_nullspace(A):
    K = linalg.nullspace(A, 5)
    assert K.shape[0] == 6 - linalg.rank(A, 5)
    assert not ((A @ K.T) % 5).any()


@settings(max_examples=60, deadline=None)
@given(mats(3, 6, 6))
def test_inverse_or_singular(A):
    if linalg.rank(A, 3) == 6:
        inv = linalg.inverse(A, 3)
        assert np.array_equal((A @ inv) % 3, np.eye(6, dtype=np.int64))
    else:
        with pytest.raises(np.linalg.LinAlgError):
            linalg.inverse(A, 3)


@settings(max_examples=40, deadline=None)
@given(mats(7, 4, 4), mats(7, 4, 1))
def test_solve(A, b):
    if linalg.rank(A, 7) == 4:
        x = linalg.solve(A, b[:, 0], 7)
        assert np.array_equal((A @ x) % 7, b[:, 0] % 7)


def test_batched_routines_match_single():
    rng = np.random.default_rng(1)
    for p in (3, 5):
        stack = rng.integers(0, p, size=(300, 5, 5))
        stack[::7, 2] = stack[::7, 1]  # force some singular ones
        ranks = np.array([rank_mod_p(M.tolist(), p) for M in stack])
        assert np.array_equal(linalg.batch_rank(stack, p), ranks)
        assert np.array_equal(linalg.batch_nonsingular(stack, p), ranks == 5)
        assert np.array_equal(linalg.batch_singular(stack, p), ranks < 5)
