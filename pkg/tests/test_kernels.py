import itertools
import math

import numpy as np
import pytest

from memoryless import kernels
from memoryless.core import Alphabet, enumerate_instructions

needs_numba = pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba not installed")


def test_rank_is_lexicographic_position():
    perms = np.array(list(itertools.permutations(range(5))), dtype=np.int32)
    assert np.array_equal(kernels.rank_rows_np(perms), np.arange(120))
    assert np.array_equal(kernels.unrank_rows(np.arange(120), 5), perms)


@needs_numba
def test_rank_backends_agree():
    rng = np.random.default_rng(1)
    perms = np.array([rng.permutation(12) for _ in range(500)], dtype=np.int32)
    fact = kernels.factorial_table(12)
    assert np.array_equal(kernels.rank_rows_nb(perms, fact), kernels.rank_rows_np(perms))


def test_rank_degree_guard():
    with pytest.raises(ValueError):
        kernels.rank_rows(np.arange(21, dtype=np.int32)[None])


def test_left_compose_all_order():
    gens = np.array([[1, 0, 2], [0, 2, 1]])
    perms = np.array([[0, 1, 2], [2, 0, 1]])
    out = kernels.left_compose_all(gens, perms)
    assert out.tolist() == [[1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 0, 2]]


def _gens(q, n):
    return np.array([g.perm.images for g in enumerate_instructions(Alphabet(q, n))])


@needs_numba
@pytest.mark.parametrize("q,n", [(2, 2), (2, 3)])
def test_bfs_backends_agree(q, n):
    gens = _gens(q, n)
    start = np.arange(q**n)
    d_nb = kernels.bfs_dense_nb(gens.astype(np.int8), start.astype(np.int8), kernels.factorial_table(q**n))
    d_np = kernels.bfs_dense_np(gens, start)
    assert np.array_equal(d_nb, d_np)


def test_bfs_matches_python_oracle():
    gens = _gens(2, 2)
    dist = kernels.bfs_dense(gens, np.arange(4))
    # plain dictionary BFS
    seen = {tuple(range(4)): 0}
    frontier = [tuple(range(4))]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                r = tuple(int(g[i]) for i in p)
                if r not in seen:
                    seen[r] = seen[p] + 1
                    nxt.append(r)
        frontier = nxt
    for p, d in seen.items():
        assert dist[kernels.rank_rows_np(np.array([p]))[0]] == d
    assert (dist >= 0).sum() == math.factorial(4)


@needs_numba
def test_sift_backends_agree():
    from memoryless.generators import sym_generators
    from memoryless.groups import build_chain

    chain = build_chain(sym_generators(Alphabet(3, 2)).pis)
    base = np.array(chain.base, dtype=np.int64)
    rng = np.random.default_rng(3)
    for _ in range(20):
        g = rng.permutation(9).astype(np.int32)
        h1, l1 = kernels.sift_nb(g, base, 0, chain.depth, chain._in_orbit, chain._reps_inv)
        h2, l2 = kernels.sift_np(g, base, 0, chain.depth, chain._in_orbit, chain._reps_inv)
        assert l1 == l2 and np.array_equal(h1, h2)
