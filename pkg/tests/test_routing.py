import numpy as np
import pytest

from conftest import GF2_2, random_perm, swap
from memoryless.core import Alphabet, Permutation
from memoryless.errors import DegenerateInputError, InvalidGraphError
from memoryless.routing import BipartiteMultigraph, EdgeColoring, edge_color, is_proper, perm_to_routing_graph


def graph(left, right, n_vertices):
    return BipartiteMultigraph(n_vertices, n_vertices, np.array(left), np.array(right), np.arange(len(left)))


def test_identity_graph():
    g = perm_to_routing_graph(Permutation.identity(GF2_2))
    assert g.left_count == g.right_count == 2
    assert sorted(g.edges) == [(0, 0, 0), (0, 0, 2), (1, 1, 1), (1, 1, 3)]


def test_swap_graph_edges():
    a = GF2_2
    g = perm_to_routing_graph(swap(a))
    for left, right, s in g.edges:
        x1, x2 = divmod(s, 2)
        assert left == x2 and right == x1


def test_random_graph_is_regular(rng):
    g = perm_to_routing_graph(random_perm(Alphabet(3, 3), rng))
    dl, dr = g.degrees()
    assert g.left_count == 9 and np.all(dl == 3) and np.all(dr == 3)


def test_single_register_rejected():
    with pytest.raises(DegenerateInputError):
        perm_to_routing_graph(Permutation.identity(Alphabet(3, 1)))


def test_parallel_edges_get_all_colors():
    g = graph([0, 0, 0], [0, 0, 0], 1)
    col = edge_color(g, 3)
    assert sorted(col.colors.tolist()) == [0, 1, 2]


def test_perfect_matching_is_one_color():
    g = graph([0, 1, 2], [2, 0, 1], 3)
    assert edge_color(g, 1).colors.tolist() == [0, 0, 0]


def test_swap_coloring_is_proper():
    g = perm_to_routing_graph(swap(GF2_2))
    assert is_proper(g, edge_color(g, 2), 2)


def test_non_regular_rejected():
    with pytest.raises(InvalidGraphError):
        edge_color(graph([0, 0, 1], [0, 1, 1], 2), 2)


def test_improper_coloring_detected():
    g = graph([0, 0], [0, 0], 1)
    assert not is_proper(g, EdgeColoring(g.labels, np.array([0, 0])), 2)


@pytest.mark.parametrize("q,n", [(2, 4), (3, 3), (5, 2), (4, 3)])
def test_random_colorings_are_proper_and_balanced(q, n, rng):
    for _ in range(10):
        g = perm_to_routing_graph(random_perm(Alphabet(q, n), rng), register=int(rng.integers(1, n + 1)))
        col = edge_color(g, q)
        assert is_proper(g, col, q)
        assert np.all(np.bincount(col.colors, minlength=q) == q ** (n - 1))


def test_coloring_is_deterministic(rng):
    f = random_perm(Alphabet(3, 3), rng)
    g = perm_to_routing_graph(f)
    assert np.array_equal(edge_color(g, 3).colors, edge_color(g, 3).colors)
