import math
from fractions import Fraction

import numpy as np
import pytest

from conftest import GF2_2, random_perm, swap
from memoryless import kernels
from memoryless.analysis import (
    complexity,
    complexity_table,
    conjugacy_complexity_check,
    conjugation_report,
    even_instructions,
    fastness,
    full_instructions,
    internal_computability,
    lary_closure_counterexample,
    lary_generators,
    lary_group,
    lary_instructions,
    parity_violations,
    unary_permutations,
)
from memoryless.core import (
    Alphabet,
    Permutation,
    compose,
    essential_variables,
    inverse,
    state_index,
)
from memoryless.errors import NotComputableError, PreconditionError, TooLargeError, UnsupportedCaseError
from memoryless.graycode import gray_label_to_index
from memoryless.groups import AFFINE_GF2, ALTERNATING, SYMMETRIC, build_chain
from memoryless.synthesis import program_to_perm


def three_cycle_q3():
    a = Alphabet(3, 2)
    e = [state_index(s, a) for s in [(0, 0), (1, 0), (0, 1)]]
    return Permutation.from_cycles(a, [tuple(e)])


def test_diameters():
    assert complexity_table(Alphabet(2, 2)).diameter == 3
    assert complexity_table(Alphabet(2, 3)).diameter == 5


def test_histogram_and_mean():
    t = complexity_table(Alphabet(2, 3))
    assert sum(t.histogram.values()) == math.factorial(8) == t.size
    assert t.histogram[0] == 1 and t.histogram[1] == 45
    assert t.mean == Fraction(sum(d * c for d, c in t.histogram.items()), 40320)
    assert complexity_table(Alphabet(2, 2)).histogram == {0: 1, 1: 6, 2: 13, 3: 4}


def test_identity_distance_zero():
    t = complexity_table(GF2_2)
    assert t.distance(Permutation.identity(GF2_2)) == 0
    assert t.distance(swap(GF2_2)) == 3


def test_bfs_tree_is_well_formed():
    a = Alphabet(2, 3)
    t = complexity_table(a)
    gens = full_instructions(a)
    for d in range(1, t.diameter + 1):
        for f in t.elements_at(d, limit=20):
            back = [t.distance(compose(g.perm.inverse(), f)) for g in gens]
            assert min(back) == d - 1


def test_explicit_set_table_covers_generated_group():
    a = GF2_2
    evens = even_instructions(a)
    t = complexity_table(a, evens)
    assert t.size == 4
    assert t.distance(swap(a)) is None


def test_sparse_table_matches_chain_order():
    a = Alphabet(2, 4)  # degree 16: sorted-rank layout
    gens = lary_generators(a, 2)
    t = complexity_table(a, gens)
    assert t.size == build_chain(gens, a).order == 322560
    assert t.distance(Permutation.identity(a)) == 0


def test_full_table_scale_guard():
    with pytest.raises(TooLargeError):
        complexity_table(Alphabet(2, 4))


def test_complexity_by_search_matches_table(rng):
    a = Alphabet(2, 3)
    t = complexity_table(a)
    for _ in range(20):
        f = random_perm(a, rng)
        assert complexity(f) == t.distance(f)


def test_inverse_has_same_complexity_for_symmetric_sets(rng):
    a = Alphabet(2, 3)
    t = complexity_table(a)
    for _ in range(50):
        f = random_perm(a, rng)
        assert t.distance(f) == t.distance(inverse(f))


# internal computability


def test_cyclic_example_is_internally_computable():
    a = Alphabet(3, 2)
    g = Permutation.from_cycles(a, [(1, 2, 3), (6, 7)], labels=gray_label_to_index(a))
    res = internal_computability([g])
    assert res.computable and res.group_order == 6
    found = set(res.instruction_elements)
    assert g**2 in found and g**3 in found


def alternating(a):
    return [Permutation.from_cycles(a, [(0, 1, i)]) for i in range(2, a.size)]


def test_alt_gf2_squared_not_internally_computable():
    res = internal_computability(alternating(GF2_2))
    assert not res.computable
    assert res.group_order == 12 and res.subgroup_order == 4


def test_alt_gf2_cubed_not_internally_computable():
    res = internal_computability(alternating(Alphabet(2, 3)))
    assert not res.computable and res.group_order == math.factorial(8) // 2


def test_alt_ternary_squared_internally_computable():
    res = internal_computability(alternating(Alphabet(3, 2)))
    assert res.computable and res.subgroup_order == math.factorial(9) // 2


def test_internal_cap():
    with pytest.raises(TooLargeError):
        internal_computability(alternating(Alphabet(3, 2)), cap=1000)


# fastness


def test_three_cycle_is_not_fast():
    a = Alphabet(3, 2)
    g = three_cycle_q3()
    rep = fastness(g, even_instructions(a), full_instructions(a))
    assert rep.lK == 2
    assert rep.lJ == 4
    assert not rep.fast


def test_even_distance_by_dense_table():
    # independent of the bidirectional search
    a = Alphabet(3, 2)
    evens = even_instructions(a)
    gens = np.array([g.perm.images for g in evens])
    dist = kernels.bfs_dense(gens, np.arange(9))
    rk = kernels.rank_rows_np(np.asarray(three_cycle_q3().images)[None])[0]
    assert dist[rk] == 4


def test_fastness_trivial_cases():
    a = GF2_2
    J = even_instructions(a)
    K = full_instructions(a)
    rep = fastness(J[0].perm, J, K)
    assert rep.lJ == rep.lK == 1 and rep.fast
    rep = fastness(Permutation.identity(a), J, K)
    assert rep.lJ == rep.lK == 0 and rep.fast


def test_fastness_errors():
    a = GF2_2
    J = even_instructions(a)
    K = full_instructions(a)
    with pytest.raises(NotComputableError):
        fastness(swap(a), J, K)
    with pytest.raises(PreconditionError):
        fastness(J[0].perm, K, J)


def test_fastness_restriction_property(rng):
    # J <= K <= M and g (J, M)-fast implies g (J, K)-fast
    a = GF2_2
    M = full_instructions(a)
    witnessed = 0
    for _ in range(30):
        k = rng.choice(len(M), size=int(rng.integers(3, 6)), replace=False)
        K = [M[i] for i in sorted(k)]
        J = K[: int(rng.integers(2, len(K)))]
        chain = build_chain(J, a)
        for images in [rng.permutation(4) for _ in range(5)]:
            g = Permutation(a, images)
            if not chain.contains(g):
                continue
            if fastness(g, J, M).fast:
                witnessed += 1
                assert fastness(g, J, K).fast
    assert witnessed > 0


# conjugation by unary permutations


def test_unary_group_order():
    assert len(unary_permutations(GF2_2)) == 8
    assert len(unary_permutations(Alphabet(3, 2))) == 72


def test_conjugation_report_gf2():
    rep = conjugation_report(GF2_2)
    assert rep.unary_failures == 0
    assert rep.non_unary_count == 16
    assert rep.non_unary_without_witness == 0


def test_conjugacy_preserves_complexity(rng):
    a = GF2_2
    g = random_perm(a, rng)
    assert conjugacy_complexity_check(g, Permutation.identity(a))
    assert conjugacy_complexity_check(g, swap(a))
    b = Alphabet(3, 2)
    h = Permutation.from_function(b, lambda s: ((s[0] + 1) % 3, s[1]))
    for _ in range(5):
        assert conjugacy_complexity_check(random_perm(b, rng), h)


def test_conjugacy_rejects_non_unary():
    a = GF2_2
    h = Permutation.from_function(a, lambda s: ((s[0] + s[1]) % 2, s[1]))
    with pytest.raises(PreconditionError):
        conjugacy_complexity_check(swap(a), h)


# l-ary groups


@pytest.mark.parametrize("q,n,l,tag,order", [
    (2, 3, 2, AFFINE_GF2, 1344),
    (2, 4, 2, AFFINE_GF2, 322560),
    (2, 4, 3, ALTERNATING, math.factorial(16) // 2),
    (3, 3, 2, SYMMETRIC, math.factorial(27)),
    (4, 3, 2, ALTERNATING, math.factorial(64) // 2),
    (2, 3, 3, SYMMETRIC, math.factorial(8)),
])
def test_lary_group(q, n, l, tag, order):
    ident = lary_group(Alphabet(q, n), l)
    assert ident.tag == tag and ident.order == order


@pytest.mark.parametrize("q,n,l", [(2, 3, 2), (2, 3, 1), (3, 2, 1), (2, 2, 2)])
def test_compact_generators_match_all_lary_instructions(q, n, l):
    a = Alphabet(q, n)
    full = build_chain(lary_instructions(a, l), a)
    compact = build_chain(lary_generators(a, l), a)
    assert full.order == compact.order
    for g in lary_generators(a, l):
        assert full.contains(g)


def test_parity_barrier_exhaustive():
    assert parity_violations(Alphabet(2, 3), 2) == []
    # and it fails at l = n
    assert parity_violations(Alphabet(2, 3), 3)


@pytest.mark.parametrize("q,n,l", [(2, 3, 2), (3, 4, 2), (2, 5, 3)])
def test_closure_counterexample(q, n, l):
    prog = lary_closure_counterexample(Alphabet(q, n), l)
    assert len(prog) == 2
    composite = program_to_perm(prog)
    assert len(essential_variables(composite, 1)) == l + 1


def test_closure_counterexample_q2_n3():
    prog = lary_closure_counterexample(Alphabet(2, 3), 2)
    assert essential_variables(program_to_perm(prog), 1) == {1, 2, 3}


@pytest.mark.parametrize("l", [1, 3])
def test_no_counterexample_at_ends(l):
    with pytest.raises(UnsupportedCaseError):
        lary_closure_counterexample(Alphabet(2, 3), l)
