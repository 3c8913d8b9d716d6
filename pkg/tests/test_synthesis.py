import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import GF2_2, random_perm, swap
from memoryless.analysis import complexity_table
from memoryless.core import Alphabet, Instruction, Permutation, Program, enumerate_instructions
from memoryless.errors import NotComputableError, TooLargeError
from memoryless.synthesis import evaluate, optimal_program, program_to_perm, shortest_word, synthesize


def palindrome(n):
    return list(range(1, n + 1)) + list(range(n - 1, 0, -1))


def is_subsequence(small, big):
    it = iter(big)
    return all(x in it for x in small)


def test_identity_synthesizes_to_empty():
    assert len(synthesize(Permutation.identity(Alphabet(3, 3)))) == 0


def test_swap_synthesis():
    p = synthesize(swap(GF2_2))
    assert len(p) == 3
    assert program_to_perm(p) == swap(GF2_2)


def test_all_gf2_permutations():
    for images in itertools.permutations(range(4)):
        f = Permutation(GF2_2, images)
        p = synthesize(f)
        assert program_to_perm(p) == f
        assert len(p) <= 3


@pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2), (4, 3), (5, 2), (3, 4), (2, 6)])
def test_random_synthesis(q, n, rng):
    a = Alphabet(q, n)
    reps = 1000 if q**n <= 81 else 100
    for _ in range(reps):
        f = random_perm(a, rng)
        p = synthesize(f)
        assert len(p) <= 2 * n - 1
        assert is_subsequence(p.registers(), palindrome(n))
        assert program_to_perm(p) == f


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([(2, 3), (3, 3), (5, 2)]))
def test_synthesis_property(seed, qn):
    f = random_perm(Alphabet(*qn), np.random.default_rng(seed))
    assert program_to_perm(synthesize(f)) == f


def test_xor_swap_evaluation():
    a = GF2_2
    add12 = Instruction.from_update(a, 1, lambda s: (s[0] + s[1]) % 2)
    add21 = Instruction.from_update(a, 2, lambda s: (s[0] + s[1]) % 2)
    prog = Program(a, [add12, add21, add12])
    for x, y in itertools.product(range(2), repeat=2):
        assert evaluate(prog, (x, y)) == (y, x)


def test_trivial_programs():
    a = Alphabet(3, 2)
    assert program_to_perm(Program(a, [])).is_identity()
    g = next(iter(enumerate_instructions(a)))
    assert program_to_perm(Program(a, [g])) == g.perm


def test_optimal_examples():
    for q in (2, 3):
        a = Alphabet(q, 2)
        p = optimal_program(swap(a))
        assert len(p) == 3 and program_to_perm(p) == swap(a)
    a = Alphabet(3, 2)
    g = next(iter(enumerate_instructions(a)))
    assert len(optimal_program(g.perm)) == 1
    e0, e1, e2 = 0, 3, 1
    assert len(optimal_program(Permutation.from_cycles(a, [(e0, e1, e2)]))) == 2


def test_optimal_scale_guard():
    with pytest.raises(TooLargeError):
        optimal_program(Permutation.identity(Alphabet(2, 4)))


@pytest.mark.parametrize("q,n", [(2, 2), (2, 3)])
def test_optimal_matches_table_and_bounds(q, n, rng):
    a = Alphabet(q, n)
    table = complexity_table(a)
    for _ in range(40):
        f = random_perm(a, rng)
        opt = optimal_program(f)
        assert program_to_perm(opt) == f
        assert len(opt) == table.distance(f)
        assert len(opt) <= len(synthesize(f)) <= 2 * n - 1
        regs = opt.registers()
        assert all(x != y for x, y in zip(regs, regs[1:]))


def test_maximum_optimal_length_is_2n_minus_1():
    for q, n in [(2, 2), (2, 3), (3, 2)]:
        table = complexity_table(Alphabet(q, n))
        assert table.diameter == 2 * n - 1
        for f in table.elements_at(2 * n - 1, limit=3):
            assert len(optimal_program(f)) == 2 * n - 1


def test_shortest_word_outside_group():
    a = GF2_2
    evens = [g for g in enumerate_instructions(a) if g.perm.sign == 1]
    with pytest.raises(NotComputableError):
        shortest_word(swap(a), evens)


def test_shortest_word_asymmetric_generators():
    a = GF2_2
    cyc = Permutation.from_cycles(a, [(0, 1, 2, 3)])
    target = Permutation.from_cycles(a, [(0, 3, 2, 1)])
    word = shortest_word(target, [cyc])
    assert word == [0, 0, 0]
