
import pytest

from memoryless.core import Alphabet, updated_registers
from memoryless.graycode import coxeter_instructions, differing_registers, gray_labels, gray_sequence
from memoryless.groups import SYMMETRIC, build_chain, identify_group, is_transitive


def listing(q, n):
    return ["".join(map(str, s)) for s in gray_sequence(Alphabet(q, n)).order]


def test_binary_listing():
    assert listing(2, 3) == ["000", "001", "011", "010", "110", "111", "101", "100"]


def test_ternary_listing():
    assert listing(3, 2) == ["00", "01", "02", "12", "11", "10", "20", "21", "22"]


def test_single_register():
    assert listing(2, 1) == ["0", "1"]


@pytest.mark.parametrize("q,n", [(q, n) for q in range(2, 6) for n in range(1, 5)])
def test_adjacent_states_differ_in_one_register(q, n):
    seq = gray_sequence(Alphabet(q, n))
    assert len(set(seq.order)) == q**n
    for u, v in zip(seq.order, seq.order[1:]):
        assert len(differing_registers(u, v)) == 1


def test_labels_are_a_bijection():
    labels = gray_labels(Alphabet(3, 3))
    assert sorted(labels.tolist()) == list(range(1, 28))


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2), (2, 3), (4, 2)])
def test_coxeter_set(q, n):
    a = Alphabet(q, n)
    cox = coxeter_instructions(a)
    assert len(cox) == q**n - 1
    assert all(len(updated_registers(c.perm)) == 1 for c in cox)
    assert identify_group(build_chain(cox, a), a).tag == SYMMETRIC


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2), (2, 3)])
def test_coxeter_set_is_minimal(q, n):
    a = Alphabet(q, n)
    cox = coxeter_instructions(a)
    for i in range(len(cox)):
        chain = build_chain(cox[:i] + cox[i + 1:], a)
        assert not is_transitive(chain)


def test_coxeter_q2n2_order():
    assert build_chain(coxeter_instructions(Alphabet(2, 2))).order == 24
