"""Reflected mixed-radix (q, n)-Gray codes and the Coxeter instruction set."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Alphabet, Permutation, as_instruction, state_index


@dataclass(frozen=True)
class GraySequence:
    alphabet: Alphabet
    order: tuple

    def indices(self) -> list:
        return [state_index(s, self.alphabet) for s in self.order]

    def __len__(self):
        return len(self.order)


def _reflected(q, n):
    if n == 0:
        return [()]
    inner = _reflected(q, n - 1)
    out = []
    for digit in range(q):
        block = inner if digit % 2 == 0 else inner[::-1]
        out.extend((digit,) + s for s in block)
    return out


def gray_sequence(alphabet: Alphabet) -> GraySequence:
    """Register n varies fastest; each block is reflected on odd leading digits."""
    return GraySequence(alphabet, tuple(_reflected(alphabet.q, alphabet.n)))


def gray_labels(alphabet: Alphabet) -> np.ndarray:
    """``labels[s]`` is the 1-based Gray position of canonical index ``s``."""
    labels = np.empty(alphabet.size, dtype=np.int64)
    labels[gray_sequence(alphabet).indices()] = np.arange(1, alphabet.size + 1)
    return labels


def gray_label_to_index(alphabet: Alphabet) -> dict:
    return {pos + 1: idx for pos, idx in enumerate(gray_sequence(alphabet).indices())}


def lex_label_to_index(alphabet: Alphabet) -> dict:
    return {idx + 1: idx for idx in range(alphabet.size)}


def differing_registers(u, v) -> list:
    return [i + 1 for i, (a, b) in enumerate(zip(u, v)) if a != b]


def coxeter_instructions(alphabet: Alphabet) -> list:
    """The q^n - 1 transpositions of Gray-adjacent states, each an instruction."""
    idx = gray_sequence(alphabet).indices()
    out = []
    for a, b in zip(idx, idx[1:]):
        perm = Permutation.from_cycles(alphabet, [(a, b)])
        ins = as_instruction(perm)
        assert ins is not None, "Gray neighbours must differ in exactly one register"
        out.append(ins)
    return out


__all__ = [
    "GraySequence",
    "coxeter_instructions",
    "differing_registers",
    "gray_label_to_index",
    "gray_labels",
    "gray_sequence",
    "lex_label_to_index",
]
