"""Complexity landscapes and structural checks on instruction sets.

Distances are word lengths in the Cayley graph of the group generated by an
instruction set, measured from the identity under left multiplication.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .config import element_cap
from .core import (
    Alphabet,
    Instruction,
    Permutation,
    Program,
    conjugate,
    enumerate_instructions,
    essential_variables,
    is_lary,
    is_unary_permutation,
)
from .errors import NotComputableError, PreconditionError, TooLargeError, UnsupportedCaseError
from .groups import GroupIdentity, build_chain, element_array, identify_group
from .synthesis import MAX_SEARCH_DEGREE, program_to_perm, shortest_word

ALL = "all"


def _perm_rows(gens, alphabet):
    rows = []
    for g in gens:
        g = g.perm if isinstance(g, Instruction) else g
        rows.append(np.asarray(g.images, dtype=np.int32))
    return np.array(rows, dtype=np.int32).reshape(-1, alphabet.size)


def full_instructions(alphabet: Alphabet) -> list:
    if alphabet.size > MAX_SEARCH_DEGREE:
        raise TooLargeError(f"full instruction set at q^n = {alphabet.size}", alphabet.size, MAX_SEARCH_DEGREE)
    return list(enumerate_instructions(alphabet))


def even_instructions(alphabet: Alphabet, cap: Optional[int] = None) -> list:
    return [g for g in enumerate_instructions(alphabet, cap) if g.perm.sign == 1]


def lary_instructions(alphabet: Alphabet, l: int, cap: Optional[int] = None) -> list:
    return [g for g in enumerate_instructions(alphabet, cap) if is_lary(g.perm, l)]


# --------------------------------------------------------------------------
# Complexity tables
# --------------------------------------------------------------------------

class ComplexityTable:
    """Exact distances from the identity for every element of <set>.

    Lookups are by Lehmer rank: a dense int8 array for degree <= 10, sorted
    rank/distance arrays otherwise.
    """

    def __init__(self, alphabet: Alphabet, instruction_set: str, ranks: np.ndarray, dist: np.ndarray):
        self.alphabet = alphabet
        self.instruction_set = instruction_set
        self._ranks = ranks  # None for the dense layout
        self._dist = dist

    def distance(self, f: Permutation) -> Optional[int]:
        rk = int(kernels.rank_rows(np.asarray(f.images, dtype=np.int32)[None])[0])
        if self._ranks is None:
            d = int(self._dist[rk])
            return d if d >= 0 else None
        i = np.searchsorted(self._ranks, rk)
        if i < len(self._ranks) and self._ranks[i] == rk:
            return int(self._dist[i])
        return None

    def _reached(self) -> np.ndarray:
        return self._dist[self._dist >= 0] if self._ranks is None else self._dist

    @property
    def size(self) -> int:
        return int(len(self._reached()))

    @property
    def diameter(self) -> int:
        return int(self._reached().max())

    @property
    def histogram(self) -> dict:
        counts = np.bincount(self._reached().astype(np.int64))
        return {d: int(c) for d, c in enumerate(counts)}

    @property
    def mean(self) -> Fraction:
        total = sum(d * c for d, c in self.histogram.items())
        return Fraction(total, self.size)

    def elements_at(self, d: int, limit: Optional[int] = None) -> list:
        if self._ranks is None:
            rk = np.flatnonzero(self._dist == d)
        else:
            rk = self._ranks[self._dist == d]
        if limit is not None:
            rk = rk[:limit]
        rows = kernels.unrank_rows(rk, self.alphabet.size)
        return [Permutation(self.alphabet, r, check=False) for r in rows]


def _bfs_sparse(gens: np.ndarray, m: int, cap: int):
    start = np.arange(m, dtype=np.int32)[None]
    seen = kernels.rank_rows(start)
    dists = [np.zeros(1, dtype=np.int8)]
    ranks = [seen]
    frontier = start
    d = 0
    while len(frontier):
        cand = kernels.left_compose_all(gens, frontier)
        rk, first = np.unique(kernels.rank_rows(cand), return_index=True)
        fresh = ~np.isin(rk, seen, assume_unique=True)
        frontier = cand[first[fresh]]
        d += 1
        if len(frontier):
            ranks.append(rk[fresh])
            dists.append(np.full(len(frontier), d, dtype=np.int8))
            seen = np.union1d(seen, rk[fresh])
            if len(seen) > cap:
                raise TooLargeError("Cayley graph vertices", len(seen), cap)
    ranks = np.concatenate(ranks)
    dist = np.concatenate(dists)
    order = np.argsort(ranks)
    return ranks[order], dist[order]


def complexity_table(alphabet: Alphabet, instructions=ALL, cap: Optional[int] = None) -> ComplexityTable:
    """Breadth-first distances over ``instructions`` (a list, or ALL)."""
    if isinstance(instructions, str):
        if instructions != ALL:
            raise ValueError(f"unknown instruction set {instructions!r}")
        return _full_table(alphabet.q, alphabet.n)
    gens = _perm_rows(instructions, alphabet)
    return _table(alphabet, gens, f"explicit ({len(gens)} instructions)", cap)


@lru_cache(maxsize=4)
def _full_table(q: int, n: int) -> ComplexityTable:
    alphabet = Alphabet(q, n)
    gens = _perm_rows(full_instructions(alphabet), alphabet)
    return _table(alphabet, gens, ALL, None)


def _table(alphabet, gens, name, cap):
    m = alphabet.size
    cap = element_cap(cap)
    if m > kernels.MAX_RANK_DEGREE:
        raise TooLargeError(f"breadth-first search over degree {m}", m, kernels.MAX_RANK_DEGREE)
    if len(gens):
        order = build_chain([Permutation(alphabet, g, check=False) for g in gens], alphabet).order
    else:
        order = 1
    if order > cap:
        raise TooLargeError("generated group order", order, cap)
    if m <= kernels.MAX_DENSE_DEGREE:
        if len(gens) == 0:
            dist = np.full(math.factorial(m), -1, dtype=np.int8)
            dist[0] = 0
        else:
            dist = kernels.bfs_dense(gens, np.arange(m))
        return ComplexityTable(alphabet, name, None, dist)
    ranks, dist = _bfs_sparse(gens, m, cap)
    return ComplexityTable(alphabet, name, ranks, dist)


def complexity(f: Permutation, instructions=ALL) -> int:
    """L(f, instructions) by bidirectional search."""
    gens = full_instructions(f.alphabet) if isinstance(instructions, str) else list(instructions)
    return len(shortest_word(f, gens))


# --------------------------------------------------------------------------
# Internal computability
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class InternalComputability:
    computable: bool
    group_order: int
    subgroup_order: int
    instruction_elements: tuple


def _instruction_rows(rows: np.ndarray, alphabet: Alphabet, chunk: int = 1 << 16) -> np.ndarray:
    coords = alphabet.coords
    keep = []
    for lo in range(0, len(rows), chunk):
        part = rows[lo:lo + chunk]
        moved = np.any(coords[part] != coords[None], axis=1)  # (k, n)
        keep.append(moved.sum(axis=1) <= 1)
    return np.concatenate(keep) if keep else np.zeros(0, dtype=bool)


def internal_computability(gens: Sequence, alphabet: Optional[Alphabet] = None,
                           cap: Optional[int] = None) -> InternalComputability:
    """Whether G = <gens> is generated by its own instructions."""
    chain = build_chain(gens, alphabet)
    a = chain.alphabet
    rows = element_array(chain, cap)
    mask = _instruction_rows(rows, a)
    ident = np.arange(a.size)
    found = [Permutation(a, r, check=False) for r in rows[mask] if not np.array_equal(r, ident)]
    found.sort(key=lambda p: tuple(p.images))
    sub = build_chain(found, a).order
    return InternalComputability(sub == chain.order, chain.order, sub, tuple(found))


# --------------------------------------------------------------------------
# Fastness
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class FastnessReport:
    g: Permutation
    J: tuple
    K: tuple
    lJ: int
    lK: int

    @property
    def fast(self) -> bool:
        return self.lJ == self.lK


def _perm_set(gens):
    return {(g.perm if isinstance(g, Instruction) else g) for g in gens}


def fastness(g: Permutation, J: Sequence, K: Sequence) -> FastnessReport:
    """Compare L(g, J) with L(g, K) for J a subset of K."""
    if not _perm_set(J) <= _perm_set(K):
        raise PreconditionError("J must be a subset of K")
    if not g.is_identity():
        if not J or not build_chain(list(J), g.alphabet).contains(g):
            raise NotComputableError("g is not in the group generated by J")
    lJ = len(shortest_word(g, list(J)))
    lK = len(shortest_word(g, list(K)))
    return FastnessReport(g, tuple(J), tuple(K), lJ, lK)


# --------------------------------------------------------------------------
# Conjugation by the unary group
# --------------------------------------------------------------------------

def conjugacy_complexity_check(g: Permutation, h: Permutation) -> bool:
    """L(g) == L(h^-1 g h) for a unary permutation h."""
    if not is_unary_permutation(h):
        raise PreconditionError("h is not a unary permutation")
    return complexity(g) == complexity(conjugate(h, g))


def unary_permutations(alphabet: Alphabet) -> list:
    """Every element of U: an alphabet permutation per register, then a register shuffle."""
    q, n = alphabet.q, alphabet.n
    count = math.factorial(q) ** n * math.factorial(n)
    cap = element_cap()
    if count > cap:
        raise TooLargeError("unary group", count, cap)
    coords = alphabet.coords
    weights = np.array([alphabet.weight(r) for r in range(1, n + 1)], dtype=np.int64)
    sym = [np.array(p) for p in itertools.permutations(range(q))]
    out = set()
    for shuffle in itertools.permutations(range(n)):
        for taus in itertools.product(sym, repeat=n):
            new = np.stack([taus[k][coords[:, shuffle[k]]] for k in range(n)], axis=1)
            out.add(Permutation(alphabet, new @ weights, check=False))
    return sorted(out, key=lambda p: tuple(p.images))


@dataclass(frozen=True)
class ConjugationReport:
    unary_count: int
    instruction_count: int
    unary_failures: int  # (h, g) pairs with h unary and h^-1 g h not an instruction
    non_unary_count: int
    non_unary_without_witness: int


def conjugation_report(alphabet: Alphabet) -> ConjugationReport:
    """Exhaustive check that U normalizes the instruction set and nothing else does."""
    m = alphabet.size
    total = math.factorial(m)
    cap = element_cap()
    if total > cap:
        raise TooLargeError("symmetric group", total, cap)
    instructions = list(enumerate_instructions(alphabet))
    rows = _perm_rows(instructions, alphabet)
    unary = set(unary_permutations(alphabet))
    fails = 0
    non_unary = 0
    no_witness = 0
    for images in itertools.permutations(range(m)):
        h = np.array(images, dtype=np.int32)
        h_inv = np.argsort(h)
        conj = h_inv[rows[:, h]]  # row i is h^-1 o g_i o h
        ok = _instruction_rows(conj, alphabet)
        if Permutation(alphabet, h, check=False) in unary:
            fails += int((~ok).sum())
        else:
            non_unary += 1
            no_witness += int(ok.all())
    return ConjugationReport(len(unary), len(instructions), fails, non_unary, no_witness)


# --------------------------------------------------------------------------
# l-ary instructions
# --------------------------------------------------------------------------

def lary_generators(alphabet: Alphabet, l: int) -> list:
    """Controlled transpositions and q-cycles generating all l-ary instructions.

    For register j, each (l-1)-set K of other registers and each value
    assignment on K: apply (0 1), or the cycle v -> v+1, to y_j when y_K
    matches.
    """
    q, n = alphabet.q, alphabet.n
    if not 1 <= l <= n:
        raise ValueError(f"l must lie in 1..{n}, got {l}")
    coords = alphabet.coords
    swaps = [np.array([1, 0] + list(range(2, q))), (np.arange(q) + 1) % q]
    if q == 2:
        swaps = swaps[:1]
    out = []
    seen = set()
    for j in range(1, n + 1):
        others = [k for k in range(1, n + 1) if k != j]
        x_j = coords[:, j - 1]
        for K in itertools.combinations(others, l - 1):
            for values in itertools.product(range(q), repeat=l - 1):
                mask = np.ones(alphabet.size, dtype=bool)
                for k, v in zip(K, values):
                    mask &= coords[:, k - 1] == v
                for tau in swaps:
                    table = np.where(mask, tau[x_j], x_j)
                    ins = Instruction(alphabet, j, table, check=False)
                    if ins.perm not in seen:
                        seen.add(ins.perm)
                        out.append(ins)
    return out


def lary_group(alphabet: Alphabet, l: int) -> GroupIdentity:
    """Identity of the group generated by all l-ary instructions."""
    chain = build_chain(lary_generators(alphabet, l), alphabet)
    return identify_group(chain, alphabet)


def lary_closure_counterexample(alphabet: Alphabet, l: int) -> Program:
    """Two l-ary instructions whose product is not l-ary.

    y_2 <- y_2 + y_{l+1}, then y_1 <- y_1 + ... + y_l (mod q). Only exists
    for 2 <= l <= n - 1.
    """
    q, n = alphabet.q, alphabet.n
    if not 2 <= l <= n - 1:
        raise UnsupportedCaseError(f"l-ary permutations form a group for l = {l}, n = {n}; no counterexample")
    coords = alphabet.coords
    first = Instruction(alphabet, 2, (coords[:, 1] + coords[:, l]) % q)
    second = Instruction(alphabet, 1, coords[:, :l].sum(axis=1) % q)
    prog = Program(alphabet, [first, second])
    composite = program_to_perm(prog)
    assert is_lary(first.perm, l) and is_lary(second.perm, l)
    assert len(essential_variables(composite, 1)) > l
    return prog


def parity_violations(alphabet: Alphabet, l: int, cap: Optional[int] = None) -> list:
    """l-ary instructions with sign -1 (expected empty for even q and l < n)."""
    return [g for g in lary_instructions(alphabet, l, cap) if g.perm.sign != 1]
