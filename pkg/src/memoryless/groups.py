"""Stabilizer chains (deterministic Schreier-Sims) for groups acting on A^n.

The chain is exact: every Schreier generator is sifted, and construction only
stops early when the product of the basic orbit lengths reaches a proven
upper bound on the group order ((q^n)! in general, (q^n)!/2 when every
generator is even). Each basic orbit is the orbit of a subgroup of the
corresponding point stabilizer, so the product is always a lower bound on the
order; meeting the upper bound therefore certifies completeness.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from . import kernels
from .config import element_cap
from .core import Alphabet, Instruction, Permutation
from .errors import AlphabetMismatchError, TooLargeError

SYMMETRIC = "Symmetric"
ALTERNATING = "Alternating"
AFFINE_GF2 = "AffineOverGF2"
OTHER = "Other"


def _as_array(g):
    if isinstance(g, Instruction):
        g = g.perm
    return g


def affine_gf2_order(n: int) -> int:
    """|AGL(n, 2)| = 2^n * prod_{i<n} (2^n - 2^i)."""
    order = 2**n
    for i in range(n):
        order *= 2**n - 2**i
    return order


class GroupChain:
    """Base, strong generators and transversals of a permutation group.

    Built by :func:`build_chain`; treat as immutable afterwards.
    """

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        self.degree = alphabet.size
        m = self.degree
        self.base: list[int] = []
        self._gens: list[np.ndarray] = []
        self._level_gens: list[list[int]] = []
        self._orbits: list[list[int]] = []
        cap = 4
        self._in_orbit = np.zeros((cap, m), dtype=np.bool_)
        self._reps = np.zeros((cap, m, m), dtype=np.int32)
        self._reps_inv = np.zeros((cap, m, m), dtype=np.int32)

    # -- construction helpers -------------------------------------------

    @property
    def depth(self) -> int:
        return len(self.base)

    def _grow(self):
        cap = self._in_orbit.shape[0]
        if self.depth < cap:
            return
        new = min(2 * cap, max(self.degree, 1))
        if new <= cap:
            new = cap + 1
        m = self.degree
        for name, dtype, shape in (
            ("_in_orbit", np.bool_, (new, m)),
            ("_reps", np.int32, (new, m, m)),
            ("_reps_inv", np.int32, (new, m, m)),
        ):
            arr = np.zeros(shape, dtype=dtype)
            arr[:cap] = getattr(self, name)
            setattr(self, name, arr)

    def _add_level(self, point: int):
        self._grow()
        lvl = self.depth
        self.base.append(point)
        self._level_gens.append([])
        self._orbits.append([point])
        self._in_orbit[lvl, point] = True
        ident = np.arange(self.degree, dtype=np.int32)
        self._reps[lvl, point] = ident
        self._reps_inv[lvl, point] = ident

    def _add_generator(self, g: np.ndarray, levels: range):
        gid = len(self._gens)
        self._gens.append(g)
        for lvl in levels:
            self._level_gens[lvl].append(gid)
            self._extend_orbit(lvl, gid)

    def _extend_orbit(self, lvl: int, new_gid: int):
        in_orbit = self._in_orbit[lvl]
        reps = self._reps[lvl]
        reps_inv = self._reps_inv[lvl]
        orbit = self._orbits[lvl]
        gens = [self._gens[i] for i in self._level_gens[lvl]]
        new_gen = self._gens[new_gid]
        fresh = []

        def visit(beta, x):
            gamma = x[beta]
            if not in_orbit[gamma]:
                in_orbit[gamma] = True
                u = x[reps[beta]]
                reps[gamma] = u
                reps_inv[gamma][u] = np.arange(self.degree, dtype=np.int32)
                orbit.append(int(gamma))
                fresh.append(int(gamma))

        for beta in list(orbit):
            visit(beta, new_gen)
        while fresh:
            beta = fresh.pop()
            for x in gens:
                visit(beta, x)

    # -- queries ----------------------------------------------------------

    @property
    def order(self) -> int:
        return math.prod(len(o) for o in self._orbits)

    @property
    def strong_generators(self) -> list:
        return [Permutation(self.alphabet, g, check=False) for g in self._gens]

    @property
    def orbit_lengths(self) -> tuple:
        return tuple(len(o) for o in self._orbits)

    def transversal(self, level: int) -> dict:
        """Map from orbit point to coset representative at ``level``."""
        return {
            beta: Permutation(self.alphabet, self._reps[level, beta].copy(), check=False)
            for beta in self._orbits[level]
        }

    def sift(self, images) -> tuple:
        base = np.array(self.base, dtype=np.int64)
        return kernels.sift(np.asarray(images, dtype=np.int32), base, 0, self.depth,
                            self._in_orbit, self._reps_inv)

    def contains(self, g) -> bool:
        g = _as_array(g)
        if g.alphabet.size != self.degree:
            raise AlphabetMismatchError(f"degree mismatch: {g.alphabet.size} vs {self.degree}")
        h, level = self.sift(g.images)
        return level == self.depth and bool(np.array_equal(h, np.arange(self.degree)))

    def __contains__(self, g):
        return self.contains(g)

    def level_generators(self, level: int) -> list:
        return [self._gens[i] for i in self._level_gens[level]]

    def __repr__(self):
        return f"GroupChain(degree={self.degree}, order={self.order}, base={self.base})"


def _first_moved(g: np.ndarray) -> int:
    moved = np.flatnonzero(g != np.arange(g.shape[0]))
    return int(moved[0])


def _is_even(g: np.ndarray) -> bool:
    seen = np.zeros(g.shape[0], dtype=bool)
    parity = 0
    for s in range(g.shape[0]):
        if seen[s]:
            continue
        length = 0
        t = s
        while not seen[t]:
            seen[t] = True
            t = g[t]
            length += 1
        parity ^= (length - 1) & 1
    return parity == 0


def build_chain(gens: Sequence, alphabet: Optional[Alphabet] = None) -> GroupChain:
    """Deterministic Schreier-Sims over the given generators.

    ``gens`` may hold :class:`Permutation` or :class:`Instruction` values; all
    must share one alphabet. An empty list needs ``alphabet``.
    """
    perms = [_as_array(g) for g in gens]
    if not perms and alphabet is None:
        raise ValueError("build_chain needs at least one generator or an explicit alphabet")
    alphabet = alphabet if alphabet is not None else perms[0].alphabet
    for p in perms:
        if p.alphabet != alphabet:
            raise AlphabetMismatchError(
                f"alphabet mismatch: (q={p.alphabet.q}, n={p.alphabet.n}) vs (q={alphabet.q}, n={alphabet.n})"
            )
    chain = GroupChain(alphabet)
    m = alphabet.size
    ident = np.arange(m, dtype=np.int32)
    arrays = []
    seen = set()
    for p in perms:
        g = np.ascontiguousarray(p.images, dtype=np.int32)
        key = g.tobytes()
        if np.array_equal(g, ident) or key in seen:
            continue
        seen.add(key)
        arrays.append(g)
    if not arrays:
        return chain

    bound = math.factorial(m)
    if all(_is_even(g) for g in arrays):
        bound //= 2

    for g in arrays:
        if all(g[b] == b for b in chain.base):
            chain._add_level(_first_moved(g))
    for g in arrays:
        fixes = 0
        while fixes < chain.depth and g[chain.base[fixes]] == chain.base[fixes]:
            fixes += 1
        chain._add_generator(g, range(0, fixes + 1))
    if chain.order == bound:
        return chain

    tested = [set() for _ in range(chain.depth)]
    i = chain.depth - 1
    while i >= 0:
        jumped = False
        reps = chain._reps[i]
        reps_inv = chain._reps_inv[i]
        for beta in list(chain._orbits[i]):
            for gid in list(chain._level_gens[i]):
                if (beta, gid) in tested[i]:
                    continue
                tested[i].add((beta, gid))
                x = chain._gens[gid]
                schreier = reps_inv[x[beta]][x[reps[beta]]]
                h, j = chain_sift_from(chain, schreier, i + 1)
                if j == chain.depth and np.array_equal(h, ident):
                    continue
                if j == chain.depth:
                    chain._add_level(_first_moved(h))
                    tested.append(set())
                chain._add_generator(np.ascontiguousarray(h, dtype=np.int32), range(i + 1, j + 1))
                if chain.order == bound:
                    return chain
                i = j
                jumped = True
                break
            if jumped:
                break
        if not jumped:
            i -= 1
    return chain


def chain_sift_from(chain: GroupChain, g: np.ndarray, start: int):
    base = np.array(chain.base, dtype=np.int64)
    return kernels.sift(g, base, start, chain.depth, chain._in_orbit, chain._reps_inv)


def group_order(chain: GroupChain) -> int:
    return chain.order


def is_member(g, chain: GroupChain) -> bool:
    return chain.contains(g)


# --------------------------------------------------------------------------
# Orbits and transitivity
# --------------------------------------------------------------------------

def orbit(point: int, gens: Sequence[np.ndarray], degree: int) -> set:
    seen = {point}
    stack = [point]
    while stack:
        p = stack.pop()
        for g in gens:
            r = int(g[p])
            if r not in seen:
                seen.add(r)
                stack.append(r)
    return seen


def is_transitive(chain: GroupChain) -> bool:
    m = chain.degree
    return len(orbit(0, chain._gens, m)) == m


def is_2transitive(chain: GroupChain) -> bool:
    m = chain.degree
    if not is_transitive(chain):
        return False
    if m <= 2:
        return True
    if chain.depth < 2:
        return False
    b0 = chain.base[0]
    other = 0 if b0 != 0 else 1
    return len(orbit(other, chain.level_generators(1), m)) == m - 1


# --------------------------------------------------------------------------
# Element enumeration
# --------------------------------------------------------------------------

def element_array(chain: GroupChain, cap: Optional[int] = None) -> np.ndarray:
    """All group elements as rows of an ``(order, degree)`` array."""
    cap = element_cap(cap)
    if chain.order > cap:
        raise TooLargeError("group order", chain.order, cap)
    m = chain.degree
    out = np.arange(m, dtype=np.int32)[None]
    for lvl in range(chain.depth - 1, -1, -1):
        reps = chain._reps[lvl][chain._orbits[lvl]]
        out = reps[:, out].reshape(-1, m)
    return out


def elements(chain: GroupChain, cap: Optional[int] = None) -> Iterator[Permutation]:
    for row in element_array(chain, cap):
        yield Permutation(chain.alphabet, row, check=False)


# --------------------------------------------------------------------------
# Identification
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupIdentity:
    tag: str
    order: int

    def __str__(self):
        return f"{self.tag} (order {self.order})"


def identify_group(chain: GroupChain, alphabet: Optional[Alphabet] = None) -> GroupIdentity:
    alphabet = alphabet or chain.alphabet
    if alphabet.size != chain.degree:
        raise AlphabetMismatchError(f"degree mismatch: {alphabet.size} vs {chain.degree}")
    order = chain.order
    full = math.factorial(chain.degree)
    if order == full:
        return GroupIdentity(SYMMETRIC, order)
    if order * 2 == full:
        return GroupIdentity(ALTERNATING, order)
    if alphabet.q == 2 and order == affine_gf2_order(alphabet.n):
        return GroupIdentity(AFFINE_GF2, order)
    return GroupIdentity(OTHER, order)
