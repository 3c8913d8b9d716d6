"""States, permutations and instructions over A^n with A = {0, ..., q-1}.

States are indexed big-endian: register 1 is the most significant digit, so
``(a_1, ..., a_n)`` has index ``sum(a_i * q**(n - i))``. Registers are
numbered from 1 everywhere in the public API.
"""
from __future__ import annotations

import itertools
import math
import sys
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Optional, Sequence

import numpy as np

from .config import element_cap
from .errors import (
    AlphabetMismatchError,
    InvalidInstructionError,
    InvalidPermutationError,
    InvalidStateError,
    TooLargeError,
)

State = tuple


@dataclass(frozen=True)
class Alphabet:
    q: int
    n: int

    def __post_init__(self):
        if int(self.q) != self.q or self.q < 2:
            raise ValueError(f"alphabet size q must be an integer >= 2, got {self.q}")
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"register count n must be an integer >= 1, got {self.n}")
        if self.q**self.n > sys.maxsize:
            raise ValueError(f"q**n = {self.q}**{self.n} exceeds the platform index range")

    @property
    def size(self) -> int:
        return self.q**self.n

    def states(self) -> Iterator[State]:
        return itertools.product(range(self.q), repeat=self.n)

    @property
    def coords(self) -> np.ndarray:
        """Read-only ``(q**n, n)`` array; row ``s`` is the state with index ``s``."""
        return _coords(self.q, self.n)

    def weight(self, register: int) -> int:
        return self.q ** (self.n - register)

    def __str__(self):
        return f"A^n with q={self.q}, n={self.n}"


@lru_cache(maxsize=64)
def _coords(q, n):
    idx = np.arange(q**n, dtype=np.int64)
    out = np.empty((q**n, n), dtype=np.int32)
    for i in range(n - 1, -1, -1):
        idx, out[:, i] = np.divmod(idx, q)
    out.flags.writeable = False
    return out


def state_index(state: Sequence[int], alphabet: Alphabet) -> int:
    if len(state) != alphabet.n:
        raise InvalidStateError(f"state {tuple(state)} has {len(state)} coordinates, expected {alphabet.n}")
    index = 0
    for c in state:
        if not 0 <= c < alphabet.q:
            raise InvalidStateError(f"coordinate {c} of state {tuple(state)} is outside 0..{alphabet.q - 1}")
        index = index * alphabet.q + int(c)
    return index


def index_state(index: int, alphabet: Alphabet) -> State:
    if not 0 <= index < alphabet.size:
        raise InvalidStateError(f"state index {index} outside 0..{alphabet.size - 1}")
    out = []
    for _ in range(alphabet.n):
        index, c = divmod(index, alphabet.q)
        out.append(c)
    return tuple(reversed(out))


def _check_same(a: Alphabet, b: Alphabet):
    if a != b:
        raise AlphabetMismatchError(f"alphabet mismatch: (q={a.q}, n={a.n}) vs (q={b.q}, n={b.n})")


# --------------------------------------------------------------------------
# Permutations
# --------------------------------------------------------------------------

class Permutation:
    """A bijection of A^n stored as a dense image table.

    ``images[s]`` is the index of the image of the state with index ``s``.
    Instances are immutable and hashable.
    """

    __slots__ = ("alphabet", "images", "_hash")

    def __init__(self, alphabet: Alphabet, images, *, check: bool = True):
        arr = np.array(images, dtype=np.int32)
        if check:
            if arr.shape != (alphabet.size,):
                raise InvalidPermutationError(f"expected {alphabet.size} images, got shape {arr.shape}")
            if arr.size and (arr.min() < 0 or arr.max() >= alphabet.size):
                raise InvalidPermutationError("image index out of range")
            if np.bincount(arr, minlength=alphabet.size).max(initial=0) > 1:
                raise InvalidPermutationError("images are not a bijection")
        arr.flags.writeable = False
        self.alphabet = alphabet
        self.images = arr
        self._hash = None

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "Permutation":
        return cls(alphabet, np.arange(alphabet.size), check=False)

    @classmethod
    def from_function(cls, alphabet: Alphabet, fn: Callable[[State], Sequence[int]]) -> "Permutation":
        return cls(alphabet, [state_index(fn(s), alphabet) for s in alphabet.states()])

    @classmethod
    def from_cycles(cls, alphabet: Alphabet, cycles, labels=None) -> "Permutation":
        """Build from disjoint cycles of canonical indices.

        If ``labels`` is given, cycle entries are looked up in it first (e.g. a
        dict from 1-based paper labels to canonical indices).
        """
        images = np.arange(alphabet.size)
        seen = set()
        for cyc in cycles:
            pts = [labels[c] if labels is not None else c for c in cyc]
            if seen.intersection(pts) or len(set(pts)) != len(pts):
                raise InvalidPermutationError(f"cycles are not disjoint at {tuple(cyc)}")
            seen.update(pts)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                images[a] = b
        return cls(alphabet, images)

    @property
    def degree(self) -> int:
        return self.alphabet.size

    def __call__(self, state: Sequence[int]) -> State:
        return index_state(int(self.images[state_index(state, self.alphabet)]), self.alphabet)

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.alphabet == other.alphabet and np.array_equal(self.images, other.images)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.alphabet, self.images.tobytes()))
        return self._hash

    def __repr__(self):
        return f"Permutation(q={self.alphabet.q}, n={self.alphabet.n}, {format_cycles(self)})"

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.images, np.arange(self.degree)))

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(self.degree, dtype=inv.dtype)
        return Permutation(self.alphabet, inv, check=False)

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = np.arange(self.degree, dtype=np.int32)
        power = base.images
        while k:
            if k & 1:
                result = power[result]
            power = power[power]
            k >>= 1
        return Permutation(self.alphabet, result, check=False)

    @property
    def sign(self) -> int:
        return cycle_decomposition(self).sign

    @property
    def order(self) -> int:
        return math.lcm(1, *(len(c) for c in cycle_decomposition(self).cycles))


def compose(f: Permutation, g: Permutation) -> Permutation:
    """``f o g``: apply ``g`` first, then ``f``."""
    _check_same(f.alphabet, g.alphabet)
    return Permutation(f.alphabet, f.images[g.images], check=False)


def inverse(f: Permutation) -> Permutation:
    return f.inverse()


def conjugate(h: Permutation, g: Permutation) -> Permutation:
    """``h^-1 o g o h``."""
    _check_same(h.alphabet, g.alphabet)
    return Permutation(h.alphabet, h.inverse().images[g.images[h.images]], check=False)


@dataclass(frozen=True)
class CycleDecomposition:
    cycles: tuple
    sign: int


def cycle_decomposition(f: Permutation) -> CycleDecomposition:
    """Disjoint cycles of length >= 2, each starting at its smallest point."""
    images = f.images
    seen = np.zeros(f.degree, dtype=bool)
    cycles = []
    transpositions = 0
    for start in range(f.degree):
        if seen[start] or images[start] == start:
            continue
        cyc = [start]
        seen[start] = True
        nxt = int(images[start])
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = int(images[nxt])
        cycles.append(tuple(cyc))
        transpositions += len(cyc) - 1
    return CycleDecomposition(tuple(cycles), -1 if transpositions % 2 else 1)


def format_cycles(f: Permutation, labels=None) -> str:
    """Cycle notation; ``labels`` maps canonical index to display label."""
    cycles = cycle_decomposition(f).cycles
    if not cycles:
        return "()"
    if labels is None:
        return "".join("(" + ",".join(str(p) for p in c) + ")" for c in cycles)
    out = []
    for c in cycles:
        lab = [labels[p] for p in c]
        k = lab.index(min(lab))
        lab = lab[k:] + lab[:k]
        out.append((lab[0], "(" + ",".join(str(x) for x in lab) + ")"))
    return "".join(s for _, s in sorted(out))


# --------------------------------------------------------------------------
# Coordinate functions
# --------------------------------------------------------------------------

def coordinate_values(f: Permutation) -> np.ndarray:
    """``(q**n, n)`` array whose column ``j-1`` is the coordinate function f_j."""
    return f.alphabet.coords[f.images]


def updated_registers(f: Permutation) -> frozenset:
    changed = np.any(coordinate_values(f) != f.alphabet.coords, axis=0)
    return frozenset(int(j) + 1 for j in np.flatnonzero(changed))


def essential_variables(f: Permutation, register: int) -> frozenset:
    a = f.alphabet
    if not 1 <= register <= a.n:
        raise ValueError(f"register {register} outside 1..{a.n}")
    values = coordinate_values(f)[:, register - 1].reshape((a.q,) * a.n)
    out = set()
    for k in range(a.n):
        first = np.take(values, [0], axis=k)
        if np.any(values != first):
            out.add(k + 1)
    return frozenset(out)


def arity(f: Permutation) -> int:
    return max(len(essential_variables(f, j)) for j in range(1, f.alphabet.n + 1))


def is_lary(f: Permutation, l: int) -> bool:
    return arity(f) <= l


def is_unary_permutation(f: Permutation) -> bool:
    """Membership in U = Sym(A) wr Sym(n)."""
    variables = []
    for j in range(1, f.alphabet.n + 1):
        ess = essential_variables(f, j)
        if len(ess) != 1:
            return False
        variables.extend(ess)
    return len(set(variables)) == f.alphabet.n


# --------------------------------------------------------------------------
# Instructions and programs
# --------------------------------------------------------------------------

class Instruction:
    """``y_j <- table[y]``: a permutation changing register ``j`` only.

    ``table[s]`` is the new value of register ``j`` on the state with index
    ``s``. The identity is an instruction by convention; it is stored with
    register 1 and the trivial table.
    """

    __slots__ = ("alphabet", "register", "table", "_perm")

    def __init__(self, alphabet: Alphabet, register: int, table, *, check: bool = True):
        if not 1 <= register <= alphabet.n:
            raise InvalidInstructionError(f"register {register} outside 1..{alphabet.n}")
        arr = np.array(table, dtype=np.int32)
        if check:
            if arr.shape != (alphabet.size,):
                raise InvalidInstructionError(f"expected {alphabet.size} table entries, got shape {arr.shape}")
            if arr.min() < 0 or arr.max() >= alphabet.q:
                raise InvalidInstructionError("table value outside the alphabet")
            fibers = np.sort(arr.reshape((alphabet.q,) * alphabet.n), axis=register - 1)
            shape = [1] * alphabet.n
            shape[register - 1] = alphabet.q
            if not np.array_equal(fibers, np.broadcast_to(np.arange(alphabet.q).reshape(shape), fibers.shape)):
                raise InvalidInstructionError(
                    f"update of register {register} is not a bijection on every fiber"
                )
        arr.flags.writeable = False
        self.alphabet = alphabet
        self.register = register
        self.table = arr
        self._perm = None

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "Instruction":
        return cls(alphabet, 1, alphabet.coords[:, 0], check=False)

    @classmethod
    def from_update(cls, alphabet: Alphabet, register: int, fn: Callable[[State], int]) -> "Instruction":
        """``y_register <- fn(y)`` for a Python function of the full state."""
        return cls(alphabet, register, [fn(s) for s in alphabet.states()])

    @property
    def perm(self) -> Permutation:
        if self._perm is None:
            a = self.alphabet
            old = a.coords[:, self.register - 1]
            images = np.arange(a.size, dtype=np.int64) + (self.table - old).astype(np.int64) * a.weight(self.register)
            self._perm = Permutation(a, images, check=False)
        return self._perm

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.table, self.alphabet.coords[:, self.register - 1]))

    def __eq__(self, other):
        if not isinstance(other, Instruction):
            return NotImplemented
        return self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    def __repr__(self):
        if self.is_identity():
            return f"Instruction(identity, q={self.alphabet.q}, n={self.alphabet.n})"
        return f"Instruction(y{self.register} <- table, q={self.alphabet.q}, n={self.alphabet.n})"


def as_instruction(f: Permutation) -> Optional[Instruction]:
    regs = updated_registers(f)
    if not regs:
        return Instruction.identity(f.alphabet)
    if len(regs) > 1:
        return None
    (j,) = regs
    return Instruction(f.alphabet, j, coordinate_values(f)[:, j - 1], check=False)


@dataclass(frozen=True)
class Program:
    alphabet: Alphabet
    steps: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        for st in self.steps:
            _check_same(self.alphabet, st.alphabet)

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def registers(self) -> tuple:
        return tuple(st.register for st in self.steps)


def instruction_count(alphabet: Alphabet) -> int:
    """Number of non-identity instructions, ``n * ((q!)**(q**(n-1)) - 1)``."""
    q, n = alphabet.q, alphabet.n
    return n * (math.factorial(q) ** (q ** (n - 1)) - 1)


def enumerate_instructions(alphabet: Alphabet, cap: Optional[int] = None) -> Iterator[Instruction]:
    """Every non-identity instruction exactly once.

    Order: ascending register; within a register, the tuple of fiber
    permutations in lexicographic order (fibers ordered by the canonical index
    of the remaining registers, each fiber permutation a lexicographic
    permutation of ``range(q)``).
    """
    count = instruction_count(alphabet)
    cap = element_cap(cap)
    if count > cap:
        raise TooLargeError(f"instruction set of q={alphabet.q}, n={alphabet.n}", count, cap)
    return _enumerate_instructions(alphabet)


def _enumerate_instructions(alphabet):
    q, n = alphabet.q, alphabet.n
    perms = [np.array(p, dtype=np.int32) for p in itertools.permutations(range(q))]
    identity_choice = (0,) * (q ** (n - 1))
    for j in range(1, n + 1):
        # state index = fiber position (other registers) interleaved with x_j
        coords = alphabet.coords
        fiber_of = np.zeros(alphabet.size, dtype=np.int64)
        for k in range(n):
            if k != j - 1:
                fiber_of = fiber_of * q + coords[:, k]
        xj = coords[:, j - 1]
        for choice in itertools.product(range(len(perms)), repeat=q ** (n - 1)):
            if choice == identity_choice:
                continue
            table = np.stack([perms[c] for c in choice])[fiber_of, xj]
            yield Instruction(alphabet, j, table, check=False)
