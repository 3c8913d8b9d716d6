"""Memoryless programs: constructive synthesis and exact shortest programs.

``synthesize`` factors f recursively. At level r (registers 1..r-1 already
fixed by the remaining permutation) the routing graph for register r is
q-edge-colored, and f splits into

* stage A: write the edge color into register r (an instruction),
* a middle permutation that fixes registers 1..r,
* stage C: restore register r to its final value (an instruction).

The innermost middle permutation moves register n only, so the program
updates registers 1, 2, ..., n, ..., 2, 1: at most 2n - 1 instructions.
"""
from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from . import kernels
from .core import Alphabet, Instruction, Permutation, Program, State, as_instruction, enumerate_instructions, index_state, state_index
from .errors import AlphabetMismatchError, NotComputableError, TooLargeError
from .routing import edge_color, perm_to_routing_graph

# full-instruction-set searches are limited to q^n <= 9
MAX_SEARCH_DEGREE = 9


def _split(images: np.ndarray, alphabet: Alphabet, register: int):
    f = Permutation(alphabet, images, check=False)
    coloring = edge_color(perm_to_routing_graph(f, register), alphabet.q)
    color = np.empty(alphabet.size, dtype=np.int64)
    color[coloring.labels] = coloring.colors
    w = alphabet.weight(register)
    x_r = alphabet.coords[:, register - 1].astype(np.int64)
    states = np.arange(alphabet.size, dtype=np.int64)

    stage_a = states + (color - x_r) * w
    target = images.astype(np.int64)
    routed = target + (color - x_r[target]) * w
    middle = np.empty(alphabet.size, dtype=np.int64)
    middle[stage_a] = routed
    stage_c = np.arange(alphabet.size, dtype=np.int64)
    stage_c[routed] = target

    # colors at each column are distinct, so both stages are instructions
    ins_a = Instruction(alphabet, register, color, check=True)
    ins_c = Instruction(alphabet, register, alphabet.coords[target, register - 1][np.argsort(routed)], check=True)
    assert np.array_equal(ins_c.perm.images, stage_c)
    return ins_a, middle, ins_c


def synthesize(f: Permutation) -> Program:
    """A program for f of length at most 2n - 1."""
    a = f.alphabet
    head, tail = [], []
    cur = np.asarray(f.images, dtype=np.int64)
    for r in range(1, a.n):
        ins_a, cur, ins_c = _split(cur, a, r)
        head.append(ins_a)
        tail.append(ins_c)
    last = as_instruction(Permutation(a, cur, check=False))
    assert last is not None and (last.is_identity() or last.register == a.n)
    steps = head + [last] + tail[::-1]
    return Program(a, [s for s in steps if not s.is_identity()])


def program_to_perm(p: Program) -> Permutation:
    images = np.arange(p.alphabet.size, dtype=np.int32)
    for step in p:
        images = step.perm.images[images]
    return Permutation(p.alphabet, images, check=False)


def evaluate(p: Program, state: Sequence[int]) -> State:
    s = state_index(state, p.alphabet)
    for step in p:
        s = int(step.perm.images[s])
    return index_state(s, p.alphabet)


# --------------------------------------------------------------------------
# Shortest programs
# --------------------------------------------------------------------------

def _search_side(start, gens):
    return {"layers": [(start[None], np.array([-1]), np.array([-1]))],
            "ranks": [kernels.rank_rows(start[None])],
            "gens": gens}


def _expand(side):
    perms, _, _ = side["layers"][-1]
    gens = side["gens"]
    cand = kernels.left_compose_all(gens, perms)
    rk = kernels.rank_rows(cand)
    uniq, first = np.unique(rk, return_index=True)
    first = np.sort(first)  # keep candidate order: frontier order, then generator order
    rk = rk[first]
    seen = np.concatenate(side["ranks"])
    fresh = ~np.isin(rk, seen)
    keep = first[fresh]
    r = len(gens)
    side["layers"].append((cand[keep], keep // r, keep % r))
    side["ranks"].append(rk[fresh])
    return len(keep)


def _trace(side, depth, index):
    """Generator indices along the path to ``layers[depth][index]``, outermost first."""
    path = []
    while depth > 0:
        _, parent, gen = side["layers"][depth]
        path.append(int(gen[index]))
        index = int(parent[index])
        depth -= 1
    return path


def shortest_word(target: Permutation, gens: Sequence, *, max_states: Optional[int] = None) -> list:
    """Indices into ``gens`` of a shortest product equal to ``target``.

    The returned list is in program order: apply ``gens[w[0]]`` first.
    Bidirectional breadth-first search; the backward side multiplies by
    inverses, so ``gens`` need not be closed under inversion. Raises
    NotComputableError when ``target`` is not in the generated group.
    """
    from .config import element_cap

    a = target.alphabet
    perms = []
    for g in gens:
        g = g.perm if isinstance(g, Instruction) else g
        if g.alphabet != a:
            raise AlphabetMismatchError("generators and target use different alphabets")
        perms.append(np.asarray(g.images, dtype=np.int32))
    if a.size > kernels.MAX_RANK_DEGREE:
        raise TooLargeError(f"search over permutations of degree {a.size}", a.size, kernels.MAX_RANK_DEGREE)
    cap = element_cap(max_states)
    ident = np.arange(a.size, dtype=np.int32)
    tgt = np.asarray(target.images, dtype=np.int32)
    if np.array_equal(tgt, ident):
        return []
    fwd_gens = np.array(perms, dtype=np.int32).reshape(-1, a.size)
    bwd_gens = np.argsort(fwd_gens, axis=1).astype(np.int32)
    fwd = _search_side(ident, fwd_gens)
    bwd = _search_side(tgt, bwd_gens)
    visited = 2
    while True:
        side, other = (fwd, bwd) if len(fwd["layers"][-1][0]) <= len(bwd["layers"][-1][0]) else (bwd, fwd)
        if len(side["layers"][-1][0]) == 0:
            raise NotComputableError("target is not in the group generated by the given set")
        visited += _expand(side)
        if visited > cap:
            raise TooLargeError("bidirectional search states", visited, cap)
        new = side["ranks"][-1]
        best = None
        for depth, rk in enumerate(other["ranks"]):
            hit = np.flatnonzero(np.isin(new, rk))
            if len(hit):
                i = int(hit[0])
                j = int(np.flatnonzero(rk == new[i])[0])
                best = (i, depth, j)
                break
        if best is None:
            continue
        i, odepth, j = best
        sdepth = len(side["layers"]) - 1
        s_path = _trace(side, sdepth, i)
        o_path = _trace(other, odepth, j)
        f_path, b_path = (s_path, o_path) if side is fwd else (o_path, s_path)
        # forward path lists the last-applied generator first
        return f_path[::-1] + b_path


def full_instruction_set(alphabet: Alphabet) -> list:
    if alphabet.size > MAX_SEARCH_DEGREE:
        raise TooLargeError(f"full instruction search at q^n = {alphabet.size}", alphabet.size, MAX_SEARCH_DEGREE)
    return list(enumerate_instructions(alphabet))


def optimal_program(f: Permutation) -> Program:
    """A program of minimum length over all instructions (q^n <= 9)."""
    ins = full_instruction_set(f.alphabet)
    word = shortest_word(f, ins)
    return Program(f.alphabet, [ins[k] for k in word])
