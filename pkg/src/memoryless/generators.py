"""n-instruction generating sets for Sym(A^n) and Alt(A^n).

Every construction except the binary Gray one is a case table: an ordered
list of branches ``(condition, new value of the updated register)`` with an
optional catch-all. Tables are checked over all of A^n while they are built.
If a state matches two explicit branches, or no branch and there is no
catch-all, construction fails loudly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .core import Alphabet, Instruction, Permutation, as_instruction, essential_variables, updated_registers
from .errors import UnsupportedCaseError
from .graycode import gray_labels
from .groups import ALTERNATING, SYMMETRIC, GroupIdentity, build_chain, identify_group, is_transitive


class CaseTableError(RuntimeError):
    """A case table is not a total, exclusive description of a bijection."""


@dataclass(frozen=True)
class Case:
    label: str
    when: Optional[Callable]  # None marks the catch-all ("otherwise")
    value: Callable


@dataclass(frozen=True)
class GeneratorFamily:
    alphabet: Alphabet
    target: str
    pis: tuple
    construction: str
    branch_counts: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "pis", tuple(self.pis))


def build_from_cases(alphabet: Alphabet, register: int, cases: Sequence[Case]):
    """Instruction updating ``register`` described by ``cases``.

    Returns ``(instruction, counts)`` where ``counts[label]`` is the number of
    states handled by each branch.
    """
    explicit = [c for c in cases if c.when is not None]
    fallback = [c for c in cases if c.when is None]
    if len(fallback) > 1:
        raise CaseTableError("more than one catch-all branch")
    counts = {c.label: 0 for c in cases}
    table = []
    for a in alphabet.states():
        hits = [c for c in explicit if c.when(a)]
        if len(hits) > 1:
            raise CaseTableError(
                f"register {register}: state {a} matches branches {[c.label for c in hits]}"
            )
        if not hits:
            if not fallback:
                raise CaseTableError(f"register {register}: state {a} matches no branch")
            hits = fallback
        counts[hits[0].label] += 1
        table.append(hits[0].value(a))
    try:
        ins = Instruction(alphabet, register, table)
    except ValueError as exc:
        raise CaseTableError(f"register {register}: case table is not a bijection ({exc})") from exc
    return ins, counts


# --------------------------------------------------------------------------
# Predicates on a state a = (a_1, ..., a_n); registers are 1-based.
# --------------------------------------------------------------------------

def _reg(a, r):
    return a[r - 1]


def _rest_zero(a):
    return all(x == 0 for x in a[1:])


def _others(a, r):
    return [x for i, x in enumerate(a) if i != r - 1]


def _others_all(a, r, v):
    return all(x == v for x in _others(a, r))


# --------------------------------------------------------------------------
# Symmetric group
# --------------------------------------------------------------------------

def _sym_odd_pi1(q):
    return [
        Case("swap 0,1 on the zero fiber", lambda a: a[0] in (0, 1) and _rest_zero(a), lambda a: 1 - a[0]),
        Case("fix a1>1 on the zero fiber", lambda a: a[0] > 1 and _rest_zero(a), lambda a: a[0]),
        Case("wrap q-1 to 0", lambda a: a[0] == q - 1 and not _rest_zero(a), lambda a: 0),
        Case("increment", None, lambda a: a[0] + 1),
    ]


def _cycle_then_reverse_pir(q, r):
    """q-cycle on every fiber of register r; reversed on the all-(q-1) fiber."""
    return [
        Case("wrap q-1 to 0", lambda a: _reg(a, r) == q - 1 and not _others_all(a, r, q - 1), lambda a: 0),
        Case("increment", lambda a: _reg(a, r) != q - 1 and not _others_all(a, r, q - 1), lambda a: _reg(a, r) + 1),
        Case("wrap 0 to q-1 on the top fiber", lambda a: _reg(a, r) == 0 and _others_all(a, r, q - 1), lambda a: q - 1),
        Case("decrement", None, lambda a: _reg(a, r) - 1),
    ]


def _sym_even_pi1(q):
    return [
        Case("swap 0,1 on the zero fiber", lambda a: a[0] in (0, 1) and _rest_zero(a), lambda a: 1 - a[0]),
        Case("fix a1>1 on the zero fiber", lambda a: a[0] > 1 and _rest_zero(a), lambda a: a[0]),
        Case("fix 0 off the zero fiber", lambda a: a[0] == 0 and not _rest_zero(a), lambda a: 0),
        Case("wrap q-1 to 1", lambda a: a[0] == q - 1 and not _rest_zero(a), lambda a: 1),
        Case("increment", None, lambda a: a[0] + 1),
    ]


def _sym_even_pir(q, r):
    top = lambda a: _others_all(a, r, q - 1)  # noqa: E731
    return [
        Case("increment", lambda a: _reg(a, r) != q - 1 and not top(a), lambda a: _reg(a, r) + 1),
        Case("increment below q-2 on the top fiber", lambda a: _reg(a, r) < q - 2 and top(a), lambda a: _reg(a, r) + 1),
        Case("wrap q-1 to 0", lambda a: _reg(a, r) == q - 1 and not top(a), lambda a: 0),
        Case("wrap q-2 to 0 on the top fiber", lambda a: _reg(a, r) == q - 2 and top(a), lambda a: 0),
        Case("fix the all-(q-1) state", lambda a: all(x == q - 1 for x in a), lambda a: _reg(a, r)),
    ]


def _binary_gray_family(alphabet):
    n = alphabet.n
    labels = gray_labels(alphabet)
    pis = []
    for r in range(1, n):
        w = alphabet.weight(r)
        pairs = []
        for s in range(alphabet.size):
            t = s ^ w
            if s < t:
                pair = sorted((int(labels[s]), int(labels[t])))
                pairs.append((pair, (s, t)))
        pairs.sort()
        drop = next(i for i, (pair, _) in enumerate(pairs) if pair[1] - pair[0] == 1)
        cycles = [st for i, (_, st) in enumerate(pairs) if i != drop]
        pis.append(as_instruction(Permutation.from_cycles(alphabet, cycles)))
    # paper label 1 = 0..00, label 2 = 0..01
    pis.append(as_instruction(Permutation.from_cycles(alphabet, [(0, 1)])))
    return pis


def sym_generators(alphabet: Alphabet) -> GeneratorFamily:
    """n instructions generating Sym(A^n); every case except q = n = 2."""
    q, n = alphabet.q, alphabet.n
    if q == 2 and n == 2:
        raise UnsupportedCaseError("Sym(A^n) needs three instructions when q = n = 2")
    if n < 2:
        raise UnsupportedCaseError("generating-set constructions need n >= 2")
    if q == 2:
        return GeneratorFamily(alphabet, SYMMETRIC, _binary_gray_family(alphabet), "binary Gray")
    if q % 2 == 1:
        tables = [_sym_odd_pi1(q)] + [_cycle_then_reverse_pir(q, r) for r in range(2, n + 1)]
        name = "odd q"
    else:
        tables = [_sym_even_pi1(q)] + [_sym_even_pir(q, r) for r in range(2, n + 1)]
        name = "even q"
    return _family(alphabet, SYMMETRIC, tables, name)


# --------------------------------------------------------------------------
# Alternating group
# --------------------------------------------------------------------------

def _three_cycle_on_zero_fiber(a):
    return {0: 1, 1: 2, 2: 0}[a[0]]


def _lex_pi_last():
    return [
        Case("3-cycle on the zero fiber", lambda a: all(x == 0 for x in a[:-1]), lambda a: (a[-1] + 1) % 3),
        Case("fix", None, lambda a: a[-1]),
    ]


def _lex_pir(r):
    return [
        Case("backward 3-cycle on the last fiber", lambda a: _others_all(a, r, 2), lambda a: (_reg(a, r) - 1) % 3),
        Case("forward 3-cycle", None, lambda a: (_reg(a, r) + 1) % 3),
    ]


def _alt_15_pi1(q):
    return [
        Case("0 to 1 on the zero fiber", lambda a: a[0] < 3 and _rest_zero(a), _three_cycle_on_zero_fiber),
        Case("fix a1>2 on the zero fiber", lambda a: a[0] > 2 and _rest_zero(a), lambda a: a[0]),
        Case("wrap q-1 to 0", lambda a: a[0] == q - 1 and not _rest_zero(a), lambda a: 0),
        Case("increment", None, lambda a: a[0] + 1),
    ]


def _alt_02_pi1(q):
    return [
        Case("3-cycle on the zero fiber", lambda a: a[0] < 3 and _rest_zero(a), _three_cycle_on_zero_fiber),
        Case("fix a1>2 on the zero fiber", lambda a: a[0] > 2 and _rest_zero(a), lambda a: a[0]),
        Case("fix 0 off the zero fiber", lambda a: a[0] == 0 and not _rest_zero(a), lambda a: 0),
        Case("wrap q-1 to 1", lambda a: a[0] == q - 1 and not _rest_zero(a), lambda a: 1),
        Case("increment", None, lambda a: a[0] + 1),
    ]


def _alt_02_pir(q, r):
    top = lambda a: _others_all(a, r, q - 1)  # noqa: E731
    return [
        Case("wrap q-1 to 0", lambda a: _reg(a, r) == q - 1 and not top(a), lambda a: 0),
        Case("increment", lambda a: _reg(a, r) != q - 1 and not top(a), lambda a: _reg(a, r) + 1),
        Case("increment below q-3 on the top fiber", lambda a: _reg(a, r) < q - 3 and top(a), lambda a: _reg(a, r) + 1),
        Case("wrap q-3 to 0 on the top fiber", lambda a: _reg(a, r) == q - 3 and top(a), lambda a: 0),
        Case("fix", None, lambda a: _reg(a, r)),
    ]


def _alt_3mod6_pi1(q):
    return [
        Case("3-cycle on the zero fiber", lambda a: a[0] < 3 and _rest_zero(a), _three_cycle_on_zero_fiber),
        Case("fix a1>2 on the zero fiber", lambda a: a[0] > 2 and _rest_zero(a), lambda a: a[0]),
        Case("fix 0,1 off the zero fiber", lambda a: a[0] in (0, 1) and not _rest_zero(a), lambda a: a[0]),
        Case("wrap q-1 to 2", lambda a: a[0] == q - 1 and not _rest_zero(a), lambda a: 2),
        Case("increment", None, lambda a: a[0] + 1),
    ]


def _alt_q4_pi1():
    # off the zero fiber a_1 -> a_1 + 2 (mod 4): two transpositions per fiber,
    # so pi_1 is even and pi_1^2 is the 3-cycle on the zero fiber
    return [
        Case("3-cycle on the zero fiber", lambda a: a[0] < 3 and _rest_zero(a), _three_cycle_on_zero_fiber),
        Case("fix 3 on the zero fiber", lambda a: a[0] == 3 and _rest_zero(a), lambda a: 3),
        Case("shift by 2", None, lambda a: (a[0] + 2) % 4),
    ]


def _q4_pi1_transpositions():
    """q = 4 pi_1 with a_1 -> 4 - a_1 (mod 4) off the zero fiber; an odd permutation."""
    return [
        Case("3-cycle on the zero fiber", lambda a: a[0] < 3 and _rest_zero(a), _three_cycle_on_zero_fiber),
        Case("fix 3 on the zero fiber", lambda a: a[0] == 3 and _rest_zero(a), lambda a: 3),
        Case("negate", None, lambda a: (4 - a[0]) % 4),
    ]


def _alt_q4_pir(r):
    top = lambda a: _others_all(a, r, 3)  # noqa: E731
    return [
        Case("wrap 3 to 0", lambda a: _reg(a, r) == 3 and not top(a), lambda a: 0),
        Case("increment", lambda a: _reg(a, r) != 3 and not top(a), lambda a: _reg(a, r) + 1),
        Case("swap 0,1 on the top fiber", lambda a: _reg(a, r) in (0, 1) and top(a), lambda a: 1 - _reg(a, r)),
        Case("fix", None, lambda a: _reg(a, r)),
    ]


def _alt_4mod6_pi1(q):
    zero_fiber = {0: 1, 1: 0, 3: 4, 4: 5, 5: 3}
    return [
        Case("swap 0,1 on the zero fiber", lambda a: a[0] in (0, 1) and _rest_zero(a), lambda a: zero_fiber[a[0]]),
        Case("3-cycle 3,4,5 on the zero fiber", lambda a: a[0] in (3, 4, 5) and _rest_zero(a), lambda a: zero_fiber[a[0]]),
        Case("fix a1=2 or a1>5 on the zero fiber", lambda a: (a[0] == 2 or a[0] > 5) and _rest_zero(a),
             lambda a: a[0]),
        Case("wrap q-1 to 0", lambda a: a[0] == q - 1 and not _rest_zero(a), lambda a: 0),
        Case("increment", None, lambda a: a[0] + 1),
    ]


def _q4mod6_pir_overlapping(q, r):
    """The six-branch q = 4 (mod 6) pi_r; branches 3 and 4 both claim a_r = 0 on the top fiber."""
    top = lambda a: _others_all(a, r, q - 1)  # noqa: E731
    return [
        Case("wrap q-1 to 0", lambda a: _reg(a, r) == q - 1 and not top(a), lambda a: 0),
        Case("increment", lambda a: _reg(a, r) != q - 1 and not top(a), lambda a: _reg(a, r) + 1),
        Case("wrap 0 to q-1 on the top fiber", lambda a: _reg(a, r) == 0 and top(a), lambda a: q - 1),
        Case("increment below q-3 on the top fiber", lambda a: _reg(a, r) < q - 3 and top(a), lambda a: _reg(a, r) + 1),
        Case("wrap q-1 to 0 when others are q-3",
             lambda a: _reg(a, r) == q - 1 and _others_all(a, r, q - 3), lambda a: 0),
        Case("fix", None, lambda a: _reg(a, r)),
    ]


def alt_generators(alphabet: Alphabet) -> GeneratorFamily:
    """n even instructions generating Alt(A^n), for q >= 3 and n >= 2."""
    q, n = alphabet.q, alphabet.n
    if q == 2:
        raise UnsupportedCaseError("the alternating-group construction needs q >= 3")
    if n < 2:
        raise UnsupportedCaseError("generating-set constructions need n >= 2")
    rest = range(2, n + 1)
    if q == 3:
        if n == 2:
            tables = [_lex_pir(1), _lex_pir(2)]
        else:
            tables = [_lex_pir(r) for r in range(1, n)] + [_lex_pi_last()]
        name = "lexicographic 3-cycles (q = 3)"
    elif q == 4:
        tables = [_alt_q4_pi1()] + [_alt_q4_pir(r) for r in rest]
        name = "q = 4"
    elif q % 6 in (1, 5):
        tables = [_alt_15_pi1(q)] + [_cycle_then_reverse_pir(q, r) for r in rest]
        name = "q = 1, 5 (mod 6)"
    elif q % 6 in (0, 2):
        tables = [_alt_02_pi1(q)] + [_alt_02_pir(q, r) for r in rest]
        name = "q = 0, 2 (mod 6)"
    elif q % 6 == 3:
        tables = [_alt_3mod6_pi1(q)] + [_cycle_then_reverse_pir(q, r) for r in rest]
        name = "q = 3 (mod 6)"
    else:
        tables = [_alt_4mod6_pi1(q)] + [_alt_02_pir(q, r) for r in rest]
        name = "q = 4 (mod 6), q > 4"
    return _family(alphabet, ALTERNATING, tables, name)


def _family(alphabet, target, tables, name):
    pis = []
    counts = {}
    for r, cases in enumerate(tables, start=1):
        ins, cnt = build_from_cases(alphabet, r, cases)
        pis.append(ins)
        counts[r] = cnt
    return GeneratorFamily(alphabet, target, pis, name, counts)


# --------------------------------------------------------------------------
# Verification
# --------------------------------------------------------------------------

@dataclass
class FamilyReport:
    alphabet: Alphabet
    target: str
    checks: list
    identity: Optional[GroupIdentity]

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.checks)

    def failed(self) -> list:
        return [name for name, passed, _ in self.checks if not passed]

    def lines(self) -> list:
        out = [f"q: {self.alphabet.q}", f"n: {self.alphabet.n}", f"target: {self.target}"]
        for name, passed, detail in self.checks:
            out.append(f"{name}: {'pass' if passed else 'FAIL'}" + (f" ({detail})" if detail else ""))
        if self.identity is not None:
            out.append(f"group: {self.identity.tag}")
            out.append(f"order: {self.identity.order}")
        out.append("OK" if self.ok else "FAIL")
        return out


def verify_family(fam: GeneratorFamily) -> FamilyReport:
    import math

    a = fam.alphabet
    checks = []
    regs = []
    for r, pi in enumerate(fam.pis, start=1):
        upd = updated_registers(pi.perm)
        regs.append(pi.register if upd else None)
        checks.append((f"instruction_{r}", upd == frozenset({r}), f"updates {sorted(upd) or 'nothing'}"))
    checks.append(("one_per_register", len(fam.pis) == a.n and regs == list(range(1, a.n + 1)),
                   f"{len(fam.pis)} generators"))
    signs = [pi.perm.sign for pi in fam.pis]
    if fam.target == ALTERNATING:
        checks.append(("parity", all(s == 1 for s in signs), f"signs {signs}"))
    else:
        checks.append(("parity", any(s == -1 for s in signs), f"signs {signs}"))
    chain = build_chain([pi.perm for pi in fam.pis], a)
    ident = identify_group(chain, a)
    expected = math.factorial(a.size) // (2 if fam.target == ALTERNATING else 1)
    checks.append(("transitive", is_transitive(chain), ""))
    checks.append(("generates", ident.tag == fam.target and ident.order == expected,
                   f"{ident.tag}, expected order {expected}"))
    return FamilyReport(a, fam.target, checks, ident)


def unary_obstruction(gens: Sequence[Instruction]) -> Optional[int]:
    """Register r of a unary generator, after checking all generators respect x_r.

    A unary instruction on register r, together with any instructions on the
    other registers, preserves the partition of A^n by the value of x_r, so
    such a set cannot generate Sym(A^n). Returns None when no generator is
    unary.
    """
    for g in gens:
        perm = g.perm if isinstance(g, Instruction) else g
        upd = updated_registers(perm)
        if len(upd) != 1:
            continue
        (r,) = upd
        if essential_variables(perm, r) != frozenset({r}):
            continue
        for h in gens:
            hp = h.perm if isinstance(h, Instruction) else h
            if not preserves_coordinate_partition(hp, r):
                raise AssertionError(f"generator breaks the x_{r} partition; not an instruction set")
        return r
    return None


def preserves_coordinate_partition(perm: Permutation, r: int) -> bool:
    """True iff x_r = y_r implies perm(x)_r = perm(y)_r."""
    a = perm.alphabet
    image_r = a.coords[perm.images, r - 1]
    src_r = a.coords[:, r - 1]
    for v in range(a.q):
        if len(np.unique(image_r[src_r == v])) != 1:
            return False
    return True
