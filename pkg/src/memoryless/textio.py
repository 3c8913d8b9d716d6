"""Plain-text formats for permutations, programs and cycle notation.

Permutation::

    q n
    i_0 i_1 ... i_{q^n - 1}

Program::

    q n L
    j t_0 t_1 ... t_{q^n - 1}     (L lines; t_s = new value of register j on state s)

Blank lines and ``#`` comments are ignored. Errors carry 1-based line and
column numbers.
"""
from __future__ import annotations

import re

import numpy as np

from .core import Alphabet, Instruction, Permutation, Program, format_cycles
from .errors import ParseError
from .graycode import gray_labels

LABEL_STYLES = ("canonical", "lex", "gray")


def _lines(text: str):
    """(line number, [(column, token), ...]) for each meaningful line."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", body)]
        if toks:
            yield lineno, toks


def _int(tok, lineno, what):
    col, s = tok
    try:
        return int(s)
    except ValueError:
        raise ParseError(f"{what}: expected an integer, got {s!r}", lineno, col) from None


def _header(lines, count, names):
    try:
        lineno, toks = next(lines)
    except StopIteration:
        raise ParseError("empty input; expected a header line", 1) from None
    if len(toks) != count:
        raise ParseError(f"header must be '{' '.join(names)}', got {len(toks)} fields", lineno)
    vals = [_int(t, lineno, name) for t, name in zip(toks, names)]
    q, n = vals[0], vals[1]
    if q < 2:
        raise ParseError(f"q must be >= 2, got {q}", lineno, toks[0][0])
    if n < 1:
        raise ParseError(f"n must be >= 1, got {n}", lineno, toks[1][0])
    try:
        alphabet = Alphabet(q, n)
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from None
    return lineno, alphabet, vals


def format_permutation(f: Permutation) -> str:
    a = f.alphabet
    return f"{a.q} {a.n}\n" + " ".join(str(int(i)) for i in f.images) + "\n"


def parse_permutation(text: str) -> Permutation:
    lines = _lines(text)
    hline, a, _ = _header(lines, 2, ("q", "n"))
    try:
        lineno, toks = next(lines)
    except StopIteration:
        raise ParseError("missing image line", hline + 1) from None
    _check_count(toks, a.size, lineno, "images")
    images = []
    seen = {}
    for tok in toks:
        v = _int(tok, lineno, "image")
        if not 0 <= v < a.size:
            raise ParseError(f"image {v} outside 0..{a.size - 1}", lineno, tok[0])
        if v in seen:
            raise ParseError(f"image {v} repeated (first at column {seen[v]}); not a bijection", lineno, tok[0])
        seen[v] = tok[0]
        images.append(v)
    _no_trailing(lines)
    return Permutation(a, images)


def format_program(p: Program) -> str:
    a = p.alphabet
    out = [f"{a.q} {a.n} {len(p)}"]
    for step in p:
        out.append(f"{step.register} " + " ".join(str(int(t)) for t in step.table))
    return "\n".join(out) + "\n"


def parse_program(text: str) -> Program:
    lines = _lines(text)
    hline, a, vals = _header(lines, 3, ("q", "n", "L"))
    length = vals[2]
    if length < 0:
        raise ParseError(f"L must be >= 0, got {length}", hline)
    steps = []
    last = hline
    for k in range(length):
        try:
            lineno, toks = next(lines)
        except StopIteration:
            raise ParseError(f"expected {length} instruction lines, found {k}", last + 1) from None
        last = lineno
        _check_count(toks, a.size + 1, lineno, "fields (register then table)")
        j = _int(toks[0], lineno, "register")
        if not 1 <= j <= a.n:
            raise ParseError(f"register {j} outside 1..{a.n}", lineno, toks[0][0])
        table = []
        for tok in toks[1:]:
            v = _int(tok, lineno, "table entry")
            if not 0 <= v < a.q:
                raise ParseError(f"table value {v} outside 0..{a.q - 1}", lineno, tok[0])
            table.append(v)
        bad = _fiber_violation(a, j, np.array(table))
        if bad is not None:
            raise ParseError(
                f"update of register {j} is not a bijection on the fiber of state {bad}", lineno, toks[bad + 1][0]
            )
        steps.append(Instruction(a, j, table, check=False))
    _no_trailing(lines)
    return Program(a, steps)


def _fiber_violation(a, j, table):
    """Index of the first state whose fiber repeats a value, or None."""
    fiber = np.zeros(a.size, dtype=np.int64)
    for k in range(a.n):
        if k != j - 1:
            fiber = fiber * a.q + a.coords[:, k]
    seen = set()
    for s in range(a.size):
        key = (int(fiber[s]), int(table[s]))
        if key in seen:
            return s
        seen.add(key)
    return None


def _check_count(toks, expected, lineno, what):
    if len(toks) != expected:
        col = toks[expected][0] if len(toks) > expected else None
        raise ParseError(f"expected {expected} {what}, got {len(toks)}", lineno, col)


def _no_trailing(lines):
    for lineno, toks in lines:
        raise ParseError("unexpected trailing content", lineno, toks[0][0])


# --------------------------------------------------------------------------
# Labels and cycle notation
# --------------------------------------------------------------------------

def label_map(alphabet: Alphabet, style: str) -> np.ndarray:
    """Label of each canonical index under ``style``."""
    if style == "canonical":
        return np.arange(alphabet.size)
    if style == "lex":
        return np.arange(alphabet.size) + 1
    if style == "gray":
        return np.asarray(gray_labels(alphabet))
    raise ValueError(f"unknown label style {style!r}; choose from {', '.join(LABEL_STYLES)}")


def format_cycles_labeled(f: Permutation, style: str = "canonical") -> str:
    return format_cycles(f, [int(x) for x in label_map(f.alphabet, style)])


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, alphabet: Alphabet, style: str = "canonical") -> Permutation:
    """Parse ``(1,2,3)(6,7)``; ``()`` or an empty string is the identity."""
    labels = label_map(alphabet, style)
    index_of = {int(lab): s for s, lab in enumerate(labels)}
    pos = 0
    images = np.arange(alphabet.size)
    used = set()
    stripped = text.strip()
    offset = len(text) - len(text.lstrip())
    while pos < len(stripped):
        if stripped[pos].isspace():
            pos += 1
            continue
        m = _CYCLE.match(stripped, pos)
        if not m:
            raise ParseError("expected '(' starting a cycle", 1, offset + pos + 1)
        body = m.group(1)
        if body.strip():
            pts = []
            for part in re.finditer(r"[^,\s]+", body):
                col = offset + m.start(1) + part.start() + 1
                try:
                    lab = int(part.group())
                except ValueError:
                    raise ParseError(f"expected an integer label, got {part.group()!r}", 1, col) from None
                if lab not in index_of:
                    raise ParseError(f"label {lab} is not a {style} label for q={alphabet.q}, n={alphabet.n}", 1, col)
                s = index_of[lab]
                if s in used:
                    raise ParseError(f"label {lab} appears twice", 1, col)
                used.add(s)
                pts.append(s)
            for x, y in zip(pts, pts[1:] + pts[:1]):
                images[x] = y
        pos = m.end()
    return Permutation(alphabet, images)
