"""Command-line front end.

Exit status: 0 on success, 1 on domain errors (including a failed
verification), 2 on usage errors. Output is deterministic for fixed inputs.
"""
from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

import numpy as np

from . import analysis, generators, graycode, groups, synthesis, textio
from .core import Alphabet, Instruction, Permutation, Program, is_unary_permutation, updated_registers
from .errors import MemorylessError


def _positive(lo):
    def conv(text):
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
        if v < lo:
            raise argparse.ArgumentTypeError(f"must be >= {lo}, got {v}")
        return v
    return conv


def _add_qn(p, n_default=None):
    p.add_argument("--q", type=_positive(2), required=True, help="alphabet size (>= 2)")
    if n_default is None:
        p.add_argument("--n", type=_positive(1), required=True, help="number of registers (>= 1)")
    else:
        p.add_argument("--n", type=_positive(1), default=n_default, help="number of registers (>= 1)")


def _add_labels(p, default="canonical"):
    p.add_argument("--labels", choices=textio.LABEL_STYLES, default=default,
                   help="state labels: 0-based canonical index, 1-based lexicographic, or 1-based Gray position")


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path, text, out):
    if path in (None, "-"):
        out.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _alphabet(args):
    return Alphabet(args.q, args.n)


def _report(lines, ok, out):
    for line in lines:
        out.write(line + "\n")
    out.write("OK\n" if ok else "FAIL\n")
    return 0 if ok else 1


def _swap(a: Alphabet) -> Permutation:
    if a.n < 2:
        raise MemorylessError("the register swap needs n >= 2")
    return Permutation.from_function(a, lambda s: (s[1], s[0]) + tuple(s[2:]))


# --------------------------------------------------------------------------
# Subcommands
# --------------------------------------------------------------------------

def cmd_synthesize(args, out):
    if args.random:
        if args.q is None or args.n is None:
            raise _Usage("--random needs --q and --n")
        a = Alphabet(args.q, args.n)
        f = Permutation(a, np.random.default_rng(args.seed).permutation(a.size))
    elif args.perm:
        f = textio.parse_permutation(_read(args.perm))
    else:
        raise _Usage("give a permutation file or --random")
    _write(args.output, textio.format_program(synthesis.synthesize(f)), out)
    return 0


def cmd_optimal(args, out):
    if args.swap:
        if args.q is None:
            raise _Usage("--swap needs --q")
        f = _swap(Alphabet(args.q, args.n or 2))
    elif args.perm:
        f = textio.parse_permutation(_read(args.perm))
    else:
        raise _Usage("give a permutation file or --swap")
    _write(args.output, textio.format_program(synthesis.optimal_program(f)), out)
    return 0


def cmd_verify(args, out):
    f = textio.parse_permutation(_read(args.perm))
    p = textio.parse_program(_read(args.program))
    a = f.alphabet
    same = p.alphabet == a
    computes = same and synthesis.program_to_perm(p) == f
    bound = 2 * a.n - 1
    lines = [f"q: {a.q}", f"n: {a.n}", f"alphabet_match: {'yes' if same else 'no'}",
             f"length: {len(p)}", f"bound: {bound}", f"within_bound: {'yes' if len(p) <= bound else 'no'}",
             f"computes: {'yes' if computes else 'no'}"]
    ok = computes and (len(p) <= bound or not args.require_bound)
    return _report(lines, ok, out)


def _instruction_set(a, name):
    if name == "all":
        return analysis.ALL
    return analysis.even_instructions(a)


def cmd_complexity(args, out):
    if args.perm:
        f = textio.parse_permutation(_read(args.perm))
        instr = _instruction_set(f.alphabet, args.set)
        if instr == analysis.ALL:
            instr = analysis.full_instructions(f.alphabet)
        out.write(f"complexity {analysis.complexity(f, instr)}\n")
        return 0
    if args.q is None or args.n is None:
        raise _Usage("give a permutation file or --q and --n")
    return _table_output(Alphabet(args.q, args.n), args.set, out, with_diameter=False)


def cmd_diameter(args, out):
    return _table_output(_alphabet(args), args.set, out, with_diameter=True)


def _table_output(a, set_name, out, with_diameter):
    table = analysis.complexity_table(a, _instruction_set(a, set_name))
    if with_diameter:
        out.write(f"diameter {table.diameter}\n")
    out.write(f"elements {table.size}\n")
    out.write(f"mean {table.mean}\n")
    out.write(f"reference_2n-3 {2 * a.n - 3}\n")
    out.write("distance\tcount\n")
    for d, c in table.histogram.items():
        out.write(f"{d}\t{c}\n")
    return 0


def cmd_generators(args, out):
    a = _alphabet(args)
    fam = generators.sym_generators(a) if args.group == "sym" else generators.alt_generators(a)
    if args.format == "program":
        out.write(textio.format_program(Program(a, fam.pis)))
        return 0
    out.write(f"construction: {fam.construction}\n")
    for r, pi in enumerate(fam.pis, start=1):
        out.write(f"pi_{r}: {textio.format_cycles_labeled(pi.perm, args.labels)}\n")
    report = generators.verify_family(fam)
    return _report(report.lines()[:-1], report.ok, out)


def cmd_gray(args, out):
    a = _alphabet(args)
    seq = graycode.gray_sequence(a)
    out.write("label\tindex\tstate\n")
    for pos, (state, idx) in enumerate(zip(seq.order, seq.indices()), start=1):
        out.write(f"{pos}\t{idx}\t{''.join(map(str, state)) if a.q <= 10 else ','.join(map(str, state))}\n")
    return 0


def cmd_coxeter(args, out):
    a = _alphabet(args)
    cox = graycode.coxeter_instructions(a)
    for ins in cox:
        out.write(f"y{ins.register}: {textio.format_cycles_labeled(ins.perm, args.labels)}\n")
    chain = groups.build_chain(cox, a)
    ident = groups.identify_group(chain, a)
    lines = [f"size: {len(cox)}", f"expected_size: {a.size - 1}",
             f"all_instructions: {'yes' if all(len(updated_registers(c.perm)) == 1 for c in cox) else 'no'}",
             f"group: {ident.tag}"]
    ok = len(cox) == a.size - 1 and ident.tag == groups.SYMMETRIC
    if a.size <= args.minimality_limit:
        minimal = all(
            groups.build_chain(cox[:i] + cox[i + 1:], a).order < ident.order if len(cox) > 1 else True
            for i in range(len(cox))
        )
        lines.append(f"minimal: {'yes' if minimal else 'no'}")
        ok = ok and minimal
    else:
        lines.append("minimal: skipped")
    return _report(lines, ok, out)


def cmd_lary_group(args, out):
    a = _alphabet(args)
    if not 1 <= args.l <= a.n:
        raise _Usage(f"--l must lie in 1..{a.n}")
    ident = analysis.lary_group(a, args.l)
    out.write(f"group: {ident.tag}\norder: {ident.order}\n")
    if args.counterexample:
        out.write(textio.format_program(analysis.lary_closure_counterexample(a, args.l)))
    return 0


def _group_gens(a, args):
    if args.cycles:
        return [textio.parse_cycles(c, a, args.labels) for c in args.cycles]
    if args.group is None:
        raise _Usage("give --group or at least one --cycles")
    m = a.size
    if m < 3:
        raise MemorylessError("degree < 3 has no 3-cycles")
    if args.group == "alt":
        return [Permutation.from_cycles(a, [(0, 1, i)]) for i in range(2, m)]
    return [Permutation.from_cycles(a, [(0, 1)]), Permutation.from_cycles(a, [tuple(range(m))])]


def cmd_internal(args, out):
    a = _alphabet(args)
    res = analysis.internal_computability(_group_gens(a, args), a)
    out.write(f"computable: {'true' if res.computable else 'false'}\n")
    out.write(f"group_order: {res.group_order}\n")
    out.write(f"instruction_subgroup_order: {res.subgroup_order}\n")
    out.write(f"instruction_elements: {len(res.instruction_elements)}\n")
    if args.list:
        for p in res.instruction_elements:
            out.write(textio.format_cycles_labeled(p, args.labels) + "\n")
    return 0


def cmd_fastness(args, out):
    a = _alphabet(args)
    g = textio.parse_cycles(args.cycles, a, args.labels)
    J = analysis.even_instructions(a) if args.J == "even" else analysis.full_instructions(a)
    K = analysis.full_instructions(a)
    rep = analysis.fastness(g, J, K)
    out.write(f"g: {textio.format_cycles_labeled(g, args.labels)}\n")
    out.write(f"J: {args.J} ({len(J)} instructions)\nK: all ({len(K)} instructions)\n")
    out.write(f"L_J: {rep.lJ}\nL_K: {rep.lK}\nfast: {'true' if rep.fast else 'false'}\n")
    return 0


def cmd_conjugacy_check(args, out):
    a = _alphabet(args)
    pairs = []
    if args.g is not None or args.h is not None:
        if args.g is None or args.h is None:
            raise _Usage("--g and --h go together")
        pairs.append((textio.parse_cycles(args.g, a, args.labels), textio.parse_cycles(args.h, a, args.labels)))
    else:
        rng = np.random.default_rng(args.seed)
        unary = analysis.unary_permutations(a)
        for _ in range(args.samples):
            g = Permutation(a, rng.permutation(a.size))
            h = unary[int(rng.integers(len(unary)))]
            pairs.append((g, h))
    preserved = 0
    for g, h in pairs:
        if not is_unary_permutation(h):
            raise MemorylessError("h is not a unary permutation")
        if analysis.conjugacy_complexity_check(g, h):
            preserved += 1
    lines = [f"q: {a.q}", f"n: {a.n}", f"pairs: {len(pairs)}", f"preserved: {preserved}"]
    return _report(lines, preserved == len(pairs), out)


def cmd_swap_demo(args, out):
    a = _alphabet(args)
    q = a.q
    c = a.coords
    steps = [
        Instruction(a, 1, (c[:, 0] + c[:, 1]) % q),
        Instruction(a, 2, (c[:, 0] - c[:, 1]) % q),
        Instruction(a, 1, (c[:, 0] - c[:, 1]) % q),
    ]
    text = ["y1 <- y1 + y2", "y2 <- y1 - y2", "y1 <- y1 - y2"] if q > 2 else \
        ["y1 <- y1 + y2", "y2 <- y1 + y2", "y1 <- y1 + y2"]
    mod = f" (mod {q})"
    for line in text:
        out.write(line + mod + "\n")
    prog = Program(a, steps)
    out.write(textio.format_program(prog))
    swap = _swap(a)
    computes = synthesis.program_to_perm(prog) == swap
    lines = [f"q: {q}", f"n: {a.n}", f"length: {len(prog)}", f"computes_swap: {'yes' if computes else 'no'}"]
    return _report(lines, computes, out)


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------

class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="memoryless", description="Memoryless computation over A^n.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synthesize", help="program of at most 2n-1 instructions for a permutation")
    p.add_argument("perm", nargs="?", help="permutation file ('-' for stdin)")
    p.add_argument("--random", action="store_true", help="synthesize a random permutation instead")
    p.add_argument("--q", type=_positive(2))
    p.add_argument("--n", type=_positive(1))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("optimal", help="shortest program over all instructions (q^n <= 9)")
    p.add_argument("perm", nargs="?")
    p.add_argument("--swap", action="store_true", help="use the swap of registers 1 and 2")
    p.add_argument("--q", type=_positive(2))
    p.add_argument("--n", type=_positive(1))
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_optimal)

    p = sub.add_parser("verify", help="check that a program computes a permutation")
    p.add_argument("--perm", required=True)
    p.add_argument("--program", required=True)
    p.add_argument("--require-bound", action="store_true", help="also fail when length exceeds 2n-1")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("complexity", help="L(f), or the complexity histogram of A^n")
    p.add_argument("perm", nargs="?")
    p.add_argument("--q", type=_positive(2))
    p.add_argument("--n", type=_positive(1))
    p.add_argument("--set", choices=("all", "even"), default="all")
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("diameter", help="maximum complexity by exhaustive search")
    _add_qn(p)
    p.add_argument("--set", choices=("all", "even"), default="all")
    p.set_defaults(func=cmd_diameter)

    p = sub.add_parser("generators", help="n-instruction generating sets of Sym or Alt")
    _add_qn(p)
    p.add_argument("--group", choices=("sym", "alt"), default="sym")
    p.add_argument("--format", choices=("cycles", "program"), default="cycles")
    _add_labels(p)
    p.set_defaults(func=cmd_generators)

    p = sub.add_parser("gray", help="reflected (q,n)-Gray code")
    _add_qn(p)
    p.set_defaults(func=cmd_gray)

    p = sub.add_parser("coxeter", help="adjacent transpositions of the Gray order")
    _add_qn(p)
    _add_labels(p, default="gray")
    p.add_argument("--minimality-limit", type=int, default=9,
                   help="check single-removal minimality when q^n is at most this")
    p.set_defaults(func=cmd_coxeter)

    p = sub.add_parser("lary-group", help="group generated by all l-ary instructions")
    _add_qn(p)
    p.add_argument("--l", type=_positive(1), required=True)
    p.add_argument("--counterexample", action="store_true",
                   help="also print two l-ary instructions whose product is not l-ary")
    p.set_defaults(func=cmd_lary_group)

    p = sub.add_parser("internal", help="is a group generated by its own instructions?")
    _add_qn(p)
    p.add_argument("--group", choices=("sym", "alt"))
    p.add_argument("--cycles", action="append", help="a generator in cycle notation (repeatable)")
    p.add_argument("--list", action="store_true", help="list the instruction elements")
    _add_labels(p)
    p.set_defaults(func=cmd_internal)

    p = sub.add_parser("fastness", help="compare L(g, J) with L(g, all)")
    _add_qn(p)
    p.add_argument("--cycles", required=True, help="g in cycle notation")
    p.add_argument("--J", choices=("even", "all"), default="even")
    _add_labels(p)
    p.set_defaults(func=cmd_fastness)

    p = sub.add_parser("conjugacy-check", help="L(g) is invariant under unary conjugation")
    _add_qn(p)
    p.add_argument("--g")
    p.add_argument("--h")
    p.add_argument("--samples", type=_positive(1), default=50)
    p.add_argument("--seed", type=int, default=0)
    _add_labels(p)
    p.set_defaults(func=cmd_conjugacy_check)

    p = sub.add_parser("swap-demo", help="the three-instruction register swap")
    _add_qn(p, n_default=2)
    p.set_defaults(func=cmd_swap_demo)
    return parser


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except _Usage as exc:
        err.write(f"memoryless {args.command}: usage error: {exc}\n")
        return 2
    except (MemorylessError, generators.CaseTableError) as exc:
        err.write(f"memoryless {args.command}: error: {exc}\n")
        return 1
    except OSError as exc:
        err.write(f"memoryless {args.command}: error: {exc}\n")
        return 1
    except ValueError as exc:
        err.write(f"memoryless {args.command}: error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
