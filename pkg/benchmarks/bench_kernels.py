"""Time the numba and pure-numpy kernels on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

import numpy as np

from memoryless import kernels
from memoryless.core import Alphabet, enumerate_instructions
from memoryless.generators import sym_generators
from memoryless.groups import build_chain


def best_of(fn, repeat):
    times = []
    result = None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t)
    return min(times), result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--skip-big-bfs", action="store_true", help="skip the q=3, n=2 Cayley search")
    args = parser.parse_args()
    if not kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    rng = np.random.default_rng(0)
    perms = np.array([rng.permutation(12) for _ in range(200_000)], dtype=np.int32)
    fact = kernels.factorial_table(12)
    kernels.rank_rows_nb(perms[:10], fact)  # compile
    rows = [("rank 200k perms of degree 12",
             lambda: kernels.rank_rows_nb(perms, fact), lambda: kernels.rank_rows_np(perms))]

    cases = [(2, 3)] if args.skip_big_bfs else [(2, 3), (3, 2)]
    for q, n in cases:
        gens = np.array([g.perm.images for g in enumerate_instructions(Alphabet(q, n))])
        start = np.arange(q**n)
        g8, s8, f = gens.astype(np.int8), start.astype(np.int8), kernels.factorial_table(q**n)
        kernels.bfs_dense_nb(g8[:1], s8, f)
        rows.append((f"Cayley BFS q={q} n={n} ({len(gens)} instructions)",
                     lambda g8=g8, s8=s8, f=f: kernels.bfs_dense_nb(g8, s8, f),
                     lambda gens=gens, start=start: kernels.bfs_dense_np(gens, start)))

    chain = build_chain(sym_generators(Alphabet(4, 3)).pis)
    base = np.array(chain.base, dtype=np.int64)
    targets = np.array([rng.permutation(64) for _ in range(2000)], dtype=np.int32)
    kernels.sift_nb(targets[0], base, 0, chain.depth, chain._in_orbit, chain._reps_inv)

    def sift_all(fn):
        return [fn(t, base, 0, chain.depth, chain._in_orbit, chain._reps_inv)[1] for t in targets]

    rows.append(("sift 2000 perms through Sym(64) chain",
                 lambda: sift_all(kernels.sift_nb), lambda: sift_all(kernels.sift_np)))

    print(f"{'kernel':<48}{'numba s':>10}{'numpy s':>10}{'speedup':>10}  agree")
    for name, nb, npy in rows:
        t_nb, r_nb = best_of(nb, args.repeat)
        t_np, r_np = best_of(npy, 1 if "q=3" in name else args.repeat)
        agree = np.array_equal(np.asarray(r_nb), np.asarray(r_np))
        print(f"{name:<48}{t_nb:>10.3f}{t_np:>10.3f}{t_np / t_nb:>10.1f}  {agree}")


if __name__ == "__main__":
    main()
