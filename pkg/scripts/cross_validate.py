"""Compare the analytic deficit with the brute-force oracle on random X states."""
import argparse
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from deficitx import one_way_deficit
from deficitx.oracle import deficit_oracle
from deficitx.state import random_state

from _common import write_csv


def compare(s):
    a = one_way_deficit(s)
    o = deficit_oracle(s)
    return (*s.as_tuple(), a.deficit, o.deficit, abs(a.deficit - o.deficit), a.branch.value, o.converged)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=None)
    ap.add_argument("--out", default="results/cross_validate.csv")
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    states = [random_state(rng) for _ in range(args.n)]
    start = time.perf_counter()
    with ProcessPoolExecutor(args.workers) as pool:
        rows = list(pool.map(compare, states, chunksize=16))
    elapsed = time.perf_counter() - start
    write_csv(args.out, ("x", "y", "t1", "t2", "t3", "analytic", "oracle", "gap", "branch", "converged"), rows)
    gaps = np.array([r[7] for r in rows])
    branches = {b: sum(r[8] == b for r in rows) for b in {r[8] for r in rows}}
    print(f"{args.n} states in {elapsed:.1f} s: max gap {gaps.max():.2e}, median {np.median(gaps):.2e}")
    print("branches:", branches)


if __name__ == "__main__":
    main()
