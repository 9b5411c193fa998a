"""Index-3 and index-5 searches on a zero-sum half of the tight 7-design.
Index 5 goes through the Gegenbauer Gram matrix (78430 harmonic columns)."""

import argparse
import time

from halfdesign import construct_tight7, local_search_half, search_index
from halfdesign.designs import DEFAULT_SEED


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--indices", default="3,5")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()
    X = construct_tight7()
    sel = local_search_half(X, seed=args.seed)
    print(f"seed {args.seed}: zero-sum half of {len(sel)} points")
    for i in map(int, args.indices.split(",")):
        t0 = time.perf_counter()
        r = search_index(sel, i, threads=args.threads)
        res = r.result
        print(f"index {i}: route {r.route}, {r.rows}x{r.cols}, rank {res.rank}, k {res.kernel_dim}, "
              f"enumerated {res.enumerated}, {res.status} ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
