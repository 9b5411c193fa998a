"""Exact Gegenbauer moments of the Leech minimal vectors and of the
constructed Leech half, from the inner-product histogram."""

import argparse
import time

from halfdesign import construct_leech_half, gegenbauer_moment, generate_leech_min
from halfdesign.designs import gram_histogram
from halfdesign.io import format_fraction


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-index", type=int, default=12)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--half", action="store_true", help="also the constructed half (slow)")
    args = ap.parse_args()

    X = generate_leech_min()
    t0 = time.perf_counter()
    hist = gram_histogram(X, args.threads)
    print(f"histogram of {len(X)}^2 inner products in {time.perf_counter() - t0:.1f}s")
    for v, c in sorted(hist.items()):
        print(f"  <x,y> = {v:>4}: {c}")
    for i in range(1, args.max_index + 1):
        print(f"i = {i:>2}  moment = {format_fraction(gegenbauer_moment(X, i))}")
    if args.half:
        H = construct_leech_half()
        for i in range(1, args.max_index + 1):
            print(f"half i = {i:>2}  moment = {format_fraction(gegenbauer_moment(H, i, args.threads))}")


if __name__ == "__main__":
    main()
