"""Compare the pure-Python and compiled bitset kernels.

Times transitive_closure and scan_pairs on a few lattice cover sets and
prints one line per (case, kernel) plus the speedup.  Run from a source
checkout or an installed tree:

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --cases boolean:8 partition:7 --repeat 5
"""

import argparse
import time

from geomsieve import generators
from geomsieve._kernels import compiled_backend, pure_backend

DEFAULT_CASES = [
    "boolean:6",
    "boolean:8",
    "partition:6",
    "partition:7",
    "dowling:3:3",
    "dowling:4:2",
]


def positioned(lat):
    order = sorted(range(lat.n_elems), key=lambda i: (lat.rank[i], i))
    pos = {idx: p for p, idx in enumerate(order)}
    covers = [(pos[x], pos[y]) for x, y in lat.covers]
    rank = [lat.rank[idx] for idx in order]
    return covers, rank


def time_kernel(mod, n, covers, rank, repeat):
    best_closure = best_scan = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        down, up = mod.transitive_closure(n, covers)
        t1 = time.perf_counter()
        mod.scan_pairs(n, down, up, rank)
        t2 = time.perf_counter()
        best_closure = min(best_closure, t1 - t0)
        best_scan = min(best_scan, t2 - t1)
    return best_closure, best_scan


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--cases", nargs="+", default=DEFAULT_CASES,
                        help="generator names, e.g. boolean:8 dowling:4:2")
    parser.add_argument("--repeat", type=int, default=3,
                        help="timed repetitions per case; best is kept")
    parser.add_argument("--cap-elements", type=int, default=100_000)
    args = parser.parse_args()

    compiled = compiled_backend()
    kernels = [("pure", pure_backend())]
    if compiled is not None:
        kernels.append(("compiled", compiled))
    else:
        print("compiled kernel not built; timing the pure kernel only")

    header = (f"{'case':<16} {'n':>6} {'kernel':<9} "
              f"{'closure':>10} {'scan':>10}")
    print(header)
    print("-" * len(header))
    for case in args.cases:
        lat = generators.parse_named(case, args.cap_elements)
        covers, rank = positioned(lat)
        n = lat.n_elems
        times = {}
        for kname, mod in kernels:
            closure_s, scan_s = time_kernel(mod, n, covers, rank,
                                            args.repeat)
            times[kname] = (closure_s, scan_s)
            print(f"{case:<16} {n:>6} {kname:<9} "
                  f"{closure_s * 1e3:>8.2f}ms {scan_s * 1e3:>8.2f}ms")
        if len(times) == 2:
            pc, ps = times["pure"]
            cc, cs = times["compiled"]
            print(f"{'':<16} {'':>6} {'speedup':<9} "
                  f"{pc / cc:>9.1f}x {ps / cs:>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
