"""Compare the numba and numpy backends of the two hot kernels.

    python benchmarks/bench_kernels.py [--repeat 3] [--bound column|conservative] [--full]

By default the determinant case is a seeded random 24x24 matrix over
F_3[z1, z2]; ``--full`` adds the 81x81 action map of A_1(F_3), which takes
minutes on the numpy backend.

The first numba call includes compilation; it is reported separately.
Both backends must return identical results or the script exits 1.
"""

import argparse
import random
import sys
import time

from weylbrauer._accel import use_numba
from weylbrauer.azalg import action_map_matrix, tensor_over_R, weyl_structure_constants
from weylbrauer.ring.matrix import PolyMatrix, det_grid
from weylbrauer.ring.poly import MultiPoly, poly_ring_fp


def timed(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def random_matrix(size, seed=0):
    R = poly_ring_fp(3, 2)
    rng = random.Random(seed)
    monos = [(0, 0), (1, 0), (0, 1)]
    rows = [[MultiPoly(R, {e: rng.randrange(3) for e in monos}) for _ in range(size)] for _ in range(size)]
    return PolyMatrix(R, rows)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--bound", choices=("column", "conservative"), default="column")
    ap.add_argument("--full", action="store_true", help="also time the 81x81 action-map determinant")
    args = ap.parse_args(argv)

    backends = ["numpy"] + (["numba"] if use_numba() else [])
    if len(backends) == 1:
        print("numba unavailable or disabled; timing numpy only")

    A = weyl_structure_constants(3, 1)
    M = action_map_matrix(A)
    T = tensor_over_R(A, A)
    rows = list(range(T.rank))

    small = random_matrix(24)
    cases = {
        "det_grid 24x24 random over F_3[z1,z2]": lambda b: det_grid(small, args.bound, backend=b),
        "associativity A_1(F_3) (729 triples)": lambda b: A.associativity_defects(backend=b),
        "associativity A_1 (x) A_1 (531441 triples)": lambda b: T.associativity_defects(rows, backend=b),
    }
    if args.full:
        cases["det_grid 81x81 action map of A_1(F_3)"] = lambda b: det_grid(M, args.bound, backend=b)
    ok = True
    print(f"{'case':48} {'backend':8} {'first (s)':>10} {'best (s)':>10}")
    for name, fn in cases.items():
        results = {}
        for b in backends:
            t0 = time.perf_counter()
            fn(b)
            first_s = time.perf_counter() - t0
            best, out = timed(lambda: fn(b), args.repeat)
            results[b] = out
            print(f"{name:48} {b:8} {first_s:10.3f} {best:10.3f}")
        vals = list(results.values())
        if any(v != vals[0] for v in vals[1:]):
            print(f"  MISMATCH in {name}: {results}")
            ok = False
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
