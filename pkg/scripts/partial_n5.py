"""Low columns of the n=5 Betti tables (steps <= 3, degrees <= 5) next to the closed forms."""
import argparse
import time

from apolar_syzygy.exactalg import GF
from apolar_syzygy.syzygy import KoszulConfig, betti_closed_forms, betti_koszul


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-step", type=int, default=3)
    ap.add_argument("--max-degree", type=int, default=5)
    ap.add_argument("--width", type=int, default=1)
    args = ap.parse_args()
    cf = betti_closed_forms(5)
    for kind in ("det", "perm"):
        t0 = time.perf_counter()
        t = betti_koszul(kind, 5, GF(32003), args.max_step, args.max_degree, KoszulConfig(width=args.width))
        print(f"# {kind} n=5 ({time.perf_counter() - t0:.1f}s)")
        print(t.to_ascii())
        for (i, j), b in sorted(cf.entries(kind).items()):
            print(f"  closed form beta_{i},{j} = {b}, computed {t.beta(i, j)}")


if __name__ == "__main__":
    main()
