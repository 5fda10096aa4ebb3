"""Print the complete Betti tables of det_n and perm_n for the requested n."""
import argparse
import time

from apolar_syzygy.exactalg import parse_field
from apolar_syzygy.syzygy import betti_koszul


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--field", default="gf:32003")
    ap.add_argument("--format", choices=["table", "json", "csv"], default="table")
    args = ap.parse_args()
    fld = parse_field(args.field)
    for n in args.n:
        for kind in ("det", "perm"):
            t0 = time.perf_counter()
            t = betti_koszul(kind, n, fld)
            print(f"# {kind} n={n} over {fld.tag} ({time.perf_counter() - t0:.1f}s)")
            print(t.serialize(args.format))


if __name__ == "__main__":
    main()
