"""Run the relation generation checks and print one verdict per case."""
import time

from apolar_syzygy.exactalg import GF
from apolar_syzygy.syzygy import generation_check

CASES = [
    ("det n=2 up to degree 6", dict(kind="det", n=2, max_degree=6), 0),
    ("det n=3 up to degree 6", dict(kind="det", n=3, max_degree=6), 0),
    ("perm n=4 degree 4, linear templates only", dict(kind="perm", n=4, max_degree=4, include_quadratic=False), 12),
    ("perm n=4 up to degree 5 with the quadratic", dict(kind="perm", n=4, max_degree=5, include_quadratic=True), 0),
    ("det n=4 degree 4 over GF(2)", dict(kind="det", n=4, max_degree=4, field=GF(2)), 12),
]


def main():
    for title, kw, expected in CASES:
        t0 = time.perf_counter()
        rep = generation_check(**kw)
        ok = rep.complete and rep.total_deficiency == expected
        print(f"{'PASS' if ok else 'FAIL'}: {title}: deficiency {rep.deficiency_by_degree()} "
              f"(expected total {expected}, {time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
