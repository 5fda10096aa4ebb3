"""Zero-magic bases and randomized commutator certificates on Cayley graphs of S_m."""
import argparse
import random
import time

from apolar_syzygy.cayley import build_graph, check_certificate, commutator_reduce, labelings_rank, \
    random_closed_word, zero_magic_basis


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--words", type=int, default=1000)
    ap.add_argument("--length", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for m in range(2, 7):
        g = build_graph(m)
        basis = zero_magic_basis(g)
        rk = labelings_rank(basis) if m <= 5 else len(basis)
        print(f"m={m}: V={g.num_vertices} E={len(g.edges())} basis={len(basis)} rank={rk}")
    rng = random.Random(args.seed)
    for m in (3, 4, 5, 6):
        t0 = time.perf_counter()
        sizes = []
        for _ in range(args.words):
            w = random_closed_word(m, rng.randint(0, args.length), rng)
            terms = commutator_reduce(w)
            if not check_certificate(w, terms):
                raise SystemExit(f"certificate failed for {w}")
            sizes.append(len(terms))
        print(f"m={m}: {args.words} certificates valid, max terms {max(sizes)}, "
              f"{time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
