"""Graded Betti numbers from Koszul homology of A = S / f^perp.

``beta_{i,j}`` is the homology at ``Lambda^i V (x) A_{j-i}`` of

    Lambda^{i+1} V (x) A_{j-i-1} -> Lambda^i V (x) A_{j-i} -> Lambda^{i-1} V (x) A_{j-i+1}

with ``d(x_{s_0} ^ ... ^ x_{s_{i-1}} (x) a) = sum_t (-1)^t (... x_{s_t}-hat ...) (x) x_{s_t} a``.
Every term is multihomogeneous, so the complex splits into blocks indexed by
multidegrees ``mu``; a basis element of a block is ``(S, R, C)`` with ``S`` a
set of variables (bitmask over ``n*n`` bits) and ``(R, C)`` a minor basis
element of A (bitmasks over rows / columns).  Only one multidegree per
symmetry orbit is solved; its contribution is weighted by the orbit size.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from ..apolar import PolyKind
from ..exactalg import GF, Field, PrimeField, _rank_fraction_free, _rank_mod_p
from ..polyring import Multidegree, canonical_multidegrees
from .table import GradedBettiTable

THREADS_ENV = "APOLAR_SYZYGY_THREADS"


@dataclass
class KoszulConfig:
    max_step: int | None = None
    max_degree: int | None = None
    max_block: int = 400_000  # basis elements per block; a memory budget proxy
    width: int = 1
    max_n: int = 5
    max_n_full: int = 4
    partial_step: int = 3  # step cap applied above max_n_full when none is given

    def effective_width(self) -> int:
        env = os.environ.get(THREADS_ENV)
        if env:
            try:
                return max(1, int(env))
            except ValueError:
                pass
        return max(1, self.width)


# ---------------------------------------------------------------------------
# block construction


def _zero_one_tables(rows: tuple, cols: tuple, n: int) -> Iterator[int]:
    """Bitmasks of 0/1 n x n matrices with the given margins (bit = i*n + j)."""
    total = sum(rows)
    if total != sum(cols) or max(rows, default=0) > n or max(cols, default=0) > n:
        return
    rem = list(cols)

    def rec(i, acc):
        if i == n:
            yield acc
            return
        left_rows = n - i - 1
        avail = [j for j in range(n) if rem[j] > 0]
        for pick in combinations(avail, rows[i]):
            for j in pick:
                rem[j] -= 1
            if all(x <= left_rows for x in rem):
                mask = acc
                for j in pick:
                    mask |= 1 << (i * n + j)
                yield from rec(i + 1, mask)
            for j in pick:
                rem[j] += 1

    yield from rec(0, 0)


def block_basis(n: int, rows: tuple, cols: tuple, steps: range) -> dict:
    """``{i: [(S, R, C), ...]}`` for the homological indices in ``steps``."""
    j = sum(rows)
    out = {}
    row_support = [r for r in range(n) if rows[r]]
    col_support = [c for c in range(n) if cols[c]]
    for i in steps:
        e = j - i
        if e < 0 or e > n or i < 0:
            continue
        basis = []
        for R in combinations(row_support, e):
            nr = list(rows)
            rm = 0
            for r in R:
                nr[r] -= 1
                rm |= 1 << r
            if max(nr, default=0) > n:
                continue
            for C in combinations(col_support, e):
                nc = list(cols)
                cm = 0
                for c in C:
                    nc[c] -= 1
                    cm |= 1 << c
                for S in _zero_one_tables(tuple(nr), tuple(nc), n):
                    basis.append((S, rm, cm))
        basis.sort()
        out[i] = basis
    return out


def _bits(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def _popcount(x: int) -> int:
    return bin(x).count("1")


def differential_rows(n: int, det: bool, source: list, target_index: dict) -> list[dict]:
    """Matrix of d on ``source`` as sparse rows of +/-1 (one row per source element)."""
    rows = []
    for S, rm, cm in source:
        row = {}
        for t, v in enumerate(_bits(S)):
            r, c = divmod(v, n)
            if rm >> r & 1 or cm >> c & 1:
                continue
            sign = -1 if t & 1 else 1
            if det:
                # cofactor sign: positions among the rows / columns still present
                p = r - _popcount(rm & ((1 << r) - 1))
                q = c - _popcount(cm & ((1 << c) - 1))
                if (p + q) & 1:
                    sign = -sign
            key = (S ^ (1 << v), rm | (1 << r), cm | (1 << c))
            row[target_index[key]] = sign
        rows.append(row)
    return rows


def _rank(rows: list[dict], p: int) -> int:
    if p:
        return _rank_mod_p([{c: v % p for c, v in r.items()} for r in rows if r], p)
    return _rank_fraction_free([r for r in rows if r])


@dataclass
class BlockResult:
    rows: tuple
    cols: tuple
    betti: dict  # i -> beta_{i, mu}
    overflow: bool = False


def solve_block(kind: str, n: int, rows: tuple, cols: tuple, p: int, i_lo: int, i_hi: int,
                max_block: int = 400_000) -> BlockResult:
    """Multigraded Betti numbers ``beta_{i, mu}`` for ``i_lo <= i <= i_hi``."""
    det = kind == "det"
    bases = block_basis(n, rows, cols, range(i_lo - 1, i_hi + 2))
    if sum(len(b) for b in bases.values()) > max_block:
        return BlockResult(rows, cols, {}, overflow=True)
    index = {i: {b: k for k, b in enumerate(basis)} for i, basis in bases.items()}
    ranks = {}
    for i in range(i_lo, i_hi + 2):
        src, tgt = bases.get(i, []), index.get(i - 1)
        if not src or not tgt or i == 0:
            ranks[i] = 0
            continue
        ranks[i] = _rank(differential_rows(n, det, src, tgt), p)
    betti = {}
    for i in range(i_lo, i_hi + 1):
        b = len(bases.get(i, [])) - ranks[i] - ranks[i + 1]
        if b:
            betti[i] = b
    return BlockResult(rows, cols, betti)


def _solve_packed(args):
    return solve_block(*args)


# ---------------------------------------------------------------------------
# driver


def _field_prime(field: Field) -> int:
    return field.p if isinstance(field, PrimeField) else 0


def block_multidegrees(n: int, j: int) -> list[Multidegree]:
    """Canonical multidegrees of degree ``j`` that can carry Koszul terms."""
    return [mu for mu in canonical_multidegrees(n, j)
            if max(mu.rows, default=0) <= n + 1 and max(mu.cols, default=0) <= n + 1]


def koszul_blocks(kind, n: int, field: Field, max_step: int, max_degree: int, config: KoszulConfig,
                  min_degree: int = 0) -> list[tuple[Multidegree, BlockResult]]:
    kind = PolyKind.parse(kind)
    p = _field_prime(field)
    jobs = []
    for j in range(min_degree, max_degree + 1):
        i_lo, i_hi = max(0, j - n), min(j, max_step, n * n)
        if i_lo > i_hi:
            continue
        for mu in block_multidegrees(n, j):
            jobs.append((mu, (kind.value, n, mu.rows, mu.cols, p, i_lo, i_hi, config.max_block)))
    width = config.effective_width()
    if width > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=width) as pool:
            results = list(pool.map(_solve_packed, [a for _, a in jobs], chunksize=1))
    else:
        results = [_solve_packed(a) for _, a in jobs]
    return [(mu, res) for (mu, _), res in zip(jobs, results)]


def betti_koszul(kind, n: int, field: Field | None = None, max_step: int | None = None,
                 max_degree: int | None = None, config: KoszulConfig | None = None) -> GradedBettiTable:
    """Graded Betti table of ``S / f^perp`` up to the given step and degree caps.

    A column ``i`` is marked complete when every degree ``j`` in ``[i, i + n]``
    was solved without hitting the block budget.
    """
    kind = PolyKind.parse(kind)
    field = field or GF(32003)
    config = config or KoszulConfig()
    if n < 1:
        raise ValueError("n must be positive")
    top = n * n
    table = GradedBettiTable(kind, n, field.tag)
    if n > config.max_n:
        table.set(0, 0, 1)
        table.complete_columns = {0}
        return table
    if max_step is None:
        max_step = config.max_step
    if max_step is None and n > config.max_n_full:
        max_step = config.partial_step
    if max_degree is None:
        max_degree = config.max_degree
    max_step = top if max_step is None else min(max_step, top)
    max_degree = top + n if max_degree is None else min(max_degree, top + n)
    overflow_cols = set()
    totals: dict = {}
    for mu, res in koszul_blocks(kind, n, field, max_step, max_degree, config):
        j = mu.degree
        if res.overflow:
            overflow_cols.update(range(max(0, j - n), min(j, max_step) + 1))
            continue
        w = mu.orbit_size()
        for i, b in res.betti.items():
            totals[(i, j)] = totals.get((i, j), 0) + w * b
    for (i, j), b in totals.items():
        table.set(i, j, b)
    table.overflow = bool(overflow_cols)
    table.complete_columns = {i for i in range(top + 1)
                              if i <= max_step and i + n <= max_degree and i not in overflow_cols}
    return table


def multigraded_betti(kind, n: int, i: int, j: int, field: Field | None = None,
                      config: KoszulConfig | None = None) -> dict:
    """``{mu: beta_{i, mu}}`` over every multidegree of degree ``j`` (orbits expanded)."""
    from itertools import permutations

    kind = PolyKind.parse(kind)
    field = field or GF(32003)
    config = config or KoszulConfig()
    p = _field_prime(field)
    out = {}
    for mu in block_multidegrees(n, j):
        res = solve_block(kind.value, n, mu.rows, mu.cols, p, i, i, config.max_block)
        if res.overflow:
            raise MemoryError(f"block {mu} exceeds the block budget")
        b = res.betti.get(i, 0)
        images = set()
        for r in set(permutations(mu.rows)):
            for c in set(permutations(mu.cols)):
                images.add(Multidegree(r, c))
                images.add(Multidegree(c, r))
        for m in images:
            out[m] = b
    return out
