"""Determinant/permanent, the contraction action and their apolar ideals.

The quotient algebra ``A = S / f^perp`` is modelled on the minor basis: the
element indexed by ``(R, C)`` (deleted rows and columns, ``|R| = |C| = d``)
is the plain minor (or permanent minor) of ``x`` on the complementary rows
and columns.  Multiplication by ``X[i,j]`` is then differentiation, which
for the determinant carries the cofactor sign of ``(i, j)`` inside the
complementary submatrix.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .exactalg import QQ, Field, SparseMatrix, rank
from .polyring import Monomial, Multidegree, Polynomial, monomials_of_degree


class PolyKind(enum.Enum):
    DET = "det"
    PERM = "perm"

    @classmethod
    def parse(cls, s: "str | PolyKind") -> "PolyKind":
        if isinstance(s, PolyKind):
            return s
        return cls(s.strip().lower())

    def __str__(self):
        return self.value


Det, Perm = PolyKind.DET, PolyKind.PERM


def _perm_sign(p) -> int:
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def build_polynomial(kind: PolyKind, n: int, field: Field = QQ) -> Polynomial:
    """``det_n`` or ``perm_n`` in the variables ``x[i,j]``."""
    kind = PolyKind.parse(kind)
    if n < 1:
        raise ValueError("n must be at least 1")
    terms = {}
    for p in itertools.permutations(range(n)):
        m = Monomial.from_variables(n, [(i + 1, p[i] + 1) for i in range(n)])
        terms[m] = _perm_sign(p) if kind is Det else 1
    return Polynomial(n, terms, field)


def contract(g: Polynomial, f: Polynomial) -> Polynomial:
    """Apolarity action ``g * f``: divide each monomial or kill it."""
    g._compat(f)
    out = Polynomial(f.n, {}, f.field)
    acc: dict = {}
    prime = getattr(f.field, "p", None)
    for mg, cg in g.terms.items():
        for mf, cf in f.terms.items():
            if mg.divides(mf):
                m = mf / mg
                v = acc.get(m, 0) + cg * cf
                if prime:
                    v %= prime
                acc[m] = v
    out.terms = {m: v for m, v in acc.items() if v}
    return out


# ---------------------------------------------------------------------------
# generators


@dataclass(frozen=True)
class GeneratorSet:
    kind: PolyKind
    n: int
    polys: tuple  # Polynomial over QQ, canonical order
    labels: tuple  # ("sq", i, j) | ("row", i, j, k) | ("col", i, k, j) | ("mix", i, j, k, l)

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, k):
        return self.polys[k]

    def __iter__(self):
        return iter(self.polys)

    def multidegree(self, k: int) -> Multidegree:
        return next(iter(self.polys[k].terms)).multidegree()

    def locate(self, poly: Polynomial) -> tuple[int, int]:
        """Index and sign ``s`` with ``poly == s * generator[index]``."""
        key = _poly_key(poly)
        hit = _locator(self.kind, self.n).get(key)
        if hit is None:
            raise KeyError(f"{poly.render()} is not a generator up to sign")
        return hit


def _poly_key(p: Polynomial):
    return frozenset((m.exps, int(c)) for m, c in p.terms.items())


@lru_cache(maxsize=None)
def _locator(kind: PolyKind, n: int) -> dict:
    gens = shafiei_generators(kind, n)
    out = {}
    for k, g in enumerate(gens):
        out[_poly_key(g)] = (k, 1)
        out[_poly_key(-g)] = (k, -1)
    return out


@lru_cache(maxsize=None)
def shafiei_generators(kind: PolyKind, n: int) -> GeneratorSet:
    """Minimal quadratic generators of ``f^perp``, in canonical order.

    Order: squares, row pairs, column pairs, then the mixed 2x2 generators
    ``X[i,j]X[k,l] +/- X[i,l]X[k,j]`` (``+`` for det, ``-`` for perm).
    """
    kind = PolyKind.parse(kind)
    if n < 2:
        raise ValueError("generators are defined for n >= 2")
    V = lambda i, j: Monomial.var(n, i, j)
    polys, labels = [], []
    rng = range(1, n + 1)
    for i in rng:
        for j in rng:
            polys.append(Polynomial(n, {V(i, j) * V(i, j): 1}))
            labels.append(("sq", i, j))
    for i in rng:
        for j, k in itertools.combinations(rng, 2):
            polys.append(Polynomial(n, {V(i, j) * V(i, k): 1}))
            labels.append(("row", i, j, k))
    for j in rng:
        for i, k in itertools.combinations(rng, 2):
            polys.append(Polynomial(n, {V(i, j) * V(k, j): 1}))
            labels.append(("col", i, k, j))
    sign = 1 if kind is Det else -1
    for i, k in itertools.combinations(rng, 2):
        for j, l in itertools.combinations(rng, 2):
            polys.append(Polynomial(n, {V(i, j) * V(k, l): 1, V(i, l) * V(k, j): sign}))
            labels.append(("mix", i, j, k, l))
    return GeneratorSet(kind, n, tuple(polys), tuple(labels))


def _contraction_matrix(kind: PolyKind, n: int, d: int, field: Field) -> tuple[SparseMatrix, list[Monomial]]:
    """Columns: degree-d monomials g of S; rows: monomials of ``g * f``."""
    f = build_polynomial(kind, n, field)
    gs = monomials_of_degree(n, d)
    cols = []
    for g in gs:
        cols.append(contract(Polynomial.monomial(g, 1, field), f).terms)
    rows_index: dict = {}
    trip = []
    for c, col in enumerate(cols):
        for m, v in col.items():
            r = rows_index.setdefault(m, len(rows_index))
            trip.append((r, c, v))
    return SparseMatrix.from_triples(field, len(rows_index), len(gs), trip), gs


@dataclass
class AnnihilationReport:
    annihilates: bool
    span_dimension: int
    expected_dimension: int

    @property
    def ok(self) -> bool:
        return self.annihilates and self.span_dimension == self.expected_dimension

    def __bool__(self):
        return self.ok


def verify_annihilation(kind: PolyKind, n: int, generators=None, field: Field = QQ) -> AnnihilationReport:
    """Check every generator kills ``f`` and they span all of ``(f^perp)_2``."""
    kind = PolyKind.parse(kind)
    gens = list(generators) if generators is not None else list(shafiei_generators(kind, n))
    f = build_polynomial(kind, n, field)
    kills = all(contract(g.change_field(field) if g.field != field else g, f).is_zero() for g in gens)
    # span of the generators inside S_2
    mons = {m: k for k, m in enumerate(monomials_of_degree(n, 2))}
    trip = []
    for c, g in enumerate(gens):
        for m, v in g.terms.items():
            trip.append((mons[m], c, v))
    span = rank(SparseMatrix.from_triples(field, len(mons), len(gens), trip)) if gens else 0
    expected = comb(n * n + 1, 2) - comb(n, 2) ** 2
    return AnnihilationReport(kills, span, expected)


def quotient_dim(kind: PolyKind, n: int, d: int, verified: bool = False, field: Field = QQ) -> int:
    """``dim (S/f^perp)_d = binom(n, d)^2``; ``verified`` recomputes it."""
    expected = comb(n, d) ** 2 if 0 <= d <= n else 0
    if verified and 0 <= d <= n:
        M, _ = _contraction_matrix(PolyKind.parse(kind), n, d, field)
        got = rank(M)
        if got != expected:
            raise AssertionError(f"dim A_{d} computed as {got}, expected {expected}")
    return expected


# ---------------------------------------------------------------------------
# minor basis of the quotient algebra


@dataclass(frozen=True, order=True)
class MinorBasisElement:
    """Basis element of ``A_d``: the minor with rows ``R`` and columns ``C`` deleted."""

    kind: PolyKind
    n: int
    R: tuple
    C: tuple

    def __post_init__(self):
        if len(self.R) != len(self.C) or len(self.R) > self.n:
            raise ValueError("R and C must have equal size at most n")
        if tuple(sorted(self.R)) != self.R or tuple(sorted(self.C)) != self.C:
            raise ValueError("R and C must be sorted tuples")

    @property
    def d(self) -> int:
        return len(self.R)

    def multidegree(self) -> Multidegree:
        r = tuple(1 if i + 1 in self.R else 0 for i in range(self.n))
        c = tuple(1 if j + 1 in self.C else 0 for j in range(self.n))
        return Multidegree(r, c)

    def polynomial(self, field: Field = QQ) -> Polynomial:
        """The (permanent) minor on the complementary rows and columns."""
        rows = [i for i in range(1, self.n + 1) if i not in self.R]
        cols = [j for j in range(1, self.n + 1) if j not in self.C]
        k = len(rows)
        terms = {}
        for p in itertools.permutations(range(k)):
            m = Monomial.from_variables(self.n, [(rows[t], cols[p[t]]) for t in range(k)])
            terms[m] = _perm_sign(p) if self.kind is Det else 1
        return Polynomial(self.n, terms, field)


def variable_action(b: MinorBasisElement, i: int, j: int) -> tuple[int, MinorBasisElement | None]:
    """Multiply ``b`` by ``X[i,j]`` in ``A``; returns ``(sign, result)``.

    ``result`` is None (and sign 0) when ``i`` is already in ``R`` or ``j``
    in ``C``.  For det the sign is ``(-1)^(p+q)`` where ``p``/``q`` are the
    1-based positions of ``i``/``j`` among the rows/columns still present.
    """
    n = b.n
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"variable ({i},{j}) outside {n}x{n}")
    if i in b.R or j in b.C:
        return 0, None
    R = tuple(sorted(b.R + (i,)))
    C = tuple(sorted(b.C + (j,)))
    out = MinorBasisElement(b.kind, n, R, C)
    if b.kind is Perm:
        return 1, out
    p = i - sum(1 for r in b.R if r < i)
    q = j - sum(1 for c in b.C if c < j)
    return (-1 if (p + q) % 2 else 1), out


def minor_basis(kind: PolyKind, n: int, d: int) -> list[MinorBasisElement]:
    kind = PolyKind.parse(kind)
    return [MinorBasisElement(kind, n, R, C)
            for R in itertools.combinations(range(1, n + 1), d)
            for C in itertools.combinations(range(1, n + 1), d)]


@lru_cache(maxsize=None)
def action_signs(kind: PolyKind, n: int) -> dict:
    """Sign of multiplying basis ``(R_mask, C_mask)`` by variable ``v``.

    Returns a dict keyed by ``(R_mask, C_mask, v)``; absent keys mean the
    product vanishes.  Used by the Koszul engine.
    """
    kind = PolyKind.parse(kind)
    out = {}
    for d in range(n):
        for R in itertools.combinations(range(1, n + 1), d):
            for C in itertools.combinations(range(1, n + 1), d):
                b = MinorBasisElement(kind, n, R, C)
                rm = sum(1 << (r - 1) for r in R)
                cm = sum(1 << (c - 1) for c in C)
                for i in range(1, n + 1):
                    if i in R:
                        continue
                    for j in range(1, n + 1):
                        if j in C:
                            continue
                        s, _ = variable_action(b, i, j)
                        out[(rm, cm, (i - 1) * n + (j - 1))] = s
    return out


def apply_generator_to_basis(g: Polynomial, b: MinorBasisElement) -> dict:
    """Act with a polynomial of S on a basis element through ``variable_action``."""
    acc: dict = {}
    for m, c in g.terms.items():
        sign, cur = 1, b
        for (i, j) in m.variables():
            s, cur = variable_action(cur, i, j)
            if cur is None:
                break
            sign *= s
        if cur is None:
            continue
        acc[cur] = acc.get(cur, 0) + sign * c
    return {k: v for k, v in acc.items() if v}
