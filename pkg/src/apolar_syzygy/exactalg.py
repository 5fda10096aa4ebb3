"""Exact scalar fields and sparse linear algebra.

Two kinds of field are supported: the rationals (``QQ``) and prime fields
``GF(p)``.  Inside a :class:`SparseMatrix` the entries are stored as plain
Python values (``Fraction`` for QQ, ``int`` in ``[0, p)`` for GF(p)); the
:class:`ModInt` wrapper exists for callers that want a self-describing
prime-field scalar.

Rank and kernel computations use sparse Gaussian elimination with a
Markowitz-style pivot choice.  Over QQ the elimination is fraction free:
rows are kept integral and divided by their content after every update.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Hashable, Iterable, Sequence


class FieldMismatchError(ValueError):
    """An entry belongs to a different field than the matrix."""


class PrimeRejectedError(ValueError):
    """A prime divides a denominator that must be inverted."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class ModInt:
    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _check(self, other):
        if isinstance(other, ModInt):
            if other.p != self.p:
                raise FieldMismatchError(f"GF({self.p}) vs GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other
        raise FieldMismatchError(f"cannot combine GF({self.p}) with {type(other).__name__}")

    def __add__(self, other):
        return ModInt(self.value + self._check(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return ModInt(self.value - self._check(other), self.p)

    def __rsub__(self, other):
        return ModInt(self._check(other) - self.value, self.p)

    def __mul__(self, other):
        return ModInt(self.value * self._check(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModInt(-self.value, self.p)

    def __truediv__(self, other):
        v = self._check(other) % self.p
        if v == 0:
            raise ZeroDivisionError("division by zero in GF(p)")
        return ModInt(self.value * pow(v, -1, self.p), self.p)

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


class Field:
    """Base class; subclasses implement normalisation and arithmetic."""

    name: str
    characteristic: int

    def __call__(self, x: Any):
        return self.convert(x)

    def __eq__(self, other):
        return type(self) is type(other) and self.characteristic == other.characteristic

    def __hash__(self):
        return hash((type(self).__name__, self.characteristic))

    def __repr__(self):
        return self.name

    def convert(self, x: Any):
        raise NotImplementedError

    def zero(self):
        return self.convert(0)

    def one(self):
        return self.convert(1)

    def inv(self, x):
        raise NotImplementedError

    def to_scalar(self, x):
        """Wrap an internal value as a public scalar."""
        return x


class RationalField(Field):
    name = "QQ"
    characteristic = 0

    def convert(self, x):
        if isinstance(x, ModInt):
            raise FieldMismatchError(f"GF({x.p}) element given to QQ")
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise FieldMismatchError(f"cannot interpret {x!r} as a rational")

    def inv(self, x):
        return 1 / x

    @property
    def tag(self) -> str:
        return "qq"


class PrimeField(Field):
    def __init__(self, p: int = 32003):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def convert(self, x):
        p = self.p
        if isinstance(x, ModInt):
            if x.p != p:
                raise FieldMismatchError(f"GF({x.p}) element given to GF({p})")
            return x.value
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return x % p
        if isinstance(x, Fraction):
            den = x.denominator % p
            if den == 0:
                raise PrimeRejectedError(f"{p} divides denominator {x.denominator}")
            return x.numerator * pow(den, -1, p) % p
        raise FieldMismatchError(f"cannot interpret {x!r} in GF({p})")

    def inv(self, x):
        return pow(x, -1, self.p)

    def to_scalar(self, x):
        return ModInt(x, self.p)

    @property
    def tag(self) -> str:
        return f"gf{self.p}"


QQ = RationalField()


def GF(p: int = 32003) -> PrimeField:
    return PrimeField(p)


def parse_field(spec: str) -> Field:
    """Parse ``qq``, ``QQ``, ``gf:<p>`` or ``gf<p>``."""
    s = spec.strip().lower()
    if s in ("qq", "q"):
        return QQ
    if s.startswith("gf"):
        rest = s[2:].lstrip(":")
        return GF(int(rest) if rest else 32003)
    raise ValueError(f"unknown field {spec!r}")


@dataclass(frozen=True)
class SparseMatrix:
    """Immutable sparse matrix over an exact field.

    ``entries`` maps ``(row, col)`` to a nonzero internal field value.
    Row and column labels default to ``range`` and must be unique.
    """

    field: Field
    nrows: int
    ncols: int
    entries: dict = field(repr=False)
    row_labels: tuple = ()
    col_labels: tuple = ()

    @classmethod
    def from_triples(cls, fld: Field, nrows: int, ncols: int,
                     triples: Iterable[tuple[int, int, Any]],
                     row_labels: Sequence[Hashable] | None = None,
                     col_labels: Sequence[Hashable] | None = None) -> "SparseMatrix":
        ent: dict = {}
        for r, c, v in triples:
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise IndexError(f"entry ({r}, {c}) outside {nrows}x{ncols}")
            if (r, c) in ent:
                raise ValueError(f"duplicate entry at ({r}, {c})")
            x = fld.convert(v)
            if x:
                ent[(r, c)] = x
        rl = tuple(row_labels) if row_labels is not None else tuple(range(nrows))
        cl = tuple(col_labels) if col_labels is not None else tuple(range(ncols))
        if len(rl) != nrows or len(set(rl)) != nrows:
            raise ValueError("row labels must be unique and match row count")
        if len(cl) != ncols or len(set(cl)) != ncols:
            raise ValueError("column labels must be unique and match column count")
        return cls(fld, nrows, ncols, ent, rl, cl)

    @classmethod
    def from_dense(cls, fld: Field, rows: Sequence[Sequence[Any]], **kw) -> "SparseMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        trip = [(i, j, v) for i, row in enumerate(rows) for j, v in enumerate(row) if v != 0]
        return cls.from_triples(fld, nr, nc, trip, **kw)

    @classmethod
    def from_columns(cls, fld: Field, nrows: int, columns: Sequence[dict], **kw) -> "SparseMatrix":
        trip = [(r, c, v) for c, col in enumerate(columns) for r, v in col.items()]
        return cls.from_triples(fld, nrows, len(columns), trip, **kw)

    @classmethod
    def identity(cls, fld: Field, n: int) -> "SparseMatrix":
        return cls.from_triples(fld, n, n, [(i, i, 1) for i in range(n)])

    @classmethod
    def zeros(cls, fld: Field, nrows: int, ncols: int) -> "SparseMatrix":
        return cls.from_triples(fld, nrows, ncols, [])

    def transpose(self) -> "SparseMatrix":
        ent = {(c, r): v for (r, c), v in self.entries.items()}
        return SparseMatrix(self.field, self.ncols, self.nrows, ent, self.col_labels, self.row_labels)

    def rows(self) -> list[dict]:
        out: list[dict] = [dict() for _ in range(self.nrows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def to_dense(self) -> list[list]:
        z = self.field.zero()
        out = [[z] * self.ncols for _ in range(self.nrows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def apply(self, vec: Sequence) -> list:
        """Return ``M @ vec`` in internal field values."""
        fld = self.field
        out = [fld.zero() for _ in range(self.nrows)]
        if isinstance(fld, PrimeField):
            p = fld.p
            for (r, c), v in self.entries.items():
                out[r] = (out[r] + v * fld.convert(vec[c])) % p
        else:
            for (r, c), v in self.entries.items():
                out[r] += v * fld.convert(vec[c])
        return out

    def to_matrix_market(self) -> str:
        """MatrixMarket coordinate text (integer entries, GF values as residues)."""
        kind = "integer" if isinstance(self.field, PrimeField) else "real"
        lines = [f"%%MatrixMarket matrix coordinate {kind} general",
                 f"% field {self.field.name}",
                 f"{self.nrows} {self.ncols} {len(self.entries)}"]
        for (r, c) in sorted(self.entries):
            v = self.entries[(r, c)]
            lines.append(f"{r + 1} {c + 1} {v}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# elimination kernels


def _rank_mod_p(rows: list[dict], p: int) -> int:
    """Markowitz-pivoted sparse elimination over GF(p); consumes ``rows``."""
    rows = [r for r in rows if r]
    if not rows:
        return 0
    cols: dict[int, set] = {}
    for idx, r in enumerate(rows):
        for c in r:
            cols.setdefault(c, set()).add(idx)
    alive = [True] * len(rows)
    heap = [(len(r), idx) for idx, r in enumerate(rows)]
    heapq.heapify(heap)
    rank = 0
    while heap:
        length, idx = heapq.heappop(heap)
        if not alive[idx]:
            continue
        row = rows[idx]
        if len(row) != length:
            if row:
                heapq.heappush(heap, (len(row), idx))
            else:
                alive[idx] = False
            continue
        alive[idx] = False
        # choose the column of this (shortest) row with fewest other rows
        pc = min(row, key=lambda c: (len(cols[c]), c))
        rank += 1
        inv = pow(row[pc], -1, p)
        for c in row:
            cols[c].discard(idx)
        others = list(cols[pc])
        for o in others:
            orow = rows[o]
            f = orow[pc] * inv % p
            for c, v in row.items():
                nv = (orow.get(c, 0) - f * v) % p
                if nv:
                    if c not in orow:
                        cols[c].add(o)
                    orow[c] = nv
                else:
                    if c in orow:
                        del orow[c]
                        cols[c].discard(o)
            if orow:
                heapq.heappush(heap, (len(orow), o))
            else:
                alive[o] = False
        cols[pc] = set()
    return rank


def _content_normalise(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        for c in row:
            row[c] //= g
    return row


def _integral_rows(rows: list[dict]) -> list[dict]:
    out = []
    for r in rows:
        if not r:
            continue
        den = 1
        for v in r.values():
            den = den * v.denominator // math.gcd(den, v.denominator)
        out.append(_content_normalise({c: int(v * den) for c, v in r.items()}))
    return out


def _rank_fraction_free(rows: list[dict]) -> int:
    """Fraction-free Markowitz elimination over ZZ (rank over QQ)."""
    rows = _integral_rows(rows)
    if not rows:
        return 0
    cols: dict[int, set] = {}
    for idx, r in enumerate(rows):
        for c in r:
            cols.setdefault(c, set()).add(idx)
    alive = [True] * len(rows)
    heap = [(len(r), idx) for idx, r in enumerate(rows)]
    heapq.heapify(heap)
    rank = 0
    while heap:
        length, idx = heapq.heappop(heap)
        if not alive[idx]:
            continue
        row = rows[idx]
        if len(row) != length:
            if row:
                heapq.heappush(heap, (len(row), idx))
            else:
                alive[idx] = False
            continue
        alive[idx] = False
        pc = min(row, key=lambda c: (len(cols[c]), abs(row[c]), c))
        rank += 1
        piv = row[pc]
        for c in row:
            cols[c].discard(idx)
        for o in list(cols[pc]):
            orow = rows[o]
            a = orow[pc]
            g = math.gcd(piv, a)
            mp, ma = piv // g, a // g
            new = {}
            for c in set(orow) | set(row):
                v = mp * orow.get(c, 0) - ma * row.get(c, 0)
                if v:
                    new[c] = v
            for c in orow:
                if c not in new:
                    cols[c].discard(o)
            for c in new:
                if c not in orow:
                    cols[c].add(o)
            _content_normalise(new)
            rows[o] = new
            if new:
                heapq.heappush(heap, (len(new), o))
            else:
                alive[o] = False
        cols[pc] = set()
    return rank


def _check_same_field(M: SparseMatrix):
    fld = M.field
    if isinstance(fld, PrimeField):
        for v in M.entries.values():
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < fld.p:
                raise FieldMismatchError(f"entry {v!r} is not a GF({fld.p}) residue")
    else:
        for v in M.entries.values():
            if not isinstance(v, Fraction):
                raise FieldMismatchError(f"entry {v!r} is not a rational")


def rank(M: SparseMatrix) -> int:
    """Rank of ``M`` over its field."""
    _check_same_field(M)
    if not M.entries:
        return 0
    # eliminate along the shorter axis
    rows = M.rows() if M.nrows <= M.ncols else M.transpose().rows()
    if isinstance(M.field, PrimeField):
        return _rank_mod_p(rows, M.field.p)
    return _rank_fraction_free(rows)


def rank_of_rows(fld: Field, rows: Iterable[dict]) -> int:
    """Rank of a list of sparse row dicts (values already in ``fld``)."""
    rows = [dict(r) for r in rows if r]
    if isinstance(fld, PrimeField):
        return _rank_mod_p(rows, fld.p)
    return _rank_fraction_free(rows)


def _rref_rows(fld: Field, rows: list[dict], order: Sequence[int]) -> tuple[list[dict], list[int]]:
    """Reduced row echelon form with pivots chosen in column ``order``."""
    pos = {c: k for k, c in enumerate(order)}
    if isinstance(fld, PrimeField):
        p = fld.p

        def sub(a, b, f):
            out = dict(a)
            for c, v in b.items():
                nv = (out.get(c, 0) - f * v) % p
                if nv:
                    out[c] = nv
                else:
                    out.pop(c, None)
            return out

        def scale(a, f):
            return {c: v * f % p for c, v in a.items()}

        inv = lambda x: pow(x, -1, p)
    else:
        def sub(a, b, f):
            out = dict(a)
            for c, v in b.items():
                nv = out.get(c, 0) - f * v
                if nv:
                    out[c] = nv
                else:
                    out.pop(c, None)
            return out

        def scale(a, f):
            return {c: v * f for c, v in a.items()}

        inv = lambda x: 1 / x
    pivots: dict[int, dict] = {}
    for r in rows:
        r = dict(r)
        # reduce against existing pivots
        while r:
            lead = min(r, key=pos.__getitem__)
            if lead in pivots:
                r = sub(r, pivots[lead], r[lead])
            else:
                break
        if not r:
            continue
        lead = min(r, key=pos.__getitem__)
        r = scale(r, inv(r[lead]))
        for c in list(r):
            if c != lead and c in pivots:
                r = sub(r, pivots[c], r[c])
        for pc, pr in pivots.items():
            if lead in pr:
                pivots[pc] = sub(pr, r, pr[lead])
        pivots[lead] = r
    lead_cols = sorted(pivots, key=pos.__getitem__)
    return [pivots[c] for c in lead_cols], lead_cols


def kernel_basis(M: SparseMatrix) -> list[list]:
    """Basis of the right kernel, as dense column-indexed vectors.

    The basis is returned in reduced echelon form with respect to the
    column order given by sorting the column labels (falling back to the
    column index when labels are not comparable), so it depends only on the
    kernel and the labels.
    """
    _check_same_field(M)
    fld = M.field
    n = M.ncols
    try:
        order = sorted(range(n), key=lambda c: M.col_labels[c])
    except TypeError:
        order = list(range(n))
    reduced, pivcols = _rref_rows(fld, [r for r in M.rows() if r], order)
    piv = set(pivcols)
    free = [c for c in order if c not in piv]
    zero, one = fld.zero(), fld.one()
    neg = (lambda v: (-v) % fld.p) if isinstance(fld, PrimeField) else (lambda v: -v)
    raw: list[dict] = []
    for f in free:
        v = {f: one}
        for pc, row in zip(pivcols, reduced):
            x = row.get(f)
            if x:
                v[pc] = neg(x)
        raw.append(v)
    # canonical reduced echelon form of the kernel under the same column order
    basis, _ = _rref_rows(fld, raw, order)
    out = []
    for b in basis:
        vec = [zero] * n
        for c, x in b.items():
            vec[c] = x
        out.append(vec)
    return out


def bareiss_rank(fld: Field, dense: Sequence[Sequence[Any]]) -> int:
    """Dense fraction-free (Bareiss) rank; over GF(p) plain elimination."""
    A = [[fld.convert(x) for x in row] for row in dense]
    if not A or not A[0]:
        return 0
    if isinstance(fld, PrimeField):
        rows = [{j: v for j, v in enumerate(r) if v} for r in A]
        return _rank_mod_p(rows, fld.p)
    den = 1
    for row in A:
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
    A = [[int(x * den) for x in row] for row in A]
    m, n = len(A), len(A[0])
    prev = 1
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                A[i][j] = (A[r][c] * A[i][j] - A[i][c] * A[r][j]) // prev
            A[i][c] = 0
        prev = A[r][c]
        r += 1
    return r


@dataclass
class CrosscheckReport:
    rational_rank: int
    modular_ranks: dict[int, int]
    flagged: list[int]

    @property
    def ok(self) -> bool:
        return not self.flagged


def rank_crosscheck(M: SparseMatrix, primes: Iterable[int]) -> CrosscheckReport:
    """Compare the rank over QQ with ranks modulo each prime.

    Primes at which the modular rank drops are reported in ``flagged``;
    the rational rank is authoritative.
    """
    if M.field != QQ:
        raise FieldMismatchError("rank_crosscheck expects a matrix over QQ")
    q = rank(M)
    mods: dict[int, int] = {}
    flagged = []
    for p in primes:
        F = GF(p)
        trip = [(r, c, F.convert(v)) for (r, c), v in M.entries.items()]
        rp = rank(SparseMatrix.from_triples(F, M.nrows, M.ncols, trip))
        mods[p] = rp
        if rp != q:
            flagged.append(p)
    return CrosscheckReport(q, mods, flagged)
