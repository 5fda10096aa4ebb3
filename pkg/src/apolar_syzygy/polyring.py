"""Monomials and sparse polynomials in the n*n matrix variables.

Variables are written ``X[i,j]`` (dual ring S) or ``x[i,j]`` (ring R) with
1-based row/column indices.  A monomial stores its exponent matrix flattened
row-major, which makes hashing cheap and gives the canonical graded
lexicographic order for free.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .exactalg import QQ, Field, FieldMismatchError, PrimeField


@dataclass(frozen=True, order=False)
class Monomial:
    n: int
    exps: tuple  # length n*n, row-major

    def __post_init__(self):
        if len(self.exps) != self.n * self.n:
            raise ValueError("exponent vector has wrong length")
        if any(e < 0 for e in self.exps):
            raise ValueError("negative exponent")

    @classmethod
    def one(cls, n: int) -> "Monomial":
        return cls(n, (0,) * (n * n))

    @classmethod
    def var(cls, n: int, i: int, j: int, power: int = 1) -> "Monomial":
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"variable ({i},{j}) outside {n}x{n}")
        e = [0] * (n * n)
        e[(i - 1) * n + (j - 1)] = power
        return cls(n, tuple(e))

    @classmethod
    def from_dict(cls, n: int, exps: Mapping[tuple[int, int], int]) -> "Monomial":
        e = [0] * (n * n)
        for (i, j), k in exps.items():
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"variable ({i},{j}) outside {n}x{n}")
            if k <= 0:
                raise ValueError("exponents must be positive")
            e[(i - 1) * n + (j - 1)] += k
        return cls(n, tuple(e))

    @classmethod
    def from_variables(cls, n: int, variables: Iterable[tuple[int, int]]) -> "Monomial":
        e = [0] * (n * n)
        for i, j in variables:
            e[(i - 1) * n + (j - 1)] += 1
        return cls(n, tuple(e))

    @property
    def exponents(self) -> dict[tuple[int, int], int]:
        n = self.n
        return {(k // n + 1, k % n + 1): e for k, e in enumerate(self.exps) if e}

    @property
    def degree(self) -> int:
        return sum(self.exps)

    def variables(self) -> list[tuple[int, int]]:
        """Variables with multiplicity, in row-major order."""
        n = self.n
        out = []
        for k, e in enumerate(self.exps):
            out.extend([(k // n + 1, k % n + 1)] * e)
        return out

    def multidegree(self) -> "Multidegree":
        n = self.n
        rows = [0] * n
        cols = [0] * n
        for k, e in enumerate(self.exps):
            if e:
                rows[k // n] += e
                cols[k % n] += e
        return Multidegree(tuple(rows), tuple(cols))

    def __mul__(self, other: "Monomial") -> "Monomial":
        if other.n != self.n:
            raise ValueError("monomials over different n")
        return Monomial(self.n, tuple(a + b for a, b in zip(self.exps, other.exps)))

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.n, tuple(a - b for a, b in zip(self.exps, other.exps)))

    def sort_key(self):
        # graded lex, larger first
        return (-self.degree, tuple(-e for e in self.exps))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def render(self, letter: str = "X") -> str:
        if self.degree == 0:
            return "1"
        parts = []
        for (i, j), e in sorted(self.exponents.items()):
            parts.append(f"{letter}[{i},{j}]" + (f"^{e}" if e > 1 else ""))
        return "*".join(parts)

    def __repr__(self):
        return self.render()


@dataclass(frozen=True)
class Multidegree:
    rows: tuple
    cols: tuple

    def __post_init__(self):
        if sum(self.rows) != sum(self.cols):
            raise ValueError("row and column degrees must have equal sums")

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def degree(self) -> int:
        return sum(self.rows)

    def is_singular(self) -> bool:
        return all(x in (0, 1) for x in self.rows + self.cols)

    def __add__(self, other: "Multidegree") -> "Multidegree":
        return Multidegree(tuple(a + b for a, b in zip(self.rows, other.rows)),
                           tuple(a + b for a, b in zip(self.cols, other.cols)))

    def __sub__(self, other: "Multidegree") -> "Multidegree":
        return Multidegree(tuple(a - b for a, b in zip(self.rows, other.rows)),
                           tuple(a - b for a, b in zip(self.cols, other.cols)))

    def nonnegative(self) -> bool:
        return min(self.rows + self.cols, default=0) >= 0

    def transpose(self) -> "Multidegree":
        return Multidegree(self.cols, self.rows)

    def partition_form(self) -> tuple[tuple, tuple]:
        """Sorted (partition) view used to label symmetry orbits."""
        key = lambda v: tuple(sorted((x for x in v if x), reverse=True))
        return key(self.rows), key(self.cols)

    def canonical(self) -> "Multidegree":
        """Representative of the orbit under row/column permutations and transpose."""
        r = tuple(sorted(self.rows, reverse=True))
        c = tuple(sorted(self.cols, reverse=True))
        return Multidegree(r, c) if r >= c else Multidegree(c, r)

    def orbit_size(self) -> int:
        """Number of multidegrees in the orbit of this one."""
        r = _distinct_perms(self.rows)
        c = _distinct_perms(self.cols)
        same = sorted(self.rows) == sorted(self.cols)
        return r * c * (1 if same else 2)

    def __repr__(self):
        return f"({self.rows}, {self.cols})"


def _distinct_perms(v) -> int:
    from math import factorial
    out = factorial(len(v))
    counts: dict = {}
    for x in v:
        counts[x] = counts.get(x, 0) + 1
    for k in counts.values():
        out //= factorial(k)
    return out


def degrees(m: Monomial) -> tuple[int, Multidegree, list[list[int]]]:
    """Standard degree, multidegree and exponent matrix of ``m``."""
    n = m.n
    mat = [list(m.exps[i * n:(i + 1) * n]) for i in range(n)]
    return m.degree, m.multidegree(), mat


def monomial_from_permutation(rows: Iterable[int], cols: Iterable[int], perm: Iterable[int], n: int) -> Monomial:
    """Monomial ``prod_t X[rows[t], cols[perm[t]-1]]`` of a singular multidegree."""
    rows, cols, perm = list(rows), list(cols), list(perm)
    return Monomial.from_variables(n, [(rows[t], cols[perm[t] - 1]) for t in range(len(rows))])


def permutation_of_monomial(m: Monomial) -> tuple[tuple, tuple, tuple]:
    """Inverse of :func:`monomial_from_permutation` for singular monomials."""
    md = m.multidegree()
    if not md.is_singular():
        raise ValueError("monomial does not have singular multidegree")
    rows = [i + 1 for i, x in enumerate(md.rows) if x]
    cols = [j + 1 for j, x in enumerate(md.cols) if x]
    colpos = {c: k + 1 for k, c in enumerate(cols)}
    by_row = {i: j for (i, j) in m.exponents}
    return tuple(rows), tuple(cols), tuple(colpos[by_row[i]] for i in rows)


class Polynomial:
    """Sparse polynomial over an exact field; immutable by convention."""

    __slots__ = ("n", "field", "terms")

    def __init__(self, n: int, terms: Mapping[Monomial, object] | None = None, field: Field = QQ):
        self.n = n
        self.field = field
        clean = {}
        for m, c in (terms or {}).items():
            if m.n != n:
                raise ValueError("monomial has wrong n")
            v = field.convert(c)
            if v:
                clean[m] = v
        self.terms = clean

    @classmethod
    def _raw(cls, n, terms, field):
        p = cls.__new__(cls)
        p.n, p.field, p.terms = n, field, terms
        return p

    @classmethod
    def monomial(cls, m: Monomial, coeff=1, field: Field = QQ) -> "Polynomial":
        return cls(m.n, {m: coeff}, field)

    @classmethod
    def var(cls, n: int, i: int, j: int, field: Field = QQ) -> "Polynomial":
        return cls(n, {Monomial.var(n, i, j): 1}, field)

    @classmethod
    def constant(cls, n: int, c=1, field: Field = QQ) -> "Polynomial":
        return cls(n, {Monomial.one(n): c}, field)

    def _compat(self, other: "Polynomial"):
        if other.n != self.n:
            raise ValueError("polynomials over different n")
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def _norm(self, v):
        if isinstance(self.field, PrimeField):
            return v % self.field.p
        return v

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._compat(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = self._norm(out.get(m, 0) + c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(self.n, out, self.field)

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.n, {m: self._norm(-c) for m, c in self.terms.items()}, self.field)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c) -> "Polynomial":
        c = self.field.convert(c)
        if not c:
            return Polynomial._raw(self.n, {}, self.field)
        return Polynomial._raw(self.n, {m: self._norm(v * c) for m, v in self.terms.items()}, self.field)

    def __mul__(self, other):
        if isinstance(other, Monomial):
            return Polynomial._raw(self.n, {m * other: c for m, c in self.terms.items()}, self.field)
        if not isinstance(other, Polynomial):
            return self.scale(other)
        return poly_multiply(self, other)

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        return sorted(self.terms.items(), key=lambda t: t[0].sort_key())

    def is_homogeneous(self) -> bool:
        return len({m.degree for m in self.terms}) <= 1

    def multidegrees(self) -> set[Multidegree]:
        return {m.multidegree() for m in self.terms}

    def change_field(self, field: Field) -> "Polynomial":
        """Reduce a rational polynomial into ``field``."""
        if self.field != QQ and field != self.field:
            raise FieldMismatchError("only rational polynomials can change field")
        return Polynomial(self.n, self.terms, field)

    def render(self, letter: str = "X") -> str:
        if not self.terms:
            return "0"
        out = []
        for k, (m, c) in enumerate(self.sorted_terms()):
            c = _signed(c, self.field)
            neg = c < 0
            a = -c if neg else c
            body = m.render(letter)
            if body == "1":
                s = str(a)
            elif a == 1:
                s = body
            else:
                s = f"{a}*{body}"
            if k == 0:
                out.append(("-" if neg else "") + s)
            else:
                out.append((" - " if neg else " + ") + s)
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({self.render()})"


def _signed(c, field: Field):
    """Represent GF(p) residues symmetrically for printing."""
    if isinstance(field, PrimeField):
        return c - field.p if c > field.p // 2 else c
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def poly_multiply(f: Polynomial, g: Polynomial) -> Polynomial:
    """Ring product of two polynomials over the same field and n."""
    f._compat(g)
    out: dict = {}
    prime = isinstance(f.field, PrimeField)
    p = f.field.p if prime else None
    for m1, c1 in f.terms.items():
        for m2, c2 in g.terms.items():
            m = m1 * m2
            v = out.get(m, 0) + c1 * c2
            if prime:
                v %= p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return Polynomial._raw(f.n, out, f.field)


_VAR_RE = re.compile(r"([Xx])\[\s*(\d+)\s*,\s*(\d+)\s*\](?:\^(\d+))?")


def parse_polynomial(text: str, n: int, field: Field = QQ) -> Polynomial:
    """Parse the ``X[i,j]^e`` notation produced by :meth:`Polynomial.render`."""
    s = text.replace(" ", "")
    if not s or s == "0":
        return Polynomial(n, {}, field)
    terms: dict = {}
    if s[0] not in "+-":
        s = "+" + s
    for sign, body in re.findall(r"([+-])([^+-]+)", s):
        coeff = Fraction(1)
        exps: dict = {}
        for factor in body.split("*"):
            if not factor:
                raise ValueError(f"bad term {body!r}")
            mv = _VAR_RE.fullmatch(factor)
            if mv:
                i, j = int(mv.group(2)), int(mv.group(3))
                e = int(mv.group(4) or 1)
                exps[(i, j)] = exps.get((i, j), 0) + e
            else:
                try:
                    coeff *= Fraction(factor)
                except ValueError as exc:
                    raise ValueError(f"cannot parse factor {factor!r}") from exc
        if sign == "-":
            coeff = -coeff
        m = Monomial.from_dict(n, exps)
        terms[m] = terms.get(m, 0) + coeff
    return Polynomial(n, terms, field)


@dataclass(frozen=True)
class SymmetryElement:
    """Row permutation, column permutation, then optional transpose.

    Acts on variables by ``X[i,j] -> X[rowPerm(i), colPerm(j)]`` followed by
    index swap when ``transpose`` is set.  Permutations are 1-based image
    tuples.
    """

    row_perm: tuple
    col_perm: tuple
    transpose: bool = False

    @classmethod
    def identity(cls, n: int) -> "SymmetryElement":
        t = tuple(range(1, n + 1))
        return cls(t, t, False)

    @property
    def n(self) -> int:
        return len(self.row_perm)

    def map_index(self, i: int, j: int) -> tuple[int, int]:
        a, b = self.row_perm[i - 1], self.col_perm[j - 1]
        return (b, a) if self.transpose else (a, b)

    def compose(self, other: "SymmetryElement") -> "SymmetryElement":
        """``self ∘ other``: apply ``other`` first."""
        rs, cs = self.row_perm, self.col_perm
        ro, co = other.row_perm, other.col_perm
        n = self.n
        if not other.transpose:
            return SymmetryElement(tuple(rs[ro[i] - 1] for i in range(n)),
                                   tuple(cs[co[j] - 1] for j in range(n)), self.transpose)
        # a transposed argument swaps which permutation of self acts on which index
        return SymmetryElement(tuple(cs[ro[i] - 1] for i in range(n)),
                               tuple(rs[co[j] - 1] for j in range(n)), not self.transpose)

    def apply_monomial(self, m: Monomial) -> Monomial:
        n = m.n
        e = [0] * (n * n)
        for k, x in enumerate(m.exps):
            if x:
                a, b = self.map_index(k // n + 1, k % n + 1)
                e[(a - 1) * n + (b - 1)] = x
        return Monomial(n, tuple(e))

    def apply_multidegree(self, md: Multidegree) -> Multidegree:
        rows = [0] * len(md.rows)
        cols = [0] * len(md.cols)
        for i, x in enumerate(md.rows):
            rows[self.row_perm[i] - 1] = x
        for j, x in enumerate(md.cols):
            cols[self.col_perm[j] - 1] = x
        out = Multidegree(tuple(rows), tuple(cols))
        return out.transpose() if self.transpose else out


def apply_symmetry(s: SymmetryElement, f: Polynomial) -> Polynomial:
    if s.n != f.n:
        raise ValueError("symmetry and polynomial have different n")
    return Polynomial._raw(f.n, {s.apply_monomial(m): c for m, c in f.terms.items()}, f.field)


def symmetry_group(n: int, with_transpose: bool = True) -> Iterator[SymmetryElement]:
    """All (n!)^2 * 2 symmetries (row perm, column perm, transpose)."""
    perms = list(itertools.permutations(range(1, n + 1)))
    for t in ((False, True) if with_transpose else (False,)):
        for r in perms:
            for c in perms:
                yield SymmetryElement(r, c, t)


def contingency_tables(rows: tuple, cols: tuple, max_entry: int | None = None) -> Iterator[tuple]:
    """Nonnegative integer matrices (flattened row-major) with given margins.

    With ``max_entry=1`` this enumerates 0/1 matrices, i.e. square-free
    monomials / subsets of variables.
    """
    n_r = len(rows)
    if sum(rows) != sum(cols):
        return
    cap = max_entry

    def fill_row(i, remaining_cols, acc):
        if i == n_r:
            if not any(remaining_cols):
                yield tuple(acc)
            return
        # remaining rows must be able to absorb the column budget
        target = rows[i]
        for row in _compositions_bounded(target, remaining_cols, cap):
            new = tuple(r - x for r, x in zip(remaining_cols, row))
            yield from fill_row(i + 1, new, acc + list(row))

    yield from fill_row(0, tuple(cols), [])


def _compositions_bounded(total: int, bounds: tuple, cap: int | None):
    k = len(bounds)
    out = [0] * k

    def rec(idx, left):
        if idx == k - 1:
            b = bounds[idx] if cap is None else min(bounds[idx], cap)
            if left <= b:
                out[idx] = left
                yield tuple(out)
            return
        b = bounds[idx] if cap is None else min(bounds[idx], cap)
        rest = sum(bounds[idx + 1:]) if cap is None else sum(min(x, cap) for x in bounds[idx + 1:])
        lo = max(0, left - rest)
        for x in range(min(b, left), lo - 1, -1):
            out[idx] = x
            yield from rec(idx + 1, left - x)
        out[idx] = 0

    if k == 0:
        if total == 0:
            yield ()
        return
    yield from rec(0, total)


def monomials_of_multidegree(md: Multidegree, square_free: bool = False) -> list[Monomial]:
    n = md.n
    if md.degree == 0:
        return [Monomial.one(n)]
    if not md.nonnegative():
        return []
    ms = [Monomial(n, t) for t in contingency_tables(md.rows, md.cols, 1 if square_free else None)]
    ms.sort(key=Monomial.sort_key)
    return ms


def monomials_of_degree(n: int, d: int) -> list[Monomial]:
    out = []
    for combo in itertools.combinations_with_replacement(range(n * n), d):
        e = [0] * (n * n)
        for k in combo:
            e[k] += 1
        out.append(Monomial(n, tuple(e)))
    out.sort(key=Monomial.sort_key)
    return out


def multidegrees_of_degree(n: int, d: int) -> list[Multidegree]:
    """Every multidegree of standard degree ``d`` (ordered vectors)."""
    comps = list(_compositions_bounded(d, (d,) * n, None))
    return [Multidegree(r, c) for r in comps for c in comps]


def canonical_multidegrees(n: int, d: int) -> list[Multidegree]:
    """One representative per symmetry orbit of multidegrees of degree ``d``."""
    parts = sorted({tuple(sorted(c, reverse=True)) for c in _compositions_bounded(d, (d,) * n, None)}, reverse=True)
    out = []
    for a in parts:
        for b in parts:
            if a >= b:
                out.append(Multidegree(a, b))
    return out
