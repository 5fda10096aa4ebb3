"""Relations among the quadratic generators, per multidegree.

An element of F_1 is a finite sum ``c * f * (g_k)`` with ``f`` a monomial and
``g_k`` the k-th generator of the canonical generator list.  ``d1`` expands
the sum in S; relations are the elements with ``d1 = 0``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache

from ..apolar import PolyKind, shafiei_generators
from ..exactalg import QQ, Field, PrimeField, SparseMatrix, _rank_fraction_free, _rank_mod_p, kernel_basis
from ..polyring import (
    Monomial,
    Multidegree,
    Polynomial,
    SymmetryElement,
    canonical_multidegrees,
    monomials_of_multidegree,
    parse_polynomial,
    symmetry_group,
)


class RelationElement:
    """Sparse element of F_1: ``{(Monomial f, generator index k): coefficient}``."""

    __slots__ = ("kind", "n", "field", "terms")

    def __init__(self, kind: PolyKind, n: int, terms=None, field: Field = QQ):
        self.kind = PolyKind.parse(kind)
        self.n = n
        self.field = field
        self.terms: dict = {}
        for (f, k), c in (terms or {}).items():
            self.add_term(f, k, c)

    def add_term(self, f: Monomial, k: int, c) -> None:
        v = self.field.convert(self.terms.get((f, k), 0)) + self.field.convert(c)
        if isinstance(self.field, PrimeField):
            v %= self.field.p
        if v:
            self.terms[(f, k)] = v
        else:
            self.terms.pop((f, k), None)

    def copy(self) -> "RelationElement":
        out = RelationElement(self.kind, self.n, field=self.field)
        out.terms = dict(self.terms)
        return out

    def __add__(self, other: "RelationElement") -> "RelationElement":
        out = self.copy()
        for (f, k), c in other.terms.items():
            out.add_term(f, k, c)
        return out

    def scale(self, c) -> "RelationElement":
        out = RelationElement(self.kind, self.n, field=self.field)
        for (f, k), v in self.terms.items():
            out.add_term(f, k, v * self.field.convert(c))
        return out

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return (isinstance(other, RelationElement) and self.kind == other.kind
                and self.n == other.n and self.terms == other.terms)

    def __hash__(self):
        return hash((self.kind, self.n, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def generators(self):
        return shafiei_generators(self.kind, self.n)

    def d1(self) -> Polynomial:
        """Image in S: ``sum c * f * g_k``."""
        gens = self.generators()
        acc: dict = {}
        p = getattr(self.field, "p", None)
        for (f, k), c in self.terms.items():
            for m, gc in gens[k].terms.items():
                mm = f * m
                v = acc.get(mm, 0) + c * gc
                acc[mm] = v % p if p else v
        return Polynomial(self.n, {m: v for m, v in acc.items() if v}, self.field)

    def is_relation(self) -> bool:
        return self.d1().is_zero()

    def multidegrees(self) -> set:
        gens = self.generators()
        return {(f * next(iter(gens[k].terms))).multidegree() for (f, k) in self.terms}

    def multidegree(self) -> Multidegree:
        mds = self.multidegrees()
        if len(mds) != 1:
            raise ValueError("element is not multihomogeneous")
        return next(iter(mds))

    def times(self, m: Monomial) -> "RelationElement":
        out = RelationElement(self.kind, self.n, field=self.field)
        out.terms = {(m * f, k): c for (f, k), c in self.terms.items()}
        return out

    def apply_symmetry(self, s: SymmetryElement) -> "RelationElement":
        gens = self.generators()
        out = RelationElement(self.kind, self.n, field=self.field)
        for (f, k), c in self.terms.items():
            img = Polynomial(self.n, {s.apply_monomial(m): v for m, v in gens[k].terms.items()})
            k2, sign = gens.locate(img)
            out.add_term(s.apply_monomial(f), k2, c * sign)
        return out

    def change_field(self, field: Field) -> "RelationElement":
        return RelationElement(self.kind, self.n, self.terms, field)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (t[0][0].sort_key(), t[0][1]))

    def render(self, letter: str = "X") -> str:
        if not self.terms:
            return "0"
        gens = self.generators()
        parts = []
        for (f, k), c in self.sorted_terms():
            if isinstance(self.field, PrimeField) and c > self.field.p // 2:
                c = c - self.field.p
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            coeff = "" if mag == 1 else f"{mag}*"
            mono = "" if f.degree == 0 else f.render(letter) + "*"
            parts.append((sign, f"{coeff}{mono}({gens[k].render(letter)})"))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sgn, body in parts[1:]:
            out += f" {sgn} {body}"
        return out

    def __repr__(self):
        return f"RelationElement({self.kind}, n={self.n}, {self.render()})"


# ---------------------------------------------------------------------------
# F_1 terms and the evaluation map


def generator_multidegrees(kind: PolyKind, n: int) -> list[Multidegree]:
    gens = shafiei_generators(kind, n)
    return [gens.multidegree(k) for k in range(len(gens))]


def f1_terms(kind: PolyKind, n: int, mu: Multidegree) -> list[tuple[Monomial, int]]:
    """Every term ``f * (g_k)`` of multidegree ``mu``, ordered by (k, f)."""
    kind = PolyKind.parse(kind)
    out = []
    for k, md in enumerate(generator_multidegrees(kind, n)):
        rest = mu - md
        if not rest.nonnegative():
            continue
        for f in monomials_of_multidegree(rest):
            out.append((f, k))
    return out


def _field_rank(fld: Field, rows: list[dict]) -> int:
    if isinstance(fld, PrimeField):
        conv = fld.convert
        return _rank_mod_p([{c: x for c, v in r.items() if (x := conv(v))} for r in rows], fld.p)
    return _rank_fraction_free([dict(r) for r in rows if r])


def evaluation_matrix(kind: PolyKind, n: int, mu: Multidegree, field: Field = QQ, terms=None) -> SparseMatrix:
    """d1 restricted to multidegree ``mu``: columns are F_1 terms, rows S-monomials."""
    terms = terms if terms is not None else f1_terms(kind, n, mu)
    gens = shafiei_generators(kind, n)
    mons = monomials_of_multidegree(mu)
    midx = {m: r for r, m in enumerate(mons)}
    trip = []
    for c, (f, k) in enumerate(terms):
        for m, v in gens[k].terms.items():
            trip.append((midx[f * m], c, v))
    return SparseMatrix.from_triples(field, len(mons), len(terms), trip,
                                     row_labels=tuple(mons), col_labels=tuple(terms))


def relations_multidegree(kind: PolyKind, n: int, mu: Multidegree, field: Field = QQ) -> list[RelationElement]:
    """Basis (reduced echelon form) of the relations of multidegree ``mu``."""
    kind = PolyKind.parse(kind)
    terms = f1_terms(kind, n, mu)
    if not terms:
        return []
    M = evaluation_matrix(kind, n, mu, field, terms)
    out = []
    for vec in kernel_basis(M):
        rel = RelationElement(kind, n, field=field)
        for (f, k), c in zip(terms, vec):
            if c:
                rel.add_term(f, k, c)
        out.append(rel)
    return out


def relation_space_dim(kind: PolyKind, n: int, mu: Multidegree, field: Field = QQ) -> int:
    terms = f1_terms(kind, n, mu)
    if not terms:
        return 0
    gens = shafiei_generators(kind, n)
    midx = {m: r for r, m in enumerate(monomials_of_multidegree(mu))}
    cols = []
    for f, k in terms:
        cols.append({midx[f * m]: v for m, v in gens[k].terms.items()})
    return len(terms) - _field_rank(field, cols)


PARTITIONS_3 = ((3,), (2, 1), (1, 1, 1))


def _pad(part, n):
    return tuple(part) + (0,) * (n - len(part))


def vectors_with_partition(part, n: int) -> int:
    """Number of vectors in N^n whose nonzero entries sort to ``part``."""
    from collections import Counter
    from math import factorial

    if len(part) > n:
        return 0
    counts = Counter(_pad(part, n))
    out = factorial(n)
    for c in counts.values():
        out //= factorial(c)
    return out


def linear_relation_table(kind: PolyKind = PolyKind.DET, field: Field = QQ) -> list[list[int]]:
    """Dimensions of degree-3 relation spaces by (row, column) partition of 3."""
    return [[relation_space_dim(kind, 3, Multidegree(_pad(a, 3), _pad(b, 3)), field) for b in PARTITIONS_3]
            for a in PARTITIONS_3]


def weighted_linear_relations(n: int, table=None) -> int:
    """Total dimension of degree-3 relations at size ``n`` from the class table."""
    table = table or linear_relation_table()
    return sum(table[a][b] * vectors_with_partition(pa, n) * vectors_with_partition(pb, n)
               for a, pa in enumerate(PARTITIONS_3) for b, pb in enumerate(PARTITIONS_3))


# ---------------------------------------------------------------------------
# canonical relation templates


_TEMPLATES = {
    PolyKind.DET: [
        ("rho1", 2, [(1, "X[1,2]", "X[1,1]^2"), (-1, "X[1,1]", "X[1,1]*X[1,2]")]),
        ("rho2", 3, [(1, "X[1,3]", "X[1,1]*X[1,2]"), (-1, "X[1,2]", "X[1,1]*X[1,3]")]),
        ("rho3", 2, [(1, "X[2,1]", "X[1,1]*X[1,2]"), (-1, "X[1,2]", "X[1,1]*X[2,1]")]),
        ("rho4", 2, [(1, "X[1,1]", "X[1,1]*X[2,2] + X[1,2]*X[2,1]"), (-1, "X[2,1]", "X[1,1]*X[1,2]"),
                     (-1, "X[2,2]", "X[1,1]^2")]),
        ("rho5", 3, [(1, "X[1,3]", "X[1,1]*X[2,2] + X[1,2]*X[2,1]"), (-1, "X[2,2]", "X[1,1]*X[1,3]"),
                     (-1, "X[2,1]", "X[1,2]*X[1,3]")]),
        ("rhoS", 3, [(1, "X[3,3]", "X[1,1]*X[2,2] + X[1,2]*X[2,1]"), (-1, "X[1,2]", "X[2,1]*X[3,3] + X[2,3]*X[3,1]"),
                     (1, "X[2,3]", "X[1,1]*X[3,2] + X[1,2]*X[3,1]"), (-1, "X[1,1]", "X[2,2]*X[3,3] + X[2,3]*X[3,2]")]),
    ],
    PolyKind.PERM: [
        ("rho1", 2, [(1, "X[1,2]", "X[1,1]^2"), (-1, "X[1,1]", "X[1,1]*X[1,2]")]),
        ("rho2", 3, [(1, "X[1,3]", "X[1,1]*X[1,2]"), (-1, "X[1,2]", "X[1,1]*X[1,3]")]),
        ("rho3", 2, [(1, "X[2,1]", "X[1,1]*X[1,2]"), (-1, "X[1,2]", "X[1,1]*X[2,1]")]),
        ("rho4", 2, [(1, "X[1,1]", "X[1,1]*X[2,2] - X[1,2]*X[2,1]"), (1, "X[2,1]", "X[1,1]*X[1,2]"),
                     (-1, "X[2,2]", "X[1,1]^2")]),
        ("rho5", 3, [(1, "X[1,3]", "X[1,1]*X[2,2] - X[1,2]*X[2,1]"), (-1, "X[2,2]", "X[1,1]*X[1,3]"),
                     (1, "X[2,1]", "X[1,2]*X[1,3]")]),
        ("rhoS", 3, [(1, "X[3,3]", "X[1,1]*X[2,2] - X[1,2]*X[2,1]"), (-1, "X[1,2]", "X[2,3]*X[3,1] - X[2,1]*X[3,3]"),
                     (1, "X[2,3]", "X[1,2]*X[3,1] - X[1,1]*X[3,2]"), (-1, "X[1,1]", "X[2,2]*X[3,3] - X[2,3]*X[3,2]")]),
        ("rhoQ", 4, [(1, "X[2,3]*X[2,4]", "X[1,1]*X[1,2]"), (-1, "X[1,1]*X[1,2]", "X[2,3]*X[2,4]")]),
    ],
}

QUADRATIC_TEMPLATES = ("rhoQ",)


@dataclass(frozen=True)
class RelationTemplate:
    name: str
    footprint: int
    kind: PolyKind
    recipe: tuple  # (coefficient, coefficient monomial text, generator text)

    def instantiate(self, n: int, field: Field = QQ) -> RelationElement:
        if n < self.footprint:
            raise ValueError(f"{self.name} needs n >= {self.footprint}")
        gens = shafiei_generators(self.kind, n)
        rel = RelationElement(self.kind, n, field=field)
        for c, mono, gen in self.recipe:
            f = next(iter(parse_polynomial(mono, n).terms))
            k, s = gens.locate(parse_polynomial(gen, n))
            rel.add_term(f, k, c * s)
        return rel


def canonical_relations(kind: PolyKind, include_quadratic: bool = True) -> list[RelationTemplate]:
    kind = PolyKind.parse(kind)
    out = []
    for name, fp, recipe in _TEMPLATES[kind]:
        if name in QUADRATIC_TEMPLATES and not include_quadratic:
            continue
        out.append(RelationTemplate(name, fp, kind, tuple(recipe)))
    return out


def _normal_key(rel: RelationElement):
    """Key identifying ``rel`` up to a nonzero scalar."""
    items = rel.sorted_terms()
    lead = items[0][1]
    fld = rel.field
    inv = fld.inv(fld.convert(lead))
    p = getattr(fld, "p", None)
    return tuple((f.exps, k, (c * inv) % p if p else c * inv) for (f, k), c in items)


@lru_cache(maxsize=None)
def template_orbit(kind: PolyKind, n: int, names: tuple, field: Field = QQ) -> tuple:
    """All row/column/transpose images of the named templates, deduplicated up to scalars."""
    kind = PolyKind.parse(kind)
    temps = [t for t in canonical_relations(kind) if t.name in names and t.footprint <= n]
    seen, out = set(), []
    group = list(symmetry_group(n))
    for t in temps:
        base = t.instantiate(n, field)
        for s in group:
            img = base.apply_symmetry(s)
            key = _normal_key(img)
            if key not in seen:
                seen.add(key)
                out.append(img)
    return tuple(out)


# ---------------------------------------------------------------------------
# generation check


@dataclass
class MultidegreeReport:
    mu: Multidegree
    orbit: int
    relations: int
    generated: int
    complete: bool = True

    @property
    def deficiency(self) -> int:
        return self.relations - self.generated


@dataclass
class DegreeReport:
    degree: int
    relations: int = 0
    generated: int = 0
    complete: bool = True

    @property
    def deficiency(self) -> int:
        return self.relations - self.generated


@dataclass
class GenerationReport:
    kind: PolyKind
    n: int
    field: str
    include_quadratic: bool
    degrees: list = field(default_factory=list)
    blocks: list = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return all(d.complete for d in self.degrees)

    @property
    def total_deficiency(self) -> int:
        return sum(d.deficiency for d in self.degrees)

    @property
    def ok(self) -> bool:
        return self.complete and self.total_deficiency == 0

    def deficiency_by_degree(self) -> dict:
        return {d.degree: d.deficiency for d in self.degrees}

    def to_dict(self) -> dict:
        return {
            "kind": str(self.kind), "n": self.n, "field": self.field,
            "include_quadratic": self.include_quadratic, "complete": self.complete,
            "degrees": [{"degree": d.degree, "relations": d.relations, "generated": d.generated,
                         "deficiency": d.deficiency, "complete": d.complete} for d in self.degrees],
        }


def _mu_le(a: Multidegree, b: Multidegree) -> bool:
    return all(x <= y for x, y in zip(a.rows, b.rows)) and all(x <= y for x, y in zip(a.cols, b.cols))


def generation_check(kind: PolyKind, n: int, max_degree: int, field: Field | None = None,
                     include_quadratic: bool | None = None, max_terms: int = 20000,
                     min_degree: int = 3) -> GenerationReport:
    """Compare relation spaces with the span of monomial multiples of the template orbits.

    For every canonical multidegree of degree ``min_degree..max_degree``:
    ``relations`` is dim ker d1 there; ``generated`` is the rank of
    ``{m * rho}`` over the orbit of linear templates (and the quadratic
    one when ``include_quadratic``).  Counts are weighted by orbit size.
    """
    from ..exactalg import GF

    kind = PolyKind.parse(kind)
    field = field or GF(32003)
    if include_quadratic is None:
        include_quadratic = kind is PolyKind.PERM
    if max_degree < 3:
        raise ValueError("max_degree must be at least 3")
    names = tuple(t.name for t in canonical_relations(kind, include_quadratic))
    orbit = template_orbit(kind, n, names, field)
    orbit_md = [(r, r.multidegree()) for r in orbit]
    gens = shafiei_generators(kind, n)
    rep = GenerationReport(kind, n, field.tag, include_quadratic)
    for d in range(min_degree, max_degree + 1):
        dr = DegreeReport(d)
        for mu in canonical_multidegrees(n, d):
            terms = f1_terms(kind, n, mu)
            size = mu.orbit_size()
            if len(terms) > max_terms:
                dr.complete = False
                rep.blocks.append(MultidegreeReport(mu, size, 0, 0, complete=False))
                continue
            tidx = {t: c for c, t in enumerate(terms)}
            midx = {m: r for r, m in enumerate(monomials_of_multidegree(mu))}
            cols = [{midx[f * m]: v for m, v in gens[k].terms.items()} for f, k in terms]
            K = len(terms) - _field_rank(field, cols)
            vecs, seen = [], set()
            for rel, md in orbit_md:
                if not _mu_le(md, mu):
                    continue
                for m in monomials_of_multidegree(mu - md):
                    v = {tidx[(m * f, k)]: c for (f, k), c in rel.terms.items()}
                    key = frozenset(v.items())
                    if key not in seen:
                        seen.add(key)
                        vecs.append(v)
            G = _field_rank(field, vecs) if vecs else 0
            rep.blocks.append(MultidegreeReport(mu, size, K, G))
            dr.relations += size * K
            dr.generated += size * G
        rep.degrees.append(dr)
    return rep


def orbit_multidegrees(mu: Multidegree) -> set:
    """All multidegrees in the row/column/transpose orbit of ``mu``."""
    out = set()
    for r in set(itertools.permutations(mu.rows)):
        for c in set(itertools.permutations(mu.cols)):
            out.add(Multidegree(r, c))
            out.add(Multidegree(c, r))
    return out


def relation_dims(kind: PolyKind, n: int, degree: int, field: Field = QQ) -> dict:
    """``{mu: dim of relations of multidegree mu}`` for every ``mu`` of the given degree."""
    out = {}
    for mu in canonical_multidegrees(n, degree):
        dim = relation_space_dim(kind, n, mu, field)
        for m in orbit_multidegrees(mu):
            out[m] = dim
    return out


def parse_relation(text: str, kind: PolyKind, n: int, field: Field = QQ) -> RelationElement:
    """Parse ``c*f*(g) +/- ...`` where ``g`` must be a generator up to sign."""
    gens = shafiei_generators(PolyKind.parse(kind), n)
    s = text.replace(" ", "")
    if not s or s == "0":
        return RelationElement(kind, n, field=field)
    if s[0] not in "+-":
        s = "+" + s
    rel = RelationElement(kind, n, field=field)
    pos = 0
    term_re = re.compile(r"([+-])([^()+-]*?)\*?\(([^()]*)\)")
    while pos < len(s):
        m = term_re.match(s, pos)
        if not m:
            raise ValueError(f"cannot parse relation near {s[pos:]!r}")
        sign, outer, inner = m.groups()
        outer = outer.rstrip("*") or "1"
        coeff_poly = parse_polynomial(outer, n)
        if len(coeff_poly.terms) != 1:
            raise ValueError(f"coefficient {outer!r} must be a single term")
        f, c = next(iter(coeff_poly.terms.items()))
        k, gs = gens.locate(parse_polynomial(inner, n))
        rel.add_term(f, k, (-c if sign == "-" else c) * gs)
        pos = m.end()
    return rel


def parse_multidegree(text: str) -> Multidegree:
    """``"2,1,0;1,1,1"`` -> rows (2,1,0), columns (1,1,1)."""
    try:
        rows, cols = text.split(";")
        return Multidegree(tuple(int(x) for x in rows.split(",")), tuple(int(x) for x in cols.split(",")))
    except ValueError as exc:
        raise ValueError(f"multidegree must look like '2,1,0;1,1,1', got {text!r}") from exc
