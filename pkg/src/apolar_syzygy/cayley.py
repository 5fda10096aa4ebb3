"""Cayley graph of S_m on transpositions, zero-magic labelings, commutator reduction.

Conventions.  A permutation is its one-line image tuple ``(s(1), ..., s(m))``.
The edge labelled by the transposition ``t`` joins ``s`` and ``t o s`` (the
values ``a, b`` of ``t = (a b)`` are swapped in the one-line form).  Under
the singular-monomial bijection ``s -> prod_t X[rows[t], cols[s(t)]]`` this
exchanges two columns, which is exactly a mixed generator.  A closed walk
``(start, t_1 ... t_k)`` visits ``v_r = t_r o v_{r-1}``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .apolar import PolyKind, shafiei_generators
from .polyring import Monomial, Multidegree, Polynomial

DEFAULT_MAX_M = 7


class NotClosedError(ValueError):
    pass


class StepBudgetExceeded(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# permutations


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def transposition(cls, m: int, a: int, b: int) -> "Permutation":
        im = list(range(1, m + 1))
        im[a - 1], im[b - 1] = b, a
        return cls(tuple(im))

    @property
    def m(self) -> int:
        return len(self.images)

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """``self o other`` (apply ``other`` first)."""
        return Permutation(tuple(self.images[x - 1] for x in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.m
        for k, x in enumerate(self.images):
            inv[x - 1] = k + 1
        return Permutation(tuple(inv))

    def swap_values(self, a: int, b: int) -> "Permutation":
        """``(a b) o self``."""
        return Permutation(tuple(b if x == a else a if x == b else x for x in self.images))

    def sign(self) -> int:
        s, seen = 1, [False] * self.m
        for k in range(self.m):
            if seen[k]:
                continue
            j, length = k, 0
            while not seen[j]:
                seen[j] = True
                j = self.images[j] - 1
                length += 1
            if length % 2 == 0:
                s = -s
        return s

    def is_identity(self) -> bool:
        return all(x == k + 1 for k, x in enumerate(self.images))

    def one_line(self) -> str:
        return "[" + " ".join(map(str, self.images)) + "]"


Transposition = tuple  # (a, b) with a < b


def _tr(a: int, b: int) -> Transposition:
    if a == b:
        raise ValueError("a transposition moves two distinct points")
    return (a, b) if a < b else (b, a)


def parse_word(text: str) -> list[Transposition]:
    """Parse ``"(1 2)(1 3)"`` (commas also accepted) into transpositions."""
    import re

    out = []
    for a, b in re.findall(r"\(\s*(\d+)\s*[, ]\s*(\d+)\s*\)", text):
        out.append(_tr(int(a), int(b)))
    rest = re.sub(r"\(\s*\d+\s*[, ]\s*\d+\s*\)", "", text).strip()
    if rest:
        raise ValueError(f"cannot parse word near {rest!r}")
    return out


def format_word(word) -> str:
    return "".join(f"({a} {b})" for a, b in word)


# ---------------------------------------------------------------------------
# the graph


@dataclass(frozen=True)
class CayleyGraph:
    m: int
    vertices: tuple  # Permutation, in lexicographic order of images
    index: dict = field(compare=False, repr=False)
    transpositions: tuple = field(repr=False)

    def neighbour(self, v: int, t: Transposition) -> int:
        return self.index[self.vertices[v].swap_values(*t)]

    def edge(self, u: int, v: int) -> tuple[int, int]:
        return (u, v) if u < v else (v, u)

    def edges(self):
        """Canonical edges ``(lo, hi, transposition)`` in sorted order."""
        out = []
        for u in range(len(self.vertices)):
            for t in self.transpositions:
                w = self.neighbour(u, t)
                if u < w:
                    out.append((u, w, t))
        out.sort()
        return out

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return factorial(self.m) * comb(self.m, 2) // 2

    def is_bipartite_by_parity(self) -> bool:
        return all(self.vertices[u].sign() != self.vertices[w].sign() for u, w, _ in self.edges())

    def is_connected(self) -> bool:
        seen, stack = {0}, [0]
        while stack:
            u = stack.pop()
            for t in self.transpositions:
                w = self.neighbour(u, t)
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.num_vertices

    def to_dot(self) -> str:
        if self.m > 4:
            raise ValueError("DOT export is limited to m <= 4")
        lines = [f"graph S{self.m} {{"]
        for v in self.vertices:
            lines.append(f'  "{v.one_line()}";')
        for u, w, (a, b) in self.edges():
            lines.append(f'  "{self.vertices[u].one_line()}" -- "{self.vertices[w].one_line()}" [label="({a} {b})"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_graph(m: int, max_m: int = DEFAULT_MAX_M) -> CayleyGraph:
    if not 2 <= m <= max_m:
        raise ValueError(f"m must lie in [2, {max_m}]")
    verts = tuple(Permutation(p) for p in itertools.permutations(range(1, m + 1)))
    index = {v: k for k, v in enumerate(verts)}
    trs = tuple(itertools.combinations(range(1, m + 1), 2))
    return CayleyGraph(m, verts, index, trs)


# ---------------------------------------------------------------------------
# labelings


@dataclass
class EdgeLabeling:
    """Sparse labels on the canonical edges ``(lo, hi)`` of a graph."""

    m: int
    labels: dict = field(default_factory=dict)

    def add(self, edge, value):
        v = self.labels.get(edge, 0) + value
        if v:
            self.labels[edge] = v
        else:
            self.labels.pop(edge, None)

    def __add__(self, other: "EdgeLabeling") -> "EdgeLabeling":
        out = EdgeLabeling(self.m, dict(self.labels))
        for e, v in other.labels.items():
            out.add(e, v)
        return out

    def scale(self, c) -> "EdgeLabeling":
        return EdgeLabeling(self.m, {e: c * v for e, v in self.labels.items()} if c else {})

    def __sub__(self, other):
        return self + other.scale(-1)

    def __eq__(self, other):
        return isinstance(other, EdgeLabeling) and self.m == other.m and self.labels == other.labels

    def is_zero(self) -> bool:
        return not self.labels


@dataclass(frozen=True)
class CycleWord:
    start: Permutation
    word: tuple

    @classmethod
    def parse(cls, text: str, m: int, start: Permutation | None = None) -> "CycleWord":
        return cls(start or Permutation.identity(m), tuple(parse_word(text)))

    @property
    def m(self) -> int:
        return self.start.m

    def vertices(self) -> list[Permutation]:
        out = [self.start]
        for t in self.word:
            out.append(out[-1].swap_values(*t))
        return out

    def is_closed(self) -> bool:
        return self.vertices()[-1] == self.start

    def __str__(self):
        return f"{self.start.one_line()} {format_word(self.word)}"


def cycle_labeling(w: CycleWord, g: CayleyGraph | None = None) -> EdgeLabeling:
    """Alternating +1/-1 along the walk, accumulating on repeated edges."""
    g = g or _graph_cache(w.m)
    vs = w.vertices()
    if vs[-1] != w.start:
        raise NotClosedError(f"word {format_word(w.word)} is not closed")
    out = EdgeLabeling(w.m)
    for r in range(len(w.word)):
        u, v = g.index[vs[r]], g.index[vs[r + 1]]
        out.add(g.edge(u, v), 1 if r % 2 == 0 else -1)
    return out


_GRAPHS: dict = {}


def _graph_cache(m: int) -> CayleyGraph:
    if m not in _GRAPHS:
        _GRAPHS[m] = build_graph(m, max(m, DEFAULT_MAX_M))
    return _GRAPHS[m]


def is_zero_magic(l: EdgeLabeling) -> bool:
    sums: dict = {}
    for (u, v), x in l.labels.items():
        sums[u] = sums.get(u, 0) + x
        sums[v] = sums.get(v, 0) + x
    return not any(sums.values())


def spanning_tree(g: CayleyGraph) -> dict:
    """BFS tree from the identity: ``parent[v] = (u, transposition)``."""
    root = g.index[Permutation.identity(g.m)]
    parent = {root: None}
    queue = [root]
    head = 0
    while head < len(queue):
        u = queue[head]
        head += 1
        for t in g.transpositions:
            w = g.neighbour(u, t)
            if w not in parent:
                parent[w] = (u, t)
                queue.append(w)
    return parent


def _up_path(parent, v) -> list:
    """Vertices from ``v`` up to the root."""
    out = [v]
    while parent[v] is not None:
        v = parent[v][0]
        out.append(v)
    return out


def fundamental_cycles(g: CayleyGraph) -> list[CycleWord]:
    """One closed walk per non-tree edge, starting with that edge."""
    parent = spanning_tree(g)
    tree = {g.edge(v, p[0]) for v, p in parent.items() if p is not None}
    out = []
    for u, w, t in g.edges():
        if (u, w) in tree:
            continue
        pu, pw = _up_path(parent, u), _up_path(parent, w)
        while len(pu) > 1 and len(pw) > 1 and pu[-2] == pw[-2]:
            pu.pop()
            pw.pop()
        # pu[-1] == pw[-1] is the lowest common ancestor
        up = tuple(parent[x][1] for x in pw[:-1])
        down = tuple(parent[x][1] for x in reversed(pu[:-1]))
        out.append(CycleWord(g.vertices[u], (t,) + up + down))
    return out


def zero_magic_basis(g: CayleyGraph) -> list[EdgeLabeling]:
    return [cycle_labeling(c, g) for c in fundamental_cycles(g)]


def labelings_rank(labelings, field=None) -> int:
    from .exactalg import QQ, rank_of_rows

    return rank_of_rows(field or QQ, [dict(l.labels) for l in labelings])


# ---------------------------------------------------------------------------
# commutators and the reduction


def _disjoint(a, b) -> bool:
    return not set(a) & set(b)


def _conj(a, b) -> Transposition:
    """The transposition ``a b a`` (``b`` conjugated by ``a``)."""
    def f(x):
        return a[1] if x == a[0] else a[0] if x == a[1] else x
    return _tr(f(b[0]), f(b[1]))


def is_commutator_word(word) -> bool:
    """Shapes ``a b a [aba]`` or ``a b [bab] b`` with ``a, b`` distinct, not disjoint."""
    if len(word) != 4:
        return False
    a, b, c, d = word
    if a == b or _disjoint(a, b):
        return False
    return (c == a and d == _conj(a, b)) or (c == _conj(b, a) and d == b)


def _as_commutator(w: CycleWord, g: CayleyGraph) -> tuple[int, CycleWord]:
    """Rotate/reverse a 4-cycle into commutator shape; return the sign relating them."""
    vs = w.vertices()[:4]
    target = cycle_labeling(w, g)
    for k in range(4):
        for rev in (False, True):
            if not rev:
                order = [vs[(k + t) % 4] for t in range(5)]
            else:
                order = [vs[(k - t) % 4] for t in range(5)]
            word = tuple(_between(order[t], order[t + 1]) for t in range(4))
            if not is_commutator_word(word):
                continue
            cand = CycleWord(order[0], word)
            lab = cycle_labeling(cand, g)
            if lab == target:
                return 1, cand
            if lab == target.scale(-1):
                return -1, cand
    raise ValueError(f"{w} is not a commutator square")


def _between(u: Permutation, v: Permutation) -> Transposition:
    diff = [x for x, y in zip(u.images, v.images) if x != y]
    if len(diff) != 2:
        raise ValueError("vertices are not adjacent")
    return _tr(*diff)


def _disjoint_square(start: Permutation, a, b, g: CayleyGraph) -> list[tuple[int, CycleWord]]:
    """Write the labeling of the square ``a b a b`` at ``start`` as five commutator labelings."""
    c = _tr(a[1], b[0])  # links the two disjoint transpositions
    o0 = start
    o1 = o0.swap_values(*a)
    o2 = o1.swap_values(*b)
    o3 = o0.swap_values(*b)
    u0 = o0.swap_values(*c)
    u1 = u0.swap_values(*a)
    u3 = o3.swap_values(*c)
    u2 = u3.swap_values(*a)
    squares = [(o0, o1, u1, u0), (o1, o2, u2, u1), (o3, o2, u2, u3), (o0, o3, u3, u0), (u0, u1, u2, u3)]
    comms = []
    for sq in squares:
        word = tuple(_between(sq[t], sq[(t + 1) % 4]) for t in range(4))
        comms.append(_as_commutator(CycleWord(sq[0], word), g)[1])
    target = cycle_labeling(CycleWord(start, (a, b, a, b)), g)
    labs = [cycle_labeling(c_, g) for c_ in comms]
    for signs in itertools.product((1, -1), repeat=5):
        acc = EdgeLabeling(g.m)
        for s, l in zip(signs, labs):
            acc = acc + l.scale(s)
        if acc == target:
            return list(zip(signs, comms))
    raise AssertionError("no signed combination of the inner squares matches")


def commutator_reduce(w: CycleWord, max_steps: int = 100_000) -> list[tuple[int, CycleWord]]:
    """Certificate: commutator walks and coefficients summing to ``cycle_labeling(w)``.

    Pushes the leftmost k-moving transposition to the right for k = m..3,
    recording one commutator square per rewrite; at k = 2 what is left is a
    back-and-forth walk on a single edge, whose labeling is zero.
    """
    g = _graph_cache(w.m)
    if not w.is_closed():
        raise NotClosedError(f"word {format_word(w.word)} is not closed")
    if is_commutator_word(w.word):
        return [(1, w)]
    terms: list = []
    word = list(w.word)
    steps = 0

    def vertex_before(r):
        v = w.start
        for t in word[:r]:
            v = v.swap_values(*t)
        return v

    for k in range(w.m, 2, -1):
        while True:
            r = next((idx for idx, t in enumerate(word) if k in t), None)
            if r is None:
                break
            if r == len(word) - 1:
                raise AssertionError("closed word ends with its only k-moving letter")
            steps += 1
            if steps > max_steps:
                raise StepBudgetExceeded(f"more than {max_steps} rewrite steps")
            a, b = word[r], word[r + 1]
            sign = 1 if r % 2 == 0 else -1
            if a == b:
                del word[r:r + 2]
                continue
            v = vertex_before(r)
            if _disjoint(a, b):
                for s, c in _disjoint_square(v, a, b, g):
                    terms.append((sign * s, c))
                word[r:r + 2] = [b, a]
                continue
            if k not in b:
                # (i k)(i j) -> (i j)(j k), square a b [bab] b
                new = [b, _conj(b, a)]
            else:
                # (i k)(j k) -> (i j)(i k), square a b a [aba]
                new = [_conj(a, b), a]
            sq = CycleWord(v, (a, b, new[1], new[0]))
            s, c = _as_commutator(sq, g)
            terms.append((sign * s, c))
            word[r:r + 2] = new
    # only (1 2) letters remain: a back-and-forth walk, zero labeling
    return _merge(terms)


def _merge(terms):
    acc: dict = {}
    order = []
    for c, w in terms:
        key = (w.start, w.word)
        if key not in acc:
            order.append(key)
            acc[key] = 0
        acc[key] += c
    return [(acc[k], CycleWord(*k)) for k in order if acc[k]]


def certificate_lines(terms) -> list[str]:
    return [f"{c} ; {w.start.one_line()} ; {format_word(w.word)}" for c, w in terms]


def check_certificate(w: CycleWord, terms) -> bool:
    """Independent check: every term is a commutator and labelings add up."""
    g = _graph_cache(w.m)
    acc = EdgeLabeling(w.m)
    for c, cw in terms:
        if not is_commutator_word(cw.word):
            return False
        acc = acc + cycle_labeling(cw, g).scale(c)
    return acc == cycle_labeling(w, g)


def random_closed_word(m: int, length: int, rng) -> CycleWord:
    """Random walk of ``length - k`` steps closed by a shortest return path."""
    trs = list(itertools.combinations(range(1, m + 1), 2))
    start = Permutation(tuple(rng.sample(range(1, m + 1), m)))
    word = []
    v = start
    for _ in range(max(0, length - (m - 1))):
        t = rng.choice(trs)
        word.append(t)
        v = v.swap_values(*t)
    # close with transpositions sorting v back to start, one cycle at a time
    while v != start:
        k = next(k for k in range(m) if v.images[k] != start.images[k])
        t = _tr(v.images[k], start.images[k])
        word.append(t)
        v = v.swap_values(*t)
    return CycleWord(start, tuple(word))


# ---------------------------------------------------------------------------
# labelings <-> relations


def permutation_monomial(mu: Multidegree, perm: Permutation) -> Monomial:
    rows = [i + 1 for i, x in enumerate(mu.rows) if x]
    cols = [j + 1 for j, x in enumerate(mu.cols) if x]
    return Monomial.from_variables(mu.n, [(rows[t], cols[perm.images[t] - 1]) for t in range(perm.m)])


def labeling_to_relation(l: EdgeLabeling, mu: Multidegree, kind: PolyKind):
    """Relation of singular multidegree ``mu`` read off the edge labels."""
    from .syzygy.relations import RelationElement

    kind = PolyKind.parse(kind)
    if not mu.is_singular():
        raise ValueError("labelings model relations of singular multidegree only")
    m = mu.degree
    if m != l.m:
        raise ValueError("multidegree degree differs from the graph's m")
    if not is_zero_magic(l):
        raise ValueError("labeling is not zero-magic")
    n = mu.n
    g = _graph_cache(m)
    gens = shafiei_generators(kind, n)
    rel = RelationElement(kind, n)
    for (u, v), lab in sorted(l.labels.items()):
        pu, pv = g.vertices[u], g.vertices[v]
        mu_, mv = permutation_monomial(mu, pu), permutation_monomial(mu, pv)
        common = tuple(min(x, y) for x, y in zip(mu_.exps, mv.exps))
        f = Monomial(n, common)
        qu, qv = mu_ / f, mv / f
        if kind is PolyKind.DET:
            quad = Polynomial(n, {qu: 1, qv: 1})
        else:
            even, odd = (qu, qv) if pu.sign() == 1 else (qv, qu)
            quad = Polynomial(n, {even: 1, odd: -1})
        k, s = gens.locate(quad)
        rel.add_term(f, k, Fraction(lab) * s)
    return rel
