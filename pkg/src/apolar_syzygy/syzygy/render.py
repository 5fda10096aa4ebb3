"""Dots-and-boxes pictures of elements of F_1.

Each term ``c * f * (g)`` is drawn on the smallest block of rows and
columns used anywhere in the element.  Cell codes:

    .  2  3   coefficient monomial f (multiplicity; '.' for 1)
    o         variable of a monomial generator ('O' if squared)
    #         corner of a mixed generator; for the permanent, '+' and '-'
              mark the corners of its positive and negative monomial
"""
from __future__ import annotations

from ..apolar import PolyKind
from ..exactalg import PrimeField
from .relations import RelationElement

LEGEND = "legend: . coefficient  o/O monomial generator  # mixed corner  +/- signed mixed corner"


def _cells(rel: RelationElement, f, k, rows, cols):
    gens = rel.generators()
    g = gens[k]
    grid = {(i, j): ["", ""] for i in rows for j in cols}
    for (i, j), e in f.exponents.items():
        grid[(i, j)][1] = "." if e == 1 else str(e)
    if len(g.terms) == 1:
        m = next(iter(g.terms))
        for (i, j), e in m.exponents.items():
            grid[(i, j)][0] = "O" if e == 2 else "o"
    else:
        for m, c in g.terms.items():
            for (i, j) in m.exponents:
                if rel.kind is PolyKind.DET:
                    grid[(i, j)][0] = "#"
                else:
                    grid[(i, j)][0] = "+" if c > 0 else "-"
    return [["".join(grid[(i, j)]).ljust(2) for j in cols] for i in rows]


def render_dots_and_boxes(rel: RelationElement) -> str:
    if rel.is_zero():
        return "0\n"
    used_r, used_c = set(), set()
    gens = rel.generators()
    for (f, k) in rel.terms:
        for m in [f] + list(gens[k].terms):
            for (i, j) in m.exponents:
                used_r.add(i)
                used_c.add(j)
    rows, cols = sorted(used_r), sorted(used_c)
    blocks = []
    for (f, k), c in rel.sorted_terms():
        if isinstance(rel.field, PrimeField) and c > rel.field.p // 2:
            c = c - rel.field.p
        head = ("+" if c > 0 else "-") + ("" if abs(c) == 1 else str(abs(c)))
        body = ["[" + " ".join(row) + "]" for row in _cells(rel, f, k, rows, cols)]
        width = max(len(head), len(body[0]))
        blocks.append([head.ljust(width)] + [b.ljust(width) for b in body])
    header = "cols " + " ".join(map(str, cols)) + " / rows " + " ".join(map(str, rows))
    lines = ["  ".join(parts).rstrip() for parts in zip(*blocks)]
    return header + "\n" + "\n".join(lines) + "\n" + LEGEND + "\n"
