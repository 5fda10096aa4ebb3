from math import comb

import pytest
from hypothesis import given, strategies as st

from apolar_syzygy.apolar import PolyKind, shafiei_generators
from apolar_syzygy.exactalg import QQ, SparseMatrix, rank
from apolar_syzygy.polyring import Monomial, Multidegree, Polynomial, monomials_of_degree, symmetry_group
from apolar_syzygy.syzygy import (
    canonical_relations,
    f1_terms,
    generation_check,
    linear_relation_table,
    parse_multidegree,
    parse_relation,
    relation_dims,
    relations_multidegree,
    template_orbit,
)
from apolar_syzygy.syzygy.relations import weighted_linear_relations

DET, PERM = PolyKind.DET, PolyKind.PERM


def brute_f1_terms(kind, n, mu):
    """Pairs (monomial, generator) of multidegree mu, from all monomials of the right degree."""
    gens = shafiei_generators(kind, n)
    out = []
    for k, g in enumerate(gens):
        gm = next(iter(g.terms)).multidegree()
        for f in monomials_of_degree(n, mu.degree - 2):
            if f.multidegree() + gm == mu:
                out.append((f, k))
    return out


def brute_relation_dim(kind, n, mu):
    """dim ker d1 at mu by multiplying polynomials out, with no evaluation matrix."""
    gens = shafiei_generators(kind, n)
    terms = brute_f1_terms(kind, n, mu)
    images = [Polynomial.monomial(f) * gens[k] for f, k in terms]
    monos = sorted({m for p in images for m in p.terms}, key=Monomial.sort_key)
    idx = {m: r for r, m in enumerate(monos)}
    trip = [(idx[m], c, v) for c, p in enumerate(images) for m, v in p.terms.items()]
    return len(terms) - rank(SparseMatrix.from_triples(QQ, len(monos), len(terms), trip))


def test_f1_terms_examples():
    assert len(f1_terms(DET, 2, Multidegree((3, 0), (3, 0)))) == 1
    f, k = f1_terms(DET, 2, Multidegree((3, 0), (3, 0)))[0]
    assert f == Monomial.var(2, 1, 1) and shafiei_generators(DET, 2)[k].render() == "X[1,1]^2"
    assert len(f1_terms(DET, 2, Multidegree((2, 1), (2, 1)))) == 4
    # a single mixed generator has multidegree ((1,1),(1,1)); nothing else fits
    assert len(f1_terms(DET, 2, Multidegree((1, 1), (1, 1)))) == 1


@pytest.mark.parametrize("kind", list(PolyKind))
@pytest.mark.parametrize("rows,cols", [((2, 1), (2, 1)), ((3, 1), (2, 2)), ((2, 1, 1), (1, 1, 2)),
                                       ((1, 1, 1), (1, 1, 1)), ((2, 2, 0), (1, 2, 1))])
def test_f1_terms_and_dims_against_brute_force(kind, rows, cols):
    mu = Multidegree(rows, cols)
    n = len(rows)
    assert sorted(f1_terms(kind, n, mu), key=lambda t: (t[1], t[0].exps)) == \
        sorted(brute_f1_terms(kind, n, mu), key=lambda t: (t[1], t[0].exps))
    basis = relations_multidegree(kind, n, mu)
    assert len(basis) == brute_relation_dim(kind, n, mu)
    assert all(r.is_relation() for r in basis)


def test_relations_multidegree_examples():
    assert len(relations_multidegree(DET, 3, Multidegree((3, 0, 0), (2, 1, 0)))) == 1
    assert len(relations_multidegree(DET, 3, Multidegree((2, 1, 0), (1, 1, 1)))) == 3
    assert len(relations_multidegree(DET, 3, Multidegree((1, 1, 1), (1, 1, 1)))) == 4


def test_linear_relation_table():
    assert linear_relation_table() == [[0, 1, 2], [1, 2, 3], [2, 3, 4]]
    for n in range(2, 7):
        assert weighted_linear_relations(n) == 4 * comb(n + 1, 3) * comb(n + 2, 3)
        assert weighted_linear_relations(n) == n * n * (n + 1) ** 2 * (n - 1) * (n + 2) // 9


def test_relation_dims_total():
    assert sum(relation_dims(DET, 3, 3).values()) == 160
    assert sum(relation_dims(PERM, 3, 3).values()) == 160


@pytest.mark.parametrize("kind", list(PolyKind))
def test_templates_are_relations(kind):
    names = {t.name for t in canonical_relations(kind)}
    assert {"rho1", "rho2", "rho3", "rho4", "rho5", "rhoS"} <= names
    assert ("rhoQ" in names) == (kind is PERM)
    for t in canonical_relations(kind):
        assert t.footprint in (2, 3, 4)
        for n in range(t.footprint, 5):
            r = t.instantiate(n)
            assert r.is_relation() and not r.is_zero()
        with pytest.raises(ValueError):
            t.instantiate(t.footprint - 1)


def test_orbit_is_closed_under_symmetry():
    orbit = template_orbit(DET, 2, tuple(t.name for t in canonical_relations(DET)), QQ)
    keys = {r for r in orbit} | {-r for r in orbit}
    for s in symmetry_group(2):
        for r in orbit:
            assert r.apply_symmetry(s) in keys


def test_parse_relation_roundtrip():
    for kind in PolyKind:
        for t in canonical_relations(kind):
            r = t.instantiate(4)
            assert parse_relation(r.render(), kind, 4) == r
    with pytest.raises(ValueError):
        parse_relation("X[1,1]", DET, 2)
    assert parse_multidegree("2,1;1,2") == Multidegree((2, 1), (1, 2))


@given(st.sampled_from(list(PolyKind)), st.integers(0, 10**6))
def test_relation_d1_linear(kind, seed):
    rels = [t.instantiate(3) for t in canonical_relations(kind) if t.footprint <= 3]
    a, b = rels[seed % len(rels)], rels[(seed // 7) % len(rels)]
    c = seed % 5 - 2
    m = Monomial.var(3, seed % 3 + 1, seed // 3 % 3 + 1)
    assert (a.times(m) + b.scale(c)).d1() == a.times(m).d1() + b.d1().scale(c)


def test_generation_det_small():
    rep = generation_check(DET, 2, 6)
    assert rep.complete and rep.deficiency_by_degree() == {3: 0, 4: 0, 5: 0, 6: 0}


def test_generation_perm_without_quadratic_n3():
    rep = generation_check(PERM, 3, 5, include_quadratic=False)
    assert rep.ok


def test_generation_incomplete_flag():
    rep = generation_check(DET, 3, 4, max_terms=10)
    assert not rep.complete and not rep.ok
