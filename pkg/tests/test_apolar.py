import itertools

import pytest
from hypothesis import given, strategies as st

from apolar_syzygy.apolar import (
    Det,
    MinorBasisElement,
    Perm,
    PolyKind,
    apply_generator_to_basis,
    build_polynomial,
    contract,
    minor_basis,
    quotient_dim,
    shafiei_generators,
    variable_action,
    verify_annihilation,
)
from apolar_syzygy.exactalg import GF
from apolar_syzygy.polyring import Monomial, Polynomial, parse_polynomial


def P(text, n):
    return parse_polynomial(text, n)


def test_build_polynomial_examples():
    assert build_polynomial(Det, 2) == P("X[1,1]*X[2,2] - X[1,2]*X[2,1]", 2)
    assert build_polynomial(Perm, 2) == P("X[1,1]*X[2,2] + X[1,2]*X[2,1]", 2)
    d3 = build_polynomial(Det, 3)
    assert len(d3.terms) == 6 and sum(1 for c in d3.terms.values() if c < 0) == 3
    with pytest.raises(ValueError):
        build_polynomial(Det, 0)


def test_contract_examples():
    d2 = build_polynomial(Det, 2)
    assert contract(P("X[1,1]", 2), d2) == P("X[2,2]", 2)
    assert contract(P("X[1,2]", 2), d2) == P("-X[2,1]", 2)
    assert contract(P("X[1,1]^2", 2), d2).is_zero()


def test_generator_counts():
    for kind in PolyKind:
        for n in (2, 3, 4):
            assert len(shafiei_generators(kind, n)) == (n * (n + 1) // 2) ** 2
    gens = shafiei_generators(Perm, 2)
    k, s = gens.locate(P("X[1,1]*X[2,2] - X[1,2]*X[2,1]", 2))
    assert s in (1, -1)
    assert len(gens[k].terms) == 2


def test_verify_annihilation_examples():
    r = verify_annihilation(Det, 2)
    assert r.ok and r.span_dimension == 9 and r.expected_dimension == 9
    r = verify_annihilation(Perm, 3)
    assert r.ok and r.span_dimension == 36
    gens = list(shafiei_generators(Det, 2))
    gens[-1] = P("X[1,1]*X[2,2]", 2)
    assert not verify_annihilation(Det, 2, generators=gens).annihilates


def test_quotient_dim_examples():
    assert quotient_dim(Det, 3, 2) == 9
    assert quotient_dim(Perm, 4, 0) == 1
    assert quotient_dim(Det, 3, 4) == 0
    for kind in PolyKind:
        for d in range(4):
            assert quotient_dim(kind, 3, d, verified=True) == [1, 9, 9, 1][d]


def test_variable_action_examples():
    e = MinorBasisElement(Det, 2, (), ())
    assert variable_action(e, 1, 2) == (-1, MinorBasisElement(Det, 2, (1,), (2,)))
    e3 = MinorBasisElement(Det, 3, (), ())
    s1, b1 = variable_action(e3, 1, 1)
    s2, b2 = variable_action(b1, 2, 3)
    assert s1 * s2 == -1
    assert contract(P("X[2,3]", 3), contract(P("X[1,1]", 3), build_polynomial(Det, 3))) == P("-X[3,2]", 3)
    for b in minor_basis(Perm, 3, 1):
        for i, j in itertools.product(range(1, 4), repeat=2):
            s, out = variable_action(b, i, j)
            assert s == (0 if out is None else 1)
    with pytest.raises(IndexError):
        variable_action(e, 3, 1)


@pytest.mark.parametrize("kind", list(PolyKind))
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_minor_basis_matches_symbolic_contraction(kind, n):
    """Every ordered chain of distinct-row/column variables agrees with direct contraction."""
    f = build_polynomial(kind, n)
    cells = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    for d in range(n + 1):
        for chain in itertools.permutations(cells, d) if n <= 3 else itertools.combinations(cells, d):
            sign, b = 1, MinorBasisElement(kind, n, (), ())
            for i, j in chain:
                s, b = variable_action(b, i, j)
                if b is None:
                    break
                sign *= s
            g = contract(Polynomial.monomial(Monomial.from_variables(n, chain)), f)
            if b is None:
                assert g.is_zero()
            else:
                assert g == b.polynomial().scale(sign)


cells4 = st.tuples(st.integers(1, 4), st.integers(1, 4))


@given(st.sampled_from(list(PolyKind)), st.lists(cells4, max_size=2, unique=True), cells4, cells4)
def test_action_commutes(kind, prefix, a, b):
    base = MinorBasisElement(kind, 4, (), ())
    for i, j in prefix:
        _, nxt = variable_action(base, i, j)
        if nxt is None:
            return
        base = nxt
    s1, x = variable_action(base, *a)
    s2, y = variable_action(base, *b)
    if x is None or y is None:
        return
    t1, xy = variable_action(x, *b)
    t2, yx = variable_action(y, *a)
    assert xy == yx
    if xy is not None:
        assert s1 * t1 == s2 * t2


@pytest.mark.parametrize("kind", list(PolyKind))
@pytest.mark.parametrize("n", [2, 3, 4])
def test_generators_annihilate_minor_basis(kind, n):
    for g in shafiei_generators(kind, n):
        for d in range(n + 1):
            for b in minor_basis(kind, n, d):
                assert apply_generator_to_basis(g, b) == {}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_char2_structure_constants_coincide(n):
    F = GF(2)
    for d in range(n):
        for bd, bp in zip(minor_basis(Det, n, d), minor_basis(Perm, n, d)):
            for i, j in itertools.product(range(1, n + 1), repeat=2):
                sd, od = variable_action(bd, i, j)
                sp, op = variable_action(bp, i, j)
                assert F.convert(sd) == F.convert(sp)
                assert (od is None) == (op is None)
                if od is not None:
                    assert (od.R, od.C) == (op.R, op.C)
    assert build_polynomial(Det, n, F) == build_polynomial(Perm, n, F)
