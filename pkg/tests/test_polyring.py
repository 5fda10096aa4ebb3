import itertools

from hypothesis import given, strategies as st

from apolar_syzygy.apolar import PolyKind, shafiei_generators
from apolar_syzygy.polyring import (
    Monomial,
    Multidegree,
    Polynomial,
    SymmetryElement,
    apply_symmetry,
    canonical_multidegrees,
    degrees,
    monomial_from_permutation,
    monomials_of_multidegree,
    multidegrees_of_degree,
    parse_polynomial,
    permutation_of_monomial,
    symmetry_group,
)


def test_degrees_examples():
    m = Monomial.from_dict(2, {(1, 1): 2, (1, 2): 1, (2, 2): 1})
    assert degrees(m) == (4, Multidegree((3, 1), (2, 2)), [[2, 1], [0, 1]])
    assert degrees(Monomial.one(2)) == (0, Multidegree((0, 0), (0, 0)), [[0, 0], [0, 0]])
    d, md, mat = degrees(Monomial.var(3, 2, 3))
    assert (d, md) == (1, Multidegree((0, 1, 0), (0, 0, 1)))
    assert mat[1][2] == 1 and sum(map(sum, mat)) == 1


def test_multiply_examples():
    f = parse_polynomial("X[1,1]*X[2,2] - 3*X[1,2]", 2)
    assert f * Polynomial.constant(2) == f
    x11 = Polynomial.var(2, 1, 1)
    assert (x11 * x11).render() == "X[1,1]^2"
    a = parse_polynomial("X[1,1] + X[2,2]", 2)
    b = parse_polynomial("X[1,1] - X[2,2]", 2)
    assert a * b == parse_polynomial("X[1,1]^2 - X[2,2]^2", 2)


def test_symmetry_examples():
    f = parse_polynomial("X[1,1]*X[2,2] + X[1,2]*X[2,1]", 2)
    assert apply_symmetry(SymmetryElement.identity(2), f) == f
    t = SymmetryElement((1, 2), (1, 2), True)
    assert apply_symmetry(t, Polynomial.var(2, 1, 2)) == Polynomial.var(2, 2, 1)
    assert apply_symmetry(SymmetryElement((2, 1), (1, 2)), f) == f


def test_parse_render_roundtrip():
    for text in ["X[1,1]^2*X[2,3] - 2*X[3,3]", "1/2*X[1,2] + X[2,1]", "0"]:
        f = parse_polynomial(text, 3)
        assert parse_polynomial(f.render(), 3) == f


def test_symmetry_group_size():
    assert len(list(symmetry_group(3))) == 72
    assert len(list(symmetry_group(3, with_transpose=False))) == 36


def test_canonical_multidegrees_cover_orbits():
    for n, d in [(2, 3), (3, 3), (3, 4)]:
        canon = canonical_multidegrees(n, d)
        assert sum(mu.orbit_size() for mu in canon) == len(multidegrees_of_degree(n, d))


def test_monomials_of_multidegree_count():
    # 2x2 contingency tables with margins (2,1),(2,1)
    assert len(monomials_of_multidegree(Multidegree((2, 1), (2, 1)))) == 2
    assert len(monomials_of_multidegree(Multidegree((1, 1, 1), (1, 1, 1)))) == 6


exps = st.lists(st.integers(0, 2), min_size=9, max_size=9).map(lambda e: Monomial(3, tuple(e)))
perms3 = st.permutations([1, 2, 3]).map(tuple)
symmetries = st.builds(SymmetryElement, perms3, perms3, st.booleans())


@given(exps, exps)
def test_degrees_additive(a, b):
    da, ma, xa = degrees(a)
    db, mb, xb = degrees(b)
    d, m, x = degrees(a * b)
    assert d == da + db and m == ma + mb
    assert x == [[p + q for p, q in zip(r, s)] for r, s in zip(xa, xb)]


@given(symmetries, symmetries, st.lists(exps, min_size=1, max_size=4))
def test_symmetry_group_law(s1, s2, ms):
    f = Polynomial(3, {m: k + 1 for k, m in enumerate(ms)})
    assert apply_symmetry(s1, apply_symmetry(s2, f)) == apply_symmetry(s1.compose(s2), f)
    for m in ms:
        assert s1.apply_multidegree(m.multidegree()) == s1.apply_monomial(m).multidegree()


def test_generators_fixed_by_symmetries():
    for kind in PolyKind:
        for n in (2, 3):
            gens = shafiei_generators(kind, n)
            for s in symmetry_group(n):
                for g in gens:
                    gens.locate(apply_symmetry(s, g))  # raises if not a generator up to sign


@given(st.integers(1, 5).flatmap(lambda m: st.tuples(
    st.just(m), st.permutations(range(1, m + 1)),
    st.lists(st.integers(1, 5), min_size=m, max_size=m, unique=True),
    st.lists(st.integers(1, 5), min_size=m, max_size=m, unique=True))))
def test_permutation_roundtrip(data):
    m, perm, rows, cols = data
    rows, cols = sorted(rows), sorted(cols)
    mono = monomial_from_permutation(rows, cols, perm, 5)
    assert mono.multidegree().is_singular() and mono.degree == m
    assert permutation_of_monomial(mono) == (tuple(rows), tuple(cols), tuple(perm))


def test_all_singular_monomials_biject_with_permutations():
    mu = Multidegree((1, 1, 1, 0), (0, 1, 1, 1))
    monos = monomials_of_multidegree(mu)
    perms = {permutation_of_monomial(m)[2] for m in monos}
    assert perms == set(itertools.permutations(range(1, 4)))
