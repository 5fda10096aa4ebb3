import itertools
from math import comb

import pytest
from hypothesis import given, strategies as st

from apolar_syzygy.exactalg import QQ
from apolar_syzygy.polyring import Multidegree
from apolar_syzygy.repcheck import (
    CHARACTER_NOTE,
    HookShape,
    conjectured_linear_strand,
    conjectured_linear_strand_hooks,
    hook_dim,
    narayana,
    predicted_weight_dim,
    weight_multiplicity_hook,
    weight_refined_check,
    weight_vectors,
)
from apolar_syzygy.syzygy import multigraded_betti, relation_dims


def brute_ssyt(partition, w):
    """Fill the diagram with the multiset given by w in every way; keep semistandard fillings."""
    cells = [(r, c) for r, length in enumerate(partition) for c in range(length)]
    letters = [k for k, x in enumerate(w) for _ in range(x)]
    count = 0
    for filling in set(itertools.permutations(letters)):
        T = dict(zip(cells, filling))
        if all(T[(r, c)] <= T[(r, c + 1)] for (r, c) in cells if (r, c + 1) in T) and \
                all(T[(r, c)] < T[(r + 1, c)] for (r, c) in cells if (r + 1, c) in T):
            count += 1
    return count


def test_hook_dim_examples():
    assert hook_dim(HookShape(2, 2), 3) == 6
    for n in range(1, 7):
        assert hook_dim(HookShape(3, 2), n) == 2 * comb(n + 1, 3)
    assert hook_dim(HookShape(4, 2), 2) == 0


def test_narayana_examples():
    assert narayana(4, 2) == 6 and narayana(6, 3) == 50
    assert all(narayana(r, 1) == 1 for r in range(1, 9))


def test_linear_strand_examples():
    for n in range(1, 6):
        assert conjectured_linear_strand(1, n) == comb(n + 1, 2) ** 2
    assert conjectured_linear_strand(4, 3) == 288
    assert conjectured_linear_strand(5, 3) == 100


def test_weight_multiplicity_examples():
    assert weight_multiplicity_hook(HookShape(2, 2), (2, 0, 0)) == 1
    assert weight_multiplicity_hook(HookShape(3, 2), (1, 1, 1), 3) == 2
    for w in weight_vectors(3, 4):
        assert weight_multiplicity_hook(HookShape(4, 4), w) == 1


@pytest.mark.parametrize("c", range(1, 6))
@pytest.mark.parametrize("n", range(1, 5))
def test_hook_dim_is_sum_of_weights(c, n):
    for d in range(1, c + 1):
        shape = HookShape(c, d)
        assert hook_dim(shape, n) == sum(weight_multiplicity_hook(shape, w, n) for w in weight_vectors(n, c))


@given(st.integers(1, 5).flatmap(lambda c: st.tuples(st.integers(1, c), st.lists(st.integers(0, 3), min_size=3,
                                                                                  max_size=3).filter(
    lambda w: sum(w) == c), st.just(c))))
def test_weight_multiplicity_matches_brute_force(data):
    d, w, c = data
    shape = HookShape(c, d)
    assert weight_multiplicity_hook(shape, w) == brute_ssyt(shape.partition, w)


def test_narayana_and_hook_forms_agree():
    for r in range(1, 9):
        for n in range(1, 9):
            assert conjectured_linear_strand(r, n) == conjectured_linear_strand_hooks(r, n)


def test_weight_check_examples():
    mu = Multidegree((2, 1, 0), (2, 1, 0))
    assert predicted_weight_dim("relations", mu) == 2
    assert predicted_weight_dim("generators", Multidegree((2, 0, 0), (2, 0, 0))) == 1
    rep = weight_refined_check("relations", 3, relation_dims("det", 3, 3, QQ))
    assert rep.residuals[mu] == 0 and rep.ok
    rep = weight_refined_check("secondSyzygies", 3, multigraded_betti("det", 3, 3, 4, QQ))
    assert rep.ok and rep.total_computed == 315
    assert rep.to_dict()["note"] == CHARACTER_NOTE


def test_weight_check_partial_and_mismatch():
    computed = relation_dims("det", 3, 3, QQ)
    rep = weight_refined_check("relations", 3, dict(list(computed.items())[:5]))
    assert rep.partial and not rep.ok and rep.to_dict()["verdict"] == "partial"
    bad = dict(computed)
    bad[Multidegree((2, 1, 0), (2, 1, 0))] += 1
    rep = weight_refined_check("relations", 3, bad)
    assert rep.max_abs_residual == 1 and rep.to_dict()["verdict"] == "inconsistent"
    with pytest.raises(ValueError):
        weight_refined_check("thirdSyzygies", 3, {})
