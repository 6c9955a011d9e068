from fractions import Fraction
from itertools import combinations

import pytest

from conftest import random_models
from ratdiag.errors import ConcurrentTriple, HypothesisFailure
from ratdiag.model import GFModel, delta, delta3
from ratdiag.parfrac import (
    PairConstants,
    decompose,
    decompose_closed_form,
    decompose_recursive,
    triple_constants,
    verify_decomposition,
)
from ratdiag.series import expand


def test_triple_constants_three_line(three_line):
    assert triple_constants(three_line, 1, 2, 3) == (-1, 3, -1)
    q1, q2, q3 = (three_line.factor(i).poly() for i in (1, 2, 3))
    assert -1 * q3 + 3 * q1 - 1 * q2 == 1


def test_triple_constants_cyclic(three_line):
    a12, a23, a31 = triple_constants(three_line, 1, 2, 3)
    assert triple_constants(three_line, 2, 3, 1) == (a23, a31, a12)
    assert triple_constants(three_line, 3, 1, 2) == (a31, a12, a23)


def test_triple_constants_concurrent():
    model = GFModel.from_pairs([(1, 2), (2, 1), ("3/2", "3/2")])
    with pytest.raises(ConcurrentTriple):
        triple_constants(model, 1, 2, 3)


def test_decompose_fixtures(coin, three_line):
    assert dict(decompose(coin)) == {(1, 2): 1}
    consts = decompose(three_line)
    assert dict(consts) == {(1, 2): -1, (1, 3): -1, (2, 3): 3}
    assert consts[(3, 2)] == 3


def test_decompose_needs_two_factors():
    with pytest.raises(HypothesisFailure):
        decompose(GFModel.from_pairs([(1, 1)]))


def test_verify_decomposition_examples(coin, three_line):
    good = PairConstants({(1, 2): -1, (1, 3): -1, (2, 3): 3})
    assert verify_decomposition(three_line, good)
    bad = PairConstants({(1, 2): -1, (1, 3): -1, (2, 3): 2})
    assert not verify_decomposition(three_line, bad)
    assert verify_decomposition(coin, PairConstants({(1, 2): 1}))


def test_methods_agree_random():
    for model in random_models(31, 12, m_range=(2, 6)):
        rec = decompose_recursive(model)
        assert rec == decompose_closed_form(model)
        assert verify_decomposition(model, rec)


def test_decompose_random_m4():
    (model,) = random_models(2, 1, m_range=(4, 4))
    assert verify_decomposition(model, decompose(model))


def test_three_factor_determinant_ratio():
    for model in random_models(17, 10, m_range=(3, 3)):
        consts = decompose(model)
        d3 = delta3(model, 1, 2, 3)
        for i, j in ((1, 2), (2, 3), (3, 1)):
            assert consts[(i, j)] == delta(model, i, j) / d3


def test_series_consistency():
    for model in random_models(5, 3, m_range=(3, 4)):
        consts = decompose(model)
        full = expand(model, 15, 15)
        parts = {(i, j): expand(model.subset((i, j)), 15, 15)
                 for i, j in combinations(model.indices(), 2)}
        for x in range(16):
            for y in range(16):
                total = sum((consts[ij] * t[x, y] for ij, t in parts.items()), Fraction(0))
                assert total == full[x, y]
