import random
from fractions import Fraction
from math import gcd

import pytest

from conftest import random_models
from ratdiag.errors import HypothesisFailure, ParallelLines, VertexNotOnLine, ZeroDirection
from ratdiag.fan import (
    BoundaryRay,
    DirVector,
    Interior,
    OnAxis,
    Point2Q,
    argmax_oracle,
    build_fan,
    build_polygon,
    classify,
    compare_objective,
    cross,
    eta,
    intersect,
    saddle_point,
)
from ratdiag.model import GFModel

F = Fraction


def pts(*pairs):
    return tuple(Point2Q(F(z), F(w)) for z, w in pairs)


def gens(cone):
    return tuple((g.p, g.q) for g in cone.generators)


def test_intersect(coin, three_line):
    assert intersect(coin, 1, 2) == Point2Q(1, 1)
    assert intersect(three_line, 2, 3) == Point2Q(F(1, 3), F(1, 3))
    assert intersect(three_line, 1, 2) == Point2Q(0, 1)
    with pytest.raises(ParallelLines):
        intersect(GFModel.from_pairs([(1, 1), (2, 2)]), 1, 2)


def test_intersect_on_both_lines():
    for model in random_models(5, 5, m_range=(2, 5)):
        for i in model.indices():
            for j in model.indices():
                if i != j:
                    v = intersect(model, i, j)
                    assert model.factor(i)(v.z, v.w) == 0 == model.factor(j)(v.z, v.w)


def test_polygon_coin(coin):
    poly = build_polygon(coin)
    assert poly.vertices == pts((0, 0), ("3/2", 0), (1, 1), (0, "3/2"))
    assert poly.edge_lines == (2, 1)


def test_polygon_three_line(three_line):
    poly = build_polygon(three_line)
    assert poly.vertices == pts((0, 0), ("1/2", 0), ("1/3", "1/3"), (0, "1/2"))
    assert poly.edge_lines == (2, 3)


def test_polygon_single_factor():
    poly = build_polygon(GFModel.from_pairs([(1, 1)]))
    assert poly.vertices == pts((0, 0), (1, 0), (0, 1))
    assert poly.edge_lines == (1,)


def test_polygon_shared_intercept():
    # both lines meet the z-axis at z = 1; line 2 touches M only at that corner
    poly = build_polygon(GFModel.from_pairs([(1, 1), (1, 2)]))
    assert poly.vertices == pts((0, 0), (1, 0), (0, "1/2"))
    assert poly.edge_lines == (2,)


def test_polygon_requires_positive(counterexample):
    with pytest.raises(HypothesisFailure):
        build_polygon(counterexample)


def test_polygon_invariants_random():
    for model in random_models(21, 30, m_range=(1, 6)):
        poly = build_polygon(model)
        for v in poly.vertices:
            assert v.z >= 0 and v.w >= 0
            assert all(f(v.z, v.w) >= 0 for f in model.factors)
        slopes = [model.factor(i).slope for i in poly.edge_lines]
        assert all(a > b for a, b in zip(slopes, slopes[1:]))
        for line, start, end in poly.edges():
            f = model.factor(line)
            assert f(start.z, start.w) == 0 == f(end.z, end.w)


def test_eta(coin):
    assert eta(coin, 1, Point2Q(1, 1)) == DirVector(1, 2)
    assert eta(coin, 1, Point2Q(0, F(3, 2))) == DirVector(0, 1)
    assert eta(coin, 2, Point2Q(F(3, 2), 0)) == DirVector(1, 0)
    with pytest.raises(VertexNotOnLine):
        eta(coin, 1, Point2Q(F(3, 2), 0))


def test_dirvector_primitive():
    assert DirVector.primitive(F(1, 3), F(2, 3)) == DirVector(1, 2)
    assert DirVector.primitive(6, 4) == DirVector(3, 2)
    with pytest.raises(ZeroDirection):
        DirVector.primitive(0, 0)
    with pytest.raises(ZeroDirection):
        DirVector.primitive(-1, 2)


def test_fan_coin(coin):
    fan = build_fan(coin)
    assert [c.name for c in fan] == ["K_1", "Omega_1,2", "K_2"]
    assert [gens(c) for c in fan] == [((0, 1), (1, 2)), ((1, 2), (2, 1)), ((2, 1), (1, 0))]
    assert fan.cones[1].base == Point2Q(1, 1)


def test_fan_three_line(three_line):
    fan = build_fan(three_line)
    assert [c.name for c in fan] == ["K_3", "Omega_2,3", "K_2"]
    assert [gens(c) for c in fan] == [((0, 1), (1, 2)), ((1, 2), (2, 1)), ((2, 1), (1, 0))]
    assert 1 not in fan.saddle_lines()


def test_fan_single_factor():
    fan = build_fan(GFModel.from_pairs([(2, 5)]))
    assert len(fan) == 1
    assert gens(fan.cones[0]) == ((0, 1), (1, 0))


def test_fan_structure_random():
    for model in random_models(8, 40, m_range=(1, 6)):
        fan = build_fan(model)
        cones = fan.cones
        assert cones[0].generators[0] == DirVector(0, 1)
        assert cones[-1].generators[1] == DirVector(1, 0)
        kinds = [c.kind for c in cones]
        assert kinds[::2] == ["saddle"] * len(kinds[::2])
        assert kinds[1::2] == ["vertex"] * len(kinds[1::2])
        for a, b in zip(cones, cones[1:]):
            assert a.generators[1] == b.generators[0]
        for c in cones:
            assert cross(*c.generators) < 0           # strictly clockwise sweep
        assert set(fan.saddle_lines()) == set(fan.polygon.edge_lines)
        for c in cones:
            if c.kind == "vertex":
                assert c.base == intersect(model, *c.lines)


def test_classify_coin(coin):
    fan = build_fan(coin)
    loc = classify(fan, 1, 1)
    assert isinstance(loc, Interior) and loc.cone.name == "Omega_1,2"
    loc = classify(fan, 1, 4)
    assert isinstance(loc, Interior) and loc.cone.name == "K_1"
    loc = classify(fan, 1, 2)
    assert isinstance(loc, BoundaryRay)
    assert (loc.left.name, loc.right.name) == ("K_1", "Omega_1,2")
    assert isinstance(classify(fan, 2, 4), BoundaryRay)
    assert isinstance(classify(fan, 0, 3), OnAxis)
    with pytest.raises(ZeroDirection):
        classify(fan, 0, 0)


def test_saddle_point(coin):
    assert saddle_point(coin, 1, 1, 4) == Point2Q(F(3, 5), F(6, 5))
    assert saddle_point(coin, 2, 4, 1) == Point2Q(F(6, 5), F(3, 5))
    assert saddle_point(GFModel.from_pairs([(1, 1)]), 1, 3, 3) == Point2Q(F(1, 2), F(1, 2))


def test_saddle_point_on_line():
    rng = random.Random(4)
    for model in random_models(9, 10, m_range=(1, 5)):
        for i in model.indices():
            p, q = rng.randint(1, 40), rng.randint(1, 40)
            s = saddle_point(model, i, p, q)
            assert model.factor(i)(s.z, s.w) == 0


def test_argmax_examples(coin, three_line):
    assert argmax_oracle(coin, 1, 1).point == Point2Q(1, 1)
    assert argmax_oracle(coin, 1, 1).labels == (("vertex", 1, 2),)
    res = argmax_oracle(coin, 1, 4)
    assert res.point == Point2Q(F(3, 5), F(6, 5)) and not res.tie
    assert argmax_oracle(three_line, 1, 1).point == Point2Q(F(1, 3), F(1, 3))
    tie = argmax_oracle(coin, 1, 2)
    assert tie.tie and set(tie.labels) == {("saddle", 1), ("vertex", 1, 2)}


def test_compare_objective_exact_fallback():
    # distinct points with identical z^p w^q are separated only by the exact path
    u, v = Point2Q(F(1, 2), F(8)), Point2Q(F(2), F(1, 2))
    assert compare_objective(u, v, 1, 1) == 1
    assert compare_objective(Point2Q(1, 4), Point2Q(2, 2), 1, 1) == 0
    big = Point2Q(F(10 ** 30 + 1, 10 ** 30), 1)
    assert compare_objective(big, Point2Q(1, 1), 1, 1) == 1


def random_directions(rng, fan, count, max_coord=30):
    """Random primitive directions, about a fifth of them on fan rays."""
    rays = [g for c in fan for g in c.generators if g.p and g.q]
    out = []
    while len(out) < count:
        if rays and rng.random() < 0.2:
            g = rng.choice(rays)
            out.append((g.p, g.q))
            continue
        p, q = rng.randint(1, max_coord), rng.randint(1, max_coord)
        if gcd(p, q) == 1:
            out.append((p, q))
    return out


def agrees(model, fan, p, q):
    loc = classify(fan, p, q)
    res = argmax_oracle(model, p, q, fan.polygon)
    if isinstance(loc, BoundaryRay):
        return res.tie
    if res.tie:
        return False
    (label,) = res.labels
    cone = loc.cone
    if cone.kind == "saddle":
        return label == ("saddle", cone.lines[0]) and res.point == saddle_point(model, cone.lines[0], p, q)
    return label == ("vertex",) + cone.lines and res.point == intersect(model, *cone.lines)


def test_fan_argmax_agreement_sample():
    rng = random.Random(12)
    for model in random_models(13, 5, m_range=(2, 5)):
        fan = build_fan(model)
        for p, q in random_directions(rng, fan, 40):
            assert agrees(model, fan, p, q), (model, p, q)
