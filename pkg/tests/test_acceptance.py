"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines inline;
they are also collected in the terminal summary.
"""

import random
from fractions import Fraction
from math import comb, gcd

import mpmath

from conftest import random_models
from ratdiag import fixtures
from ratdiag.fan import BoundaryRay, Interior, argmax_oracle, build_fan, classify, intersect, saddle_point
from ratdiag.harness import horn_table
from ratdiag.model import validate
from ratdiag.parfrac import decompose, verify_decomposition
from ratdiag.series import convolve_singles, expand, working_prec

F = Fraction
KS = (10, 20, 50, 100)


def test_criterion_1_vertex_regime(criterion):
    table = expand(fixtures.coin(), 100, 100)
    errors = [abs(table[k, k] - 3) for k in KS]
    ok = errors[-1] < F(1, 100) and all(b < a for a, b in zip(errors, errors[1:]))
    detail = "E1 (1,1): |f(k,k)-3| = " + ", ".join(f"{float(e):.2e}" for e in errors)
    assert criterion(1, ok, detail)


def test_criterion_2_saddle_regime(criterion):
    # the stated target is kept as written; see the notes on the saddle constant
    target = mpmath.mpf("3.211907")
    table = expand(fixtures.coin(), 100, 400)
    values = {}
    with mpmath.workprec(working_prec()):
        ln_z, ln_w = mpmath.log(mpmath.mpf(3) / 5), mpmath.log(mpmath.mpf(6) / 5)
        for k in (50, 100):
            sign, ln = table.log_at(k, 4 * k)
            values[k] = sign * mpmath.sqrt(k) * mpmath.exp(ln + (k + 1) * ln_z + (4 * k + 1) * ln_w)
        err = {k: abs(v / target - 1) for k, v in values.items()}
    ok = err[100] < 0.05 and err[100] < err[50]
    detail = (f"E1 (1,4): scaled value {mpmath.nstr(values[100], 8)} at k=100 vs target 3.211907, "
              f"rel. error {float(err[100]):.3f} (k=50: {float(err[50]):.3f})")
    assert criterion(2, ok, detail)


def test_criterion_3_three_factor_vertex(criterion):
    table = expand(fixtures.three_line(), 80, 80)
    sign, ln = table.log_at(80, 80)
    with mpmath.workprec(working_prec()):
        ratio = sign * mpmath.exp(ln - 81 * mpmath.log(9))
    ok = 0.99 <= ratio <= 1.01
    assert criterion(3, ok, f"E2 (1,1): f(80,80)/9^81 = {mpmath.nstr(ratio, 12)}")


def test_criterion_4_partial_fractions(criterion):
    e2 = fixtures.three_line()
    consts = decompose(e2)
    exact = dict(consts) == {(1, 2): -1, (1, 3): -1, (2, 3): 3}
    models = random_models(404, 20, m_range=(2, 6))
    verified = verify_decomposition(e2, consts) and all(verify_decomposition(m, decompose(m)) for m in models)
    sizes = sorted({m.m for m in models})
    ok = exact and verified
    assert criterion(4, ok, f"E2 constants exact: {exact}; identity exact on E2 and 20 random "
                            f"models (m in {sizes}): {verified}")


def test_criterion_5_fan_argmax(criterion):
    rng = random.Random(505)
    models = random_models(505, 10, m_range=(1, 5))
    checked = mismatches = boundary = 0
    for model in models:
        fan = build_fan(model)
        rays = [g for c in fan for g in c.generators if g.p and g.q]
        n = 0
        while n < 100:
            if rays and rng.random() < 0.15:
                g = rng.choice(rays)
                p, q = g.p, g.q
            else:
                p, q = rng.randint(1, 60), rng.randint(1, 60)
                if gcd(p, q) != 1:
                    continue
            n += 1
            loc = classify(fan, p, q)
            res = argmax_oracle(model, p, q, fan.polygon)
            if isinstance(loc, BoundaryRay):
                boundary += 1
                good = res.tie
            elif isinstance(loc, Interior) and not res.tie:
                cone = loc.cone
                if cone.kind == "saddle":
                    good = (res.labels == (("saddle", cone.lines[0]),)
                            and res.point == saddle_point(model, cone.lines[0], p, q))
                else:
                    good = (res.labels == (("vertex",) + cone.lines,)
                            and res.point == intersect(model, *cone.lines))
            else:
                good = False
            checked += 1
            mismatches += not good
    ok = checked == 1000 and mismatches == 0
    assert criterion(5, ok, f"{checked} directions over 10 models ({boundary} on rays), "
                            f"{mismatches} disagreements")


def test_criterion_6_oracle_equivalence(criterion):
    models = [fixtures.coin(), fixtures.three_line()] + random_models(606, 10, m_range=(1, 5))
    agree = [expand(m, 29, 29) == convolve_singles(m, 29, 29) for m in models]
    ok = all(agree)
    assert criterion(6, ok, f"30x30 tables identical for {sum(agree)}/{len(agree)} models (E1, E2, 10 random)")


def test_criterion_7_horn(criterion):
    coin = horn_table(fixtures.coin(), 1, 1, [100])[-1]
    single = horn_table(fixtures.single(), 1, 1, [100])[-1]
    ok = coin.error < 0.01 and single.error < 0.02
    detail = (f"E1 (1,1) k=100: ({float(coin.empirical[0]):.6f}, {float(coin.empirical[1]):.6f}) "
              f"err {coin.error:.2e}; m=1 (1,1) k=100: ({float(single.empirical[0]):.6f}, "
              f"{float(single.empirical[1]):.6f}) err {single.error:.2e}")
    assert criterion(7, ok, detail)


def test_criterion_8_counterexample(criterion):
    e3 = fixtures.counterexample()
    report = validate(e3)
    fails_iii = not report.cond3_positive
    table = expand(e3, 30, 30)
    odd_zero = all(table[x, y] == 0 for x in range(1, 31, 2) for y in range(31 - x))
    closed = all(table[x, y] == F(comb(x + y + 1, x + 1) * (1 + (-1) ** x), 2)
                 for x in range(31) for y in range(31 - x))
    ok = fails_iii and odd_zero and closed
    assert criterion(8, ok, f"E3 fails (III): {fails_iii}; f = 0 for odd x (x+y <= 30): {odd_zero}; "
                            f"closed form matches: {closed}")
