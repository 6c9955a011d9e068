"""Partial fractions 1/prod Q_i = sum_{i<j} A_ij / (Q_i Q_j).

:func:`decompose` reduces the product three factors at a time using the
identity A_ij Q_l + A_jl Q_i + A_li Q_j = 1, and checks the result against
the point-evaluation formula A_ij = 1 / prod_{l != i,j} Q_l(z_ij, w_ij).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .errors import ConcurrentTriple, HypothesisFailure
from .fan import intersect
from .model import GFModel, Poly2, delta3


class PairConstants(dict):
    """Mapping ``(i, j) -> A_ij`` with ``i < j``; lookups accept either order."""

    def __getitem__(self, key):
        i, j = key
        return super().__getitem__((min(i, j), max(i, j)))

    def get(self, key, default=None):
        i, j = key
        return super().get((min(i, j), max(i, j)), default)


def triple_constants(model: GFModel, i: int, j: int, l: int) -> tuple[Fraction, Fraction, Fraction]:
    """Solve A_ij Q_l + A_jl Q_i + A_li Q_j = 1 for (A_ij, A_jl, A_li).

    Matching the constant, z and w coefficients gives the linear system with
    matrix rows (1,1,1), (a_l,a_i,a_j), (b_l,b_i,b_j); it is solved by Cramer's
    rule.
    """
    d = delta3(model, l, i, j)
    if d == 0:
        raise ConcurrentTriple(f"lines {i}, {j}, {l} are concurrent (Delta_3 = 0)")
    fi, fj, fl = model.factor(i), model.factor(j), model.factor(l)
    # right-hand side is (1, 0, 0): each unknown is a signed 2x2 cofactor / d
    a_ij = (fi.a * fj.b - fj.a * fi.b) / d
    a_jl = (fj.a * fl.b - fl.a * fj.b) / d
    a_li = (fl.a * fi.b - fi.a * fl.b) / d
    return a_ij, a_jl, a_li


def decompose(model: GFModel) -> PairConstants:
    if model.m < 2:
        raise HypothesisFailure("partial fractions need at least two factors")
    elim = decompose_recursive(model)
    closed = decompose_closed_form(model)
    if elim != closed:
        raise AssertionError(f"elimination {dict(elim)} disagrees with closed form {dict(closed)}")
    return elim


def decompose_recursive(model: GFModel) -> PairConstants:
    """Level-by-level elimination of factor triples.

    A term c / prod_{s in S} Q_s with |S| >= 3 is split with the triple
    identity of its three smallest indices into three terms over subsets of
    size |S| - 1.  Terms over the same subset are merged before descending.
    """

    @lru_cache(maxsize=None)
    def split(i, j, l):
        return triple_constants(model, i, j, l)

    terms: dict[frozenset[int], Fraction] = {frozenset(model.indices()): Fraction(1)}
    for size in range(model.m, 2, -1):
        nxt: dict[frozenset[int], Fraction] = {}
        for subset, c in terms.items():
            if len(subset) != size:
                nxt[subset] = nxt.get(subset, Fraction(0)) + c
                continue
            i, j, l = sorted(subset)[:3]
            a_ij, a_jl, a_li = split(i, j, l)
            for drop, coef in ((l, a_ij), (i, a_jl), (j, a_li)):
                key = subset - {drop}
                nxt[key] = nxt.get(key, Fraction(0)) + c * coef
        terms = nxt

    out = PairConstants()
    for i, j in combinations(model.indices(), 2):
        out[(i, j)] = terms.get(frozenset((i, j)), Fraction(0))
    return out


def decompose_closed_form(model: GFModel) -> PairConstants:
    out = PairConstants()
    for i, j in combinations(model.indices(), 2):
        v = intersect(model, i, j)
        prod = Fraction(1)
        for l in model.indices():
            if l not in (i, j):
                prod *= model.factor(l)(v.z, v.w)
        if prod == 0:
            raise ConcurrentTriple(f"a third line passes through the intersection of {i} and {j}")
        out[(i, j)] = 1 / prod
    return out


def verify_decomposition(model: GFModel, constants) -> bool:
    """Exact check of sum_{i<j} A_ij prod_{l != i,j} Q_l == 1."""
    total = Poly2()
    idx = list(model.indices())
    for i, j in combinations(idx, 2):
        a = Fraction(constants[(i, j)])
        if not a:
            continue
        term = Poly2.constant(a)
        for l in idx:
            if l not in (i, j):
                term = term * model.factor(l).poly()
        total = total + term
    return total == Poly2.constant(1)
