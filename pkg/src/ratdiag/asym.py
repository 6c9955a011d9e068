"""Leading term of f(kp, kq) as k -> infinity.

    f(kp, kq) ~ C(p, q; k) * P(z, w) / (z^(kp+1) w^(kq+1))

with (z, w) the maximiser of z^p w^q over M.  In a saddle cone K_i the base
point is the tangency point on line i and C = c_i / sqrt(k); in a vertex cone
Omega_ij it is the vertex and C = A_ij / |Delta_ij|.

Saddle constants: for 1/(Q_i Q_j) in the saddle regime of line i the term is

    sqrt(p q / (2 pi (p + q))) / |p b_i (a_j - a_i) + q a_i (b_j - b_i)|,

equivalently the single-factor constant sqrt(pq / (2 pi (p+q)^3)) / (a_i b_i)
divided by Q_j at the tangency point.  Summing A_ij times these over j != i
gives c_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import (
    BoundaryDirection,
    DegenerateDenominator,
    DegenerateNumerator,
    VanishingConstant,
    ZeroDirection,
)
from .fan import (
    BoundaryRay,
    DirVector,
    Fan,
    Interior,
    Point2Q,
    build_fan,
    classify,
    intersect,
    saddle_point,
)
from .model import GFModel, delta
from .parfrac import PairConstants, decompose
from .series import log_value, working_prec


@dataclass(frozen=True)
class AsymptoticTerm:
    kind: str                      # "saddle" or "vertex"
    lines: tuple[int, ...]
    base: Point2Q
    constant: mpmath.mpf           # C without the 1/sqrt(k) and without P
    has_sqrtk: bool
    numerator_value: Fraction      # P at the base point
    direction: DirVector
    exact_constant: Fraction | None = None   # vertex constants are rational

    @property
    def label(self) -> str:
        if self.kind == "saddle":
            return f"Saddle({self.lines[0]})"
        return f"Vertex({self.lines[0]},{self.lines[1]})"

    def formula(self) -> str:
        c = "C/sqrt(k)" if self.has_sqrtk else "C"
        return f"{c} * P(z,w) / (z^(k*{self.direction.p}+1) * w^(k*{self.direction.q}+1))"


def pair_saddle_constant(model: GFModel, i: int, j: int, p, q) -> mpmath.mpf:
    if i == j:
        raise ValueError("pair constant needs two distinct factors")
    p, q = Fraction(p), Fraction(q)
    if p <= 0 or q <= 0:
        raise ZeroDirection("pair saddle constant needs a strictly positive direction")
    fi, fj = model.factor(i), model.factor(j)
    den = p * fi.b * (fj.a - fi.a) + q * fi.a * (fj.b - fi.b)
    if den == 0:
        raise DegenerateDenominator(
            f"direction ({p}, {q}) puts the tangency point of line {i} on line {j}")
    with mpmath.workprec(working_prec()):
        return mpmath.sqrt(_mpf(p * q / (p + q)) / (2 * mpmath.pi)) / abs(_mpf(den))


def single_saddle_constant(model: GFModel, i: int, p, q) -> mpmath.mpf:
    """Constant for 1/Q_i alone, from Stirling's formula on C(x+y, x) a^x b^y."""
    f = model.factor(i)
    p, q = Fraction(p), Fraction(q)
    with mpmath.workprec(working_prec()):
        return mpmath.sqrt(_mpf(p * q / (p + q) ** 3) / (2 * mpmath.pi)) / _mpf(f.a * f.b)


def saddle_constant(model: GFModel, constants: PairConstants | None, i: int, p, q) -> mpmath.mpf:
    if model.m == 1:
        return single_saddle_constant(model, i, p, q)
    if constants is None:
        constants = decompose(model)
    with mpmath.workprec(working_prec()):
        total = mpmath.mpf(0)
        for j in model.indices():
            if j != i:
                total += _mpf(constants[(i, j)]) * pair_saddle_constant(model, i, j, p, q)
    if total == 0:
        raise VanishingConstant(f"aggregated saddle constant of line {i} vanishes at ({p}, {q})")
    return total


def vertex_constant(model: GFModel, constants: PairConstants | None, i: int, j: int) -> Fraction:
    if constants is None:
        constants = decompose(model)
    return constants[(i, j)] / abs(delta(model, i, j))


def _cone_for(fan: Fan, d: DirVector):
    loc = classify(fan, d.p, d.q)
    if isinstance(loc, BoundaryRay):
        raise BoundaryDirection(
            f"direction {d} lies on the ray shared by {loc.left.name} and {loc.right.name}")
    if not isinstance(loc, Interior):
        raise BoundaryDirection(f"direction {d} lies on a coordinate axis")
    return loc.cone


def main_term(model: GFModel, fan: Fan | None, constants: PairConstants | None, p, q) -> AsymptoticTerm:
    d = DirVector.primitive(p, q)
    if fan is None:
        fan = build_fan(model)
    if constants is None and model.m >= 2:
        constants = decompose(model)
    cone = _cone_for(fan, d)

    if cone.kind == "saddle":
        (i,) = cone.lines
        base = saddle_point(model, i, d.p, d.q)
        const = saddle_constant(model, constants, i, d.p, d.q)
        exact = None
    else:
        i, j = cone.lines
        base = intersect(model, i, j)
        exact = vertex_constant(model, constants, i, j)
        with mpmath.workprec(working_prec()):
            const = _mpf(exact)

    pval = model.numerator(base.z, base.w)
    if pval == 0:
        raise DegenerateNumerator(f"P vanishes at the base point {base} for direction {d}")
    return AsymptoticTerm(
        kind=cone.kind,
        lines=cone.lines,
        base=base,
        constant=const,
        has_sqrtk=cone.kind == "saddle",
        numerator_value=pval,
        direction=d,
        exact_constant=exact,
    )


def evaluate_log_term(term: AsymptoticTerm, k: int) -> tuple[int, mpmath.mpf]:
    """``(sign, ln|term at k|)`` without forming the huge power."""
    if k < 1:
        raise ValueError("k must be >= 1")
    p, q = term.direction.p, term.direction.q
    sp, lp = log_value(term.numerator_value)
    _, lz = log_value(term.base.z)
    _, lw = log_value(term.base.w)
    with mpmath.workprec(working_prec()):
        c = term.constant
        out = mpmath.log(abs(c)) + lp - (k * p + 1) * lz - (k * q + 1) * lw
        if term.has_sqrtk:
            out -= mpmath.log(k) / 2
    sign = sp * (1 if c > 0 else -1)
    return sign, out


def horn_limit(model: GFModel, fan: Fan | None, p, q) -> tuple[Fraction, Fraction]:
    d = DirVector.primitive(p, q)
    if fan is None:
        fan = build_fan(model)
    cone = _cone_for(fan, d)
    if cone.kind == "saddle":
        base = saddle_point(model, cone.lines[0], d.p, d.q)
    else:
        base = intersect(model, *cone.lines)
    return 1 / base.z, 1 / base.w


def _mpf(r: Fraction) -> mpmath.mpf:
    r = Fraction(r)
    return mpmath.mpf(r.numerator) / r.denominator
