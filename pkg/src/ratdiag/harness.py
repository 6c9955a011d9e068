"""Numerical checks of the leading term against the exact series."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .asym import AsymptoticTerm, evaluate_log_term, horn_limit, main_term
from .errors import TooFewRows, ZeroCoefficient
from .fan import DirVector, Fan, Interior, build_fan, classify, compare_objective, saddle_point
from .model import GFModel
from .parfrac import PairConstants
from .series import CoeffTable, expand, working_prec

DEFAULT_KS = (10, 20, 50, 100)

#: errors below this are rounding noise of the 128-bit evaluation
NOISE_FLOOR = 1e-20


@dataclass(frozen=True)
class ConvergenceRow:
    k: int
    exact_sign: int
    exact_log: mpmath.mpf
    pred_sign: int
    pred_log: mpmath.mpf
    ratio: mpmath.mpf

    @property
    def error(self) -> mpmath.mpf:
        return abs(self.ratio - 1)


@dataclass(frozen=True)
class VerificationReport:
    rows: tuple[ConvergenceRow, ...]
    final_error: float
    trend_monotone: bool
    passed: bool
    tolerance: float
    direction: DirVector | None = None
    regime: str | None = None


def diagonal_table(model: GFModel, d: DirVector, kmax: int, extra: int = 0) -> CoeffTable:
    return expand(model, kmax * d.p + extra, kmax * d.q + extra)


def convergence_table(model: GFModel, p, q, k_list, *, fan: Fan | None = None,
                      constants: PairConstants | None = None,
                      term: AsymptoticTerm | None = None,
                      table: CoeffTable | None = None) -> list[ConvergenceRow]:
    if term is None:
        term = main_term(model, fan, constants, p, q)
    d = term.direction
    ks = sorted(set(int(k) for k in k_list))
    if table is None:
        table = diagonal_table(model, d, ks[-1])
    rows = []
    for k in ks:
        es, el = table.log_at(k * d.p, k * d.q)
        ps, pl = evaluate_log_term(term, k)
        with mpmath.workprec(working_prec()):
            ratio = es * ps * mpmath.exp(el - pl) if es else mpmath.mpf(0)
        rows.append(ConvergenceRow(k, es, el, ps, pl, ratio))
    return rows


def check_convergence(rows, tol: float, *, direction: DirVector | None = None,
                      regime: str | None = None) -> VerificationReport:
    rows = tuple(rows)
    if len(rows) < 3:
        raise TooFewRows(f"need at least 3 rows, got {len(rows)}")
    errors = [r.error if r.error > NOISE_FLOOR else 0 for r in rows]
    tail = errors[len(errors) // 2:]
    monotone = all(b <= a for a, b in zip(tail, tail[1:]))
    final = float(errors[-1])
    return VerificationReport(
        rows=rows,
        final_error=final,
        trend_monotone=monotone,
        passed=final <= tol and monotone,
        tolerance=tol,
        direction=direction,
        regime=regime,
    )


def verify(model: GFModel, p, q, k_list=DEFAULT_KS, tol: float = 0.05, *,
           fan: Fan | None = None) -> VerificationReport:
    term = main_term(model, fan, None, p, q)
    rows = convergence_table(model, p, q, k_list, term=term)
    return check_convergence(rows, tol, direction=term.direction, regime=term.label)


@dataclass(frozen=True)
class HornRow:
    k: int
    empirical: tuple[Fraction, Fraction]
    limit: tuple[Fraction, Fraction]
    error: float


def horn_table(model: GFModel, p, q, k_list, *, fan: Fan | None = None) -> list[HornRow]:
    """Forward ratios (f(x+1,y)/f(x,y), f(x,y+1)/f(x,y)) along x = kp, y = kq.

    The error is the larger relative deviation of the two components from
    (1/z, 1/w).
    """
    d = DirVector.primitive(p, q)
    ks = sorted(set(int(k) for k in k_list))
    table = diagonal_table(model, d, ks[-1], extra=1)
    ratios = []
    for k in ks:
        x, y = k * d.p, k * d.q
        here, right, up = table[x, y], table[x + 1, y], table[x, y + 1]
        if not (here and right and up):
            raise ZeroCoefficient(
                f"f vanishes near ({x}, {y}); the Horn vector is undefined "
                "(as for 1/((1-z-w)(1+z-w)), whose coefficients vanish for odd x)")
        ratios.append((k, (right / here, up / here)))

    limit = horn_limit(model, fan, d.p, d.q)
    out = []
    for k, emp in ratios:
        err = max(abs(float(e / lim) - 1) for e, lim in zip(emp, limit))
        out.append(HornRow(k, emp, limit, err))
    return out


def dominance_check(model: GFModel, fan: Fan | None, p, q) -> bool:
    """Whether the cone's base point strictly dominates every competitor.

    The base must be the strict maximum of z^p w^q over the closed polygon
    (all off-axis vertices and in-edge tangency points), and strictly below
    the tangency point of every other active line, each of which maximises
    z^p w^q along its own line.  Both fail on a cone boundary.
    """
    d = DirVector.primitive(p, q)
    if fan is None:
        fan = build_fan(model)
    loc = classify(fan, d.p, d.q)
    if not isinstance(loc, Interior):
        return False
    cone = loc.cone
    if cone.kind == "saddle":
        base = saddle_point(model, cone.lines[0], d.p, d.q)
        own = set(cone.lines)
    else:
        base = cone.base
        own = set()

    poly = fan.polygon
    for _, _, v in poly.inner_vertices():
        if v != base and compare_objective(base, v, d.p, d.q) <= 0:
            return False
    for line, start, end in poly.edges():
        s = saddle_point(model, line, d.p, d.q)
        lo, hi = sorted((start.z, end.z))
        if line in own:
            continue
        if lo <= s.z <= hi and compare_objective(base, s, d.p, d.q) <= 0:
            return False
        if compare_objective(base, s, d.p, d.q) >= 0:
            return False
    return True
