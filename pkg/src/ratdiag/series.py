"""Exact Taylor coefficients of P / prod Q_i.

Two independent routes are provided: the recurrence obtained from Q * F = P
(:func:`expand`) and a convolution of closed-form single-factor series
(:func:`convolve_singles`).  Both work on integers internally: with D the
common denominator of all a_i, b_i and E that of P's coefficients, the scaled
value ``E * D**(x+y) * f(x, y)`` is an integer.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import comb, lcm

import mpmath

from .model import GFModel, Poly2

#: working precision (bits) for logarithms and other real-valued quantities
PREC = 128


def working_prec() -> int:
    return max(PREC, mpmath.mp.prec)


class CoeffTable:
    """Dense table of f(x, y) for 0 <= x <= xmax, 0 <= y <= ymax.

    Index with ``table[x, y]``; ``values`` gives the full grid of Fractions.
    """

    def __init__(self, xmax: int, ymax: int, scaled: list[list[int]], num_den: int, base: int):
        self.xmax = xmax
        self.ymax = ymax
        self._scaled = scaled
        self._num_den = num_den
        self._base = base
        self._values = None

    def __getitem__(self, xy) -> Fraction:
        x, y = xy
        if not (0 <= x <= self.xmax and 0 <= y <= self.ymax):
            raise IndexError(f"({x}, {y}) outside table {self.xmax}x{self.ymax}")
        return Fraction(self._scaled[x][y], self._num_den * self._base ** (x + y))

    @property
    def values(self) -> list[list[Fraction]]:
        if self._values is None:
            self._values = [[self[x, y] for y in range(self.ymax + 1)]
                            for x in range(self.xmax + 1)]
        return self._values

    @property
    def shape(self) -> tuple[int, int]:
        return (self.xmax + 1, self.ymax + 1)

    def log_at(self, x: int, y: int):
        """log_value(f(x, y)) without materialising the reduced Fraction."""
        n = self._scaled[x][y]
        if n == 0:
            return 0, mpmath.ninf
        with mpmath.workprec(working_prec()):
            ln = (_log_int(abs(n)) - _log_int(self._num_den)
                  - (x + y) * _log_int(self._base))
        return (1 if n > 0 else -1), ln

    def rows(self):
        """Yield ``(x, y, numerator, denominator)`` in row-major order."""
        for x in range(self.xmax + 1):
            for y in range(self.ymax + 1):
                v = self[x, y]
                yield x, y, v.numerator, v.denominator

    def __eq__(self, other):
        if not isinstance(other, CoeffTable):
            return NotImplemented
        return self.shape == other.shape and self.values == other.values

    def __repr__(self):
        return f"CoeffTable(xmax={self.xmax}, ymax={self.ymax})"


def _common_denominators(model: GFModel) -> tuple[int, int]:
    base = reduce(lcm, (f.a.denominator * f.b.denominator for f in model.factors), 1)
    num_den = reduce(lcm, (c.denominator for c in model.numerator.terms.values()), 1)
    return base, num_den


def expanded_denominator(model: GFModel) -> Poly2:
    out = Poly2.constant(1)
    for f in model.factors:
        out = out * f.poly()
    return out


def expand(model: GFModel, xmax: int, ymax: int) -> CoeffTable:
    if xmax < 0 or ymax < 0:
        raise ValueError("table bounds must be nonnegative")
    base, num_den = _common_denominators(model)
    q = expanded_denominator(model).terms
    # q_{s,t} * D^(s+t) is integral because each factor has denominators dividing D
    qs = [(s, t, int(c * base ** (s + t))) for (s, t), c in q.items() if (s, t) != (0, 0)]
    p = {k: int(c * num_den * base ** sum(k)) for k, c in model.numerator.terms.items()}

    grid = [[0] * (ymax + 1) for _ in range(xmax + 1)]
    for x in range(xmax + 1):
        row = grid[x]
        for y in range(ymax + 1):
            acc = p.get((x, y), 0)
            for s, t, c in qs:
                if s <= x and t <= y:
                    acc -= c * grid[x - s][y - t]
            row[y] = acc
    return CoeffTable(xmax, ymax, grid, num_den, base)


def coeff(model: GFModel, x: int, y: int) -> Fraction:
    return expand(model, x, y)[x, y]


def convolve_singles(model: GFModel, xmax: int, ymax: int) -> CoeffTable:
    """Coefficient table as a convolution of the factors' own series.

    Each 1/(1 - a z - b w) has coefficients C(x+y, x) a^x b^y; the product of
    the factors is their 2-D convolution, and a general numerator enters as a
    final shift  f(x, y) = sum d_{alpha beta} g(x - alpha, y - beta).
    """
    if xmax < 0 or ymax < 0:
        raise ValueError("table bounds must be nonnegative")
    base, num_den = _common_denominators(model)

    acc = None
    for f in model.factors:
        sa, sb = int(f.a * base), int(f.b * base)
        single = [[comb(x + y, x) * sa ** x * sb ** y for y in range(ymax + 1)]
                  for x in range(xmax + 1)]
        acc = single if acc is None else _convolve(acc, single, xmax, ymax)

    shifted = [[0] * (ymax + 1) for _ in range(xmax + 1)]
    for (alpha, beta), d in model.numerator.terms.items():
        d_scaled = int(d * num_den * base ** (alpha + beta))
        for x in range(alpha, xmax + 1):
            src = acc[x - alpha]
            dst = shifted[x]
            for y in range(beta, ymax + 1):
                dst[y] += d_scaled * src[y - beta]
    return CoeffTable(xmax, ymax, shifted, num_den, base)


def _convolve(g, h, xmax, ymax):
    out = [[0] * (ymax + 1) for _ in range(xmax + 1)]
    for x in range(xmax + 1):
        for y in range(ymax + 1):
            s = 0
            for u in range(x + 1):
                gu, hu = g[u], h[x - u]
                for v in range(y + 1):
                    s += gu[v] * hu[y - v]
            out[x][y] = s
    return out


def _log_int(n: int):
    """ln n for a positive integer of any size, from its bit length."""
    shift = max(n.bit_length() - working_prec() - 8, 0)
    mant = n >> shift
    return mpmath.log(mpmath.mpf(mant)) + shift * mpmath.ln2


def log_value(r) -> tuple[int, mpmath.mpf]:
    """Return ``(sign, ln|r|)``; ``ln|0|`` is reported as ``-inf``."""
    r = Fraction(r)
    if r == 0:
        return 0, mpmath.ninf
    sign = 1 if r > 0 else -1
    num, den = abs(r.numerator), r.denominator
    with mpmath.workprec(working_prec()):
        if den <= num <= 2 * den:
            # near 1 the difference of two large logs would cancel
            ln = mpmath.log1p(mpmath.mpf(num - den) / den)
        elif num < den <= 2 * num:
            ln = -mpmath.log1p(mpmath.mpf(den - num) / num)
        else:
            ln = _log_int(num) - _log_int(den)
    return sign, ln
