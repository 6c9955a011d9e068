"""
Leading terms and how fast the series reaches them
==================================================

One direction in a vertex cone, one in a saddle cone.  The vertex term is
a constant times an exponential and converges quickly.  The saddle term
carries 1/sqrt(k) and its relative error shrinks roughly like 1/k.
"""

import mpmath

from ratdiag import fixtures, main_term, verify

model = fixtures.coin()
for p, q in [(1, 1), (1, 4)]:
    term = main_term(model, None, None, p, q)
    print(f"direction ({p},{q}): {term.label}, base ({term.base.z}, {term.base.w})")
    print(f"  C = {mpmath.nstr(term.constant, 12)}")
    print(f"  f(kp,kq) ~ {term.formula()}")
    report = verify(model, p, q, tol=0.05)
    for row in report.rows:
        print(f"  k={row.k:>4}  ratio {mpmath.nstr(row.ratio, 10)}")
    print("  passed" if report.passed else "  failed", f"(final error {report.final_error:.2e})")

# the saddle constant here is 9/sqrt(10 pi); Richardson extrapolation of the
# ratios at k = 50 and 100 cancels the 1/k correction
rows = verify(model, 1, 4, [25, 50, 100]).rows
c = main_term(model, None, None, 1, 4).constant
print("extrapolated constant:", mpmath.nstr(c * (2 * rows[-1].ratio - rows[-2].ratio), 8),
      "vs", mpmath.nstr(9 / mpmath.sqrt(10 * mpmath.pi), 8))
