"""
Forward ratios along a diagonal
===============================

The ratios f(x+1,y)/f(x,y) and f(x,y+1)/f(x,y) along x = kp, y = kq tend
to the reciprocals of the base point of the direction's cone.
"""

from ratdiag import fixtures, horn_table

cases = [
    ("coin", fixtures.coin(), (1, 1)),
    ("coin", fixtures.coin(), (1, 4)),
    ("single line z + w", fixtures.single(), (1, 1)),
]
for name, model, (p, q) in cases:
    rows = horn_table(model, p, q, [10, 20, 50, 100])
    lim = rows[0].limit
    print(f"{name} ({p},{q}): limit ({lim[0]}, {lim[1]})")
    for r in rows:
        print(f"  k={r.k:>4}  ({float(r.empirical[0]):.6f}, {float(r.empirical[1]):.6f})  error {r.error:.2e}")
