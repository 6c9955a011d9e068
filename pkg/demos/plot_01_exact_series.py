"""
Exact coefficients of a two-line generating function
====================================================

Expand 1/((1 - z/3 - 2w/3)(1 - 2z/3 - w/3)) as an exact table of rationals,
then check the recurrence against the independent convolution route.
"""

from fractions import Fraction

from ratdiag import convolve_singles, expand, fixtures

model = fixtures.coin()
print("model:", model.factors)

# the primary route solves Q * F = P one coefficient at a time
table = expand(model, 6, 6)
for y in range(4):
    print("  ".join(f"{str(table[x, y]):>9}" for x in range(4)))

# the oracle multiplies binomial tables of each factor
assert table == convolve_singles(model, 6, 6)
print("recurrence and convolution agree on a 7x7 table")

# coefficients along the main diagonal drift towards 3
big = expand(model, 60, 60)
for k in (5, 10, 20, 40, 60):
    print(f"f({k},{k}) = {float(big[k, k]):.12f}")
print("f(1,1) exactly:", big[1, 1], "=", Fraction(13, 9) == big[1, 1])
