"""
Splitting a product of three lines into pairs
=============================================

For lines in general position F is a sum of constants times 1/(Q_i Q_j).
The constants come from Cramer's rule and are checked as a polynomial
identity, then against the series itself.
"""

from fractions import Fraction
from itertools import combinations

from ratdiag import decompose, expand, fixtures, verify_decomposition

model = fixtures.three_line()
consts = decompose(model)
for (i, j), a in sorted(consts.items()):
    print(f"A_{i},{j} = {a}")
print("identity sum A_ij prod_{l not in {i,j}} Q_l == 1:", verify_decomposition(model, consts))

# the same split seen coefficient by coefficient
full = expand(model, 8, 8)
pairs = {ij: expand(model.subset(ij), 8, 8) for ij in combinations(model.indices(), 2)}
x, y = 5, 3
parts = [consts[ij] * t[x, y] for ij, t in pairs.items()]
print(f"f({x},{y}) = {full[x, y]} = " + " + ".join(map(str, parts)))
assert sum(parts, Fraction(0)) == full[x, y]
