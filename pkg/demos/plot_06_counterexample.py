"""
What goes wrong without positive coefficients
=============================================

1/((1 - z - w)(1 + z - w)) has a factor with a negative coefficient.  Its
coefficients vanish for every odd x, so no smooth leading term can describe
them and the ratio of neighbours is undefined.
"""

from math import comb

from ratdiag import expand, fixtures, validate
from ratdiag.errors import ZeroCoefficient
from ratdiag.harness import horn_table

model = fixtures.counterexample()
for line in validate(model).lines():
    print(line)

table = expand(model, 8, 8)
for y in range(5):
    print("  ".join(f"{str(table[x, y]):>4}" for x in range(8)))

ok = all(table[x, y] == comb(x + y + 1, x + 1) * (1 + (-1) ** x) // 2
         for x in range(9) for y in range(9))
print("matches C(x+y+1, x+1) (1 + (-1)^x) / 2:", ok)

try:
    horn_table(model, 1, 1, [10, 20])
except ZeroCoefficient as exc:
    print("Horn vector:", exc)
