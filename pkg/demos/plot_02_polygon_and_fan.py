"""
The polygon M and its cone fan
==============================

Build the region where every factor stays positive, list the cones that
sort diagonal directions by regime, and write an SVG picture of both.
"""

import sys
from pathlib import Path

from ratdiag import build_fan, classify, fixtures
from ratdiag.fan import Interior
from ratdiag.cli import emit_plot_data

for name, model in [("coin", fixtures.coin()), ("three_line", fixtures.three_line())]:
    fan = build_fan(model)
    print(f"{name}: vertices {', '.join(map(str, fan.polygon.vertices))}")
    for cone in fan:
        g1, g2 = cone.generators
        print(f"  {cone.name:<10} between {g1} and {g2}")

    # a few directions and where they land
    for p, q in [(1, 4), (1, 2), (1, 1), (3, 1)]:
        loc = classify(fan, p, q)
        if isinstance(loc, Interior):
            where = f"inside {loc.cone.name}"
        else:
            where = f"on the ray between {loc.left.name} and {loc.right.name}"
        print(f"  ({p},{q}) {where}")

    out = Path(sys.argv[1] if len(sys.argv) > 1 else ".") / f"fan_{name}.svg"
    emit_plot_data(fan, fan.polygon, out, "svg")
    print("  wrote", out)
