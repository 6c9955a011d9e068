"""Polygon M, the cone fan of diagonal directions, and an argmax oracle.

M is the closed region of the positive quadrant where every Q_i >= 0.  Its
non-axis edges lie on some of the lines a_i z + b_i w = 1 ("active" lines).
A direction (p, q) is classified by which boundary point of M maximises
z^p w^q: a tangency point inside an edge (saddle cone K_i) or a vertex where
two active lines meet (vertex cone Omega_ij).

All geometry is exact.  Directions are swept from the q-axis (0, 1) to the
p-axis (1, 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import (
    HypothesisFailure,
    ParallelLines,
    VertexNotOnLine,
    ZeroDirection,
)
from .model import GFModel, delta
from .series import log_value, working_prec

import mpmath

#: log-space margin below which objective comparisons fall back to exact powers
EXACT_FALLBACK_MARGIN = 1e-9


@dataclass(frozen=True)
class Point2Q:
    z: Fraction
    w: Fraction

    def __post_init__(self):
        object.__setattr__(self, "z", Fraction(self.z))
        object.__setattr__(self, "w", Fraction(self.w))

    def __iter__(self):
        return iter((self.z, self.w))

    def __str__(self):
        return f"({self.z}, {self.w})"


@dataclass(frozen=True)
class DirVector:
    """Primitive nonnegative integer direction (p, q)."""

    p: int
    q: int

    @classmethod
    def primitive(cls, p, q) -> DirVector:
        p, q = Fraction(p), Fraction(q)
        if p < 0 or q < 0:
            raise ZeroDirection(f"direction ({p}, {q}) has a negative component")
        if p == 0 and q == 0:
            raise ZeroDirection("direction (0, 0)")
        scale = lcm(p.denominator, q.denominator)
        ip, iq = int(p * scale), int(q * scale)
        g = gcd(ip, iq)
        return cls(ip // g, iq // g)

    def __iter__(self):
        return iter((self.p, self.q))

    def __str__(self):
        return f"({self.p}, {self.q})"


def cross(u, v) -> Fraction:
    """u.p * v.q - u.q * v.p; negative when v lies clockwise of u."""
    up, uq = u
    vp, vq = v
    return up * vq - uq * vp


@dataclass(frozen=True)
class Polygon:
    """Boundary of M: (0,0), the z-axis corner, the chain of active-line
    vertices, the w-axis corner.  ``edge_lines[k]`` is the factor whose line
    carries the edge from ``vertices[k+1]`` to ``vertices[k+2]``.
    """

    vertices: tuple[Point2Q, ...]
    edge_lines: tuple[int, ...]

    def edges(self):
        """Yield ``(line, start, end)`` for each non-axis edge."""
        for k, line in enumerate(self.edge_lines):
            yield line, self.vertices[k + 1], self.vertices[k + 2]

    def inner_vertices(self):
        """Yield ``(i, j, point)`` for vertices where two active lines meet."""
        for k in range(len(self.edge_lines) - 1):
            i, j = self.edge_lines[k], self.edge_lines[k + 1]
            yield min(i, j), max(i, j), self.vertices[k + 2]


@dataclass(frozen=True)
class Cone:
    """A cone of the fan.

    ``kind`` is ``"saddle"`` (lines = (i,)) or ``"vertex"`` (lines = (i, j),
    i < j).  Generators are listed in sweep order, q-axis side first.  For a
    vertex cone ``base`` is the vertex; for a saddle cone it is the edge's
    endpoint on the q-axis side and ``edge`` holds both endpoints.
    """

    kind: str
    lines: tuple[int, ...]
    generators: tuple[DirVector, DirVector]
    base: Point2Q
    edge: tuple[Point2Q, Point2Q] | None = None

    @property
    def name(self) -> str:
        if self.kind == "saddle":
            return f"K_{self.lines[0]}"
        return f"Omega_{self.lines[0]},{self.lines[1]}"


@dataclass(frozen=True)
class Fan:
    cones: tuple[Cone, ...]
    polygon: Polygon

    def __iter__(self):
        return iter(self.cones)

    def __len__(self):
        return len(self.cones)

    def saddle_lines(self) -> tuple[int, ...]:
        return tuple(c.lines[0] for c in self.cones if c.kind == "saddle")


@dataclass(frozen=True)
class Interior:
    cone: Cone


@dataclass(frozen=True)
class BoundaryRay:
    left: Cone
    right: Cone


@dataclass(frozen=True)
class OnAxis:
    pass


def intersect(model: GFModel, i: int, j: int) -> Point2Q:
    d = delta(model, i, j)
    if d == 0:
        raise ParallelLines(f"lines {i} and {j} are parallel (Delta = 0)")
    fi, fj = model.factor(i), model.factor(j)
    return Point2Q((fj.b - fi.b) / d, (fi.a - fj.a) / d)


def _require_positive(model: GFModel):
    bad = [i for i in model.indices() if model.factor(i).a <= 0 or model.factor(i).b <= 0]
    if bad:
        raise HypothesisFailure(
            f"condition (III) fails for factor(s) {bad}: the polygon needs a_i, b_i > 0")


def build_polygon(model: GFModel) -> Polygon:
    _require_positive(model)
    idx = list(model.indices())
    fac = model.factor

    # walk the upper boundary from the w-axis towards the z-axis
    w_top = min(1 / fac(i).b for i in idx)
    cur = max((i for i in idx if 1 / fac(i).b == w_top), key=lambda i: fac(i).slope)
    chain = [Point2Q(0, w_top)]
    lines = [cur]
    z0 = Fraction(0)
    while True:
        end_z = 1 / fac(cur).a
        best, best_z = None, None
        for j in idx:
            if fac(j).slope <= fac(cur).slope:
                continue
            zc = intersect(model, cur, j).z
            if z0 < zc < end_z and (best_z is None or zc < best_z):
                best, best_z = j, zc
        if best is None:
            chain.append(Point2Q(end_z, 0))
            break
        chain.append(intersect(model, cur, best))
        cur, z0 = best, best_z
        lines.append(cur)

    return Polygon(
        vertices=(Point2Q(0, 0),) + tuple(reversed(chain)),
        edge_lines=tuple(reversed(lines)),
    )


def eta(model: GFModel, i: int, vertex: Point2Q) -> DirVector:
    f = model.factor(i)
    if f(vertex.z, vertex.w) != 0:
        raise VertexNotOnLine(f"{vertex} is not on line {i}")
    return DirVector.primitive(f.a * vertex.z, f.b * vertex.w)


def build_fan(model: GFModel, polygon: Polygon | None = None) -> Fan:
    poly = polygon if polygon is not None else build_polygon(model)
    lines = list(reversed(poly.edge_lines))
    chain = list(reversed(poly.vertices[1:]))      # from the w-axis corner
    cones = []
    for k, line in enumerate(lines):
        start, end = chain[k], chain[k + 1]
        cones.append(Cone("saddle", (line,),
                          (eta(model, line, start), eta(model, line, end)),
                          base=start, edge=(start, end)))
        if k + 1 < len(lines):
            nxt = lines[k + 1]
            cones.append(Cone("vertex", (min(line, nxt), max(line, nxt)),
                              (eta(model, line, end), eta(model, nxt, end)),
                              base=end))
    return Fan(tuple(cones), poly)


def classify(fan: Fan, p, q):
    d = DirVector.primitive(p, q)
    if d.p == 0 or d.q == 0:
        return OnAxis()
    cones = fan.cones
    for k, cone in enumerate(cones):
        g1, g2 = cone.generators
        c1, c2 = cross(g1, d), cross(d, g2)
        if c1 < 0 and c2 < 0:
            return Interior(cone)
        if c2 == 0:
            return BoundaryRay(cone, cones[k + 1])
    raise AssertionError(f"direction {d} not covered by the fan")


def saddle_point(model: GFModel, i: int, p, q) -> Point2Q:
    f = model.factor(i)
    p, q = Fraction(p), Fraction(q)
    s = p + q
    if s <= 0:
        raise ZeroDirection("p + q must be positive")
    return Point2Q(p / (s * f.a), q / (s * f.b))


def objective(point: Point2Q, p, q):
    """p ln z + q ln w in extended precision (-inf on the axes)."""
    sz, lz = log_value(point.z)
    sw, lw = log_value(point.w)
    if sz <= 0 or sw <= 0:
        return mpmath.ninf
    with mpmath.workprec(working_prec()):
        return p * lz + q * lw


def compare_objective(u: Point2Q, v: Point2Q, p: int, q: int) -> int:
    """Sign of z_u^p w_u^q - z_v^p w_v^q for positive points and integer p, q."""
    fu, fv = objective(u, p, q), objective(v, p, q)
    with mpmath.workprec(working_prec()):
        diff = fu - fv
    if abs(diff) > EXACT_FALLBACK_MARGIN:
        return 1 if diff > 0 else -1
    lhs = u.z ** p * u.w ** q
    rhs = v.z ** p * v.w ** q
    return (lhs > rhs) - (lhs < rhs)


@dataclass(frozen=True)
class ArgmaxResult:
    """Maximiser of z^p w^q over the closure of M.

    ``labels`` lists every candidate attaining the maximum: ``("saddle", i)``
    for the tangency point on edge i, ``("vertex", i, j)`` for a vertex.  More
    than one label means a tie (the direction lies on a cone boundary).
    """

    point: Point2Q
    labels: tuple[tuple, ...]
    points: tuple[Point2Q, ...]

    @property
    def tie(self) -> bool:
        return len(self.labels) > 1


def argmax_oracle(model: GFModel, p, q, polygon: Polygon | None = None) -> ArgmaxResult:
    d = DirVector.primitive(p, q)
    if d.p == 0 or d.q == 0:
        raise ZeroDirection("argmax oracle needs a strictly positive direction")
    poly = polygon if polygon is not None else build_polygon(model)

    candidates: list[tuple[tuple, Point2Q]] = [
        (("vertex", i, j), v) for i, j, v in poly.inner_vertices()
    ]
    for line, start, end in poly.edges():
        s = saddle_point(model, line, d.p, d.q)
        lo, hi = sorted((start.z, end.z))
        if lo <= s.z <= hi:
            candidates.append((("saddle", line), s))
    # a single edge from axis to axis has no inner vertex; its endpoints give -inf
    best_label, best = candidates[0]
    winners = [(best_label, best)]
    for label, pt in candidates[1:]:
        c = compare_objective(pt, best, d.p, d.q)
        if c > 0:
            best, winners = pt, [(label, pt)]
        elif c == 0:
            winners.append((label, pt))
    return ArgmaxResult(
        point=winners[0][1],
        labels=tuple(lab for lab, _ in winners),
        points=tuple(pt for _, pt in winners),
    )
