"""Domain types for F = P / prod(1 - a_i z - b_i w) and hypothesis checks.

Factor indices are 1-based throughout the public API, matching the usual
notation Q_1, ..., Q_m.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Mapping

from .errors import (
    BadRational,
    EmptyFactors,
    ModelSyntaxError,
    ZeroFactor,
    ZeroNumerator,
)

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(value) -> Fraction:
    """Parse ``"p/q"``, ``"-p"`` or a JSON integer into an exact Fraction."""
    if isinstance(value, bool):
        raise BadRational(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise BadRational(f"rationals must be strings like '1/3', got {value!r}")
    match = _RATIONAL_RE.match(value)
    if match is None:
        raise BadRational(f"malformed rational literal {value!r}")
    num, den = match.groups()
    if den is not None and int(den) == 0:
        raise BadRational(f"zero denominator in {value!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(r: Fraction) -> str:
    return str(Fraction(r))


class Poly2:
    """Bivariate polynomial with exact rational coefficients.

    ``terms`` maps exponent pairs ``(alpha, beta)`` to the coefficient of
    ``z**alpha * w**beta``.  Zero coefficients are never stored.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        clean: dict[tuple[int, int], Fraction] = {}
        for (alpha, beta), c in (terms or {}).items():
            if alpha < 0 or beta < 0:
                raise ValueError("exponents must be nonnegative")
            c = Fraction(c)
            if c:
                key = (int(alpha), int(beta))
                clean[key] = clean.get(key, Fraction(0)) + c
                if not clean[key]:
                    del clean[key]
        self._terms = clean

    @classmethod
    def constant(cls, c) -> Poly2:
        return cls({(0, 0): c})

    @classmethod
    def linear(cls, c0, cz, cw) -> Poly2:
        return cls({(0, 0): c0, (1, 0): cz, (0, 1): cw})

    @property
    def terms(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._terms)

    def coeff(self, alpha: int, beta: int) -> Fraction:
        return self._terms.get((alpha, beta), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def total_degree(self) -> int:
        return max((a + b for a, b in self._terms), default=-1)

    def max_degrees(self) -> tuple[int, int]:
        if not self._terms:
            return (-1, -1)
        return (max(a for a, _ in self._terms), max(b for _, b in self._terms))

    def __call__(self, z, w) -> Fraction:
        return sum((c * Fraction(z) ** a * Fraction(w) ** b
                    for (a, b), c in self._terms.items()), Fraction(0))

    def __add__(self, other):
        other = _as_poly(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return Poly2(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly2({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        out: dict[tuple[int, int], Fraction] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return Poly2(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly2.constant(other)
        if not isinstance(other, Poly2):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def restrict_to_line(self, a, b) -> list[Fraction]:
        """Coefficients (lowest degree first) of P restricted to a z + b w = 1.

        The line is parametrised as ``z = t, w = (1 - a t)/b`` when ``b != 0``
        and as ``z = 1/a, w = t`` otherwise.
        """
        a, b = Fraction(a), Fraction(b)
        if b:
            z_lin, w_lin = (Fraction(0), Fraction(1)), (1 / b, -a / b)
        elif a:
            z_lin, w_lin = (1 / a, Fraction(0)), (Fraction(0), Fraction(1))
        else:
            raise ValueError("degenerate line 0 = 1")
        out = [Fraction(0)] * (max(self.total_degree(), 0) + 1)
        for (alpha, beta), c in self._terms.items():
            zp = _lin_power(z_lin, alpha)
            wp = _lin_power(w_lin, beta)
            for i, u in enumerate(zp):
                if not u:
                    continue
                for j, v in enumerate(wp):
                    out[i + j] += c * u * v
        while len(out) > 1 and not out[-1]:
            out.pop()
        return out

    def __repr__(self):
        return f"Poly2({self._terms!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), -kv[0][0])):
            mono = "*".join(
                s for s in (_var("z", a), _var("w", b)) if s
            )
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def _var(name, e):
    if e == 0:
        return ""
    return name if e == 1 else f"{name}^{e}"


def _as_poly(x) -> Poly2:
    if isinstance(x, Poly2):
        return x
    return Poly2.constant(x)


def _lin_power(lin: tuple[Fraction, Fraction], n: int) -> list[Fraction]:
    c0, c1 = lin
    return [comb(n, i) * c0 ** (n - i) * c1 ** i for i in range(n + 1)]


@dataclass(frozen=True)
class LinearFactor:
    """The factor Q = 1 - a z - b w."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if not self.a and not self.b:
            raise ZeroFactor("factor with a = b = 0 is the constant 1")

    @property
    def slope(self) -> Fraction:
        """a/b, the ordering key of active edges (requires b != 0)."""
        return self.a / self.b

    def poly(self) -> Poly2:
        return Poly2.linear(1, -self.a, -self.b)

    def __call__(self, z, w) -> Fraction:
        return 1 - self.a * z - self.b * w


@dataclass(frozen=True)
class GFModel:
    numerator: Poly2
    factors: tuple[LinearFactor, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise EmptyFactors("at least one linear factor is required")
        if self.numerator.is_zero():
            raise ZeroNumerator("numerator P is identically zero")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[object, object]],
                   numerator: Poly2 | None = None) -> GFModel:
        """Build a model from ``(a_i, b_i)`` pairs; P defaults to 1."""
        facs = tuple(LinearFactor(Fraction(a), Fraction(b)) for a, b in pairs)
        return cls(numerator if numerator is not None else Poly2.constant(1), facs)

    @property
    def m(self) -> int:
        return len(self.factors)

    def factor(self, i: int) -> LinearFactor:
        if not 1 <= i <= len(self.factors):
            raise IndexError(f"factor index {i} outside 1..{len(self.factors)}")
        return self.factors[i - 1]

    def indices(self) -> range:
        return range(1, self.m + 1)

    def with_numerator(self, numerator: Poly2) -> GFModel:
        return GFModel(numerator, self.factors)

    def subset(self, idx: Iterable[int]) -> GFModel:
        """Model with P = 1 and only the listed factors (in the given order)."""
        return GFModel(Poly2.constant(1), tuple(self.factor(i) for i in idx))

    def to_json(self) -> str:
        doc = {
            "numerator": [
                {"z": a, "w": b, "coeff": format_rational(c)}
                for (a, b), c in sorted(self.numerator.terms.items())
            ],
            "factors": [
                {"a": format_rational(f.a), "b": format_rational(f.b)}
                for f in self.factors
            ],
        }
        return json.dumps(doc, indent=2)


def parse_model(text: str) -> GFModel:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelSyntaxError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ModelSyntaxError("model must be a JSON object")
    unknown = set(doc) - {"numerator", "factors"}
    if unknown:
        raise ModelSyntaxError(f"unknown keys: {sorted(unknown)}")
    if "factors" not in doc:
        raise ModelSyntaxError("missing key 'factors'")

    raw_factors = doc["factors"]
    if not isinstance(raw_factors, list):
        raise ModelSyntaxError("'factors' must be an array")
    if not raw_factors:
        raise EmptyFactors("factor list is empty")
    factors = []
    for n, item in enumerate(raw_factors, 1):
        _check_keys(item, {"a", "b"}, f"factor {n}")
        factors.append(LinearFactor(parse_rational(item["a"]), parse_rational(item["b"])))

    raw_num = doc.get("numerator", [{"z": 0, "w": 0, "coeff": "1"}])
    if not isinstance(raw_num, list):
        raise ModelSyntaxError("'numerator' must be an array")
    terms: dict[tuple[int, int], Fraction] = {}
    for n, item in enumerate(raw_num, 1):
        _check_keys(item, {"z", "w", "coeff"}, f"numerator term {n}")
        alpha, beta = item["z"], item["w"]
        for e in (alpha, beta):
            if isinstance(e, bool) or not isinstance(e, int) or e < 0:
                raise ModelSyntaxError(f"numerator term {n}: exponents must be nonnegative integers")
        key = (alpha, beta)
        terms[key] = terms.get(key, Fraction(0)) + parse_rational(item["coeff"])
    return GFModel(Poly2(terms), tuple(factors))


def _check_keys(item, expected: set[str], where: str):
    if not isinstance(item, dict):
        raise ModelSyntaxError(f"{where}: expected an object")
    if set(item) != expected:
        extra = set(item) - expected
        missing = expected - set(item)
        raise ModelSyntaxError(f"{where}: unknown keys {sorted(extra)}, missing {sorted(missing)}")


def delta(model: GFModel, i: int, j: int) -> Fraction:
    fi, fj = model.factor(i), model.factor(j)
    return fi.a * fj.b - fj.a * fi.b


def delta3(model: GFModel, i: int, j: int, l: int) -> Fraction:
    """det of rows (1,1,1), (a_i,a_j,a_l), (b_i,b_j,b_l)."""
    fi, fj, fl = model.factor(i), model.factor(j), model.factor(l)
    return ((fj.a * fl.b - fl.a * fj.b)
            - (fi.a * fl.b - fl.a * fi.b)
            + (fi.a * fj.b - fj.a * fi.b))


@dataclass(frozen=True)
class ValidationReport:
    cond1_linear: bool = True
    cond2_general_position: bool = True
    cond2_offenders: tuple[tuple[int, ...], ...] = ()
    cond3_positive: bool = True
    cond3_offenders: tuple[int, ...] = ()
    irreducible: bool = True
    irreducible_offenders: tuple[int, ...] = ()
    # None when the polygon cannot be built (conditions II/III fail)
    numerator_nonzero_at_vertices: bool | None = True
    numerator_offenders: tuple = field(default=())

    @property
    def all_pass(self) -> bool:
        return (self.cond1_linear and self.cond2_general_position
                and self.cond3_positive and self.irreducible
                and self.numerator_nonzero_at_vertices is True)

    def lines(self) -> list[str]:
        def flag(ok):
            return "pass" if ok else ("not checked" if ok is None else "FAIL")

        out = [
            f"condition (I) linear factors: {flag(self.cond1_linear)}",
            f"condition (II) general position: {flag(self.cond2_general_position)}"
            + _offenders(self.cond2_offenders),
            f"condition (III) positive coefficients: {flag(self.cond3_positive)}"
            + _offenders(self.cond3_offenders),
            f"P/Q irreducible: {flag(self.irreducible)}" + _offenders(self.irreducible_offenders),
            f"P nonzero at off-axis vertices: {flag(self.numerator_nonzero_at_vertices)}"
            + _offenders(tuple(str(v) for v in self.numerator_offenders)),
        ]
        return out


def _offenders(items) -> str:
    return f" (offending: {', '.join(map(str, items))})" if items else ""


def validate(model: GFModel) -> ValidationReport:
    idx = list(model.indices())
    cond2_bad: list[tuple[int, ...]] = [
        (i, j) for i, j in combinations(idx, 2) if delta(model, i, j) == 0
    ]
    cond2_bad += [
        t for t in combinations(idx, 3) if delta3(model, *t) == 0
    ]
    cond3_bad = tuple(i for i in idx if model.factor(i).a <= 0 or model.factor(i).b <= 0)
    irreducible_bad = tuple(
        i for i in idx
        if all(c == 0 for c in model.numerator.restrict_to_line(model.factor(i).a,
                                                                 model.factor(i).b))
    )

    vertex_ok: bool | None = None
    vertex_bad: tuple = ()
    if not cond2_bad and not cond3_bad:
        from .fan import build_polygon

        poly = build_polygon(model)
        vertex_bad = tuple(v for v in poly.vertices
                           if v.z != 0 and v.w != 0 and model.numerator(v.z, v.w) == 0)
        vertex_ok = not vertex_bad

    return ValidationReport(
        cond1_linear=True,
        cond2_general_position=not cond2_bad,
        cond2_offenders=tuple(cond2_bad),
        cond3_positive=not cond3_bad,
        cond3_offenders=cond3_bad,
        irreducible=not irreducible_bad,
        irreducible_offenders=irreducible_bad,
        numerator_nonzero_at_vertices=vertex_ok,
        numerator_offenders=vertex_bad,
    )


def random_valid_model(rng, m: int, *, max_num: int = 9, max_den: int = 9,
                       numerator: Poly2 | None = None) -> GFModel:
    """Draw a model with m factors passing conditions (II) and (III).

    ``rng`` is a :class:`random.Random`.  Coefficients are positive rationals
    num/den with ``1 <= num <= max_num`` and ``1 <= den <= max_den``.
    """
    while True:
        pairs = [
            (Fraction(rng.randint(1, max_num), rng.randint(1, max_den)),
             Fraction(rng.randint(1, max_num), rng.randint(1, max_den)))
            for _ in range(m)
        ]
        model = GFModel.from_pairs(pairs, numerator)
        report = validate(model)
        if report.all_pass:
            return model
