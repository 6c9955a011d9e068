"""Command-line front end.

Exit codes: 0 success, 1 usage/parse error, 2 hypothesis failure (model fails
validation without --force), 3 boundary or degenerate direction, 4 failed
verification.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from fractions import Fraction

import mpmath

from . import asym, fan as fanmod, harness, parfrac, series
from .errors import HypothesisFailure, RatDiagError
from .model import parse_model, validate

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_DIRECTION, EXIT_VERIFY = 0, 1, 2, 3, 4


def _num(x) -> str:
    """Exact text for rationals, 12 significant digits otherwise."""
    if isinstance(x, (int, Fraction)):
        return str(x)
    return mpmath.nstr(x, 12)


def _load(path):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return parse_model(text)


def _gate(model, args, *, allow_force=True):
    report = validate(model)
    if report.all_pass or (allow_force and args.force):
        return report
    failed = [line for line in report.lines() if "FAIL" in line]
    raise HypothesisFailure("; ".join(failed) or "model fails validation")


def _k_list(args):
    if args.ks:
        return sorted({int(k) for k in args.ks.split(",")})
    ks = [k for k in harness.DEFAULT_KS if k < args.kmax]
    return ks + [args.kmax]


def _write(out, args, text):
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        out.write(text)


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- subcommands -------------------------------------------------------------

def cmd_analyze(args, out):
    model = _load(args.model)
    report = validate(model)
    print("validation:", file=out)
    for line in report.lines():
        print("  " + line, file=out)
    if not report.all_pass:
        if not args.force:
            failed = [line for line in report.lines() if "FAIL" in line]
            raise HypothesisFailure("; ".join(failed) or "model fails validation")
        if not (report.cond2_general_position and report.cond3_positive):
            return EXIT_OK
    poly = fanmod.build_polygon(model)
    fan = fanmod.build_fan(model, poly)
    print("polygon M vertices: " + ", ".join(map(str, poly.vertices)), file=out)
    print("active lines (z-axis side first): " + ", ".join(map(str, poly.edge_lines)), file=out)
    print("fan:", file=out)
    out.write(_fan_text(fan))
    if model.m >= 2:
        consts = parfrac.decompose(model)
        print("partial fractions:", file=out)
        for (i, j), a in sorted(consts.items()):
            print(f"  A_{i},{j} = {a}", file=out)
    print("regimes:", file=out)
    for cone in fan:
        if cone.kind == "saddle":
            (i,) = cone.lines
            print(f"  {cone.name}: base (p/((p+q)a_{i}), q/((p+q)b_{i})), "
                  "C/sqrt(k) * P / (z^(kp+1) w^(kq+1))", file=out)
        else:
            i, j = cone.lines
            c = asym.vertex_constant(model, None, i, j)
            print(f"  {cone.name}: base {cone.base}, C = {c}, "
                  "C * P / (z^(kp+1) w^(kq+1))", file=out)
    return EXIT_OK


def cmd_expand(args, out):
    model = _load(args.model)
    _gate(model, args)
    table = series.expand(model, args.xmax, args.ymax)
    _write(out, args, _csv(table.rows(), ["x", "y", "numerator", "denominator"]))
    return EXIT_OK


def cmd_coeff(args, out):
    model = _load(args.model)
    _gate(model, args)
    print(series.coeff(model, args.x, args.y), file=out)
    return EXIT_OK


def cmd_decompose(args, out):
    model = _load(args.model)
    _gate(model, args)
    consts = parfrac.decompose(model)
    rows = [(i, j, a.numerator, a.denominator) for (i, j), a in sorted(consts.items())]
    text = _csv(rows, ["i", "j", "A_num", "A_den"])
    ok = parfrac.verify_decomposition(model, consts)
    _write(out, args, text)
    print(f"verification: {'exact identity holds' if ok else 'FAILED'}", file=out)
    return EXIT_OK if ok else EXIT_VERIFY


def _fan_text(fan) -> str:
    lines = []
    for cone in fan:
        g1, g2 = cone.generators
        extra = f", vertex {cone.base}" if cone.kind == "vertex" else \
            f", edge {cone.edge[0]} -- {cone.edge[1]}"
        lines.append(f"  {cone.name}: generators {g1}, {g2}{extra}\n")
    return "".join(lines)


def fan_csv(fan) -> str:
    rows = []
    for cone in fan:
        (g1, g2), b = cone.generators, cone.base
        i = cone.lines[0]
        j = cone.lines[1] if cone.kind == "vertex" else ""
        rows.append((cone.kind, i, j, g1.p, g1.q, g2.p, g2.q, b.z, b.w))
    return _csv(rows, ["kind", "i", "j", "gen1_p", "gen1_q", "gen2_p", "gen2_q",
                       "base_z", "base_w"])


def fan_svg(fan, polygon, size: int = 400) -> str:
    """Static picture: polygon M on the left, cone rays on the right."""
    pad = 20
    verts = polygon.vertices
    zmax = max(float(v.z) for v in verts)
    wmax = max(float(v.w) for v in verts)
    scale = (size - 2 * pad) / max(zmax, wmax)

    def pt(z, w, x0):
        return f"{x0 + pad + float(z) * scale:.3f},{size - pad - float(w) * scale:.3f}"

    poly_pts = " ".join(pt(v.z, v.w, 0) for v in verts)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{2 * size}" height="{size}" '
        f'viewBox="0 0 {2 * size} {size}">',
        f'<polygon points="{poly_pts}" fill="#dde8f5" stroke="#1f4e79" stroke-width="1.5"/>',
        f'<text x="{pad}" y="{pad}" font-size="12">M</text>',
    ]
    reach = size - 2 * pad
    rays = []
    for cone in fan:
        for g in cone.generators:
            if g not in rays:
                rays.append(g)
    for g in rays:
        norm = (g.p ** 2 + g.q ** 2) ** 0.5
        ex = size + pad + reach * g.p / norm
        ey = size - pad - reach * g.q / norm
        parts.append(f'<line x1="{size + pad}" y1="{size - pad}" x2="{ex:.3f}" y2="{ey:.3f}" '
                     f'stroke="#444" stroke-width="1"/>')
        parts.append(f'<text x="{ex:.3f}" y="{ey:.3f}" font-size="10">{g}</text>')
    for cone in fan:
        g1, g2 = cone.generators
        mp_, mq = g1.p / _len(g1) + g2.p / _len(g2), g1.q / _len(g1) + g2.q / _len(g2)
        n = (mp_ ** 2 + mq ** 2) ** 0.5
        lx = size + pad + 0.6 * reach * mp_ / n
        ly = size - pad - 0.6 * reach * mq / n
        parts.append(f'<text x="{lx:.3f}" y="{ly:.3f}" font-size="12" '
                     f'fill="#8b0000">{cone.name}</text>')
    parts.append("</svg>\n")
    return "\n".join(parts)


def _len(g):
    return (g.p ** 2 + g.q ** 2) ** 0.5


def emit_plot_data(fan, polygon, path, fmt: str):
    if fmt == "csv":
        text = fan_csv(fan)
    elif fmt == "svg":
        text = fan_svg(fan, polygon)
    else:
        raise ValueError(f"unknown plot format {fmt!r}")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return path


def cmd_fan(args, out):
    model = _load(args.model)
    _gate(model, args)
    fan = fanmod.build_fan(model)
    if args.emit == "text":
        _write(out, args, _fan_text(fan))
    elif args.output:
        emit_plot_data(fan, fan.polygon, args.output, args.emit)
    else:
        out.write(fan_csv(fan) if args.emit == "csv" else fan_svg(fan, fan.polygon))
    return EXIT_OK


def cmd_asymptotic(args, out):
    model = _load(args.model)
    _gate(model, args, allow_force=False)
    term = asym.main_term(model, None, None, args.p, args.q)
    const = term.exact_constant if term.exact_constant is not None else term.constant
    print(f"kind: {term.label}", file=out)
    print(f"direction: {term.direction}", file=out)
    print(f"base: z = {term.base.z}, w = {term.base.w}", file=out)
    print(f"constant C: {_num(const)}", file=out)
    print(f"P(z,w): {term.numerator_value}", file=out)
    print(f"f(kp,kq) ~ {term.formula()}", file=out)
    return EXIT_OK


def cmd_verify(args, out):
    model = _load(args.model)
    _gate(model, args)
    report = harness.verify(model, args.p, args.q, _k_list(args), args.tol)
    if args.emit == "csv":
        rows = [(r.k, _num(r.exact_log), _num(r.pred_log), _num(r.ratio)) for r in report.rows]
        _write(out, args, _csv(rows, ["k", "exact_log", "pred_log", "ratio"]))
    else:
        print(f"regime {report.regime}, direction {report.direction}", file=out)
        print(f"{'k':>6} {'ln|f(kp,kq)|':>20} {'ln|main term|':>20} {'ratio':>16}", file=out)
        for r in report.rows:
            print(f"{r.k:>6} {_num(r.exact_log):>20} {_num(r.pred_log):>20} "
                  f"{_num(r.ratio):>16}", file=out)
    status = "PASS" if report.passed else "FAIL"
    print(f"{status}: final |ratio-1| = {report.final_error:.3e} (tol {report.tolerance}), "
          f"monotone tail: {report.trend_monotone}", file=out)
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_horn(args, out):
    model = _load(args.model)
    _gate(model, args)
    rows = harness.horn_table(model, args.p, args.q, _k_list(args))
    if args.emit == "csv":
        data = [(r.k, _num(mpmath.mpf(r.empirical[0].numerator) / r.empirical[0].denominator),
                 _num(mpmath.mpf(r.empirical[1].numerator) / r.empirical[1].denominator),
                 r.limit[0], r.limit[1], f"{r.error:.6e}") for r in rows]
        _write(out, args, _csv(data, ["k", "ratio_x", "ratio_y", "limit_x", "limit_y", "error"]))
    else:
        lim = rows[0].limit
        print(f"Horn limit (1/z, 1/w) = ({lim[0]}, {lim[1]})", file=out)
        print(f"{'k':>6} {'f(x+1,y)/f(x,y)':>18} {'f(x,y+1)/f(x,y)':>18} {'rel. error':>12}",
              file=out)
        for r in rows:
            print(f"{r.k:>6} {float(r.empirical[0]):>18.10g} {float(r.empirical[1]):>18.10g} "
                  f"{r.error:>12.3e}", file=out)
    if args.tol is not None and rows[-1].error > args.tol:
        print(f"FAIL: final error {rows[-1].error:.3e} > tol {args.tol}", file=out)
        return EXIT_VERIFY
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ratdiag",
        description="Diagonal asymptotics of bivariate rational functions with linear poles.")
    parser.add_argument("--prec", type=int, default=series.PREC,
                        help="raise the working precision (bits) of real-valued quantities")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, direction=False):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("model", help="model JSON file ('-' for stdin)")
        sp.add_argument("--force", action="store_true",
                        help="proceed even if the model fails validation")
        if direction:
            sp.add_argument("-p", type=Fraction, required=True)
            sp.add_argument("-q", type=Fraction, required=True)
        sp.set_defaults(func=func)
        return sp

    add("analyze", cmd_analyze, "validation report, polygon, fan, partial fractions")

    sp = add("expand", cmd_expand, "exact coefficient table as CSV")
    sp.add_argument("--xmax", type=int, required=True)
    sp.add_argument("--ymax", type=int, required=True)
    sp.add_argument("-o", "--output")

    sp = add("coeff", cmd_coeff, "a single exact coefficient f(x, y)")
    sp.add_argument("x", type=int)
    sp.add_argument("y", type=int)

    sp = add("decompose", cmd_decompose, "partial-fraction constants A_ij as CSV")
    sp.add_argument("-o", "--output")

    sp = add("fan", cmd_fan, "cone decomposition of directions")
    sp.add_argument("--emit", choices=("text", "csv", "svg"), default="text")
    sp.add_argument("-o", "--output")

    add("asymptotic", cmd_asymptotic, "leading asymptotic term along (p, q)", direction=True)

    for name, func, help_, tol in (
        ("verify", cmd_verify, "compare the main term with the exact series", 0.05),
        ("horn", cmd_horn, "Horn-vector ratios along the diagonal", None),
    ):
        sp = add(name, func, help_, direction=True)
        sp.add_argument("--kmax", type=int, default=100)
        sp.add_argument("--ks", help="comma-separated k values (overrides --kmax ladder)")
        sp.add_argument("--tol", type=float, default=tol)
        sp.add_argument("--emit", choices=("text", "csv"), default="text")
        sp.add_argument("-o", "--output")
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        with mpmath.workprec(max(args.prec, 53)):
            return args.func(args, out)
    except RatDiagError as exc:
        print(f"error [{exc.code}]: {exc}", file=err)
        return exc.exit_code
    except (OSError, ValueError) as exc:
        print(f"error [{type(exc).__name__}]: {exc}", file=err)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
