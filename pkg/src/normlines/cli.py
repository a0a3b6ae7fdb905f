"""Command-line surface: analysis reports, families, searches, figures.

Every subcommand prints a human-readable report by default and a
canonical JSON document with ``--json`` (sorted keys, two-space indent,
rationals as "num/den" strings, never floats for exact data), so outputs
are byte-stable and machine checkable.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .core import (
    Matrix2,
    Matrix3,
    PrimitiveDirection,
    gram2,
    gram3,
)
from .cone import (
    ConeKind,
    classify_cone,
    cone_form,
    existence3,
    integer_line_search3,
    pivot_reduce,
    plane_integer_basis,
)
from .diophantine import (
    IntBinaryForm,
    SquareRepInstance,
    lift_to_lines,
    piezas_family,
    square_rep_bruteforce,
    two_adic_obstruction,
)
from .planar import (
    FAMILY_VARIANTS,
    SolutionKind,
    existence_condition,
    family_k,
    family_matrix,
    family_solutions,
    solve_lines2,
)
from .render import render_scene2, render_scene3
from .torus import autom_family, matrix_power, solution_lines_for_autom, stable_iterate, unstable_iterate

__all__ = ["main", "build_parser"]

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")
_INT_RE = re.compile(r"^[+-]?\d+$")


class CliError(Exception):
    """A usage or input error; printed to stderr with exit status 2."""


def parse_rational(token: str) -> Fraction:
    """Parse 'p' or 'p/q'; decimals are rejected to avoid precision loss."""
    if not _RATIONAL_RE.match(token):
        raise CliError(
            f"invalid rational {token!r}: expected an integer like '-3' "
            "or a fraction like '3/5' (decimals are not accepted)"
        )
    num, _, den = token.partition("/")
    if den and int(den) == 0:
        raise CliError(f"invalid rational {token!r}: zero denominator")
    return Fraction(token)


def parse_int(token: str) -> int:
    if not _INT_RE.match(token):
        raise CliError(f"invalid integer {token!r}")
    return int(token)


def _rs(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _matrix_json(M) -> list[list[str]]:
    return [[_rs(v) for v in row] for row in M.rows()]


def _matrix2(tokens: Sequence[str]) -> Matrix2:
    vals = [parse_rational(t) for t in tokens]
    return Matrix2.from_rows([vals[0:2], vals[2:4]])


def _matrix3(tokens: Sequence[str]) -> Matrix3:
    vals = [parse_rational(t) for t in tokens]
    return Matrix3.from_rows([vals[0:3], vals[3:6], vals[6:9]])


def _dirs_json(dirs) -> list[list[int]]:
    return [list(d.coords) for d in dirs]


def _json_dump(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _form_text(a: int, b: int, c: int, d: int = 1) -> str:
    lhs = f"{a}*y^2 + {b}*y*z + {c}*z^2".replace("+ -", "- ")
    rhs = "u^2" if d == 1 else f"{d}*u^2"
    return f"{lhs} = {rhs}"


def _square_root_exact(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


# -- analyze2 ------------------------------------------------------------


def _line_report(line) -> dict:
    entry: dict = {
        "rational": line.rational,
        "direction": list(line.direction.coords) if line.rational else None,
        "slope": None,
        "eigenline": line.eigenline,
        "verified": True,
    }
    if not line.rational:
        sl = line.slope
        entry["slope"] = {
            "alpha": sl.alpha,
            "beta": sl.beta,
            "s": sl.s,
            "sign": sl.sign,
        }
    return entry


def _slope_text(sl) -> str:
    op = "+" if sl.sign > 0 else "-"
    return f"y/x = ({sl.alpha} {op} sqrt({sl.s}))/{sl.beta}"


def cmd_analyze2(args) -> tuple[dict, str]:
    A = _matrix2(args.entries)
    g = gram2(A)
    disc = g.p * g.p - (g.m - 1) * (g.n - 1)
    sol = solve_lines2(A)
    k = _square_root_exact(disc)
    report = {
        "command": "analyze2",
        "matrix": _matrix_json(A),
        "gram": {"m": _rs(g.m), "n": _rs(g.n), "p": _rs(g.p)},
        "existence": existence_condition(A),
        "kind": sol.kind.value,
        "discriminant": _rs(disc),
        "k": None if k is None else _rs(k),
        "lines": [_line_report(l) for l in sol.lines],
    }
    out = [
        f"matrix: {_matrix_json(A)}",
        f"gram: m = {_rs(g.m)}, n = {_rs(g.n)}, p = {_rs(g.p)}",
        f"existence: {str(report['existence']).lower()}",
        f"kind: {sol.kind.value}",
        f"discriminant: {_rs(disc)}" + (f" (k = {_rs(k)})" if k is not None else ""),
    ]
    for l in sol.lines:
        if l.rational:
            tag = "eigenline" if l.eigenline else "noninvariant"
            out.append(f"line {l.direction}: rational, {tag}, verified")
        else:
            out.append(f"line {_slope_text(l.slope)}: irrational, verified")
    if sol.kind is SolutionKind.ALL_LINES:
        out.append("every direction preserves the norm")
    return report, "\n".join(out)


# -- analyze3 ------------------------------------------------------------


def cmd_analyze3(args) -> tuple[dict, str]:
    A = _matrix3(args.entries)
    B = gram3(A)
    Q = cone_form(A)
    cls = classify_cone(A)
    basis = None
    if cls.kind is ConeKind.DOUBLE_PLANE:
        basis = plane_integer_basis(cls)

    reduction = None
    reduction_error = None
    try:
        reduction = pivot_reduce(A, args.pivot)
    except ValueError as e:
        reduction_error = str(e)

    obstruction = None
    red_json = None
    if reduction is not None:
        form = reduction.discriminant_form
        fa, fb, fc = int(form.cxx), int(form.cxy), int(form.cyy)
        obstruction = two_adic_obstruction(IntBinaryForm(fa, fb, fc))
        red_json = {
            "pivot": reduction.pivot_axis,
            "linear": [_rs(v) for v in reduction.linear],
            "denominator": _rs(reduction.denominator),
            "discriminant_form": [fa, fb, fc],
            "clearing_multiplier": reduction.clearing_multiplier,
        }

    if cls.kind is ConeKind.ALL_SPACE:
        lines_json = None
        lines_note = "every integer direction is a solution"
    else:
        found = integer_line_search3(A, args.bound)
        lines_json = _dirs_json(found)
        lines_note = None

    report = {
        "command": "analyze3",
        "matrix": _matrix_json(A),
        "gram": [[_rs(v) for v in row] for row in B.matrix],
        "cone_form": [[_rs(v) for v in row] for row in Q.matrix],
        "existence": existence3(A),
        "classification": cls.kind.value,
        "normal": None if cls.normal is None else list(cls.normal.coords),
        "normals": None if cls.normals is None else _dirs_json(cls.normals),
        "line": None if cls.line is None else list(cls.line.coords),
        "plane_basis": None if basis is None else _dirs_json(basis),
        "reduction": red_json,
        "reduction_error": reduction_error,
        "obstruction": obstruction,
        "bound": args.bound,
        "lines": lines_json,
        "lines_note": lines_note,
    }

    out = [
        f"matrix: {_matrix_json(A)}",
        f"existence: {str(report['existence']).lower()}",
        f"classification: {cls.kind.value}",
    ]
    if cls.normal is not None:
        out.append(f"plane normal: {cls.normal}")
    if basis is not None:
        out.append(f"integer basis of the plane: {basis[0]}, {basis[1]}")
    if cls.normals is not None:
        out.append(f"plane normals: {cls.normals[0]}, {cls.normals[1]}")
    if cls.line is not None:
        out.append(f"single line: {cls.line}")
    if reduction is not None:
        u, w = (("x", "y", "z")[i] for i in reduction.others)
        lin = reduction.linear
        form = reduction.discriminant_form
        radical = (
            f"{int(form.cxx)}*{u}^2 + {int(form.cxy)}*{u}*{w} + "
            f"{int(form.cyy)}*{w}^2"
        ).replace("+ -", "- ")
        out.append(
            f"pivot {reduction.pivot_axis} = ({_rs(lin[0])})*{u} + ({_rs(lin[1])})*{w} "
            f"+/- sqrt({radical})/{_rs(reduction.denominator)}"
        )
        out.append(
            "2-adic obstruction: "
            + ("certified, no integer solutions" if obstruction else "inconclusive")
        )
    else:
        out.append(f"pivot reduction unavailable: {reduction_error}")
    if lines_json is None:
        out.append(lines_note)
    else:
        out.append(f"integer lines with |coords| <= {args.bound}: {len(lines_json)}")
        for d in lines_json:
            out.append(f"  <{', '.join(str(c) for c in d)}>")
    return report, "\n".join(out)


# -- family --------------------------------------------------------------


def cmd_family(args) -> tuple[dict, str]:
    variant = FAMILY_VARIANTS[args.variant].with_transpose(args.transpose)
    a, c = parse_rational(args.a), parse_rational(args.c)
    A = family_matrix(variant, a, c)
    k = family_k(variant, a, c)
    sol = solve_lines2(A)
    closed = None
    if args.variant == "lopez" and not args.transpose:
        v1, v2, _ = family_solutions(a, c)
        closed = {"v1": list(v1.coords), "v2": list(v2.coords)}
    report = {
        "command": "family",
        "variant": args.variant,
        "transpose": args.transpose,
        "a": _rs(a),
        "c": _rs(c),
        "matrix": _matrix_json(A),
        "k": _rs(k),
        "kind": sol.kind.value,
        "lines": [_line_report(l) for l in sol.lines],
        "closed_form": closed,
    }
    out = [
        f"variant: {args.variant}" + (" (transposed)" if args.transpose else ""),
        f"matrix: {_matrix_json(A)}",
        f"k = {_rs(k)}",
        f"kind: {sol.kind.value}",
    ]
    for l in sol.lines:
        if l.rational:
            out.append(f"line {l.direction}: verified")
        else:  # pragma: no cover - family lines are always rational
            out.append(f"line {_slope_text(l.slope)}: verified")
    if closed is not None:
        out.append(f"closed form: v1 = <{closed['v1'][0]}, {closed['v1'][1]}>, "
                   f"v2 = <{closed['v2'][0]}, {closed['v2'][1]}>")
    return report, "\n".join(out)


# -- dioph ---------------------------------------------------------------


def cmd_dioph(args) -> tuple[dict, str]:
    a, b, c = (parse_int(t) for t in args.form)
    inst = SquareRepInstance(IntBinaryForm(a, b, c), args.d)
    obstructed = args.d == 1 and two_adic_obstruction(inst.form)
    sols = square_rep_bruteforce(inst, args.bound)
    report = {
        "command": "dioph",
        "form": [a, b, c],
        "d": args.d,
        "equation": _form_text(a, b, c, args.d),
        "obstruction": obstructed,
        "bound": args.bound,
        "solutions": [list(s) for s in sols],
    }
    out = [
        f"equation: {_form_text(a, b, c, args.d)}",
        "2-adic obstruction: "
        + ("certified, no integer solutions" if obstructed else "inconclusive"),
        f"solutions with |y|, |z| <= {args.bound}: {len(sols)}",
    ]
    for y, z, u in sols[:40]:
        out.append(f"  (y, z, u) = ({y}, {z}, {u})")
    if len(sols) > 40:
        out.append(f"  ... {len(sols) - 40} more")
    return report, "\n".join(out)


# -- piezas --------------------------------------------------------------


def cmd_piezas(args) -> tuple[dict, str]:
    a, b, c = (parse_int(t) for t in args.form)
    inst = SquareRepInstance(IntBinaryForm(a, b, c), args.d)
    seed = tuple(parse_int(t) for t in args.seed)
    family = piezas_family(inst, seed)

    A = None
    reduction = None
    if args.matrix is not None:
        A = _matrix3(args.matrix)
        reduction = pivot_reduce(A, args.pivot)
        form = reduction.discriminant_form
        if (int(form.cxx), int(form.cxy), int(form.cyy)) != (a, b, c):
            raise CliError(
                f"matrix reduction yields the form ({int(form.cxx)}, "
                f"{int(form.cxy)}, {int(form.cyy)}), not ({a}, {b}, {c}); "
                "pass the matching form or change --pivot"
            )

    st_pairs = args.st if args.st else [["1", "1"]]
    pairs = []
    for s_tok, t_tok in st_pairs:
        s, t = parse_int(s_tok), parse_int(t_tok)
        y, z, u = family.evaluate(s, t)
        entry: dict = {"st": [s, t], "solution": [y, z, u], "lines": None}
        if reduction is not None and not (y == 0 and z == 0):
            entry["lines"] = _dirs_json(lift_to_lines(A, reduction, (y, z, abs(u))))
        pairs.append(entry)

    report = {
        "command": "piezas",
        "form": [a, b, c],
        "d": args.d,
        "equation": _form_text(a, b, c, args.d),
        "seed": list(seed),
        "matrix": None if A is None else _matrix_json(A),
        "pivot": None if reduction is None else reduction.pivot_axis,
        "pairs": pairs,
    }
    out = [
        f"equation: {_form_text(a, b, c, args.d)}",
        f"seed (m, n, p) = ({seed[0]}, {seed[1]}, {seed[2]})",
    ]
    if A is not None:
        out.append(f"matrix: {_matrix_json(A)} (pivot {reduction.pivot_axis})")
    for entry in pairs:
        s, t = entry["st"]
        y, z, u = entry["solution"]
        out.append(f"(s, t) = ({s}, {t}): (y, z, u) = ({y}, {z}, {u})")
        if entry["lines"] is not None:
            for d in entry["lines"]:
                out.append(f"  line <{', '.join(str(v) for v in d)}>")
    return report, "\n".join(out)


# -- torus ---------------------------------------------------------------


def _quad_json(q) -> dict:
    return {"a": _rs(q.a), "b": _rs(q.b), "d": q.d}


def cmd_torus(args) -> tuple[dict, str]:
    M = autom_family(args.q)
    P = matrix_power(M, args.n)
    lines = solution_lines_for_autom(args.q)
    report = {
        "command": "torus",
        "q": args.q,
        "n": args.n,
        "matrix": [list(r) for r in M.rows],
        "power": [list(r) for r in P],
        "lines": _dirs_json(lines),
    }
    out = [
        f"matrix: {[list(r) for r in M.rows]}",
        f"matrix^{args.n}: {[list(r) for r in P]}",
        f"norm-preserving lines: {lines[0]}, {lines[1]}",
    ]
    if args.q != 0:
        unstable = unstable_iterate(args.q, args.n)
        stable = stable_iterate(args.q, args.n)
        report["unstable"] = [_quad_json(v) for v in unstable]
        report["stable"] = [_quad_json(v) for v in stable]
        out.append(f"unstable iterate: ({unstable[0]}, {unstable[1]})")
        out.append(f"stable iterate: ({stable[0]}, {stable[1]})")
    else:
        report["unstable"] = None
        report["stable"] = None
        out.append("q = 0: the matrix is an involution; no hyperbolic splitting")
    return report, "\n".join(out)


# -- render --------------------------------------------------------------


def cmd_render(args) -> tuple[dict, str]:
    if args.scene == "scene2":
        if len(args.entries) != 4:
            raise CliError("scene2 takes 4 matrix entries")
        if not args.out:
            raise CliError("scene2 requires --out FILE.svg")
        A = _matrix2(args.entries)
        lines = ()
        if args.lines:
            sol = solve_lines2(A)
            if sol.kind is SolutionKind.LINES:
                lines = tuple(sol.rational_directions())
        svg = render_scene2(A, lines, half_width=args.half_width, samples=args.samples)
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(svg)
        report = {
            "command": "render",
            "scene": "scene2",
            "matrix": _matrix_json(A),
            "lines": _dirs_json(lines),
            "out": args.out,
            "bytes": len(svg.encode("utf-8")),
        }
        return report, f"wrote {args.out} ({report['bytes']} bytes)"

    if len(args.entries) != 9:
        raise CliError("scene3 takes 9 matrix entries")
    if not args.mesh_out or not args.svg_out:
        raise CliError("scene3 requires --mesh-out FILE.obj and --svg-out FILE.svg")
    A3 = _matrix3(args.entries)
    mesh, svg = render_scene3(
        A3,
        include_cone=args.cone,
        density=tuple(args.density),
        half_width=args.half_width,
    )
    with open(args.mesh_out, "w", encoding="utf-8") as fh:
        fh.write(mesh)
    with open(args.svg_out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    report = {
        "command": "render",
        "scene": "scene3",
        "matrix": _matrix_json(A3),
        "include_cone": args.cone,
        "mesh_out": args.mesh_out,
        "svg_out": args.svg_out,
        "mesh_bytes": len(mesh.encode("utf-8")),
        "svg_bytes": len(svg.encode("utf-8")),
    }
    return report, (
        f"wrote {args.mesh_out} ({report['mesh_bytes']} bytes) and "
        f"{args.svg_out} ({report['svg_bytes']} bytes)"
    )


# -- wiring --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="normlines",
        description="Exact norm-preserving directions of rational matrices.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit canonical JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    p2 = sub.add_parser("analyze2", parents=[common],
                        help="full report for a 2x2 rational matrix")
    p2.add_argument("entries", nargs=4, metavar="ENTRY",
                    help="row-major entries, e.g. 4 3 -2 -3 or 3/5 ...")
    p2.set_defaults(func=cmd_analyze2)

    p3 = sub.add_parser("analyze3", parents=[common],
                        help="full report for a 3x3 rational matrix")
    p3.add_argument("entries", nargs=9, metavar="ENTRY")
    p3.add_argument("--bound", type=int, default=50,
                    help="coordinate bound for the integer line search")
    p3.add_argument("--pivot", choices=("x", "y", "z"), default=None,
                    help="axis to solve the cone equation for")
    p3.set_defaults(func=cmd_analyze3)

    pf = sub.add_parser("family", parents=[common],
                        help="analyze one member of an off-by-one integer family")
    pf.add_argument("variant", choices=sorted(FAMILY_VARIANTS))
    pf.add_argument("a")
    pf.add_argument("c")
    pf.add_argument("--transpose", action="store_true")
    pf.set_defaults(func=cmd_family)

    pd = sub.add_parser("dioph", parents=[common],
                        help="search a*y^2 + b*y*z + c*z^2 = d*u^2")
    pd.add_argument("form", nargs=3, metavar="COEFF", help="a b c")
    pd.add_argument("--d", type=int, default=1)
    pd.add_argument("--bound", type=int, default=50)
    pd.set_defaults(func=cmd_dioph)

    pp = sub.add_parser("piezas", parents=[common],
                        help="two-parameter solution family from a seed solution")
    pp.add_argument("form", nargs=3, metavar="COEFF", help="a b c")
    pp.add_argument("--d", type=int, default=1)
    pp.add_argument("--seed", nargs=3, required=True, metavar="N", help="m n p")
    pp.add_argument("--st", nargs=2, action="append", metavar="N",
                    help="parameter pair; repeatable (default: 1 1)")
    pp.add_argument("--matrix", nargs=9, default=None, metavar="ENTRY",
                    help="3x3 matrix whose reduction produced the form; "
                         "enables lifting solutions to lines")
    pp.add_argument("--pivot", choices=("x", "y", "z"), default=None)
    pp.set_defaults(func=cmd_piezas)

    pt = sub.add_parser("torus", parents=[common],
                        help="hyperbolic automorphism [[q+1,q],[q,q-1]] powers")
    pt.add_argument("q", type=int)
    pt.add_argument("n", type=int)
    pt.set_defaults(func=cmd_torus)

    pr = sub.add_parser("render", parents=[common],
                        help="write deterministic SVG / mesh figures")
    pr.add_argument("scene", choices=("scene2", "scene3"))
    pr.add_argument("entries", nargs="+", metavar="ENTRY")
    pr.add_argument("--out", default=None, help="scene2 SVG path")
    pr.add_argument("--mesh-out", default=None, help="scene3 mesh path")
    pr.add_argument("--svg-out", default=None, help="scene3 SVG path")
    pr.add_argument("--lines", action="store_true",
                    help="scene2: draw the integer solution lines")
    pr.add_argument("--cone", action="store_true",
                    help="scene3: include the solution set surface")
    pr.add_argument("--half-width", type=float, default=2.0)
    pr.add_argument("--samples", type=int, default=256)
    pr.add_argument("--density", nargs=2, type=int, default=(64, 32),
                    metavar=("NU", "NV"))
    pr.set_defaults(func=cmd_render)

    # let bare negative entries like -3 and -2/3 parse as positionals
    negative_entry = re.compile(r"^-\d+(/\d+)?$")
    for p in [parser, *sub.choices.values()]:
        p._negative_number_matcher = negative_entry

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        report, human = args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.json:
        sys.stdout.write(_json_dump(report))
    else:
        print(human)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
