"""Acceptance gate: ten end-to-end criteria, one test (and one report line) each.

Every numeric claim is checked exactly unless a tolerance is stated inline.
"""

import random
import time
from fractions import Fraction as F

from normlines import (
    FAMILY_VARIANTS,
    PARAMETRIC_MATRIX,
    ConeKind,
    IntBinaryForm,
    Matrix2,
    Matrix3,
    QuadElement,
    SolutionKind,
    SquareRepInstance,
    classify_cone,
    ellipse_points,
    existence_condition,
    family_matrix,
    family_solutions,
    gram2,
    integer_line_search3,
    integer_lines2,
    lift_to_lines,
    matrix_power,
    normalize_direction,
    parametric_lines,
    piezas_family,
    pivot_reduce,
    plane_integer_basis,
    render_scene2,
    render_scene3,
    solve_lines2,
    square_rep_bruteforce,
    two_adic_obstruction,
    unstable_iterate,
    verify_norm_preserving,
)

FIRST_2D = Matrix2.from_rows([[4, 3], [-2, -3]])
SYMMETRIC_HALF = Matrix3.from_rows([[1, 1, F(1, 2)], [1, F(1, 2), 1], [F(1, 2), 1, 1]])
ALL_TWOS_OFF = Matrix3.from_rows([[1, 2, 2], [2, 1, 2], [2, 2, 1]])
SQUARES_MATRIX = Matrix3.from_rows([[1, 2, 3], [3, 4, 5], [2, 3, 4]])
LOPEZ = FAMILY_VARIANTS["lopez"]


def coords(directions):
    return [d.coords for d in directions]


def test_01_two_by_two_example_exact_lines_within_1ms():
    lines = integer_lines2(FIRST_2D)
    assert coords(lines) == [(1, -1), (17, -19)]
    for d in lines:
        assert verify_norm_preserving(FIRST_2D, d.coords)
    timings = []
    for _ in range(11):
        start = time.perf_counter()
        integer_lines2(FIRST_2D)
        timings.append(time.perf_counter() - start)
    best = min(timings)
    assert best < 1e-3, f"solver took {best:.6f}s"


def test_02_eigenline_and_noninvariant_line_flags():
    sol = solve_lines2(Matrix2.from_rows([[1, -8], [0, 3]]))
    assert sol.kind is SolutionKind.LINES
    flagged = {l.direction.coords: l.eigenline for l in sol.lines}
    assert flagged == {(1, 0): True, (9, 2): False}
    for c in flagged:
        assert verify_norm_preserving(Matrix2.from_rows([[1, -8], [0, 3]]), c)


def test_03_existence_condition_iff_solvable_on_random_matrices():
    rng = random.Random(20260814)

    def entry():
        return F(rng.randint(-30, 30), rng.randint(1, 12))

    start = time.perf_counter()
    for _ in range(10_000):
        A = Matrix2.from_rows([[entry(), entry()], [entry(), entry()]])
        nonempty = solve_lines2(A).kind is not SolutionKind.NO_REAL_LINES
        assert existence_condition(A) == nonempty
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0, f"property sweep took {elapsed:.2f}s"


def test_04_family_sweep_and_closed_forms():
    for a in range(-20, 21):
        for c in range(-20, 21):
            v1, v2, k = family_solutions(a, c)
            assert k == a + c - 1
            A = family_matrix(LOPEZ, a, c)
            g = gram2(A)
            disc = g.p * g.p - (g.m - 1) * (g.n - 1)
            assert disc == k * k
            assert verify_norm_preserving(A, v1.coords)
            assert verify_norm_preserving(A, v2.coords)
    assert coords(integer_lines2(family_matrix(LOPEZ, 2, -3))) == [(1, -1), (4, -3)]
    assert coords(integer_lines2(family_matrix(LOPEZ, 3, -2))) == [(1, -1)]


def test_05_unsolvable_form_certificate_and_exhaustive_searches():
    start = time.perf_counter()
    assert two_adic_obstruction(IntBinaryForm(39, 48, 39)) is True
    inst = SquareRepInstance(IntBinaryForm(39, 48, 39))
    assert square_rep_bruteforce(inst, 500) == []
    assert integer_line_search3(SYMMETRIC_HALF, 200) == []
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0, f"searches took {elapsed:.2f}s"


def test_06_double_plane_normal_and_integer_basis():
    cls = classify_cone(ALL_TWOS_OFF)
    assert cls.kind is ConeKind.DOUBLE_PLANE
    assert cls.normal.coords == (1, 1, 1)
    assert coords(plane_integer_basis(cls)) == [(1, 0, -1), (0, 1, -1)]


def test_07_parametric_family_values_and_completeness():
    start = time.perf_counter()
    assert coords(parametric_lines(1, 4)) == [(11, -15, 10), (1, 3, -2)]
    assert coords(parametric_lines(1, 1)) == [(1, 3, -4), (13, 15, -20)]
    image = set()
    for v in range(-8, 9):
        for r in range(-40, 41):
            if v == 0 and r == 0:
                continue
            image.update(parametric_lines(v, r))
    found = integer_line_search3(PARAMETRIC_MATRIX, 50)
    assert found and all(d in image for d in found)
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0, f"completeness check took {elapsed:.2f}s"


def test_08_polynomial_solution_family_identity_and_lifted_vectors():
    inst = SquareRepInstance(IntBinaryForm(36, 52, 39))
    fam = piezas_family(inst, (1, 0, 6))
    rng = random.Random(441)
    for _ in range(100):
        s, t = rng.randint(-50, 50), rng.randint(-50, 50)
        y, z, u = fam.evaluate(s, t)
        assert 36 * y * y + 52 * y * z + 39 * z * z == u * u
    reduction = pivot_reduce(SQUARES_MATRIX, "x")
    form = reduction.discriminant_form
    assert (form.cxx, form.cxy, form.cyy) == (36, 52, 39)
    y1, z1, u1 = fam.evaluate(1, 1)
    y2, z2, u2 = fam.evaluate(1, 2)
    lifted = coords(lift_to_lines(SQUARES_MATRIX, reduction, (y1, z1, abs(u1))))
    lifted += coords(lift_to_lines(SQUARES_MATRIX, reduction, (y2, z2, abs(u2))))
    published = [
        (-2402, -39, 1612),
        (-302, -3, 124),
        (-4976, -1560, 4576),
        (-656, -120, 352),
    ]
    assert lifted == [normalize_direction(p).coords for p in published]
    for c in lifted:
        assert verify_norm_preserving(SQUARES_MATRIX, c)


def test_09_toral_automorphism_powers_and_exact_iterates():
    assert matrix_power([[3, 2], [2, 1]], 10) == (
        (1346269, 832040),
        (832040, 514229),
    )
    x10, y10 = unstable_iterate(2, 10)
    assert x10 == QuadElement(514229, F(1149851, 5), 5)
    assert y10 == QuadElement(317811, F(710647, 5), 5)
    lam = QuadElement(2, 1, 5)
    x0, y0 = unstable_iterate(2, 0)
    for n in range(31):
        p = matrix_power([[3, 2], [2, 1]], n)
        scale = lam**n
        assert p[0][0] * x0 + p[0][1] * y0 == scale * x0
        assert p[1][0] * x0 + p[1][1] * y0 == scale * y0
        assert unstable_iterate(2, n) == (scale * x0, scale * y0)


def test_10_figure_regeneration_is_deterministic_and_accurate():
    second = family_matrix(LOPEZ, 2, -3)
    second_lines = integer_lines2(second)
    jobs = (
        lambda: render_scene2(FIRST_2D),
        lambda: render_scene2(second, second_lines),
        lambda: render_scene3(SYMMETRIC_HALF, include_cone=False),
        lambda: render_scene3(SYMMETRIC_HALF, include_cone=True),
    )
    for job in jobs:
        assert job() == job()
    for A in (FIRST_2D, second):
        g = gram2(A)
        m, n, p = float(g.m), float(g.n), float(g.p)
        for x, y in ellipse_points(A, 256):
            assert abs(m * x * x + 2.0 * p * x * y + n * y * y - 1.0) <= 1e-9
