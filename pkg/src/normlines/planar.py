"""Norm-preserving directions of 2x2 rational matrices.

A direction (x, y) keeps its length under A exactly when

    phi(x, y) = (m - 1) x^2 + 2 p x y + (n - 1) y^2 = 0,

where m, n are the squared column norms of A and p the column inner
product.  This module solves that equation completely, classifies the
result, and provides the parametric families of integer matrices whose
solution lines are themselves integral.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .core import (
    BinaryForm,
    GramForm2,
    Matrix2,
    PrimitiveDirection,
    RationalLike,
    gram2,
    normalize_direction,
    rat,
    verify_norm_preserving,
)

__all__ = [
    "SolutionKind",
    "IrrationalSlope",
    "PlanarLine",
    "LineSolution2",
    "existence_condition",
    "solve_lines2",
    "integer_lines2",
    "is_eigenline",
    "FamilyVariant",
    "FAMILY_VARIANTS",
    "family_matrix",
    "family_solutions",
    "pythagorean_family",
]


class SolutionKind(enum.Enum):
    NO_REAL_LINES = "no_real_lines"
    ALL_LINES = "all_lines"
    LINES = "lines"


@dataclass(frozen=True)
class IrrationalSlope:
    """Slope y/x = (alpha + sign*sqrt(s))/beta with integer alpha, beta, s.

    s is positive and never a perfect square, so the slope is irrational
    and the line carries no integer point besides the origin.
    """

    alpha: int
    beta: int
    s: int
    sign: int

    def __post_init__(self) -> None:
        if self.sign not in (-1, 1):
            raise ValueError("sign must be +1 or -1")
        if self.s <= 0 or math.isqrt(self.s) ** 2 == self.s:
            raise ValueError("s must be positive and not a perfect square")
        if self.beta == 0:
            raise ValueError("beta must be nonzero")


@dataclass(frozen=True)
class PlanarLine:
    """One norm-preserving line: rational with a primitive direction, or
    irrational with an exact quadratic slope."""

    rational: bool
    direction: Optional[PrimitiveDirection] = None
    slope: Optional[IrrationalSlope] = None
    eigenline: Optional[bool] = None

    def __post_init__(self) -> None:
        if self.rational and self.direction is None:
            raise ValueError("rational lines need a direction")
        if not self.rational and self.slope is None:
            raise ValueError("irrational lines need a slope")


@dataclass(frozen=True)
class LineSolution2:
    """Complete solution set of phi = 0: none, all, or one-to-two lines."""

    kind: SolutionKind
    lines: tuple[PlanarLine, ...] = ()

    def rational_directions(self) -> list[PrimitiveDirection]:
        return [l.direction for l in self.lines if l.rational]


def existence_condition(A: Matrix2) -> bool:
    """Whether A admits a real norm-preserving direction.

    Equivalent to the entry inequality a^2 + b^2 + c^2 + d^2 >= 1 + det(A)^2.
    """
    s = A.a * A.a + A.b * A.b + A.c * A.c + A.d * A.d
    dt = A.det()
    return s >= 1 + dt * dt


def is_eigenline(A: Matrix2, v: PrimitiveDirection) -> bool:
    """True when A maps the line spanned by v to itself."""
    wx, wy = A.apply(tuple(v))
    return wx * v[1] - wy * v[0] == 0


def _verify_quadratic_line(g: GramForm2, slope: IrrationalSlope) -> bool:
    """Exact check that the irrational line satisfies phi = 0.

    The direction (beta, alpha + sign*sqrt(s)) is plugged into phi and the
    result split into rational part + coefficient * sqrt(s); both must
    vanish identically.
    """
    phi = g.norm_change_form()
    a, b = Fraction(slope.alpha), Fraction(slope.beta)
    s = Fraction(slope.s)
    # y = a + t, t^2 = s, x = b
    rational_part = (
        phi.cxx * b * b + phi.cxy * b * a + phi.cyy * (a * a + s)
    )
    radical_part = phi.cxy * b * Fraction(slope.sign) + phi.cyy * 2 * a * Fraction(slope.sign)
    return rational_part == 0 and radical_part == 0


def solve_lines2(A: Matrix2) -> LineSolution2:
    """Solve phi(x, y) = 0 completely for the lines preserved in length by A.

    Cases: phi identically zero (orthogonal A, every line works); the
    y^2 coefficient vanishes and phi factors with x as a factor; otherwise
    the quadratic formula in the slope y/x decides everything through the
    sign and squareness of the discriminant.
    """
    g = gram2(A)
    phi = g.norm_change_form()
    if phi.is_zero():
        return LineSolution2(SolutionKind.ALL_LINES)
    ax, bx, cx, _ = phi.scaled_integer()

    def rational_line(vx: int, vy: int) -> PlanarLine:
        d = normalize_direction((vx, vy))
        return PlanarLine(rational=True, direction=d, eigenline=is_eigenline(A, d))

    if cx == 0:
        # phi = x (ax*x + bx*y): the y-axis, plus the line ax*x + bx*y = 0.
        found = [rational_line(0, 1), rational_line(bx, -ax)]
        uniq = sorted({l.direction: l for l in found}.values(), key=lambda l: l.direction)
        return LineSolution2(SolutionKind.LINES, tuple(uniq))

    disc = bx * bx - 4 * ax * cx
    if disc < 0:
        return LineSolution2(SolutionKind.NO_REAL_LINES)
    if disc == 0:
        return LineSolution2(SolutionKind.LINES, (rational_line(2 * cx, -bx),))
    r = math.isqrt(disc)
    if r * r == disc:
        lines = sorted(
            (rational_line(2 * cx, -bx + r), rational_line(2 * cx, -bx - r)),
            key=lambda l: l.direction,
        )
        return LineSolution2(SolutionKind.LINES, tuple(lines))
    lines = tuple(
        PlanarLine(
            rational=False,
            slope=IrrationalSlope(alpha=-bx, beta=2 * cx, s=disc, sign=sg),
        )
        for sg in (1, -1)
    )
    for line in lines:
        if not _verify_quadratic_line(g, line.slope):  # pragma: no cover
            raise AssertionError("irrational line failed exact verification")
    return LineSolution2(SolutionKind.LINES, lines)


def integer_lines2(A: Matrix2) -> list[PrimitiveDirection]:
    """The integer norm-preserving lines of A, canonically ordered.

    Raises ValueError for orthogonal A: every line qualifies there, which
    no finite list can represent; callers should test for the ALL_LINES
    classification first.
    """
    sol = solve_lines2(A)
    if sol.kind is SolutionKind.ALL_LINES:
        raise ValueError(
            "every line is norm-preserving (orthogonal matrix); "
            "check solve_lines2(...).kind before asking for a finite list"
        )
    return sorted(sol.rational_directions())


@dataclass(frozen=True)
class FamilyVariant:
    """One of the four integer families [[a, a+bs], [c, c+ds]] with
    bs, ds in {-1, +1}, optionally transposed."""

    b_step: int
    d_step: int
    transpose: bool = False

    def __post_init__(self) -> None:
        if self.b_step not in (-1, 1) or self.d_step not in (-1, 1):
            raise ValueError("steps must be -1 or +1")

    def with_transpose(self, flag: bool = True) -> FamilyVariant:
        return FamilyVariant(self.b_step, self.d_step, flag)


#: Named variants; "lopez" is the (a, a-1; c, c-1) family whose general
#: solution is known in closed form (see family_solutions).
FAMILY_VARIANTS: dict[str, FamilyVariant] = {
    "plus-plus": FamilyVariant(1, 1),
    "plus-minus": FamilyVariant(1, -1),
    "minus-plus": FamilyVariant(-1, 1),
    "minus-minus": FamilyVariant(-1, -1),
    "lopez": FamilyVariant(-1, -1),
}


def family_matrix(variant: FamilyVariant, a: RationalLike, c: RationalLike) -> Matrix2:
    """Build [[a, a + b_step], [c, c + d_step]], transposed when asked."""
    af, cf = rat(a), rat(c)
    M = Matrix2(af, af + variant.b_step, cf, cf + variant.d_step)
    return M.transpose() if variant.transpose else M


def family_k(variant: FamilyVariant, a: RationalLike, c: RationalLike) -> Fraction:
    """The exact square root k of the slope discriminant for a family member.

    For every member, p^2 - (m-1)(n-1) = k^2 with k linear in (a, c); the
    transpose shares the value since both Gram forms have equal trace and
    determinant.
    """
    return -variant.b_step * rat(a) - variant.d_step * rat(c) - 1


def family_solutions(
    a: RationalLike, c: RationalLike
) -> tuple[PrimitiveDirection, PrimitiveDirection, Fraction]:
    """Closed-form solution lines of the [[a, a-1], [c, c-1]] family.

    Returns (v1, v2, k) with v1 = <1, -1>, v2 the second line, and k the
    exact square root of the discriminant (k = a + c - 1).  When the two
    lines coincide (tangent case) or the matrix is orthogonal, v2 == v1.
    """
    af, cf = rat(a), rat(c)
    v1 = PrimitiveDirection((1, -1))
    k = af + cf - 1
    w = ((af - 1) ** 2 + (cf - 1) ** 2 - 1, 1 - af * af - cf * cf)
    v2 = v1 if w == (0, 0) else normalize_direction(w)
    return v1, v2, k


def pythagorean_family(
    b: RationalLike, d: RationalLike
) -> tuple[Matrix2, PrimitiveDirection, Optional[PrimitiveDirection]]:
    """Matrices [[3/5, b], [4/5, d]] with a unit first column.

    The first column direction <1, 0> is always preserved in length; the
    second solution is v2 = <5(1 - b^2 - d^2), 2(3b + 4d)> when nonzero
    (None exactly when b^2 + d^2 = 1 and 3b + 4d = 0, the orthogonal case).
    """
    bf, df = rat(b), rat(d)
    A = Matrix2(Fraction(3, 5), bf, Fraction(4, 5), df)
    v1 = PrimitiveDirection((1, 0))
    w = (5 * (1 - bf * bf - df * df), 2 * (3 * bf + 4 * df))
    if w == (0, 0):
        return A, v1, None
    v2 = normalize_direction(w)
    if not verify_norm_preserving(A, tuple(v2)):  # pragma: no cover
        raise AssertionError("family solution failed exact verification")
    return A, v1, v2
