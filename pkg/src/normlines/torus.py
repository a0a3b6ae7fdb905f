"""Hyperbolic integer automorphisms [[q+1, q], [q, q-1]] and their dynamics.

These symmetric determinant -1 matrices act on the plane (and hence the
torus) with irrational eigenvalues q +/- sqrt(q^2 + 1).  Their two integer
norm-preserving lines bisect the eigendirections: scaling the second line
to the length of the first and adding/subtracting yields exact
eigenvectors.  All of this is carried out in the quadratic field
Q(sqrt(D)), represented exactly by QuadElement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .core import Matrix2, PrimitiveDirection, RationalLike, rat
from .planar import integer_lines2

__all__ = [
    "QuadElement",
    "TorusMatrix",
    "autom_family",
    "matrix_power",
    "solution_lines_for_autom",
    "unstable_iterate",
    "stable_iterate",
]

IntRows = tuple[tuple[int, int], tuple[int, int]]


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = f^2 * d with d square-free; returns (f, d).  Requires n > 0."""
    if n <= 0:
        raise ValueError("positive integer required")
    f, d, p = 1, 1, 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            f *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1
    return f, d * n


@dataclass(frozen=True)
class QuadElement:
    """An exact element a + b*sqrt(d) of a real quadratic field.

    The constructor canonicalizes: square factors of the radicand are
    pulled into b, and a purely rational value always has d = 1.  Mixed
    radicands cannot be combined and raise ValueError.
    """

    a: Fraction
    b: Fraction
    d: int

    def __init__(self, a: RationalLike, b: RationalLike = 0, d: int = 1) -> None:
        af, bf = rat(a), rat(b)
        if d < 1:
            raise ValueError("radicand must be positive")
        f, dd = _squarefree_split(d) if d > 1 else (1, 1)
        bf *= f
        if dd == 1:
            af, bf = af + bf, Fraction(0)
        if bf == 0:
            dd = 1
        object.__setattr__(self, "a", af)
        object.__setattr__(self, "b", bf)
        object.__setattr__(self, "d", dd)

    # -- ring operations ------------------------------------------------

    def _coerce(self, other: Union[QuadElement, int, Fraction]) -> QuadElement:
        if isinstance(other, QuadElement):
            return other
        return QuadElement(rat(other))

    def _common_radicand(self, other: QuadElement) -> int:
        if self.d == 1:
            return other.d
        if other.d == 1 or other.d == self.d:
            return self.d
        raise ValueError(f"mixed radicands {self.d} and {other.d}")

    def __add__(self, other) -> QuadElement:
        o = self._coerce(other)
        d = self._common_radicand(o)
        return QuadElement(self.a + o.a, self.b + o.b, d)

    __radd__ = __add__

    def __neg__(self) -> QuadElement:
        return QuadElement(-self.a, -self.b, self.d)

    def __sub__(self, other) -> QuadElement:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> QuadElement:
        return self._coerce(other) - self

    def __mul__(self, other) -> QuadElement:
        o = self._coerce(other)
        d = self._common_radicand(o)
        return QuadElement(
            self.a * o.a + self.b * o.b * d,
            self.a * o.b + self.b * o.a,
            d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> QuadElement:
        return QuadElement(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """The field norm a^2 - d*b^2 (a rational number)."""
        return self.a * self.a - self.d * self.b * self.b

    def __truediv__(self, other) -> QuadElement:
        o = self._coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero element")
        inv = QuadElement(o.a / n, -o.b / n, o.d)
        return self * inv

    def __pow__(self, n: int) -> QuadElement:
        if n < 0:
            return QuadElement(1) / self.__pow__(-n)
        result, base = QuadElement(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- exact order ----------------------------------------------------

    def sign(self) -> int:
        """Exact sign of the real value a + b*sqrt(d)."""
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        if self.a == 0:
            return 1 if self.b > 0 else -1
        if self.a > 0 and self.b > 0:
            return 1
        if self.a < 0 and self.b < 0:
            return -1
        # opposite signs: compare a^2 with d*b^2
        lead = self.a * self.a - self.d * self.b * self.b
        dominant_a = lead > 0
        if dominant_a:
            return 1 if self.a > 0 else -1
        if lead < 0:
            return 1 if self.b > 0 else -1
        return 0

    def __abs__(self) -> QuadElement:
        return self if self.sign() >= 0 else -self

    def __lt__(self, other) -> bool:
        return (self - self._coerce(other)).sign() < 0

    def __le__(self, other) -> bool:
        return (self - self._coerce(other)).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - self._coerce(other)).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - self._coerce(other)).sign() >= 0

    def is_rational(self) -> bool:
        return self.b == 0

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        root = f"sqrt({self.d})"
        # prefer the compact p/sqrt(d) notation when b*d is an integer
        bd = self.b * self.d
        if bd.denominator == 1:
            tail = f"{abs(bd)}/{root}"
        elif self.b.denominator == 1:
            tail = f"{abs(self.b)}*{root}"
        else:
            tail = f"({abs(self.b)})*{root}"
        sign = "-" if self.b < 0 else "+"
        if self.a == 0:
            return tail if self.b > 0 else f"-{tail}"
        return f"{self.a} {sign} {tail}"


@dataclass(frozen=True)
class TorusMatrix:
    """A symmetric integer 2x2 matrix with determinant -1."""

    rows: IntRows

    def __post_init__(self) -> None:
        (a, b), (c, d) = self.rows
        if b != c:
            raise ValueError("matrix must be symmetric")
        if a * d - b * c != -1:
            raise ValueError("determinant must be -1")

    def to_matrix2(self) -> Matrix2:
        (a, b), (c, d) = self.rows
        return Matrix2.from_rows([[a, b], [c, d]])


def autom_family(q: int) -> TorusMatrix:
    """The symmetric determinant -1 matrix [[q+1, q], [q, q-1]]."""
    return TorusMatrix(((q + 1, q), (q, q - 1)))


def _as_rows(M: Union[TorusMatrix, IntRows]) -> IntRows:
    return M.rows if isinstance(M, TorusMatrix) else M


def _mul_rows(X: IntRows, Y: IntRows) -> IntRows:
    return (
        (
            X[0][0] * Y[0][0] + X[0][1] * Y[1][0],
            X[0][0] * Y[0][1] + X[0][1] * Y[1][1],
        ),
        (
            X[1][0] * Y[0][0] + X[1][1] * Y[1][0],
            X[1][0] * Y[0][1] + X[1][1] * Y[1][1],
        ),
    )


def matrix_power(M: Union[TorusMatrix, IntRows], n: int) -> IntRows:
    """M^n with exact integer entries, by repeated squaring."""
    if n < 0:
        raise ValueError("nonnegative exponent required")
    result: IntRows = ((1, 0), (0, 1))
    base = _as_rows(M)
    while n:
        if n & 1:
            result = _mul_rows(result, base)
        base = _mul_rows(base, base)
        n >>= 1
    return result


def solution_lines_for_autom(q: int) -> tuple[PrimitiveDirection, PrimitiveDirection]:
    """The two integer norm-preserving lines of autom_family(q).

    For q = 0 the matrix is an orthogonal reflection (every line is
    preserved in length); its coordinate eigenlines are returned.
    """
    if q == 0:
        return PrimitiveDirection((1, 0)), PrimitiveDirection((0, 1))
    lines = integer_lines2(autom_family(q).to_matrix2())
    v1 = PrimitiveDirection((1, -1))
    assert v1 in lines and len(lines) == 2
    other = next(l for l in lines if l != v1)
    return v1, other


def _eigen_setup(
    q: int,
) -> tuple[IntRows, QuadElement, QuadElement, tuple[QuadElement, QuadElement], tuple[QuadElement, QuadElement]]:
    """Exact eigendata of autom_family(q) from its solution lines.

    Returns (rows, lam1, lam2, u, w): lam1 = q +/- sqrt(q^2+1) is the
    expanding eigenvalue (|lam1| > 1 exactly; the sign of the radical
    matches the sign of q), u and w are eigenvectors for lam1 and lam2
    built as v1 +/- v3, where v3 is v2 rescaled to the length of v1
    inside Q(sqrt(D)).
    """
    if q == 0:
        raise ValueError("q = 0 is orthogonal: eigenvalues are rational")
    A = autom_family(q)
    rows = A.rows
    f, D = _squarefree_split(q * q + 1)
    lam1 = QuadElement(q, f, D)
    lam2 = QuadElement(q, -f, D)
    if abs(lam2) > abs(lam1):
        lam1, lam2 = lam2, lam1
    v1, v2 = solution_lines_for_autom(q)
    n1 = sum(c * c for c in v1)
    n2 = sum(c * c for c in v2)
    ratio = Fraction(n2, n1)
    g, Dr = _squarefree_split(ratio.numerator * ratio.denominator)
    root_ratio = QuadElement(0, Fraction(g, ratio.denominator), Dr)
    v3 = tuple(QuadElement(c) / root_ratio for c in v2)

    def apply(vec: tuple[QuadElement, QuadElement]) -> tuple[QuadElement, QuadElement]:
        return (
            rows[0][0] * vec[0] + rows[0][1] * vec[1],
            rows[1][0] * vec[0] + rows[1][1] * vec[1],
        )

    cand1 = (QuadElement(v1[0]) + v3[0], QuadElement(v1[1]) + v3[1])
    cand2 = (QuadElement(v1[0]) - v3[0], QuadElement(v1[1]) - v3[1])
    if apply(cand1) == (lam1 * cand1[0], lam1 * cand1[1]):
        u, w = cand1, cand2
    else:
        u, w = cand2, cand1
    assert apply(u) == (lam1 * u[0], lam1 * u[1])
    assert apply(w) == (lam2 * w[0], lam2 * w[1])
    return rows, lam1, lam2, u, w


def _iterate(q: int, n: int, stable: bool) -> tuple[QuadElement, QuadElement]:
    if n < 0:
        raise ValueError("nonnegative iterate required")
    rows, lam1, lam2, u, w = _eigen_setup(q)
    vec = w if stable else u
    lam = lam2 if stable else lam1
    P = matrix_power(rows, n)
    result = (
        P[0][0] * vec[0] + P[0][1] * vec[1],
        P[1][0] * vec[0] + P[1][1] * vec[1],
    )
    scaled = (lam**n * vec[0], lam**n * vec[1])
    assert result == scaled, "matrix power and eigenvalue power disagree"
    return result


def unstable_iterate(q: int, n: int) -> tuple[QuadElement, QuadElement]:
    """A^n applied to the expanding bisector eigenvector u of autom_family(q).

    Cross-checked exactly against lam1^n * u in quadratic-field arithmetic.
    """
    return _iterate(q, n, stable=False)


def stable_iterate(q: int, n: int) -> tuple[QuadElement, QuadElement]:
    """A^n applied to the contracting eigenvector w of autom_family(q)."""
    return _iterate(q, n, stable=True)
